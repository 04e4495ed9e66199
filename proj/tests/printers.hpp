#pragma once

#include <doctest.h>

#include "phicong/laurent_series.hpp"
#include "phicong/phi_polynomial.hpp"

namespace doctest {

template <>
struct StringMaker<phicong::PhiPolynomial> {
    static String convert(const phicong::PhiPolynomial& p) { return p.to_string().c_str(); }
};

template <>
struct StringMaker<phicong::LaurentSeries> {
    static String convert(const phicong::LaurentSeries& s) { return s.to_string().c_str(); }
};

}  // namespace doctest
