#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "phicong/integer.hpp"

namespace phicong {

using Degree = std::uint32_t;

// Element of Z[phi] without constant term: sum_j d(j) phi^j over positive degrees j.
// Zero coefficients are never stored.
class PhiPolynomial {
public:
    using Terms = std::map<Degree, Integer>;

    PhiPolynomial() = default;
    // Throws std::invalid_argument on a degree-0 entry; zero entries are dropped.
    PhiPolynomial(std::initializer_list<std::pair<const Degree, Integer>> terms);
    explicit PhiPolynomial(Terms terms);

    static PhiPolynomial monomial(Degree j, const Integer& c = Integer(1));

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // Throws std::logic_error when empty.
    Degree min_degree() const;
    Degree max_degree() const;

    // d(j); zero outside the support.
    Integer coeff(Degree j) const;
    void set(Degree j, const Integer& c);
    void add_to(Degree j, const Integer& c);
    void add_product(Degree j, const Integer& a, const Integer& b);

    const Terms& terms() const { return terms_; }

    bool operator==(const PhiPolynomial&) const = default;

    std::string to_string() const;

private:
    Terms terms_;
};

PhiPolynomial operator+(const PhiPolynomial& a, const PhiPolynomial& b);
PhiPolynomial operator-(const PhiPolynomial& a, const PhiPolynomial& b);
PhiPolynomial operator*(const PhiPolynomial& a, const PhiPolynomial& b);
PhiPolynomial operator*(const Integer& c, const PhiPolynomial& p);

// Multiplies every coefficient by 2^k.
PhiPolynomial scale_pow2(const PhiPolynomial& p, unsigned k);

}  // namespace phicong
