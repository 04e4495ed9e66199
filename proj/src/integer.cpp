#include "phicong/integer.hpp"

#include <stdexcept>

namespace phicong {

std::int64_t Valuation::value() const
{
    if (infinite_) {
        throw std::logic_error("value() on the infinite valuation");
    }
    return value_;
}

std::string Valuation::to_string() const
{
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation operator+(const Valuation& a, const Valuation& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        return Valuation::infinity();
    }
    return Valuation(a.value() + b.value());
}

Valuation two_adic_valuation(const Integer& x)
{
    if (sgn(x) == 0) {
        return Valuation::infinity();
    }
    return Valuation(static_cast<std::int64_t>(mpz_scan1(x.get_mpz_t(), 0)));
}

std::string to_decimal(const Integer& x)
{
    return x.get_str(10);
}

Integer from_decimal(const std::string& s)
{
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start) {
        throw std::invalid_argument("empty integer literal");
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw std::invalid_argument("malformed integer literal: " + s);
        }
    }
    return Integer(s, 10);
}

}  // namespace phicong
