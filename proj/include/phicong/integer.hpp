#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

namespace phicong {

// Exact signed integer. Every coefficient in the library lives in one of these.
using Integer = mpz_class;

// 2-adic valuation; the valuation of zero is infinite and satisfies every bound.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::int64_t v) : value_(v) {}

    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }

    // Throws std::logic_error for the infinite valuation.
    std::int64_t value() const;

    constexpr bool at_least(std::int64_t bound) const { return infinite_ || value_ >= bound; }
    constexpr bool equals(std::int64_t bound) const { return !infinite_ && value_ == bound; }

    constexpr auto operator<=>(const Valuation& o) const {
        if (infinite_ || o.infinite_) {
            return infinite_ == o.infinite_ ? std::strong_ordering::equal
                   : infinite_            ? std::strong_ordering::greater
                                          : std::strong_ordering::less;
        }
        return value_ <=> o.value_;
    }
    constexpr bool operator==(const Valuation& o) const { return (*this <=> o) == 0; }

    // "inf" or the decimal value.
    std::string to_string() const;

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

Valuation operator+(const Valuation& a, const Valuation& b);

Valuation two_adic_valuation(const Integer& x);

std::string to_decimal(const Integer& x);

// Parses a decimal string (optional leading '-'); throws std::invalid_argument.
Integer from_decimal(const std::string& s);

}  // namespace phicong
