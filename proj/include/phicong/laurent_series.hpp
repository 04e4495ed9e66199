#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phicong/integer.hpp"

namespace phicong {

using Exponent = std::int64_t;

// Precision carried by series that are known exactly (finite polynomials).
inline constexpr Exponent kExactPrecision = std::int64_t{1} << 61;

// Raised when a coefficient beyond the known precision is requested, or when an
// operation is asked for more precision than its inputs can support.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by series_invert when the leading coefficient is not +1 or -1.
class NonUnitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MulOptions {
    // Products whose shorter operand has at least this many terms go through
    // Kronecker substitution; below it, schoolbook convolution.
    std::size_t fast_threshold = 512;
};

/// Truncated formal Laurent series sum_{e < precision} c_e q^e with exact integer
/// coefficients.
///
/// Storage is normalized: the first stored coefficient is nonzero (so `order()` is
/// the true valuation) and trailing zeros are dropped. Exponents in
/// [order + size, precision) are known to be zero. A series with no nonzero
/// coefficient is the designated zero series; it still carries a precision
/// (kExactPrecision for the exact zero, otherwise it stands for O(q^precision))
/// and has no order.
class LaurentSeries {
public:
    // Exact zero.
    LaurentSeries() = default;

    static LaurentSeries zero(Exponent precision = kExactPrecision);
    static LaurentSeries one();
    static LaurentSeries monomial(const Integer& c, Exponent e, Exponent precision = kExactPrecision);
    // coeffs[k] is the coefficient of q^(first + k). Terms at or beyond precision are dropped.
    static LaurentSeries from_coeffs(Exponent first, std::vector<Integer> coeffs,
                                     Exponent precision = kExactPrecision);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return precision_ >= kExactPrecision; }

    // Exponent of the first nonzero term. Throws std::logic_error on the zero series.
    Exponent order() const;
    // Lower bound on the valuation: order() for nonzero series, precision() otherwise.
    Exponent valuation_bound() const { return is_zero() ? precision_ : order_; }
    Exponent precision() const { return precision_; }
    // One past the last stored exponent (== order() + stored().size()).
    Exponent stored_end() const { return order_ + static_cast<Exponent>(coeffs_.size()); }

    // Coefficient of q^e. Throws PrecisionError for e >= precision().
    const Integer& coeff(Exponent e) const;
    std::span<const Integer> stored() const { return coeffs_; }

    // Same series known only through min(precision(), p).
    LaurentSeries truncated(Exponent p) const;

    // True when every coefficient below `through` is zero. Requires through <= precision().
    bool vanishes_below(Exponent through) const;

    // Structural equality: same coefficients and same precision.
    bool operator==(const LaurentSeries& o) const = default;

    std::string to_string(std::size_t max_terms = 8) const;

private:
    void normalize();

    Exponent order_ = 0;
    Exponent precision_ = kExactPrecision;
    std::vector<Integer> coeffs_;
};

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_neg(const LaurentSeries& a);
LaurentSeries series_scale(const LaurentSeries& a, const Integer& c);
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b, const MulOptions& opts = {});
LaurentSeries series_pow(const LaurentSeries& a, unsigned m, const MulOptions& opts = {});

// b with a*b = 1 + O(q^target_precision). Requires a unit leading coefficient.
LaurentSeries series_invert(const LaurentSeries& a, Exponent target_precision, const MulOptions& opts = {});

// Coefficient extraction q^n -> coefficient of q^(p n).
LaurentSeries u_p(const LaurentSeries& a, unsigned p);

// q -> -q.
LaurentSeries substitute_neg(const LaurentSeries& a);

// q -> q^k (exponent multiplication), k >= 1.
LaurentSeries substitute_power(const LaurentSeries& a, unsigned k);

// Multiplication by q^shift.
LaurentSeries shift(const LaurentSeries& a, Exponent shift);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return series_add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return series_sub(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a) { return series_neg(a); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return series_mul(a, b); }

namespace detail {

// Product of two dense coefficient slices, keeping only the first `limit` terms.
std::vector<Integer> convolve_schoolbook(std::span<const Integer> a, std::span<const Integer> b,
                                         std::size_t limit);
std::vector<Integer> convolve_kronecker(std::span<const Integer> a, std::span<const Integer> b,
                                        std::size_t limit);
std::vector<Integer> convolve(std::span<const Integer> a, std::span<const Integer> b, std::size_t limit,
                              const MulOptions& opts);

// Saturating sum for precisions.
Exponent precision_add(Exponent a, Exponent b);

Exponent ceil_div(Exponent a, Exponent b);

}  // namespace detail

}  // namespace phicong
