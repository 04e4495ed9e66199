#include "phicong/laurent_series.hpp"

#include <algorithm>
#include <sstream>

namespace phicong {

namespace detail {

Exponent precision_add(Exponent a, Exponent b)
{
    // Operands are bounded by kExactPrecision in magnitude, so the raw sum cannot overflow.
    const Exponent s = a + b;
    return std::min(s, kExactPrecision);
}

Exponent ceil_div(Exponent a, Exponent b)
{
    Exponent q = a / b;
    if ((a % b != 0) && ((a > 0) == (b > 0))) {
        ++q;
    }
    return q;
}

std::vector<Integer> convolve_schoolbook(std::span<const Integer> a, std::span<const Integer> b,
                                         std::size_t limit)
{
    if (a.empty() || b.empty() || limit == 0) {
        return {};
    }
    const std::size_t n = std::min(limit, a.size() + b.size() - 1);
    std::vector<Integer> out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        const mpz_srcptr ai = a[i].get_mpz_t();
        const std::size_t jmax = std::min(b.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
        }
    }
    return out;
}

namespace {

std::size_t max_bits(std::span<const Integer> v)
{
    std::size_t m = 0;
    for (const auto& x : v) {
        if (sgn(x) != 0) {
            m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
        }
    }
    return m;
}

std::size_t bit_length(std::size_t n)
{
    std::size_t b = 0;
    while (n != 0) {
        ++b;
        n >>= 1;
    }
    return b;
}

// Packs |c_k| for coefficients of the requested sign into slot k (slot width `slot` limbs).
void pack(mpz_t out, std::span<const Integer> v, std::size_t slot, int sign)
{
    const std::size_t total = v.size() * slot;
    mp_limb_t* p = mpz_limbs_write(out, static_cast<mp_size_t>(std::max<std::size_t>(total, 1)));
    std::fill(p, p + std::max<std::size_t>(total, 1), mp_limb_t{0});
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) != sign) {
            continue;
        }
        const mpz_srcptr z = v[k].get_mpz_t();
        const std::size_t sz = mpz_size(z);
        std::copy(mpz_limbs_read(z), mpz_limbs_read(z) + sz, p + k * slot);
    }
    mpz_limbs_finish(out, static_cast<mp_size_t>(std::max<std::size_t>(total, 1)));
}

Integer pack_signed(std::span<const Integer> v, std::size_t slot)
{
    Integer pos, neg;
    pack(pos.get_mpz_t(), v, slot, 1);
    pack(neg.get_mpz_t(), v, slot, -1);
    return pos - neg;
}

}  // namespace

std::vector<Integer> convolve_kronecker(std::span<const Integer> a, std::span<const Integer> b,
                                        std::size_t limit)
{
    if (a.empty() || b.empty() || limit == 0) {
        return {};
    }
    a = a.first(std::min(a.size(), limit));
    b = b.first(std::min(b.size(), limit));
    const std::size_t n = std::min(limit, a.size() + b.size() - 1);
    const std::size_t ba = max_bits(a);
    const std::size_t bb = max_bits(b);
    if (ba == 0 || bb == 0) {
        return std::vector<Integer>(n);
    }
    // Every product coefficient satisfies |c| < 2^(ba + bb + bitlen(min len)) <= 2^(slot_bits - 1).
    const std::size_t need = ba + bb + bit_length(std::min(a.size(), b.size())) + 1;
    const std::size_t slot = (need + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    const bool square = a.data() == b.data() && a.size() == b.size();
    const Integer pa = pack_signed(a, slot);
    Integer prod;
    if (square) {
        prod = pa * pa;
    } else {
        const Integer pb = pack_signed(b, slot);
        prod = pa * pb;
    }

    const int sign = sgn(prod);
    const mpz_srcptr pz = prod.get_mpz_t();
    const mp_limb_t* limbs = mpz_limbs_read(pz);
    const std::size_t size = mpz_size(pz);

    Integer half, full;
    mpz_setbit(half.get_mpz_t(), slot * GMP_NUMB_BITS - 1);
    mpz_setbit(full.get_mpz_t(), slot * GMP_NUMB_BITS);

    // Balanced base-2^(slot bits) digits of |prod|.
    std::vector<Integer> out(n);
    int carry = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Integer& d = out[k];
        const std::size_t lo = k * slot;
        if (lo < size) {
            const std::size_t len = std::min(slot, size - lo);
            mp_limb_t* w = mpz_limbs_write(d.get_mpz_t(), static_cast<mp_size_t>(len));
            std::copy(limbs + lo, limbs + lo + len, w);
            mpz_limbs_finish(d.get_mpz_t(), static_cast<mp_size_t>(len));
        }
        if (carry != 0) {
            d += carry;
        }
        if (d >= half) {
            d -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        if (sign < 0) {
            mpz_neg(d.get_mpz_t(), d.get_mpz_t());
        }
    }
    return out;
}

std::vector<Integer> convolve(std::span<const Integer> a, std::span<const Integer> b, std::size_t limit,
                              const MulOptions& opts)
{
    const std::size_t shorter = std::min({a.size(), b.size(), limit});
    if (shorter >= opts.fast_threshold && opts.fast_threshold > 0) {
        return convolve_kronecker(a, b, limit);
    }
    return convolve_schoolbook(a, b, limit);
}

}  // namespace detail

using detail::ceil_div;
using detail::precision_add;

LaurentSeries LaurentSeries::zero(Exponent precision)
{
    LaurentSeries s;
    s.precision_ = std::min(precision, kExactPrecision);
    return s;
}

LaurentSeries LaurentSeries::one()
{
    return monomial(Integer(1), 0);
}

LaurentSeries LaurentSeries::monomial(const Integer& c, Exponent e, Exponent precision)
{
    return from_coeffs(e, {c}, precision);
}

LaurentSeries LaurentSeries::from_coeffs(Exponent first, std::vector<Integer> coeffs, Exponent precision)
{
    LaurentSeries s;
    s.order_ = first;
    s.coeffs_ = std::move(coeffs);
    s.precision_ = std::min(precision, kExactPrecision);
    s.normalize();
    return s;
}

void LaurentSeries::normalize()
{
    if (stored_end() > precision_) {
        const Exponent keep = std::max<Exponent>(0, precision_ - order_);
        coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
        coeffs_.pop_back();
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) {
        ++lead;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        order_ += static_cast<Exponent>(lead);
    }
    if (coeffs_.empty()) {
        order_ = 0;
    }
}

Exponent LaurentSeries::order() const
{
    if (is_zero()) {
        throw std::logic_error("order() of the zero series");
    }
    return order_;
}

const Integer& LaurentSeries::coeff(Exponent e) const
{
    static const Integer kZero;
    if (e >= precision_) {
        throw PrecisionError("coefficient of q^" + std::to_string(e) + " requested but precision is " +
                             std::to_string(precision_));
    }
    if (is_zero() || e < order_ || e >= stored_end()) {
        return kZero;
    }
    return coeffs_[static_cast<std::size_t>(e - order_)];
}

LaurentSeries LaurentSeries::truncated(Exponent p) const
{
    if (p >= precision_) {
        return *this;
    }
    LaurentSeries s = *this;
    s.precision_ = p;
    s.normalize();
    return s;
}

bool LaurentSeries::vanishes_below(Exponent through) const
{
    if (through > precision_) {
        throw PrecisionError("vanishes_below(" + std::to_string(through) + ") beyond precision " +
                             std::to_string(precision_));
    }
    return is_zero() || order_ >= through;
}

std::string LaurentSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t k = 0; k < coeffs_.size() && shown < max_terms; ++k) {
        if (sgn(coeffs_[k]) == 0) {
            continue;
        }
        os << (shown == 0 ? "" : " + ") << coeffs_[k].get_str() << "*q^" << (order_ + static_cast<Exponent>(k));
        ++shown;
    }
    if (shown == 0) {
        os << "0";
    }
    if (!is_exact()) {
        os << " + O(q^" << precision_ << ")";
    }
    return os.str();
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract)
{
    const Exponent prec = std::min(a.precision(), b.precision());
    if (a.is_zero() && b.is_zero()) {
        return LaurentSeries::zero(prec);
    }
    Exponent lo = kExactPrecision;
    Exponent hi = -kExactPrecision;
    for (const auto* s : {&a, &b}) {
        if (!s->is_zero()) {
            lo = std::min(lo, s->order());
            hi = std::max(hi, s->stored_end());
        }
    }
    hi = std::min(hi, prec);
    if (hi <= lo) {
        return LaurentSeries::zero(prec);
    }
    std::vector<Integer> out(static_cast<std::size_t>(hi - lo));
    auto accumulate = [&](const LaurentSeries& s, bool negate) {
        if (s.is_zero()) {
            return;
        }
        const auto st = s.stored();
        for (std::size_t k = 0; k < st.size(); ++k) {
            const Exponent e = s.order() + static_cast<Exponent>(k);
            if (e >= hi) {
                break;
            }
            auto& dst = out[static_cast<std::size_t>(e - lo)];
            if (negate) {
                dst -= st[k];
            } else {
                dst += st[k];
            }
        }
    };
    accumulate(a, false);
    accumulate(b, subtract);
    return LaurentSeries::from_coeffs(lo, std::move(out), prec);
}

}  // namespace

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b)
{
    return combine(a, b, false);
}

LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b)
{
    return combine(a, b, true);
}

LaurentSeries series_neg(const LaurentSeries& a)
{
    return series_scale(a, Integer(-1));
}

LaurentSeries series_scale(const LaurentSeries& a, const Integer& c)
{
    if (a.is_zero()) {
        return a;
    }
    std::vector<Integer> out(a.stored().begin(), a.stored().end());
    for (auto& x : out) {
        x *= c;
    }
    return LaurentSeries::from_coeffs(a.order(), std::move(out), a.precision());
}

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b, const MulOptions& opts)
{
    const Exponent prec = std::min(precision_add(a.precision(), b.valuation_bound()),
                                   precision_add(b.precision(), a.valuation_bound()));
    if (a.is_zero() || b.is_zero()) {
        return LaurentSeries::zero(prec);
    }
    const Exponent lo = a.order() + b.order();
    if (prec <= lo) {
        return LaurentSeries::zero(prec);
    }
    const std::size_t full = a.stored().size() + b.stored().size() - 1;
    const std::size_t limit = prec >= kExactPrecision
                                  ? full
                                  : static_cast<std::size_t>(std::min<Exponent>(prec - lo, static_cast<Exponent>(full)));
    auto out = detail::convolve(a.stored(), b.stored(), limit, opts);
    return LaurentSeries::from_coeffs(lo, std::move(out), prec);
}

LaurentSeries series_pow(const LaurentSeries& a, unsigned m, const MulOptions& opts)
{
    LaurentSeries result = LaurentSeries::one();
    if (m == 0) {
        return result;
    }
    LaurentSeries base = a;
    bool first = true;
    while (true) {
        if ((m & 1U) != 0) {
            result = first ? base : series_mul(result, base, opts);
            first = false;
        }
        m >>= 1U;
        if (m == 0) {
            break;
        }
        base = series_mul(base, base, opts);
    }
    return result;
}

namespace {

// Inverse of the unit-constant series u (u[0] = +-1) modulo q^n by the direct recurrence.
std::vector<Integer> invert_recurrence(std::span<const Integer> u, std::size_t n)
{
    std::vector<Integer> b(n);
    if (n == 0) {
        return b;
    }
    const bool neg = sgn(u[0]) < 0;
    b[0] = u[0];
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < u.size() && k < n; ++k) {
        if (sgn(u[k]) != 0) {
            support.push_back(k);
        }
    }
    Integer acc;
    for (std::size_t i = 1; i < n; ++i) {
        acc = 0;
        for (const std::size_t k : support) {
            if (k > i) {
                break;
            }
            mpz_addmul(acc.get_mpz_t(), u[k].get_mpz_t(), b[i - k].get_mpz_t());
        }
        // b_i = -u0^{-1} * acc, and u0^{-1} = u0.
        if (neg) {
            b[i] = acc;
        } else {
            mpz_neg(b[i].get_mpz_t(), acc.get_mpz_t());
        }
    }
    return b;
}

std::vector<Integer> invert_newton(std::span<const Integer> u, std::size_t n, const MulOptions& opts)
{
    std::size_t have = std::min<std::size_t>(n, std::max<std::size_t>(opts.fast_threshold, 16));
    std::vector<Integer> b = invert_recurrence(u, have);
    while (have < n) {
        const std::size_t next = std::min(n, 2 * have);
        // b <- b + b (1 - u b)  (mod q^next)
        auto ub = detail::convolve(u.first(std::min(u.size(), next)), b, next, opts);
        ub.resize(next);
        std::vector<Integer> err(next - have);
        for (std::size_t k = have; k < next; ++k) {
            mpz_neg(err[k - have].get_mpz_t(), ub[k].get_mpz_t());
        }
        auto corr = detail::convolve(b, err, next - have, opts);
        b.resize(next);
        for (std::size_t k = 0; k < corr.size(); ++k) {
            b[have + k] = std::move(corr[k]);
        }
        have = next;
    }
    return b;
}

}  // namespace

LaurentSeries series_invert(const LaurentSeries& a, Exponent target_precision, const MulOptions& opts)
{
    if (a.is_zero()) {
        throw NonUnitError("cannot invert the zero series");
    }
    const Integer& lead = a.stored().front();
    if (lead != 1 && lead != -1) {
        throw NonUnitError("leading coefficient " + lead.get_str() + " is not a unit");
    }
    const Exponent v = a.order();
    if (!a.is_exact() && target_precision > a.precision() - 2 * v) {
        throw PrecisionError("inverse requested through q^" + std::to_string(target_precision) +
                             " but input supports only q^" + std::to_string(a.precision() - 2 * v));
    }
    if (target_precision <= -v) {
        return LaurentSeries::zero(target_precision);
    }
    const auto n = static_cast<std::size_t>(target_precision + v);
    const auto u = a.stored();
    auto b = n > 2 * std::max<std::size_t>(opts.fast_threshold, 16) ? invert_newton(u, n, opts)
                                                                     : invert_recurrence(u, n);
    return LaurentSeries::from_coeffs(-v, std::move(b), target_precision);
}

LaurentSeries u_p(const LaurentSeries& a, unsigned p)
{
    if (p < 2) {
        throw std::invalid_argument("u_p requires p >= 2");
    }
    const auto pp = static_cast<Exponent>(p);
    const Exponent prec = a.is_exact() ? kExactPrecision : ceil_div(a.precision(), pp);
    if (a.is_zero()) {
        return LaurentSeries::zero(prec);
    }
    const Exponent lo = ceil_div(a.order(), pp);
    const Exponent hi = ceil_div(a.stored_end(), pp);
    std::vector<Integer> out;
    out.reserve(static_cast<std::size_t>(std::max<Exponent>(0, hi - lo)));
    for (Exponent n = lo; n < hi; ++n) {
        out.push_back(a.stored()[static_cast<std::size_t>(pp * n - a.order())]);
    }
    return LaurentSeries::from_coeffs(lo, std::move(out), prec);
}

LaurentSeries substitute_neg(const LaurentSeries& a)
{
    if (a.is_zero()) {
        return a;
    }
    std::vector<Integer> out(a.stored().begin(), a.stored().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (((a.order() + static_cast<Exponent>(k)) & 1) != 0) {
            mpz_neg(out[k].get_mpz_t(), out[k].get_mpz_t());
        }
    }
    return LaurentSeries::from_coeffs(a.order(), std::move(out), a.precision());
}

LaurentSeries substitute_power(const LaurentSeries& a, unsigned k)
{
    if (k == 0) {
        throw std::invalid_argument("substitute_power requires k >= 1");
    }
    const auto kk = static_cast<Exponent>(k);
    // Exponents k(P-1)+1 .. kP-1 are not multiples of k, hence known zeros.
    const Exponent prec = a.is_exact() ? kExactPrecision : a.precision() * kk;
    if (a.is_zero()) {
        return LaurentSeries::zero(prec);
    }
    const auto st = a.stored();
    std::vector<Integer> out((st.size() - 1) * k + 1);
    for (std::size_t i = 0; i < st.size(); ++i) {
        out[i * k] = st[i];
    }
    return LaurentSeries::from_coeffs(a.order() * kk, std::move(out), prec);
}

LaurentSeries shift(const LaurentSeries& a, Exponent s)
{
    const Exponent prec = a.is_exact() ? kExactPrecision : a.precision() + s;
    if (a.is_zero()) {
        return LaurentSeries::zero(prec);
    }
    return LaurentSeries::from_coeffs(a.order() + s, std::vector<Integer>(a.stored().begin(), a.stored().end()),
                                      prec);
}

}  // namespace phicong
