#include "phicong/eta_phi.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace phicong {

EtaQuotientSpec::EtaQuotientSpec(std::vector<Factor> factors) : factors_(std::move(factors))
{
    std::int64_t twenty_fourths = 0;
    for (const auto& f : factors_) {
        if (f.multiplier == 0) {
            throw std::invalid_argument("eta multiplier must be positive");
        }
        twenty_fourths += static_cast<std::int64_t>(f.multiplier) * f.exponent;
    }
    if (twenty_fourths % 24 != 0) {
        throw std::invalid_argument("eta quotient has fractional q-offset " + std::to_string(twenty_fourths) +
                                    "/24");
    }
    offset_ = twenty_fourths / 24;
}

LaurentSeries EtaQuotientSpec::expand(Exponent precision, const MulOptions& opts) const
{
    // Every eta product factor is 1 + O(q), so the body needs precision - offset terms.
    const Exponent body = precision - offset_;
    if (body <= 0) {
        return LaurentSeries::zero(precision);
    }
    const LaurentSeries euler = euler_product(body);
    LaurentSeries acc = LaurentSeries::one().truncated(body);
    for (const auto& f : factors_) {
        LaurentSeries base = substitute_power(euler, f.multiplier).truncated(body);
        if (f.exponent < 0) {
            base = series_invert(base, body, opts);
        }
        acc = series_mul(acc, series_pow(base, static_cast<unsigned>(f.exponent < 0 ? -f.exponent : f.exponent), opts),
                         opts);
    }
    return shift(acc, offset_);
}

EtaQuotientSpec phi_eta_spec()
{
    return EtaQuotientSpec({{2, 24}, {1, -24}});
}

LaurentSeries euler_product(Exponent precision)
{
    if (precision <= 0) {
        return LaurentSeries::zero(precision);
    }
    const auto n = static_cast<std::size_t>(precision);
    std::vector<Integer> c(n);
    c[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // multiply by (1 - q^k)
        for (std::size_t e = n - 1; e >= k; --e) {
            c[e] -= c[e - k];
        }
    }
    return LaurentSeries::from_coeffs(0, std::move(c), precision);
}

LaurentSeries phi_series(Exponent precision)
{
    if (precision < 2) {
        throw std::invalid_argument("phi_series requires precision >= 2");
    }
    return phi_eta_spec().expand(precision);
}

LaurentSeries phi_series_simplified(Exponent precision)
{
    if (precision < 2) {
        throw std::invalid_argument("phi_series_simplified requires precision >= 2");
    }
    constexpr unsigned kPower = 24;
    std::uint64_t binom[kPower + 1];
    binom[0] = 1;
    for (unsigned i = 1; i <= kPower; ++i) {
        binom[i] = binom[i - 1] * (kPower - i + 1) / i;
    }
    // Body: prod (1 + q^k)^24 through q^(precision - 1).
    const auto n = static_cast<std::size_t>(precision - 1);
    std::vector<Integer> c(n);
    c[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // In place, from the top: c[e] <- sum_i binom(24, i) c[e - i k] reads only untouched lower slots.
        for (std::size_t e = n - 1; e >= k; --e) {
            mpz_ptr dst = c[e].get_mpz_t();
            for (unsigned i = 1; i <= kPower && i * k <= e; ++i) {
                mpz_addmul_ui(dst, c[e - i * k].get_mpz_t(), binom[i]);
            }
        }
    }
    return LaurentSeries::from_coeffs(1, std::move(c), precision);
}

LaurentSeries psi_series(Exponent precision)
{
    if (precision < 0) {
        throw std::invalid_argument("psi_series requires precision >= 0");
    }
    // Inverting a series of order 1 known through P yields precision P - 2.
    return series_invert(phi_series(precision + 2), precision);
}

std::vector<std::uint8_t> phi_parity_via_product(Exponent precision)
{
    if (precision <= 0) {
        return {};
    }
    const auto n = static_cast<std::size_t>(precision);
    // Body prod (1 + x^{8k} + x^{16k} + x^{24k}) mod 2, index = exponent of x.
    std::vector<std::uint8_t> body(n, 0);
    body[0] = 1;
    for (std::size_t step = 8; step < n; step += 8) {
        for (std::size_t e = n - 1; e >= step; --e) {
            std::uint8_t v = body[e] ^ body[e - step];
            if (e >= 2 * step) {
                v ^= body[e - 2 * step];
            }
            if (e >= 3 * step) {
                v ^= body[e - 3 * step];
            }
            body[e] = v;
        }
    }
    std::vector<std::uint8_t> out(n, 0);
    for (std::size_t e = 1; e < n; ++e) {
        out[e] = body[e - 1];
    }
    return out;
}

std::shared_ptr<const LaurentSeries> PhiPowerCache::lookup(unsigned m, Exponent precision) const
{
    std::shared_lock lock(mutex_);
    const auto it = powers_.find(m);
    if (it != powers_.end() && it->second->precision() >= precision) {
        return it->second;
    }
    return nullptr;
}

void PhiPowerCache::store(unsigned m, std::shared_ptr<const LaurentSeries> s)
{
    std::unique_lock lock(mutex_);
    auto& slot = powers_[m];
    if (!slot || slot->precision() < s->precision()) {
        slot = std::move(s);
    }
}

std::shared_ptr<const LaurentSeries> PhiPowerCache::power_ref(unsigned m, Exponent precision)
{
    if (m == 0) {
        throw std::invalid_argument("phi power must be >= 1");
    }
    if (auto hit = lookup(m, precision)) {
        return hit;
    }
    // phi^m needs phi through precision - m + 1 (and at least q^1 itself).
    const Exponent base_prec = std::max<Exponent>(2, precision - static_cast<Exponent>(m) + 1);
    std::shared_ptr<const LaurentSeries> result;
    if (m == 1) {
        result = std::make_shared<const LaurentSeries>(phi_series(std::max<Exponent>(precision, 2)));
    } else if (auto prev = lookup(m - 1, precision - 1)) {
        auto phi = power_ref(1, base_prec);
        result = std::make_shared<const LaurentSeries>(
            series_mul(prev->truncated(precision - 1), phi->truncated(base_prec), opts_));
    } else {
        auto phi = power_ref(1, base_prec);
        result = std::make_shared<const LaurentSeries>(series_pow(phi->truncated(base_prec), m, opts_));
    }
    store(m, result);
    return result;
}

LaurentSeries PhiPowerCache::power(unsigned m, Exponent precision)
{
    return power_ref(m, precision)->truncated(precision);
}

void PhiPowerCache::reserve(unsigned m_max, Exponent precision)
{
    for (unsigned m = 1; m <= m_max; ++m) {
        power_ref(m, precision);
    }
}

std::size_t PhiPowerCache::size() const
{
    std::shared_lock lock(mutex_);
    return powers_.size();
}

void PhiPowerCache::clear()
{
    std::unique_lock lock(mutex_);
    powers_.clear();
}

PhiPowerCache& default_phi_cache()
{
    static PhiPowerCache cache;
    return cache;
}

LaurentSeries phi_power(unsigned m, Exponent precision)
{
    return default_phi_cache().power(m, precision);
}

HalfGridSeries lift_to_half_grid(const LaurentSeries& q_series)
{
    return {substitute_power(q_series, 2)};
}

LaurentSeries even_part_in_q(const HalfGridSeries& s)
{
    const auto& w = s.in_w;
    if (!w.is_zero()) {
        const auto st = w.stored();
        for (std::size_t k = 0; k < st.size(); ++k) {
            if (((w.order() + static_cast<Exponent>(k)) & 1) != 0 && sgn(st[k]) != 0) {
                throw std::domain_error("half-grid series has a nonzero odd w-power");
            }
        }
    }
    return u_p(w, 2);
}

HalfGridSeries h0_series(Exponent w_precision)
{
    if (w_precision < 2) {
        throw std::invalid_argument("h0_series requires w_precision >= 2");
    }
    return {series_scale(phi_series(w_precision), Integer(4096))};
}

HalfGridSeries h1_series(Exponent w_precision)
{
    return {substitute_neg(h0_series(w_precision).in_w)};
}

LaurentSeries u2_phi_power_via_half_grid(unsigned m, Exponent w_precision)
{
    const auto h0m = series_pow(h0_series(w_precision).in_w, m);
    const auto sum = series_add(h0m, substitute_neg(h0m));
    const unsigned scale_bits = 1 + 12 * m;
    std::vector<Integer> halved;
    if (!sum.is_zero()) {
        halved.assign(sum.stored().begin(), sum.stored().end());
        for (auto& c : halved) {
            if (!mpz_divisible_2exp_p(c.get_mpz_t(), scale_bits)) {
                throw std::domain_error("h0^m + h1^m not divisible by 2^(1+12m)");
            }
            mpz_tdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), scale_bits);
        }
    }
    const Exponent first = sum.is_zero() ? 0 : sum.order();
    return even_part_in_q({LaurentSeries::from_coeffs(first, std::move(halved), sum.precision())});
}

}  // namespace phicong
