#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "phicong/laurent_series.hpp"

namespace phicong {

// prod_i eta(multiplier_i * z)^exponent_i. The q^(1/24) factors are collected
// symbolically and must sum to an integer q-power.
class EtaQuotientSpec {
public:
    struct Factor {
        unsigned multiplier;
        int exponent;
    };

    explicit EtaQuotientSpec(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    // Integer q-power contributed by the eta prefactors.
    Exponent offset() const { return offset_; }

    // q-expansion through the given precision.
    LaurentSeries expand(Exponent precision, const MulOptions& opts = {}) const;

private:
    std::vector<Factor> factors_;
    Exponent offset_ = 0;
};

// (eta(2z)/eta(z))^24.
EtaQuotientSpec phi_eta_spec();

// prod_{n>=1} (1 - q^n) through q^precision.
LaurentSeries euler_product(Exponent precision);

// phi via the eta quotient.
LaurentSeries phi_series(Exponent precision);
// phi via q prod (1 + q^n)^24, each factor expanded binomially.
LaurentSeries phi_series_simplified(Exponent precision);
// 1/phi = q^-1 - 24 + ...
LaurentSeries psi_series(Exponent precision);

// Parities of the coefficients of q prod (1 + q^{8n} + q^{16n} + q^{24n}); entry e is the
// parity of the q^e coefficient, 0 <= e < precision.
std::vector<std::uint8_t> phi_parity_via_product(Exponent precision);

/// Process-wide cache of phi^m keyed by m. Each entry keeps the highest precision
/// computed so far; requests at lower precision are served from it (truncation is
/// exact). Readers share a lock; a missing entry is computed outside the lock and
/// inserted if it still improves on what is stored.
class PhiPowerCache {
public:
    explicit PhiPowerCache(MulOptions opts = {}) : opts_(opts) {}

    // phi^m known through at least `precision`. m >= 1.
    std::shared_ptr<const LaurentSeries> power_ref(unsigned m, Exponent precision);
    // phi^m known through exactly `precision`.
    LaurentSeries power(unsigned m, Exponent precision);

    // Fills phi^1 .. phi^m_max at the given precision, each from its predecessor.
    void reserve(unsigned m_max, Exponent precision);

    const MulOptions& mul_options() const { return opts_; }
    std::size_t size() const;
    void clear();

private:
    std::shared_ptr<const LaurentSeries> lookup(unsigned m, Exponent precision) const;
    void store(unsigned m, std::shared_ptr<const LaurentSeries> s);

    MulOptions opts_;
    mutable std::shared_mutex mutex_;
    std::map<unsigned, std::shared_ptr<const LaurentSeries>> powers_;
};

PhiPowerCache& default_phi_cache();

// phi^m = sum_{n >= m} a(m, n) q^n, through the given precision.
LaurentSeries phi_power(unsigned m, Exponent precision);

// A series in the half-grid variable w = q^(1/2). Kept apart from q-series so that
// the two grids only meet through lift_to_half_grid / even_part_in_q.
struct HalfGridSeries {
    LaurentSeries in_w;

    bool operator==(const HalfGridSeries&) const = default;
};

// q -> w^2.
HalfGridSeries lift_to_half_grid(const LaurentSeries& q_series);
// The q-series whose q^n coefficient is the w^(2n) coefficient. Throws std::domain_error
// if an odd w-power has a nonzero coefficient.
LaurentSeries even_part_in_q(const HalfGridSeries& s);

// h0 = 2^12 (w + 24 w^2 + 300 w^3 + ...), i.e. 2^12 phi(z/2).
HalfGridSeries h0_series(Exponent w_precision);
// h1 = h0(-w) = 2^12 phi((z+1)/2).
HalfGridSeries h1_series(Exponent w_precision);

// 2^(-1-12m) (h0^m + h1^m) read back on the q-grid; equals U_2 phi^m.
LaurentSeries u2_phi_power_via_half_grid(unsigned m, Exponent w_precision);

}  // namespace phicong
