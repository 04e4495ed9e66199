#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>

#include "phicong/eta_phi.hpp"
#include "phicong/laurent_series.hpp"
#include "phicong/phi_polynomial.hpp"

namespace phicong {

inline constexpr unsigned kDefaultGuard = 8;
inline constexpr std::uint64_t kDefaultTermBudget = std::uint64_t{1} << 22;

// The series is not a polynomial in phi at the available precision.
class NotInPhiRingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The direct strategy would need more terms than the configured budget.
class TermBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes g as a polynomial in phi by peeling: the lowest remaining coefficient c at
/// q^j becomes d(j) and c*phi^j is subtracted. Peeling runs over exponents below
/// precision(g) - guard; the last `guard` known exponents must then be zero.
///
/// Requires finite precision and no nonpositive exponents in g.
PhiPolynomial decompose_in_phi(const LaurentSeries& g, unsigned guard = kDefaultGuard,
                               PhiPowerCache& cache = default_phi_cache());

// sum_j d(j) phi^j through the given precision.
LaurentSeries evaluate(const PhiPolynomial& p, Exponent precision, PhiPowerCache& cache = default_phi_cache());

// U_2 phi^i as a phi-polynomial; support is expected in [ceil(i/2), 2i].
struct U2BasisRow {
    Degree i = 0;
    PhiPolynomial row;
};

enum class U2Strategy { direct, algebraic };

/// Shared state for U_2 computations on the phi-basis: the certification guard, the
/// phi-power cache, and a lazily filled table of basis rows U_2 phi^i. Rows are
/// filled idempotently under a writer lock; concurrent readers are fine.
class U2Workspace {
public:
    explicit U2Workspace(unsigned guard = kDefaultGuard, PhiPowerCache& cache = default_phi_cache(),
                         std::uint64_t term_budget = kDefaultTermBudget);

    unsigned guard() const { return guard_; }
    std::uint64_t term_budget() const { return term_budget_; }
    PhiPowerCache& cache() { return cache_; }

    // q-precision needed for phi^i so that U_2 phi^i decomposes with a full guard window.
    Exponent row_source_precision(Degree i) const;

    U2BasisRow basis_row(Degree i);
    std::shared_ptr<const PhiPolynomial> basis_row_ref(Degree i);

    // Precomputes rows 1..i_max (and the phi-powers they need) in ascending order.
    void reserve_rows(Degree i_max);

private:
    unsigned guard_;
    PhiPowerCache& cache_;
    std::uint64_t term_budget_;
    std::shared_mutex mutex_;
    std::map<Degree, std::shared_ptr<const PhiPolynomial>> rows_;
};

U2BasisRow u2_basis_row(Degree i, U2Workspace& ws);

// d'(j) = sum_i d(i) b(i, j): U_2 applied on the phi-basis.
PhiPolynomial apply_u2_algebraic(const PhiPolynomial& p, U2Workspace& ws);

// q-precision of phi^m the direct strategy starts from.
std::uint64_t direct_source_precision(unsigned m, unsigned alpha, unsigned guard);

// U_2^alpha phi^m as a phi-polynomial.
PhiPolynomial u2_iterate(unsigned m, unsigned alpha, U2Strategy strategy, U2Workspace& ws);

// 3 * 2^16 phi + 2^24 phi^2
PhiPolynomial newton_g1();
// -2^24 phi
PhiPolynomial newton_g2();

/// Power sums S_m = h0^m + h1^m of the two roots of x^2 - g1 x + g2, as
/// phi-polynomials, via S_m = g1 S_{m-1} - g2 S_{m-2}.
class NewtonState {
public:
    NewtonState();

    // Index of current(): starts at 1 with S_1 = g1.
    unsigned index() const { return index_; }
    const PhiPolynomial& current() const { return s_prev_; }
    void advance();

private:
    unsigned index_ = 1;
    PhiPolynomial s_prev_;
    PhiPolynomial s_prev2_;
    PhiPolynomial g1_;
    PhiPolynomial g2_;
};

PhiPolynomial newton_s(unsigned m);

// True iff p = 2^k r with r in R, where R asks nu_2(d(n)) >= 8(n-1) for n >= 2.
bool in_scaled_ring_r(const PhiPolynomial& p, unsigned k);

// b1, b2 with U_2 phi = 2(b1 phi + b2 phi^2), read off the basis row of phi and
// checked against g1 = 2^14 (b1 phi + b2 phi^2). Throws std::logic_error on mismatch.
struct LehnerConstants {
    Integer b1;
    Integer b2;
};
LehnerConstants lehner_constants(U2Workspace& ws);

// h0^2 - G1 h0 + G2 on the half grid, G1 = 2^14(b1 phi + b2 phi^2), G2 = -2^14 b2 phi.
HalfGridSeries modular_equation_residual(Exponent w_precision, U2Workspace& ws);

}  // namespace phicong
