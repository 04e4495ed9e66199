#include <doctest.h>

#include "oracles.hpp"
#include "printers.hpp"
#include "phicong/combinatorics.hpp"
#include "phicong/json_io.hpp"
#include "phicong/phi_algebra.hpp"

using namespace phicong;

namespace {

Integer pow2(unsigned k)
{
    return Integer(1) << k;
}

const PhiPolynomial kRow1{{1, 24}, {2, 2048}};
// phi^3 term: 2 * (3 * 2^16) * 2^24 / 2^25 from g1^2, so 3 * 2^16.
const PhiPolynomial kRow2{{1, 1}, {2, 1152}, {3, 196608}, {4, 8388608}};

}  // namespace

TEST_CASE("phi-polynomial invariants")
{
    PhiPolynomial p{{1, 3}, {4, 0}, {2, -5}};
    CHECK(p.size() == 2);
    CHECK(p.min_degree() == 1);
    CHECK(p.max_degree() == 2);
    p.add_to(2, 5);
    CHECK(p.max_degree() == 1);
    CHECK_THROWS_AS(p.set(0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)PhiPolynomial().min_degree(), std::logic_error);
    CHECK((PhiPolynomial{{1, 2}} * PhiPolynomial{{1, 3}, {2, 1}}) == PhiPolynomial{{2, 6}, {3, 2}});
}

TEST_CASE("decompose examples")
{
    const LaurentSeries u2phi = u_p(phi_series(2 * 20), 2);
    CHECK(decompose_in_phi(u2phi) == kRow1);
    CHECK(decompose_in_phi(phi_power(3, 30)) == PhiPolynomial{{3, 1}});
    const LaurentSeries u2phi2 = u_p(phi_power(2, 2 * 20), 2);
    CHECK(decompose_in_phi(u2phi2) == kRow2);
    CHECK(decompose_in_phi(LaurentSeries::zero(20)).empty());
}

TEST_CASE("decompose error paths")
{
    CHECK_THROWS_AS(decompose_in_phi(LaurentSeries::from_coeffs(1, {1, 24})), PrecisionError);
    CHECK_THROWS_AS(decompose_in_phi(psi_series(20)), std::invalid_argument);
    CHECK_THROWS_AS(decompose_in_phi(phi_series(9), 8), PrecisionError);
    // Only q^1 is peeled at precision 10; the phi^2 term of U_2 phi^2 lands in the guard window.
    CHECK_THROWS_AS(decompose_in_phi(u_p(phi_power(2, 40), 2).truncated(10), 8), NotInPhiRingError);
    // A series that is not a polynomial in phi: q / (1 - q) against phi = q + 24 q^2 + ...
    std::vector<Integer> ones(30, 1);
    const auto geometric = LaurentSeries::from_coeffs(1, ones, 31);
    CHECK_THROWS_AS(decompose_in_phi(geometric, 8), NotInPhiRingError);
}

TEST_CASE("evaluate inverts decompose")
{
    CHECK(evaluate(PhiPolynomial(), 10).is_zero());
    CHECK(evaluate(kRow1, 10).coeff(1) == 24);
    const auto g = u_p(phi_power(5, 60), 2);
    const auto p = decompose_in_phi(g);
    CHECK(evaluate(p, g.precision()) == g);
}

TEST_CASE("basis rows")
{
    U2Workspace ws;
    CHECK(u2_basis_row(1, ws).row == kRow1);
    CHECK(u2_basis_row(2, ws).row == kRow2);
    for (Degree i = 1; i <= 32; ++i) {
        const auto row = ws.basis_row(i).row;
        CHECK(row.min_degree() == (i + 1) / 2);
        CHECK(row.max_degree() == 2 * i);
    }
}

TEST_CASE("apply_u2_algebraic")
{
    U2Workspace ws;
    // 24 row(1) + 2048 row(2), computed from the stated rows.
    const PhiPolynomial expected = Integer(24) * kRow1 + Integer(2048) * kRow2;
    CHECK(expected == PhiPolynomial{{1, 2624}, {2, 2408448}, {3, 402653184}, {4, Integer("17179869184")}});
    CHECK(apply_u2_algebraic(kRow1, ws) == expected);
    CHECK(apply_u2_algebraic(PhiPolynomial{{1, 1}}, ws) == kRow1);
    CHECK(apply_u2_algebraic(PhiPolynomial(), ws).empty());
}

TEST_CASE("u2_iterate examples and strategies")
{
    U2Workspace ws;
    CHECK(u2_iterate(1, 1, U2Strategy::direct, ws) == kRow1);
    CHECK(u2_iterate(1, 1, U2Strategy::algebraic, ws) == kRow1);
    const auto twice = u2_iterate(1, 2, U2Strategy::algebraic, ws);
    CHECK(twice == u2_iterate(1, 2, U2Strategy::direct, ws));
    CHECK(twice.coeff(1) == phi_series(5).coeff(4));
    CHECK(u2_iterate(3, 0, U2Strategy::direct, ws) == PhiPolynomial{{3, 1}});
    CHECK(u2_iterate(3, 0, U2Strategy::algebraic, ws) == PhiPolynomial{{3, 1}});
    for (unsigned m = 1; m <= 6; ++m) {
        for (unsigned alpha = 1; alpha <= 2; ++alpha) {
            CHECK(u2_iterate(m, alpha, U2Strategy::direct, ws) == u2_iterate(m, alpha, U2Strategy::algebraic, ws));
        }
    }
}

TEST_CASE("direct strategy respects the term budget")
{
    PhiPowerCache cache;
    U2Workspace ws(kDefaultGuard, cache, 1000);
    CHECK(direct_source_precision(1, 3, 8) == 8 * (8 + 9));
    CHECK_THROWS_AS(u2_iterate(16, 4, U2Strategy::direct, ws), TermBudgetError);
    CHECK_NOTHROW(u2_iterate(16, 4, U2Strategy::algebraic, ws));
}

TEST_CASE("support of iterates")
{
    U2Workspace ws;
    ws.reserve_rows(256);
    for (unsigned m = 1; m <= 16; ++m) {
        PhiPolynomial p = PhiPolynomial::monomial(m);
        for (unsigned alpha = 1; alpha <= 5; ++alpha) {
            p = apply_u2_algebraic(p, ws);
            CHECK(p.min_degree() == f_iter(m, alpha));
            CHECK(p.max_degree() == (1U << alpha) * m);
        }
    }
}

TEST_CASE("q^1 coefficient of U_2^alpha phi is a(1, 2^alpha)")
{
    U2Workspace ws;
    const auto phi = phi_series(257);
    PhiPolynomial p = PhiPolynomial::monomial(1);
    for (unsigned alpha = 1; alpha <= 8; ++alpha) {
        p = apply_u2_algebraic(p, ws);
        // phi^j starts at q^j, so only d(1) reaches q^1.
        CHECK(p.coeff(1) == phi.coeff(Exponent{1} << alpha));
    }
}

TEST_CASE("Newton power sums")
{
    CHECK(newton_g1() == PhiPolynomial{{1, 196608}, {2, pow2(24)}});
    CHECK(newton_g2() == PhiPolynomial{{1, -pow2(24)}});
    CHECK(newton_s(1) == PhiPolynomial{{1, 196608}, {2, 16777216}});
    CHECK(newton_s(1) == scale_pow2(PhiPolynomial{{1, 3}, {2, pow2(8)}}, 16));
    const PhiPolynomial s2{{1, 2 * pow2(24)}, {2, 2304 * pow2(24)}, {3, 3 * 131072 * pow2(24)}, {4, pow2(48)}};
    CHECK(newton_s(2) == s2);
    CHECK(newton_s(2) == scale_pow2(PhiPolynomial{{1, 2}, {2, pow2(8) * 9}, {3, 3 * pow2(17)}, {4, pow2(24)}}, 24));
    // g1 S1 - 2 g2 by hand
    const Integer a = 196608;
    const Integer b = pow2(24);
    CHECK(newton_s(2) == PhiPolynomial{{1, 2 * b}, {2, a * a}, {3, 2 * a * b}, {4, b * b}});
    CHECK_THROWS_AS(newton_s(0), std::invalid_argument);

    U2Workspace ws;
    for (unsigned m = 1; m <= 16; ++m) {
        CHECK(scale_pow2(u2_iterate(m, 1, U2Strategy::algebraic, ws), 1 + 12 * m) == newton_s(m));
    }
}

TEST_CASE("ring R membership")
{
    CHECK(in_scaled_ring_r(newton_s(1), 16));
    CHECK_FALSE(in_scaled_ring_r(newton_s(1), 17));
    CHECK(in_scaled_ring_r(PhiPolynomial(), 100));
    CHECK_FALSE(in_scaled_ring_r(PhiPolynomial{{1, 2}, {2, 4}}, 8));
    for (unsigned m = 1; m <= 16; ++m) {
        CHECK(in_scaled_ring_r(newton_s(m), 8 * (m + 1)));
    }
}

TEST_CASE("Lehner constants and the modular equation")
{
    U2Workspace ws;
    const auto c = lehner_constants(ws);
    CHECK(c.b1 == 12);
    CHECK(c.b2 == 1024);
    const auto residual = modular_equation_residual(300, ws);
    CHECK(residual.in_w.is_zero());
    CHECK(residual.in_w.precision() == 300);
    CHECK_THROWS_AS(modular_equation_residual(3, ws), std::invalid_argument);
}

TEST_CASE("basis rows meet the alpha = 1 valuation bound")
{
    U2Workspace ws;
    for (Degree m = 1; m <= 16; ++m) {
        const auto row = ws.basis_row(m).row;
        for (const auto& [j, d] : row.terms()) {
            CHECK(two_adic_valuation(d).at_least(better_bound(m, j, 1)));
        }
    }
}

TEST_CASE("phi-polynomial JSON")
{
    const auto j = phi_polynomial_to_json(kRow2, 2, 1);
    CHECK(j["m"] == 2);
    CHECK(j["alpha"] == 1);
    CHECK(j["coeffs"]["4"] == "8388608");
    CHECK(phi_polynomial_from_json(j) == kRow2);
}
