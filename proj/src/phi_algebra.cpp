#include "phicong/phi_algebra.hpp"

#include <mutex>
#include <string>
#include <vector>

namespace phicong {

PhiPolynomial decompose_in_phi(const LaurentSeries& g, unsigned guard, PhiPowerCache& cache)
{
    if (g.is_exact()) {
        throw PrecisionError("decompose_in_phi needs a series with finite precision");
    }
    if (!g.is_zero() && g.order() < 1) {
        throw std::invalid_argument("decompose_in_phi: series has a term at q^" + std::to_string(g.order()) +
                                    "; only series vanishing at infinity lie in phi Z[phi]");
    }
    const Exponent prec = g.precision();
    const Exponent peel_end = prec - static_cast<Exponent>(guard);
    if (peel_end < 2) {
        throw PrecisionError("decompose_in_phi: precision " + std::to_string(prec) + " leaves no room for guard " +
                             std::to_string(guard));
    }

    const auto n = static_cast<std::size_t>(prec);
    std::vector<Integer> rem(n);
    for (Exponent e = 1; e < prec; ++e) {
        rem[static_cast<std::size_t>(e)] = g.coeff(e);
    }

    PhiPolynomial out;
    for (Exponent j = 1; j < peel_end; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        if (sgn(rem[jj]) == 0) {
            continue;
        }
        const Integer c = rem[jj];
        out.set(static_cast<Degree>(j), c);
        const auto power = cache.power_ref(static_cast<unsigned>(j), prec);
        // phi^j has order j and leading coefficient 1.
        const auto st = power->stored();
        const std::size_t len = std::min(st.size(), n - jj);
        for (std::size_t k = 0; k < len; ++k) {
            mpz_submul(rem[jj + k].get_mpz_t(), c.get_mpz_t(), st[k].get_mpz_t());
        }
    }
    for (Exponent e = peel_end; e < prec; ++e) {
        if (sgn(rem[static_cast<std::size_t>(e)]) != 0) {
            throw NotInPhiRingError("not in Z[phi] at this precision: remainder has nonzero q^" + std::to_string(e) +
                                    " coefficient inside the guard window [" + std::to_string(peel_end) + ", " +
                                    std::to_string(prec) + ")");
        }
    }
    return out;
}

LaurentSeries evaluate(const PhiPolynomial& p, Exponent precision, PhiPowerCache& cache)
{
    LaurentSeries acc = LaurentSeries::zero(precision);
    for (const auto& [j, c] : p.terms()) {
        if (static_cast<Exponent>(j) >= precision) {
            break;
        }
        acc = series_add(acc, series_scale(cache.power(j, precision), c));
    }
    return acc;
}

U2Workspace::U2Workspace(unsigned guard, PhiPowerCache& cache, std::uint64_t term_budget)
    : guard_(guard), cache_(cache), term_budget_(term_budget)
{
}

Exponent U2Workspace::row_source_precision(Degree i) const
{
    // After U_2 the series is known through 2i + guard + 1: support up to 2i plus the window.
    return 2 * (2 * static_cast<Exponent>(i) + guard_ + 1);
}

std::shared_ptr<const PhiPolynomial> U2Workspace::basis_row_ref(Degree i)
{
    if (i == 0) {
        throw std::invalid_argument("basis rows start at i = 1");
    }
    {
        std::shared_lock lock(mutex_);
        const auto it = rows_.find(i);
        if (it != rows_.end()) {
            return it->second;
        }
    }
    const auto source = cache_.power(i, row_source_precision(i));
    auto row = std::make_shared<const PhiPolynomial>(decompose_in_phi(u_p(source, 2), guard_, cache_));
    std::unique_lock lock(mutex_);
    return rows_.try_emplace(i, std::move(row)).first->second;
}

U2BasisRow U2Workspace::basis_row(Degree i)
{
    return {i, *basis_row_ref(i)};
}

void U2Workspace::reserve_rows(Degree i_max)
{
    {
        std::shared_lock lock(mutex_);
        if (std::distance(rows_.begin(), rows_.upper_bound(i_max)) == static_cast<std::ptrdiff_t>(i_max)) {
            return;
        }
    }
    // Sources phi^i need the full row precision; the powers peeled off U_2 phi^i only
    // need the precision U_2 leaves behind.
    cache_.reserve(i_max, row_source_precision(i_max));
    cache_.reserve(2 * i_max, row_source_precision(i_max) / 2);
    for (Degree i = 1; i <= i_max; ++i) {
        basis_row_ref(i);
    }
}

U2BasisRow u2_basis_row(Degree i, U2Workspace& ws)
{
    return ws.basis_row(i);
}

PhiPolynomial apply_u2_algebraic(const PhiPolynomial& p, U2Workspace& ws)
{
    if (p.empty()) {
        return {};
    }
    ws.reserve_rows(p.max_degree());
    PhiPolynomial out;
    for (const auto& [i, d] : p.terms()) {
        const auto row = ws.basis_row_ref(i);
        for (const auto& [j, b] : row->terms()) {
            out.add_product(j, d, b);
        }
    }
    return out;
}

std::uint64_t direct_source_precision(unsigned m, unsigned alpha, unsigned guard)
{
    if (alpha >= 40) {
        return UINT64_MAX;
    }
    const std::uint64_t scale = std::uint64_t{1} << alpha;
    return scale * (scale * m + guard + 1);
}

PhiPolynomial u2_iterate(unsigned m, unsigned alpha, U2Strategy strategy, U2Workspace& ws)
{
    if (m == 0) {
        throw std::invalid_argument("u2_iterate requires m >= 1");
    }
    if (alpha == 0) {
        return PhiPolynomial::monomial(m);
    }
    if (strategy == U2Strategy::algebraic) {
        PhiPolynomial p = PhiPolynomial::monomial(m);
        for (unsigned a = 0; a < alpha; ++a) {
            p = apply_u2_algebraic(p, ws);
        }
        return p;
    }
    const std::uint64_t src = direct_source_precision(m, alpha, ws.guard());
    if (src > ws.term_budget()) {
        throw TermBudgetError("direct strategy for m=" + std::to_string(m) + ", alpha=" + std::to_string(alpha) +
                              " needs " + std::to_string(src) + " terms (budget " + std::to_string(ws.term_budget()) +
                              "); use the algebraic strategy");
    }
    LaurentSeries s = ws.cache().power(m, static_cast<Exponent>(src));
    for (unsigned a = 0; a < alpha; ++a) {
        s = u_p(s, 2);
    }
    return decompose_in_phi(s, ws.guard(), ws.cache());
}

PhiPolynomial newton_g1()
{
    PhiPolynomial g;
    g.set(1, Integer(3) << 16);
    g.set(2, Integer(1) << 24);
    return g;
}

PhiPolynomial newton_g2()
{
    return PhiPolynomial::monomial(1, -(Integer(1) << 24));
}

NewtonState::NewtonState() : s_prev_(newton_g1()), g1_(newton_g1()), g2_(newton_g2()) {}

void NewtonState::advance()
{
    PhiPolynomial next;
    if (index_ == 1) {
        // S_2 = g1 S_1 - 2 g2 (the S_0 = 2 term of the recursion).
        next = g1_ * s_prev_ - Integer(2) * g2_;
    } else {
        next = g1_ * s_prev_ - g2_ * s_prev2_;
    }
    s_prev2_ = std::move(s_prev_);
    s_prev_ = std::move(next);
    ++index_;
}

PhiPolynomial newton_s(unsigned m)
{
    if (m == 0) {
        throw std::invalid_argument("newton_s requires m >= 1");
    }
    NewtonState state;
    while (state.index() < m) {
        state.advance();
    }
    return state.current();
}

bool in_scaled_ring_r(const PhiPolynomial& p, unsigned k)
{
    for (const auto& [n, d] : p.terms()) {
        const std::int64_t need = static_cast<std::int64_t>(k) + (n >= 2 ? 8 * (static_cast<std::int64_t>(n) - 1) : 0);
        if (!two_adic_valuation(d).at_least(need)) {
            return false;
        }
    }
    return true;
}

LehnerConstants lehner_constants(U2Workspace& ws)
{
    const auto row = ws.basis_row_ref(1);
    if (row->empty() || row->min_degree() < 1 || row->max_degree() > 2) {
        throw std::logic_error("U_2 phi is not of the form 2(b1 phi + b2 phi^2): " + row->to_string());
    }
    const Integer d1 = row->coeff(1);
    const Integer d2 = row->coeff(2);
    if (!mpz_even_p(d1.get_mpz_t()) || !mpz_even_p(d2.get_mpz_t())) {
        throw std::logic_error("U_2 phi has an odd coefficient: " + row->to_string());
    }
    LehnerConstants c{d1 / 2, d2 / 2};
    PhiPolynomial g1;
    g1.set(1, c.b1 << 14);
    g1.set(2, c.b2 << 14);
    if (!(g1 == newton_g1())) {
        throw std::logic_error("2^14 (b1 phi + b2 phi^2) = " + g1.to_string() + " disagrees with g1 = " +
                               newton_g1().to_string());
    }
    return c;
}

HalfGridSeries modular_equation_residual(Exponent w_precision, U2Workspace& ws)
{
    if (w_precision < 4) {
        throw std::invalid_argument("modular_equation_residual requires w_precision >= 4");
    }
    const LehnerConstants c = lehner_constants(ws);
    const Exponent q_precision = detail::ceil_div(w_precision, 2);

    PhiPolynomial g1;
    g1.set(1, c.b1 << 14);
    g1.set(2, c.b2 << 14);
    const PhiPolynomial g2 = PhiPolynomial::monomial(1, -(c.b2 << 14));

    const LaurentSeries big_g1 = lift_to_half_grid(evaluate(g1, q_precision, ws.cache())).in_w.truncated(w_precision);
    const LaurentSeries big_g2 = lift_to_half_grid(evaluate(g2, q_precision, ws.cache())).in_w.truncated(w_precision);
    const LaurentSeries h0 = h0_series(w_precision).in_w;

    const LaurentSeries residual = series_add(series_sub(series_mul(h0, h0), series_mul(big_g1, h0)), big_g2);
    return {residual.truncated(w_precision)};
}

}  // namespace phicong
