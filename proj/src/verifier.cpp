#include "phicong/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "phicong/combinatorics.hpp"
#include "phicong/eta_phi.hpp"

namespace phicong {

namespace {

using Records = std::vector<PointRecord>;
using Clock = std::chrono::steady_clock;

// Runs work(i) for i in [0, n); each item returns its records. A throwing item becomes a
// single failing record so the sweep always completes.
std::vector<Records> run_items(std::size_t n, unsigned threads, const std::string& check,
                               const std::function<std::vector<std::pair<std::string, std::int64_t>>(std::size_t)>& key,
                               const std::function<Records(std::size_t)>& work)
{
    std::vector<Records> out(n);
    auto one = [&](std::size_t i) {
        try {
            out[i] = work(i);
        } catch (const std::exception& e) {
            out[i] = {PointRecord{check, key(i), std::string("error: ") + e.what(), "no error", false, false}};
        }
    };
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            one(i);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned t = std::min<std::size_t>(threads, n);
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                one(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    return out;
}

bool record_less(const PointRecord& a, const PointRecord& b)
{
    if (a.check != b.check) {
        return a.check < b.check;
    }
    const std::size_t n = std::min(a.inputs.size(), b.inputs.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (a.inputs[k].second != b.inputs[k].second) {
            return a.inputs[k].second < b.inputs[k].second;
        }
    }
    return a.inputs.size() < b.inputs.size();
}

VerificationReport assemble(std::string theorem, std::vector<std::pair<std::string, std::int64_t>> grid,
                            std::vector<Records> parts, Clock::time_point start)
{
    VerificationReport r;
    r.theorem = std::move(theorem);
    r.grid = std::move(grid);
    std::size_t total = 0;
    for (const auto& p : parts) {
        total += p.size();
    }
    r.records.reserve(total);
    for (auto& p : parts) {
        std::move(p.begin(), p.end(), std::back_inserter(r.records));
    }
    std::stable_sort(r.records.begin(), r.records.end(), record_less);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        if (!r.records[i].pass) {
            r.failures.push_back(i);
        }
        if (r.records[i].tight) {
            ++r.summary.tight;
        }
    }
    r.summary.points = r.records.size();
    r.summary.failures = r.failures.size();
    r.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

std::int64_t to_i64(std::uint64_t v)
{
    return static_cast<std::int64_t>(v);
}

// A record asserting nu >= bound.
PointRecord valuation_record(std::string check, std::vector<std::pair<std::string, std::int64_t>> inputs,
                             const Valuation& nu, std::int64_t bound)
{
    return {std::move(check), std::move(inputs), nu.to_string(), ">= " + std::to_string(bound), nu.at_least(bound),
            nu.equals(bound)};
}

}  // namespace

const PointRecord* VerificationReport::find(const std::string& check, const std::vector<std::int64_t>& inputs) const
{
    for (const auto& r : records) {
        if (r.check != check || r.inputs.size() != inputs.size()) {
            continue;
        }
        bool same = true;
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            same = same && r.inputs[k].second == inputs[k];
        }
        if (same) {
            return &r;
        }
    }
    return nullptr;
}

VerificationReport verify_congruence(unsigned m_max, std::uint64_t n_max, const VerifyOptions& opts)
{
    if (m_max < 1 || n_max < m_max) {
        throw std::invalid_argument("verify_congruence requires 1 <= m_max <= n_max");
    }
    const auto start = Clock::now();
    const auto precision = static_cast<Exponent>(n_max) + 1;
    // phi^m is built from phi^(m-1); warming phi first keeps workers from racing on it.
    default_phi_cache().power_ref(1, precision);
    auto parts = run_items(
        m_max, opts.threads, "congruence",
        [](std::size_t i) { return std::vector<std::pair<std::string, std::int64_t>>{{"m", to_i64(i + 1)}}; },
        [&](std::size_t i) {
            const auto m = static_cast<unsigned>(i + 1);
            const auto series = default_phi_cache().power_ref(m, precision);
            Records recs;
            recs.reserve(static_cast<std::size_t>(n_max - m + 1));
            for (std::uint64_t n = m; n <= n_max; ++n) {
                const CongruenceCase c = make_congruence_case(m, n);
                const Valuation nu = two_adic_valuation(series->coeff(static_cast<Exponent>(n)));
                recs.push_back(valuation_record("congruence",
                                                {{"m", m}, {"n", to_i64(n)}, {"alpha", c.alpha}, {"gamma", c.gamma}},
                                                nu, c.modulus_exponent));
            }
            return recs;
        });
    return assemble("congruence", {{"m_max", m_max}, {"n_max", to_i64(n_max)}}, std::move(parts), start);
}

VerificationReport verify_valuation_bound(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts)
{
    if (m_max < 1 || alpha_max < 1) {
        throw std::invalid_argument("verify_valuation_bound requires m_max >= 1 and alpha_max >= 1");
    }
    const auto start = Clock::now();
    U2Workspace ws(opts.guard);
    if (opts.strategy == U2Strategy::algebraic) {
        // Largest row touched: degree 2^(alpha_max - 1) m_max.
        ws.reserve_rows(static_cast<Degree>((std::uint64_t{1} << (alpha_max - 1)) * m_max));
    }
    auto parts = run_items(
        m_max, opts.threads, "valuation_bound",
        [](std::size_t i) { return std::vector<std::pair<std::string, std::int64_t>>{{"m", to_i64(i + 1)}}; },
        [&](std::size_t i) {
            const auto m = static_cast<unsigned>(i + 1);
            Records recs;
            PhiPolynomial p = PhiPolynomial::monomial(m);
            for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
                p = opts.strategy == U2Strategy::algebraic ? apply_u2_algebraic(p, ws)
                                                           : u2_iterate(m, alpha, U2Strategy::direct, ws);
                const std::uint64_t lo = f_iter(m, alpha);
                const std::uint64_t hi = (std::uint64_t{1} << alpha) * m;
                for (const auto& [j, d] : p.terms()) {
                    const bool inside = j >= lo && j <= hi;
                    const std::int64_t bound = better_bound(m, j, alpha);
                    PointRecord rec = valuation_record("valuation_bound", {{"m", m}, {"alpha", alpha}, {"j", j}},
                                                       two_adic_valuation(d), bound);
                    if (!inside) {
                        rec.pass = false;
                        rec.required += " and j in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
                    }
                    recs.push_back(std::move(rec));
                }
            }
            return recs;
        });
    return assemble("valuation_bound", {{"m_max", m_max}, {"alpha_max", alpha_max}, {"guard", opts.guard}},
                    std::move(parts), start);
}

VerificationReport verify_support(unsigned m_max, const VerifyOptions& opts)
{
    if (m_max < 1) {
        throw std::invalid_argument("verify_support requires m_max >= 1");
    }
    const auto start = Clock::now();
    U2Workspace ws(opts.guard);
    ws.reserve_rows(m_max);
    auto parts = run_items(
        m_max, opts.threads, "support",
        [](std::size_t i) { return std::vector<std::pair<std::string, std::int64_t>>{{"m", to_i64(i + 1)}}; },
        [&](std::size_t i) {
            const auto m = static_cast<Degree>(i + 1);
            const auto row = ws.basis_row_ref(m);
            Records recs;
            const Degree lo = (m + 1) / 2;
            const Degree hi = 2 * m;
            std::ostringstream observed;
            bool ok = !row->empty();
            if (ok) {
                observed << "[" << row->min_degree() << ", " << row->max_degree() << "]";
                // The map stores no zeros, so matching extremes means nonzero endpoints.
                ok = row->min_degree() == lo && row->max_degree() == hi;
            } else {
                observed << "empty";
            }
            recs.push_back({"support", {{"m", m}}, observed.str(),
                            "[" + std::to_string(lo) + ", " + std::to_string(hi) + "] with nonzero endpoints", ok,
                            ok});
            for (const auto& [j, d] : row->terms()) {
                const std::int64_t bound = 12 * (static_cast<std::int64_t>(j) - m) - 1;
                recs.push_back(valuation_record("integrality", {{"m", m}, {"j", j}}, two_adic_valuation(d), bound));
            }
            return recs;
        });
    return assemble("support", {{"m_max", m_max}, {"guard", opts.guard}}, std::move(parts), start);
}

VerificationReport verify_parity(std::uint64_t n_max, const VerifyOptions& opts)
{
    if (n_max < 1) {
        throw std::invalid_argument("verify_parity requires n_max >= 1");
    }
    (void)opts;
    const auto start = Clock::now();
    const auto precision = static_cast<Exponent>(n_max) + 1;
    const LaurentSeries phi = phi_series(std::max<Exponent>(precision, 2));
    const auto mod2 = phi_parity_via_product(precision);
    const std::uint64_t t_max = (n_max - 1) / 8;
    const auto tc = t_counts(t_max);

    std::vector<Records> parts(2);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const bool by_series = mpz_odd_p(phi.coeff(static_cast<Exponent>(n)).get_mpz_t()) != 0;
        const bool by_product = mod2[n] != 0;
        const bool by_partitions = n % 8 == 1 && mpz_odd_p(tc[(n - 1) / 8].get_mpz_t()) != 0;
        const bool expected = is_odd_square(n);
        std::ostringstream observed;
        observed << "series=" << by_series << " product=" << by_product << " partitions=" << by_partitions;
        const bool agree = by_series == by_product && by_product == by_partitions;
        parts[0].push_back({"parity", {{"n", to_i64(n)}}, observed.str(),
                            std::string("odd_square=") + (expected ? "1" : "0"), agree && by_series == expected,
                            false});
    }
    for (std::uint64_t t = 0; t <= t_max; ++t) {
        const bool odd = mpz_odd_p(tc[t].get_mpz_t()) != 0;
        const bool tri = is_triangular(t);
        parts[1].push_back({"t_count_triangular", {{"t", to_i64(t)}},
                            "t_count=" + tc[t].get_str() + (odd ? " (odd)" : " (even)"),
                            std::string("triangular=") + (tri ? "1" : "0"), odd == tri, false});
    }
    return assemble("parity", {{"n_max", to_i64(n_max)}}, std::move(parts), start);
}

VerificationReport compare_bounds(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts)
{
    if (m_max < 1 || alpha_max < 1) {
        throw std::invalid_argument("compare_bounds requires m_max >= 1 and alpha_max >= 1");
    }
    (void)opts;
    const auto start = Clock::now();
    Records recs;
    std::int64_t lehner_trivial = 0;
    std::int64_t min_gap = INT64_MAX;
    std::int64_t max_gap = INT64_MIN;
    for (unsigned m = 1; m <= m_max; ++m) {
        for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
            const std::uint64_t lo = f_iter(m, alpha);
            const std::uint64_t hi = (std::uint64_t{1} << alpha) * m;
            for (std::uint64_t j = lo; j <= hi; ++j) {
                const std::int64_t better = better_bound(m, j, alpha);
                const std::int64_t lehner = lehner_bound(m, j, alpha);
                if (lehner < 0 && better >= 0) {
                    ++lehner_trivial;
                }
                min_gap = std::min(min_gap, better - lehner);
                max_gap = std::max(max_gap, better - lehner);
                recs.push_back({"compare_bounds",
                                {{"m", m}, {"alpha", alpha}, {"j", to_i64(j)}},
                                "better=" + std::to_string(better),
                                "lehner=" + std::to_string(lehner),
                                better >= lehner,
                                better == lehner});
            }
        }
    }
    std::vector<Records> parts;
    parts.push_back(std::move(recs));
    auto r = assemble("compare_bounds", {{"m_max", m_max}, {"alpha_max", alpha_max}}, std::move(parts), start);
    r.summary.extra["lehner_trivial"] = lehner_trivial;
    r.summary.extra["min_gap"] = min_gap;
    r.summary.extra["max_gap"] = max_gap;
    return r;
}

VerificationReport verify_identities(const IdentityGrid& grid, const VerifyOptions& opts)
{
    const auto start = Clock::now();
    U2Workspace ws(opts.guard);
    std::vector<Records> parts;

    auto guarded = [&](const std::string& check, std::vector<std::pair<std::string, std::int64_t>> inputs,
                       const std::function<PointRecord()>& body) {
        try {
            parts.push_back({body()});
        } catch (const std::exception& e) {
            parts.push_back({PointRecord{check, std::move(inputs), std::string("error: ") + e.what(), "no error",
                                         false, false}});
        }
    };

    guarded("lehner_constants", {}, [&] {
        const auto c = lehner_constants(ws);
        return PointRecord{"lehner_constants", {}, "b1=" + c.b1.get_str() + " b2=" + c.b2.get_str(),
                           "2^14 (b1 phi + b2 phi^2) = g1", true, false};
    });

    NewtonState newton;
    for (unsigned m = 1; m <= grid.newton_m_max; ++m) {
        if (m > 1) {
            newton.advance();
        }
        const PhiPolynomial s = newton.current();
        guarded("newton_bridge", {{"m", m}}, [&] {
            const PhiPolynomial lhs = scale_pow2(u2_iterate(m, 1, U2Strategy::algebraic, ws), 1 + 12 * m);
            const bool ok = lhs == s;
            return PointRecord{"newton_bridge", {{"m", m}}, ok ? "equal" : "differs: " + lhs.to_string(),
                               "2^(1+12m) U_2 phi^m = S_m", ok, false};
        });
        guarded("ring_r", {{"m", m}}, [&] {
            const bool ok = in_scaled_ring_r(s, 8 * (m + 1));
            return PointRecord{"ring_r", {{"m", m}}, ok ? "member" : "not a member",
                               "S_m in 2^" + std::to_string(8 * (m + 1)) + " R", ok, false};
        });
    }

    guarded("modular_equation", {{"w_precision", grid.residual_w_precision}}, [&] {
        const auto residual = modular_equation_residual(grid.residual_w_precision, ws);
        const bool ok = residual.in_w.is_zero() && residual.in_w.precision() >= grid.residual_w_precision;
        return PointRecord{"modular_equation",
                           {{"w_precision", grid.residual_w_precision}},
                           ok ? "zero through w^" + std::to_string(residual.in_w.precision())
                              : "nonzero: " + residual.in_w.to_string(4),
                           "h0^2 - G1 h0 + G2 = 0",
                           ok,
                           false};
    });

    for (unsigned m = 1; m <= grid.half_grid_m_max; ++m) {
        guarded("half_grid", {{"m", m}, {"w_precision", grid.half_grid_w_precision}}, [&] {
            const LaurentSeries via_w = u2_phi_power_via_half_grid(m, grid.half_grid_w_precision);
            const LaurentSeries direct = u_p(phi_power(m, grid.half_grid_w_precision), 2);
            const Exponent p = std::min(via_w.precision(), direct.precision());
            const bool ok = via_w.truncated(p) == direct.truncated(p) && p >= grid.half_grid_w_precision / 2;
            return PointRecord{"half_grid",
                               {{"m", m}, {"w_precision", grid.half_grid_w_precision}},
                               ok ? "equal through q^" + std::to_string(p) : "differs",
                               "2^(-1-12m)(h0^m + h1^m) = U_2 phi^m",
                               ok,
                               false};
        });
    }

    return assemble("identities",
                    {{"newton_m_max", grid.newton_m_max},
                     {"residual_w_precision", grid.residual_w_precision},
                     {"half_grid_m_max", grid.half_grid_m_max},
                     {"half_grid_w_precision", grid.half_grid_w_precision}},
                    std::move(parts), start);
}

VerificationReport verify_strategy_equivalence(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts)
{
    const auto start = Clock::now();
    U2Workspace ws(opts.guard);
    std::vector<Records> parts;
    for (unsigned m = 1; m <= m_max; ++m) {
        Records recs;
        for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
            std::vector<std::pair<std::string, std::int64_t>> inputs{{"m", m}, {"alpha", alpha}};
            try {
                const auto direct = u2_iterate(m, alpha, U2Strategy::direct, ws);
                const auto algebraic = u2_iterate(m, alpha, U2Strategy::algebraic, ws);
                const bool ok = direct == algebraic;
                recs.push_back({"strategies", inputs,
                                ok ? std::to_string(direct.size()) + " equal terms" : "direct and algebraic differ",
                                "direct = algebraic", ok, false});
            } catch (const std::exception& e) {
                recs.push_back({"strategies", inputs, std::string("error: ") + e.what(), "no error", false, false});
            }
        }
        parts.push_back(std::move(recs));
    }
    return assemble("strategies", {{"m_max", m_max}, {"alpha_max", alpha_max}, {"guard", opts.guard}},
                    std::move(parts), start);
}

VerificationReport verify_gamma_equivalence(std::uint64_t m_max, unsigned alpha_max, const VerifyOptions& opts)
{
    (void)opts;
    const auto start = Clock::now();
    Records recs;
    recs.reserve(static_cast<std::size_t>(m_max * (alpha_max + 1)));
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        for (unsigned alpha = 0; alpha <= alpha_max; ++alpha) {
            const unsigned a = gamma_binary(m, alpha);
            const unsigned b = gamma_via_f(m, alpha);
            recs.push_back({"gamma", {{"m", to_i64(m)}, {"alpha", alpha}}, std::to_string(a),
                            "gamma_via_f=" + std::to_string(b), a == b, false});
        }
        // At alpha = 1 the theorem-level 3 gamma + c collapses to the base-case correction.
        // Both sides depend on j only through whether m = 2j, so the low end, its
        // successor and the top of the support cover every branch.
        const std::uint64_t lo = (m + 1) / 2;
        std::vector<std::uint64_t> js{lo};
        if (lo + 1 < 2 * m) {
            js.push_back(lo + 1);
        }
        if (2 * m > lo) {
            js.push_back(2 * m);
        }
        for (const std::uint64_t j : js) {
            const int level = 3 * static_cast<int>(gamma_binary(m, 1)) + c_term(m, j, 1);
            const int base = base_case_c(m, j);
            recs.push_back({"base_case_c", {{"m", to_i64(m)}, {"j", to_i64(j)}}, std::to_string(level),
                            "base_case_c=" + std::to_string(base), level == base, false});
        }
    }
    std::vector<Records> parts;
    parts.push_back(std::move(recs));
    return assemble("gamma", {{"m_max", to_i64(m_max)}, {"alpha_max", alpha_max}}, std::move(parts), start);
}

nlohmann::json report_to_json(const VerificationReport& r, bool include_records, bool include_wall_time)
{
    using nlohmann::json;
    auto pairs = [](const std::vector<std::pair<std::string, std::int64_t>>& v) {
        json o = json::object();
        for (const auto& [k, x] : v) {
            o[k] = x;
        }
        return o;
    };
    auto record = [&](const PointRecord& p) {
        return json{{"check", p.check},       {"inputs", pairs(p.inputs)}, {"observed", p.observed},
                    {"required", p.required}, {"pass", p.pass},            {"tight", p.tight}};
    };
    json j;
    j["theorem"] = r.theorem;
    j["grid"] = pairs(r.grid);
    json summary{{"points", r.summary.points}, {"failures", r.summary.failures}, {"tight", r.summary.tight}};
    for (const auto& [k, v] : r.summary.extra) {
        summary[k] = v;
    }
    j["summary"] = std::move(summary);
    json failures = json::array();
    for (const std::size_t i : r.failures) {
        failures.push_back(record(r.records[i]));
    }
    j["failures"] = std::move(failures);
    if (include_records) {
        json recs = json::array();
        for (const auto& p : r.records) {
            recs.push_back(record(p));
        }
        j["records"] = std::move(recs);
    }
    if (include_wall_time) {
        j["wall_seconds"] = r.wall_seconds;
    }
    return j;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_to_csv(const VerificationReport& r)
{
    std::ostringstream os;
    os << "check,inputs,observed,required,pass,tight\n";
    for (const auto& p : r.records) {
        std::string inputs;
        for (const auto& [k, v] : p.inputs) {
            inputs += (inputs.empty() ? "" : ";") + k + "=" + std::to_string(v);
        }
        os << csv_field(p.check) << ',' << csv_field(inputs) << ',' << csv_field(p.observed) << ','
           << csv_field(p.required) << ',' << (p.pass ? 1 : 0) << ',' << (p.tight ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace phicong
