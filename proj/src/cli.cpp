#include "phicong/cli.hpp"

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "phicong/combinatorics.hpp"
#include "phicong/eta_phi.hpp"
#include "phicong/json_io.hpp"
#include "phicong/phi_algebra.hpp"
#include "phicong/verifier.hpp"

namespace phicong::cli {

namespace {

struct CliConfig {
    std::string format;
    std::string output;
    unsigned threads = 1;
    unsigned guard = kDefaultGuard;
    std::string strategy = "algebraic";
    bool summary_only = false;
    bool no_wall_time = false;

    unsigned m = 1;
    unsigned alpha = 1;
    unsigned m_max = 0;
    std::uint64_t n_max = 0;
    unsigned alpha_max = 0;
    Exponent precision = 20;
    IdentityGrid identities;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::filesystem::path path(cfg.output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            path = std::filesystem::path(dir) / path;
        }
    }
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot open output file " + path.string());
    }
    f << text;
}

std::string with_newline(std::string s)
{
    if (s.empty() || s.back() != '\n') {
        s += '\n';
    }
    return s;
}

// ---- phi -------------------------------------------------------------------

std::string render_phi(const CliConfig& cfg)
{
    const LaurentSeries s = phi_power(cfg.m, cfg.precision);
    if (cfg.format == "json") {
        auto j = series_to_json(s);
        j["m"] = cfg.m;
        return j.dump(2);
    }
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "n,a(" << cfg.m << ",n)\n";
        for (Exponent n = cfg.m; n < s.precision(); ++n) {
            os << n << ',' << s.coeff(n).get_str() << '\n';
        }
    } else {
        os << "| n | a(" << cfg.m << ",n) |\n|---|---|\n";
        for (Exponent n = cfg.m; n < s.precision(); ++n) {
            os << "| " << n << " | " << s.coeff(n).get_str() << " |\n";
        }
    }
    return os.str();
}

// ---- u2 --------------------------------------------------------------------

std::string render_polynomial(const CliConfig& cfg, const PhiPolynomial& p)
{
    if (cfg.format == "json") {
        auto j = phi_polynomial_to_json(p, cfg.m, cfg.alpha);
        j["strategy"] = cfg.strategy;
        return j.dump(2);
    }
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "j,d(m,j,alpha),nu2\n";
        for (const auto& [j, d] : p.terms()) {
            os << j << ',' << d.get_str() << ',' << two_adic_valuation(d).to_string() << '\n';
        }
    } else {
        os << "| j | d(" << cfg.m << ",j," << cfg.alpha << ") | ν₂ |\n|---|---|---|\n";
        for (const auto& [j, d] : p.terms()) {
            os << "| " << j << " | " << d.get_str() << " | " << two_adic_valuation(d).to_string() << " |\n";
        }
    }
    return os.str();
}

int run_u2(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    U2Workspace ws(cfg.guard);
    if (cfg.strategy == "both") {
        const auto direct = u2_iterate(cfg.m, cfg.alpha, U2Strategy::direct, ws);
        const auto algebraic = u2_iterate(cfg.m, cfg.alpha, U2Strategy::algebraic, ws);
        emit(cfg, with_newline(render_polynomial(cfg, algebraic)), out);
        if (!(direct == algebraic)) {
            err << "direct and algebraic strategies disagree\n";
            return kExitFailure;
        }
        return kExitOk;
    }
    const auto strategy = cfg.strategy == "direct" ? U2Strategy::direct : U2Strategy::algebraic;
    emit(cfg, with_newline(render_polynomial(cfg, u2_iterate(cfg.m, cfg.alpha, strategy, ws))), out);
    return kExitOk;
}

// ---- gamma -----------------------------------------------------------------

std::string render_gamma(const CliConfig& cfg)
{
    const std::uint64_t m = cfg.m;
    const unsigned from = static_cast<unsigned>(std::bit_width(m));
    // Past the leading 1 every step adds one: gamma(m, alpha) = alpha - offset.
    const unsigned offset = from - gamma_binary(m, from);
    std::vector<unsigned> values;
    for (unsigned a = 0; a <= cfg.alpha_max; ++a) {
        values.push_back(gamma_binary(m, a));
    }
    if (cfg.format == "json") {
        nlohmann::json j{{"m", m}, {"alpha_max", cfg.alpha_max}, {"gamma", values},
                         {"tail", {{"from_alpha", from}, {"offset", offset}}}};
        return j.dump(2);
    }
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "alpha,gamma\n";
        for (unsigned a = 0; a <= cfg.alpha_max; ++a) {
            os << a << ',' << values[a] << '\n';
        }
        return os.str();
    }
    const std::string tail = offset == 0 ? "α" : "α − " + std::to_string(offset);
    os << "| α |";
    for (unsigned a = 0; a <= cfg.alpha_max; ++a) {
        os << ' ' << a << " |";
    }
    os << " ⋯ | α | ⋯ |\n|---|";
    for (unsigned a = 0; a <= cfg.alpha_max; ++a) {
        os << "---|";
    }
    os << "---|---|---|\n| γ(" << m << ",α) |";
    for (const unsigned v : values) {
        os << ' ' << v << " |";
    }
    os << " ⋯ | " << tail << " | ⋯ |\n";
    return os.str();
}

// ---- tables ----------------------------------------------------------------

std::string render_odd_coeffs(const CliConfig& cfg)
{
    const LaurentSeries phi = phi_series(static_cast<Exponent>(cfg.n_max) + 1);
    std::vector<std::pair<std::uint64_t, std::string>> odd;
    std::uint64_t even = 0;
    for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
        const Integer& c = phi.coeff(static_cast<Exponent>(n));
        if (mpz_odd_p(c.get_mpz_t()) != 0) {
            odd.emplace_back(n, c.get_str());
        } else {
            ++even;
        }
    }
    if (cfg.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [n, c] : odd) {
            rows.push_back({{"n", n}, {"coefficient", c}});
        }
        return nlohmann::json{{"n_max", cfg.n_max}, {"odd", rows}, {"even_count", even}}.dump(2);
    }
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "n,a(1,n)\n";
        for (const auto& [n, c] : odd) {
            os << n << ',' << c << '\n';
        }
        return os.str();
    }
    os << "| n | a(1,n) |\n|---|---|\n";
    for (const auto& [n, c] : odd) {
        os << "| " << n << " | " << c << " |\n";
    }
    os << "\nAll other a(1,n) with n <= " << cfg.n_max << " are even (" << even << " coefficients).\n";
    return os.str();
}

// ---- verify ----------------------------------------------------------------

std::string render_report(const CliConfig& cfg, const VerificationReport& r)
{
    if (cfg.format == "csv") {
        return report_to_csv(r);
    }
    if (cfg.format == "json") {
        return report_to_json(r, !cfg.summary_only, !cfg.no_wall_time).dump(2);
    }
    std::ostringstream os;
    os << "| theorem | points | failures | tight |";
    for (const auto& [k, v] : r.summary.extra) {
        os << ' ' << k << " |";
    }
    os << "\n|---|---|---|---|";
    for (std::size_t k = 0; k < r.summary.extra.size(); ++k) {
        os << "---|";
    }
    os << "\n| " << r.theorem << " | " << r.summary.points << " | " << r.summary.failures << " | " << r.summary.tight
       << " |";
    for (const auto& [k, v] : r.summary.extra) {
        os << ' ' << v << " |";
    }
    os << '\n';
    if (!r.failures.empty()) {
        os << "\n| check | inputs | observed | required |\n|---|---|---|---|\n";
        for (const std::size_t i : r.failures) {
            const auto& p = r.records[i];
            std::string inputs;
            for (const auto& [k, v] : p.inputs) {
                inputs += (inputs.empty() ? "" : ", ") + k + "=" + std::to_string(v);
            }
            os << "| " << p.check << " | " << inputs << " | " << p.observed << " | " << p.required << " |\n";
        }
    }
    return os.str();
}

int finish_report(const CliConfig& cfg, const VerificationReport& r, std::ostream& out, std::ostream& err)
{
    emit(cfg, with_newline(render_report(cfg, r)), out);
    if (!r.passed()) {
        err << r.theorem << ": " << r.summary.failures << " of " << r.summary.points << " points failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

VerifyOptions verify_options(const CliConfig& cfg)
{
    VerifyOptions o;
    o.threads = std::max(1U, cfg.threads);
    o.guard = cfg.guard;
    o.strategy = cfg.strategy == "direct" ? U2Strategy::direct : U2Strategy::algebraic;
    return o;
}

void require_positive(std::uint64_t v, const char* name)
{
    if (v == 0) {
        throw ConfigError(std::string(name) + " must be positive");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact q-series engine and verification harness for powers of the level-2 Hauptmodul phi",
                 "phicong"};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto formats = CLI::IsMember({"json", "csv", "markdown"});
    auto add_verify_common = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
        sub->add_option("--guard", cfg.guard, "Certification guard width for phi-decompositions");
        sub->add_flag("--summary-only", cfg.summary_only, "Omit per-point records from JSON output");
        sub->add_flag("--no-wall-time", cfg.no_wall_time, "Omit the wall-time field from JSON output");
    };

    auto* phi = app.add_subcommand("phi", "Expand phi^m as a q-series");
    phi->add_option("--m", cfg.m, "Power of phi")->check(CLI::PositiveNumber);
    phi->add_option("--precision", cfg.precision, "Exclusive exponent bound")->check(CLI::Range(2, 1 << 20));

    auto* u2 = app.add_subcommand("u2", "Write U_2^alpha phi^m as a polynomial in phi");
    u2->add_option("--m", cfg.m, "Power of phi")->check(CLI::PositiveNumber);
    u2->add_option("--alpha", cfg.alpha, "Number of U_2 applications");
    u2->add_option("--strategy", cfg.strategy, "direct, algebraic or both")
        ->check(CLI::IsMember({"direct", "algebraic", "both"}));
    u2->add_option("--guard", cfg.guard, "Certification guard width");

    auto* gamma = app.add_subcommand("gamma", "Tabulate gamma(m, alpha)");
    gamma->add_option("--m", cfg.m, "m")->check(CLI::PositiveNumber);
    cfg.alpha_max = 9;
    gamma->add_option("--alpha-max", cfg.alpha_max, "Largest alpha")->check(CLI::Range(0U, 4096U));

    auto* verify = app.add_subcommand("verify", "Run a verification sweep");
    verify->require_subcommand(1);
    auto* v_cong = verify->add_subcommand("congruence", "a(m, 2^alpha n') = 0 mod 2^(3 gamma(m, alpha))");
    v_cong->add_option("--m-max", cfg.m_max, "Largest m")->required();
    v_cong->add_option("--n-max", cfg.n_max, "Largest n")->required();
    auto* v_bound = verify->add_subcommand("bound", "2-adic bound on d(m, j, alpha)");
    v_bound->add_option("--m-max", cfg.m_max, "Largest m")->required();
    v_bound->add_option("--alpha-max", cfg.alpha_max, "Largest alpha")->required();
    v_bound->add_option("--strategy", cfg.strategy, "direct or algebraic")
        ->check(CLI::IsMember({"direct", "algebraic"}));
    auto* v_support = verify->add_subcommand("support", "Support and integrality of U_2 phi^m");
    v_support->add_option("--m-max", cfg.m_max, "Largest m")->required();
    auto* v_parity = verify->add_subcommand("parity", "a(1, n) odd iff n is an odd square");
    v_parity->add_option("--n-max", cfg.n_max, "Largest n")->required();
    auto* v_ident = verify->add_subcommand("identities", "Newton bridge, ring R, modular equation, half grid");
    v_ident->add_option("--newton-m-max", cfg.identities.newton_m_max, "Largest m for the Newton checks");
    v_ident->add_option("--residual-w-precision", cfg.identities.residual_w_precision,
                        "w-precision of the modular-equation residual")
        ->check(CLI::Range(4, 1 << 20));
    v_ident->add_option("--half-grid-m-max", cfg.identities.half_grid_m_max, "Largest m for the half-grid identity");
    v_ident->add_option("--half-grid-w-precision", cfg.identities.half_grid_w_precision,
                        "w-precision of the half-grid identity")
        ->check(CLI::Range(2, 1 << 20));
    auto* v_strat = verify->add_subcommand("strategies", "Direct and algebraic U_2 iteration agree");
    v_strat->add_option("--m-max", cfg.m_max, "Largest m")->required();
    v_strat->add_option("--alpha-max", cfg.alpha_max, "Largest alpha")->required();
    auto* v_gamma = verify->add_subcommand("gamma", "Binary and halving-map definitions of gamma agree");
    v_gamma->add_option("--m-max", cfg.m_max, "Largest m")->required();
    v_gamma->add_option("--alpha-max", cfg.alpha_max, "Largest alpha")->required();

    auto* cmp = app.add_subcommand("compare-bounds", "Compare the new bound with Lehner's bound");
    cmp->add_option("--m-max", cfg.m_max, "Largest m")->required();
    cmp->add_option("--alpha-max", cfg.alpha_max, "Largest alpha")->required();

    auto* tables = app.add_subcommand("tables", "Fixed tables: odd coefficients of phi, gamma(40, alpha)");
    tables->require_subcommand(1);
    auto* t_odd = tables->add_subcommand("odd-coeffs", "All odd a(1, n) up to n-max");
    cfg.n_max = 0;
    t_odd->add_option("--n-max", cfg.n_max, "Largest n (default 225)");
    auto* t_gamma = tables->add_subcommand("gamma-40", "gamma(40, alpha) for alpha = 0..9");

    // Formats and output flags are shared; register them on every leaf.
    for (auto* sub : {phi, u2, gamma, v_cong, v_bound, v_support, v_parity, v_ident, v_strat, v_gamma, cmp, t_odd,
                      t_gamma}) {
        sub->add_option("--format", cfg.format, "Output format: json, csv or markdown")->check(formats);
        sub->add_option("--output,-o", cfg.output,
                        std::string("Output file (relative paths resolve against $") + kOutputDirEnv + ")");
    }
    for (auto* sub : {v_cong, v_bound, v_support, v_parity, v_ident, v_strat, v_gamma, cmp}) {
        add_verify_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    auto default_format = [&](const char* f) {
        if (cfg.format.empty()) {
            cfg.format = f;
        }
    };

    try {
        if (phi->parsed()) {
            default_format("json");
            emit(cfg, with_newline(render_phi(cfg)), out);
            return kExitOk;
        }
        if (u2->parsed()) {
            default_format("json");
            return run_u2(cfg, out, err);
        }
        if (gamma->parsed()) {
            default_format("markdown");
            emit(cfg, render_gamma(cfg), out);
            return kExitOk;
        }
        if (tables->parsed()) {
            default_format("markdown");
            if (t_odd->parsed()) {
                if (cfg.n_max == 0) {
                    cfg.n_max = 225;
                }
                emit(cfg, render_odd_coeffs(cfg), out);
            } else {
                cfg.m = 40;
                cfg.alpha_max = 9;
                emit(cfg, render_gamma(cfg), out);
            }
            return kExitOk;
        }
        default_format("json");
        const VerifyOptions opts = verify_options(cfg);
        if (cmp->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            require_positive(cfg.alpha_max, "--alpha-max");
            return finish_report(cfg, compare_bounds(cfg.m_max, cfg.alpha_max, opts), out, err);
        }
        if (v_cong->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            if (cfg.n_max < cfg.m_max) {
                throw ConfigError("--n-max must be at least --m-max");
            }
            return finish_report(cfg, verify_congruence(cfg.m_max, cfg.n_max, opts), out, err);
        }
        if (v_bound->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            require_positive(cfg.alpha_max, "--alpha-max");
            return finish_report(cfg, verify_valuation_bound(cfg.m_max, cfg.alpha_max, opts), out, err);
        }
        if (v_support->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            return finish_report(cfg, verify_support(cfg.m_max, opts), out, err);
        }
        if (v_parity->parsed()) {
            require_positive(cfg.n_max, "--n-max");
            return finish_report(cfg, verify_parity(cfg.n_max, opts), out, err);
        }
        if (v_ident->parsed()) {
            return finish_report(cfg, verify_identities(cfg.identities, opts), out, err);
        }
        if (v_strat->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            require_positive(cfg.alpha_max, "--alpha-max");
            return finish_report(cfg, verify_strategy_equivalence(cfg.m_max, cfg.alpha_max, opts), out, err);
        }
        if (v_gamma->parsed()) {
            require_positive(cfg.m_max, "--m-max");
            return finish_report(cfg, verify_gamma_equivalence(cfg.m_max, cfg.alpha_max, opts), out, err);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TermBudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace phicong::cli
