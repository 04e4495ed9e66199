#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phicong/phi_algebra.hpp"

namespace phicong {

// One checked grid point.
struct PointRecord {
    // Which assertion this point belongs to, e.g. "congruence" or "support".
    std::string check;
    std::vector<std::pair<std::string, std::int64_t>> inputs;
    std::string observed;
    std::string required;
    bool pass = false;
    // The observed value sits exactly on the bound.
    bool tight = false;
};

struct ReportSummary {
    std::size_t points = 0;
    std::size_t failures = 0;
    std::size_t tight = 0;
    // Theorem-specific counters (for instance lehner_trivial in compare-bounds).
    std::map<std::string, std::int64_t> extra;
};

struct VerificationReport {
    std::string theorem;
    std::vector<std::pair<std::string, std::int64_t>> grid;
    // Sorted by (check, inputs).
    std::vector<PointRecord> records;
    // Indices into records of every failing point.
    std::vector<std::size_t> failures;
    ReportSummary summary;
    double wall_seconds = 0.0;

    bool passed() const { return summary.failures == 0; }
    // First record matching check and inputs, or nullptr.
    const PointRecord* find(const std::string& check, const std::vector<std::int64_t>& inputs) const;
};

struct VerifyOptions {
    unsigned threads = 1;
    unsigned guard = kDefaultGuard;
    U2Strategy strategy = U2Strategy::algebraic;
};

struct IdentityGrid {
    unsigned newton_m_max = 16;
    Exponent residual_w_precision = 2000;
    unsigned half_grid_m_max = 8;
    Exponent half_grid_w_precision = 200;
};

// nu_2(a(m, n)) >= 3 gamma(m, alpha) for n = 2^alpha n', 1 <= m <= m_max, m <= n <= n_max.
VerificationReport verify_congruence(unsigned m_max, std::uint64_t n_max, const VerifyOptions& opts = {});

// nu_2(d(m, j, alpha)) >= better_bound(m, j, alpha) and support within [f^alpha(m), 2^alpha m].
VerificationReport verify_valuation_bound(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts = {});

// Support of U_2 phi^m is exactly [ceil(m/2), 2m] with nonzero ends, and
// nu_2(d(m, j, 1)) >= 12(j - m) - 1.
VerificationReport verify_support(unsigned m_max, const VerifyOptions& opts = {});

// a(1, n) odd iff n is an odd square, by three routes: the series, the mod-2 product,
// and bounded-multiplicity partition counts.
VerificationReport verify_parity(std::uint64_t n_max, const VerifyOptions& opts = {});

// better_bound - lehner_bound over j in [f^alpha(m), 2^alpha m].
VerificationReport compare_bounds(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts = {});

// Newton bridge, ring-R membership, modular-equation residual, half-grid identity.
VerificationReport verify_identities(const IdentityGrid& grid = {}, const VerifyOptions& opts = {});

// Direct and algebraic u2_iterate agree exactly.
VerificationReport verify_strategy_equivalence(unsigned m_max, unsigned alpha_max, const VerifyOptions& opts = {});

// gamma_binary = gamma_via_f, plus the alpha = 1 base-case consistency of the bound.
VerificationReport verify_gamma_equivalence(std::uint64_t m_max, unsigned alpha_max, const VerifyOptions& opts = {});

nlohmann::json report_to_json(const VerificationReport& r, bool include_records = true,
                              bool include_wall_time = true);
// Header: check,inputs,observed,required,pass,tight
std::string report_to_csv(const VerificationReport& r);

}  // namespace phicong
