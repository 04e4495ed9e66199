#include <doctest.h>

#include "phicong/verifier.hpp"

using namespace phicong;

namespace {

const PointRecord& require_record(const VerificationReport& r, const std::string& check,
                                  const std::vector<std::int64_t>& inputs)
{
    const PointRecord* rec = r.find(check, inputs);
    REQUIRE(rec != nullptr);
    return *rec;
}

void check_consistent(const VerificationReport& r)
{
    CHECK(r.summary.points == r.records.size());
    CHECK(r.summary.failures == r.failures.size());
    CHECK(r.failures.empty() == (r.summary.failures == 0));
    std::size_t tight = 0;
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        const auto& a = r.records[i - 1];
        const auto& b = r.records[i];
        // sorted and no duplicate point
        CHECK((a.check < b.check || (a.check == b.check && a.inputs != b.inputs)));
    }
    for (const auto& rec : r.records) {
        tight += rec.tight ? 1 : 0;
    }
    CHECK(tight == r.summary.tight);
}

}  // namespace

TEST_CASE("congruence sweep on a small grid")
{
    const auto r = verify_congruence(4, 64);
    check_consistent(r);
    CHECK(r.passed());
    CHECK(r.summary.points == 64 + 63 + 62 + 61);
    const auto& p12 = require_record(r, "congruence", {1, 2, 1, 1});
    CHECK(p12.observed == "3");
    CHECK(p12.tight);
    const auto& p14 = require_record(r, "congruence", {1, 4, 2, 2});
    CHECK(p14.observed == "6");
    CHECK(p14.tight);
    const auto& odd = require_record(r, "congruence", {1, 7, 0, 0});
    CHECK(odd.pass);
    CHECK(odd.required == ">= 0");
    CHECK_THROWS_AS(verify_congruence(5, 4), std::invalid_argument);
}

TEST_CASE("valuation bound sweep examples")
{
    const auto r = verify_valuation_bound(3, 3);
    check_consistent(r);
    CHECK(r.passed());
    const auto& a = require_record(r, "valuation_bound", {1, 2, 2});
    CHECK(a.observed == "14");
    CHECK(a.tight);
    const auto& b = require_record(r, "valuation_bound", {1, 2, 3});
    CHECK(b.observed == "27");
    CHECK(b.required == ">= 22");
    CHECK_FALSE(b.tight);
    CHECK(require_record(r, "valuation_bound", {2, 1, 1}).tight);
    CHECK(require_record(r, "valuation_bound", {1, 1, 1}).observed == "3");
}

TEST_CASE("valuation bound sweep via the direct strategy")
{
    VerifyOptions opts;
    opts.strategy = U2Strategy::direct;
    const auto direct = verify_valuation_bound(3, 2, opts);
    const auto algebraic = verify_valuation_bound(3, 2);
    CHECK(direct.passed());
    CHECK(report_to_json(direct, true, false)["records"] == report_to_json(algebraic, true, false)["records"]);
}

TEST_CASE("support sweep")
{
    const auto r = verify_support(6);
    check_consistent(r);
    CHECK(r.passed());
    CHECK(require_record(r, "support", {1}).observed == "[1, 2]");
    CHECK(require_record(r, "support", {2}).observed == "[1, 4]");
    CHECK(require_record(r, "support", {5}).observed == "[3, 10]");
    CHECK(r.find("integrality", {5, 3}) != nullptr);
}

TEST_CASE("parity sweep")
{
    const auto r = verify_parity(100);
    check_consistent(r);
    CHECK(r.passed());
    CHECK(require_record(r, "parity", {9}).required == "odd_square=1");
    CHECK(require_record(r, "parity", {9}).observed == "series=1 product=1 partitions=1");
    CHECK(require_record(r, "parity", {2}).observed == "series=0 product=0 partitions=0");
    CHECK(require_record(r, "parity", {49}).required == "odd_square=1");
    CHECK(r.find("t_count_triangular", {12}) != nullptr);
    CHECK(r.find("t_count_triangular", {13}) == nullptr);
}

TEST_CASE("bound comparison")
{
    const auto r = compare_bounds(8, 2);
    check_consistent(r);
    CHECK(r.passed());
    const auto& p = require_record(r, "compare_bounds", {8, 1, 4});
    CHECK(p.observed == "better=0");
    CHECK(p.required == "lehner=-1");
    CHECK(require_record(r, "compare_bounds", {1, 1, 1}).tight);
    CHECK(r.summary.extra.at("lehner_trivial") > 0);
    CHECK(r.summary.extra.at("min_gap") >= 0);
}

TEST_CASE("identities on a reduced grid")
{
    IdentityGrid grid;
    grid.newton_m_max = 4;
    grid.residual_w_precision = 100;
    grid.half_grid_m_max = 3;
    grid.half_grid_w_precision = 80;
    const auto r = verify_identities(grid);
    check_consistent(r);
    CHECK(r.passed());
    CHECK(require_record(r, "lehner_constants", {}).observed == "b1=12 b2=1024");
    CHECK(r.summary.points == 1 + 4 + 4 + 1 + 3);
}

TEST_CASE("strategy and gamma equivalence")
{
    const auto s = verify_strategy_equivalence(4, 2);
    check_consistent(s);
    CHECK(s.passed());
    CHECK(s.summary.points == 8);
    const auto g = verify_gamma_equivalence(64, 8);
    check_consistent(g);
    CHECK(g.passed());
    CHECK(g.find("gamma", {40, 7}) != nullptr);
}

TEST_CASE("threaded runs produce identical reports")
{
    VerifyOptions four;
    four.threads = 4;
    const auto a = report_to_json(verify_congruence(6, 80), true, false).dump();
    const auto b = report_to_json(verify_congruence(6, 80, four), true, false).dump();
    CHECK(a == b);
    const auto c = report_to_json(verify_valuation_bound(4, 3, four), true, false).dump();
    const auto d = report_to_json(verify_valuation_bound(4, 3), true, false).dump();
    CHECK(c == d);
}

TEST_CASE("report serialization")
{
    const auto r = verify_support(2);
    const auto j = report_to_json(r);
    CHECK(j["theorem"] == "support");
    CHECK(j["summary"]["failures"] == 0);
    CHECK(j.contains("wall_seconds"));
    CHECK_FALSE(report_to_json(r, true, false).contains("wall_seconds"));
    CHECK_FALSE(report_to_json(r, false, false).contains("records"));
    CHECK(report_to_json(r, true, false) == report_to_json(verify_support(2), true, false));

    const auto csv = report_to_csv(r);
    CHECK(csv.rfind("check,inputs,observed,required,pass,tight\n", 0) == 0);
    CHECK(csv.find("support,m=1,") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : csv) {
        lines += ch == '\n' ? 1 : 0;
    }
    CHECK(lines == r.records.size() + 1);
}
