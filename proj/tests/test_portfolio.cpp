#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "riskaudit/error.hpp"
#include "riskaudit/portfolio.hpp"
#include "riskaudit/presets.hpp"
#include "riskaudit/rng.hpp"

using namespace riskaudit;

namespace {

Portfolio oil() {
    return {"lb", {{"oil-A", annual_rate(5, "hour"), convert_unit(1, "oz", "lb")}, {"oil-B", annual_rate(1, "week"), 10}}};
}

Portfolio car_plane() { return {"L", {{"car", annual_rate(1, "week"), 0.5}, {"plane", 2, 100}}}; }

}  // namespace

TEST(Units, PeriodsAndConversions) {
    EXPECT_DOUBLE_EQ(periods_per_year("hour"), 24 * 7 * 52);
    EXPECT_DOUBLE_EQ(periods_per_year("week"), 52);
    EXPECT_DOUBLE_EQ(periods_per_year("year"), 1);
    EXPECT_DOUBLE_EQ(convert_unit(16, "oz", "lb"), 1);
    EXPECT_DOUBLE_EQ(convert_unit(1500, "ml", "L"), 1.5);
    EXPECT_DOUBLE_EQ(convert_unit(3, "L", "L"), 3);
    EXPECT_THROW(convert_unit(1, "L", "lb"), Error);
    EXPECT_THROW(periods_per_year("fortnight"), Error);
}

TEST(TrueRisk, OilLeakPerWeek) {
    const auto p = oil();
    // 1 oz * 5 * 24 * 7 = 840 oz a week
    EXPECT_NEAR(true_risk(p.events[0]) / 52.0, 840.0 / 16.0, 1e-9);
    EXPECT_NEAR(true_risk(p.events[0]) / 52.0, 52.5, 1e-9);
    EXPECT_NEAR(true_risk(p.events[1]) / 52.0, 10.0, 1e-12);
}

TEST(TrueRisk, CarAndPlane) {
    const auto p = car_plane();
    EXPECT_DOUBLE_EQ(true_risk(p.events[0]), 26);
    EXPECT_DOUBLE_EQ(true_risk(p.events[1]), 200);
}

TEST(CheckPortfolio, RejectsBadEvents) {
    EXPECT_THROW(check_portfolio({"L", {{"x", -1, 1}}}), Error);
    EXPECT_THROW(check_portfolio({"L", {{"x", 1, 1}, {"x", 2, 2}}}), Error);
    EXPECT_NO_THROW(check_portfolio(car_plane()));
}

TEST(Inversions, OilUnderMilStd) {
    const auto inv = detect_inversions(oil(), mil882c_matrix());
    ASSERT_EQ(inv.size(), 1u);
    EXPECT_EQ(inv[0].id_a, "oil-A");
    EXPECT_EQ(inv[0].id_b, "oil-B");
    EXPECT_GT(inv[0].true_risk_a, inv[0].true_risk_b);
    EXPECT_LT(inv[0].score_a, inv[0].score_b);
}

TEST(Inversions, CarPlaneUnderProblemU) {
    const auto inv = detect_inversions(car_plane(), problem_u_scheme());
    ASSERT_EQ(inv.size(), 1u);
    EXPECT_DOUBLE_EQ(inv[0].score_a, 6);
    EXPECT_DOUBLE_EQ(inv[0].score_b, 4);
}

TEST(Inversions, ImpactUnitsAreConverted) {
    // same leak given in ml must score like the liter version
    Portfolio p{"ml", {{"car", 52, 500}, {"plane", 2, 100000}}};
    const auto r = score_quant_event(AnyScheme{problem_u_scheme()}, p.events[0], p.unit);
    EXPECT_DOUBLE_EQ(r.score, 6);
}

TEST(KendallTau, InvertedPairs) {
    EXPECT_EQ(kendall_tau(oil(), mil882c_matrix()), -1.0);
    EXPECT_EQ(kendall_tau(car_plane(), problem_u_scheme()), -1.0);
}

TEST(KendallTau, AgreesWithTextbookFormula) {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 30);
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.next() % 6);
            y[i] = static_cast<double>(rng.next() % 4);
        }
        const auto t = kendall_tau_b(x, y);
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
            std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
            EXPECT_FALSE(t);
            continue;
        }
        ASSERT_TRUE(t);
        EXPECT_NEAR(*t, oracle::tau_b(x, y), 1e-12);
    }
}

TEST(KendallTau, AllTiesUndefined) {
    EXPECT_FALSE(kendall_tau_b({1, 2, 3}, {4, 4, 4}));
    EXPECT_THROW(kendall_tau_b({1}, {1}), Error);
}

TEST(CountPairs, Categories) {
    const auto c = count_pairs({1, 2, 2, 3}, {1, 1, 2, 3});
    EXPECT_EQ(c.concordant, 4);
    EXPECT_EQ(c.discordant, 0);
    EXPECT_EQ(c.tied_x, 1);
    EXPECT_EQ(c.tied_y, 1);
    EXPECT_EQ(c.tied_both, 0);
}

TEST(RangeCompression, OrdersOfMagnitudeInOneBin) {
    Portfolio p{"L", {{"small", 1, 11}, {"huge", 1, 10000}}};
    const auto rep = range_compression(p, problem_u_scheme());
    ASSERT_EQ(rep.categories.size(), 1u);
    EXPECT_EQ(rep.categories[0].events, 2);
    EXPECT_NEAR(rep.categories[0].ratio, 10000.0 / 11.0, 1e-9);
    const auto s = problem_u_scheme();
    EXPECT_EQ(score_event(s, {11, 1}).ranks[0], 4);
    EXPECT_EQ(score_event(s, {10000, 1}).ranks[0], 4);
}

TEST(RangeCompression, ZeroRiskGivesInfiniteRatio) {
    Portfolio p{"L", {{"none", 0, 11}, {"some", 1, 11}}};
    const auto rep = range_compression(p, problem_u_scheme());
    ASSERT_EQ(rep.categories.size(), 1u);
    EXPECT_TRUE(std::isinf(rep.categories[0].ratio));
}

TEST(RangeCompression, OverlappingCategories) {
    const auto rep = range_compression(car_plane(), problem_u_scheme());
    ASSERT_EQ(rep.categories.size(), 2u);
    ASSERT_EQ(rep.overlapping.size(), 0u);
    Portfolio p{"L", {{"a", 2, 100}, {"b", 300, 0.05}, {"c", 52, 0.5}}};
    // a: Low with 200, b: ranks (1,4) Low with 15, c: Medium with 26
    const auto r2 = range_compression(p, problem_u_scheme());
    ASSERT_EQ(r2.overlapping.size(), 1u);
    EXPECT_EQ(r2.overlapping[0], (std::pair<int, int>{1, 2}));
}

TEST(RangeCompression, ScoreOnlySchemeThrows) {
    EXPECT_THROW(range_compression(car_plane(), fmea_scheme()), Error);
}

TEST(Ties, SwappedRanksTie) {
    Portfolio p{"L", {{"a", 50, 0.2}, {"b", 20, 5}}};
    const auto ties = detect_ties(p, problem_u_scheme());
    ASSERT_EQ(ties.size(), 1u);
    EXPECT_DOUBLE_EQ(ties[0].score, 6);
    EXPECT_EQ(ties[0].ids, (std::vector<std::string>{"a", "b"}));
    EXPECT_NEAR(ties[0].spread, 10, 1e-12);
}

TEST(Analyze, CarPlaneSummary) {
    const auto a = analyze_portfolio(car_plane(), problem_u_scheme());
    EXPECT_EQ(a.kendall_tau, -1.0);
    EXPECT_EQ(a.inversions.size(), 1u);
    EXPECT_TRUE(a.compression);
    EXPECT_TRUE(a.ties.empty());
}

TEST(Adversarial, SeedSevenSizeFour) {
    const auto s = problem_u_scheme();
    const auto p = adversarial_portfolio(s, 4, 7);
    ASSERT_EQ(p.events.size(), 4u);
    const auto tau = kendall_tau(p, additive_copy(s));
    ASSERT_TRUE(tau);
    EXPECT_LE(*tau, 0.0);
}

TEST(Adversarial, SizeTwoLooksLikeCarAndPlane) {
    const auto s = problem_u_scheme();
    const auto p = adversarial_portfolio(s, 2, 1);
    ASSERT_EQ(p.events.size(), 2u);
    const AnyScheme add{additive_copy(s)};
    const auto& a = p.events[0];
    const auto& b = p.events[1];
    // the riskier event never scores higher
    const auto& lo = true_risk(a) < true_risk(b) ? a : b;
    const auto& hi = true_risk(a) < true_risk(b) ? b : a;
    EXPECT_LT(true_risk(lo), true_risk(hi));
    EXPECT_GE(score_quant_event(add, lo, p.unit).score, score_quant_event(add, hi, p.unit).score);
}

TEST(Adversarial, DeterministicPerSeed) {
    const auto s = problem_u_scheme();
    EXPECT_EQ(adversarial_portfolio(s, 12, 5), adversarial_portfolio(s, 12, 5));
    EXPECT_THROW(adversarial_portfolio(s, 1, 5), Error);
}

TEST(AdditiveCopy, DropsCategories) {
    const auto a = additive_copy(problem_u_scheme());
    EXPECT_EQ(a.rule.kind, RuleKind::additive);
    EXPECT_FALSE(a.thresholds);
    EXPECT_EQ(a.factors, problem_u_scheme().factors);
}
