#include <gtest/gtest.h>

#include "oracles.hpp"
#include "riskaudit/coherence.hpp"
#include "riskaudit/presets.hpp"

using namespace riskaudit;

namespace {

std::vector<std::pair<double, double>> pairs_of(const LossProspect& x) {
    std::vector<std::pair<double, double>> out;
    for (const auto& o : x.outcomes) out.emplace_back(o.probability, o.loss);
    return out;
}

const AnyScheme& problem_u() {
    static const AnyScheme s{problem_u_scheme()};
    return s;
}

const RiskMetric<QuantEvent>& scheme_metric() {
    static const RiskMetric<QuantEvent> m = [](const QuantEvent& e) { return scheme_induced_metric(problem_u(), e); };
    return m;
}

const QuantEvent kCar{"car", 52, 0.5};
const QuantEvent kPlane{"plane", 2, 100};

}  // namespace

TEST(ExpectedLoss, TwoOutcomes) {
    EXPECT_DOUBLE_EQ(expected_loss_metric({{{0.1, 100}, {0.9, 0}}, ""}), 10);
    EXPECT_THROW(check_prospect({{{0.5, 1}, {0.4, 2}}, ""}), Error);
    EXPECT_THROW(check_prospect({{}, ""}), Error);
}

TEST(ExpectedLoss, HomogeneityCase) {
    const LossProspect x{{{0.5, 10}, {0.5, 0}}, ""};
    const RiskMetric<LossProspect> m = expected_loss_metric;
    const auto r = check_axiom(m, AxiomCase<LossProspect>{Axiom::positive_homogeneity, {x}, 2.0});
    EXPECT_TRUE(r.holds);
    EXPECT_DOUBLE_EQ(r.lhs, 10);
    EXPECT_DOUBLE_EQ(r.rhs, 10);
}

TEST(ExpectedLoss, CombinedMatchesJointEnumeration) {
    SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto x = sample_prospect(rng);
        const auto y = sample_prospect(rng);
        const auto z = combined(x, y);
        // joint outcomes of independent prospects, summed by hand
        double joint = 0;
        for (const auto& a : x.outcomes)
            for (const auto& b : y.outcomes) joint += a.probability * b.probability * (a.loss + b.loss);
        EXPECT_NEAR(expected_loss_metric(z), joint, 1e-9);
        EXPECT_NEAR(expected_loss_metric(z), oracle::expectation(pairs_of(x)) + oracle::expectation(pairs_of(y)), 1e-9);
    }
}

TEST(ExpectedLoss, SuiteHoldsOverThousandCases) {
    const auto rep = run_expected_loss_suite(1, 1000);
    EXPECT_TRUE(rep.all_hold());
    for (const auto& a : rep.axioms) {
        EXPECT_EQ(a.cases, 1000) << to_string(a.axiom);
        EXPECT_EQ(a.errors, 0) << to_string(a.axiom);
    }
}

TEST(ExpectedLoss, SuiteIsDeterministic) {
    const auto a = run_expected_loss_suite(9, 50);
    const auto b = run_expected_loss_suite(9, 50);
    for (std::size_t i = 0; i < a.axioms.size(); ++i) EXPECT_EQ(a.axioms[i].violations, b.axioms[i].violations);
}

TEST(Transformations, Prospects) {
    const LossProspect x{{{0.5, 10}, {0.5, 4}}, ""};
    EXPECT_EQ(scaled(x, 2).outcomes[0].loss, 20);
    EXPECT_EQ(mitigated(x, 5).outcomes[1].loss, -1);
    EXPECT_TRUE(dominates(x, mitigated(x, 1)));
    EXPECT_FALSE(dominates(mitigated(x, 1), x));
}

TEST(Transformations, Events) {
    const auto s = scaled(kCar, 2);
    EXPECT_DOUBLE_EQ(s.impact, 1);
    EXPECT_DOUBLE_EQ(s.frequency, 52);
    // lowering the annual loss by 13 halves the impact
    EXPECT_DOUBLE_EQ(mitigated(kCar, 13).impact, 0.25);
    const auto c = combined(kCar, kPlane);
    EXPECT_DOUBLE_EQ(c.frequency, 54);
    EXPECT_NEAR(loss_scale(c), 226, 1e-9);
    EXPECT_TRUE(dominates(kPlane, kCar));
    EXPECT_TRUE(is_positive(kCar));
    EXPECT_FALSE(is_positive(QuantEvent{"z", 0, 5}));
}

TEST(SchemeMetric, CarAndPlaneScores) {
    EXPECT_DOUBLE_EQ(scheme_induced_metric(problem_u(), kCar), 6);
    EXPECT_DOUBLE_EQ(scheme_induced_metric(problem_u(), kPlane), 4);
}

TEST(SchemeMetric, MonotonicityViolatedByCarAndPlane) {
    const auto r = check_axiom(scheme_metric(), AxiomCase<QuantEvent>{Axiom::monotonicity, {kPlane, kCar}, std::nullopt});
    EXPECT_FALSE(r.holds);
    EXPECT_DOUBLE_EQ(r.lhs, 4);
    EXPECT_DOUBLE_EQ(r.rhs, 6);
}

TEST(SchemeMetric, HomogeneityViolatedInsideRanks) {
    // 0.3 L and 0.6 L are both rank 2; 10/yr and 20/yr are both rank 2
    const QuantEvent e{"e", 10, 0.3};
    const auto r = check_axiom(scheme_metric(), AxiomCase<QuantEvent>{Axiom::positive_homogeneity, {e}, 2.0});
    EXPECT_FALSE(r.holds);
    EXPECT_DOUBLE_EQ(r.lhs, 4);
    EXPECT_DOUBLE_EQ(r.rhs, 8);
}

TEST(SchemeMetric, SuiteFlagsMonotonicityAndHomogeneity) {
    const Portfolio p{"L", {{"car", 52, 0.5}, {"plane", 2, 100}}};
    const auto extra = portfolio_cases(p, problem_u());
    ASSERT_EQ(extra.size(), 1u);
    const auto rep = run_scheme_suite(problem_u(), 1, 1000, kDefaultTolerance, extra);
    const auto& mono = rep.summary(Axiom::monotonicity);
    EXPECT_FALSE(mono.holds());
    ASSERT_TRUE(mono.first_violation_case);
    EXPECT_EQ(*mono.first_violation_case, 0);
    EXPECT_FALSE(rep.summary(Axiom::positive_homogeneity).holds());
    EXPECT_TRUE(rep.summary(Axiom::relevance).holds());
}

TEST(PortfolioCases, ConvertsToScaleUnit) {
    const Portfolio p{"ml", {{"car", 52, 500}, {"plane", 2, 100000}}};
    const auto extra = portfolio_cases(p, problem_u());
    ASSERT_EQ(extra.size(), 1u);
    EXPECT_DOUBLE_EQ(extra[0].operands[0].impact, 100);
    EXPECT_DOUBLE_EQ(extra[0].operands[1].impact, 0.5);
}

TEST(CheckCase, RejectsMalformedCases) {
    const RiskMetric<LossProspect> m = expected_loss_metric;
    const LossProspect x{{{1.0, 1}}, ""};
    EXPECT_THROW(check_axiom(m, AxiomCase<LossProspect>{Axiom::subadditivity, {x}, std::nullopt}), Error);
    EXPECT_THROW(check_axiom(m, AxiomCase<LossProspect>{Axiom::positive_homogeneity, {x}, -1.0}), Error);
    EXPECT_THROW(check_axiom(m, AxiomCase<LossProspect>{Axiom::monotonicity, {x, scaled(x, 2)}, std::nullopt}), Error);
}

TEST(Suite, MetricErrorsAreCountedSeparately) {
    const RiskMetric<LossProspect> broken = [](const LossProspect&) -> double { throw Error("no"); };
    const auto rep = run_coherence_suite<LossProspect>(broken, sample_prospect, sample_dominated, 1, 5);
    for (const auto& a : rep.axioms) {
        EXPECT_EQ(a.errors, 5);
        EXPECT_EQ(a.violations, 0);
        EXPECT_EQ(a.first_error, "no");
    }
}

TEST(EventSampler, StaysInsideDomainsAndIsPositive) {
    const auto sample = event_sampler(problem_u());
    SplitMix64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        const auto e = sample(rng);
        EXPECT_GT(e.impact, 0);
        EXPECT_GT(e.frequency, 0);
        EXPECT_NO_THROW(scheme_induced_metric(problem_u(), e));
        const auto below = sample_dominated_event(e, rng);
        EXPECT_TRUE(dominates(e, below));
    }
}
