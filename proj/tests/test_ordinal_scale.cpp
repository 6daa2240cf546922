#include <cmath>

#include <gtest/gtest.h>

#include "riskaudit/error.hpp"
#include "riskaudit/ordinal_scale.hpp"
#include "riskaudit/presets.hpp"

using namespace riskaudit;

namespace {

OrdinalScale table2(DistributionKind kind) { return make_partition_scale(kind, QuantRange::closed(0, 100), 5); }

bool has_invariant(const std::vector<ScaleFinding>& fs, const std::string& tag) {
    for (const auto& f : fs)
        if (f.invariant == tag) return true;
    return false;
}

}  // namespace

TEST(SemiQuantNumbers, TableColumnsForFiveLevels) {
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::increasing, 5), (std::vector<double>{1, 2, 3, 4, 5}));
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::start_at_zero, 5), (std::vector<double>{0, 1, 2, 3, 4}));
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::decreasing, 5), (std::vector<double>{5, 4, 3, 2, 1}));
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::centered, 5), (std::vector<double>{-2, -1, 0, 1, 2}));
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::spaced_out, 5), (std::vector<double>{2, 4, 6, 8, 10}));
    EXPECT_EQ(semi_quant_numbers(NumberAssignment::exponential, 5), (std::vector<double>{1, 2, 4, 8, 16}));
}

TEST(SemiQuantNumbers, CenteredEvenCountStaysSymmetric) {
    const auto v = semi_quant_numbers(NumberAssignment::centered, 4);
    EXPECT_EQ(v, (std::vector<double>{-1.5, -0.5, 0.5, 1.5}));
}

TEST(DefaultLabels, FiveLevels) {
    EXPECT_EQ(default_labels(5), (std::vector<std::string>{"Very Low", "Low", "Medium", "High", "Very High"}));
}

TEST(PartitionScale, LinearLevelThree) {
    const auto s = table2(DistributionKind::linear);
    ASSERT_EQ(s.size(), 5);
    const auto r = rank_range(s, 3);
    EXPECT_DOUBLE_EQ(r.lo, 40);
    EXPECT_DOUBLE_EQ(r.hi, 60);
    EXPECT_FALSE(r.lo_inclusive);
    EXPECT_TRUE(r.hi_inclusive);
    EXPECT_TRUE(rank_range(s, 1).lo_inclusive);
}

TEST(PartitionScale, LogarithmicLevelTwo) {
    const auto s = table2(DistributionKind::logarithmic);
    const auto r = rank_range(s, 2);
    EXPECT_NEAR(r.lo, 0.01, 1e-15);
    EXPECT_NEAR(r.hi, 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(rank_range(s, 1).lo, 0);
    EXPECT_DOUBLE_EQ(rank_range(s, 5).hi, 100);
}

TEST(PartitionScale, GaussianMiddle) {
    const auto r = rank_range(table2(DistributionKind::gaussian), 3);
    EXPECT_DOUBLE_EQ(r.lo, 30);
    EXPECT_DOUBLE_EQ(r.hi, 70);
}

TEST(PartitionScale, InverseGaussianMiddle) {
    const auto r = rank_range(table2(DistributionKind::inverse_gaussian), 3);
    EXPECT_DOUBLE_EQ(r.lo, 45);
    EXPECT_DOUBLE_EQ(r.hi, 55);
}

TEST(PartitionScale, ArbitraryHasNoPartition) {
    EXPECT_THROW(table2(DistributionKind::arbitrary), Error);
}

TEST(PartitionScale, GaussianNeedsFiveLevels) {
    EXPECT_THROW(make_partition_scale(DistributionKind::gaussian, QuantRange::closed(0, 100), 4), Error);
}

TEST(ValidateScale, TableScalesAreClean) {
    for (auto k : {DistributionKind::linear, DistributionKind::logarithmic, DistributionKind::gaussian,
                   DistributionKind::inverse_gaussian}) {
        EXPECT_TRUE(validate_scale(table2(k)).empty()) << to_string(k);
    }
}

TEST(ValidateScale, GapBetweenLevelsIsReported) {
    OrdinalScale s;
    s.name = "exposure";
    s.levels = {
        {1, "rare", 1, QuantRange{0, 6, true, true}},
        {2, "often", 2, QuantRange{12, kInfinity, true, false}},
    };
    const auto fs = validate_scale(s);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].invariant, "gap");
    EXPECT_EQ(fs[0].level_a, 1);
    EXPECT_EQ(fs[0].level_b, 2);
    EXPECT_NE(fs[0].message.find("gap between level 1 and level 2"), std::string::npos);
}

TEST(ValidateScale, OverlapIsReported) {
    OrdinalScale s;
    s.levels = {
        {1, "a", 1, QuantRange{0, 10, true, true}},
        {2, "b", 2, QuantRange{5, 20}},
    };
    EXPECT_TRUE(has_invariant(validate_scale(s), "overlap"));
}

TEST(ValidateScale, StartAtZeroWarns) {
    const auto s = make_partition_scale(DistributionKind::linear, QuantRange::closed(0, 100), 5, {},
                                        NumberAssignment::start_at_zero);
    const auto fs = validate_scale(s);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].invariant, "zero-annihilation");
    EXPECT_EQ(fs[0].severity, Severity::warning);
}

TEST(ValidateScale, DuplicateNumbersAreViolations) {
    auto s = table2(DistributionKind::linear);
    s.levels[2].semi_quant = s.levels[1].semi_quant;
    EXPECT_TRUE(has_invariant(validate_scale(s), "duplicate-number"));
}

TEST(ValidateScale, PartialBindingIsViolation) {
    auto s = table2(DistributionKind::linear);
    s.levels[4].range.reset();
    EXPECT_TRUE(has_invariant(validate_scale(s), "partial-binding"));
}

TEST(ValidateScale, RankOnlyScaleIsFine) {
    OrdinalScale s;
    s.levels = {{1, "S1", 1, std::nullopt}, {2, "S2", 2, std::nullopt}};
    EXPECT_TRUE(validate_scale(s).empty());
}

TEST(Classify, LogarithmicTable) {
    const auto s = table2(DistributionKind::logarithmic);
    EXPECT_EQ(classify(s, 0.5), 3);
    EXPECT_EQ(classify(s, 0.1), 2);  // upper bound belongs to the lower level
    EXPECT_EQ(classify(s, 0.0), 1);
    EXPECT_EQ(classify(s, 100.0), 5);
}

TEST(Classify, OutsideDomainThrows) {
    EXPECT_THROW(classify(table2(DistributionKind::linear), 100.5), Error);
    EXPECT_THROW(classify(table2(DistributionKind::linear), -1), Error);
}

TEST(Classify, GapThrows) {
    OrdinalScale s;
    s.levels = {
        {1, "rare", 1, QuantRange{0, 6, true, true}},
        {2, "often", 2, QuantRange{12, kInfinity, true, false}},
    };
    EXPECT_THROW(classify(s, 8), Error);
    EXPECT_EQ(classify(s, 6), 1);
    EXPECT_EQ(classify(s, 12), 2);
}

TEST(Classify, RankOnlyScaleThrows) {
    EXPECT_THROW(classify(hara_scheme().factors[0], 1.0), Error);
}

TEST(Classify, ProblemUImpactOpenTop) {
    const auto s = problem_u_impact_scale();
    EXPECT_EQ(classify(s, 0.5), 2);
    EXPECT_EQ(classify(s, 100), 4);
    EXPECT_EQ(classify(s, 1e12), 4);
    const auto r = rank_range(s, 4);
    EXPECT_DOUBLE_EQ(r.lo, 10);
    EXPECT_EQ(r.hi, kInfinity);
    EXPECT_FALSE(r.lo_inclusive);
}

TEST(ClassifyInterval, LogarithmicSpan) {
    const auto s = table2(DistributionKind::logarithmic);
    EXPECT_EQ(classify_interval(s, QuantRange::closed(0.05, 5)), (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(classify_interval(s, QuantRange::closed(0.5, 0.5)), (std::vector<int>{3}));
}

TEST(ClassifyInterval, BoundaryPointTouchesOneLevel) {
    const auto s = table2(DistributionKind::linear);
    // 40 is the inclusive top of level 2 and excluded from level 3.
    EXPECT_EQ(classify_interval(s, QuantRange::closed(40, 40)), (std::vector<int>{2}));
    EXPECT_EQ(classify_interval(s, QuantRange::closed(30, 40)), (std::vector<int>{2}));
    EXPECT_EQ(classify_interval(s, QuantRange::closed(30, 40.001)), (std::vector<int>{2, 3}));
}

TEST(BoundarySensitivity, LinearThirty) {
    const auto b = boundary_sensitivity(table2(DistributionKind::linear), 30);
    EXPECT_NEAR(b.epsilon, 10.0 / 30.0, 1e-12);
    EXPECT_NEAR(b.absolute, 10.0, 1e-12);
    EXPECT_TRUE(b.relative);
}

TEST(BoundarySensitivity, LogarithmicJustAboveDecade) {
    const auto b = boundary_sensitivity(table2(DistributionKind::logarithmic), 0.11);
    EXPECT_NEAR(b.epsilon, 0.01 / 0.11, 1e-9);
    // perturbing by slightly more than epsilon flips the rank
    const double v = 0.11 * (1 - b.epsilon * 1.0001);
    EXPECT_EQ(classify(table2(DistributionKind::logarithmic), v), 2);
}

TEST(BoundarySensitivity, ZeroValueIsAbsoluteOnly) {
    const auto b = boundary_sensitivity(table2(DistributionKind::linear), 0);
    EXPECT_FALSE(b.relative);
    EXPECT_TRUE(std::isnan(b.epsilon));
    EXPECT_DOUBLE_EQ(b.absolute, 20);
}

TEST(BoundarySensitivity, OpenTopLevelUsesLowerBoundary) {
    const auto b = boundary_sensitivity(problem_u_impact_scale(), 100);
    EXPECT_NEAR(b.absolute, 90, 1e-12);
    EXPECT_NEAR(b.epsilon, 0.9, 1e-12);
}

TEST(Parsing, RoundTripNames) {
    for (auto k : {DistributionKind::linear, DistributionKind::logarithmic, DistributionKind::gaussian,
                   DistributionKind::inverse_gaussian, DistributionKind::arbitrary})
        EXPECT_EQ(parse_distribution_kind(to_string(k)), k);
    for (auto n : {NumberAssignment::increasing, NumberAssignment::start_at_zero, NumberAssignment::decreasing,
                   NumberAssignment::centered, NumberAssignment::spaced_out, NumberAssignment::exponential})
        EXPECT_EQ(parse_number_assignment(to_string(n)), n);
    EXPECT_THROW(parse_distribution_kind("cubic"), Error);
}

TEST(Intersects, RespectsInclusivity) {
    EXPECT_FALSE(intersects(QuantRange{0, 1}, QuantRange{1, 2}));
    EXPECT_TRUE(intersects(QuantRange::closed(0, 1), QuantRange::closed(1, 2)));
    EXPECT_TRUE(intersects(QuantRange{0, 1}, QuantRange::closed(1, 1)));
}
