#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "riskaudit/ordinal_scale.hpp"

namespace riskaudit {

enum class RuleKind { additive, multiplicative, weighted_additive, additive_with_deduction };

struct CombinationRule {
    RuleKind kind = RuleKind::additive;
    std::vector<double> weights;            // weighted_additive only
    std::optional<int> deduction_factor;    // 0-based, additive_with_deduction only

    friend bool operator==(const CombinationRule&, const CombinationRule&) = default;
};

struct OutputCategory {
    int index = 0;  // 1-based, 1 = lowest risk
    std::string label;
    std::string color;

    friend bool operator==(const OutputCategory&, const OutputCategory&) = default;
};

struct Threshold {
    double upper_bound = 0.0;  // inclusive
    OutputCategory category;

    friend bool operator==(const Threshold&, const Threshold&) = default;
};

struct ThresholdMap {
    std::vector<Threshold> entries;

    std::vector<OutputCategory> categories() const;
    friend bool operator==(const ThresholdMap&, const ThresholdMap&) = default;
};

/// How a factor is fed from a quantitative event: impact magnitude per
/// occurrence, occurrence frequency per year, or neither.
enum class FactorRole { impact, frequency, other };

struct RiskScheme {
    std::string name;
    std::vector<OrdinalScale> factors;
    std::vector<FactorRole> roles;  // empty or one per factor
    CombinationRule rule;
    std::optional<ThresholdMap> thresholds;  // absent: score-only scheme (e.g. RPN)

    friend bool operator==(const RiskScheme&, const RiskScheme&) = default;
};

/// Directly colored grid. grid[row-1][col-1] holds a category index.
struct MatrixColoring {
    std::string name;
    OrdinalScale row_scale;
    OrdinalScale col_scale;
    FactorRole row_role = FactorRole::frequency;
    FactorRole col_role = FactorRole::impact;
    std::vector<OutputCategory> categories;
    std::vector<std::vector<int>> grid;

    const OutputCategory& category(int index) const;
    friend bool operator==(const MatrixColoring&, const MatrixColoring&) = default;
};

using AnyScheme = std::variant<RiskScheme, MatrixColoring>;

struct ScoreResult {
    std::vector<int> ranks;
    double score = 0.0;  // category index for matrix colorings
    std::optional<OutputCategory> category;
};

struct SchemeFinding {
    Severity severity = Severity::violation;
    std::string invariant;
    std::string message;
};

double combine(const CombinationRule& rule, const std::vector<double>& ratings);

/// Raises the deduction rule's result to `floor` when given; other rules ignore it.
double combine(const CombinationRule& rule, const std::vector<double>& ratings, std::optional<double> floor);

const OutputCategory& categorize(const ThresholdMap& thresholds, double score);

std::vector<SchemeFinding> validate_scheme(const RiskScheme& scheme);
std::vector<SchemeFinding> validate_matrix(const MatrixColoring& matrix);

/// Lowest score the deduction rule may return: sum of the minimal numbers of
/// the non-deduction factors.
std::optional<double> deduction_floor(const RiskScheme& scheme);

/// Every attainable combined score, sorted and deduplicated. Throws when the
/// rank space exceeds 10^6 combinations.
std::vector<double> attainable_scores(const RiskScheme& scheme);

ScoreResult score_ranks(const RiskScheme& scheme, const std::vector<int>& ranks);
ScoreResult score_ranks(const MatrixColoring& matrix, const std::vector<int>& ranks);
ScoreResult score_ranks(const AnyScheme& scheme, const std::vector<int>& ranks);

/// Classifies one quantitative value per factor, then scores the ranks.
ScoreResult score_event(const RiskScheme& scheme, const std::vector<double>& values);
ScoreResult score_event(const MatrixColoring& matrix, const std::vector<double>& values);
ScoreResult score_event(const AnyScheme& scheme, const std::vector<double>& values);

struct CombinationTable {
    std::vector<std::vector<int>> combos;  // rank tuples, lexicographic
    std::vector<double> additive;
    std::vector<double> multiplicative;
    int distinct_additive = 0;
    int distinct_multiplicative = 0;
};

/// Ranks double as their own numbers (1..n).
CombinationTable combination_table(const std::vector<int>& rank_counts);
CombinationTable combination_table(const std::vector<OrdinalScale>& factors);

std::optional<SchemeFinding> check_zero_annihilation(const RiskScheme& scheme);

struct FactorInfluence {
    std::string factor;
    bool relevant = false;
    int max_category_shift = 0;
};

std::vector<FactorInfluence> factor_influence(const RiskScheme& scheme);
std::vector<FactorInfluence> factor_influence(const MatrixColoring& matrix);

const std::string& scheme_name(const AnyScheme& scheme);
std::vector<const OrdinalScale*> scheme_factors(const AnyScheme& scheme);
std::vector<FactorRole> scheme_roles(const AnyScheme& scheme);

std::string to_string(RuleKind kind);
std::string to_string(FactorRole role);
RuleKind parse_rule_kind(const std::string& text);
FactorRole parse_factor_role(const std::string& text);

}  // namespace riskaudit
