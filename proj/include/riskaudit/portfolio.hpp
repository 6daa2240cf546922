#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskaudit/scoring.hpp"

namespace riskaudit {

/// frequency in events per year, impact in the portfolio unit per event.
struct QuantEvent {
    std::string id;
    double frequency = 0.0;
    double impact = 0.0;

    friend bool operator==(const QuantEvent&, const QuantEvent&) = default;
};

struct Portfolio {
    std::string unit;
    std::vector<QuantEvent> events;

    friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

/// Occurrences per year for one occurrence per `period`
/// (hour = 24*7*52, day = 365, week = 52, month = 12, year = 1).
double periods_per_year(const std::string& period);
double annual_rate(double count, const std::string& period);

/// Mass (oz, lb, g, kg) and volume (ml, L) conversions; identical units pass
/// through, anything else throws.
double convert_unit(double value, const std::string& from, const std::string& to);

/// Expected annual loss in unit per year.
double true_risk(const QuantEvent& event);

void check_portfolio(const Portfolio& portfolio);

/// Per-factor quantities for the scheme, fed by factor role. Impacts are
/// converted from `unit` to the factor scale's unit when both are set.
std::vector<double> factor_values(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit);
ScoreResult score_quant_event(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit);

struct InversionPair {
    std::string id_a;
    std::string id_b;
    double true_risk_a = 0.0;
    double true_risk_b = 0.0;
    double score_a = 0.0;
    double score_b = 0.0;
};

std::vector<InversionPair> detect_inversions(const Portfolio& portfolio, const AnyScheme& scheme);

struct PairCounts {
    long long concordant = 0;
    long long discordant = 0;
    long long tied_x = 0;  // tied in x only
    long long tied_y = 0;  // tied in y only
    long long tied_both = 0;
};

PairCounts count_pairs(const std::vector<double>& x, const std::vector<double>& y);

/// Kendall tau-b; nullopt when either ranking is all ties. Throws for < 2 values.
std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> kendall_tau(const Portfolio& portfolio, const AnyScheme& scheme);

struct CategoryCompression {
    OutputCategory category;
    int events = 0;
    double min_risk = 0.0;
    double max_risk = 0.0;
    double ratio = 1.0;  // infinity when min_risk is 0 and max_risk is not
};

struct CompressionReport {
    std::vector<CategoryCompression> categories;  // ascending index, only categories with events
    std::vector<std::pair<int, int>> overlapping;  // category index pairs with overlapping risk ranges
};

CompressionReport range_compression(const Portfolio& portfolio, const AnyScheme& scheme);

struct TieGroup {
    double score = 0.0;
    std::vector<std::string> ids;
    double min_risk = 0.0;
    double max_risk = 0.0;
    double spread = 1.0;
};

std::vector<TieGroup> detect_ties(const Portfolio& portfolio, const AnyScheme& scheme);

struct AnalysisReport {
    std::optional<double> kendall_tau;
    PairCounts pairs;
    std::vector<InversionPair> inversions;
    std::optional<CompressionReport> compression;  // absent for score-only schemes
    std::vector<TieGroup> ties;
};

AnalysisReport analyze_portfolio(const Portfolio& portfolio, const AnyScheme& scheme);

/// Same factors scored by plain addition, without categories.
RiskScheme additive_copy(const RiskScheme& scheme);

/// Events walk an anti-diagonal band of rank cells so that true risk strictly
/// increases while the additive score never increases.
Portfolio adversarial_portfolio(const RiskScheme& scheme, int size, std::uint64_t seed);

}  // namespace riskaudit
