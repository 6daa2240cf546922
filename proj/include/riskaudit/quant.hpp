#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "riskaudit/rng.hpp"

namespace riskaudit {

enum class DistKind { point, uniform, lognormal_ci90, discrete };

struct DistributionSpec {
    DistKind kind = DistKind::point;
    double value = 0.0;                              // point
    double lo = 0.0, hi = 0.0;                       // uniform bounds or 90% interval
    std::vector<std::pair<double, double>> points;   // discrete (probability, value)

    static DistributionSpec point_mass(double v) { return {DistKind::point, v, 0.0, 0.0, {}}; }
    static DistributionSpec uniform(double lo, double hi) { return {DistKind::uniform, 0.0, lo, hi, {}}; }
    static DistributionSpec lognormal_ci90(double lo, double hi) { return {DistKind::lognormal_ci90, 0.0, lo, hi, {}}; }
    static DistributionSpec discrete(std::vector<std::pair<double, double>> pts) {
        return {DistKind::discrete, 0.0, 0.0, 0.0, std::move(pts)};
    }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

enum class FrequencyKind { poisson, bernoulli };

struct FrequencyModel {
    FrequencyKind kind = FrequencyKind::poisson;
    double parameter = 0.0;  // annual rate, or probability of one occurrence per year

    friend bool operator==(const FrequencyModel&, const FrequencyModel&) = default;
};

struct EventModel {
    std::string id;
    FrequencyModel frequency;
    DistributionSpec impact;

    friend bool operator==(const EventModel&, const EventModel&) = default;
};

/// Sorted annual total losses. Above kMaxRawTrials only an equi-probable
/// summary of kSummaryPoints order statistics is kept (`summarized`).
struct LossExceedanceCurve {
    std::vector<double> samples;
    std::int64_t trials = 0;
    bool summarized = false;
};

inline constexpr std::int64_t kMaxRawTrials = 10'000'000;
inline constexpr std::size_t kSummaryPoints = 10'000;

struct AppetitePoint {
    double threshold = 0.0;
    double max_probability = 0.0;

    friend bool operator==(const AppetitePoint&, const AppetitePoint&) = default;
};

struct RiskAppetite {
    std::vector<AppetitePoint> points;

    friend bool operator==(const RiskAppetite&, const RiskAppetite&) = default;
};

void check_distribution(const DistributionSpec& spec);
void check_model(const EventModel& model);
void check_appetite(const RiskAppetite& appetite);

/// Lognormal parameters (mu, sigma) whose 5% and 95% quantiles are lo and hi.
std::pair<double, double> lognormal_params(double lo, double hi);

double sample_impact(const DistributionSpec& spec, SplitMix64& rng);
std::int64_t sample_occurrences(const FrequencyModel& frequency, SplitMix64& rng);
std::int64_t sample_poisson(double lambda, SplitMix64& rng);
double sample_normal(SplitMix64& rng);

/// Occurrence count for the year, then one impact draw per occurrence.
double sample_annual_loss(const EventModel& model, SplitMix64& rng);

/// Trial t draws from substream (seed, t), models in order, so the result is
/// identical for any worker count (0 = hardware concurrency).
LossExceedanceCurve simulate(const std::vector<EventModel>& models, std::int64_t trials, std::uint64_t seed,
                             unsigned workers = 0);

/// Fraction of samples strictly above `threshold`.
double exceedance(const LossExceedanceCurve& curve, double threshold);

/// Order statistic ceil(p * n), 1-based.
double percentile_loss(const LossExceedanceCurve& curve, double percentile);

double sample_mean(const LossExceedanceCurve& curve);
double sample_stddev(const LossExceedanceCurve& curve);

struct AppetiteCheck {
    AppetitePoint point;
    double exceedance = 0.0;
    bool violated = false;
};

struct AppetiteVerdict {
    std::vector<AppetiteCheck> points;
    bool tolerable = true;
};

AppetiteVerdict compare_appetite(const LossExceedanceCurve& curve, const RiskAppetite& appetite);

struct Eal {
    double value = 0.0;
    bool exact = true;  // false for lognormal impacts
};

double distribution_mean(const DistributionSpec& spec);
Eal closed_form_eal(const EventModel& model);
Eal closed_form_eal(const std::vector<EventModel>& models);

/// `loss,exceedance_probability`, one row per distinct sample.
void write_lec_csv(std::ostream& out, const LossExceedanceCurve& curve);

std::string format_number(double v);

std::string to_string(DistKind kind);
std::string to_string(FrequencyKind kind);
DistKind parse_dist_kind(const std::string& text);
FrequencyKind parse_frequency_kind(const std::string& text);

}  // namespace riskaudit
