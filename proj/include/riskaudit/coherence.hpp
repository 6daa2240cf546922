#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riskaudit/error.hpp"
#include "riskaudit/portfolio.hpp"
#include "riskaudit/rng.hpp"
#include "riskaudit/scoring.hpp"

namespace riskaudit {

struct Outcome {
    double probability = 0.0;
    double loss = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct LossProspect {
    std::vector<Outcome> outcomes;
    std::string unit;

    friend bool operator==(const LossProspect&, const LossProspect&) = default;
};

void check_prospect(const LossProspect& prospect);

double expected_loss_metric(const LossProspect& prospect);

/// Combined semi-quantitative score of the event (not its category).
double scheme_induced_metric(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit = {});

// Subject transformations used by the axioms. Prospects: losses scaled,
// shifted down by alpha (may go negative), independent sum by convolution.
// Events: impact scaled; annual loss reduced by alpha through the impact;
// merged occurrence streams (rates add, impact is the rate-weighted mean).
LossProspect scaled(const LossProspect& x, double lambda);
LossProspect mitigated(const LossProspect& x, double alpha);
LossProspect combined(const LossProspect& x, const LossProspect& y);
bool is_positive(const LossProspect& x);
/// Statewise dominance on a shared probability vector.
bool dominates(const LossProspect& x, const LossProspect& y);
double loss_scale(const LossProspect& x);  // largest loss

QuantEvent scaled(const QuantEvent& x, double lambda);
QuantEvent mitigated(const QuantEvent& x, double alpha);
QuantEvent combined(const QuantEvent& x, const QuantEvent& y);
bool is_positive(const QuantEvent& x);
bool dominates(const QuantEvent& x, const QuantEvent& y);
double loss_scale(const QuantEvent& x);  // annual loss

enum class Axiom { relevance, monotonicity, translation_invariance, subadditivity, positive_homogeneity };

inline constexpr Axiom kAxioms[] = {Axiom::relevance, Axiom::monotonicity, Axiom::translation_invariance,
                                    Axiom::subadditivity, Axiom::positive_homogeneity};

std::string to_string(Axiom axiom);

template <typename Subject>
using RiskMetric = std::function<double(const Subject&)>;

template <typename Subject>
struct AxiomCase {
    Axiom axiom = Axiom::relevance;
    std::vector<Subject> operands;
    std::optional<double> parameter;  // alpha for translation, lambda for homogeneity
};

template <typename Subject>
struct AxiomResult {
    Axiom axiom = Axiom::relevance;
    bool holds = true;
    AxiomCase<Subject> witness;
    double lhs = 0.0;
    double rhs = 0.0;
};

inline constexpr double kDefaultTolerance = 1e-9;

template <typename Subject>
void check_case(const AxiomCase<Subject>& c) {
    const std::size_t arity =
        (c.axiom == Axiom::monotonicity || c.axiom == Axiom::subadditivity) ? 2 : 1;
    if (c.operands.size() != arity) {
        throw Error(to_string(c.axiom) + " takes " + std::to_string(arity) + " operand(s)");
    }
    if (c.axiom == Axiom::translation_invariance && (!c.parameter || !(*c.parameter >= 0.0))) {
        throw Error("translation invariance needs alpha >= 0");
    }
    if (c.axiom == Axiom::positive_homogeneity && (!c.parameter || !(*c.parameter > 0.0))) {
        throw Error("positive homogeneity needs lambda > 0");
    }
    if (c.axiom == Axiom::monotonicity && !dominates(c.operands[0], c.operands[1])) {
        throw Error("monotonicity case operands are not ordered");
    }
}

template <typename Subject>
AxiomResult<Subject> check_axiom(const RiskMetric<Subject>& metric, const AxiomCase<Subject>& c,
                                 double tolerance = kDefaultTolerance) {
    check_case(c);
    AxiomResult<Subject> r{c.axiom, true, c, 0.0, 0.0};
    const auto& x = c.operands[0];
    switch (c.axiom) {
        case Axiom::relevance:
            r.lhs = metric(x);
            r.rhs = 0.0;
            r.holds = !is_positive(x) || r.lhs > 0.0;
            break;
        case Axiom::monotonicity:
            r.lhs = metric(x);
            r.rhs = metric(c.operands[1]);
            r.holds = r.lhs >= r.rhs - tolerance;
            break;
        case Axiom::translation_invariance:
            r.lhs = metric(mitigated(x, *c.parameter));
            r.rhs = metric(x) - *c.parameter;
            r.holds = std::abs(r.lhs - r.rhs) <= tolerance;
            break;
        case Axiom::subadditivity:
            r.lhs = metric(combined(x, c.operands[1]));
            r.rhs = metric(x) + metric(c.operands[1]);
            r.holds = r.lhs <= r.rhs + tolerance;
            break;
        case Axiom::positive_homogeneity:
            r.lhs = metric(scaled(x, *c.parameter));
            r.rhs = *c.parameter * metric(x);
            r.holds = std::abs(r.lhs - r.rhs) <= tolerance;
            break;
    }
    return r;
}

template <typename Subject>
struct AxiomSummary {
    Axiom axiom = Axiom::relevance;
    int cases = 0;
    int violations = 0;
    int errors = 0;  // cases the metric could not evaluate
    std::optional<AxiomResult<Subject>> first_violation;
    std::optional<int> first_violation_case;  // extra cases first, then trials
    std::string first_error;

    bool holds() const { return violations == 0; }
};

template <typename Subject>
struct SuiteReport {
    std::vector<AxiomSummary<Subject>> axioms;
    int trials = 0;

    bool all_hold() const {
        for (const auto& a : axioms)
            if (!a.holds()) return false;
        return true;
    }
    const AxiomSummary<Subject>& summary(Axiom axiom) const {
        for (const auto& a : axioms)
            if (a.axiom == axiom) return a;
        throw Error("axiom missing from report");
    }
};

/// Draws one subject; used to build cases for every axiom.
template <typename Subject>
using SubjectSampler = std::function<Subject(SplitMix64&)>;

/// Y below X for the monotonicity case.
template <typename Subject>
using DominatedSampler = std::function<Subject(const Subject&, SplitMix64&)>;

template <typename Subject>
AxiomCase<Subject> generate_case(Axiom axiom, const SubjectSampler<Subject>& sample,
                                 const DominatedSampler<Subject>& below, SplitMix64& rng) {
    static constexpr double kLambdas[] = {0.5, 2.0, 10.0};
    AxiomCase<Subject> c;
    c.axiom = axiom;
    Subject x = sample(rng);
    switch (axiom) {
        case Axiom::relevance: c.operands = {x}; break;
        case Axiom::monotonicity: {
            Subject y = below(x, rng);
            c.operands = {x, y};
            break;
        }
        case Axiom::translation_invariance:
            c.parameter = std::floor(rng.uniform() * (loss_scale(x) + 1.0));
            c.parameter = std::min(*c.parameter, loss_scale(x));
            c.operands = {x};
            break;
        case Axiom::subadditivity: {
            Subject y = sample(rng);
            c.operands = {x, y};
            break;
        }
        case Axiom::positive_homogeneity:
            c.parameter = kLambdas[rng.next() % 3];
            c.operands = {x};
            break;
    }
    return c;
}

/// Runs `extra` first, then `trials` generated cases per axiom. Trial t draws
/// from substream (seed, t), so the report depends only on the arguments.
template <typename Subject>
SuiteReport<Subject> run_coherence_suite(const RiskMetric<Subject>& metric, const SubjectSampler<Subject>& sample,
                                         const DominatedSampler<Subject>& below, std::uint64_t seed, int trials,
                                         double tolerance = kDefaultTolerance,
                                         const std::vector<AxiomCase<Subject>>& extra = {}) {
    if (trials < 1) throw Error("coherence suite needs at least one trial");
    SuiteReport<Subject> report;
    report.trials = trials;
    for (Axiom a : kAxioms) {
        AxiomSummary<Subject> s;
        s.axiom = a;
        report.axioms.push_back(std::move(s));
    }

    auto record = [&](const AxiomCase<Subject>& c, int index) {
        auto& s = report.axioms[static_cast<std::size_t>(c.axiom)];
        ++s.cases;
        try {
            auto r = check_axiom(metric, c, tolerance);
            if (!r.holds) {
                if (s.violations++ == 0) {
                    s.first_violation = std::move(r);
                    s.first_violation_case = index;
                }
            }
        } catch (const Error& e) {
            if (s.errors++ == 0) s.first_error = e.what();
        }
    };

    int index = 0;
    for (const auto& c : extra) record(c, index++);
    for (int t = 0; t < trials; ++t, ++index) {
        auto rng = substream(seed, static_cast<std::uint64_t>(t));
        for (Axiom a : kAxioms) record(generate_case<Subject>(a, sample, below, rng), index);
    }
    return report;
}

/// Small discrete prospects: 1-4 outcomes, integer weights, integer losses 0..1000.
LossProspect sample_prospect(SplitMix64& rng);
/// Same probabilities, each loss lowered by a random integer amount.
LossProspect sample_dominated(const LossProspect& x, SplitMix64& rng);

SuiteReport<LossProspect> run_expected_loss_suite(std::uint64_t seed, int trials,
                                                  double tolerance = kDefaultTolerance);

/// Log-uniform events over the scheme's impact and frequency factors, kept
/// inside each factor domain.
SubjectSampler<QuantEvent> event_sampler(const AnyScheme& scheme);
QuantEvent sample_dominated_event(const QuantEvent& x, SplitMix64& rng);

/// Events (sampled and extra) carry impacts in the impact factor's own unit.
SuiteReport<QuantEvent> run_scheme_suite(const AnyScheme& scheme, std::uint64_t seed, int trials,
                                         double tolerance = kDefaultTolerance,
                                         const std::vector<AxiomCase<QuantEvent>>& extra = {});

/// Monotonicity cases for every pair of portfolio events with strictly
/// ordered true risk, impacts converted to the scheme's impact unit.
std::vector<AxiomCase<QuantEvent>> portfolio_cases(const Portfolio& portfolio, const AnyScheme& scheme);

}  // namespace riskaudit
