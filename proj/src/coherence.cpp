#include "riskaudit/coherence.hpp"

#include <algorithm>
#include <map>

namespace riskaudit {

void check_prospect(const LossProspect& prospect) {
    if (prospect.outcomes.empty()) throw Error("prospect has no outcomes");
    double total = 0.0;
    for (const auto& o : prospect.outcomes) {
        if (!(o.probability >= 0.0 && o.probability <= 1.0)) throw Error("outcome probability outside [0,1]");
        if (!std::isfinite(o.loss)) throw Error("outcome loss must be finite");
        total += o.probability;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error("outcome probabilities do not sum to 1");
}

double expected_loss_metric(const LossProspect& prospect) {
    check_prospect(prospect);
    double s = 0.0;
    for (const auto& o : prospect.outcomes) s += o.probability * o.loss;
    return s;
}

double scheme_induced_metric(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit) {
    return score_quant_event(scheme, event, unit).score;
}

LossProspect scaled(const LossProspect& x, double lambda) {
    LossProspect out = x;
    for (auto& o : out.outcomes) o.loss *= lambda;
    return out;
}

LossProspect mitigated(const LossProspect& x, double alpha) {
    LossProspect out = x;
    for (auto& o : out.outcomes) o.loss -= alpha;
    return out;
}

LossProspect combined(const LossProspect& x, const LossProspect& y) {
    std::map<double, double> joint;
    for (const auto& a : x.outcomes)
        for (const auto& b : y.outcomes) joint[a.loss + b.loss] += a.probability * b.probability;
    LossProspect out;
    out.unit = x.unit;
    for (const auto& [loss, p] : joint) out.outcomes.push_back({p, loss});
    return out;
}

bool is_positive(const LossProspect& x) {
    bool any = false;
    for (const auto& o : x.outcomes) {
        if (o.loss < 0.0) return false;
        if (o.loss > 0.0 && o.probability > 0.0) any = true;
    }
    return any;
}

bool dominates(const LossProspect& x, const LossProspect& y) {
    if (x.outcomes.size() != y.outcomes.size()) return false;
    for (std::size_t i = 0; i < x.outcomes.size(); ++i) {
        if (x.outcomes[i].probability != y.outcomes[i].probability) return false;
        if (x.outcomes[i].loss < y.outcomes[i].loss) return false;
    }
    return true;
}

double loss_scale(const LossProspect& x) {
    double m = 0.0;
    for (const auto& o : x.outcomes) m = std::max(m, o.loss);
    return m;
}

QuantEvent scaled(const QuantEvent& x, double lambda) {
    QuantEvent out = x;
    out.impact *= lambda;
    return out;
}

QuantEvent mitigated(const QuantEvent& x, double alpha) {
    if (alpha == 0.0) return x;
    if (x.frequency == 0.0) throw Error("cannot mitigate an event that never occurs");
    QuantEvent out = x;
    out.impact -= alpha / x.frequency;
    if (out.impact < 0.0 && out.impact > -1e-12 * x.impact) out.impact = 0.0;  // rounding at alpha = annual loss
    return out;
}

QuantEvent combined(const QuantEvent& x, const QuantEvent& y) {
    QuantEvent out;
    out.id = x.id + "+" + y.id;
    out.frequency = x.frequency + y.frequency;
    out.impact = out.frequency > 0.0 ? (x.frequency * x.impact + y.frequency * y.impact) / out.frequency : 0.0;
    return out;
}

bool is_positive(const QuantEvent& x) { return true_risk(x) > 0.0; }

bool dominates(const QuantEvent& x, const QuantEvent& y) { return true_risk(x) >= true_risk(y); }

double loss_scale(const QuantEvent& x) { return true_risk(x); }

std::string to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::relevance: return "relevance";
        case Axiom::monotonicity: return "monotonicity";
        case Axiom::translation_invariance: return "translation-invariance";
        case Axiom::subadditivity: return "subadditivity";
        case Axiom::positive_homogeneity: return "positive-homogeneity";
    }
    return "unknown";
}

LossProspect sample_prospect(SplitMix64& rng) {
    const int n = 1 + static_cast<int>(rng.next() % 4);
    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        weights.push_back(1.0 + static_cast<double>(rng.next() % 10));
        total += weights.back();
    }
    LossProspect x;
    for (int i = 0; i < n; ++i) {
        x.outcomes.push_back({weights[static_cast<std::size_t>(i)] / total, static_cast<double>(rng.next() % 1001)});
    }
    return x;
}

LossProspect sample_dominated(const LossProspect& x, SplitMix64& rng) {
    LossProspect y = x;
    for (auto& o : y.outcomes) o.loss -= std::floor(rng.uniform() * (o.loss + 1.0));
    return y;
}

SuiteReport<LossProspect> run_expected_loss_suite(std::uint64_t seed, int trials, double tolerance) {
    return run_coherence_suite<LossProspect>(expected_loss_metric, sample_prospect, sample_dominated, seed, trials,
                                             tolerance);
}

namespace {

struct Span {
    double lo, hi;
};

// Sampling span for a bound factor: one decade beyond its outermost finite
// boundaries, clipped to the factor's domain.
Span sampling_span(const OrdinalScale& s) {
    const auto d = scale_domain(s);
    std::vector<double> cuts;
    for (const auto& l : s.levels) {
        if (l.range->lo > 0.0) cuts.push_back(l.range->lo);
        if (l.range->bounded() && l.range->hi > 0.0) cuts.push_back(l.range->hi);
    }
    if (cuts.empty()) throw Error("factor '" + s.name + "' has no positive boundaries to sample around");
    const auto [mn, mx] = std::minmax_element(cuts.begin(), cuts.end());
    Span span{*mn / 10.0, *mx * 10.0};
    span.lo = std::max(span.lo, d.lo > 0.0 ? d.lo : span.lo);
    if (d.bounded()) span.hi = std::min(span.hi, d.hi);
    return span;
}

double log_uniform(const Span& s, SplitMix64& rng) {
    return std::exp(std::log(s.lo) + rng.uniform() * (std::log(s.hi) - std::log(s.lo)));
}

}  // namespace

SubjectSampler<QuantEvent> event_sampler(const AnyScheme& scheme) {
    const auto factors = scheme_factors(scheme);
    const auto roles = scheme_roles(scheme);
    std::optional<Span> impact, freq;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!factors[i]->bound()) throw Error("factor '" + factors[i]->name + "' has no range bindings");
        if (roles[i] == FactorRole::impact) impact = sampling_span(*factors[i]);
        if (roles[i] == FactorRole::frequency) freq = sampling_span(*factors[i]);
    }
    if (!impact || !freq) throw Error("scheme '" + scheme_name(scheme) + "' needs an impact and a frequency factor");
    return [impact = *impact, freq = *freq](SplitMix64& rng) {
        QuantEvent e;
        e.id = "sample";
        e.impact = log_uniform(impact, rng);
        e.frequency = log_uniform(freq, rng);
        return e;
    };
}

QuantEvent sample_dominated_event(const QuantEvent& x, SplitMix64& rng) {
    QuantEvent y = x;
    y.id = x.id + "-lower";
    y.impact *= rng.uniform();
    return y;
}

SuiteReport<QuantEvent> run_scheme_suite(const AnyScheme& scheme, std::uint64_t seed, int trials, double tolerance,
                                         const std::vector<AxiomCase<QuantEvent>>& extra) {
    RiskMetric<QuantEvent> metric = [scheme](const QuantEvent& e) { return scheme_induced_metric(scheme, e); };
    return run_coherence_suite<QuantEvent>(metric, event_sampler(scheme), sample_dominated_event, seed, trials,
                                           tolerance, extra);
}

std::vector<AxiomCase<QuantEvent>> portfolio_cases(const Portfolio& portfolio, const AnyScheme& scheme) {
    std::string target;
    const auto factors = scheme_factors(scheme);
    const auto roles = scheme_roles(scheme);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (roles[i] == FactorRole::impact) target = factors[i]->unit;
    }
    std::vector<QuantEvent> events = portfolio.events;
    if (!target.empty() && !portfolio.unit.empty()) {
        for (auto& e : events) e.impact = convert_unit(e.impact, portfolio.unit, target);
    }
    std::vector<AxiomCase<QuantEvent>> out;
    for (const auto& a : events) {
        for (const auto& b : events) {
            if (&a == &b || !(true_risk(a) > true_risk(b))) continue;
            out.push_back(AxiomCase<QuantEvent>{Axiom::monotonicity, {a, b}, std::nullopt});
        }
    }
    return out;
}

}  // namespace riskaudit
