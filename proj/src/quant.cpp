#include "riskaudit/quant.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "riskaudit/error.hpp"

namespace riskaudit {

namespace {

constexpr double kZ95 = 1.645;

}  // namespace

void check_distribution(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::point:
            if (!std::isfinite(spec.value)) throw Error("point impact must be finite");
            break;
        case DistKind::uniform:
            if (!(std::isfinite(spec.lo) && std::isfinite(spec.hi) && spec.lo < spec.hi))
                throw Error("uniform impact needs lo < hi");
            break;
        case DistKind::lognormal_ci90:
            if (!(spec.lo > 0.0 && spec.hi > spec.lo && std::isfinite(spec.hi)))
                throw Error("lognormal 90% interval needs 0 < lo < hi");
            break;
        case DistKind::discrete: {
            if (spec.points.empty()) throw Error("discrete impact needs at least one point");
            double total = 0.0;
            for (const auto& [p, v] : spec.points) {
                if (!(p >= 0.0 && p <= 1.0)) throw Error("discrete probability outside [0,1]");
                if (!std::isfinite(v)) throw Error("discrete value must be finite");
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-9) throw Error("discrete probabilities do not sum to 1");
            break;
        }
    }
}

void check_model(const EventModel& model) {
    const auto& f = model.frequency;
    if (f.kind == FrequencyKind::poisson && !(f.parameter >= 0.0 && std::isfinite(f.parameter))) {
        throw Error("model '" + model.id + "': poisson rate must be >= 0");
    }
    if (f.kind == FrequencyKind::bernoulli && !(f.parameter >= 0.0 && f.parameter <= 1.0)) {
        throw Error("model '" + model.id + "': bernoulli probability must lie in [0,1]");
    }
    try {
        check_distribution(model.impact);
    } catch (const Error& e) {
        throw Error("model '" + model.id + "': " + e.what());
    }
}

void check_appetite(const RiskAppetite& appetite) {
    if (appetite.points.empty()) throw Error("risk appetite has no points");
    for (std::size_t i = 0; i < appetite.points.size(); ++i) {
        const auto& p = appetite.points[i];
        if (!(p.max_probability >= 0.0 && p.max_probability <= 1.0)) throw Error("appetite probability outside [0,1]");
        if (i > 0) {
            const auto& q = appetite.points[i - 1];
            if (!(p.threshold > q.threshold)) throw Error("appetite thresholds must be strictly increasing");
            if (p.max_probability > q.max_probability) throw Error("appetite probabilities must be non-increasing");
        }
    }
}

std::pair<double, double> lognormal_params(double lo, double hi) {
    const double mu = (std::log(lo) + std::log(hi)) / 2.0;
    const double sigma = (std::log(hi) - std::log(lo)) / (2.0 * kZ95);
    return {mu, sigma};
}

double sample_normal(SplitMix64& rng) {
    const double u1 = rng.uniform_open();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_impact(const DistributionSpec& spec, SplitMix64& rng) {
    switch (spec.kind) {
        case DistKind::point: return spec.value;
        case DistKind::uniform: return spec.lo + (spec.hi - spec.lo) * rng.uniform();
        case DistKind::lognormal_ci90: {
            const auto [mu, sigma] = lognormal_params(spec.lo, spec.hi);
            return std::exp(mu + sigma * sample_normal(rng));
        }
        case DistKind::discrete: {
            const double u = rng.uniform();
            double acc = 0.0;
            for (const auto& [p, v] : spec.points) {
                acc += p;
                if (u < acc) return v;
            }
            return spec.points.back().second;
        }
    }
    return 0.0;
}

std::int64_t sample_poisson(double lambda, SplitMix64& rng) {
    if (lambda <= 0.0) return 0;
    if (lambda < 10.0) {
        // multiplication of uniforms until the product drops below e^-lambda
        const double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double prod = rng.uniform();
        while (prod > limit) {
            ++k;
            prod *= rng.uniform();
        }
        return k;
    }
    // transformed rejection with squeeze (PTRS)
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <= -lambda + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::int64_t>(k);
        }
    }
}

std::int64_t sample_occurrences(const FrequencyModel& frequency, SplitMix64& rng) {
    if (frequency.kind == FrequencyKind::bernoulli) return rng.uniform() < frequency.parameter ? 1 : 0;
    return sample_poisson(frequency.parameter, rng);
}

double sample_annual_loss(const EventModel& model, SplitMix64& rng) {
    const auto n = sample_occurrences(model.frequency, rng);
    if (model.impact.kind == DistKind::point) return static_cast<double>(n) * model.impact.value;
    double total = 0.0;
    for (std::int64_t i = 0; i < n; ++i) total += sample_impact(model.impact, rng);
    return total;
}

LossExceedanceCurve simulate(const std::vector<EventModel>& models, std::int64_t trials, std::uint64_t seed,
                             unsigned workers) {
    if (trials < 1) throw Error("simulation needs at least one trial");
    for (const auto& m : models) check_model(m);

    std::vector<double> samples(static_cast<std::size_t>(trials));
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, trials));
    auto run = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            auto rng = substream(seed, static_cast<std::uint64_t>(t));
            double total = 0.0;
            for (const auto& m : models) total += sample_annual_loss(m, rng);
            samples[static_cast<std::size_t>(t)] = total;
        }
    };
    std::vector<std::thread> pool;
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 1; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        if (begin >= trials) break;
        pool.emplace_back(run, begin, std::min(trials, begin + chunk));
    }
    run(0, std::min(trials, chunk));
    for (auto& t : pool) t.join();
    std::sort(samples.begin(), samples.end());

    LossExceedanceCurve curve;
    curve.trials = trials;
    if (trials > kMaxRawTrials) {
        curve.summarized = true;
        curve.samples.reserve(kSummaryPoints);
        const auto n = static_cast<double>(samples.size());
        for (std::size_t i = 0; i < kSummaryPoints; ++i) {
            const auto idx = static_cast<std::size_t>((static_cast<double>(i) + 0.5) * n / kSummaryPoints);
            curve.samples.push_back(samples[idx]);
        }
    } else {
        curve.samples = std::move(samples);
    }
    return curve;
}

double exceedance(const LossExceedanceCurve& curve, double threshold) {
    if (curve.samples.empty()) throw Error("empty loss exceedance curve");
    const auto it = std::upper_bound(curve.samples.begin(), curve.samples.end(), threshold);
    return static_cast<double>(curve.samples.end() - it) / static_cast<double>(curve.samples.size());
}

double percentile_loss(const LossExceedanceCurve& curve, double percentile) {
    if (curve.samples.empty()) throw Error("empty loss exceedance curve");
    if (!(percentile > 0.0 && percentile < 1.0)) throw Error("percentile must lie in (0,1)");
    const double n = static_cast<double>(curve.samples.size());
    // tolerance keeps p*n that should be an integer from rounding up
    auto k = static_cast<std::size_t>(std::ceil(percentile * n - 1e-9));
    k = std::clamp<std::size_t>(k, 1, curve.samples.size());
    return curve.samples[k - 1];
}

double sample_mean(const LossExceedanceCurve& curve) {
    if (curve.samples.empty()) throw Error("empty loss exceedance curve");
    long double s = 0.0L;
    for (double v : curve.samples) s += v;
    return static_cast<double>(s / static_cast<long double>(curve.samples.size()));
}

double sample_stddev(const LossExceedanceCurve& curve) {
    const double m = sample_mean(curve);
    if (curve.samples.size() < 2) return 0.0;
    long double s = 0.0L;
    for (double v : curve.samples) s += (v - m) * (v - m);
    return static_cast<double>(std::sqrt(s / static_cast<long double>(curve.samples.size() - 1)));
}

AppetiteVerdict compare_appetite(const LossExceedanceCurve& curve, const RiskAppetite& appetite) {
    check_appetite(appetite);
    AppetiteVerdict v;
    for (const auto& p : appetite.points) {
        AppetiteCheck c{p, exceedance(curve, p.threshold), false};
        c.violated = c.exceedance > p.max_probability;
        if (c.violated) v.tolerable = false;
        v.points.push_back(c);
    }
    return v;
}

double distribution_mean(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::point: return spec.value;
        case DistKind::uniform: return (spec.lo + spec.hi) / 2.0;
        case DistKind::lognormal_ci90: {
            const auto [mu, sigma] = lognormal_params(spec.lo, spec.hi);
            return std::exp(mu + sigma * sigma / 2.0);
        }
        case DistKind::discrete: {
            double s = 0.0;
            for (const auto& [p, v] : spec.points) s += p * v;
            return s;
        }
    }
    return 0.0;
}

Eal closed_form_eal(const EventModel& model) {
    check_model(model);
    return Eal{model.frequency.parameter * distribution_mean(model.impact), model.impact.kind != DistKind::lognormal_ci90};
}

Eal closed_form_eal(const std::vector<EventModel>& models) {
    Eal total;
    for (const auto& m : models) {
        const auto e = closed_form_eal(m);
        total.value += e.value;
        total.exact = total.exact && e.exact;
    }
    return total;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_lec_csv(std::ostream& out, const LossExceedanceCurve& curve) {
    out << "loss,exceedance_probability\n";
    const auto& s = curve.samples;
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        out << format_number(s[i]) << ',' << format_number(static_cast<double>(s.size() - j) / n) << '\n';
        i = j;
    }
}

std::string to_string(DistKind kind) {
    switch (kind) {
        case DistKind::point: return "point";
        case DistKind::uniform: return "uniform";
        case DistKind::lognormal_ci90: return "lognormal-ci90";
        case DistKind::discrete: return "discrete";
    }
    return "point";
}

std::string to_string(FrequencyKind kind) { return kind == FrequencyKind::poisson ? "poisson" : "bernoulli"; }

DistKind parse_dist_kind(const std::string& text) {
    for (auto k : {DistKind::point, DistKind::uniform, DistKind::lognormal_ci90, DistKind::discrete}) {
        if (to_string(k) == text) return k;
    }
    throw Error("unknown impact distribution '" + text + "'");
}

FrequencyKind parse_frequency_kind(const std::string& text) {
    if (text == "poisson") return FrequencyKind::poisson;
    if (text == "bernoulli") return FrequencyKind::bernoulli;
    throw Error("unknown frequency model '" + text + "'");
}

}  // namespace riskaudit
