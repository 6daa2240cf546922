#include "riskaudit/ordinal_scale.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "riskaudit/error.hpp"

namespace riskaudit {

bool QuantRange::valid() const {
    if (std::isnan(lo) || std::isnan(hi)) return false;
    if (!std::isfinite(lo)) return false;
    if (hi == -kInfinity) return false;
    return lo < hi;
}

bool QuantRange::contains(double v) const {
    if (std::isnan(v)) return false;
    const bool above_lo = v > lo || (lo_inclusive && v == lo);
    const bool below_hi = v < hi || (hi_inclusive && v == hi);
    return above_lo && below_hi;
}

bool intersects(const QuantRange& a, const QuantRange& b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo < hi) return true;
    if (lo > hi) return false;
    return a.contains(lo) && b.contains(lo);
}

bool OrdinalScale::bound() const {
    return !levels.empty() &&
           std::all_of(levels.begin(), levels.end(), [](const RankLevel& l) { return l.range.has_value(); });
}

const RankLevel& OrdinalScale::level(int rank) const {
    if (rank < 1 || rank > size()) {
        throw Error("rank " + std::to_string(rank) + " is not a level of scale '" + name + "' (1.." +
                    std::to_string(size()) + ")");
    }
    return levels[static_cast<std::size_t>(rank - 1)];
}

std::vector<double> OrdinalScale::semi_quant_values() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) out.push_back(l.semi_quant);
    return out;
}

std::vector<double> semi_quant_numbers(NumberAssignment numbers, int levels) {
    std::vector<double> out(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
        double v = 0.0;
        switch (numbers) {
            case NumberAssignment::increasing: v = i + 1; break;
            case NumberAssignment::start_at_zero: v = i; break;
            case NumberAssignment::decreasing: v = levels - i; break;
            // Odd counts give integers (-2..2 for five ranks); even counts are
            // symmetric half-integers.
            case NumberAssignment::centered: v = i - (levels - 1) / 2.0; break;
            case NumberAssignment::spaced_out: v = 2.0 * (i + 1); break;
            case NumberAssignment::exponential: v = std::ldexp(1.0, i); break;
        }
        out[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

std::vector<std::string> default_labels(int levels) {
    switch (levels) {
        case 3: return {"Low", "Medium", "High"};
        case 4: return {"Very Low", "Low", "High", "Very High"};
        case 5: return {"Very Low", "Low", "Medium", "High", "Very High"};
        default: break;
    }
    std::vector<std::string> out;
    for (int i = 1; i <= levels; ++i) out.push_back("Level " + std::to_string(i));
    return out;
}

namespace {

std::vector<double> partition_breakpoints(DistributionKind kind, const QuantRange& domain, int levels) {
    std::vector<double> cuts;
    switch (kind) {
        case DistributionKind::linear: {
            if (!domain.bounded()) throw Error("linear partition needs a finite domain");
            for (int k = 1; k < levels; ++k) cuts.push_back(domain.lo + domain.width() * k / levels);
            break;
        }
        case DistributionKind::logarithmic: {
            if (domain.lo < 0.0) throw Error("logarithmic partition needs domain.lo >= 0");
            if (!domain.bounded() || domain.hi <= 0.0) {
                throw Error("logarithmic partition needs a finite positive domain.hi");
            }
            for (int k = 1; k < levels; ++k) cuts.push_back(domain.hi / std::pow(10.0, levels - k));
            if (cuts.front() <= domain.lo) {
                throw Error("logarithmic partition with " + std::to_string(levels) +
                            " decades leaves the lowest level empty");
            }
            break;
        }
        case DistributionKind::gaussian:
        case DistributionKind::inverse_gaussian: {
            if (levels != 5) throw Error("gaussian partitions are tabulated for 5 levels only");
            if (!domain.bounded()) throw Error("gaussian partition needs a finite domain");
            const int pct_gauss[] = {10, 30, 70, 90};
            const int pct_inverse[] = {30, 45, 55, 70};
            const int* pct = kind == DistributionKind::gaussian ? pct_gauss : pct_inverse;
            for (int k = 0; k < 4; ++k) cuts.push_back(domain.lo + domain.width() * pct[k] / 100.0);
            break;
        }
        case DistributionKind::arbitrary:
            throw Error("arbitrary scales have no generated partition; define the levels explicitly");
    }
    return cuts;
}

}  // namespace

OrdinalScale make_partition_scale(DistributionKind kind, const QuantRange& domain, int levels,
                                  const std::vector<std::string>& labels, NumberAssignment numbers,
                                  std::string name) {
    if (levels < 2) throw Error("a partition scale needs at least 2 levels");
    if (!domain.valid()) throw Error("invalid partition domain");
    if (!labels.empty() && static_cast<int>(labels.size()) != levels) {
        throw Error("label count does not match level count");
    }

    const auto cuts = partition_breakpoints(kind, domain, levels);
    const auto values = semi_quant_numbers(numbers, levels);
    const auto names = labels.empty() ? default_labels(levels) : labels;

    OrdinalScale scale;
    scale.name = std::move(name);
    scale.kind = kind;
    scale.domain = QuantRange{domain.lo, domain.hi, true, domain.bounded()};
    for (int i = 0; i < levels; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        QuantRange r;
        r.lo = i == 0 ? domain.lo : cuts[k - 1];
        r.hi = i == levels - 1 ? domain.hi : cuts[k];
        r.lo_inclusive = i == 0;
        r.hi_inclusive = r.bounded();
        scale.levels.push_back(RankLevel{i + 1, names[k], values[k], r});
    }
    return scale;
}

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

ScaleFinding finding(Severity sev, std::string tag, int a, int b, std::string msg) {
    return ScaleFinding{sev, std::move(tag), a, b, std::move(msg)};
}

}  // namespace

std::vector<ScaleFinding> validate_scale(const OrdinalScale& scale) {
    std::vector<ScaleFinding> out;
    const int n = scale.size();
    if (n == 0) {
        out.push_back(finding(Severity::violation, "empty", 0, 0, "scale has no levels"));
        return out;
    }

    for (int i = 0; i < n; ++i) {
        const auto& l = scale.levels[static_cast<std::size_t>(i)];
        if (l.index != i + 1) {
            out.push_back(finding(Severity::violation, "index", i + 1, 0,
                                  "level at position " + std::to_string(i + 1) + " has index " +
                                      std::to_string(l.index)));
        }
        if (l.label.empty()) {
            out.push_back(finding(Severity::violation, "label", i + 1, 0,
                                  "level " + std::to_string(i + 1) + " has an empty label"));
        }
    }

    // semi-quantitative numbers: pairwise distinct, strictly monotone
    int trend = 0;
    for (int i = 1; i < n; ++i) {
        const double a = scale.levels[static_cast<std::size_t>(i - 1)].semi_quant;
        const double b = scale.levels[static_cast<std::size_t>(i)].semi_quant;
        if (a == b) {
            out.push_back(finding(Severity::violation, "duplicate-number", i, i + 1,
                                  "levels " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                      " share the number " + fmt_num(a)));
            continue;
        }
        const int step = b > a ? 1 : -1;
        if (trend == 0) {
            trend = step;
        } else if (step != trend) {
            out.push_back(finding(Severity::violation, "non-monotone-number", i, i + 1,
                                  "numbers change direction between level " + std::to_string(i) +
                                      " and level " + std::to_string(i + 1)));
        }
    }

    const auto bound_count =
        std::count_if(scale.levels.begin(), scale.levels.end(), [](const RankLevel& l) { return l.range.has_value(); });
    if (bound_count != 0 && bound_count != n) {
        out.push_back(finding(Severity::violation, "partial-binding", 0, 0,
                              "only " + std::to_string(bound_count) + " of " + std::to_string(n) +
                                  " levels have a quantitative range"));
    }

    if (bound_count == n) {
        bool ranges_ok = true;
        for (int i = 0; i < n; ++i) {
            const auto& r = *scale.levels[static_cast<std::size_t>(i)].range;
            if (!r.valid()) {
                ranges_ok = false;
                out.push_back(finding(Severity::violation, "invalid-range", i + 1, 0,
                                      "level " + std::to_string(i + 1) + " range must satisfy lo < hi with finite lo"));
            }
        }
        if (ranges_ok) {
            for (int i = 1; i < n; ++i) {
                const auto& prev = *scale.levels[static_cast<std::size_t>(i - 1)].range;
                const auto& cur = *scale.levels[static_cast<std::size_t>(i)].range;
                const std::string pair = "level " + std::to_string(i) + " and level " + std::to_string(i + 1);
                const bool gap = cur.lo > prev.hi || (cur.lo == prev.hi && !prev.hi_inclusive && !cur.lo_inclusive);
                const bool overlap = cur.lo < prev.hi || (cur.lo == prev.hi && prev.hi_inclusive && cur.lo_inclusive);
                if (gap) {
                    out.push_back(finding(Severity::violation, "gap", i, i + 1,
                                          "gap between " + pair + " (" + fmt_num(prev.hi) + " .. " +
                                              fmt_num(cur.lo) + ")"));
                } else if (overlap) {
                    out.push_back(finding(Severity::violation, "overlap", i, i + 1, "overlap between " + pair));
                }
            }
            if (scale.domain) {
                const auto& first = *scale.levels.front().range;
                const auto& last = *scale.levels.back().range;
                const auto& d = *scale.domain;
                if (first.lo != d.lo || (d.lo_inclusive && !first.lo_inclusive)) {
                    out.push_back(finding(Severity::violation, "coverage", 1, 0,
                                          "level 1 does not start at the domain lower bound " + fmt_num(d.lo)));
                }
                if (last.hi != d.hi || (d.hi_inclusive && !last.hi_inclusive)) {
                    out.push_back(finding(Severity::violation, "coverage", n, 0,
                                          "level " + std::to_string(n) + " does not end at the domain upper bound " +
                                              fmt_num(d.hi)));
                }
            }
        }
    }

    for (const auto& l : scale.levels) {
        if (l.semi_quant == 0.0) {
            out.push_back(finding(Severity::warning, "zero-annihilation", l.index, 0,
                                  "level " + std::to_string(l.index) +
                                      " is numbered 0; a multiplicative combination annihilates all other factors"));
        }
    }
    return out;
}

QuantRange scale_domain(const OrdinalScale& scale) {
    if (scale.domain) return *scale.domain;
    if (!scale.bound()) throw Error("scale '" + scale.name + "' has no range bindings");
    const auto& first = *scale.levels.front().range;
    const auto& last = *scale.levels.back().range;
    return QuantRange{first.lo, last.hi, first.lo_inclusive, last.hi_inclusive};
}

namespace {

void require_bound(const OrdinalScale& scale) {
    if (!scale.bound()) throw Error("scale '" + scale.name + "' has no range bindings");
}

}  // namespace

int classify(const OrdinalScale& scale, double value) {
    require_bound(scale);
    if (!scale_domain(scale).contains(value)) {
        throw Error("value " + fmt_num(value) + " is outside the domain of scale '" + scale.name + "'");
    }
    for (const auto& l : scale.levels) {
        if (l.range->contains(value)) return l.index;
    }
    throw Error("value " + fmt_num(value) + " falls into a gap of scale '" + scale.name + "'");
}

std::vector<int> classify_interval(const OrdinalScale& scale, const QuantRange& uncertainty) {
    require_bound(scale);
    if (std::isnan(uncertainty.lo) || std::isnan(uncertainty.hi) || uncertainty.lo > uncertainty.hi ||
        (uncertainty.lo == uncertainty.hi && !(uncertainty.lo_inclusive && uncertainty.hi_inclusive))) {
        throw Error("empty uncertainty interval");
    }
    const auto d = scale_domain(scale);
    const bool lo_ok = uncertainty.lo > d.lo || (uncertainty.lo == d.lo && (d.lo_inclusive || !uncertainty.lo_inclusive));
    const bool hi_ok = uncertainty.hi < d.hi || (uncertainty.hi == d.hi && (d.hi_inclusive || !uncertainty.hi_inclusive));
    if (!lo_ok || !hi_ok) {
        throw Error("uncertainty interval lies outside the domain of scale '" + scale.name + "'");
    }
    std::vector<int> ranks;
    for (const auto& l : scale.levels) {
        if (intersects(*l.range, uncertainty)) ranks.push_back(l.index);
    }
    return ranks;
}

QuantRange rank_range(const OrdinalScale& scale, int rank) {
    require_bound(scale);
    return *scale.level(rank).range;
}

BoundarySensitivity boundary_sensitivity(const OrdinalScale& scale, double value) {
    const int rank = classify(scale, value);
    const auto r = rank_range(scale, rank);

    double distance = kInfinity;
    if (rank > 1) distance = std::min(distance, value - r.lo);
    if (rank < scale.size() && r.bounded()) distance = std::min(distance, r.hi - value);

    BoundarySensitivity out;
    out.absolute = distance;
    if (value == 0.0) {
        out.relative = false;
        out.epsilon = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.epsilon = distance / std::abs(value);
    }
    return out;
}

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::linear: return "linear";
        case DistributionKind::logarithmic: return "logarithmic";
        case DistributionKind::gaussian: return "gaussian";
        case DistributionKind::inverse_gaussian: return "inverse-gaussian";
        case DistributionKind::arbitrary: return "arbitrary";
    }
    return "arbitrary";
}

std::string to_string(NumberAssignment numbers) {
    switch (numbers) {
        case NumberAssignment::increasing: return "increasing";
        case NumberAssignment::start_at_zero: return "start-at-zero";
        case NumberAssignment::decreasing: return "decreasing";
        case NumberAssignment::centered: return "centered";
        case NumberAssignment::spaced_out: return "spaced-out";
        case NumberAssignment::exponential: return "exponential";
    }
    return "increasing";
}

std::string to_string(Direction direction) {
    return direction == Direction::higher_is_riskier ? "higher-is-riskier" : "higher-is-safer";
}

DistributionKind parse_distribution_kind(const std::string& text) {
    for (auto k : {DistributionKind::linear, DistributionKind::logarithmic, DistributionKind::gaussian,
                   DistributionKind::inverse_gaussian, DistributionKind::arbitrary}) {
        if (to_string(k) == text) return k;
    }
    throw Error("unknown distribution kind '" + text + "'");
}

NumberAssignment parse_number_assignment(const std::string& text) {
    for (auto k : {NumberAssignment::increasing, NumberAssignment::start_at_zero, NumberAssignment::decreasing,
                   NumberAssignment::centered, NumberAssignment::spaced_out, NumberAssignment::exponential}) {
        if (to_string(k) == text) return k;
    }
    throw Error("unknown number assignment '" + text + "'");
}

Direction parse_direction(const std::string& text) {
    if (text == "higher-is-riskier") return Direction::higher_is_riskier;
    if (text == "higher-is-safer") return Direction::higher_is_safer;
    throw Error("unknown scale direction '" + text + "'");
}

}  // namespace riskaudit
