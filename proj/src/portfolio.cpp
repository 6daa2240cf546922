#include "riskaudit/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "riskaudit/error.hpp"
#include "riskaudit/rng.hpp"

namespace riskaudit {

double periods_per_year(const std::string& period) {
    if (period == "hour") return 24.0 * 7.0 * 52.0;
    if (period == "day") return 365.0;
    if (period == "week") return 52.0;
    if (period == "month") return 12.0;
    if (period == "year") return 1.0;
    throw Error("unknown period '" + period + "' (hour, day, week, month, year)");
}

double annual_rate(double count, const std::string& period) { return count * periods_per_year(period); }

namespace {

struct UnitInfo {
    const char* name;
    const char* dimension;
    double to_base;
};

constexpr UnitInfo kUnits[] = {
    {"lb", "mass", 1.0},
    {"oz", "mass", 1.0 / 16.0},
    {"kg", "mass", 1.0 / 0.45359237},
    {"g", "mass", 1.0 / 453.59237},
    {"L", "volume", 1.0},
    {"ml", "volume", 0.001},
};

const UnitInfo* find_unit(const std::string& name) {
    for (const auto& u : kUnits) {
        if (name == u.name) return &u;
    }
    return nullptr;
}

}  // namespace

double convert_unit(double value, const std::string& from, const std::string& to) {
    if (from == to) return value;
    const auto* a = find_unit(from);
    const auto* b = find_unit(to);
    if (!a || !b || std::string(a->dimension) != b->dimension) {
        throw Error("cannot convert '" + from + "' to '" + to + "'");
    }
    if (a->to_base == b->to_base) return value;
    return value * a->to_base / b->to_base;
}

double true_risk(const QuantEvent& event) { return event.frequency * event.impact; }

void check_portfolio(const Portfolio& portfolio) {
    std::set<std::string> ids;
    for (const auto& e : portfolio.events) {
        if (e.id.empty()) throw Error("event without id");
        if (!ids.insert(e.id).second) throw Error("duplicate event id '" + e.id + "'");
        if (!(e.frequency >= 0.0) || !std::isfinite(e.frequency)) throw Error("event '" + e.id + "' needs frequency >= 0");
        if (!(e.impact >= 0.0) || !std::isfinite(e.impact)) throw Error("event '" + e.id + "' needs impact >= 0");
    }
}

std::vector<double> factor_values(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit) {
    const auto factors = scheme_factors(scheme);
    const auto roles = scheme_roles(scheme);
    std::vector<double> values;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        switch (roles[i]) {
            case FactorRole::impact: {
                const auto& su = factors[i]->unit;
                values.push_back(su.empty() || unit.empty() ? event.impact : convert_unit(event.impact, unit, su));
                break;
            }
            case FactorRole::frequency: values.push_back(event.frequency); break;
            case FactorRole::other:
                throw Error("scheme '" + scheme_name(scheme) + "' factor '" + factors[i]->name +
                            "' has no impact/frequency role; events cannot be scored");
        }
    }
    return values;
}

ScoreResult score_quant_event(const AnyScheme& scheme, const QuantEvent& event, const std::string& unit) {
    try {
        return score_event(scheme, factor_values(scheme, event, unit));
    } catch (const Error& e) {
        throw Error("event '" + event.id + "': " + e.what());
    }
}

namespace {

struct Scored {
    const QuantEvent* event;
    double risk;
    ScoreResult result;
};

std::vector<Scored> score_all(const Portfolio& portfolio, const AnyScheme& scheme) {
    check_portfolio(portfolio);
    std::vector<Scored> out;
    for (const auto& e : portfolio.events) out.push_back({&e, true_risk(e), score_quant_event(scheme, e, portfolio.unit)});
    return out;
}

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

std::vector<InversionPair> detect_inversions(const Portfolio& portfolio, const AnyScheme& scheme) {
    const auto scored = score_all(portfolio, scheme);
    std::vector<InversionPair> out;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        for (std::size_t j = i + 1; j < scored.size(); ++j) {
            const auto* a = &scored[i];
            const auto* b = &scored[j];
            const int dr = sign(a->risk - b->risk);
            const int ds = sign(a->result.score - b->result.score);
            if (dr == 0 || ds == 0 || dr == ds) continue;
            if (b->event->id < a->event->id) std::swap(a, b);
            out.push_back({a->event->id, b->event->id, a->risk, b->risk, a->result.score, b->result.score});
        }
    }
    std::sort(out.begin(), out.end(), [](const InversionPair& x, const InversionPair& y) {
        return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
    });
    return out;
}

PairCounts count_pairs(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("rankings differ in length");
    PairCounts c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const int dx = sign(x[i] - x[j]);
            const int dy = sign(y[i] - y[j]);
            if (dx == 0 && dy == 0) ++c.tied_both;
            else if (dx == 0) ++c.tied_x;
            else if (dy == 0) ++c.tied_y;
            else if (dx == dy) ++c.concordant;
            else ++c.discordant;
        }
    }
    return c;
}

std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) throw Error("kendall tau needs at least 2 events");
    const auto c = count_pairs(x, y);
    const double n0 = static_cast<double>(x.size()) * (static_cast<double>(x.size()) - 1) / 2;
    const double n1 = static_cast<double>(c.tied_x + c.tied_both);
    const double n2 = static_cast<double>(c.tied_y + c.tied_both);
    if (n0 == n1 || n0 == n2) return std::nullopt;
    return static_cast<double>(c.concordant - c.discordant) / std::sqrt((n0 - n1) * (n0 - n2));
}

std::optional<double> kendall_tau(const Portfolio& portfolio, const AnyScheme& scheme) {
    const auto scored = score_all(portfolio, scheme);
    std::vector<double> scores, risks;
    for (const auto& s : scored) {
        scores.push_back(s.result.score);
        risks.push_back(s.risk);
    }
    return kendall_tau_b(scores, risks);
}

namespace {

double spread_ratio(double lo, double hi) {
    if (lo == hi) return 1.0;
    if (lo == 0.0) return kInfinity;
    return hi / lo;
}

CompressionReport compression_of(const std::vector<Scored>& scored) {
    std::map<int, CategoryCompression> by_index;
    for (const auto& s : scored) {
        const auto& cat = *s.result.category;
        auto [it, fresh] = by_index.try_emplace(cat.index, CategoryCompression{cat, 0, s.risk, s.risk, 1.0});
        auto& c = it->second;
        ++c.events;
        c.min_risk = std::min(c.min_risk, s.risk);
        c.max_risk = std::max(c.max_risk, s.risk);
    }
    CompressionReport report;
    for (auto& [idx, c] : by_index) {
        c.ratio = spread_ratio(c.min_risk, c.max_risk);
        report.categories.push_back(c);
    }
    for (std::size_t i = 0; i < report.categories.size(); ++i) {
        for (std::size_t j = i + 1; j < report.categories.size(); ++j) {
            const auto& a = report.categories[i];
            const auto& b = report.categories[j];
            if (a.max_risk >= b.min_risk && b.max_risk >= a.min_risk) {
                report.overlapping.emplace_back(a.category.index, b.category.index);
            }
        }
    }
    return report;
}

bool has_categories(const AnyScheme& scheme) {
    if (const auto* s = std::get_if<RiskScheme>(&scheme)) return s->thresholds.has_value();
    return true;
}

std::vector<TieGroup> ties_of(const std::vector<Scored>& scored) {
    std::map<double, TieGroup> groups;
    for (const auto& s : scored) {
        auto [it, fresh] = groups.try_emplace(s.result.score, TieGroup{s.result.score, {}, s.risk, s.risk, 1.0});
        auto& g = it->second;
        g.ids.push_back(s.event->id);
        g.min_risk = std::min(g.min_risk, s.risk);
        g.max_risk = std::max(g.max_risk, s.risk);
    }
    std::vector<TieGroup> out;
    for (auto& [score, g] : groups) {
        if (g.ids.size() < 2) continue;
        g.spread = spread_ratio(g.min_risk, g.max_risk);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

CompressionReport range_compression(const Portfolio& portfolio, const AnyScheme& scheme) {
    if (!has_categories(scheme)) throw Error("scheme '" + scheme_name(scheme) + "' has no output categories");
    return compression_of(score_all(portfolio, scheme));
}

std::vector<TieGroup> detect_ties(const Portfolio& portfolio, const AnyScheme& scheme) {
    return ties_of(score_all(portfolio, scheme));
}

AnalysisReport analyze_portfolio(const Portfolio& portfolio, const AnyScheme& scheme) {
    const auto scored = score_all(portfolio, scheme);
    AnalysisReport r;
    std::vector<double> scores, risks;
    for (const auto& s : scored) {
        scores.push_back(s.result.score);
        risks.push_back(s.risk);
    }
    r.pairs = count_pairs(scores, risks);
    if (scored.size() >= 2) r.kendall_tau = kendall_tau_b(scores, risks);
    r.inversions = detect_inversions(portfolio, scheme);
    if (has_categories(scheme)) r.compression = compression_of(scored);
    r.ties = ties_of(scored);
    return r;
}

RiskScheme additive_copy(const RiskScheme& scheme) {
    RiskScheme s = scheme;
    s.name = scheme.name + "-additive";
    s.rule = CombinationRule{};
    s.thresholds.reset();
    return s;
}

namespace {

// Finite stand-in for an open-ended top level, used only to place points.
double realization_hi(const QuantRange& r) {
    if (r.bounded()) return r.hi;
    return r.lo > 0.0 ? r.lo * 100.0 : 100.0;
}

struct AdvCell {
    int impact_rank;
    int freq_rank;
    double score;
    QuantRange impact;
    QuantRange freq;
    double risk_lo;
    double risk_hi;
    double slice_lo = 0.0;
    double slice_hi = 0.0;

    std::pair<double, double> at(double t) const {
        return {impact.lo + t * (realization_hi(impact) - impact.lo), freq.lo + t * (realization_hi(freq) - freq.lo)};
    }
    // Point on the cell diagonal whose product equals `risk`.
    std::pair<double, double> realize(double risk) const {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = (lo + hi) / 2;
            const auto [im, fr] = at(mid);
            (im * fr < risk ? lo : hi) = mid;
        }
        return at(hi);
    }
};

}  // namespace

Portfolio adversarial_portfolio(const RiskScheme& scheme, int size, std::uint64_t seed) {
    if (size < 2) throw Error("adversarial portfolio needs size >= 2");
    if (scheme.factors.size() != 2) throw Error("adversarial portfolio needs a 2-factor scheme");
    int imp = 0, frq = 1;
    if (!scheme.roles.empty()) {
        if (scheme.roles[0] == FactorRole::frequency && scheme.roles[1] == FactorRole::impact) std::swap(imp, frq);
        else if (!(scheme.roles[0] == FactorRole::impact && scheme.roles[1] == FactorRole::frequency))
            throw Error("adversarial portfolio needs one impact and one frequency factor");
    }
    const auto& is = scheme.factors[static_cast<std::size_t>(imp)];
    const auto& fs = scheme.factors[static_cast<std::size_t>(frq)];
    if (!is.bound() || !fs.bound()) throw Error("adversarial portfolio needs range-bound factors");
    for (const auto* s : {&is, &fs}) {
        if (s->levels.front().range->lo < 0.0) throw Error("adversarial portfolio needs non-negative factor ranges");
    }

    const int k = is.size();
    const int l = fs.size();
    const int top = std::max(k, l);
    std::vector<AdvCell> cells;
    for (int band : {top + 2, top + 1}) {
        for (int i = 1; i <= k; ++i) {
            const int j = band - i;
            if (j < 1 || j > l) continue;
            AdvCell c{i, j, is.semi_quant(i) + fs.semi_quant(j), *is.level(i).range, *fs.level(j).range, 0, 0};
            c.risk_lo = c.impact.lo * c.freq.lo;
            c.risk_hi = realization_hi(c.impact) * realization_hi(c.freq);
            cells.push_back(c);
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const AdvCell& a, const AdvCell& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.risk_lo < b.risk_lo;
    });

    // Thin increasing risk slices, one per usable cell.
    std::vector<AdvCell> chain;
    double floor = -kInfinity;
    for (auto c : cells) {
        const double a = std::max(c.risk_lo, floor);
        if (!(a < c.risk_hi)) continue;
        const double b = a > 0.0 ? std::min(c.risk_hi, a * 1.1) : c.risk_hi * 0.01;
        if (!(b > a)) continue;
        c.slice_lo = a;
        c.slice_hi = b;
        floor = b;
        chain.push_back(c);
    }
    if (chain.size() < 2 || chain.front().score == chain.back().score) {
        throw Error("scheme shape unsupported: no score-decreasing chain of rank cells");
    }

    const int m = static_cast<int>(chain.size());
    std::vector<int> per_cell(static_cast<std::size_t>(m), 0);
    if (size <= m) {
        for (int e = 0; e < size; ++e) {
            const int idx = static_cast<int>(std::lround(static_cast<double>(e) * (m - 1) / (size - 1)));
            per_cell[static_cast<std::size_t>(idx)] = 1;
        }
    } else {
        for (int c = 0; c < m; ++c) per_cell[static_cast<std::size_t>(c)] = size / m + (c < size % m ? 1 : 0);
    }

    Portfolio p;
    p.unit = is.unit;
    const int width = static_cast<int>(std::to_string(size).size());
    int serial = 0;
    for (int c = 0; c < m; ++c) {
        const auto& cell = chain[static_cast<std::size_t>(c)];
        const int count = per_cell[static_cast<std::size_t>(c)];
        for (int e = 0; e < count; ++e) {
            auto rng = substream(seed, static_cast<std::uint64_t>(serial));
            const double pos = (e + 0.25 + 0.5 * rng.uniform()) / count;
            const double target = cell.slice_lo + (cell.slice_hi - cell.slice_lo) * pos;
            const auto [impact, freq] = cell.realize(target);
            if (classify(is, impact) != cell.impact_rank || classify(fs, freq) != cell.freq_rank) {
                throw Error("adversarial point left its rank cell");
            }
            std::string id = std::to_string(++serial);
            id.insert(0, static_cast<std::size_t>(width) - id.size(), '0');
            p.events.push_back(QuantEvent{"adv-" + id, freq, impact});
        }
    }
    return p;
}

}  // namespace riskaudit
