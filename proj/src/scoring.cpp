#include "riskaudit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "riskaudit/error.hpp"

namespace riskaudit {

namespace {

constexpr long long kMaxCombinations = 1000000;

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

long long combination_count(const std::vector<int>& counts) {
    long long total = 1;
    for (int c : counts) {
        if (c <= 0) return 0;
        total *= c;
        if (total > kMaxCombinations) {
            throw Error("rank space exceeds " + std::to_string(kMaxCombinations) + " combinations");
        }
    }
    return total;
}

// Visits every rank tuple in lexicographic order (ranks 1-based).
void for_each_combo(const std::vector<int>& counts, const std::function<void(const std::vector<int>&)>& fn) {
    if (combination_count(counts) == 0) return;
    std::vector<int> ranks(counts.size(), 1);
    while (true) {
        fn(ranks);
        int pos = static_cast<int>(ranks.size()) - 1;
        while (pos >= 0 && ranks[static_cast<std::size_t>(pos)] == counts[static_cast<std::size_t>(pos)]) {
            ranks[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++ranks[static_cast<std::size_t>(pos)];
    }
}

std::vector<int> rank_counts(const std::vector<OrdinalScale>& factors) {
    std::vector<int> counts;
    for (const auto& f : factors) counts.push_back(f.size());
    return counts;
}

void check_rule_shape(const CombinationRule& rule, std::size_t n) {
    if (rule.kind == RuleKind::weighted_additive && rule.weights.size() != n) {
        throw Error("weighted rule has " + std::to_string(rule.weights.size()) + " weights for " +
                    std::to_string(n) + " ratings");
    }
    if (rule.kind == RuleKind::additive_with_deduction &&
        (!rule.deduction_factor || *rule.deduction_factor < 0 || static_cast<std::size_t>(*rule.deduction_factor) >= n)) {
        throw Error("deduction rule needs a valid deduction factor index");
    }
}

}  // namespace

std::vector<OutputCategory> ThresholdMap::categories() const {
    std::vector<OutputCategory> out;
    for (const auto& e : entries) {
        if (std::none_of(out.begin(), out.end(), [&](const OutputCategory& c) { return c.index == e.category.index; })) {
            out.push_back(e.category);
        }
    }
    return out;
}

const OutputCategory& MatrixColoring::category(int index) const {
    for (const auto& c : categories) {
        if (c.index == index) return c;
    }
    throw Error("matrix '" + name + "' has no category " + std::to_string(index));
}

double combine(const CombinationRule& rule, const std::vector<double>& ratings) {
    return combine(rule, ratings, std::nullopt);
}

double combine(const CombinationRule& rule, const std::vector<double>& ratings, std::optional<double> floor) {
    if (ratings.empty()) throw Error("no ratings to combine");
    check_rule_shape(rule, ratings.size());
    switch (rule.kind) {
        case RuleKind::additive: {
            double s = 0.0;
            for (double r : ratings) s += r;
            return s;
        }
        case RuleKind::multiplicative: {
            double p = 1.0;
            for (double r : ratings) p *= r;
            return p;
        }
        case RuleKind::weighted_additive: {
            double s = 0.0;
            for (std::size_t i = 0; i < ratings.size(); ++i) s += rule.weights[i] * ratings[i];
            return s;
        }
        case RuleKind::additive_with_deduction: {
            const auto d = static_cast<std::size_t>(*rule.deduction_factor);
            double s = 0.0;
            for (std::size_t i = 0; i < ratings.size(); ++i) {
                if (i != d) s += ratings[i];
            }
            s -= ratings[d];
            if (floor) s = std::max(s, *floor);
            return s;
        }
    }
    throw Error("unknown combination rule");
}

const OutputCategory& categorize(const ThresholdMap& thresholds, double score) {
    for (const auto& e : thresholds.entries) {
        if (score <= e.upper_bound) return e.category;
    }
    throw Error("score " + fmt_num(score) + " lies above the last threshold");
}

std::optional<double> deduction_floor(const RiskScheme& scheme) {
    if (scheme.rule.kind != RuleKind::additive_with_deduction || !scheme.rule.deduction_factor) return std::nullopt;
    double floor = 0.0;
    for (std::size_t i = 0; i < scheme.factors.size(); ++i) {
        if (static_cast<int>(i) == *scheme.rule.deduction_factor) continue;
        const auto v = scheme.factors[i].semi_quant_values();
        if (v.empty()) continue;
        floor += *std::min_element(v.begin(), v.end());
    }
    return floor;
}

std::vector<double> attainable_scores(const RiskScheme& scheme) {
    const auto floor = deduction_floor(scheme);
    std::set<double> scores;
    std::vector<double> ratings(scheme.factors.size());
    for_each_combo(rank_counts(scheme.factors), [&](const std::vector<int>& ranks) {
        for (std::size_t i = 0; i < ranks.size(); ++i) ratings[i] = scheme.factors[i].semi_quant(ranks[i]);
        scores.insert(combine(scheme.rule, ratings, floor));
    });
    return {scores.begin(), scores.end()};
}

std::vector<SchemeFinding> validate_scheme(const RiskScheme& scheme) {
    std::vector<SchemeFinding> out;
    auto add = [&](std::string tag, std::string msg) {
        out.push_back(SchemeFinding{Severity::violation, std::move(tag), std::move(msg)});
    };
    const auto n = scheme.factors.size();
    if (n < 2) add("factor-count", "a scheme needs at least 2 factors");
    if (!scheme.roles.empty() && scheme.roles.size() != n) add("roles", "role count does not match factor count");

    const auto& rule = scheme.rule;
    if (rule.kind == RuleKind::weighted_additive) {
        if (rule.weights.size() != n) add("weights", "weighted rule needs one weight per factor");
        if (std::any_of(rule.weights.begin(), rule.weights.end(), [](double w) { return !std::isfinite(w); })) {
            add("weights", "weights must be finite");
        }
    } else if (!rule.weights.empty()) {
        add("weights", "weights are only allowed for the weighted-additive rule");
    }
    if (rule.kind == RuleKind::additive_with_deduction) {
        if (!rule.deduction_factor || *rule.deduction_factor < 0 || static_cast<std::size_t>(*rule.deduction_factor) >= n) {
            add("deduction", "deduction rule needs a valid deduction factor");
        }
    } else if (rule.deduction_factor) {
        add("deduction", "a deduction factor is only allowed for the additive-with-deduction rule");
    }

    for (const auto& f : scheme.factors) {
        for (const auto& sf : validate_scale(f)) {
            if (sf.severity == Severity::violation) add("factor-scale", "factor '" + f.name + "': " + sf.message);
        }
    }

    if (scheme.thresholds) {
        const auto& entries = scheme.thresholds->entries;
        if (entries.empty()) add("thresholds", "threshold map is empty");
        std::set<std::string> labels;
        int expected = 1;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i > 0 && !(entries[i].upper_bound > entries[i - 1].upper_bound)) {
                add("thresholds", "threshold bounds must be strictly increasing");
            }
            const auto& c = entries[i].category;
            if (c.index != expected) {
                add("categories", "category '" + c.label + "' has index " + std::to_string(c.index) + ", expected " +
                                      std::to_string(expected));
            }
            ++expected;
            if (!labels.insert(c.label).second) add("categories", "duplicate category label '" + c.label + "'");
        }
        if (out.empty() && !entries.empty()) {
            const auto scores = attainable_scores(scheme);
            if (!scores.empty() && scores.back() > entries.back().upper_bound) {
                add("coverage", "maximum attainable score " + fmt_num(scores.back()) + " exceeds the last threshold " +
                                    fmt_num(entries.back().upper_bound));
            }
        }
    }
    return out;
}

std::vector<SchemeFinding> validate_matrix(const MatrixColoring& matrix) {
    std::vector<SchemeFinding> out;
    auto add = [&](std::string tag, std::string msg) {
        out.push_back(SchemeFinding{Severity::violation, std::move(tag), std::move(msg)});
    };
    for (const auto* s : {&matrix.row_scale, &matrix.col_scale}) {
        for (const auto& sf : validate_scale(*s)) {
            if (sf.severity == Severity::violation) add("factor-scale", "scale '" + s->name + "': " + sf.message);
        }
    }
    std::set<std::string> labels;
    for (std::size_t i = 0; i < matrix.categories.size(); ++i) {
        const auto& c = matrix.categories[i];
        if (c.index != static_cast<int>(i) + 1) add("categories", "category indices must be 1..K consecutive");
        if (!labels.insert(c.label).second) add("categories", "duplicate category label '" + c.label + "'");
    }
    const auto rows = static_cast<std::size_t>(matrix.row_scale.size());
    const auto cols = static_cast<std::size_t>(matrix.col_scale.size());
    if (matrix.grid.size() != rows) {
        add("grid", "grid has " + std::to_string(matrix.grid.size()) + " rows, row scale has " + std::to_string(rows));
        return out;
    }
    const int k = static_cast<int>(matrix.categories.size());
    for (std::size_t r = 0; r < rows; ++r) {
        if (matrix.grid[r].size() != cols) {
            add("grid", "grid row " + std::to_string(r + 1) + " has " + std::to_string(matrix.grid[r].size()) +
                            " cells, column scale has " + std::to_string(cols));
            continue;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const int v = matrix.grid[r][c];
            if (v < 1 || v > k) {
                add("grid", "cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") has invalid category " +
                                std::to_string(v));
            }
        }
    }
    return out;
}

ScoreResult score_ranks(const RiskScheme& scheme, const std::vector<int>& ranks) {
    if (ranks.size() != scheme.factors.size()) {
        throw Error("scheme '" + scheme.name + "' expects " + std::to_string(scheme.factors.size()) + " ranks, got " +
                    std::to_string(ranks.size()));
    }
    std::vector<double> ratings;
    for (std::size_t i = 0; i < ranks.size(); ++i) ratings.push_back(scheme.factors[i].semi_quant(ranks[i]));
    ScoreResult out;
    out.ranks = ranks;
    out.score = combine(scheme.rule, ratings, deduction_floor(scheme));
    if (scheme.thresholds) out.category = categorize(*scheme.thresholds, out.score);
    return out;
}

ScoreResult score_ranks(const MatrixColoring& matrix, const std::vector<int>& ranks) {
    if (ranks.size() != 2) throw Error("matrix '" + matrix.name + "' expects 2 ranks (row, column)");
    matrix.row_scale.level(ranks[0]);
    matrix.col_scale.level(ranks[1]);
    const int idx = matrix.grid.at(static_cast<std::size_t>(ranks[0] - 1)).at(static_cast<std::size_t>(ranks[1] - 1));
    ScoreResult out;
    out.ranks = ranks;
    out.category = matrix.category(idx);
    out.score = idx;
    return out;
}

ScoreResult score_ranks(const AnyScheme& scheme, const std::vector<int>& ranks) {
    return std::visit([&](const auto& s) { return score_ranks(s, ranks); }, scheme);
}

ScoreResult score_event(const RiskScheme& scheme, const std::vector<double>& values) {
    if (values.size() != scheme.factors.size()) {
        throw Error("scheme '" + scheme.name + "' expects " + std::to_string(scheme.factors.size()) + " values, got " +
                    std::to_string(values.size()));
    }
    std::vector<int> ranks;
    for (std::size_t i = 0; i < values.size(); ++i) ranks.push_back(classify(scheme.factors[i], values[i]));
    return score_ranks(scheme, ranks);
}

ScoreResult score_event(const MatrixColoring& matrix, const std::vector<double>& values) {
    if (values.size() != 2) throw Error("matrix '" + matrix.name + "' expects 2 values (row, column)");
    return score_ranks(matrix, {classify(matrix.row_scale, values[0]), classify(matrix.col_scale, values[1])});
}

ScoreResult score_event(const AnyScheme& scheme, const std::vector<double>& values) {
    return std::visit([&](const auto& s) { return score_event(s, values); }, scheme);
}

namespace {

int count_distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
}

CombinationTable build_table(const std::vector<int>& counts,
                             const std::function<double(std::size_t, int)>& number_of) {
    if (counts.size() < 2 || counts.size() > 3) throw Error("combination tables take 2 or 3 factors");
    CombinationTable t;
    for_each_combo(counts, [&](const std::vector<int>& ranks) {
        double sum = 0.0;
        double product = 1.0;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            const double v = number_of(i, ranks[i]);
            sum += v;
            product *= v;
        }
        t.combos.push_back(ranks);
        t.additive.push_back(sum);
        t.multiplicative.push_back(product);
    });
    t.distinct_additive = count_distinct(t.additive);
    t.distinct_multiplicative = count_distinct(t.multiplicative);
    return t;
}

}  // namespace

CombinationTable combination_table(const std::vector<int>& rank_counts) {
    return build_table(rank_counts, [](std::size_t, int rank) { return static_cast<double>(rank); });
}

CombinationTable combination_table(const std::vector<OrdinalScale>& factors) {
    return build_table(rank_counts(factors),
                       [&](std::size_t i, int rank) { return factors[i].semi_quant(rank); });
}

std::optional<SchemeFinding> check_zero_annihilation(const RiskScheme& scheme) {
    if (scheme.rule.kind != RuleKind::multiplicative) return std::nullopt;
    for (const auto& f : scheme.factors) {
        for (const auto& l : f.levels) {
            if (l.semi_quant == 0.0) {
                return SchemeFinding{Severity::violation, "zero-annihilation",
                                     "factor '" + f.name + "' level " + std::to_string(l.index) + " (" + l.label +
                                         ") is numbered 0; the product is 0 whatever the other factors are"};
            }
        }
    }
    return std::nullopt;
}

namespace {

std::vector<FactorInfluence> influence(const std::vector<const OrdinalScale*>& factors,
                                       const std::function<int(const std::vector<int>&)>& category_of) {
    std::vector<int> counts;
    for (const auto* f : factors) counts.push_back(f->size());
    std::vector<FactorInfluence> out;
    for (const auto* f : factors) out.push_back(FactorInfluence{f->name, false, 0});

    for_each_combo(counts, [&](const std::vector<int>& ranks) {
        const int base = category_of(ranks);
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (ranks[i] == counts[i]) continue;
            auto next = ranks;
            ++next[i];
            const int shift = std::abs(category_of(next) - base);
            if (shift > 0) out[i].relevant = true;
            out[i].max_category_shift = std::max(out[i].max_category_shift, shift);
        }
    });
    return out;
}

}  // namespace

std::vector<FactorInfluence> factor_influence(const RiskScheme& scheme) {
    if (!scheme.thresholds) throw Error("scheme '" + scheme.name + "' has no output categories");
    std::vector<const OrdinalScale*> factors;
    for (const auto& f : scheme.factors) factors.push_back(&f);
    return influence(factors, [&](const std::vector<int>& r) { return score_ranks(scheme, r).category->index; });
}

std::vector<FactorInfluence> factor_influence(const MatrixColoring& matrix) {
    return influence({&matrix.row_scale, &matrix.col_scale},
                     [&](const std::vector<int>& r) { return static_cast<int>(score_ranks(matrix, r).score); });
}

const std::string& scheme_name(const AnyScheme& scheme) {
    return std::visit([](const auto& s) -> const std::string& { return s.name; }, scheme);
}

std::vector<const OrdinalScale*> scheme_factors(const AnyScheme& scheme) {
    if (const auto* m = std::get_if<MatrixColoring>(&scheme)) return {&m->row_scale, &m->col_scale};
    std::vector<const OrdinalScale*> out;
    for (const auto& f : std::get<RiskScheme>(scheme).factors) out.push_back(&f);
    return out;
}

std::vector<FactorRole> scheme_roles(const AnyScheme& scheme) {
    if (const auto* m = std::get_if<MatrixColoring>(&scheme)) return {m->row_role, m->col_role};
    const auto& s = std::get<RiskScheme>(scheme);
    if (s.roles.empty()) return std::vector<FactorRole>(s.factors.size(), FactorRole::other);
    return s.roles;
}

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::additive: return "additive";
        case RuleKind::multiplicative: return "multiplicative";
        case RuleKind::weighted_additive: return "weighted-additive";
        case RuleKind::additive_with_deduction: return "additive-with-deduction";
    }
    return "additive";
}

std::string to_string(FactorRole role) {
    switch (role) {
        case FactorRole::impact: return "impact";
        case FactorRole::frequency: return "frequency";
        case FactorRole::other: return "other";
    }
    return "other";
}

RuleKind parse_rule_kind(const std::string& text) {
    for (auto k : {RuleKind::additive, RuleKind::multiplicative, RuleKind::weighted_additive,
                   RuleKind::additive_with_deduction}) {
        if (to_string(k) == text) return k;
    }
    throw Error("unknown combination rule '" + text + "'");
}

FactorRole parse_factor_role(const std::string& text) {
    for (auto r : {FactorRole::impact, FactorRole::frequency, FactorRole::other}) {
        if (to_string(r) == text) return r;
    }
    throw Error("unknown factor role '" + text + "'");
}

}  // namespace riskaudit
