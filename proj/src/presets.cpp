#include "riskaudit/presets.hpp"

#include "riskaudit/error.hpp"

namespace riskaudit {

namespace {

struct Band {
    std::string label;
    double lo;
    double hi;
};

OrdinalScale banded_scale(std::string name, std::string unit, const std::vector<Band>& bands) {
    OrdinalScale s;
    s.name = std::move(name);
    s.unit = std::move(unit);
    s.kind = DistributionKind::arbitrary;
    for (std::size_t i = 0; i < bands.size(); ++i) {
        QuantRange r{bands[i].lo, bands[i].hi, i == 0, bands[i].hi != kInfinity};
        s.levels.push_back(RankLevel{static_cast<int>(i) + 1, bands[i].label, static_cast<double>(i + 1), r});
    }
    return s;
}

OrdinalScale rank_only_scale(std::string name, const std::string& prefix, int n) {
    OrdinalScale s;
    s.name = std::move(name);
    for (int i = 1; i <= n; ++i) s.levels.push_back(RankLevel{i, prefix + std::to_string(i), static_cast<double>(i), {}});
    return s;
}

}  // namespace

OrdinalScale problem_u_impact_scale() {
    return banded_scale("impact", "L",
                        {{"Low", 0.0, 0.1}, {"Medium", 0.1, 1.0}, {"High", 1.0, 10.0}, {"Very high", 10.0, kInfinity}});
}

OrdinalScale problem_u_frequency_scale() {
    return banded_scale("frequency", "1/yr",
                        {{"Yearly", 0.0, 4.0}, {"Monthly", 4.0, 26.0}, {"Weekly", 26.0, 182.5}, {"Daily", 182.5, kInfinity}});
}

RiskScheme hara_scheme() {
    RiskScheme s;
    s.name = "hara";
    s.factors = {rank_only_scale("severity", "S", 3), rank_only_scale("exposure", "E", 4),
                 rank_only_scale("controllability", "C", 3)};
    s.roles = {FactorRole::other, FactorRole::other, FactorRole::other};
    s.rule.kind = RuleKind::additive;
    s.thresholds = ThresholdMap{{{6, {1, "QM", "green"}},
                                 {7, {2, "ASIL A", "yellow"}},
                                 {8, {3, "ASIL B", "orange"}},
                                 {9, {4, "ASIL C", "red"}},
                                 {10, {5, "ASIL D", "purple"}}}};
    return s;
}

RiskScheme fmea_scheme() {
    RiskScheme s;
    s.name = "fmea";
    s.factors = {rank_only_scale("severity", "S", 10), rank_only_scale("occurrence", "O", 10),
                 rank_only_scale("detection", "D", 10)};
    s.roles = {FactorRole::other, FactorRole::other, FactorRole::other};
    s.rule.kind = RuleKind::multiplicative;
    return s;
}

RiskScheme problem_u_scheme() {
    RiskScheme s;
    s.name = "problem-u";
    s.factors = {problem_u_impact_scale(), problem_u_frequency_scale()};
    s.roles = {FactorRole::impact, FactorRole::frequency};
    s.rule.kind = RuleKind::multiplicative;
    s.thresholds = ThresholdMap{{{4, {1, "Low", "green"}}, {8, {2, "Medium", "yellow"}}, {16, {3, "High", "red"}}}};
    return s;
}

MatrixColoring mil882c_matrix() {
    MatrixColoring m;
    m.name = "mil882c";
    m.row_scale = banded_scale("frequency", "1/yr",
                               {{"E Improbable", 0.0, 0.01},
                                {"D Remote", 0.01, 0.1},
                                {"C Occasional", 0.1, 1.0},
                                {"B Probable", 1.0, 12.0},
                                {"A Frequent", 12.0, kInfinity}});
    m.col_scale = banded_scale("severity", "lb",
                               {{"IV Negligible", 0.0, 1.0},
                                {"III Marginal", 1.0, 100.0},
                                {"II Critical", 100.0, 1000.0},
                                {"I Catastrophic", 1000.0, kInfinity}});
    m.row_role = FactorRole::frequency;
    m.col_role = FactorRole::impact;
    m.categories = {{1, "LOW", "green"}, {2, "MEDIUM", "yellow"}, {3, "HIGH", "red"}};
    // rows E..A, columns IV..I
    m.grid = {{1, 2, 2, 2},
              {1, 2, 2, 3},
              {1, 2, 3, 3},
              {2, 3, 3, 3},
              {2, 3, 3, 3}};
    return m;
}

AnyScheme preset(const std::string& name) {
    if (name == "hara") return hara_scheme();
    if (name == "fmea") return fmea_scheme();
    if (name == "problem-u") return problem_u_scheme();
    if (name == "mil882c") return mil882c_matrix();
    throw Error("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"hara", "fmea", "mil882c", "problem-u"}; }

}  // namespace riskaudit
