// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "riskaudit/coherence.hpp"
#include "riskaudit/config.hpp"
#include "riskaudit/consistency.hpp"
#include "riskaudit/portfolio.hpp"
#include "riskaudit/presets.hpp"
#include "riskaudit/quant.hpp"

using namespace riskaudit;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string shipped(const std::string& name) { return std::string(RISKAUDIT_CONFIG_DIR) + "/" + name; }

std::string fmt(double v) { return format_number(v); }

Verdict ac1_oil_inversion() {
    const auto doc = load_config(shipped("mil882c_oil.json"));
    const auto& scheme = doc.schemes.at("mil882c").scheme;
    const auto& pf = *doc.portfolio;
    const auto a = score_quant_event(scheme, pf.events[0], pf.unit);
    const auto b = score_quant_event(scheme, pf.events[1], pf.unit);
    const double week_a = true_risk(pf.events[0]) / 52.0;
    const double week_b = true_risk(pf.events[1]) / 52.0;
    const auto report = analyze_portfolio(pf, scheme);
    const bool ok = a.category && a.category->label == "MEDIUM" && b.category && b.category->label == "HIGH" &&
                    std::abs(week_a - 52.5) < 1e-9 && std::abs(week_b - 10.0) < 1e-9 && report.inversions.size() == 1 &&
                    report.kendall_tau && *report.kendall_tau == -1.0;
    return {ok, std::string("categories ") + (a.category ? a.category->label : "?") + "/" +
                    (b.category ? b.category->label : "?") + ", true risk " + fmt(week_a) + " vs " + fmt(week_b) +
                    " lb/week, inversions " + std::to_string(report.inversions.size()) + ", tau " +
                    (report.kendall_tau ? fmt(*report.kendall_tau) : "undefined")};
}

Verdict ac2_car_plane() {
    const auto doc = load_config(shipped("car_plane.json"));
    const auto& scheme = doc.schemes.at("problem-u").scheme;
    const auto& pf = *doc.portfolio;
    const double car = score_quant_event(scheme, pf.events[0], pf.unit).score;
    const double plane = score_quant_event(scheme, pf.events[1], pf.unit).score;
    const double risk_car = true_risk(pf.events[0]);
    const double risk_plane = true_risk(pf.events[1]);
    const auto inv = detect_inversions(pf, scheme);
    const bool ok = car == 6 && plane == 4 && risk_car < risk_plane && inv.size() == 1;
    return {ok, "scores " + fmt(car) + " vs " + fmt(plane) + ", true risk " + fmt(risk_car) + " vs " +
                    fmt(risk_plane) + " L/yr, inversions " + std::to_string(inv.size())};
}

Verdict ac3_hara() {
    const auto s = hara_scheme();
    int checked = 0, wrong = 0;
    for (const auto& t : oracle::all_tuples({3, 4, 3})) {
        ++checked;
        const auto r = score_ranks(s, t);
        if (!r.category || r.category->label != oracle::asil(t[0], t[1], t[2])) ++wrong;
    }
    return {checked == 36 && wrong == 0, std::to_string(checked) + " combinations, " + std::to_string(wrong) + " mismatches"};
}

Verdict ac4_combination_counts() {
    const std::vector<int> counts{3, 4, 3};
    const auto t = combination_table(counts);
    const int add = oracle::distinct_sums(counts);
    const int mul = oracle::distinct_products(counts);
    const bool ok = t.distinct_additive == 8 && t.distinct_multiplicative == 13 && add == 8 && mul == 13;
    return {ok, "additive " + std::to_string(t.distinct_additive) + " (brute force " + std::to_string(add) +
                    "), multiplicative " + std::to_string(t.distinct_multiplicative) + " (brute force " +
                    std::to_string(mul) + ")"};
}

Verdict ac5_enumeration() {
    const auto g3 = enumerate_consistent_colorings(3, 3);
    const auto g4 = enumerate_consistent_colorings(4, 3);
    const auto g5 = enumerate_consistent_colorings(5, 3);
    bool closed = true;
    for (const auto* set : {&g3, &g4, &g5})
        for (const auto& g : *set) closed = closed && audit_matrix(g).pass();

    // every 3x3 coloring, no pruning, with both extreme colors present
    std::vector<ColoringGrid> brute;
    for (int code = 0; code < 19683; ++code) {
        std::vector<int> cells(9);
        int c = code;
        bool lo = false, hi = false;
        for (int i = 0; i < 9; ++i) {
            cells[i] = c % 3 + 1;
            c /= 3;
            lo = lo || cells[i] == 1;
            hi = hi || cells[i] == 3;
        }
        if (!lo || !hi) continue;
        const auto g = make_grid(3, 3, 3, cells);
        if (audit_matrix(g).pass()) brute.push_back(g);
    }
    const bool ok = g3.size() == 1 && g4.size() == 1 && g5.size() == 2 && closed && brute == g3;
    return {ok, "counts " + std::to_string(g3.size()) + "/" + std::to_string(g4.size()) + "/" + std::to_string(g5.size()) +
                    " (expected 1/1/2), audit closure " + (closed ? "ok" : "broken") + ", unpruned 3x3 search " +
                    std::to_string(brute.size()) + (brute == g3 ? " matching" : " differing")};
}

Verdict ac6_coherence() {
    const auto el = run_expected_loss_suite(1, 1000);
    bool el_ok = el.all_hold();
    for (const auto& a : el.axioms) el_ok = el_ok && a.cases >= 1000 && a.errors == 0;

    const auto doc = load_config(shipped("car_plane.json"));
    const auto& scheme = doc.schemes.at("problem-u").scheme;
    const auto extra = portfolio_cases(*doc.portfolio, scheme);
    const auto suite = run_scheme_suite(scheme, 1, 1000, kDefaultTolerance, extra);
    const auto& mono = suite.summary(Axiom::monotonicity);
    const auto& homo = suite.summary(Axiom::positive_homogeneity);
    const bool car_plane_witness = mono.first_violation && mono.first_violation_case && *mono.first_violation_case == 0 &&
                                   mono.first_violation->witness.operands[0].id == "plane" &&
                                   mono.first_violation->witness.operands[1].id == "car";

    // lambda = 2 on an event strictly inside its rank ranges
    const RiskMetric<QuantEvent> metric = [&](const QuantEvent& e) { return scheme_induced_metric(scheme, e); };
    const auto interior = check_axiom(metric, AxiomCase<QuantEvent>{Axiom::positive_homogeneity, {{"e", 10, 0.3}}, 2.0});

    const bool ok = el_ok && !mono.holds() && car_plane_witness && !homo.holds() && !interior.holds;
    return {ok, std::string("expected loss ") + (el_ok ? "coherent" : "NOT coherent") + "; problem-u monotonicity " +
                    std::to_string(mono.violations) + "/" + std::to_string(mono.cases) +
                    (car_plane_witness ? " (car/plane witness)" : " (no car/plane witness)") + ", homogeneity " +
                    std::to_string(homo.violations) + "/" + std::to_string(homo.cases) + ", interior lambda=2 " +
                    fmt(interior.lhs) + " vs " + fmt(interior.rhs)};
}

Verdict ac7_monte_carlo() {
    const std::vector<EventModel> models{{"m", {FrequencyKind::poisson, 1.0}, DistributionSpec::point_mass(100)}};
    const auto one = simulate(models, 1'000'000, 2024, 1);
    const auto many = simulate(models, 1'000'000, 2024, 8);
    const auto again = simulate(models, 1'000'000, 2024, 3);
    std::ostringstream a, b, c;
    write_lec_csv(a, one);
    write_lec_csv(b, many);
    write_lec_csv(c, again);
    const bool identical = one.samples == many.samples && one.samples == again.samples && a.str() == b.str() &&
                           a.str() == c.str();
    const double mean = sample_mean(one);
    const double exc = exceedance(one, 0.0);
    const double target = 1.0 - std::exp(-1.0);
    const bool ok = std::abs(mean - 100.0) <= 1.0 && std::abs(exc - target) <= 0.005 && identical;
    return {ok, "mean " + fmt(mean) + ", P(loss>0) " + fmt(exc) + " vs " + fmt(target) + ", worker counts 1/3/8 " +
                    (identical ? "byte-identical" : "DIFFER")};
}

Verdict ac8_compression() {
    const Portfolio p{"L", {{"small", 1, 11}, {"huge", 1, 10000}}};
    const auto rep = range_compression(p, problem_u_scheme());
    if (rep.categories.size() != 1) return {false, std::to_string(rep.categories.size()) + " categories used"};
    const double ratio = rep.categories[0].ratio;
    const double expected = 10000.0 / 11.0;
    const bool ok = rep.categories[0].events == 2 && std::abs(ratio - 909.0) <= 0.005 * 909.0 &&
                    std::abs(ratio - expected) < 1e-9;
    return {ok, "one category (" + rep.categories[0].category.label + "), ratio " + fmt(ratio)};
}

Verdict ac9_adversarial() {
    const auto s = problem_u_scheme();
    const AnyScheme add{additive_copy(s)};
    int positive = 0, undefined = 0;
    double worst = -1.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int size = 2 + static_cast<int>(seed % 19);
        const auto p = adversarial_portfolio(s, size, seed);
        const auto tau = kendall_tau(p, add);
        if (!tau) {
            ++undefined;
            continue;
        }
        worst = std::max(worst, *tau);
        if (*tau > 0) ++positive;
    }
    return {positive == 0 && undefined == 0, "100 seeds (sizes 2..20), max tau " + fmt(worst) + ", positive " +
                                                 std::to_string(positive) + ", undefined " + std::to_string(undefined)};
}

struct Criterion {
    const char* id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"AC1", "882C oil inversion", 1, ac1_oil_inversion},
        {"AC2", "car/plane inversion", 1, ac2_car_plane},
        {"AC3", "HARA mapping", 1, ac3_hara},
        {"AC4", "additive vs multiplicative distinct values", 1, ac4_combination_counts},
        {"AC5", "consistent coloring enumeration", 60, ac5_enumeration},
        {"AC6", "coherence suite", 10, ac6_coherence},
        {"AC7", "Monte-Carlo fidelity", 30, ac7_monte_carlo},
        {"AC8", "range compression", 1, ac8_compression},
        {"AC9", "adversarial portfolios", 10, ac9_adversarial},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail += "; over the " + fmt(c.limit_seconds) + " s limit";
        }
        if (!o.pass) ++failed;
        std::printf("[%s] %s %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
