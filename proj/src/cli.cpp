#include "riskaudit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "riskaudit/coherence.hpp"
#include "riskaudit/config.hpp"
#include "riskaudit/consistency.hpp"
#include "riskaudit/portfolio.hpp"
#include "riskaudit/quant.hpp"
#include "riskaudit/report.hpp"
#include "riskaudit/scoring.hpp"

namespace riskaudit {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string num(double v) { return format_number(v); }

std::string join_ranks(const std::vector<int>& ranks) {
    std::string s = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i) s += (i ? "," : "") + std::to_string(ranks[i]);
    return s + ")";
}

std::vector<int> parse_ranks(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--ranks expects comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError("--ranks is empty");
    return out;
}

bool scoreable(const AnyScheme& scheme) {
    const auto roles = scheme_roles(scheme);
    return std::none_of(roles.begin(), roles.end(), [](FactorRole r) { return r == FactorRole::other; });
}

bool has_impact_and_frequency(const AnyScheme& scheme) {
    const auto roles = scheme_roles(scheme);
    return std::count(roles.begin(), roles.end(), FactorRole::impact) == 1 &&
           std::count(roles.begin(), roles.end(), FactorRole::frequency) == 1;
}

std::vector<std::pair<std::string, const AnyScheme*>> select_schemes(const ConfigDocument& doc,
                                                                     const std::string& wanted) {
    std::vector<std::pair<std::string, const AnyScheme*>> out;
    for (const auto& [name, def] : doc.schemes) {
        if (wanted.empty() || wanted == name) out.emplace_back(name, &def.scheme);
    }
    if (!wanted.empty() && out.empty()) throw UsageError("no scheme named '" + wanted + "'");
    if (out.empty()) throw UsageError("the document defines no schemes");
    return out;
}

Json category_json(const std::optional<OutputCategory>& c) {
    if (!c) return nullptr;
    return Json{{"index", c->index}, {"label", c->label}};
}

// Category grid of a two-factor thresholded scheme, rows along frequency.
std::optional<ColoringGrid> scheme_grid(const RiskScheme& s) {
    if (s.factors.size() != 2 || !s.thresholds) return std::nullopt;
    std::size_t row = 0, col = 1;
    if (!s.roles.empty() && s.roles[1] == FactorRole::frequency) std::swap(row, col);
    ColoringGrid g;
    g.n_rows = s.factors[row].size();
    g.n_cols = s.factors[col].size();
    g.colors = static_cast<int>(s.thresholds->categories().size());
    for (int r = 1; r <= g.n_rows; ++r) {
        for (int c = 1; c <= g.n_cols; ++c) {
            std::vector<int> ranks(2);
            ranks[row] = r;
            ranks[col] = c;
            g.cells.push_back(score_ranks(s, ranks).category->index);
        }
    }
    try {
        check_grid(g);
    } catch (const Error&) {
        return std::nullopt;
    }
    return g;
}

// ---- validate -------------------------------------------------------------

void cmd_validate(const ConfigDocument& doc, Report& rep) {
    const std::string sec = "validation";
    for (const auto& [name, s] : doc.scales) {
        std::string line = "scale " + name + ": " + std::to_string(s.size()) + " levels, " + to_string(s.kind);
        if (!s.unit.empty()) line += ", unit " + s.unit;
        line += s.bound() ? ", range-bound" : ", ranks only";
        rep.line(sec, line);
        rep.record(sec, {{"type", "scale"}, {"name", name}, {"levels", s.size()}, {"kind", to_string(s.kind)},
                         {"bound", s.bound()}});
        for (const auto& f : validate_scale(s)) rep.finding(sec, f.severity, f.invariant, "scale '" + name + "': " + f.message);
    }
    for (const auto& [name, def] : doc.schemes) {
        std::string line = "scheme " + name + ": ";
        if (def.preset) line += "preset " + *def.preset + ", ";
        if (const auto* rs = std::get_if<RiskScheme>(&def.scheme)) {
            line += to_string(rs->rule.kind) + " over " + std::to_string(rs->factors.size()) + " factors, ";
            line += rs->thresholds ? std::to_string(rs->thresholds->entries.size()) + " categories" : "score only";
            if (auto z = check_zero_annihilation(*rs)) rep.finding(sec, Severity::warning, z->invariant, "scheme '" + name + "': " + z->message);
        } else {
            const auto& m = std::get<MatrixColoring>(def.scheme);
            line += "matrix " + std::to_string(m.row_scale.size()) + "x" + std::to_string(m.col_scale.size()) + ", " +
                    std::to_string(m.categories.size()) + " categories";
        }
        rep.line(sec, line);
        rep.record(sec, {{"type", "scheme"}, {"name", name}});
    }
    if (doc.portfolio) rep.line(sec, "portfolio: " + std::to_string(doc.portfolio->events.size()) + " events, unit " + doc.portfolio->unit);
    if (!doc.models.empty()) rep.line(sec, "models: " + std::to_string(doc.models.size()));
    if (doc.appetite) rep.line(sec, "appetite: " + std::to_string(doc.appetite->points.size()) + " points");
    rep.line(sec, "document is valid");
}

// ---- score ----------------------------------------------------------------

void cmd_score(const ConfigDocument& doc, Report& rep, const std::string& scheme_name_opt, const std::string& ranks_text) {
    const auto schemes = select_schemes(doc, scheme_name_opt);
    if (!ranks_text.empty()) {
        if (schemes.size() != 1) throw UsageError("--ranks needs --scheme when the document has several schemes");
        const auto ranks = parse_ranks(ranks_text);
        const auto r = score_ranks(*schemes[0].second, ranks);
        const std::string sec = "score " + schemes[0].first;
        rep.line(sec, "ranks " + join_ranks(r.ranks) + "  score " + num(r.score) +
                          (r.category ? "  category " + r.category->label : ""));
        rep.record(sec, {{"type", "score"}, {"scheme", schemes[0].first}, {"ranks", r.ranks}, {"score", r.score},
                         {"category", category_json(r.category)}});
        return;
    }
    if (!doc.portfolio) throw UsageError("score needs --ranks or a portfolio in the document");
    for (const auto& [name, scheme] : schemes) {
        const std::string sec = "score " + name;
        if (!scoreable(*scheme)) {
            if (!scheme_name_opt.empty()) throw UsageError("scheme '" + name + "' has no impact/frequency roles; use --ranks");
            rep.line(sec, "skipped: factors have no impact/frequency roles (use --ranks)");
            continue;
        }
        for (const auto& e : doc.portfolio->events) {
            const auto r = score_quant_event(*scheme, e, doc.portfolio->unit);
            rep.line(sec, e.id + "  ranks " + join_ranks(r.ranks) + "  score " + num(r.score) +
                              (r.category ? "  category " + r.category->label : "") + "  true risk " +
                              num(true_risk(e)) + " " + doc.portfolio->unit + "/yr");
            rep.record(sec, {{"type", "score"}, {"scheme", name}, {"event", e.id}, {"ranks", r.ranks}, {"score", r.score},
                             {"category", category_json(r.category)}, {"true_risk", true_risk(e)}});
        }
    }
}

// ---- audit ----------------------------------------------------------------

void report_consistency(Report& rep, const std::string& sec, const MatrixAudit& a) {
    rep.line(sec, std::string("weak consistency: ") + (a.weak_consistency ? "pass" : "FAIL") +
                      ", betweenness: " + (a.betweenness ? "pass" : "FAIL") +
                      ", consistent coloring: " + (a.consistent_coloring ? "pass" : "FAIL"));
    rep.record(sec, {{"type", "consistency"}, {"weak_consistency", a.weak_consistency}, {"betweenness", a.betweenness},
                     {"consistent_coloring", a.consistent_coloring}});
    for (const auto& n : a.notes) rep.line(sec, "note: " + n);
    for (const auto& f : a.findings) rep.finding(sec, Severity::violation, to_string(f.property), f.explanation);
}

std::string describe_event(const QuantEvent& e) {
    return e.id + " (impact " + num(e.impact) + ", " + num(e.frequency) + "/yr)";
}

template <typename Subject>
void report_suite(Report& rep, const std::string& sec, const SuiteReport<Subject>& suite, Severity severity,
                  const std::function<std::string(const AxiomResult<Subject>&)>& witness) {
    for (const auto& a : suite.axioms) {
        std::string line = to_string(a.axiom) + ": " + (a.holds() ? "holds" : "VIOLATED") + " (" +
                           std::to_string(a.violations) + "/" + std::to_string(a.cases) + " cases violate";
        if (a.errors) line += ", " + std::to_string(a.errors) + " not evaluable";
        line += ")";
        rep.line(sec, line);
        Json rec{{"type", "axiom"}, {"axiom", to_string(a.axiom)}, {"holds", a.holds()}, {"cases", a.cases},
                 {"violations", a.violations}, {"errors", a.errors}};
        if (a.first_violation) {
            rec["lhs"] = json_number(a.first_violation->lhs);
            rec["rhs"] = json_number(a.first_violation->rhs);
            rec["case_index"] = *a.first_violation_case;
            rep.finding(sec, severity, to_string(a.axiom),
                        "first witness (case " + std::to_string(*a.first_violation_case) + "): " +
                            witness(*a.first_violation) + ", lhs " + num(a.first_violation->lhs) + " vs rhs " +
                            num(a.first_violation->rhs));
        }
        rep.record(sec, rec);
    }
}

void cmd_audit(const ConfigDocument& doc, Report& rep, std::uint64_t seed, int trials) {
    if (doc.schemes.empty()) throw UsageError("the document defines no schemes");
    for (const auto& [name, def] : doc.schemes) {
        const std::string sec = "audit " + name;
        const auto& scheme = def.scheme;

        if (const auto* rs = std::get_if<RiskScheme>(&scheme)) {
            if (auto z = check_zero_annihilation(*rs)) rep.finding(sec, Severity::violation, z->invariant, z->message);
            else rep.line(sec, "zero annihilation: none");
        }

        const bool categorized = !std::holds_alternative<RiskScheme>(scheme) || std::get<RiskScheme>(scheme).thresholds;
        if (categorized) {
            const auto infl = std::visit([](const auto& s) { return factor_influence(s); }, scheme);
            for (const auto& f : infl) {
                rep.line(sec, "factor " + f.factor + ": " + (f.relevant ? "relevant" : "irrelevant") +
                                  ", max category shift " + std::to_string(f.max_category_shift));
                rep.record(sec, {{"type", "factor_influence"}, {"factor", f.factor}, {"relevant", f.relevant},
                                 {"max_category_shift", f.max_category_shift}});
                if (!f.relevant) {
                    rep.finding(sec, Severity::warning, "irrelevant-factor",
                                "factor '" + f.factor + "' never changes the output category");
                }
            }
        } else {
            rep.line(sec, "factor influence: skipped (no output categories)");
        }

        std::optional<ColoringGrid> grid;
        if (const auto* mc = std::get_if<MatrixColoring>(&scheme)) grid = to_grid(*mc);
        else grid = scheme_grid(std::get<RiskScheme>(scheme));
        if (grid) {
            report_consistency(rep, sec, audit_matrix(*grid));
        } else {
            rep.line(sec, "consistency: skipped (needs a two-factor categorized scheme using its lowest and highest category)");
        }

        const bool bound = std::ranges::all_of(scheme_factors(scheme), [](const OrdinalScale* f) { return f->bound(); });
        if (has_impact_and_frequency(scheme) && bound) {
            std::vector<AxiomCase<QuantEvent>> extra;
            if (doc.portfolio) extra = portfolio_cases(*doc.portfolio, scheme);
            const auto suite = run_scheme_suite(scheme, seed, trials, kDefaultTolerance, extra);
            rep.line(sec, "coherence of the score (" + std::to_string(extra.size()) + " portfolio cases, " +
                              std::to_string(trials) + " trials, seed " + std::to_string(seed) + "):");
            rep.line(sec, "  relevance: annual loss > 0 must give score > 0; monotonicity: events ordered by annual loss;");
            rep.line(sec, "  translation: annual loss lowered by alpha through the impact; subadditivity: merged event");
            rep.line(sec, "  streams (rates add); homogeneity: impact scaled by lambda");
            report_suite<QuantEvent>(rep, sec, suite, Severity::violation, [](const AxiomResult<QuantEvent>& r) {
                std::string s = describe_event(r.witness.operands[0]);
                if (r.witness.operands.size() > 1) s += " vs " + describe_event(r.witness.operands[1]);
                if (r.witness.parameter) s += ", parameter " + num(*r.witness.parameter);
                return s;
            });
        } else {
            rep.line(sec, "coherence: skipped (needs range-bound impact and frequency factors)");
        }

        if (doc.portfolio && scoreable(scheme)) {
            const auto inv = detect_inversions(*doc.portfolio, scheme);
            rep.line(sec, "inversions: " + std::to_string(inv.size()));
            for (const auto& p : inv) {
                rep.finding(sec, Severity::violation, "inversion",
                            p.id_a + " (true risk " + num(p.true_risk_a) + ", score " + num(p.score_a) + ") vs " + p.id_b +
                                " (true risk " + num(p.true_risk_b) + ", score " + num(p.score_b) + ")");
            }
        }
    }

    const std::string ref = "audit expected-loss reference";
    const auto suite = run_expected_loss_suite(seed, trials);
    rep.line(ref, "expected loss over " + std::to_string(trials) + " generated cases per axiom:");
    report_suite<LossProspect>(rep, ref, suite, Severity::violation, [](const AxiomResult<LossProspect>& r) {
        return std::to_string(r.witness.operands[0].outcomes.size()) + "-outcome prospect";
    });
}

// ---- enumerate ------------------------------------------------------------

void cmd_enumerate(Report& rep, int size, int colors) {
    const std::string sec = "enumerate";
    const auto grids = enumerate_consistent_colorings(size, colors);
    rep.line(sec, std::to_string(grids.size()) + " consistent coloring(s) of " + std::to_string(size) + "x" +
                      std::to_string(size) + " with " + std::to_string(colors) + " colors (top row = highest probability rank)");
    rep.record(sec, {{"type", "count"}, {"size", size}, {"colors", colors}, {"count", grids.size()}});
    for (std::size_t i = 0; i < grids.size(); ++i) {
        rep.line(sec, "");
        rep.line(sec, "#" + std::to_string(i + 1));
        std::istringstream rows(render_grid(grids[i]));
        for (std::string l; std::getline(rows, l);) rep.line(sec, l);
        Json cells = Json::array();
        for (int r = 1; r <= grids[i].n_rows; ++r) {
            Json row = Json::array();
            for (int c = 1; c <= grids[i].n_cols; ++c) row.push_back(grids[i].at(r, c));
            cells.push_back(row);
        }
        rep.record(sec, {{"type", "coloring"}, {"index", i + 1}, {"rows", cells}});
    }
}

// ---- compare --------------------------------------------------------------

void cmd_compare(const ConfigDocument& doc, Report& rep, const std::string& wanted) {
    if (!doc.portfolio) throw UsageError("compare needs a portfolio in the document");
    const auto& pf = *doc.portfolio;
    for (const auto& [name, scheme] : select_schemes(doc, wanted)) {
        const std::string sec = "compare " + name;
        if (!scoreable(*scheme)) {
            rep.line(sec, "skipped: factors have no impact/frequency roles");
            continue;
        }
        const auto a = analyze_portfolio(pf, *scheme);
        rep.line(sec, "kendall tau-b: " + (a.kendall_tau ? num(*a.kendall_tau) : std::string("undefined (a ranking is all ties)")) +
                          "  concordant " + std::to_string(a.pairs.concordant) + ", discordant " +
                          std::to_string(a.pairs.discordant));
        rep.record(sec, {{"type", "kendall_tau"},
                         {"tau", a.kendall_tau ? Json(*a.kendall_tau) : Json(nullptr)},
                         {"concordant", a.pairs.concordant},
                         {"discordant", a.pairs.discordant}});
        rep.line(sec, "inversions: " + std::to_string(a.inversions.size()));
        for (const auto& p : a.inversions) {
            rep.record(sec, {{"type", "inversion"}, {"id_a", p.id_a}, {"id_b", p.id_b}, {"true_risk_a", p.true_risk_a},
                             {"true_risk_b", p.true_risk_b}, {"score_a", p.score_a}, {"score_b", p.score_b}});
            rep.finding(sec, Severity::violation, "inversion",
                        p.id_a + " (true risk " + num(p.true_risk_a) + " " + pf.unit + "/yr, score " + num(p.score_a) +
                            ") vs " + p.id_b + " (true risk " + num(p.true_risk_b) + " " + pf.unit + "/yr, score " +
                            num(p.score_b) + ")");
        }
        if (a.compression) {
            for (const auto& c : a.compression->categories) {
                rep.line(sec, "category " + c.category.label + ": " + std::to_string(c.events) + " event(s), true risk " +
                                  num(c.min_risk) + ".." + num(c.max_risk) + ", compression ratio " + num(c.ratio));
                rep.record(sec, {{"type", "compression"}, {"category", c.category.label}, {"events", c.events},
                                 {"min_risk", c.min_risk}, {"max_risk", c.max_risk}, {"ratio", json_number(c.ratio)}});
                if (std::isinf(c.ratio)) {
                    rep.finding(sec, Severity::warning, "compression",
                                "category " + c.category.label + " mixes zero and non-zero true risk");
                }
            }
            for (const auto& [x, y] : a.compression->overlapping) {
                rep.finding(sec, Severity::warning, "overlap",
                            "true-risk ranges of categories " + std::to_string(x) + " and " + std::to_string(y) + " overlap");
            }
        }
        for (const auto& t : a.ties) {
            std::string ids;
            for (const auto& id : t.ids) ids += (ids.empty() ? "" : ", ") + id;
            rep.line(sec, "tie at score " + num(t.score) + ": " + ids + " (true-risk spread " + num(t.spread) + ")");
            rep.record(sec, {{"type", "tie"}, {"score", t.score}, {"ids", t.ids}, {"spread", json_number(t.spread)}});
        }
    }
}

// ---- simulate -------------------------------------------------------------

void cmd_simulate(const ConfigDocument& doc, Report& rep, std::int64_t trials, std::uint64_t seed,
                  const std::string& csv_path, unsigned workers) {
    if (doc.models.empty()) throw UsageError("simulate needs models in the document");
    const std::string sec = "simulation";
    const auto curve = simulate(doc.models, trials, seed, workers);
    const auto eal = closed_form_eal(doc.models);
    const double mean = sample_mean(curve);
    rep.line(sec, "trials " + std::to_string(trials) + ", seed " + std::to_string(seed) +
                      (curve.summarized ? " (curve kept as a 10000-point summary)" : ""));
    rep.line(sec, "expected annual loss: simulated " + num(mean) + ", closed form " + num(eal.value) +
                      (eal.exact ? "" : " (approximate)"));
    rep.line(sec, "standard deviation: " + num(sample_stddev(curve)));
    Json rec{{"type", "eal"}, {"trials", trials}, {"seed", seed}, {"mean", mean}, {"closed_form", eal.value},
             {"closed_form_exact", eal.exact}, {"summarized", curve.summarized}};
    rep.record(sec, rec);
    for (double p : {0.5, 0.9, 0.95, 0.99}) {
        const double v = percentile_loss(curve, p);
        rep.line(sec, "percentile " + format_probability(p) + ": " + num(v));
        rep.record(sec, {{"type", "percentile"}, {"p", p}, {"loss", v}});
    }
    rep.line(sec, "P(loss > 0): " + format_probability(exceedance(curve, 0.0)));
    if (doc.appetite) {
        const auto v = compare_appetite(curve, *doc.appetite);
        for (const auto& c : v.points) {
            rep.line(sec, "appetite at " + num(c.point.threshold) + ": exceedance " + format_probability(c.exceedance) +
                              " vs tolerated " + format_probability(c.point.max_probability) +
                              (c.violated ? "  VIOLATED" : "  ok"));
            rep.record(sec, {{"type", "appetite"}, {"threshold", c.point.threshold}, {"exceedance", c.exceedance},
                             {"max_probability", c.point.max_probability}, {"violated", c.violated}});
            if (c.violated) {
                rep.finding(sec, Severity::violation, "appetite",
                            "loss above " + num(c.point.threshold) + " has probability " +
                                format_probability(c.exceedance) + " > " + format_probability(c.point.max_probability));
            }
        }
        rep.line(sec, std::string("overall: ") + (v.tolerable ? "tolerable" : "not tolerable"));
    }
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw UsageError("cannot write '" + csv_path + "'");
        write_lec_csv(csv, curve);
        rep.line(sec, "loss exceedance curve written to " + csv_path);
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"riskaudit: audit ordinal risk-scoring schemes and run quantitative loss simulations"};
    app.name("riskaudit");
    app.require_subcommand(1);
    app.fallthrough();
    bool json_out = false;
    app.add_flag("--json", json_out, "line-delimited JSON output");

    std::string file, scheme_opt, ranks_opt, csv_path;
    std::uint64_t seed = 1;
    int audit_trials = 1000;
    std::int64_t sim_trials = 100000;
    int size = 3, colors = 3;
    unsigned workers = 0;

    auto* validate = app.add_subcommand("validate", "parse a config document and check every invariant");
    validate->add_option("file", file, "config document")->required();
    auto* score = app.add_subcommand("score", "score portfolio events or explicit ranks");
    score->add_option("file", file, "config document")->required();
    score->add_option("--scheme", scheme_opt, "scheme name");
    score->add_option("--ranks", ranks_opt, "comma-separated ranks, e.g. 3,4,3");
    auto* audit = app.add_subcommand("audit", "consistency, coherence, zero annihilation, factor influence, inversions");
    audit->add_option("file", file, "config document")->required();
    audit->add_option("--seed", seed, "coherence suite seed");
    audit->add_option("--trials", audit_trials, "coherence suite trials")->check(CLI::PositiveNumber);
    auto* enumerate = app.add_subcommand("enumerate", "list every consistent coloring of an n x n matrix");
    enumerate->add_option("--size", size, "grid size n")->required();
    enumerate->add_option("--colors", colors, "number of colors")->required();
    auto* compare = app.add_subcommand("compare", "inversions, rank correlation, compression and ties");
    compare->add_option("file", file, "config document")->required();
    compare->add_option("--scheme", scheme_opt, "scheme name");
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo loss exceedance curve and appetite check");
    sim->add_option("file", file, "config document")->required();
    sim->add_option("--trials", sim_trials, "number of simulated years")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "random seed");
    sim->add_option("--lec-csv", csv_path, "write the loss exceedance curve as CSV");
    sim->add_option("--workers", workers, "worker threads (0 = all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    try {
        if (*enumerate) {
            cmd_enumerate(rep, size, colors);
        } else {
            ConfigDocument doc;
            try {
                doc = load_config(file);
            } catch (const ConfigError& e) {
                err << "error: " << e.what() << "\n";
                for (const auto& f : e.findings()) err << "  " << f << "\n";
                const bool invariant = e.kind() == ConfigError::Kind::invariant;
                if (*validate && invariant) {
                    rep.finding("validation", Severity::violation, "invariant", e.what());
                    for (const auto& f : e.findings()) rep.finding("validation", Severity::violation, "invariant", f);
                    if (json_out) rep.render_jsonl(out);
                    else rep.render_text(out);
                    return 1;
                }
                return 2;
            }
            if (*validate) cmd_validate(doc, rep);
            else if (*score) cmd_score(doc, rep, scheme_opt, ranks_opt);
            else if (*audit) cmd_audit(doc, rep, seed, audit_trials);
            else if (*compare) cmd_compare(doc, rep, scheme_opt);
            else if (*sim) cmd_simulate(doc, rep, sim_trials, seed, csv_path, workers);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (json_out) rep.render_jsonl(out);
    else rep.render_text(out);
    return rep.exit_code();
}

}  // namespace riskaudit
