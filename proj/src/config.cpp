#include "riskaudit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riskaudit/presets.hpp"

namespace riskaudit {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw ConfigError(ConfigError::Kind::schema, where + ": " + what);
}

void expect_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) schema_error(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) schema_error(where, "unknown key '" + key + "'");
    }
}

const json& require(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) schema_error(where, std::string("missing key '") + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_error(where, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where, "expected a string");
    return j.get<std::string>();
}

QuantRange parse_range(const json& j, const std::string& where) {
    expect_keys(j, where, {"lo", "hi", "lo_inclusive", "hi_inclusive"});
    QuantRange r;
    r.lo = number(require(j, where, "lo"), where + ".lo");
    const auto& hi = require(j, where, "hi");
    r.hi = hi.is_null() ? kInfinity : number(hi, where + ".hi");
    r.lo_inclusive = j.value("lo_inclusive", false);
    r.hi_inclusive = j.value("hi_inclusive", r.hi != kInfinity);
    return r;
}

json render_range(const QuantRange& r) {
    json j;
    j["lo"] = r.lo;
    j["hi"] = r.bounded() ? json(r.hi) : json(nullptr);
    j["lo_inclusive"] = r.lo_inclusive;
    j["hi_inclusive"] = r.hi_inclusive;
    return j;
}

OrdinalScale parse_scale(const std::string& name, const json& j) {
    const std::string where = "scales." + name;
    expect_keys(j, where, {"direction", "kind", "unit", "domain", "numbers", "levels", "partition"});
    OrdinalScale s;
    if (j.contains("partition")) {
        if (j.contains("levels")) schema_error(where, "give either 'partition' or 'levels'");
        const auto& p = j.at("partition");
        expect_keys(p, where + ".partition", {"kind", "domain", "levels", "labels", "numbers"});
        const auto kind = parse_distribution_kind(text(require(p, where, "kind"), where + ".partition.kind"));
        const auto domain = parse_range(require(p, where, "domain"), where + ".partition.domain");
        const int levels = require(p, where, "levels").get<int>();
        std::vector<std::string> labels;
        if (p.contains("labels")) labels = p.at("labels").get<std::vector<std::string>>();
        const auto numbers = parse_number_assignment(p.value("numbers", std::string("increasing")));
        s = make_partition_scale(kind, domain, levels, labels, numbers, name);
    } else {
        s.name = name;
        if (j.contains("kind")) s.kind = parse_distribution_kind(text(j.at("kind"), where + ".kind"));
        const auto& levels = require(j, where, "levels");
        if (!levels.is_array() || levels.empty()) schema_error(where + ".levels", "expected a non-empty array");
        const auto numbers = parse_number_assignment(j.value("numbers", std::string("increasing")));
        const auto defaults = semi_quant_numbers(numbers, static_cast<int>(levels.size()));
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& l = levels[i];
            const std::string lw = where + ".levels[" + std::to_string(i) + "]";
            expect_keys(l, lw, {"label", "number", "range"});
            RankLevel level;
            level.index = static_cast<int>(i) + 1;
            level.label = text(require(l, lw, "label"), lw + ".label");
            level.semi_quant = l.contains("number") ? number(l.at("number"), lw + ".number") : defaults[i];
            if (l.contains("range")) level.range = parse_range(l.at("range"), lw + ".range");
            s.levels.push_back(std::move(level));
        }
        if (j.contains("domain")) s.domain = parse_range(j.at("domain"), where + ".domain");
    }
    if (j.contains("direction")) s.direction = parse_direction(text(j.at("direction"), where + ".direction"));
    if (j.contains("unit")) s.unit = text(j.at("unit"), where + ".unit");
    return s;
}

json render_scale(const OrdinalScale& s) {
    json j;
    j["direction"] = to_string(s.direction);
    j["kind"] = to_string(s.kind);
    if (!s.unit.empty()) j["unit"] = s.unit;
    if (s.domain) j["domain"] = render_range(*s.domain);
    json levels = json::array();
    for (const auto& l : s.levels) {
        json lj;
        lj["label"] = l.label;
        lj["number"] = l.semi_quant;
        if (l.range) lj["range"] = render_range(*l.range);
        levels.push_back(lj);
    }
    j["levels"] = levels;
    return j;
}

ThresholdMap parse_thresholds(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_error(where, "expected a non-empty array");
    ThresholdMap t;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        expect_keys(j[i], w, {"upper", "label", "color"});
        Threshold th;
        th.upper_bound = number(require(j[i], w, "upper"), w + ".upper");
        th.category = OutputCategory{static_cast<int>(i) + 1, text(require(j[i], w, "label"), w + ".label"),
                                     j[i].value("color", std::string())};
        t.entries.push_back(th);
    }
    return t;
}

json render_thresholds(const ThresholdMap& t) {
    json j = json::array();
    for (const auto& e : t.entries) {
        json ej;
        ej["upper"] = e.upper_bound;
        ej["label"] = e.category.label;
        if (!e.category.color.empty()) ej["color"] = e.category.color;
        j.push_back(ej);
    }
    return j;
}

const OrdinalScale& resolve_scale(const ConfigDocument& doc, const std::string& ref, const std::string& where) {
    const auto it = doc.scales.find(ref);
    if (it == doc.scales.end()) {
        throw ConfigError(ConfigError::Kind::reference, where + ": undefined scale \"" + ref + "\"");
    }
    return it->second;
}

CombinationRule parse_rule(const json& j, const std::string& where) {
    CombinationRule r;
    if (j.is_string()) {
        r.kind = parse_rule_kind(j.get<std::string>());
        return r;
    }
    expect_keys(j, where, {"kind", "weights", "deduction_factor"});
    r.kind = parse_rule_kind(text(require(j, where, "kind"), where + ".kind"));
    if (j.contains("weights")) r.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("deduction_factor")) r.deduction_factor = j.at("deduction_factor").get<int>();
    return r;
}

json render_rule(const CombinationRule& r) {
    if (r.weights.empty() && !r.deduction_factor) return to_string(r.kind);
    json j;
    j["kind"] = to_string(r.kind);
    if (!r.weights.empty()) j["weights"] = r.weights;
    if (r.deduction_factor) j["deduction_factor"] = *r.deduction_factor;
    return j;
}

std::vector<std::string> scheme_findings(const AnyScheme& s) {
    std::vector<std::string> out;
    const auto findings = std::visit(
        [](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, RiskScheme>) return validate_scheme(x);
            else return validate_matrix(x);
        },
        s);
    for (const auto& f : findings) out.push_back(f.message);
    return out;
}

SchemeDef parse_scheme(const std::string& name, const json& j, const ConfigDocument& doc) {
    const std::string where = "schemes." + name;
    SchemeDef def;
    if (j.contains("preset")) {
        expect_keys(j, where, {"preset", "thresholds"});
        def.preset = text(j.at("preset"), where + ".preset");
        try {
            def.scheme = preset(*def.preset);
        } catch (const Error& e) {
            throw ConfigError(ConfigError::Kind::reference, where + ": " + e.what());
        }
        if (j.contains("thresholds")) {
            auto* rs = std::get_if<RiskScheme>(&def.scheme);
            if (!rs) schema_error(where, "matrix presets take no thresholds");
            rs->thresholds = parse_thresholds(j.at("thresholds"), where + ".thresholds");
            def.thresholds_override = true;
        }
    } else if (j.contains("matrix")) {
        expect_keys(j, where, {"matrix"});
        const auto& m = j.at("matrix");
        const std::string mw = where + ".matrix";
        expect_keys(m, mw, {"rows", "cols", "row_role", "col_role", "categories", "grid"});
        MatrixColoring mc;
        const auto rows = text(require(m, mw, "rows"), mw + ".rows");
        const auto cols = text(require(m, mw, "cols"), mw + ".cols");
        mc.row_scale = resolve_scale(doc, rows, mw + ".rows");
        mc.col_scale = resolve_scale(doc, cols, mw + ".cols");
        def.factor_refs = {rows, cols};
        if (m.contains("row_role")) mc.row_role = parse_factor_role(text(m.at("row_role"), mw + ".row_role"));
        if (m.contains("col_role")) mc.col_role = parse_factor_role(text(m.at("col_role"), mw + ".col_role"));
        const auto& cats = require(m, mw, "categories");
        if (!cats.is_array() || cats.empty()) schema_error(mw + ".categories", "expected a non-empty array");
        for (std::size_t i = 0; i < cats.size(); ++i) {
            const std::string cw = mw + ".categories[" + std::to_string(i) + "]";
            expect_keys(cats[i], cw, {"label", "color"});
            mc.categories.push_back(OutputCategory{static_cast<int>(i) + 1, text(require(cats[i], cw, "label"), cw),
                                                   cats[i].value("color", std::string())});
        }
        mc.grid = require(m, mw, "grid").get<std::vector<std::vector<int>>>();
        def.scheme = std::move(mc);
    } else {
        expect_keys(j, where, {"factors", "roles", "rule", "thresholds"});
        RiskScheme rs;
        const auto& factors = require(j, where, "factors");
        if (!factors.is_array()) schema_error(where + ".factors", "expected an array of scale names");
        for (const auto& f : factors) {
            const auto ref = text(f, where + ".factors");
            rs.factors.push_back(resolve_scale(doc, ref, where + ".factors"));
            def.factor_refs.push_back(ref);
        }
        if (j.contains("roles")) {
            for (const auto& r : j.at("roles")) rs.roles.push_back(parse_factor_role(text(r, where + ".roles")));
        }
        rs.rule = parse_rule(require(j, where, "rule"), where + ".rule");
        if (j.contains("thresholds")) rs.thresholds = parse_thresholds(j.at("thresholds"), where + ".thresholds");
        def.scheme = std::move(rs);
    }
    std::visit([&](auto& s) { s.name = name; }, def.scheme);
    const auto findings = scheme_findings(def.scheme);
    if (!findings.empty()) {
        throw ConfigError(ConfigError::Kind::invariant, where + ": scheme definition is invalid", findings);
    }
    return def;
}

json render_scheme(const SchemeDef& def) {
    json j;
    if (def.preset) {
        j["preset"] = *def.preset;
        if (def.thresholds_override) {
            const auto& rs = std::get<RiskScheme>(def.scheme);
            if (rs.thresholds) j["thresholds"] = render_thresholds(*rs.thresholds);
        }
        return j;
    }
    if (const auto* mc = std::get_if<MatrixColoring>(&def.scheme)) {
        json m;
        m["rows"] = def.factor_refs.at(0);
        m["cols"] = def.factor_refs.at(1);
        m["row_role"] = to_string(mc->row_role);
        m["col_role"] = to_string(mc->col_role);
        json cats = json::array();
        for (const auto& c : mc->categories) {
            json cj;
            cj["label"] = c.label;
            if (!c.color.empty()) cj["color"] = c.color;
            cats.push_back(cj);
        }
        m["categories"] = cats;
        m["grid"] = mc->grid;
        j["matrix"] = m;
        return j;
    }
    const auto& rs = std::get<RiskScheme>(def.scheme);
    j["factors"] = def.factor_refs;
    if (!rs.roles.empty()) {
        json roles = json::array();
        for (auto r : rs.roles) roles.push_back(to_string(r));
        j["roles"] = roles;
    }
    j["rule"] = render_rule(rs.rule);
    if (rs.thresholds) j["thresholds"] = render_thresholds(*rs.thresholds);
    return j;
}

Portfolio parse_portfolio(const json& j) {
    const std::string where = "portfolio";
    expect_keys(j, where, {"unit", "events"});
    Portfolio p;
    p.unit = j.value("unit", std::string());
    const auto& events = require(j, where, "events");
    if (!events.is_array()) schema_error(where + ".events", "expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        const std::string w = where + ".events[" + std::to_string(i) + "]";
        expect_keys(e, w, {"id", "impact", "unit", "frequency", "rate", "per"});
        QuantEvent ev;
        ev.id = text(require(e, w, "id"), w + ".id");
        ev.impact = number(require(e, w, "impact"), w + ".impact");
        if (e.contains("unit")) {
            try {
                ev.impact = convert_unit(ev.impact, text(e.at("unit"), w + ".unit"), p.unit);
            } catch (const Error& err) {
                schema_error(w, err.what());
            }
        }
        if (e.contains("frequency")) {
            if (e.contains("rate") || e.contains("per")) schema_error(w, "give either 'frequency' or 'rate'/'per'");
            ev.frequency = number(e.at("frequency"), w + ".frequency");
        } else {
            const double rate = number(require(e, w, "rate"), w + ".rate");
            try {
                ev.frequency = annual_rate(rate, text(require(e, w, "per"), w + ".per"));
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& err) {
                schema_error(w, err.what());
            }
        }
        p.events.push_back(ev);
    }
    try {
        check_portfolio(p);
    } catch (const Error& e) {
        throw ConfigError(ConfigError::Kind::invariant, std::string("portfolio: ") + e.what(), {e.what()});
    }
    return p;
}

json render_portfolio(const Portfolio& p) {
    json j;
    if (!p.unit.empty()) j["unit"] = p.unit;
    json events = json::array();
    for (const auto& e : p.events) {
        json ej;
        ej["id"] = e.id;
        ej["impact"] = e.impact;
        ej["frequency"] = e.frequency;
        events.push_back(ej);
    }
    j["events"] = events;
    return j;
}

DistributionSpec parse_distribution(const json& j, const std::string& where) {
    expect_keys(j, where, {"kind", "value", "lo", "hi", "points"});
    DistributionSpec d;
    d.kind = parse_dist_kind(text(require(j, where, "kind"), where + ".kind"));
    switch (d.kind) {
        case DistKind::point: d.value = number(require(j, where, "value"), where + ".value"); break;
        case DistKind::uniform:
        case DistKind::lognormal_ci90:
            d.lo = number(require(j, where, "lo"), where + ".lo");
            d.hi = number(require(j, where, "hi"), where + ".hi");
            break;
        case DistKind::discrete:
            d.points = require(j, where, "points").get<std::vector<std::pair<double, double>>>();
            break;
    }
    return d;
}

json render_distribution(const DistributionSpec& d) {
    json j;
    j["kind"] = to_string(d.kind);
    switch (d.kind) {
        case DistKind::point: j["value"] = d.value; break;
        case DistKind::uniform:
        case DistKind::lognormal_ci90:
            j["lo"] = d.lo;
            j["hi"] = d.hi;
            break;
        case DistKind::discrete: j["points"] = d.points; break;
    }
    return j;
}

EventModel parse_model(const json& j, std::size_t i) {
    const std::string where = "models[" + std::to_string(i) + "]";
    expect_keys(j, where, {"id", "frequency", "impact"});
    EventModel m;
    m.id = text(require(j, where, "id"), where + ".id");
    const auto& f = require(j, where, "frequency");
    expect_keys(f, where + ".frequency", {"kind", "rate", "probability"});
    m.frequency.kind = parse_frequency_kind(text(require(f, where, "kind"), where + ".frequency.kind"));
    const char* key = m.frequency.kind == FrequencyKind::poisson ? "rate" : "probability";
    m.frequency.parameter = number(require(f, where + ".frequency", key), where + ".frequency." + key);
    m.impact = parse_distribution(require(j, where, "impact"), where + ".impact");
    return m;
}

json render_model(const EventModel& m) {
    json j;
    j["id"] = m.id;
    json f;
    f["kind"] = to_string(m.frequency.kind);
    f[m.frequency.kind == FrequencyKind::poisson ? "rate" : "probability"] = m.frequency.parameter;
    j["frequency"] = f;
    j["impact"] = render_distribution(m.impact);
    return j;
}

std::string position_of(const std::string& textv, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < textv.size(); ++i) {
        if (textv[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ConfigDocument parse_config(const std::string& textv) {
    json root;
    try {
        root = json::parse(textv);
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigError::Kind::syntax, "syntax error at " + position_of(textv, e.byte));
    }
    ConfigDocument doc;
    try {
        expect_keys(root, "document", {"version", "scales", "schemes", "portfolio", "models", "appetite"});
        const auto& version = require(root, "document", "version");
        if (!version.is_number_integer() || version.get<int>() != 1) {
            schema_error("version", "only version 1 is supported");
        }

        std::vector<std::string> invalid;
        if (root.contains("scales")) {
            if (!root.at("scales").is_object()) schema_error("scales", "expected an object");
            for (const auto& [name, sj] : root.at("scales").items()) {
                auto s = parse_scale(name, sj);
                for (const auto& f : validate_scale(s)) {
                    if (f.severity == Severity::violation) invalid.push_back("scale '" + name + "': " + f.message);
                }
                doc.scales.emplace(name, std::move(s));
            }
        }
        if (!invalid.empty()) {
            throw ConfigError(ConfigError::Kind::invariant, "scale definitions violate their invariants", invalid);
        }
        if (root.contains("schemes")) {
            if (!root.at("schemes").is_object()) schema_error("schemes", "expected an object");
            for (const auto& [name, sj] : root.at("schemes").items()) doc.schemes.emplace(name, parse_scheme(name, sj, doc));
        }
        if (root.contains("portfolio")) doc.portfolio = parse_portfolio(root.at("portfolio"));
        if (root.contains("models")) {
            const auto& models = root.at("models");
            if (!models.is_array()) schema_error("models", "expected an array");
            std::set<std::string> ids;
            for (std::size_t i = 0; i < models.size(); ++i) {
                auto m = parse_model(models[i], i);
                try {
                    check_model(m);
                } catch (const Error& e) {
                    throw ConfigError(ConfigError::Kind::invariant, e.what(), {e.what()});
                }
                if (!ids.insert(m.id).second) schema_error("models", "duplicate model id '" + m.id + "'");
                doc.models.push_back(std::move(m));
            }
        }
        if (root.contains("appetite")) {
            const auto& a = root.at("appetite");
            if (!a.is_array()) schema_error("appetite", "expected an array");
            RiskAppetite app;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const std::string w = "appetite[" + std::to_string(i) + "]";
                expect_keys(a[i], w, {"threshold", "max_probability"});
                app.points.push_back({number(require(a[i], w, "threshold"), w + ".threshold"),
                                      number(require(a[i], w, "max_probability"), w + ".max_probability")});
            }
            try {
                check_appetite(app);
            } catch (const Error& e) {
                throw ConfigError(ConfigError::Kind::invariant, e.what(), {e.what()});
            }
            doc.appetite = std::move(app);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(ConfigError::Kind::schema, std::string("malformed document: ") + e.what());
    } catch (const Error& e) {
        throw ConfigError(ConfigError::Kind::schema, e.what());
    }
    return doc;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(ConfigError::Kind::syntax, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const ConfigDocument& doc) {
    json root;
    root["version"] = doc.version;
    if (!doc.scales.empty()) {
        json scales = json::object();
        for (const auto& [name, s] : doc.scales) scales[name] = render_scale(s);
        root["scales"] = scales;
    }
    if (!doc.schemes.empty()) {
        json schemes = json::object();
        for (const auto& [name, def] : doc.schemes) schemes[name] = render_scheme(def);
        root["schemes"] = schemes;
    }
    if (doc.portfolio) root["portfolio"] = render_portfolio(*doc.portfolio);
    if (!doc.models.empty()) {
        json models = json::array();
        for (const auto& m : doc.models) models.push_back(render_model(m));
        root["models"] = models;
    }
    if (doc.appetite) {
        json a = json::array();
        for (const auto& p : doc.appetite->points) a.push_back({{"threshold", p.threshold}, {"max_probability", p.max_probability}});
        root["appetite"] = a;
    }
    return root.dump(2) + "\n";
}

}  // namespace riskaudit
