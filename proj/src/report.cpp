#include "riskaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace riskaudit {

Section& Report::section(const std::string& name) {
    for (auto& s : sections_) {
        if (s.name == name) return s;
    }
    sections_.push_back(Section{name, {}, {}, {}});
    return sections_.back();
}

void Report::line(const std::string& section_name, std::string text) { section(section_name).lines.push_back(std::move(text)); }

void Report::record(const std::string& section_name, Json record) {
    section(section_name).records.push_back(std::move(record));
}

void Report::finding(const std::string& section_name, Severity severity, std::string code, std::string message) {
    section(section_name).findings.push_back(Finding{severity, std::move(code), std::move(message)});
}

Severity Report::max_severity() const {
    Severity m = Severity::info;
    for (const auto& s : sections_) {
        for (const auto& f : s.findings) {
            if (static_cast<int>(f.severity) > static_cast<int>(m)) m = f.severity;
        }
    }
    return m;
}

int Report::exit_code() const { return max_severity() == Severity::violation ? 1 : 0; }

void Report::render_text(std::ostream& out) const {
    int counts[3] = {0, 0, 0};
    for (const auto& s : sections_) {
        out << "== " << s.name << " ==\n";
        for (const auto& l : s.lines) out << l << '\n';
        for (const auto& f : s.findings) {
            ++counts[static_cast<int>(f.severity)];
            out << '[' << to_string(f.severity) << "] " << f.code << ": " << f.message << '\n';
        }
        out << '\n';
    }
    out << "summary: " << counts[2] << " violation(s), " << counts[1] << " warning(s)\n";
}

void Report::render_jsonl(std::ostream& out) const {
    int violations = 0;
    int warnings = 0;
    for (const auto& s : sections_) {
        for (const auto& r : s.records) {
            Json line;
            line["section"] = s.name;
            for (const auto& [k, v] : r.items()) line[k] = v;
            out << line.dump() << '\n';
        }
        for (const auto& f : s.findings) {
            if (f.severity == Severity::violation) ++violations;
            if (f.severity == Severity::warning) ++warnings;
            Json line;
            line["section"] = s.name;
            line["type"] = "finding";
            line["severity"] = std::string(to_string(f.severity));
            line["code"] = f.code;
            line["message"] = f.message;
            out << line.dump() << '\n';
        }
    }
    Json summary;
    summary["type"] = "summary";
    summary["violations"] = violations;
    summary["warnings"] = warnings;
    summary["exit_code"] = exit_code();
    out << summary.dump() << '\n';
}

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", p);
    return buf;
}

Json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace riskaudit
