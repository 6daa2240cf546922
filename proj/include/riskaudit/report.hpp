#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "riskaudit/severity.hpp"

namespace riskaudit {

using Json = nlohmann::ordered_json;

struct Finding {
    Severity severity = Severity::info;
    std::string code;
    std::string message;
};

struct Section {
    std::string name;
    std::vector<std::string> lines;  // human rendering
    std::vector<Json> records;       // machine rendering
    std::vector<Finding> findings;
};

/// Sections keyed by analysis, each carrying text lines, JSON records and
/// findings. Exit code 1 iff any finding is a violation.
class Report {
public:
    Section& section(const std::string& name);
    const std::vector<Section>& sections() const { return sections_; }

    void line(const std::string& section, std::string text);
    void record(const std::string& section, Json record);
    void finding(const std::string& section, Severity severity, std::string code, std::string message);

    Severity max_severity() const;
    int exit_code() const;

    void render_text(std::ostream& out) const;
    void render_jsonl(std::ostream& out) const;

private:
    std::vector<Section> sections_;
};

/// 4 significant digits, for probabilities in human output.
std::string format_probability(double p);

/// JSON value for a double; infinities become strings.
Json json_number(double v);

}  // namespace riskaudit
