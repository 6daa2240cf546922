#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskaudit/error.hpp"
#include "riskaudit/portfolio.hpp"
#include "riskaudit/quant.hpp"
#include "riskaudit/scoring.hpp"

namespace riskaudit {

/// A scheme as written in the document: either a preset (optionally with
/// replaced thresholds) or an explicit definition over named scales.
struct SchemeDef {
    std::optional<std::string> preset;
    std::vector<std::string> factor_refs;  // scale names; row then column for matrices
    bool thresholds_override = false;
    AnyScheme scheme;

    friend bool operator==(const SchemeDef&, const SchemeDef&) = default;
};

struct ConfigDocument {
    int version = 1;
    std::map<std::string, OrdinalScale> scales;
    std::map<std::string, SchemeDef> schemes;
    std::optional<Portfolio> portfolio;
    std::vector<EventModel> models;
    std::optional<RiskAppetite> appetite;

    friend bool operator==(const ConfigDocument&, const ConfigDocument&) = default;
};

class ConfigError : public Error {
public:
    enum class Kind { syntax, schema, reference, invariant };

    ConfigError(Kind kind, const std::string& message, std::vector<std::string> findings = {})
        : Error(message), kind_(kind), findings_(std::move(findings)) {}

    Kind kind() const { return kind_; }
    const std::vector<std::string>& findings() const { return findings_; }

private:
    Kind kind_;
    std::vector<std::string> findings_;
};

ConfigDocument parse_config(const std::string& text);
ConfigDocument load_config(const std::string& path);

/// Canonical JSON text; parse_config(render_config(d)) == d.
std::string render_config(const ConfigDocument& doc);

}  // namespace riskaudit
