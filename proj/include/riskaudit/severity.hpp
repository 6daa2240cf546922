#pragma once

#include <string_view>

namespace riskaudit {

enum class Severity { info, warning, violation };

constexpr std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::info: return "info";
        case Severity::warning: return "warning";
        case Severity::violation: return "violation";
    }
    return "unknown";
}

}  // namespace riskaudit
