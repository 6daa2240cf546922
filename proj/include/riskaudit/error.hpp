#pragma once

#include <stdexcept>
#include <string>

namespace riskaudit {

/// Precondition or domain violation in one of the library operations
/// (value outside a scale's domain, malformed rule, unknown preset, ...).
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace riskaudit
