#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "riskaudit/severity.hpp"

namespace riskaudit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A quantitative value range. The default flags follow the classification
/// convention used throughout the library: lower bound exclusive, upper bound
/// inclusive ("> lo ... hi"). Only `hi` may be +infinity.
struct QuantRange {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_inclusive = false;
    bool hi_inclusive = true;

    static QuantRange closed(double lo, double hi) { return {lo, hi, true, true}; }

    bool valid() const;
    bool bounded() const { return hi != kInfinity; }
    bool contains(double v) const;
    double width() const { return hi - lo; }

    friend bool operator==(const QuantRange&, const QuantRange&) = default;
};

/// True when the two ranges share at least one point (inclusivity respected).
/// Degenerate ranges (lo == hi, both inclusive) are treated as points.
bool intersects(const QuantRange& a, const QuantRange& b);

struct RankLevel {
    int index = 0;  // 1-based
    std::string label;
    double semi_quant = 0.0;
    std::optional<QuantRange> range;

    friend bool operator==(const RankLevel&, const RankLevel&) = default;
};

enum class Direction { higher_is_riskier, higher_is_safer };

enum class DistributionKind { linear, logarithmic, gaussian, inverse_gaussian, arbitrary };

/// Number-assignment columns for ranks: 1..N, 0..N-1, N..1, symmetric
/// around zero, 2,4,..,2N and 1,2,4,..,2^(N-1).
enum class NumberAssignment { increasing, start_at_zero, decreasing, centered, spaced_out, exponential };

/// Ordered rank levels with semi-quantitative numbers and (optionally)
/// quantitative range bindings. Plain value type: invariants are checked by
/// validate_scale, not enforced on construction, so broken scales can be
/// loaded and audited.
struct OrdinalScale {
    std::string name;
    Direction direction = Direction::higher_is_riskier;
    DistributionKind kind = DistributionKind::arbitrary;
    std::vector<RankLevel> levels;
    std::optional<QuantRange> domain;  // defaults to the union of level ranges
    std::string unit;                   // unit of the bound ranges, empty when unitless

    int size() const { return static_cast<int>(levels.size()); }
    bool bound() const;
    const RankLevel& level(int rank) const;
    double semi_quant(int rank) const { return level(rank).semi_quant; }
    std::vector<double> semi_quant_values() const;

    friend bool operator==(const OrdinalScale&, const OrdinalScale&) = default;
};

struct ScaleFinding {
    Severity severity = Severity::violation;
    std::string invariant;  // short machine tag, e.g. "gap", "zero-annihilation"
    int level_a = 0;
    int level_b = 0;
    std::string message;
};

std::vector<double> semi_quant_numbers(NumberAssignment numbers, int levels);
std::vector<std::string> default_labels(int levels);

/// Builds a scale partitioning `domain` into `levels` ranks.
///  - linear: equal-width ranks (finite domain).
///  - logarithmic: one decade per rank anchored at domain.hi; the lowest
///    rank absorbs everything down to domain.lo.
///  - gaussian / inverse_gaussian: fixed five-rank tables at 10/30/70/90 and
///    30/45/55/70 percent of the domain.
OrdinalScale make_partition_scale(DistributionKind kind, const QuantRange& domain, int levels,
                                  const std::vector<std::string>& labels = {},
                                  NumberAssignment numbers = NumberAssignment::increasing,
                                  std::string name = {});

std::vector<ScaleFinding> validate_scale(const OrdinalScale& scale);

/// Declared domain, or the hull of the level ranges. Throws for unbound scales
/// without a declared domain.
QuantRange scale_domain(const OrdinalScale& scale);

int classify(const OrdinalScale& scale, double value);

/// Every rank whose range intersects `uncertainty`, ascending.
std::vector<int> classify_interval(const OrdinalScale& scale, const QuantRange& uncertainty);

QuantRange rank_range(const OrdinalScale& scale, int rank);

struct BoundarySensitivity {
    /// min relative perturbation that changes the rank; infinity when no
    /// interior boundary exists; NaN when the value is 0 (see `relative`).
    double epsilon = 0.0;
    /// Distance to the nearest interior rank boundary in domain units.
    double absolute = 0.0;
    bool relative = true;
};

BoundarySensitivity boundary_sensitivity(const OrdinalScale& scale, double value);

std::string to_string(DistributionKind kind);
std::string to_string(NumberAssignment numbers);
std::string to_string(Direction direction);
DistributionKind parse_distribution_kind(const std::string& text);
NumberAssignment parse_number_assignment(const std::string& text);
Direction parse_direction(const std::string& text);

}  // namespace riskaudit
