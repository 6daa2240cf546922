#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskaudit/ordinal_scale.hpp"
#include "riskaudit/scoring.hpp"

namespace riskaudit {

/// Cell of a uniform partition of [0,1]^2. Rows run along the probability
/// axis (x), columns along the impact axis (y); ranks are 1-based.
struct CellRegion {
    int row = 1;
    int col = 1;
    QuantRange x_range;
    QuantRange y_range;
};

/// Colors are 1..colors, 1 = lowest risk. cells are row-major, row 1 first.
struct ColoringGrid {
    int n_rows = 0;
    int n_cols = 0;
    int colors = 0;
    std::vector<int> cells;

    int at(int row, int col) const;
    void set(int row, int col, int color);
    friend bool operator==(const ColoringGrid&, const ColoringGrid&) = default;
};

ColoringGrid make_grid(int n_rows, int n_cols, int colors, std::vector<int> cells);

/// Throws Error when the grid breaks its structural invariants.
void check_grid(const ColoringGrid& grid);

CellRegion cell_region(const ColoringGrid& grid, int row, int col);

/// (min, max) of x*y over the closed cell.
std::pair<double, double> cell_extremes(const CellRegion& region);

enum class Property { weak_consistency, betweenness, consistent_coloring };

struct Segment {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct AuditFinding {
    Property property = Property::weak_consistency;
    std::vector<std::pair<int, int>> cells;  // witness cells (row, col)
    std::optional<Segment> segment;
    std::string explanation;
};

std::vector<AuditFinding> check_weak_consistency(const ColoringGrid& grid);
std::vector<AuditFinding> check_betweenness(const ColoringGrid& grid);
std::vector<AuditFinding> check_consistent_coloring(const ColoringGrid& grid);

/// Grids are visited in lexicographic row-major order; colors are
/// non-decreasing along rows and columns and both 1 and K occur.
std::vector<ColoringGrid> monotone_colorings(int n, int colors);

/// n in 2..6, colors = 3.
std::vector<ColoringGrid> enumerate_consistent_colorings(int n, int colors, unsigned workers = 0);

struct MatrixAudit {
    bool weak_consistency = true;
    bool betweenness = true;
    bool consistent_coloring = true;
    std::vector<AuditFinding> findings;
    std::vector<std::string> notes;

    bool pass() const { return weak_consistency && betweenness && consistent_coloring; }
};

MatrixAudit audit_matrix(const ColoringGrid& grid);
MatrixAudit audit_matrix(const MatrixColoring& matrix);

ColoringGrid to_grid(const MatrixColoring& matrix);

/// Rows printed top-down from the highest row, one letter per cell.
std::string render_grid(const ColoringGrid& grid);

std::string to_string(Property property);

}  // namespace riskaudit
