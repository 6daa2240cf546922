#include "riskaudit/consistency.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "riskaudit/error.hpp"

namespace riskaudit {

namespace {

constexpr int kLattice = 5;
constexpr double kInset = 1e-6;

using Cell = std::pair<int, int>;  // 0-based (row, col)

// Corner products scaled by n_rows * n_cols, so comparisons stay exact.
long long min_num(const Cell& c) { return static_cast<long long>(c.first) * c.second; }
long long max_num(const Cell& c) { return static_cast<long long>(c.first + 1) * (c.second + 1); }

std::pair<int, int> one_based(const Cell& c) { return {c.first + 1, c.second + 1}; }

std::string cell_name(const Cell& c) {
    return "(" + std::to_string(c.first + 1) + "," + std::to_string(c.second + 1) + ")";
}

struct View {
    const ColoringGrid& g;
    int color(const Cell& c) const { return g.cells[static_cast<std::size_t>(c.first * g.n_cols + c.second)]; }
    std::vector<Cell> with_color(int k) const {
        std::vector<Cell> out;
        for (int r = 0; r < g.n_rows; ++r)
            for (int c = 0; c < g.n_cols; ++c)
                if (color({r, c}) == k) out.push_back({r, c});
        return out;
    }
    std::vector<Cell> all() const {
        std::vector<Cell> out;
        for (int r = 0; r < g.n_rows; ++r)
            for (int c = 0; c < g.n_cols; ++c) out.push_back({r, c});
        return out;
    }
};

// Some point of a carries risk >= some point of b. Equality is tolerated only
// when it is attained at one shared corner (a's top-right is b's bottom-left).
bool reaches(const Cell& a, const Cell& b) {
    const long long amax = max_num(a);
    const long long bmin = min_num(b);
    if (amax != bmin) return amax > bmin;
    return !(a.first + 1 == b.first && a.second + 1 == b.second);
}

// Each visitor returns false to stop early.
template <typename Emit>
void weak_consistency(const ColoringGrid& grid, Emit&& emit) {
    if (grid.colors < 2) return;
    View v{grid};
    const auto low = v.with_color(1);
    const auto high = v.with_color(grid.colors);
    for (const auto& a : low) {
        for (const auto& b : high) {
            if (reaches(a, b) && !emit(a, b)) return;
        }
    }
}

template <typename Emit>
void consistent_coloring(const ColoringGrid& grid, Emit&& emit) {
    const int k = grid.colors;
    if (k < 2) return;
    View v{grid};
    const auto cells = v.all();
    const auto low = v.with_color(1);
    const auto high = v.with_color(k);
    long long low_max = 0;
    for (const auto& c : low) low_max = std::max(low_max, max_num(c));
    long long high_min = static_cast<long long>(grid.n_rows) * grid.n_cols;
    for (const auto& c : high) high_min = std::min(high_min, min_num(c));

    for (const auto& c : cells) {
        if (!low.empty() && min_num(c) >= low_max && v.color(c) != k) {
            if (!emit(std::vector<Cell>{c}, "cell " + cell_name(c) +
                                               " carries no risk below the riskiest lowest-class cell but is not "
                                               "in the highest class"))
                return;
        }
        if (!high.empty() && max_num(c) < high_min && v.color(c) != 1) {
            if (!emit(std::vector<Cell>{c}, "cell " + cell_name(c) +
                                               " lies entirely below every highest-class cell but is not in the "
                                               "lowest class"))
                return;
        }
    }
    for (const auto& a : high) {
        for (const auto& b : high) {
            if (max_num(a) < min_num(b)) {
                if (!emit(std::vector<Cell>{a, b}, "highest-class cells " + cell_name(a) + " and " + cell_name(b) +
                                                       " have disjoint risk ranges"))
                    return;
            }
        }
    }
    // color classes ordered by range dominance
    for (const auto& a : cells) {
        for (const auto& b : cells) {
            if (v.color(a) < v.color(b) && max_num(b) < min_num(a)) {
                if (!emit(std::vector<Cell>{a, b}, "cell " + cell_name(b) + " is colored above " + cell_name(a) +
                                                       " but its whole range lies below it"))
                    return;
            }
        }
    }
}

struct Point {
    double x, y;
};

std::vector<Point> lattice(const ColoringGrid& g, const Cell& c) {
    const double w = 1.0 / g.n_rows;
    const double h = 1.0 / g.n_cols;
    std::vector<Point> out;
    for (int i = 0; i < kLattice; ++i) {
        const double x = c.first * w + kInset + (w - 2 * kInset) * i / (kLattice - 1);
        for (int j = 0; j < kLattice; ++j) {
            const double y = c.second * h + kInset + (h - 2 * kInset) * j / (kLattice - 1);
            out.push_back({x, y});
        }
    }
    return out;
}

// Cells crossed by the open segment p->q: split at every grid-line crossing
// and locate each piece by its midpoint.
bool crosses_color_between(const ColoringGrid& g, const Point& p, const Point& q, int lo, int hi) {
    std::vector<double> ts{0.0, 1.0};
    auto add_crossings = [&](double a, double b, int n) {
        if (a == b) return;
        for (int k = 1; k < n; ++k) {
            const double t = (static_cast<double>(k) / n - a) / (b - a);
            if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
    };
    add_crossings(p.x, q.x, g.n_rows);
    add_crossings(p.y, q.y, g.n_cols);
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] - ts[i - 1] < 1e-13) continue;
        const double t = (ts[i] + ts[i - 1]) / 2;
        const double x = p.x + t * (q.x - p.x);
        const double y = p.y + t * (q.y - p.y);
        const int r = std::min(static_cast<int>(x * g.n_rows), g.n_rows - 1);
        const int c = std::min(static_cast<int>(y * g.n_cols), g.n_cols - 1);
        const int color = g.cells[static_cast<std::size_t>(r * g.n_cols + c)];
        if (color > lo && color < hi) return true;
    }
    return false;
}

template <typename Emit>
void betweenness(const ColoringGrid& grid, Emit&& emit) {
    const int k = grid.colors;
    if (k < 2) return;
    View v{grid};
    const auto low = v.with_color(1);
    const auto high = v.with_color(k);
    for (const auto& a : low) {
        const auto pa = lattice(grid, a);
        for (const auto& b : high) {
            const auto pb = lattice(grid, b);
            bool found = false;
            for (const auto& p : pa) {
                for (const auto& q : pb) {
                    if (q.x < p.x || q.y < p.y) continue;
                    if (!crosses_color_between(grid, p, q, 1, k)) {
                        if (!emit(a, b, Segment{p.x, p.y, q.x, q.y})) return;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
    }
}

bool passes_all(const ColoringGrid& g) {
    bool ok = true;
    weak_consistency(g, [&](const Cell&, const Cell&) { return ok = false; });
    if (!ok) return false;
    consistent_coloring(g, [&](const std::vector<Cell>&, const std::string&) { return ok = false; });
    if (!ok) return false;
    if (g.colors == 2) return false;
    betweenness(g, [&](const Cell&, const Cell&, const Segment&) { return ok = false; });
    return ok;
}

}  // namespace

int ColoringGrid::at(int row, int col) const {
    if (row < 1 || row > n_rows || col < 1 || col > n_cols) throw Error("cell outside the grid");
    return cells[static_cast<std::size_t>((row - 1) * n_cols + (col - 1))];
}

void ColoringGrid::set(int row, int col, int color) {
    if (row < 1 || row > n_rows || col < 1 || col > n_cols) throw Error("cell outside the grid");
    cells[static_cast<std::size_t>((row - 1) * n_cols + (col - 1))] = color;
}

ColoringGrid make_grid(int n_rows, int n_cols, int colors, std::vector<int> cells) {
    ColoringGrid g{n_rows, n_cols, colors, std::move(cells)};
    check_grid(g);
    return g;
}

void check_grid(const ColoringGrid& grid) {
    if (grid.n_rows < 1 || grid.n_cols < 1) throw Error("grid needs at least one row and one column");
    if (grid.colors < 1) throw Error("grid needs at least one color");
    if (grid.cells.size() != static_cast<std::size_t>(grid.n_rows) * static_cast<std::size_t>(grid.n_cols)) {
        throw Error("grid cell count does not match its dimensions");
    }
    for (int c : grid.cells) {
        if (c < 1 || c > grid.colors) throw Error("cell color " + std::to_string(c) + " outside 1.." + std::to_string(grid.colors));
    }
    if (grid.colors >= 2) {
        const bool has_low = std::find(grid.cells.begin(), grid.cells.end(), 1) != grid.cells.end();
        const bool has_high = std::find(grid.cells.begin(), grid.cells.end(), grid.colors) != grid.cells.end();
        if (!has_low || !has_high) throw Error("grid must use both the lowest and the highest color");
    }
}

CellRegion cell_region(const ColoringGrid& grid, int row, int col) {
    if (row < 1 || row > grid.n_rows || col < 1 || col > grid.n_cols) throw Error("cell outside the grid");
    const double r = grid.n_rows;
    const double c = grid.n_cols;
    return CellRegion{row, col, QuantRange::closed((row - 1) / r, row / r), QuantRange::closed((col - 1) / c, col / c)};
}

std::pair<double, double> cell_extremes(const CellRegion& region) {
    return {region.x_range.lo * region.y_range.lo, region.x_range.hi * region.y_range.hi};
}

std::vector<AuditFinding> check_weak_consistency(const ColoringGrid& grid) {
    check_grid(grid);
    std::vector<AuditFinding> out;
    weak_consistency(grid, [&](const Cell& a, const Cell& b) {
        out.push_back(AuditFinding{Property::weak_consistency,
                                   {one_based(a), one_based(b)},
                                   std::nullopt,
                                   "lowest-class cell " + cell_name(a) + " reaches the risk of highest-class cell " +
                                       cell_name(b)});
        return true;
    });
    return out;
}

std::vector<AuditFinding> check_betweenness(const ColoringGrid& grid) {
    check_grid(grid);
    std::vector<AuditFinding> out;
    if (grid.colors == 2) {
        out.push_back(AuditFinding{Property::betweenness, {}, std::nullopt,
                                   "only 2 colors: every path from the lowest to the highest class jumps directly"});
        return out;
    }
    betweenness(grid, [&](const Cell& a, const Cell& b, const Segment& s) {
        out.push_back(AuditFinding{Property::betweenness,
                                   {one_based(a), one_based(b)},
                                   s,
                                   "segment from " + cell_name(a) + " to " + cell_name(b) +
                                       " crosses no intermediate class"});
        return true;
    });
    return out;
}

std::vector<AuditFinding> check_consistent_coloring(const ColoringGrid& grid) {
    check_grid(grid);
    std::vector<AuditFinding> out;
    consistent_coloring(grid, [&](const std::vector<Cell>& cells, const std::string& why) {
        AuditFinding f{Property::consistent_coloring, {}, std::nullopt, why};
        for (const auto& c : cells) f.cells.push_back(one_based(c));
        out.push_back(std::move(f));
        return true;
    });
    return out;
}

std::vector<ColoringGrid> monotone_colorings(int n, int colors) {
    std::vector<ColoringGrid> out;
    if (n < 1 || colors < 1) return out;
    ColoringGrid g{n, n, colors, std::vector<int>(static_cast<std::size_t>(n * n), 1)};
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == n * n) {
            const bool has_low = std::find(g.cells.begin(), g.cells.end(), 1) != g.cells.end();
            const bool has_high = std::find(g.cells.begin(), g.cells.end(), colors) != g.cells.end();
            if (has_low && has_high) out.push_back(g);
            return;
        }
        const int r = idx / n;
        const int c = idx % n;
        int lo = 1;
        if (r > 0) lo = std::max(lo, g.cells[static_cast<std::size_t>((r - 1) * n + c)]);
        if (c > 0) lo = std::max(lo, g.cells[static_cast<std::size_t>(r * n + c - 1)]);
        for (int k = lo; k <= colors; ++k) {
            g.cells[static_cast<std::size_t>(idx)] = k;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<ColoringGrid> enumerate_consistent_colorings(int n, int colors, unsigned workers) {
    if (n < 2 || n > 6) throw Error("enumeration supports grid sizes 2..6");
    if (colors != 3) throw Error("enumeration supports 3 colors only");
    const auto candidates = monotone_colorings(n, colors);

    std::vector<char> keep(candidates.size(), 0);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, candidates.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) keep[i] = passes_all(candidates[i]) ? 1 : 0;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::vector<ColoringGrid> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (keep[i]) out.push_back(candidates[i]);
    }
    return out;
}

MatrixAudit audit_matrix(const ColoringGrid& grid) {
    check_grid(grid);
    MatrixAudit a;
    auto weak = check_weak_consistency(grid);
    auto between = check_betweenness(grid);
    auto coloring = check_consistent_coloring(grid);
    a.weak_consistency = weak.empty();
    a.betweenness = between.empty();
    a.consistent_coloring = coloring.empty();
    if (grid.colors == 1) a.notes.push_back("single color: all three properties hold vacuously");
    if (grid.colors == 2) a.notes.push_back("betweenness needs at least 3 colors");
    for (auto* v : {&weak, &between, &coloring}) {
        a.findings.insert(a.findings.end(), std::make_move_iterator(v->begin()), std::make_move_iterator(v->end()));
    }
    return a;
}

ColoringGrid to_grid(const MatrixColoring& matrix) {
    ColoringGrid g;
    g.n_rows = matrix.row_scale.size();
    g.n_cols = matrix.col_scale.size();
    g.colors = static_cast<int>(matrix.categories.size());
    for (const auto& row : matrix.grid) g.cells.insert(g.cells.end(), row.begin(), row.end());
    check_grid(g);
    return g;
}

MatrixAudit audit_matrix(const MatrixColoring& matrix) {
    auto a = audit_matrix(to_grid(matrix));
    a.notes.push_back("cells evaluated on uniform linear partitions of [0,1]^2, rows along the probability axis");
    return a;
}

std::string render_grid(const ColoringGrid& grid) {
    auto letter = [&](int c) -> std::string {
        if (grid.colors == 3) return std::string(1, "GYR"[c - 1]);
        if (grid.colors == 2) return c == 1 ? "G" : "R";
        return std::to_string(c);
    };
    std::string out;
    for (int r = grid.n_rows; r >= 1; --r) {
        for (int c = 1; c <= grid.n_cols; ++c) {
            if (c > 1) out += ' ';
            out += letter(grid.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string to_string(Property property) {
    switch (property) {
        case Property::weak_consistency: return "weak-consistency";
        case Property::betweenness: return "betweenness";
        case Property::consistent_coloring: return "consistent-coloring";
    }
    return "unknown";
}

}  // namespace riskaudit
