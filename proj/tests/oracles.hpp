#pragma once

// Independent reference computations. Nothing here calls into the library, so
// tests can compare library results against arithmetic done a second way.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// Exact fraction with small integer parts.
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

inline Frac reduce(Frac f) {
    const auto g = std::gcd(f.num, f.den);
    return g ? Frac{f.num / g, f.den / g} : f;
}

inline bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }
inline bool operator==(Frac a, Frac b) { return a.num * b.den == b.num * a.den; }
inline double to_double(Frac f) { return static_cast<double>(f.num) / static_cast<double>(f.den); }

// Risk x*y over cell (row, col) of an n x n uniform grid on [0,1]^2.
inline Frac cell_min(int row, int col, int n) { return reduce({std::int64_t(row - 1) * (col - 1), std::int64_t(n) * n}); }
inline Frac cell_max(int row, int col, int n) { return reduce({std::int64_t(row) * col, std::int64_t(n) * n}); }

// Every rank tuple over 1..counts[i], brute force by odometer.
inline std::vector<std::vector<int>> all_tuples(const std::vector<int>& counts) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(counts.size(), 1);
    while (true) {
        out.push_back(t);
        std::size_t i = t.size();
        while (i > 0) {
            --i;
            if (++t[i] <= counts[i]) break;
            t[i] = 1;
            if (i == 0) return out;
        }
        if (t.empty()) return out;
    }
}

inline int distinct_sums(const std::vector<int>& counts) {
    std::set<int> s;
    for (const auto& t : all_tuples(counts)) s.insert(std::accumulate(t.begin(), t.end(), 0));
    return static_cast<int>(s.size());
}

inline int distinct_products(const std::vector<int>& counts) {
    std::set<int> s;
    for (const auto& t : all_tuples(counts)) s.insert(std::accumulate(t.begin(), t.end(), 1, std::multiplies<>()));
    return static_cast<int>(s.size());
}

// ASIL from the plain sum of S, E, C ranks.
inline const char* asil(int s, int e, int c) {
    switch (s + e + c) {
        case 7: return "ASIL A";
        case 8: return "ASIL B";
        case 9: return "ASIL C";
        case 10: return "ASIL D";
        default: return "QM";
    }
}

// Kendall tau-b by the textbook formula (nc - nd) / sqrt((n0 - n1)(n0 - n2)),
// where n1, n2 count tied pairs within x and within y.
inline double tau_b(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double nc = 0, nd = 0, n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0) ++n1;
            if (dy == 0) ++n2;
            if (dx * dy > 0) ++nc;
            if (dx * dy < 0) ++nd;
        }
    }
    const double n0 = n * (n - 1) / 2.0;
    return (nc - nd) / std::sqrt((n0 - n1) * (n0 - n2));
}

inline double poisson_pmf(int k, double lambda) {
    return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

// P(N > k) for N ~ Poisson(lambda).
inline double poisson_tail(int k, double lambda) {
    double cdf = 0;
    for (int i = 0; i <= k; ++i) cdf += poisson_pmf(i, lambda);
    return 1.0 - cdf;
}

// Exact expectation of a finite prospect.
inline double expectation(const std::vector<std::pair<double, double>>& prob_loss) {
    double e = 0;
    for (const auto& [p, l] : prob_loss) e += p * l;
    return e;
}

}  // namespace oracle
