#pragma once

// Slow, obviously-correct reference computations used as test oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "snowspan/metric.hpp"
#include "snowspan/spanner.hpp"

namespace oracle {

inline double diameter(const snowspan::MetricView& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) best = std::max(best, m(i, j));
    }
    return best;
}

inline double min_distance(const snowspan::MetricView& m) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i != j) best = std::min(best, m(i, j));
        }
    }
    return best;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

/// Kruskal over all pairs with union-find.
inline double kruskal_weight(const snowspan::MetricView& m) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) pairs.emplace_back(m(i, j), i, j);
    }
    std::sort(pairs.begin(), pairs.end());
    UnionFind uf(m.size());
    double total = 0.0;
    for (const auto& [w, i, j] : pairs) {
        if (uf.unite(i, j)) total += w;
    }
    return total;
}

/// The multiset of Kruskal edge weights, sorted.
inline std::vector<double> kruskal_weights(const snowspan::MetricView& m) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) pairs.emplace_back(m(i, j), i, j);
    }
    std::sort(pairs.begin(), pairs.end());
    UnionFind uf(m.size());
    std::vector<double> out;
    for (const auto& [w, i, j] : pairs) {
        if (uf.unite(i, j)) out.push_back(w);
    }
    return out;
}

/// Floyd-Warshall over the graph with every edge re-measured under `m`.
inline std::vector<std::vector<double>> apsp(const snowspan::SpannerGraph& g, const snowspan::MetricView& m) {
    const std::size_t n = g.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], m(e.u, e.v));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

inline double stretch(const snowspan::SpannerGraph& g, const snowspan::MetricView& m) {
    const auto d = apsp(g, m);
    double worst = 1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) worst = std::max(worst, d[i][j] / m(i, j));
    }
    return worst;
}

/// Hop diameter via Floyd-Warshall on unit weights.
inline int hops(const snowspan::SpannerGraph& g) {
    const std::size_t n = g.size();
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    int worst = 0;
    for (const auto& row : d) worst = std::max(worst, *std::max_element(row.begin(), row.end()));
    return worst;
}

/// Greedy nets written as a plain filter over the previous level.
inline std::vector<std::vector<std::size_t>> greedy_nets(const snowspan::MetricView& m, int ell) {
    std::vector<std::vector<std::size_t>> levels(1);
    for (std::size_t k = 0; k < m.size(); ++k) levels[0].push_back(k);
    for (int i = 1; i <= ell; ++i) {
        const double r = std::ldexp(1.0, i);
        std::vector<std::size_t> net;
        for (std::size_t p : levels.back()) {
            bool far = true;
            for (std::size_t q : net) far = far && m(p, q) > r;
            if (far) net.push_back(p);
        }
        levels.push_back(net);
    }
    return levels;
}

}  // namespace oracle
