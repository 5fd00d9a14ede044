#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "snowspan/metric.hpp"
#include "snowspan/nets.hpp"

namespace snowspan {

struct Edge {
    std::size_t u = 0;  // u < v
    std::size_t v = 0;
    double w = 0.0;
    std::optional<int> level;  // net level for net-tree cross edges
};

/// Weighted undirected simple graph over point indices [0, n).
class SpannerGraph {
public:
    SpannerGraph() = default;
    SpannerGraph(std::size_t n, std::string metric_tag);

    /// Adds {u, v} unless already present; returns whether it was added.
    /// Endpoints are normalised so that u < v. Self-loops are rejected.
    bool add_edge(std::size_t u, std::size_t v, double w, std::optional<int> level = std::nullopt);
    bool has_edge(std::size_t u, std::size_t v) const;

    std::size_t size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const std::string& metric_tag() const noexcept { return metric_tag_; }
    double total_weight() const;

    /// Neighbour lists; entries are (neighbour, edge index).
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const;

private:
    std::uint64_t key(std::size_t u, std::size_t v) const;

    std::size_t n_ = 0;
    std::string metric_tag_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> index_;
};

/// Index of the first edge whose weight differs from the metric distance of its
/// endpoints by more than 1e-12 relative, if any.
std::optional<std::size_t> find_weight_mismatch(const SpannerGraph& g, const MetricView& metric);

/// gamma = 8/epsilon, floored at 2.
double default_gamma(double epsilon);

/// Net-tree spanner: for each level i < ell, every pair of level-i net points
/// within gamma * 2^i becomes an edge tagged i; parent links are added as well.
/// Requires gamma >= 2.
SpannerGraph net_tree_spanner(const NetHierarchy& h, const MetricView& metric, double gamma);

/// Path-greedy t-spanner: pairs in ascending (distance, u, v) order, an edge is
/// added iff the current graph distance exceeds t times the metric distance.
SpannerGraph greedy_spanner(const MetricView& metric, double t);

/// Exact minimum spanning tree of the complete graph (dense Prim, O(n^2)).
SpannerGraph mst(const MetricView& metric);

}  // namespace snowspan
