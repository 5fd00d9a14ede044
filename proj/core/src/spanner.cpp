#include "snowspan/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace snowspan {

SpannerGraph::SpannerGraph(std::size_t n, std::string metric_tag) : n_(n), metric_tag_(std::move(metric_tag)) {}

std::uint64_t SpannerGraph::key(std::size_t u, std::size_t v) const {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(v);
}

bool SpannerGraph::add_edge(std::size_t u, std::size_t v, double w, std::optional<int> level) {
    if (u >= n_ || v >= n_) {
        throw std::out_of_range("edge endpoint out of range");
    }
    if (u == v) {
        throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
    if (!index_.insert(key(u, v)).second) {
        return false;
    }
    edges_.push_back({u, v, w, level});
    return true;
}

bool SpannerGraph::has_edge(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    return index_.contains(key(u, v));
}

double SpannerGraph::total_weight() const {
    double total = 0.0;
    for (const Edge& e : edges_) total += e.w;
    return total;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> SpannerGraph::adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        adj[edges_[k].u].emplace_back(edges_[k].v, k);
        adj[edges_[k].v].emplace_back(edges_[k].u, k);
    }
    return adj;
}

std::optional<std::size_t> find_weight_mismatch(const SpannerGraph& g, const MetricView& metric) {
    const auto edges = g.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const double d = metric.distance(edges[k].u, edges[k].v);
        if (std::abs(d - edges[k].w) > 1e-12 * std::max(d, edges[k].w)) {
            return k;
        }
    }
    return std::nullopt;
}

double default_gamma(double epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    return std::max(2.0, 8.0 / epsilon);
}

SpannerGraph net_tree_spanner(const NetHierarchy& h, const MetricView& metric, double gamma) {
    if (!(gamma >= 2.0)) {
        throw std::invalid_argument("net_tree_spanner: gamma must be at least 2");
    }
    SpannerGraph g(metric.size(), metric.spec().to_string());
    for (int i = 0; i < h.ell(); ++i) {
        const auto net = h.level(i);
        const double reach = gamma * std::ldexp(1.0, i);
        for (std::size_t x = 0; x < net.size(); ++x) {
            for (std::size_t y = x + 1; y < net.size(); ++y) {
                const double d = metric.distance(net[x], net[y]);
                if (d <= reach) {
                    g.add_edge(net[x], net[y], d, i);
                }
            }
        }
        for (std::size_t p : net) {
            const std::size_t q = h.parent(p, i);
            if (q != p) {
                g.add_edge(p, q, metric.distance(p, q), i);
            }
        }
    }
    return g;
}

namespace {

// Dijkstra from `source` that gives up once every remaining label exceeds `limit`.
class BoundedDijkstra {
public:
    explicit BoundedDijkstra(std::size_t n) : dist_(n, kInfinity) {}

    double distance(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj, std::size_t source,
                    std::size_t target, double limit) {
        for (std::size_t v : touched_) dist_[v] = kInfinity;
        touched_.clear();
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist_[source] = 0.0;
        touched_.push_back(source);
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (d > dist_[u]) continue;
            if (u == target) return d;
            if (d > limit) break;
            for (const auto& [v, w] : adj[u]) {
                const double nd = d + w;
                if (nd < dist_[v]) {
                    if (dist_[v] == kInfinity) touched_.push_back(v);
                    dist_[v] = nd;
                    heap.emplace(nd, v);
                }
            }
        }
        return dist_[target];
    }

private:
    std::vector<double> dist_;
    std::vector<std::size_t> touched_;
};

}  // namespace

SpannerGraph greedy_spanner(const MetricView& metric, double t) {
    if (!(t > 1.0)) {
        throw std::invalid_argument("greedy_spanner: stretch t must exceed 1");
    }
    const std::size_t n = metric.size();
    SpannerGraph g(n, metric.spec().to_string());

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            pairs.emplace_back(metric.distance(u, v), u, v);
        }
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    BoundedDijkstra dijkstra(n);
    for (const auto& [d, u, v] : pairs) {
        const double limit = t * d;
        if (dijkstra.distance(adj, u, v, limit) > limit) {
            g.add_edge(u, v, d);
            adj[u].emplace_back(v, d);
            adj[v].emplace_back(u, d);
        }
    }
    return g;
}

SpannerGraph mst(const MetricView& metric) {
    const std::size_t n = metric.size();
    SpannerGraph tree(n, metric.spec().to_string());
    if (n < 2) return tree;

    std::vector<double> key(n, kInfinity);
    std::vector<std::size_t> link(n, 0);
    std::vector<bool> done(n, false);
    std::size_t current = 0;
    done[0] = true;
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double d = metric.distance(current, v);
            if (d < key[v]) {
                key[v] = d;
                link[v] = current;
            }
            if (next == n || key[v] < key[next]) next = v;
        }
        done[next] = true;
        tree.add_edge(link[next], next, key[next]);
        current = next;
    }
    return tree;
}

}  // namespace snowspan
