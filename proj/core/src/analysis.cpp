#include "snowspan/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

#include "parallel.hpp"

namespace snowspan {

DisconnectedGraphError::DisconnectedGraphError(std::size_t reached, std::size_t unreached)
    : std::runtime_error("graph is disconnected: vertex " + std::to_string(unreached) +
                         " is not reachable from vertex " + std::to_string(reached)),
      reached_(reached),
      unreached_(unreached) {}

namespace {

using WeightedAdjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

void require_connected(const SpannerGraph& g) {
    const std::size_t n = g.size();
    if (n < 2) return;
    const auto adj = g.adjacency();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, e] : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v]) throw DisconnectedGraphError(0, v);
    }
}

std::vector<std::size_t> pick_sources(std::size_t n, const PairSampling& sampling) {
    std::vector<std::size_t> sources(n);
    std::iota(sources.begin(), sources.end(), std::size_t{0});
    if (sampling.exhaustive() || *sampling.sources >= n) {
        return sources;
    }
    std::mt19937_64 rng(sampling.seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(*sampling.sources);
    std::sort(sources.begin(), sources.end());
    return sources;
}

WeightedAdjacency reweighted(const SpannerGraph& g, const MetricView& metric) {
    WeightedAdjacency adj(g.size());
    for (const Edge& e : g.edges()) {
        const double w = metric.distance(e.u, e.v);
        adj[e.u].emplace_back(e.v, w);
        adj[e.v].emplace_back(e.u, w);
    }
    return adj;
}

void dijkstra(const WeightedAdjacency& adj, std::size_t source, std::vector<double>& dist) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : adj[u]) {
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
}

// Larger stretch wins; equal stretch keeps the lexicographically smaller pair.
bool better(const StretchResult& a, const StretchResult& b) {
    if (a.stretch != b.stretch) return a.stretch > b.stretch;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

}  // namespace

StretchResult max_stretch(const SpannerGraph& g, const MetricView& metric, const PairSampling& sampling) {
    const std::size_t n = g.size();
    StretchResult best;
    if (n < 2) return best;
    require_connected(g);

    const WeightedAdjacency adj = reweighted(g, metric);
    const std::vector<std::size_t> sources = pick_sources(n, sampling);
    const bool exhaustive = sources.size() == n;
    std::vector<StretchResult> per_source(sources.size());

    detail::parallel_for(sources.size(), [&](std::size_t k) {
        const std::size_t s = sources[k];
        std::vector<double> dist(n);
        dijkstra(adj, s, dist);
        StretchResult local{0.0, n, n};
        for (std::size_t t = exhaustive ? s + 1 : 0; t < n; ++t) {
            if (t == s) continue;
            const double direct = metric.distance(s, t);
            double ratio;
            if (direct > 0.0) {
                ratio = dist[t] / direct;
            } else {
                ratio = dist[t] > 0.0 ? kInfinity : 1.0;
            }
            const StretchResult candidate{ratio, std::min(s, t), std::max(s, t)};
            if (local.u == n || better(candidate, local)) local = candidate;
        }
        per_source[k] = local;
    });

    best = StretchResult{0.0, n, n};
    for (const StretchResult& r : per_source) {
        if (r.u == n) continue;
        if (best.u == n || better(r, best)) best = r;
    }
    return best;
}

double weight_under(const SpannerGraph& g, const MetricView& metric) {
    double total = 0.0;
    for (const Edge& e : g.edges()) total += metric.distance(e.u, e.v);
    return total;
}

double lightness(const SpannerGraph& g, const MetricView& metric) {
    if (metric.size() < 2) {
        throw std::invalid_argument("lightness is undefined for fewer than two points");
    }
    return lightness(g, metric, mst(metric).total_weight());
}

double lightness(const SpannerGraph& g, const MetricView& metric, double mst_weight) {
    if (metric.size() < 2) {
        throw std::invalid_argument("lightness is undefined for fewer than two points");
    }
    return weight_under(g, metric) / mst_weight;
}

int hop_diameter(const SpannerGraph& g, const PairSampling& sampling) {
    const std::size_t n = g.size();
    if (n < 2) return 0;
    require_connected(g);

    std::vector<std::vector<std::size_t>> adj(n);
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    const std::vector<std::size_t> sources = pick_sources(n, sampling);
    std::vector<int> eccentricity(sources.size(), 0);

    detail::parallel_for(sources.size(), [&](std::size_t k) {
        std::vector<int> depth(n, -1);
        std::vector<std::size_t> frontier{sources[k]};
        depth[sources[k]] = 0;
        int reached = 0;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const std::size_t u = frontier[head];
            reached = depth[u];
            for (std::size_t v : adj[u]) {
                if (depth[v] < 0) {
                    depth[v] = depth[u] + 1;
                    frontier.push_back(v);
                }
            }
        }
        eccentricity[k] = reached;
    });
    return *std::max_element(eccentricity.begin(), eccentricity.end());
}

int max_degree(const SpannerGraph& g) {
    std::vector<int> degree(g.size(), 0);
    for (const Edge& e : g.edges()) {
        ++degree[e.u];
        ++degree[e.v];
    }
    return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

AnalysisReport analyze(const SpannerGraph& g, const MetricView& metric, const PairSampling& sampling) {
    AnalysisReport report;
    report.exhaustive = sampling.exhaustive() || *sampling.sources >= g.size();
    report.total_weight = weight_under(g, metric);
    report.max_degree = max_degree(g);
    if (g.size() < 2) {
        return report;
    }
    report.mst_weight = mst(metric).total_weight();
    report.lightness = report.total_weight / report.mst_weight;
    report.stretch = max_stretch(g, metric, sampling);
    report.hop_diameter = hop_diameter(g, sampling);
    return report;
}

}  // namespace snowspan
