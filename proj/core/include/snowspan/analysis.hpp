#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "snowspan/metric.hpp"
#include "snowspan/spanner.hpp"

namespace snowspan {

/// Raised by analyses that need a connected graph; names one vertex on each
/// side of the cut.
class DisconnectedGraphError : public std::runtime_error {
public:
    DisconnectedGraphError(std::size_t reached, std::size_t unreached);

    std::size_t reached() const noexcept { return reached_; }
    std::size_t unreached() const noexcept { return unreached_; }

private:
    std::size_t reached_;
    std::size_t unreached_;
};

/// Which single-source searches an analysis runs: every vertex, or `sources`
/// distinct vertices drawn with a seeded generator.
struct PairSampling {
    std::optional<std::size_t> sources;
    std::uint64_t seed = 0;

    static PairSampling all() { return {}; }
    static PairSampling sampled(std::size_t sources, std::uint64_t seed) { return {sources, seed}; }
    bool exhaustive() const noexcept { return !sources.has_value(); }
};

struct StretchResult {
    double stretch = 1.0;
    std::size_t u = 0;
    std::size_t v = 0;
};

/// Max over pairs of d_G(u,v) / metric(u,v). Path lengths are recomputed under
/// `metric`, which need not be the metric the graph was built with.
/// Ties keep the lexicographically smallest pair.
StretchResult max_stretch(const SpannerGraph& g, const MetricView& metric,
                          const PairSampling& sampling = PairSampling::all());

/// Graph weight under `metric` divided by the MST weight under `metric`.
double lightness(const SpannerGraph& g, const MetricView& metric);
double lightness(const SpannerGraph& g, const MetricView& metric, double mst_weight);

/// Largest unweighted eccentricity. Exhaustive sampling gives the exact hop
/// diameter; sampled sources give a lower bound.
int hop_diameter(const SpannerGraph& g, const PairSampling& sampling = PairSampling::all());

int max_degree(const SpannerGraph& g);

/// Total weight of g with every edge re-measured under `metric`.
double weight_under(const SpannerGraph& g, const MetricView& metric);

struct AnalysisReport {
    StretchResult stretch;
    double lightness = 0.0;
    int hop_diameter = 0;
    int max_degree = 0;
    double total_weight = 0.0;
    double mst_weight = 0.0;
    bool exhaustive = true;
};

AnalysisReport analyze(const SpannerGraph& g, const MetricView& metric,
                       const PairSampling& sampling = PairSampling::all());

}  // namespace snowspan
