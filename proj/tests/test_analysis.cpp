#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "generators.hpp"
#include "oracles.hpp"
#include "snowspan/analysis.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

using namespace snowspan;

namespace {

SpannerGraph complete_graph(const MetricView& m) {
    SpannerGraph g(m.size(), m.spec().to_string());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) g.add_edge(i, j, m(i, j));
    }
    return g;
}

SpannerGraph path_graph(std::size_t n) {
    SpannerGraph g(n, "l2");
    for (std::size_t k = 0; k + 1 < n; ++k) g.add_edge(k, k + 1, 1.0);
    return g;
}

struct ThreadCap {
    explicit ThreadCap(const char* value) { setenv("SNOWSPAN_THREADS", value, 1); }
    ~ThreadCap() { unsetenv("SNOWSPAN_THREADS"); }
};

}  // namespace

TEST_CASE("complete graphs have stretch 1") {
    const PointSet cloud = gen::cube(4, 30, 3, 5.0);
    const MetricView m(cloud, MetricSpec::l2());
    CHECK(max_stretch(complete_graph(m), m).stretch == 1.0);
}

TEST_CASE("three-point path: stretch 1 under linf, sqrt 2 under l2") {
    const PointSet points = PointSet::from_coords({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
    SpannerGraph g(3, "linf");
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    const StretchResult inf = max_stretch(g, MetricView(points, MetricSpec::linf()));
    CHECK(inf.stretch == 1.0);
    const StretchResult two = max_stretch(g, MetricView(points, MetricSpec::l2()));
    CHECK(std::abs(two.stretch - std::sqrt(2.0)) <= 1e-12);
    CHECK(two.u == 0);
    CHECK(two.v == 2);
}

TEST_CASE("max_stretch matches an all-pairs oracle and names its witness") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const PointSet cloud = gen::unit_cloud(seed, 90, 2);
        const MetricView m(cloud, MetricSpec::l2());
        const SpannerGraph g = greedy_spanner(m, 1.4);
        const auto d = oracle::apsp(g, m);
        const StretchResult r = max_stretch(g, m);
        CHECK(r.stretch == doctest::Approx(oracle::stretch(g, m)).epsilon(1e-12));
        CHECK(r.u < r.v);
        CHECK(d[r.u][r.v] / m(r.u, r.v) == doctest::Approx(r.stretch).epsilon(1e-12));
    }
}

TEST_CASE("greedy spanner at t = 1.25 measures at most 1.25") {
    const PointSet cloud = gen::cube(8, 128, 2, 16.0);
    const MetricView m(cloud, MetricSpec::l2());
    CHECK(max_stretch(greedy_spanner(m, 1.25), m).stretch <= 1.25);
}

TEST_CASE("graph paths never undercut the metric") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const PointSet cloud = gen::unit_cloud(seed, 200, 2);
        for (const MetricSpec& spec : {MetricSpec::l2(), MetricSpec::snowflake(MetricSpec::l2(), 0.5)}) {
            const MetricView m(cloud, spec);
            const SpannerGraph g = net_tree_spanner(build_hierarchy(m), m, 4.0);
            const auto d = oracle::apsp(g, m);
            for (std::size_t i = 0; i < 200; ++i) {
                for (std::size_t j = i + 1; j < 200; ++j) CHECK(d[i][j] >= m(i, j) * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("stretch is measured under the named metric, not the build metric") {
    const PointSet cloud = gen::unit_cloud(3, 60, 3);
    const MetricView l2(cloud, MetricSpec::l2());
    const MetricView l1(cloud, MetricSpec::l1());
    const SpannerGraph g = greedy_spanner(l2, 1.1);
    CHECK(max_stretch(g, l1).stretch == doctest::Approx(oracle::stretch(g, l1)).epsilon(1e-12));
}

TEST_CASE("disconnected graphs are errors") {
    SpannerGraph g(4, "l2");
    g.add_edge(0, 1, 1.0);
    g.add_edge(2, 3, 1.0);
    const PointSet points = gen::grid(4);
    const MetricView m(points, MetricSpec::l2());
    try {
        max_stretch(g, m);
        FAIL("expected DisconnectedGraphError");
    } catch (const DisconnectedGraphError& e) {
        CHECK(e.reached() == 0);
        CHECK(e.unreached() == 2);
    }
    CHECK_THROWS_AS(hop_diameter(g), DisconnectedGraphError);
}

TEST_CASE("lightness") {
    SUBCASE("the MST itself") {
        const PointSet cloud = gen::cube(2, 50, 2, 9.0);
        const MetricView m(cloud, MetricSpec::l2());
        CHECK(lightness(mst(m), m) == 1.0);
    }
    SUBCASE("MST plus one edge as heavy as its heaviest") {
        const PointSet square = PointSet::from_coords({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
        const MetricView m(square, MetricSpec::l2());
        SpannerGraph g = mst(m);
        REQUIRE(g.total_weight() == 3.0);
        double w_max = 0.0;
        for (const Edge& e : g.edges()) w_max = std::max(w_max, e.w);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                if (!g.has_edge(i, j) && m(i, j) == w_max && g.edge_count() == 3) g.add_edge(i, j, m(i, j));
            }
        }
        REQUIRE(g.edge_count() == 4);
        CHECK(lightness(g, m) == doctest::Approx(1.0 + w_max / 3.0).epsilon(1e-15));
    }
    SUBCASE("fewer than two points") {
        const PointSet one = PointSet::from_coords({{0.0}});
        CHECK_THROWS_AS(lightness(SpannerGraph(1, "l2"), MetricView(one, MetricSpec::l2())), std::invalid_argument);
    }
}

TEST_CASE("hop diameter") {
    SpannerGraph edge(2, "l2");
    edge.add_edge(0, 1, 1.0);
    CHECK(hop_diameter(edge) == 1);
    CHECK(hop_diameter(path_graph(5)) == 4);
    CHECK(hop_diameter(SpannerGraph(1, "l2")) == 0);

    for (std::size_t n : {17u, 65u, 257u}) {
        const PointSet grid = gen::grid(n);
        const MetricView m(grid, MetricSpec::snowflake(MetricSpec::l2(), 0.5));
        const NetHierarchy h = build_hierarchy(m);
        const SpannerGraph g = net_tree_spanner(h, m, 2.0);
        const int hops = hop_diameter(g);
        CHECK(hops == oracle::hops(g));
        CHECK(hops <= 2 * h.ell() + 2);
        CHECK(hop_diameter(g, PairSampling::sampled(5, 3)) <= hops);
    }
}

TEST_CASE("max degree") {
    CHECK(max_degree(SpannerGraph(0, "l2")) == 0);
    CHECK(max_degree(SpannerGraph(3, "l2")) == 0);
    SpannerGraph star(5, "l2");
    for (std::size_t k = 1; k < 5; ++k) star.add_edge(0, k, 1.0);
    CHECK(max_degree(star) == 4);

    const PointSet cloud = gen::unit_cloud(6, 120, 2);
    const MetricView m(cloud, MetricSpec::l2());
    const SpannerGraph g = net_tree_spanner(build_hierarchy(m), m, 8.0);
    std::vector<int> degree(120, 0);
    for (const Edge& e : g.edges()) {
        ++degree[e.u];
        ++degree[e.v];
    }
    CHECK(max_degree(g) == *std::max_element(degree.begin(), degree.end()));
}

TEST_CASE("sampled analysis is seeded and bounded by the exhaustive one") {
    const PointSet cloud = gen::unit_cloud(12, 150, 2);
    const MetricView m(cloud, MetricSpec::l2());
    const SpannerGraph g = greedy_spanner(m, 1.3);
    const StretchResult all = max_stretch(g, m);
    const StretchResult a = max_stretch(g, m, PairSampling::sampled(10, 77));
    const StretchResult b = max_stretch(g, m, PairSampling::sampled(10, 77));
    CHECK(a.stretch == b.stretch);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.stretch <= all.stretch);
    // Sampling every vertex is the exhaustive computation.
    CHECK(max_stretch(g, m, PairSampling::sampled(150, 1)).stretch == all.stretch);
}

TEST_CASE("results do not depend on the worker count") {
    const PointSet cloud = gen::unit_cloud(13, 200, 2);
    const MetricView m(cloud, MetricSpec::snowflake(MetricSpec::l2(), 0.5));
    const SpannerGraph g = net_tree_spanner(build_hierarchy(m), m, 4.0);
    StretchResult serial;
    int serial_hops = 0;
    {
        ThreadCap cap("1");
        serial = max_stretch(g, m);
        serial_hops = hop_diameter(g);
    }
    ThreadCap cap("4");
    const StretchResult parallel = max_stretch(g, m);
    CHECK(parallel.stretch == serial.stretch);
    CHECK(parallel.u == serial.u);
    CHECK(parallel.v == serial.v);
    CHECK(hop_diameter(g) == serial_hops);
}

TEST_CASE("analyze bundles every measurement") {
    const PointSet cloud = gen::unit_cloud(14, 80, 2);
    const MetricView m(cloud, MetricSpec::l2());
    const SpannerGraph g = greedy_spanner(m, 1.2);
    const AnalysisReport r = analyze(g, m);
    CHECK(r.exhaustive);
    CHECK(r.stretch.stretch == max_stretch(g, m).stretch);
    CHECK(r.lightness == doctest::Approx(lightness(g, m)).epsilon(1e-15));
    CHECK(r.hop_diameter == hop_diameter(g));
    CHECK(r.max_degree == max_degree(g));
    CHECK(r.mst_weight == mst(m).total_weight());
    CHECK_FALSE(analyze(g, m, PairSampling::sampled(5, 1)).exhaustive);
}
