#include "doctest.h"

#include <filesystem>

#include "generators.hpp"
#include "json.hpp"
#include "snowspan/io.hpp"
#include "snowspan/ledger.hpp"
#include "snowspan/lp_transfer.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

using namespace snowspan;
using nlohmann::json;

TEST_CASE("grid point files hold exact integers") {
    const std::string text = points_to_json(gen::grid(3));
    CHECK(text == "{\n  \"dim\": 1,\n  \"coords\": [\n    [\n      1\n    ],\n    [\n      2\n    ],\n    [\n      3\n"
                  "    ]\n  ]\n}\n");
}

TEST_CASE("point files round-trip bit for bit") {
    const PointSet cloud = gen::unit_cloud(8, 50, 3);
    const PointSet back = points_from_json(points_to_json(cloud));
    CHECK(back.dim() == 3);
    CHECK(back.data() == cloud.data());

    const PointSet matrix = PointSet::from_matrix(gen::matrix_metric(2, 6));
    const PointSet m2 = points_from_json(points_to_json(matrix));
    REQUIRE(m2.is_matrix());
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) CHECK(m2.entry(i, j) == matrix.entry(i, j));
    }
}

TEST_CASE("malformed point files name the problem") {
    CHECK_THROWS_WITH_AS(points_from_json("{"), doctest::Contains("point file"), FormatError);
    CHECK_THROWS_WITH_AS(points_from_json("{\"coords\": []}"), doctest::Contains("'dim'"), FormatError);
    CHECK_THROWS_WITH_AS(points_from_json("{\"dim\": 2, \"coords\": [[1, 2], [3]]}"), doctest::Contains("row 1"),
                         FormatError);
    CHECK_THROWS_WITH_AS(points_from_json("{\"dim\": \"two\", \"coords\": []}"), doctest::Contains("bad field"),
                         FormatError);
}

TEST_CASE("hierarchy files round-trip") {
    const PointSet cloud = gen::unit_cloud(4, 70, 2);
    const NetHierarchy h = build_hierarchy(MetricView(cloud, MetricSpec::l2()));
    const NetHierarchy back = hierarchy_from_json(hierarchy_to_json(h));
    CHECK(back.ell() == h.ell());
    CHECK(back.levels() == h.levels());
    CHECK(back.parent_table() == h.parent_table());
    CHECK(hierarchy_to_json(back) == hierarchy_to_json(h));

    const json doc = json::parse(hierarchy_to_json(h));
    CHECK(doc.at("ell") == h.ell());
    CHECK(doc.at("n") == 70);
}

TEST_CASE("malformed hierarchy files") {
    CHECK_THROWS_AS(hierarchy_from_json("{\"ell\": 2, \"levels\": [[0, 1]], \"parents\": []}"), FormatError);
    CHECK_THROWS_AS(hierarchy_from_json("{\"ell\": 1, \"levels\": [[0, 1], [0]], \"parents\": [[0, 1]]}"),
                    FormatError);
    CHECK_THROWS_AS(hierarchy_from_json("{\"ell\": 1, \"levels\": [[0, 1], [0]], \"parents\": [[5, 0, 0]]}"),
                    FormatError);
}

TEST_CASE("graph files round-trip, levels included") {
    const PointSet cloud = gen::unit_cloud(6, 60, 2);
    const MetricView m(cloud, MetricSpec::snowflake(MetricSpec::l2(), 0.5));
    const SpannerGraph g = net_tree_spanner(build_hierarchy(m), m, 4.0);
    const SpannerGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.size() == g.size());
    CHECK(back.metric_tag() == "snowflake:l2:0.5");
    REQUIRE(back.edge_count() == g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        CHECK(back.edges()[k].u == g.edges()[k].u);
        CHECK(back.edges()[k].v == g.edges()[k].v);
        CHECK(back.edges()[k].w == g.edges()[k].w);
        CHECK(back.edges()[k].level == g.edges()[k].level);
    }
    CHECK(graph_to_json(back) == graph_to_json(g));

    const SpannerGraph plain = greedy_spanner(MetricView(cloud, MetricSpec::l2()), 1.5);
    CHECK(json::parse(graph_to_json(plain)).at("edges").at(0).size() == 3);
}

TEST_CASE("malformed graph files") {
    CHECK_THROWS_AS(graph_from_json("{\"n\": 3, \"edges\": []}"), FormatError);
    CHECK_THROWS_AS(graph_from_json("{\"n\": 3, \"metric\": \"l2\", \"edges\": {}}"), FormatError);
    CHECK_THROWS_AS(graph_from_json("{\"n\": 3, \"metric\": \"l2\", \"edges\": [[0, 1]]}"), FormatError);
}

TEST_CASE("ledger report fields") {
    const PointSet grid = gen::grid(17);
    const Ledger ledger =
        run_ledger(MetricView(grid, MetricSpec::snowflake(MetricSpec::l2(), 0.5)), PivotMode::grid_intuition);
    const json doc = json::parse(ledger_to_json(ledger.report, &ledger.loads));
    CHECK(doc.at("mode") == "grid-intuition");
    CHECK(doc.at("aux_weight") == 24);
    CHECK(doc.at("total_load") == 24);
    CHECK(doc.at("C_alpha") == 6);
    CHECK(doc.at("path_edge_loads").size() == 16);
    CHECK(doc.at("path_edge_loads").at(0) == 1.5);
    CHECK(doc.at("ok") == true);
    REQUIRE(doc.at("levels").size() == 2);
    CHECK(doc.at("levels").at(1).at("pivots") == 5);
    CHECK(doc.at("levels").at(1).at("aux_edges") == 4);
    CHECK_FALSE(json::parse(ledger_to_json(ledger.report)).contains("path_edge_loads"));
}

TEST_CASE("transfer and search reports") {
    const TransferReport r = transfer_experiment(gen::unit_cloud(2, 30, 2), 1.1, kInfinity);
    const json doc = json::parse(transfer_to_json(r));
    CHECK(doc.at("p") == "inf");
    CHECK(doc.at("stretch_ok") == r.stretch_ok());
    CHECK(doc.at("stretch_bound").get<double>() == r.bound_p);

    SearchSummary s;
    s.trials = 10;
    s.rejected = 3;
    const json search = json::parse(search_to_json("scalar", s));
    CHECK(search.at("check") == "scalar");
    CHECK(search.at("violations") == 0);
    CHECK(search.at("witnesses").empty());
}

TEST_CASE("files on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "snowspan_test_io" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    const auto path = dir / "points.json";
    write_text(path, points_to_json(gen::grid(5)));
    CHECK(load_points(path).size() == 5);
    CHECK(read_text(path) == points_to_json(gen::grid(5)));
    CHECK_THROWS(read_text(dir / "missing.json"));
    std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("net counts appear only in general-mode ledger reports") {
    const PointSet grid = gen::grid(17);
    const MetricView m(grid, MetricSpec::snowflake(MetricSpec::l2(), 0.5));
    const json intuition = json::parse(ledger_to_json(run_ledger(m, PivotMode::grid_intuition).report));
    CHECK_FALSE(intuition.contains("radii_total"));
    CHECK_FALSE(intuition.at("levels").at(0).contains("net_points"));
    const json general = json::parse(ledger_to_json(run_ledger(m, PivotMode::general).report));
    CHECK(general.at("levels").at(1).at("net_points").get<int>() >= 1);
    CHECK(general.contains("radii_total"));
}
