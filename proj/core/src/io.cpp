#include "snowspan/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace snowspan {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Doubles that are exact integers of moderate size serialise as integers.
ordered_json number(double x) {
    if (std::isfinite(x) && std::floor(x) == x && std::fabs(x) < 9007199254740992.0) {
        return static_cast<std::int64_t>(x);
    }
    return x;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

json parse_document(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

template <typename T>
T field(const json& doc, const char* key, const char* what) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw FormatError(std::string(what) + ": missing field '" + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": bad field '" + key + "': " + e.what());
    }
}

}  // namespace

std::string points_to_json(const PointSet& points) {
    ordered_json doc;
    if (points.is_matrix()) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < points.size(); ++j) row.push_back(number(points.entry(i, j)));
            rows.push_back(std::move(row));
        }
        doc["matrix"] = std::move(rows);
        return dump(doc);
    }
    doc["dim"] = points.dim();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (double x : points.point(i)) row.push_back(number(x));
        rows.push_back(std::move(row));
    }
    doc["coords"] = std::move(rows);
    return dump(doc);
}

PointSet points_from_json(std::string_view text) {
    const char* what = "point file";
    const json doc = parse_document(text, what);
    if (doc.is_object() && doc.contains("matrix")) {
        return PointSet::from_matrix(field<std::vector<std::vector<double>>>(doc, "matrix", what));
    }
    const auto dim = field<std::size_t>(doc, "dim", what);
    auto rows = field<std::vector<std::vector<double>>>(doc, "coords", what);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            throw FormatError("point file: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " coordinates, expected " + std::to_string(dim));
        }
    }
    if (rows.empty()) return PointSet::from_flat(dim, {});
    return PointSet::from_coords(rows);
}

std::string hierarchy_to_json(const NetHierarchy& h) {
    ordered_json doc;
    doc["ell"] = h.ell();
    doc["n"] = h.size();
    doc["levels"] = h.levels();
    ordered_json parents = ordered_json::array();
    const auto& table = h.parent_table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto level = h.level(static_cast<int>(i));
        for (std::size_t k = 0; k < table[i].size(); ++k) {
            parents.push_back(ordered_json::array({level[k], i, table[i][k]}));
        }
    }
    doc["parents"] = std::move(parents);
    return dump(doc);
}

NetHierarchy hierarchy_from_json(std::string_view text) {
    const char* what = "hierarchy file";
    const json doc = parse_document(text, what);
    const auto ell = field<int>(doc, "ell", what);
    auto levels = field<std::vector<std::vector<std::size_t>>>(doc, "levels", what);
    if (ell < 0 || static_cast<std::size_t>(ell) + 1 != levels.size()) {
        throw FormatError("hierarchy file: 'ell' disagrees with the number of levels");
    }
    std::size_t n = levels.empty() ? 0 : levels.front().size();
    if (doc.contains("n")) n = field<std::size_t>(doc, "n", what);

    std::vector<std::vector<std::size_t>> parents(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) parents[i].assign(levels[i].size(), 0);
    for (const auto& triple : field<std::vector<std::vector<std::size_t>>>(doc, "parents", what)) {
        if (triple.size() != 3) throw FormatError("hierarchy file: parent entries are [point, level, parent]");
        const std::size_t point = triple[0];
        const std::size_t level = triple[1];
        if (level >= parents.size()) throw FormatError("hierarchy file: parent level out of range");
        const auto& members = levels[level];
        const auto it = std::lower_bound(members.begin(), members.end(), point);
        if (it == members.end() || *it != point) {
            throw FormatError("hierarchy file: parent given for point " + std::to_string(point) +
                              " which is not in level " + std::to_string(level));
        }
        parents[level][static_cast<std::size_t>(it - members.begin())] = triple[2];
    }
    return NetHierarchy(n, std::move(levels), std::move(parents));
}

std::string graph_to_json(const SpannerGraph& g) {
    ordered_json doc;
    doc["n"] = g.size();
    doc["metric"] = g.metric_tag();
    ordered_json edges = ordered_json::array();
    for (const Edge& e : g.edges()) {
        ordered_json row = ordered_json::array({e.u, e.v, number(e.w)});
        if (e.level) row.push_back(*e.level);
        edges.push_back(std::move(row));
    }
    doc["edges"] = std::move(edges);
    return dump(doc);
}

SpannerGraph graph_from_json(std::string_view text) {
    const char* what = "graph file";
    const json doc = parse_document(text, what);
    SpannerGraph g(field<std::size_t>(doc, "n", what), field<std::string>(doc, "metric", what));
    const json& edges = doc.at("edges");
    if (!edges.is_array()) throw FormatError("graph file: 'edges' must be an array");
    for (const json& row : edges) {
        if (!row.is_array() || row.size() < 3 || row.size() > 4) {
            throw FormatError("graph file: edges are [u, v, w] or [u, v, w, level]");
        }
        std::optional<int> level;
        if (row.size() == 4) level = row[3].get<int>();
        g.add_edge(row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<double>(), level);
    }
    return g;
}

std::string analysis_to_json(const AnalysisReport& report, const MetricSpec& metric, const PairSampling& sampling) {
    ordered_json doc;
    doc["metric"] = metric.to_string();
    doc["max_stretch"] = report.stretch.stretch;
    doc["stretch_witness"] = ordered_json::array({report.stretch.u, report.stretch.v});
    doc["lightness"] = report.lightness;
    doc["hop_diameter"] = report.hop_diameter;
    doc["max_degree"] = report.max_degree;
    doc["total_weight"] = report.total_weight;
    doc["mst_weight"] = report.mst_weight;
    doc["exhaustive"] = report.exhaustive;
    if (sampling.sources) {
        doc["sampled_sources"] = *sampling.sources;
        doc["seed"] = sampling.seed;
    }
    return dump(doc);
}

std::string ledger_to_json(const LedgerReport& report, const LoadTable* loads) {
    ordered_json doc;
    doc["mode"] = to_string(report.mode);
    doc["alpha"] = report.alpha;
    doc["C_alpha"] = report.constant;
    // Grid-intuition mode builds no hierarchy, so it has no net counts.
    const bool general = report.mode == PivotMode::general;
    ordered_json levels = ordered_json::array();
    for (const LedgerLevel& level : report.levels) {
        ordered_json row;
        row["i"] = level.level;
        row["pivots"] = level.pivots;
        if (general) row["net_points"] = level.net_points;
        row["aux_edges"] = level.aux_edges;
        if (general) row["radii"] = number(level.radii);
        levels.push_back(std::move(row));
    }
    doc["levels"] = std::move(levels);
    doc["aux_weight"] = number(report.aux_weight);
    if (general) doc["radii_total"] = number(report.radii_total);
    doc["total_load"] = number(report.total_load);
    doc["path_weight"] = report.path_weight;
    doc["mst_weight"] = report.mst_weight;
    doc["max_load_ratio"] = report.max_load_ratio;
    doc["max_load_edge"] = report.max_load_edge;
    if (loads) {
        ordered_json values = ordered_json::array();
        for (double x : loads->load) values.push_back(number(x));
        doc["path_edge_loads"] = std::move(values);
    }
    ordered_json checks = ordered_json::array();
    for (const LedgerCheck& check : report.checks) {
        ordered_json row;
        row["name"] = check.name;
        row["passed"] = check.passed;
        row["margin"] = check.margin;
        if (!check.detail.empty()) row["detail"] = check.detail;
        checks.push_back(std::move(row));
    }
    doc["checks"] = std::move(checks);
    doc["ok"] = report.ok();
    return dump(doc);
}

std::string transfer_to_json(const TransferReport& report) {
    ordered_json doc;
    doc["t"] = report.t;
    doc["epsilon"] = report.epsilon;
    doc["epsilon_l2"] = report.epsilon_l2;
    doc["dim"] = report.dim;
    doc["p"] = std::isinf(report.p) ? ordered_json("inf") : ordered_json(report.p);
    doc["d_prime"] = report.d_prime;
    doc["edges"] = report.edges;
    doc["stretch_p"] = report.stretch_p;
    doc["stretch_witness"] = ordered_json::array({report.witness_u, report.witness_v});
    doc["stretch_bound"] = report.bound_p;
    doc["stretch_ok"] = report.stretch_ok();
    doc["c"] = report.c;
    doc["weight_ratio_p"] = report.weight_ratio_p;
    doc["weight_bound"] = report.weight_bound;
    doc["weight_ok"] = report.weight_ok();
    return dump(doc);
}

std::string search_to_json(const std::string& name, const SearchSummary& summary) {
    ordered_json doc;
    doc["check"] = name;
    doc["trials"] = summary.trials;
    doc["rejected"] = summary.rejected;
    doc["violations"] = summary.violations;
    doc["worst_margin"] = summary.worst_margin;
    doc["witnesses"] = summary.witnesses;
    return dump(doc);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

PointSet load_points(const std::filesystem::path& path) { return points_from_json(read_text(path)); }

}  // namespace snowspan
