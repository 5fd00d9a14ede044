#include "snowspan/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "snowspan/spanner.hpp"

namespace snowspan {

namespace {

void require_snowflake(const MetricView& metric, const char* where) {
    if (!metric.is_snowflake()) {
        throw std::invalid_argument(std::string(where) + ": metric '" + metric.spec().to_string() +
                                    "' is not a snowflake");
    }
}

std::string format(double value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Hamiltonian path

HamiltonianPath hamiltonian_path(const MetricView& snowflake) {
    require_snowflake(snowflake, "hamiltonian_path");
    const std::size_t n = snowflake.size();
    if (n == 0) {
        throw std::invalid_argument("hamiltonian_path: empty point set");
    }
    HamiltonianPath path;
    path.alpha = snowflake.alpha();
    path.prefix_base.assign(1, 0.0);
    if (n == 1) {
        path.order = {0};
        return path;
    }

    const SpannerGraph tree = mst(snowflake);
    path.mst_weight = tree.total_weight();
    // The lightest MST edge is the closest pair; snowflaking is monotone.
    for (const Edge& e : tree.edges()) {
        if (e.w < 1.0 - kUnitMinTolerance) {
            std::ostringstream msg;
            msg << "hamiltonian_path: points " << e.u << " and " << e.v << " are " << e.w
                << " apart; minimum distance must be 1 (call rescale_to_unit_min)";
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<std::vector<std::size_t>> children(n);
    for (const Edge& e : tree.edges()) {
        children[e.u].push_back(e.v);
        children[e.v].push_back(e.u);
    }
    for (auto& list : children) std::sort(list.begin(), list.end());

    std::vector<bool> visited(n, false);
    std::vector<std::size_t> stack{0};
    path.order.reserve(n);
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        if (visited[u]) continue;
        visited[u] = true;
        path.order.push_back(u);
        for (auto it = children[u].rbegin(); it != children[u].rend(); ++it) {
            if (!visited[*it]) stack.push_back(*it);
        }
    }

    const MetricView base = snowflake.base();
    path.base_steps.reserve(n - 1);
    path.snowflake_steps.reserve(n - 1);
    path.prefix_base.reserve(n);
    for (std::size_t l = 0; l + 1 < n; ++l) {
        const double d = base.distance(path.order[l], path.order[l + 1]);
        const double s = snowflake.distance(path.order[l], path.order[l + 1]);
        path.base_steps.push_back(d);
        path.snowflake_steps.push_back(s);
        path.weight_base += d;
        path.weight_snowflake += s;
        path.prefix_base.push_back(path.prefix_base.back() + d);
    }
    return path;
}

// ---------------------------------------------------------------------------
// Pivots

std::string to_string(PivotMode mode) {
    return mode == PivotMode::general ? "general" : "grid-intuition";
}

PivotMode parse_pivot_mode(const std::string& text) {
    if (text == "general") return PivotMode::general;
    if (text == "grid-intuition") return PivotMode::grid_intuition;
    throw std::invalid_argument("unknown pivot mode '" + text + "' (expected general or grid-intuition)");
}

namespace {

void require_unit_grid(const HamiltonianPath& path, const MetricView& snowflake) {
    const PointSet& points = snowflake.points();
    const std::string why = "grid-intuition mode needs a unit-spaced 1-D grid in natural order with alpha = 1/2: ";
    if (snowflake.alpha() != 0.5) {
        throw std::invalid_argument(why + "alpha is " + format(snowflake.alpha()));
    }
    if (!points.has_coords() || points.dim() != 1) {
        throw std::invalid_argument(why + "points are not one-dimensional coordinates");
    }
    const double origin = points.point(0)[0];
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points.point(k)[0] - origin != static_cast<double>(k)) {
            throw std::invalid_argument(why + "point " + std::to_string(k) + " is off the grid");
        }
        if (path.order[k] != k) {
            throw std::invalid_argument(why + "path is not in natural order");
        }
    }
}

}  // namespace

PivotLevels build_pivots(const HamiltonianPath& path, const MetricView& snowflake, PivotMode mode,
                         std::optional<int> ell) {
    require_snowflake(snowflake, "build_pivots");
    const std::size_t n = path.size();
    const int levels = ell ? *ell : hierarchy_depth(summarize(snowflake), n);
    if (mode == PivotMode::grid_intuition) {
        require_unit_grid(path, snowflake);
    }

    PivotLevels pivots;
    pivots.mode = mode;
    pivots.positions.resize(static_cast<std::size_t>(std::max(levels, 0)));
    pivots.gaps.resize(pivots.positions.size());
    auto snow = [&](std::size_t a, std::size_t b) { return snowflake.distance(path.order[a], path.order[b]); };

    for (int i = 0; i < levels; ++i) {
        auto& chosen = pivots.positions[static_cast<std::size_t>(i)];
        if (i == 0) {
            chosen.resize(n);
            for (std::size_t k = 0; k < n; ++k) chosen[k] = k;
        } else if (mode == PivotMode::general) {
            const double threshold = std::ldexp(1.0, i - 1);
            chosen.push_back(0);
            for (std::size_t k = 1; k < n; ++k) {
                if (snow(chosen.back(), k) >= threshold) chosen.push_back(k);
            }
        } else {
            const std::size_t stride = std::size_t{1} << (2 * i);
            for (std::size_t k = 0; k < n; k += stride) chosen.push_back(k);
            if (chosen.back() != n - 1) chosen.push_back(n - 1);
        }
        auto& gaps = pivots.gaps[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k + 1 < chosen.size(); ++k) {
            gaps.push_back(snow(chosen[k], chosen[k + 1]));
        }
    }
    return pivots;
}

// ---------------------------------------------------------------------------
// Auxiliary graph and loads

AuxiliaryGraph build_auxiliary_graph(const PivotLevels& pivots) {
    AuxiliaryGraph aux;
    aux.mode = pivots.mode;
    aux.levels.resize(pivots.positions.size());
    for (std::size_t i = 0; i < pivots.positions.size(); ++i) {
        const auto& chosen = pivots.positions[i];
        const double level_weight = std::ldexp(1.0, static_cast<int>(i) - 1);
        for (std::size_t k = 0; k + 1 < chosen.size(); ++k) {
            const double w = pivots.mode == PivotMode::general ? level_weight : pivots.gaps[i][k];
            aux.levels[i].push_back({chosen[k], chosen[k + 1], w});
            aux.total_weight += w;
        }
    }
    return aux;
}

double charge_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("charge_constant: alpha must lie in (0,1)");
    }
    return 2.0 + 2.0 / (1.0 - std::exp2(1.0 - 1.0 / alpha));
}

LoadTable compute_loads(const AuxiliaryGraph& aux, const HamiltonianPath& path, const MetricView& base) {
    const std::size_t n = path.size();
    const std::size_t edges = n > 0 ? n - 1 : 0;
    const std::size_t level_count = aux.levels.size();

    LoadTable table;
    table.alpha = path.alpha;
    table.constant = charge_constant(path.alpha);
    table.load.assign(edges, 0.0);
    table.by_level.assign(edges, std::vector<double>(level_count, 0.0));

    std::vector<double> step(edges);
    for (std::size_t l = 0; l < edges; ++l) {
        step[l] = base.distance(path.order[l], path.order[l + 1]);
    }

    for (std::size_t i = 0; i < level_count; ++i) {
        for (const AuxEdge& e : aux.levels[i]) {
            double span = 0.0;
            for (std::size_t l = e.from; l < e.to; ++l) span += step[l];
            if (!(span > 0.0)) {
                throw std::invalid_argument("compute_loads: path positions " + std::to_string(e.from) + " and " +
                                            std::to_string(e.to) + " have zero path distance (duplicate points)");
            }
            for (std::size_t l = e.from; l < e.to; ++l) {
                table.by_level[l][i] += e.weight * step[l] / span;
            }
        }
    }

    table.eta.resize(edges);
    table.top_low_level.resize(edges);
    table.low_load.assign(edges, 0.0);
    table.high_load.assign(edges, 0.0);
    for (std::size_t l = 0; l < edges; ++l) {
        const double eta = std::pow(step[l], path.alpha);
        const int t = ceil_log2(eta);
        table.eta[l] = eta;
        table.top_low_level[l] = t;
        for (std::size_t i = 0; i < level_count; ++i) {
            const double part = table.by_level[l][i];
            table.load[l] += part;
            (static_cast<int>(i) <= t ? table.low_load[l] : table.high_load[l]) += part;
        }
        table.total += table.load[l];
    }
    return table;
}

// ---------------------------------------------------------------------------
// Verification

bool LedgerReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const LedgerCheck& c) { return c.passed; });
}

const LedgerCheck* LedgerReport::check(const std::string& name) const {
    for (const LedgerCheck& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

// Tracks the worst slack of a family of inequalities lhs <= rhs (or <).
class SlackTracker {
public:
    SlackTracker(std::string name, bool strict = false) : name_(std::move(name)), strict_(strict) {}

    void observe(double lhs, double rhs, const std::string& where) {
        const double slack = rhs - lhs;
        const bool ok = strict_ ? lhs < rhs : lhs <= rhs;
        if (!seen_ || slack < margin_) {
            margin_ = slack;
            where_ = where;
        }
        seen_ = true;
        if (!ok && passed_) {
            passed_ = false;
            failure_ = where + ": " + format(lhs) + (strict_ ? " >= " : " > ") + format(rhs);
        }
    }

    LedgerCheck finish() const {
        LedgerCheck check;
        check.name = name_;
        check.passed = passed_;
        check.margin = seen_ ? margin_ : 0.0;
        check.detail = passed_ ? (seen_ ? "tightest at " + where_ : "vacuous") : failure_;
        return check;
    }

private:
    std::string name_;
    bool strict_;
    bool seen_ = false;
    bool passed_ = true;
    double margin_ = 0.0;
    std::string where_;
    std::string failure_;
};

std::string at_level(int i) { return "level " + std::to_string(i); }

std::string at_edge(std::size_t l) { return "path edge " + std::to_string(l); }

void fill_common(LedgerReport& report, const HamiltonianPath& path, const AuxiliaryGraph& aux,
                 const LoadTable& loads) {
    report.alpha = path.alpha;
    report.constant = loads.constant;
    report.aux_weight = aux.total_weight;
    report.total_load = loads.total;
    report.path_weight = path.weight_snowflake;
    report.mst_weight = path.mst_weight;
    for (std::size_t l = 0; l < loads.load.size(); ++l) {
        const double ratio = loads.load[l] / loads.eta[l];
        if (ratio > report.max_load_ratio) {
            report.max_load_ratio = ratio;
            report.max_load_edge = l;
        }
    }
}

LedgerCheck double_counting(const AuxiliaryGraph& aux, const LoadTable& loads) {
    LedgerCheck check;
    check.name = "load_double_counting";
    const double tolerance = 1e-9 * std::max(aux.total_weight, 1.0);
    const double gap = std::abs(loads.total - aux.total_weight);
    check.passed = gap <= tolerance;
    check.margin = tolerance - gap;
    check.detail = "sum of loads " + format(loads.total) + " vs W~ " + format(aux.total_weight);
    return check;
}

}  // namespace

LedgerReport verify_ledger(const NetHierarchy& h, const HamiltonianPath& path, const PivotLevels& pivots,
                           const AuxiliaryGraph& aux, const LoadTable& loads, const MetricView& snowflake) {
    if (pivots.mode != PivotMode::general || aux.mode != PivotMode::general) {
        throw std::invalid_argument("verify_ledger: lemma checks need general-mode pivots");
    }
    require_snowflake(snowflake, "verify_ledger");
    const int levels = pivots.levels();
    if (path.size() >= 2 && h.ell() != levels) {
        throw std::invalid_argument("verify_ledger: hierarchy has " + std::to_string(h.ell()) +
                                    " levels but pivots have " + std::to_string(levels));
    }
    if (aux.levels.size() != static_cast<std::size_t>(levels) || loads.load.size() + 1 != std::max<std::size_t>(path.size(), 1)) {
        throw std::invalid_argument("verify_ledger: inputs do not come from the same instance");
    }

    LedgerReport report;
    report.mode = PivotMode::general;
    fill_common(report, path, aux, loads);
    for (int i = 0; i < levels; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        report.levels.push_back({i, pivots.positions[idx].size(), h.level(i).size(), aux.levels[idx].size(),
                                 static_cast<double>(h.level(i).size()) * std::ldexp(1.0, i)});
        report.radii_total += report.levels.back().radii;
    }

    auto snow = [&](std::size_t a, std::size_t b) { return snowflake.distance(path.order[a], path.order[b]); };

    // Inside a pivot segment everything is within 2^{i-1} of the
    // segment's pivot and within 2^i of everything else in the segment.
    SlackTracker near_pivot("pivot_segment_near", true);
    SlackTracker segment_diameter("pivot_segment_diameter", true);
    for (int i = 0; i < levels; ++i) {
        const auto& chosen = pivots.positions[static_cast<std::size_t>(i)];
        const double half = std::ldexp(1.0, i - 1);
        const double full = std::ldexp(1.0, i);
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            const std::size_t begin = chosen[k];
            const std::size_t end = k + 1 < chosen.size() ? chosen[k + 1] : path.size();
            for (std::size_t j = begin + 1; j < end; ++j) {
                near_pivot.observe(snow(begin, j), half, at_level(i) + ", position " + std::to_string(j));
                for (std::size_t jj = j + 1; jj < end; ++jj) {
                    segment_diameter.observe(snow(j, jj), full,
                                             at_level(i) + ", positions " + std::to_string(j) + "/" +
                                                 std::to_string(jj));
                }
            }
        }
    }
    report.checks.push_back(near_pivot.finish());
    report.checks.push_back(segment_diameter.finish());

    SlackTracker domination("aux_weight_dominated");
    for (int i = 0; i < levels; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        for (std::size_t k = 0; k < aux.levels[idx].size(); ++k) {
            domination.observe(aux.levels[idx][k].weight, pivots.gaps[idx][k],
                               at_level(i) + ", edge " + std::to_string(k));
        }
    }
    report.checks.push_back(domination.finish());

    // |Ẽ_i| = |P_i| - 1 >= |P_i| / 2 >= |Ñ_i| / 2; counts are exact in double.
    SlackTracker enough_pivots("pivots_vs_net_points");
    SlackTracker edge_count("aux_edge_count");
    SlackTracker two_pivots("two_pivots_per_level");
    SlackTracker enough_edges("aux_edges_vs_net_points");
    for (const LedgerLevel& level : report.levels) {
        const auto pivots_count = static_cast<double>(level.pivots);
        const auto net_count = static_cast<double>(level.net_points);
        const auto edges = static_cast<double>(level.aux_edges);
        enough_pivots.observe(net_count, pivots_count, at_level(level.level));
        edge_count.observe(std::abs(edges - (pivots_count - 1.0)), 0.0, at_level(level.level));
        two_pivots.observe(2.0, pivots_count, at_level(level.level));
        enough_edges.observe(net_count / 2.0, edges, at_level(level.level));
    }
    report.checks.push_back(enough_pivots.finish());
    report.checks.push_back(edge_count.finish());
    report.checks.push_back(two_pivots.finish());
    report.checks.push_back(enough_edges.finish());

    SlackTracker vs_radii("aux_weight_vs_radii");
    vs_radii.observe(report.radii_total / 4.0, report.aux_weight, "total");
    report.checks.push_back(vs_radii.finish());

    report.checks.push_back(double_counting(aux, loads));

    const double high_factor = 2.0 / (1.0 - std::exp2(1.0 - 1.0 / path.alpha));
    SlackTracker edge_load("edge_load_bound");
    SlackTracker low_levels("edge_load_low_levels", true);
    SlackTracker high_levels("edge_load_high_levels");
    for (std::size_t l = 0; l < loads.load.size(); ++l) {
        edge_load.observe(loads.load[l], loads.constant * loads.eta[l], at_edge(l));
        low_levels.observe(loads.low_load[l], 2.0 * loads.eta[l], at_edge(l));
        high_levels.observe(loads.high_load[l], high_factor * loads.eta[l], at_edge(l));
    }
    report.checks.push_back(edge_load.finish());
    report.checks.push_back(low_levels.finish());
    report.checks.push_back(high_levels.finish());

    SlackTracker path_bound("aux_weight_vs_path");
    path_bound.observe(report.aux_weight, loads.constant * path.weight_snowflake, "total");
    report.checks.push_back(path_bound.finish());

    SlackTracker doubling("path_vs_mst");
    doubling.observe(path.weight_snowflake, 2.0 * path.mst_weight, "total");
    report.checks.push_back(doubling.finish());
    return report;
}

LedgerReport verify_grid_ledger(const HamiltonianPath& path, const PivotLevels& pivots, const AuxiliaryGraph& aux,
                                const LoadTable& loads) {
    if (pivots.mode != PivotMode::grid_intuition || aux.mode != PivotMode::grid_intuition) {
        throw std::invalid_argument("verify_grid_ledger: needs grid-intuition pivots");
    }
    LedgerReport report;
    report.mode = PivotMode::grid_intuition;
    fill_common(report, path, aux, loads);
    for (int i = 0; i < pivots.levels(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        report.levels.push_back({i, pivots.positions[idx].size(), 0, aux.levels[idx].size(), 0.0});
    }
    report.checks.push_back(double_counting(aux, loads));

    SlackTracker edge_bound("grid_edge_load");
    for (std::size_t l = 0; l < loads.load.size(); ++l) {
        edge_bound.observe(loads.load[l], 2.0, at_edge(l));
    }
    report.checks.push_back(edge_bound.finish());

    SlackTracker total_bound("grid_total_load");
    total_bound.observe(loads.total, 2.0 * static_cast<double>(loads.load.size()), "total");
    report.checks.push_back(total_bound.finish());
    return report;
}

Ledger run_ledger(const MetricView& snowflake, PivotMode mode) {
    require_snowflake(snowflake, "run_ledger");
    Ledger ledger;
    ledger.summary = summarize(snowflake);
    ledger.path = hamiltonian_path(snowflake);
    const int depth = hierarchy_depth(ledger.summary, snowflake.size());
    ledger.pivots = build_pivots(ledger.path, snowflake, mode, depth);
    ledger.aux = build_auxiliary_graph(ledger.pivots);
    ledger.loads = compute_loads(ledger.aux, ledger.path, snowflake.base());
    if (mode == PivotMode::general) {
        ledger.hierarchy = build_hierarchy(snowflake, ledger.summary);
        ledger.report = verify_ledger(ledger.hierarchy, ledger.path, ledger.pivots, ledger.aux, ledger.loads,
                                      snowflake);
    } else {
        ledger.report = verify_grid_ledger(ledger.path, ledger.pivots, ledger.aux, ledger.loads);
    }
    return ledger;
}

}  // namespace snowspan
