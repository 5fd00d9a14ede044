#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "snowspan/metric.hpp"
#include "snowspan/nets.hpp"

namespace snowspan {

/// Hamiltonian path Π = (v_1, ..., v_n) over a snowflake metric, obtained as
/// the preorder walk of its exact MST (root 0, children in ascending index).
struct HamiltonianPath {
    std::vector<std::size_t> order;
    double alpha = 0.5;
    std::vector<double> base_steps;       // δ(v_l, v_{l+1})
    std::vector<double> snowflake_steps;  // δ^α(v_l, v_{l+1})
    std::vector<double> prefix_base;      // prefix_base[k] = Σ_{l<k} base_steps[l]
    double weight_base = 0.0;
    double weight_snowflake = 0.0;
    double mst_weight = 0.0;  // ω(MST) under the snowflake metric

    std::size_t size() const noexcept { return order.size(); }
    /// δ_Π between path positions j <= k, from prefix sums.
    double path_distance(std::size_t j, std::size_t k) const { return prefix_base[k] - prefix_base[j]; }
};

HamiltonianPath hamiltonian_path(const MetricView& snowflake);

enum class PivotMode {
    general,         // threshold 2^{i-1} on snowflake distance from the previous pivot
    grid_intuition,  // fixed stride 4^i on a unit-spaced 1-D grid with alpha = 1/2
};

std::string to_string(PivotMode mode);
PivotMode parse_pivot_mode(const std::string& text);

/// Pivot positions (indices into the path order) for levels 0 .. ell-1.
struct PivotLevels {
    PivotMode mode = PivotMode::general;
    std::vector<std::vector<std::size_t>> positions;
    /// gaps[i][k]: snowflake distance between pivots k and k+1 of level i.
    std::vector<std::vector<double>> gaps;

    int levels() const noexcept { return static_cast<int>(positions.size()); }
};

/// ell defaults to hierarchy_depth() of the snowflake metric.
PivotLevels build_pivots(const HamiltonianPath& path, const MetricView& snowflake, PivotMode mode,
                         std::optional<int> ell = std::nullopt);

struct AuxEdge {
    std::size_t from = 0;  // path positions, from < to
    std::size_t to = 0;
    double weight = 0.0;
};

/// Union of the per-level pivot paths Π_i.
struct AuxiliaryGraph {
    PivotMode mode = PivotMode::general;
    std::vector<std::vector<AuxEdge>> levels;
    double total_weight = 0.0;  // W̃
};

/// General mode weighs every level-i edge 2^{i-1}; grid-intuition mode uses the
/// snowflake distance of its endpoints.
AuxiliaryGraph build_auxiliary_graph(const PivotLevels& pivots);

/// 2 + 2 / (1 - 2^{1 - 1/alpha}).
double charge_constant(double alpha);

struct LoadTable {
    double alpha = 0.5;
    double constant = 0.0;                   // C(alpha)
    std::vector<double> load;                // ξ per path edge
    std::vector<std::vector<double>> by_level;  // by_level[l][i]
    std::vector<double> eta;                 // δ^α(v_l, v_{l+1})
    std::vector<int> top_low_level;          // t = ceil(log2 eta)
    std::vector<double> low_load;            // levels [0, t]
    std::vector<double> high_load;           // levels [t+1, ell-1]
    double total = 0.0;                      // ξ(G̃), summed in path order
};

/// Each auxiliary edge (v_j, v_k) spreads its weight over the path edges it
/// spans in proportion δ(v_l, v_{l+1}) / δ_Π(v_j, v_k), with δ the base metric.
LoadTable compute_loads(const AuxiliaryGraph& aux, const HamiltonianPath& path, const MetricView& base);

struct LedgerLevel {
    int level = 0;
    std::size_t pivots = 0;
    std::size_t net_points = 0;
    std::size_t aux_edges = 0;
    double radii = 0.0;
};

struct LedgerCheck {
    std::string name;
    bool passed = true;
    double margin = 0.0;  // worst-case slack; negative means violated
    std::string detail;
};

struct LedgerReport {
    PivotMode mode = PivotMode::general;
    double alpha = 0.5;
    double constant = 0.0;
    std::vector<LedgerLevel> levels;
    double aux_weight = 0.0;     // W̃
    double radii_total = 0.0;    // R̃
    double total_load = 0.0;     // ξ(G̃)
    double path_weight = 0.0;    // ω(Π) under the snowflake metric
    double mst_weight = 0.0;
    double max_load_ratio = 0.0;  // max ξ / δ^α
    std::size_t max_load_edge = 0;
    std::vector<LedgerCheck> checks;

    bool ok() const;
    const LedgerCheck* check(const std::string& name) const;
};

/// Verifies the pivot segment bounds, the pivot/net counting bounds, the
/// W̃ >= R̃/4 bound, exact double counting, the per-edge load bound
/// ξ <= C(α) δ^α together with its two level-split parts, and
/// W̃ <= C(α) ω(Π). All inputs must come from one general-mode instance.
LedgerReport verify_ledger(const NetHierarchy& h, const HamiltonianPath& path, const PivotLevels& pivots,
                           const AuxiliaryGraph& aux, const LoadTable& loads, const MetricView& snowflake);

/// Checks for grid-intuition mode: double counting, every path-edge load at
/// most 2, and ξ(G̃) <= 2(n-1).
LedgerReport verify_grid_ledger(const HamiltonianPath& path, const PivotLevels& pivots, const AuxiliaryGraph& aux,
                                const LoadTable& loads);

/// Every stage of the charging pipeline for one snowflake instance.
struct Ledger {
    MetricSummary summary;
    NetHierarchy hierarchy;
    HamiltonianPath path;
    PivotLevels pivots;
    AuxiliaryGraph aux;
    LoadTable loads;
    LedgerReport report;
};

Ledger run_ledger(const MetricView& snowflake, PivotMode mode);

}  // namespace snowspan
