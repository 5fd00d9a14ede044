#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snowspan/analysis.hpp"
#include "snowspan/datasets.hpp"
#include "snowspan/ledger.hpp"
#include "snowspan/metric.hpp"

namespace snowspan {

/// A pipeline stage failed; what() reads "<stage>: <cause>".
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& cause);
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// `base` snowflaked by `alpha`. alpha = 1 means no snowflake and returns the
/// base metric unchanged; other values must lie in (0, 1).
MetricSpec compose_metric(const std::string& base, double alpha);

struct SpannerSpec {
    enum class Kind { none, net_tree, greedy };

    Kind kind = Kind::net_tree;
    std::optional<double> epsilon;  // net-tree: gamma defaults from this
    std::optional<double> gamma;    // net-tree: overrides epsilon's default
    double t = 1.1;                 // greedy

    /// Net-tree gamma actually used.
    double resolved_gamma() const;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    std::string metric = "l2";
    double alpha = 1.0;
    bool rescale = false;  // rescale_to_unit_min under the composed metric first
    SpannerSpec spanner;
    bool analyze = true;
    std::optional<PivotMode> ledger;
    PairSampling pairs;
    std::filesystem::path out_dir = ".";

    /// {"dataset": {"kind", "n", "dim", "seed", "path"}, "metric", "alpha",
    ///  "rescale", "spanner": {"type": "net-tree"|"greedy"|"none", "epsilon",
    ///  "gamma", "t"}, "analyze", "ledger": "general"|"grid-intuition",
    ///  "pairs": "all"|k, "pairs_seed", "out"}
    static ExperimentConfig from_json(std::string_view text);
};

struct Verification {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct RunOutcome {
    std::vector<Verification> verifications;
    std::vector<std::string> notices;
    std::vector<std::filesystem::path> written;
    std::optional<AnalysisReport> analysis;
    std::optional<LedgerReport> ledger;

    bool ok() const;
};

/// dataset -> metric -> spanner -> analysis -> ledger, writing points.json,
/// hierarchy.json (net-tree only), graph.json, analysis.json and ledger.json
/// into out_dir. Throws StageError naming the failing stage.
RunOutcome run_experiment(const ExperimentConfig& config);

struct SweepConfig {
    DatasetSpec dataset;  // n is taken from `ns`
    std::vector<std::size_t> ns;
    std::vector<double> alphas;    // 1.0 = no snowflake
    std::vector<double> epsilons;  // empty: no spanner, metric columns only
    std::string metric = "l2";
    PairSampling pairs = PairSampling::sampled(16, 1);
    bool timing = false;
};

struct SweepRow {
    std::string dataset;
    std::size_t n = 0;
    double alpha = 1.0;
    std::optional<double> epsilon;
    std::optional<double> gamma;
    std::optional<double> lightness;
    std::optional<double> max_stretch;
    std::optional<int> hop_diameter;
    std::optional<int> max_degree;
    std::optional<double> radii_over_mst;
    std::optional<double> aux_over_mst;  // snowflaked cells only
    std::optional<double> wall_time_s;   // only with timing
    std::string status = "ok";
};

/// One row per (n, alpha, epsilon) cell, sorted by (n, alpha, epsilon). Cell
/// failures land in `status`; the sweep itself only throws on a bad grid.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr std::string_view kSweepHeader =
    "dataset,n,alpha,epsilon,gamma,lightness,max_stretch,hop_diameter,max_degree,radii_over_mst,aux_over_mst,"
    "wall_time_s,status";

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Shortest decimal string that round-trips.
std::string format_double(double value);

}  // namespace snowspan
