// snowspan: command-line front end for the spanner and charging toolkit.
//
// Exit codes: 0 success, 1 a requested verification failed, 2 usage or
// pipeline error (the failing stage is named on stderr).

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snowspan/analysis.hpp"
#include "snowspan/datasets.hpp"
#include "snowspan/experiment.hpp"
#include "snowspan/io.hpp"
#include "snowspan/ledger.hpp"
#include "snowspan/lp_transfer.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

using namespace snowspan;

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_text(out, text);
    }
}

PairSampling parse_pairs(const std::string& text, std::uint64_t seed) {
    if (text == "all") return PairSampling::all();
    std::size_t count = 0;
    try {
        std::size_t used = 0;
        count = std::stoul(text, &used);
        if (used != text.size() || count == 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("--pairs expects 'all' or a positive count, got '" + text + "'");
    }
    return PairSampling::sampled(count, seed);
}

double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity") return kInfinity;
    return std::stod(text);
}

struct Common {
    std::string points;
    std::string metric = "l2";
    double alpha = 1.0;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool points_required = true) {
    auto* opt = cmd->add_option("--points", c.points, "Point file (JSON)");
    if (points_required) opt->required();
    cmd->add_option("--metric", c.metric, "Base metric: l1, l2, linf, lp:<p>, matrix")->capture_default_str();
    cmd->add_option("--alpha", c.alpha, "Snowflake exponent in (0,1); 1 means none")->capture_default_str();
    cmd->add_option("--out", c.out, "Output path ('-' or omitted: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Light spanners for snowflake metrics: build, analyze and audit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a point file");
    DatasetSpec gen_spec;
    std::string gen_kind = "grid";
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "grid, uniform or clustered")->capture_default_str();
    gen->add_option("--n", gen_spec.n, "Number of points")->required();
    gen->add_option("--dim", gen_spec.dim, "Dimension (uniform, clustered)")->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "Seed (required for uniform and clustered)");
    gen->add_option("--out", gen_out, "Output path");

    // build
    auto* build = app.add_subcommand("build", "Build a spanner over a point file");
    Common build_c;
    add_common(build, build_c);
    std::string build_kind = "net-tree";
    std::optional<double> build_eps;
    std::optional<double> build_gamma;
    double build_t = 1.1;
    std::string build_hierarchy_out;
    bool build_rescale = false;
    build->add_option("--spanner", build_kind, "net-tree, greedy or mst")->capture_default_str();
    build->add_option("--epsilon", build_eps, "Net-tree target stretch 1+epsilon (sets gamma = max(2, 8/epsilon))");
    build->add_option("--gamma", build_gamma, "Net-tree cross-edge factor (overrides --epsilon)");
    build->add_option("--t", build_t, "Greedy stretch")->capture_default_str();
    build->add_option("--hierarchy-out", build_hierarchy_out, "Also write the net hierarchy here");
    build->add_flag("--rescale", build_rescale, "Rescale to unit minimum distance under the metric first");

    // analyze
    auto* an = app.add_subcommand("analyze", "Measure stretch, lightness, hop diameter and degree");
    Common an_c;
    add_common(an, an_c);
    std::string an_graph;
    std::string an_pairs = "all";
    std::uint64_t an_seed = 1;
    an->add_option("--graph", an_graph, "Graph file (JSON)")->required();
    an->add_option("--pairs", an_pairs, "'all' or a number of sampled sources")->capture_default_str();
    an->add_option("--seed", an_seed, "Seed for sampled sources")->capture_default_str();

    // ledger
    auto* led = app.add_subcommand("ledger", "Run and verify the charging scheme on a snowflake");
    Common led_c;
    add_common(led, led_c);
    led_c.alpha = 0.5;
    std::string led_mode = "general";
    led->add_option("--mode", led_mode, "general or grid-intuition")->capture_default_str();

    // sweep
    auto* sw = app.add_subcommand("sweep", "Grid of n x alpha x epsilon, one CSV row per cell");
    SweepConfig sw_cfg;
    std::string sw_kind = "grid";
    std::string sw_pairs = "16";
    std::uint64_t sw_seed = 1;
    std::string sw_out;
    sw->add_option("--kind", sw_kind, "grid, uniform or clustered")->capture_default_str();
    sw->add_option("--n", sw_cfg.ns, "Sizes")->required()->delimiter(',');
    sw->add_option("--alpha", sw_cfg.alphas, "Exponents; 1 means no snowflake")->required()->delimiter(',');
    sw->add_option("--epsilon", sw_cfg.epsilons, "Spanner epsilons (omit for metric-only rows)")->delimiter(',');
    sw->add_option("--dim", sw_cfg.dataset.dim, "Dimension (uniform, clustered)")->capture_default_str();
    sw->add_option("--metric", sw_cfg.metric, "Base metric")->capture_default_str();
    sw->add_option("--pairs", sw_pairs, "'all' or a number of sampled sources")->capture_default_str();
    sw->add_option("--seed", sw_seed, "Dataset and sampling seed")->capture_default_str();
    sw->add_flag("--timing", sw_cfg.timing, "Fill wall_time_s (makes output nondeterministic)");
    sw->add_option("--out", sw_out, "CSV path");

    // lp-check
    auto* lp = app.add_subcommand("lp-check", "Random search for inequality violations, or an l2 -> lp transfer run");
    std::string lp_points;
    double lp_t = 1.1;
    std::string lp_p = "1";
    std::size_t lp_scalar = 100000;
    std::size_t lp_vector = 10000;
    std::size_t lp_dim = 3;
    std::uint64_t lp_seed = 1;
    std::string lp_out;
    lp->add_option("--points", lp_points, "Point file: run the transfer experiment instead of the searches");
    lp->add_option("--t", lp_t, "Greedy l2 stretch")->capture_default_str();
    lp->add_option("--p", lp_p, "Target norm (number or inf)")->capture_default_str();
    lp->add_option("--scalar-trials", lp_scalar, "In-range scalar tuples to check")->capture_default_str();
    lp->add_option("--vector-trials", lp_vector, "In-range vector families to check")->capture_default_str();
    lp->add_option("--dim", lp_dim, "Vector dimension")->capture_default_str();
    lp->add_option("--seed", lp_seed, "Search seed")->capture_default_str();
    lp->add_option("--out", lp_out, "Output path");

    // run
    auto* run = app.add_subcommand("run", "Execute a JSON experiment config");
    std::string run_config;
    run->add_option("--config", run_config, "Experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    }

    try {
        if (*gen) {
            gen_spec.kind = parse_dataset_kind(gen_kind);
            if (gen_spec.kind == DatasetKind::file) throw std::invalid_argument("gen cannot produce kind 'file'");
            emit(gen_out, points_to_json(generate(gen_spec)));
            return 0;
        }

        if (*build) {
            PointSet points = load_points(build_c.points);
            const MetricSpec spec = compose_metric(build_c.metric, build_c.alpha);
            if (build_rescale && points.size() >= 2) points = rescale_to_unit_min(MetricView(points, spec));
            const MetricView view(points, spec);
            SpannerGraph g;
            if (build_kind == "net-tree") {
                SpannerSpec s;
                s.epsilon = build_eps;
                s.gamma = build_gamma;
                const NetHierarchy h = build_hierarchy(view);
                if (!build_hierarchy_out.empty()) write_text(build_hierarchy_out, hierarchy_to_json(h));
                g = net_tree_spanner(h, view, s.resolved_gamma());
            } else if (build_kind == "greedy") {
                g = greedy_spanner(view, build_t);
            } else if (build_kind == "mst") {
                g = mst(view);
            } else {
                throw std::invalid_argument("unknown spanner '" + build_kind + "'");
            }
            emit(build_c.out, graph_to_json(g));
            return 0;
        }

        if (*an) {
            const PointSet points = load_points(an_c.points);
            const MetricSpec spec = compose_metric(an_c.metric, an_c.alpha);
            const SpannerGraph g = graph_from_json(read_text(an_graph));
            if (g.size() != points.size()) {
                throw std::invalid_argument("graph has " + std::to_string(g.size()) + " vertices but the point file has " +
                                            std::to_string(points.size()));
            }
            const PairSampling pairs = parse_pairs(an_pairs, an_seed);
            const AnalysisReport report = analyze(g, MetricView(points, spec), pairs);
            emit(an_c.out, analysis_to_json(report, spec, pairs));
            return 0;
        }

        if (*led) {
            const PointSet points = load_points(led_c.points);
            const MetricSpec spec = compose_metric(led_c.metric, led_c.alpha);
            const Ledger ledger = run_ledger(MetricView(points, spec), parse_pivot_mode(led_mode));
            emit(led_c.out, ledger_to_json(ledger.report, &ledger.loads));
            for (const LedgerCheck& check : ledger.report.checks) {
                if (!check.passed) std::cerr << "check failed: " << check.name << ": " << check.detail << "\n";
            }
            return ledger.report.ok() ? 0 : kVerificationFailed;
        }

        if (*sw) {
            sw_cfg.dataset.kind = parse_dataset_kind(sw_kind);
            sw_cfg.dataset.seed = sw_seed;
            sw_cfg.pairs = parse_pairs(sw_pairs, sw_seed);
            emit(sw_out, sweep_to_csv(run_sweep(sw_cfg)));
            return 0;
        }

        if (*lp) {
            if (!lp_points.empty()) {
                const TransferReport report = transfer_experiment(load_points(lp_points), lp_t, parse_p(lp_p));
                emit(lp_out, transfer_to_json(report));
                return report.stretch_ok() && report.weight_ok() ? 0 : kVerificationFailed;
            }
            const SearchSummary scalar = search_scalar_lemma(lp_scalar, lp_seed);
            const SearchSummary vector = search_vector_lemma(lp_vector, lp_dim, lp_seed);
            emit(lp_out, search_to_json("scalar", scalar) + search_to_json("vector", vector));
            for (const auto& w : scalar.witnesses) std::cerr << "scalar violation: " << w << "\n";
            for (const auto& w : vector.witnesses) std::cerr << "vector violation: " << w << "\n";
            return scalar.violations == 0 && vector.violations == 0 ? 0 : kVerificationFailed;
        }

        if (*run) {
            const ExperimentConfig config = ExperimentConfig::from_json(read_text(run_config));
            const RunOutcome outcome = run_experiment(config);
            for (const auto& notice : outcome.notices) std::cerr << "notice: " << notice << "\n";
            for (const auto& v : outcome.verifications) {
                if (!v.passed) std::cerr << "verification failed: " << v.name << ": " << v.detail << "\n";
            }
            for (const auto& path : outcome.written) std::cout << path.string() << "\n";
            return outcome.ok() ? 0 : kVerificationFailed;
        }
    } catch (const StageError& e) {
        std::cerr << "error in stage " << e.stage() << ": " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
