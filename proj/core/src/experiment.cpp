#include "snowspan/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "parallel.hpp"
#include "snowspan/io.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

namespace snowspan {

StageError::StageError(std::string stage, const std::string& cause)
    : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}

MetricSpec compose_metric(const std::string& base, double alpha) {
    MetricSpec spec = MetricSpec::parse(base);
    if (alpha == 1.0) return spec;
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1), or be 1 for no snowflake; got " + format_double(alpha));
    }
    return MetricSpec::snowflake(std::move(spec), alpha);
}

double SpannerSpec::resolved_gamma() const {
    if (gamma) return *gamma;
    if (epsilon) return default_gamma(*epsilon);
    throw std::invalid_argument("net-tree spanner needs epsilon or gamma");
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
    if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
std::optional<T> get_optional(const json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
    }
}

DatasetSpec parse_dataset(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("'dataset' must be an object");
    DatasetSpec spec;
    spec.kind = parse_dataset_kind(get_or<std::string>(doc, "kind", "grid"));
    spec.n = get_or<std::size_t>(doc, "n", 0);
    spec.dim = get_or<std::size_t>(doc, "dim", 2);
    spec.seed = get_optional<std::uint64_t>(doc, "seed");
    spec.path = get_or<std::string>(doc, "path", "");
    if (spec.kind == DatasetKind::file && spec.path.empty()) {
        throw std::invalid_argument("file datasets need 'path'");
    }
    if ((spec.kind == DatasetKind::uniform || spec.kind == DatasetKind::clustered) && !spec.seed) {
        throw std::invalid_argument(to_string(spec.kind) + " datasets need 'seed'");
    }
    return spec;
}

SpannerSpec parse_spanner(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("'spanner' must be an object");
    SpannerSpec spec;
    const auto type = get_or<std::string>(doc, "type", "net-tree");
    if (type == "net-tree") {
        spec.kind = SpannerSpec::Kind::net_tree;
    } else if (type == "greedy") {
        spec.kind = SpannerSpec::Kind::greedy;
    } else if (type == "none") {
        spec.kind = SpannerSpec::Kind::none;
    } else {
        throw std::invalid_argument("unknown spanner type '" + type + "' (expected net-tree, greedy or none)");
    }
    spec.epsilon = get_optional<double>(doc, "epsilon");
    spec.gamma = get_optional<double>(doc, "gamma");
    spec.t = get_or<double>(doc, "t", spec.t);
    if (spec.kind == SpannerSpec::Kind::net_tree) spec.resolved_gamma();
    return spec;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    return in_stage("config", [&] {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(e.what());
        }
        if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
        ExperimentConfig config;
        if (!doc.contains("dataset")) throw std::invalid_argument("missing 'dataset'");
        config.dataset = parse_dataset(doc.at("dataset"));
        config.metric = get_or<std::string>(doc, "metric", config.metric);
        config.alpha = get_or<double>(doc, "alpha", config.alpha);
        compose_metric(config.metric, config.alpha);
        config.rescale = get_or<bool>(doc, "rescale", false);
        if (doc.contains("spanner")) config.spanner = parse_spanner(doc.at("spanner"));
        else config.spanner.kind = SpannerSpec::Kind::none;
        config.analyze = get_or<bool>(doc, "analyze", true);
        if (auto mode = get_optional<std::string>(doc, "ledger")) config.ledger = parse_pivot_mode(*mode);
        if (doc.contains("pairs") && !doc.at("pairs").is_null()) {
            const json& pairs = doc.at("pairs");
            if (pairs.is_string()) {
                if (pairs.get<std::string>() != "all") throw std::invalid_argument("'pairs' must be \"all\" or a count");
            } else {
                const auto seed = get_optional<std::uint64_t>(doc, "pairs_seed");
                if (!seed) throw std::invalid_argument("sampled 'pairs' need 'pairs_seed'");
                config.pairs = PairSampling::sampled(pairs.get<std::size_t>(), *seed);
            }
        }
        config.out_dir = get_or<std::string>(doc, "out", ".");
        return config;
    });
}

bool RunOutcome::ok() const {
    return std::all_of(verifications.begin(), verifications.end(), [](const Verification& v) { return v.passed; });
}

RunOutcome run_experiment(const ExperimentConfig& config) {
    RunOutcome outcome;
    auto write = [&](const char* name, const std::string& text) {
        in_stage("output", [&] {
            const auto path = config.out_dir / name;
            write_text(path, text);
            outcome.written.push_back(path);
        });
    };
    auto verify = [&](std::string name, bool passed, std::string detail) {
        outcome.verifications.push_back({std::move(name), passed, std::move(detail)});
    };

    PointSet points = in_stage("dataset", [&] { return generate(config.dataset); });
    const MetricSpec spec = in_stage("metric", [&] {
        MetricSpec composed = compose_metric(config.metric, config.alpha);
        if (config.rescale && points.size() >= 2) points = rescale_to_unit_min(MetricView(points, composed));
        return composed;
    });
    write("points.json", points_to_json(points));
    const MetricView view(points, spec);

    if (points.size() < 2) {
        write("graph.json", graph_to_json(SpannerGraph(points.size(), spec.to_string())));
        outcome.notices.push_back("n = " + std::to_string(points.size()) +
                                  ": empty spanner, analyses and ledger skipped");
        return outcome;
    }

    std::optional<SpannerGraph> graph;
    std::optional<double> stretch_bound;
    std::optional<int> hop_bound;
    switch (config.spanner.kind) {
        case SpannerSpec::Kind::none:
            break;
        case SpannerSpec::Kind::net_tree: {
            const NetHierarchy h = in_stage("hierarchy", [&] { return build_hierarchy(view); });
            const HierarchyReport check = in_stage("hierarchy", [&] { return verify_hierarchy(h, view); });
            verify("hierarchy", check.ok(), check.ok() ? "" : check.first()->describe());
            write("hierarchy.json", hierarchy_to_json(h));
            graph = in_stage("spanner", [&] { return net_tree_spanner(h, view, config.spanner.resolved_gamma()); });
            if (config.spanner.epsilon) stretch_bound = 1.0 + *config.spanner.epsilon;
            hop_bound = 2 * h.ell() + 2;
            break;
        }
        case SpannerSpec::Kind::greedy:
            graph = in_stage("spanner", [&] { return greedy_spanner(view, config.spanner.t); });
            stretch_bound = config.spanner.t;
            break;
    }
    if (graph) write("graph.json", graph_to_json(*graph));

    if (graph && config.analyze) {
        const AnalysisReport report = in_stage("analysis", [&] { return analyze(*graph, view, config.pairs); });
        if (stretch_bound) {
            verify("max_stretch", report.stretch.stretch <= *stretch_bound,
                   "stretch " + format_double(report.stretch.stretch) + " vs bound " + format_double(*stretch_bound));
        }
        if (hop_bound) {
            verify("hop_diameter", report.hop_diameter <= *hop_bound,
                   "hop diameter " + std::to_string(report.hop_diameter) + " vs bound " + std::to_string(*hop_bound));
        }
        if (!report.exhaustive) outcome.notices.push_back("sampled sources: hop diameter is a lower bound");
        write("analysis.json", analysis_to_json(report, spec, config.pairs));
        outcome.analysis = report;
    }

    if (config.ledger) {
        const Ledger ledger = in_stage("ledger", [&] {
            if (!view.is_snowflake()) throw std::invalid_argument("the ledger needs a snowflaked metric (alpha < 1)");
            return run_ledger(view, *config.ledger);
        });
        for (const LedgerCheck& check : ledger.report.checks) {
            verify("ledger." + check.name, check.passed, check.detail);
        }
        write("ledger.json", ledger_to_json(ledger.report, &ledger.loads));
        outcome.ledger = ledger.report;
    }
    return outcome;
}

namespace {

struct SweepGroup {
    std::size_t n = 0;
    double alpha = 1.0;
    std::vector<SweepRow> rows;
};

void fail_rows(SweepGroup& group, const std::string& dataset, const std::vector<double>& epsilons,
               const std::string& status) {
    group.rows.clear();
    const std::size_t count = std::max<std::size_t>(epsilons.size(), 1);
    for (std::size_t k = 0; k < count; ++k) {
        SweepRow row;
        row.dataset = dataset;
        row.n = group.n;
        row.alpha = group.alpha;
        if (!epsilons.empty()) row.epsilon = epsilons[k];
        row.status = status;
        group.rows.push_back(std::move(row));
    }
}

void run_group(SweepGroup& group, const SweepConfig& config) {
    const std::string dataset = to_string(config.dataset.kind);
    const auto start = std::chrono::steady_clock::now();
    try {
        DatasetSpec data = config.dataset;
        data.n = group.n;
        const PointSet raw = generate(data);
        group.n = raw.size();
        if (raw.size() < 2) {
            fail_rows(group, dataset, config.epsilons, "skipped: n < 2");
            return;
        }
        const PointSet points = rescale_to_unit_min(MetricView(raw, MetricSpec::parse(config.metric)));
        const MetricView view(points, compose_metric(config.metric, group.alpha));

        SweepRow base;
        base.dataset = dataset;
        base.n = group.n;
        base.alpha = group.alpha;
        NetHierarchy hierarchy;
        double mst_weight = 0.0;
        if (view.is_snowflake()) {
            Ledger ledger = run_ledger(view, PivotMode::general);
            mst_weight = ledger.path.mst_weight;
            base.aux_over_mst = ledger.report.aux_weight / mst_weight;
            if (!ledger.report.ok()) {
                const auto failed = std::find_if(ledger.report.checks.begin(), ledger.report.checks.end(),
                                                 [](const LedgerCheck& c) { return !c.passed; });
                base.status = "ledger check failed: " + failed->name;
            }
            hierarchy = std::move(ledger.hierarchy);
        } else {
            hierarchy = build_hierarchy(view);
            mst_weight = mst(view).total_weight();
        }
        base.radii_over_mst = sum_of_radii(hierarchy).total / mst_weight;
        const double shared_time = seconds_since(start);

        if (config.epsilons.empty()) {
            if (config.timing) base.wall_time_s = shared_time;
            group.rows.push_back(base);
            return;
        }
        for (double epsilon : config.epsilons) {
            const auto cell_start = std::chrono::steady_clock::now();
            SweepRow row = base;
            row.epsilon = epsilon;
            try {
                row.gamma = default_gamma(epsilon);
                const SpannerGraph g = net_tree_spanner(hierarchy, view, *row.gamma);
                row.lightness = lightness(g, view, mst_weight);
                row.max_stretch = max_stretch(g, view, config.pairs).stretch;
                row.hop_diameter = hop_diameter(g, config.pairs);
                row.max_degree = max_degree(g);
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
            if (config.timing) row.wall_time_s = shared_time + seconds_since(cell_start);
            group.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        fail_rows(group, dataset, config.epsilons, std::string("error: ") + e.what());
    }
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

template <typename T>
std::string optional_field(const std::optional<T>& value) {
    if (!value) return "NA";
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*value);
    } else {
        return std::to_string(*value);
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    if (config.ns.empty() || config.alphas.empty()) {
        throw std::invalid_argument("sweep needs at least one n and one alpha");
    }
    for (double alpha : config.alphas) compose_metric(config.metric, alpha);

    std::vector<std::size_t> ns = config.ns;
    std::vector<double> alphas = config.alphas;
    SweepConfig sorted = config;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    std::sort(sorted.epsilons.begin(), sorted.epsilons.end());
    sorted.epsilons.erase(std::unique(sorted.epsilons.begin(), sorted.epsilons.end()), sorted.epsilons.end());

    std::vector<SweepGroup> groups;
    for (std::size_t n : ns) {
        for (double alpha : alphas) groups.push_back({n, alpha, {}});
    }
    detail::parallel_for(groups.size(), [&](std::size_t k) { run_group(groups[k], sorted); });

    std::vector<SweepRow> rows;
    for (auto& group : groups) {
        for (auto& row : group.rows) rows.push_back(std::move(row));
    }
    // File datasets ignore n, so the measured n can disagree with the grid order.
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.n, a.alpha, a.epsilon) < std::tie(b.n, b.alpha, b.epsilon);
    });
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepHeader << "\n";
    for (const SweepRow& row : rows) {
        out << csv_field(row.dataset) << ',' << row.n << ',' << format_double(row.alpha) << ','
            << optional_field(row.epsilon) << ',' << optional_field(row.gamma) << ','
            << optional_field(row.lightness) << ',' << optional_field(row.max_stretch) << ','
            << optional_field(row.hop_diameter) << ',' << optional_field(row.max_degree) << ','
            << optional_field(row.radii_over_mst) << ',' << optional_field(row.aux_over_mst) << ','
            << optional_field(row.wall_time_s) << ',' << csv_field(row.status) << "\n";
    }
    return out.str();
}

}  // namespace snowspan
