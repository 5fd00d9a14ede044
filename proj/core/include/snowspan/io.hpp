#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snowspan/analysis.hpp"
#include "snowspan/ledger.hpp"
#include "snowspan/lp_transfer.hpp"
#include "snowspan/metric.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

namespace snowspan {

/// Malformed input document; the message names the offending field.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point file: {"dim": d, "coords": [[..], ..]} or {"matrix": [[..], ..]}.
// Integral coordinates are written as JSON integers.
std::string points_to_json(const PointSet& points);
PointSet points_from_json(std::string_view text);

// Hierarchy: {"ell": ell, "levels": [[idx, ..], ..], "parents": [[point, level, parent], ..]}.
std::string hierarchy_to_json(const NetHierarchy& h);
NetHierarchy hierarchy_from_json(std::string_view text);

// Graph: {"n": n, "metric": "<spec>", "edges": [[u, v, w, level?], ..]}.
std::string graph_to_json(const SpannerGraph& g);
SpannerGraph graph_from_json(std::string_view text);

std::string analysis_to_json(const AnalysisReport& report, const MetricSpec& metric, const PairSampling& sampling);

/// `loads` adds the per-path-edge load list when given.
std::string ledger_to_json(const LedgerReport& report, const LoadTable* loads = nullptr);

std::string transfer_to_json(const TransferReport& report);
std::string search_to_json(const std::string& name, const SearchSummary& summary);

std::string read_text(const std::filesystem::path& path);
/// Truncates and writes; throws if the stream fails.
void write_text(const std::filesystem::path& path, std::string_view text);

PointSet load_points(const std::filesystem::path& path);

}  // namespace snowspan
