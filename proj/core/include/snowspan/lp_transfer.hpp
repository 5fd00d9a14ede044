#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snowspan/metric.hpp"

namespace snowspan {

/// v split against a reference w: parallel = (<v,w>/<w,w>) w, perpendicular = v - parallel.
struct Decomposition {
    std::vector<double> parallel;
    std::vector<double> perpendicular;
    std::vector<double> reference;
};

Decomposition decompose(std::span<const double> v, std::span<const double> w);

/// max{d^{1/2-1/p}, d^{1/p-1/2}}; p = infinity uses 1/p = 0.
double dprime(std::size_t d, double p);

enum class LemmaStatus { holds, violated, out_of_range };

std::string to_string(LemmaStatus status);

/// Scalar inequality used in the vector lemma: for 0 <= eps0 <= eps <= eps1,
/// eps <= 1/4, a, b >= 0 and eps1 a + eps0 b <= eps (a + b), it must follow that
/// eps1 a + sqrt(eps0) b <= sqrt(eps) (a + b).
struct ScalarLemmaResult {
    LemmaStatus status = LemmaStatus::out_of_range;
    double hypothesis_margin = 0.0;  // eps (a+b) - (eps1 a + eps0 b)
    double conclusion_margin = 0.0;  // sqrt(eps)(a+b) - (eps1 a + sqrt(eps0) b)
};

ScalarLemmaResult check_scalar_lemma(double eps0, double eps, double eps1, double a, double b);

/// Decomposes every v against w, defines eps = Σ|v|_2 / |Σ v_par|_2 - 1 and,
/// when 0 <= eps <= 1/4, checks Σ|v_par| <= (1+eps)|Σ v_par| and
/// Σ|v_perp| <= 3 (1+eps) sqrt(eps) |Σ v_par|.
struct VectorLemmaResult {
    LemmaStatus status = LemmaStatus::out_of_range;
    double epsilon = 0.0;
    double parallel_sum = 0.0;       // Σ |v_par|
    double perpendicular_sum = 0.0;  // Σ |v_perp|
    double parallel_norm = 0.0;      // |Σ v_par|
    double parallel_margin = 0.0;
    double perpendicular_margin = 0.0;
};

VectorLemmaResult check_vector_lemma(const std::vector<std::vector<double>>& vectors, std::span<const double> w);

struct SearchSummary {
    std::size_t trials = 0;     // in-range instances checked
    std::size_t rejected = 0;   // generated instances outside the lemma's range
    std::size_t violations = 0;
    double worst_margin = 0.0;
    std::vector<std::string> witnesses;  // first few violations, verbatim
};

/// Random search over in-range tuples until `trials` have been checked.
SearchSummary search_scalar_lemma(std::size_t trials, std::uint64_t seed);

/// Random small-perpendicular vector families in R^dim.
SearchSummary search_vector_lemma(std::size_t trials, std::size_t dim, std::uint64_t seed);

/// Relative slack granted to floating-point evaluation of the lemma inequalities.
inline constexpr double kLemmaRoundingSlack = 1e-12;

struct TransferReport {
    double t = 1.0;
    double epsilon = 0.0;       // t - 1, used in the bounds
    double epsilon_l2 = 0.0;    // measured l2 stretch - 1
    std::size_t dim = 0;
    double p = 2.0;
    double d_prime = 1.0;
    double stretch_p = 1.0;
    std::size_t witness_u = 0;
    std::size_t witness_v = 0;
    double bound_p = 1.0;       // (1+eps)(1 + 3 d' sqrt(eps))
    double c = 1.0;             // w_2(E) / w_2(MST_2)
    double weight_ratio_p = 1.0;  // w_p(E) / w_p(MST_p)
    double weight_bound = 1.0;  // c d'
    std::size_t edges = 0;

    bool stretch_ok() const noexcept { return stretch_p <= bound_p; }
    bool weight_ok() const noexcept { return weight_ratio_p <= weight_bound; }
};

/// Builds a greedy t-spanner under l2 and re-measures stretch and weight under lp.
TransferReport transfer_experiment(const PointSet& points, double t, double p);

}  // namespace snowspan
