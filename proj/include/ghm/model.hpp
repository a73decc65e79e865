#pragma once

#include "ghm/graph.hpp"
#include "ghm/pattern.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ghm {

enum class Normalization {
    none,
    /// Feature for a pattern on m vertices divided by n^m.
    density,
};

const char * to_string(Normalization n);
Normalization normalization_from_string(const std::string & s);

/// Per-feature affine scaling used inside the least-squares solve. Kept in
/// the model for provenance; predictions use the unscaled coefficients.
struct FeatureScaling {
    std::vector<double> mean;
    std::vector<double> scale;
};

/// Target values of one graph on a list of pairwise-distinct k-tuples.
struct TupleTargets {
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<double> values;
};

/// Training pairs for either task kind. An invariant dataset fills
/// `targets`; an equivariant one fills `tuple_targets` (one entry per graph).
struct Dataset {
    std::vector<WeightedGraph> graphs;
    std::vector<double> targets;
    std::vector<TupleTargets> tuple_targets;

    bool equivariant() const noexcept { return !tuple_targets.empty(); }
    std::size_t size() const noexcept { return graphs.size(); }
    /// Common vertex count. Throws MixedSizeError on non-uniform n.
    std::size_t vertex_count() const;
    /// Tuple length of an equivariant dataset; 0 for an invariant one.
    std::size_t arity() const;
    /// Checks every dataset invariant; throws ContractError / MixedSizeError.
    void validate() const;
};

/// A finite linear combination  W -> intercept + sum_F a_F hom(F, W + shift I)
/// (labeled variant: hom_x). Patterns are pairwise non-isomorphic.
class HomModel {
public:
    HomModel(std::vector<LabeledPattern> patterns, std::vector<double> coefficients, double shift = 2.0,
             double intercept = 0.0, Normalization normalization = Normalization::none, FeatureScaling scaling = {});

    const std::vector<LabeledPattern> & patterns() const noexcept { return patterns_; }
    const std::vector<double> & coefficients() const noexcept { return coefficients_; }
    double shift() const noexcept { return shift_; }
    double intercept() const noexcept { return intercept_; }
    Normalization normalization() const noexcept { return normalization_; }
    const FeatureScaling & scaling() const noexcept { return scaling_; }
    /// Number of labeled vertices shared by every pattern (0: invariant model).
    std::size_t arity() const noexcept { return patterns_.front().k(); }

private:
    std::vector<LabeledPattern> patterns_;
    std::vector<double> coefficients_;
    double shift_;
    double intercept_;
    Normalization normalization_;
    FeatureScaling scaling_;
};

/// [hom(F, W + shift I)] in pattern order.
std::vector<double> featurize(const WeightedGraph & g, std::span<const Pattern> patterns, double shift = 2.0,
                              Normalization normalization = Normalization::none);

/// [hom_x(F, W + shift I)] in pattern order.
std::vector<double> featurize_labeled(const WeightedGraph & g, std::span<const std::size_t> x,
                                      std::span<const LabeledPattern> patterns, double shift = 2.0,
                                      Normalization normalization = Normalization::none);

/// Row-major feature matrix for many graphs, computed in parallel.
std::vector<double> featurize_batch(std::span<const WeightedGraph> graphs, std::span<const LabeledPattern> patterns,
                                    double shift = 2.0, Normalization normalization = Normalization::none,
                                    std::size_t threads = 0);

struct FitOptions {
    double shift = 2.0;
    double ridge = 0.0;
    bool intercept = true;
    Normalization normalization = Normalization::none;
    std::size_t threads = 0;  // 0: hardware concurrency
};

struct FitResult {
    HomModel model;
    double sse;                  ///< sum of squared training residuals
    double relative_residual;    ///< ||prediction - y|| / ||y||
    std::size_t rank;            ///< numerical rank of the scaled design
    std::size_t rows;
};

/// Least squares on standardized columns with a rank-revealing solve; the
/// minimum-norm solution is returned on rank deficiency.
FitResult fit(const Dataset & d, std::span<const Pattern> patterns, const FitOptions & options = {});

/// One shared coefficient vector over every (graph, tuple) row.
FitResult fit_equivariant(const Dataset & d, std::span<const LabeledPattern> patterns,
                          const FitOptions & options = {});

double predict(const HomModel & model, const WeightedGraph & g);

/// Prediction at a single distinct k-tuple.
double predict_at(const HomModel & model, const WeightedGraph & g, std::span<const std::size_t> x);

struct TupleValue {
    std::vector<std::size_t> tuple;
    double value;
};

/// Prediction at every pairwise-distinct k-tuple, in lexicographic order.
std::vector<TupleValue> predict_equivariant(const HomModel & model, const WeightedGraph & g);

/// Every pairwise-distinct k-tuple over n vertices, lexicographically.
std::vector<std::vector<std::size_t>> distinct_tuples(std::size_t n, std::size_t k);

inline constexpr double default_separation_tolerance = 1e-6;

struct Separation {
    LabeledPattern pattern;
    double hom1;
    double hom2;
};

/// First atlas pattern (increasing m, then canonical order) whose shifted
/// homomorphism numbers differ on the two graphs, if any up to max_m.
std::optional<Separation> separate(const WeightedGraph & g1, const WeightedGraph & g2, std::size_t max_m,
                                   double shift = 2.0, double tolerance = default_separation_tolerance);

std::optional<Separation> separate_labeled(const LabeledGraph & g1, const LabeledGraph & g2, std::size_t max_m,
                                           double shift = 2.0, double tolerance = default_separation_tolerance);

/// The comparison used by separate: exact when both values come from
/// integer matrices small enough for exact double arithmetic, relative
/// otherwise.
bool hom_values_differ(double a, double b, bool exact, double tolerance);

}  // namespace ghm
