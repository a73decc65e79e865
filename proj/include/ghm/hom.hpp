#pragma once

#include "ghm/graph.hpp"
#include "ghm/pattern.hpp"
#include "ghm/tree_decomposition.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ghm {

/// Default budget for the brute-force engine, in elementary multiplications.
inline constexpr double default_work_cap = 1e8;

/// Default bound on a single dynamic-programming table.
inline constexpr double default_table_cap = 1e9;

/// Sum over every map pi: V(F) -> V(G) (not necessarily injective) of
///   prod_i W(pi(i), pi(i)) * prod_{(i,j) in E(F)} W(pi(i), pi(j)).
/// Direct enumeration of all n^m maps; throws CapExceeded when
/// n^m (m + |E|) exceeds work_cap.
double hom_brute(const Pattern & f, const WeightedGraph & g, double work_cap = default_work_cap);

/// As hom_brute, restricted to maps sending pattern vertex i to label x_i
/// for i < k.
double hom_labeled_brute(const LabeledPattern & f, const LabeledGraph & g, double work_cap = default_work_cap);

/// Reusable evaluation plan for one pattern: a minimum-width tree
/// decomposition with every vertex and arc factor assigned to exactly one
/// node (the shallowest bag that contains it).
class CountingPlan {
public:
    explicit CountingPlan(const Pattern & f, std::size_t pinned = 0);
    explicit CountingPlan(const LabeledPattern & f) : CountingPlan(f.pattern(), f.k()) {}

    const Pattern & pattern() const noexcept { return pattern_; }
    std::size_t pinned() const noexcept { return pinned_; }
    const TreeDecomposition & decomposition() const noexcept { return td_; }

    /// Generalised contraction over maps rho: V(F) -> [q] with rho(i) = pins[i]
    /// for i < pinned():
    ///   sum prod_i vertex[rho(i)] * prod_{(i,j)} edge[rho(i) * q + rho(j)],
    /// where the vertex factor of a pinned vertex is dropped unless
    /// weight_pinned is set.
    double contract(std::size_t q, std::span<const double> edge, std::span<const double> vertex,
                    std::span<const std::size_t> pins, bool weight_pinned,
                    double table_cap = default_table_cap) const;

    /// Homomorphism number with the first pinned() vertices sent to pins.
    double evaluate(const WeightedGraph & g, std::span<const std::size_t> pins = {}) const;

private:
    struct Child {
        std::size_t node;
        std::vector<std::size_t> parent_locals;  // the child's separator, as parent-local indices
    };
    struct Node {
        std::vector<std::size_t> bag;
        std::vector<std::size_t> vertex_factors;               // local indices
        std::vector<std::pair<std::size_t, std::size_t>> arcs;  // local index pairs
        std::vector<Child> children;
        std::vector<std::size_t> separator;  // local indices shared with the parent
    };

    Pattern pattern_;
    std::size_t pinned_;
    TreeDecomposition td_;
    std::vector<Node> nodes_;  // children precede parents
};

/// Homomorphism number via tree-decomposition dynamic programming.
double hom(const Pattern & f, const WeightedGraph & g);

/// k-labeled homomorphism number via the same dynamic program with labeled
/// vertices restricted to their pinned image.
double hom_labeled(const LabeledPattern & f, const LabeledGraph & g);

/// hom(f, W + cI).
double hom_shifted(const Pattern & f, const WeightedGraph & g, double c = 2.0);

/// hom_x(f, W + cI).
double hom_labeled_shifted(const LabeledPattern & f, const LabeledGraph & g, double c = 2.0);

}  // namespace ghm
