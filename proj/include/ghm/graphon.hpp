#pragma once

#include "ghm/graph.hpp"
#include "ghm/pattern.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ghm {

/// Step-function graphon: [0,1] is cut into q blocks of measure mu(a), and
/// the value on block pair (a, b) is B(a, b). Asymmetric values are allowed.
class StepGraphon {
public:
    /// Graphon values must lie in [0,1].
    StepGraphon(std::size_t q, std::vector<double> values, std::vector<double> mu);
    /// Uniform block measures.
    StepGraphon(std::size_t q, std::vector<double> values);

    /// Signed step function with values in [-1,1], as arises from differences.
    static StepGraphon signed_kernel(std::size_t q, std::vector<double> values, std::vector<double> mu);

    static StepGraphon constant(double p);

    std::size_t q() const noexcept { return q_; }
    double operator()(std::size_t a, std::size_t b) const noexcept { return values_[a * q_ + b]; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> mu() const noexcept { return mu_; }
    bool is_signed() const noexcept { return signed_; }
    bool uniform() const noexcept;

    /// Rows and columns relabeled by s, together with the block measures.
    StepGraphon permute_blocks(const Permutation & s) const;

    friend StepGraphon operator-(const StepGraphon & a, const StepGraphon & b);
    friend StepGraphon operator*(double c, const StepGraphon & a);
    friend StepGraphon operator+(const StepGraphon & a, const StepGraphon & b);

private:
    StepGraphon(std::size_t q, std::vector<double> values, std::vector<double> mu, bool is_signed);

    std::size_t q_;
    std::vector<double> values_;
    std::vector<double> mu_;
    bool signed_;
};

/// t(F, W): sum over block maps rho of prod_{(i,j)} B(rho(i), rho(j)) prod_i mu(rho(i)).
/// No diagonal vertex factor.
double density(const Pattern & f, const StepGraphon & w);

/// t_x(F, W) with labeled vertex i placed inside block blocks[i]; only the
/// unlabeled vertices are integrated.
double density_labeled(const LabeledPattern & f, const StepGraphon & w, std::span<const std::size_t> blocks);

inline constexpr std::size_t default_cut_norm_cap = 12;
inline constexpr std::size_t default_cut_distance_cap = 8;

/// sup over S, T of |int_{S x T} W|. Exact for step functions: the optimum
/// is attained on unions of blocks. Throws CapExceeded when q > max_q.
double cut_norm(const StepGraphon & w, std::size_t max_q = default_cut_norm_cap);

/// min over block permutations s of cut_norm(w1 - w2^s). Needs equal q and
/// uniform measures on both sides. This is an upper bound on the cut
/// distance, which ranges over all measure-preserving bijections.
double cut_distance(const StepGraphon & w1, const StepGraphon & w2, std::size_t max_q = default_cut_distance_cap);

/// n points drawn independently (block a with probability mu(a)); entry
/// (i, j) is B(block_i, block_j), diagonal included.
WeightedGraph sample_graph(const StepGraphon & w, std::size_t n, std::uint64_t seed);

}  // namespace ghm
