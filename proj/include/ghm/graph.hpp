#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ghm {

/// Dense weighted digraph on n vertices: an arbitrary real n x n matrix,
/// stored row-major. Vertex indices are 0-based in the API.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t n, double fill = 0.0);
    WeightedGraph(std::size_t n, std::vector<double> row_major);

    static WeightedGraph from_rows(const std::vector<std::vector<double>> & rows);
    static WeightedGraph identity(std::size_t n);

    std::size_t n() const noexcept { return n_; }

    double operator()(std::size_t u, std::size_t v) const noexcept { return w_[u * n_ + v]; }
    double & operator()(std::size_t u, std::size_t v) noexcept { return w_[u * n_ + v]; }

    std::span<const double> data() const noexcept { return w_; }
    std::vector<std::vector<double>> rows() const;

    /// True when every entry satisfies |W(i,j)| <= 1 (the model domain).
    bool in_model_domain() const noexcept;

    /// True when every entry is an integer.
    bool integer_valued() const noexcept;

    friend bool operator==(const WeightedGraph &, const WeightedGraph &) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> w_;
};

/// Bijection on {0, ..., n-1}; image(u) is where u is sent.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> image);

    static Permutation identity(std::size_t n);
    /// Swap of two vertices.
    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);

    std::size_t size() const noexcept { return image_.size(); }
    std::size_t operator()(std::size_t u) const noexcept { return image_[u]; }
    const std::vector<std::size_t> & image() const noexcept { return image_; }

    Permutation inverse() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;

private:
    std::vector<std::size_t> image_;
};

/// (s o t)(u) = s(t(u)).
Permutation compose(const Permutation & s, const Permutation & t);

/// Graph together with k pairwise-distinct distinguished vertices.
class LabeledGraph {
public:
    LabeledGraph(WeightedGraph graph, std::vector<std::size_t> labels);

    const WeightedGraph & graph() const noexcept { return graph_; }
    const std::vector<std::size_t> & labels() const noexcept { return labels_; }
    std::size_t k() const noexcept { return labels_.size(); }

    friend bool operator==(const LabeledGraph &, const LabeledGraph &) = default;

private:
    WeightedGraph graph_;
    std::vector<std::size_t> labels_;
};

/// Throws ContractError unless labels are in range and pairwise distinct.
void validate_labels(std::size_t n, std::span<const std::size_t> labels);

/// Push-forward action: result(s(u), s(v)) = g(u, v).
WeightedGraph permute(const WeightedGraph & g, const Permutation & s);

/// Permutes the graph and maps each label x_i to s(x_i).
LabeledGraph permute_labeled(const LabeledGraph & g, const Permutation & s);

double l1_norm(const WeightedGraph & g);

/// W + c I.
WeightedGraph shift(const WeightedGraph & g, double c);

inline constexpr std::size_t default_edit_distance_cap = 9;

/// min over all n! permutations s of ||W1 - W2^s||_1. Exponential by
/// construction; throws CapExceeded when n > max_n.
double edit_distance(const WeightedGraph & g1, const WeightedGraph & g2,
                     std::size_t max_n = default_edit_distance_cap);

/// Same minimum restricted to permutations carrying g2's labels onto g1's
/// labels position by position.
double labeled_edit_distance(const LabeledGraph & g1, const LabeledGraph & g2,
                             std::size_t max_n = default_edit_distance_cap);

}  // namespace ghm
