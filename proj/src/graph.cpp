#include "ghm/graph.hpp"

#include "ghm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

namespace ghm {

std::string CapExceeded::format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

WeightedGraph::WeightedGraph(std::size_t n, double fill) : n_(n), w_(n * n, fill)
{
    if (n == 0)
        throw ContractError("graph must have at least one vertex");
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<double> row_major) : n_(n), w_(std::move(row_major))
{
    if (n == 0)
        throw ContractError("graph must have at least one vertex");
    if (w_.size() != n * n)
        throw ContractError("weight matrix has " + std::to_string(w_.size()) + " entries, expected "
                            + std::to_string(n * n));
}

WeightedGraph WeightedGraph::from_rows(const std::vector<std::vector<double>> & rows)
{
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw ContractError("weight matrix is not square: row " + std::to_string(i + 1) + " has "
                                + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return WeightedGraph(n, std::move(flat));
}

WeightedGraph WeightedGraph::identity(std::size_t n)
{
    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        g(i, i) = 1.0;
    return g;
}

std::vector<std::vector<double>> WeightedGraph::rows() const
{
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i].assign(w_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                      w_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    return out;
}

bool WeightedGraph::in_model_domain() const noexcept
{
    return std::all_of(w_.begin(), w_.end(), [](double x) { return std::abs(x) <= 1.0; });
}

bool WeightedGraph::integer_valued() const noexcept
{
    return std::all_of(w_.begin(), w_.end(), [](double x) { return std::isfinite(x) && x == std::trunc(x); });
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image))
{
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
        if (v >= image_.size() || seen[v])
            throw ContractError("permutation is not a bijection on " + std::to_string(image_.size()) + " points");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});
    return Permutation(std::move(image));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b)
{
    auto image = identity(n).image();
    std::swap(image.at(a), image.at(b));
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const
{
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t u = 0; u < image_.size(); ++u)
        inv[image_[u]] = u;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation & s, const Permutation & t)
{
    if (s.size() != t.size())
        throw ContractError("cannot compose permutations of different sizes");
    std::vector<std::size_t> image(s.size());
    for (std::size_t u = 0; u < s.size(); ++u)
        image[u] = s(t(u));
    return Permutation(std::move(image));
}

void validate_labels(std::size_t n, std::span<const std::size_t> labels)
{
    if (labels.size() > n)
        throw ContractError("more labels (" + std::to_string(labels.size()) + ") than vertices ("
                            + std::to_string(n) + ")");
    std::vector<bool> seen(n, false);
    for (auto x : labels) {
        if (x >= n)
            throw ContractError("label " + std::to_string(x + 1) + " outside 1.." + std::to_string(n));
        if (seen[x])
            throw ContractError("duplicate label " + std::to_string(x + 1));
        seen[x] = true;
    }
}

LabeledGraph::LabeledGraph(WeightedGraph graph, std::vector<std::size_t> labels)
    : graph_(std::move(graph)), labels_(std::move(labels))
{
    validate_labels(graph_.n(), labels_);
}

WeightedGraph permute(const WeightedGraph & g, const Permutation & s)
{
    const std::size_t n = g.n();
    if (s.size() != n)
        throw ContractError("permutation acts on " + std::to_string(s.size()) + " points but graph has "
                            + std::to_string(n) + " vertices");
    WeightedGraph out(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            out(s(u), s(v)) = g(u, v);
    return out;
}

LabeledGraph permute_labeled(const LabeledGraph & g, const Permutation & s)
{
    auto labels = g.labels();
    auto graph = permute(g.graph(), s);
    for (auto & x : labels)
        x = s(x);
    return LabeledGraph(std::move(graph), std::move(labels));
}

double l1_norm(const WeightedGraph & g)
{
    double total = 0.0;
    for (double x : g.data())
        total += std::abs(x);
    return total;
}

WeightedGraph shift(const WeightedGraph & g, double c)
{
    WeightedGraph out = g;
    for (std::size_t i = 0; i < g.n(); ++i)
        out(i, i) += c;
    return out;
}

namespace {

void check_edit_distance_inputs(const WeightedGraph & g1, const WeightedGraph & g2, std::size_t max_n)
{
    if (g1.n() != g2.n())
        throw ContractError("edit distance needs equal vertex counts (" + std::to_string(g1.n()) + " vs "
                            + std::to_string(g2.n()) + ")");
    if (g1.n() > max_n)
        throw CapExceeded("edit distance is exhaustive over n! permutations; n = " + std::to_string(g1.n()),
                          std::tgamma(static_cast<double>(g1.n()) + 1.0),
                          std::tgamma(static_cast<double>(max_n) + 1.0));
}

// ||W1 - W2^s||_1 where W2^s(s(u), s(v)) = W2(u, v).
double permuted_difference(const WeightedGraph & g1, const WeightedGraph & g2, const std::vector<std::size_t> & s)
{
    const std::size_t n = g1.n();
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            total += std::abs(g1(s[u], s[v]) - g2(u, v));
    return total;
}

}  // namespace

double edit_distance(const WeightedGraph & g1, const WeightedGraph & g2, std::size_t max_n)
{
    check_edit_distance_inputs(g1, g2, max_n);
    auto s = Permutation::identity(g1.n()).image();
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, permuted_difference(g1, g2, s));
    } while (std::next_permutation(s.begin(), s.end()));
    return best;
}

double labeled_edit_distance(const LabeledGraph & g1, const LabeledGraph & g2, std::size_t max_n)
{
    check_edit_distance_inputs(g1.graph(), g2.graph(), max_n);
    if (g1.k() != g2.k())
        throw ContractError("labeled edit distance needs equal label arity (" + std::to_string(g1.k()) + " vs "
                            + std::to_string(g2.k()) + ")");

    // s must send g2's label i onto g1's label i; the remaining vertices are free.
    const std::size_t n = g1.graph().n();
    std::vector<bool> pinned_src(n, false), pinned_dst(n, false);
    for (std::size_t i = 0; i < g1.k(); ++i) {
        pinned_src[g2.labels()[i]] = true;
        pinned_dst[g1.labels()[i]] = true;
    }
    std::vector<std::size_t> free_src, free_dst;
    for (std::size_t v = 0; v < n; ++v) {
        if (!pinned_src[v])
            free_src.push_back(v);
        if (!pinned_dst[v])
            free_dst.push_back(v);
    }

    std::vector<std::size_t> s(n);
    for (std::size_t i = 0; i < g1.k(); ++i)
        s[g2.labels()[i]] = g1.labels()[i];

    double best = std::numeric_limits<double>::infinity();
    do {
        for (std::size_t i = 0; i < free_src.size(); ++i)
            s[free_src[i]] = free_dst[i];
        best = std::min(best, permuted_difference(g1.graph(), g2.graph(), s));
    } while (std::next_permutation(free_dst.begin(), free_dst.end()));
    return best;
}

}  // namespace ghm
