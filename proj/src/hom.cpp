#include "ghm/hom.hpp"

#include "compensated_sum.hpp"
#include "ghm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ghm {

namespace {

double brute_force_sum(const Pattern & f, const WeightedGraph & g, std::span<const std::size_t> pins,
                       double work_cap)
{
    const std::size_t m = f.m();
    const std::size_t n = g.n();
    const std::size_t k = pins.size();
    const double work = std::pow(static_cast<double>(n), static_cast<double>(m - k))
        * static_cast<double>(m + f.arc_count());
    if (work > work_cap)
        throw CapExceeded("brute-force homomorphism enumeration over " + std::to_string(n) + "^"
                              + std::to_string(m - k) + " maps",
                          work, work_cap);

    std::vector<std::size_t> image(m, 0);
    for (std::size_t i = 0; i < k; ++i)
        image[i] = pins[i];

    detail::CompensatedSum total;
    while (true) {
        double term = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            term *= g(image[i], image[i]);
        for (const auto & [i, j] : f.arcs())
            term *= g(image[i], image[j]);
        total.add(term);

        std::size_t i = k;
        while (i < m && ++image[i] == n)
            image[i++] = 0;
        if (i == m)
            break;
    }
    return total.value();
}

}  // namespace

double hom_brute(const Pattern & f, const WeightedGraph & g, double work_cap)
{
    return brute_force_sum(f, g, {}, work_cap);
}

double hom_labeled_brute(const LabeledPattern & f, const LabeledGraph & g, double work_cap)
{
    if (f.k() != g.k())
        throw ContractError("pattern has " + std::to_string(f.k()) + " labels but graph has "
                            + std::to_string(g.k()));
    return brute_force_sum(f.pattern(), g.graph(), g.labels(), work_cap);
}

CountingPlan::CountingPlan(const Pattern & f, std::size_t pinned)
    : pattern_(f), pinned_(pinned), td_(tree_decomposition(f))
{
    if (pinned_ > f.m())
        throw ContractError("cannot pin more vertices than the pattern has");

    const std::size_t count = td_.size();
    std::vector<std::size_t> depth(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t v = i; v != td_.root; v = td_.parent[v])
            ++depth[i];

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return depth[a] > depth[b]; });
    std::vector<std::size_t> slot(count);
    for (std::size_t s = 0; s < count; ++s)
        slot[order[s]] = s;

    auto local = [&](std::size_t node, std::size_t v) -> std::size_t {
        const auto & bag = td_.bags[node];
        auto it = std::lower_bound(bag.begin(), bag.end(), v);
        return (it != bag.end() && *it == v) ? static_cast<std::size_t>(it - bag.begin()) : bag.size();
    };
    auto contains = [&](std::size_t node, std::size_t v) { return local(node, v) < td_.bags[node].size(); };

    nodes_.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t id = order[s];
        Node & node = nodes_[s];
        node.bag = td_.bags[id];
        const bool is_root = id == td_.root;
        for (std::size_t l = 0; l < node.bag.size(); ++l) {
            const std::size_t v = node.bag[l];
            const bool shared = !is_root && contains(td_.parent[id], v);
            if (shared)
                node.separator.push_back(l);
            else
                node.vertex_factors.push_back(l);  // shallowest bag holding v
        }
        if (!is_root)
            nodes_[slot[td_.parent[id]]].children.push_back(Child{s, {}});
    }

    for (auto & node : nodes_)
        for (auto & child : node.children)
            for (auto l : nodes_[child.node].separator) {
                const std::size_t v = nodes_[child.node].bag[l];
                child.parent_locals.push_back(
                    static_cast<std::size_t>(std::lower_bound(node.bag.begin(), node.bag.end(), v) - node.bag.begin()));
            }

    for (const auto & [i, j] : f.arcs()) {
        std::size_t best = count;
        for (std::size_t id = 0; id < count; ++id)
            if (contains(id, i) && contains(id, j) && (best == count || depth[id] < depth[best]))
                best = id;
        nodes_[slot[best]].arcs.emplace_back(local(best, i), local(best, j));
    }
}

double CountingPlan::contract(std::size_t q, std::span<const double> edge, std::span<const double> vertex,
                              std::span<const std::size_t> pins, bool weight_pinned, double table_cap) const
{
    if (edge.size() != q * q || vertex.size() != q)
        throw ContractError("contraction weights do not match q = " + std::to_string(q));
    if (pins.size() != pinned_)
        throw ContractError("pattern pins " + std::to_string(pinned_) + " vertices but " + std::to_string(pins.size())
                            + " images were given");
    for (auto x : pins)
        if (x >= q)
            throw ContractError("pinned image " + std::to_string(x + 1) + " outside 1.." + std::to_string(q));

    std::vector<std::vector<detail::CompensatedSum>> messages(nodes_.size());
    std::vector<std::size_t> radix, position, value, out_stride;
    std::vector<std::vector<std::size_t>> child_stride;

    for (std::size_t s = 0; s < nodes_.size(); ++s) {
        const Node & node = nodes_[s];
        const std::size_t b = node.bag.size();
        radix.assign(b, q);
        value.assign(b, 0);
        position.assign(b, 0);
        double entries = 1.0;
        for (std::size_t l = 0; l < b; ++l) {
            if (node.bag[l] < pinned_) {
                radix[l] = 1;
                value[l] = pins[node.bag[l]];
            }
            entries *= static_cast<double>(radix[l]);
        }
        if (entries > table_cap)
            throw CapExceeded("dynamic-programming table for a bag of " + std::to_string(b) + " vertices", entries,
                              table_cap);

        // Messages are indexed little-endian by separator vertices in bag order.
        out_stride.assign(b, 0);
        std::size_t out_size = 1;
        for (auto l : node.separator) {
            out_stride[l] = out_size;
            out_size *= radix[l];
        }
        child_stride.assign(node.children.size(), std::vector<std::size_t>(b, 0));
        for (std::size_t c = 0; c < node.children.size(); ++c) {
            std::size_t stride = 1;
            for (auto l : node.children[c].parent_locals) {
                child_stride[c][l] = stride;
                stride *= radix[l];
            }
        }

        auto & out = messages[s];
        out.assign(out_size, {});
        while (true) {
            double term = 1.0;
            for (auto l : node.vertex_factors)
                if (weight_pinned || node.bag[l] >= pinned_)
                    term *= vertex[value[l]];
            for (const auto & [a, c] : node.arcs)
                term *= edge[value[a] * q + value[c]];
            for (std::size_t c = 0; c < node.children.size() && term != 0.0; ++c) {
                std::size_t index = 0;
                for (auto l : node.children[c].parent_locals)
                    index += child_stride[c][l] * position[l];
                term *= messages[node.children[c].node][index].value();
            }
            if (term != 0.0) {
                std::size_t index = 0;
                for (auto l : node.separator)
                    index += out_stride[l] * position[l];
                out[index].add(term);
            }

            std::size_t l = 0;
            while (l < b && ++position[l] == radix[l]) {
                position[l] = 0;
                if (radix[l] > 1)
                    value[l] = 0;
                ++l;
            }
            if (l == b)
                break;
            if (radix[l] > 1)
                value[l] = position[l];
        }
        for (const auto & child : node.children)
            messages[child.node] = {};
    }
    return messages.back().front().value();
}

double CountingPlan::evaluate(const WeightedGraph & g, std::span<const std::size_t> pins) const
{
    const std::size_t n = g.n();
    std::vector<double> diagonal(n);
    for (std::size_t v = 0; v < n; ++v)
        diagonal[v] = g(v, v);
    return contract(n, g.data(), diagonal, pins, true);
}

double hom(const Pattern & f, const WeightedGraph & g)
{
    return CountingPlan(f).evaluate(g);
}

double hom_labeled(const LabeledPattern & f, const LabeledGraph & g)
{
    if (f.k() != g.k())
        throw ContractError("pattern has " + std::to_string(f.k()) + " labels but graph has "
                            + std::to_string(g.k()));
    return CountingPlan(f).evaluate(g.graph(), g.labels());
}

double hom_shifted(const Pattern & f, const WeightedGraph & g, double c)
{
    return hom(f, shift(g, c));
}

double hom_labeled_shifted(const LabeledPattern & f, const LabeledGraph & g, double c)
{
    return hom_labeled(f, LabeledGraph(shift(g.graph(), c), g.labels()));
}

}  // namespace ghm
