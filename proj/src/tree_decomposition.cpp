#include "ghm/tree_decomposition.hpp"

#include "ghm/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ghm {

std::optional<std::string> decomposition_violation(const Pattern & p, const TreeDecomposition & td)
{
    const std::size_t nodes = td.size();
    if (nodes == 0)
        return "decomposition has no nodes";
    if (td.parent.size() != nodes)
        return "parent array size differs from bag count";
    if (td.root >= nodes || td.parent[td.root] != TreeDecomposition::npos)
        return "root is missing or has a parent";

    for (std::size_t i = 0; i < nodes; ++i) {
        std::size_t steps = 0;
        for (std::size_t v = i; v != td.root; v = td.parent[v]) {
            if (td.parent[v] >= nodes)
                return "node " + std::to_string(i) + " does not reach the root";
            if (++steps > nodes)
                return "parent pointers contain a cycle";
        }
    }

    auto contains = [&](std::size_t node, std::size_t v) {
        return std::binary_search(td.bags[node].begin(), td.bags[node].end(), v);
    };

    std::size_t width = 0;
    for (const auto & bag : td.bags) {
        if (!std::is_sorted(bag.begin(), bag.end()))
            return "bag is not sorted";
        for (auto v : bag)
            if (v >= p.m())
                return "bag references vertex outside the pattern";
        width = std::max(width, bag.empty() ? 0 : bag.size() - 1);
    }
    if (width != td.width)
        return "recorded width " + std::to_string(td.width) + " differs from actual " + std::to_string(width);

    for (std::size_t v = 0; v < p.m(); ++v) {
        // Connected iff exactly one containing node has a parent not containing v.
        std::size_t tops = 0;
        for (std::size_t node = 0; node < nodes; ++node)
            if (contains(node, v) && (node == td.root || !contains(td.parent[node], v)))
                ++tops;
        if (tops == 0)
            return "vertex " + std::to_string(v + 1) + " is in no bag";
        if (tops > 1)
            return "bags containing vertex " + std::to_string(v + 1) + " are not connected";
    }

    for (const auto & [i, j] : p.arcs()) {
        bool covered = false;
        for (std::size_t node = 0; node < nodes && !covered; ++node)
            covered = contains(node, i) && contains(node, j);
        if (!covered)
            return "arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is in no bag";
    }
    return std::nullopt;
}

namespace {

using Mask = std::uint32_t;

// Vertices outside `eliminated` and other than v that v reaches through
// eliminated vertices: v's neighbourhood at the moment it is eliminated.
Mask elimination_neighbourhood(const std::vector<Mask> & adj, Mask eliminated, std::size_t v)
{
    Mask visited = Mask{1} << v;
    Mask frontier = visited;
    Mask reached = 0;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1)
            next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        next &= ~visited;
        visited |= next;
        reached |= next & ~eliminated;
        frontier = next & eliminated;
    }
    return reached;
}

}  // namespace

TreeDecomposition tree_decomposition(const Pattern & p, std::size_t max_m)
{
    const std::size_t m = p.m();
    if (m > max_m)
        throw CapExceeded("exact tree decomposition over 2^m vertex subsets; m = " + std::to_string(m),
                          std::ldexp(1.0, static_cast<int>(m)), std::ldexp(1.0, static_cast<int>(max_m)));
    if (m > 31)
        throw CapExceeded("exact tree decomposition supports at most 31 vertices", static_cast<double>(m), 31.0);

    std::vector<Mask> adj(m, 0);
    for (const auto & [i, j] : p.arcs()) {
        adj[i] |= Mask{1} << j;
        adj[j] |= Mask{1} << i;
    }

    // best[S]: smallest achievable max elimination degree when S is eliminated
    // first; last[S]: the vertex of S eliminated last in such an order.
    const Mask full = static_cast<Mask>((std::uint64_t{1} << m) - 1);
    std::vector<std::uint8_t> best(std::size_t{full} + 1, 0);
    std::vector<std::uint8_t> last(std::size_t{full} + 1, 0);
    for (Mask s = 1; s <= full && s != 0; ++s) {
        std::uint8_t value = std::numeric_limits<std::uint8_t>::max();
        for (Mask r = s; r; r &= r - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(r));
            const Mask rest = s & ~(Mask{1} << v);
            const auto degree = static_cast<std::uint8_t>(std::popcount(elimination_neighbourhood(adj, rest, v)));
            const auto candidate = std::max(best[rest], degree);
            if (candidate < value) {
                value = candidate;
                last[s] = static_cast<std::uint8_t>(v);
            }
        }
        best[s] = value;
        if (s == full)
            break;
    }

    std::vector<std::size_t> order(m);
    for (Mask s = full; s;) {
        const std::size_t v = last[s];
        order[static_cast<std::size_t>(std::popcount(s)) - 1] = v;
        s &= ~(Mask{1} << v);
    }

    // Eliminate in order with fill-in; bag of v is v plus its later neighbours.
    std::vector<std::size_t> position(m);
    for (std::size_t i = 0; i < m; ++i)
        position[order[i]] = i;
    std::vector<Mask> fill = adj;
    TreeDecomposition td;
    td.bags.resize(m);
    td.parent.assign(m, TreeDecomposition::npos);
    Mask remaining = full;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t v = order[i];
        remaining &= ~(Mask{1} << v);
        const Mask later = fill[v] & remaining;
        for (Mask a = later; a; a &= a - 1) {
            const auto u = static_cast<std::size_t>(std::countr_zero(a));
            fill[u] |= later & ~(Mask{1} << u);
        }
        auto & bag = td.bags[i];
        bag.push_back(v);
        std::size_t parent = TreeDecomposition::npos;
        for (Mask a = later; a; a &= a - 1) {
            const auto u = static_cast<std::size_t>(std::countr_zero(a));
            bag.push_back(u);
            parent = std::min(parent, position[u]);
        }
        std::sort(bag.begin(), bag.end());
        td.parent[i] = parent;
        td.width = std::max(td.width, bag.size() - 1);
    }
    td.root = m - 1;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (td.parent[i] == TreeDecomposition::npos)
            td.parent[i] = td.root;
    return td;
}

}  // namespace ghm
