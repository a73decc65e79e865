#pragma once

#include "ghm/pattern.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ghm {

/// Rooted tree of bags over a pattern's vertices.
struct TreeDecomposition {
    /// Sorted vertex lists, one per node.
    std::vector<std::vector<std::size_t>> bags;
    /// parent[i] is the parent node of i; the root has parent == npos.
    std::vector<std::size_t> parent;
    std::size_t root = 0;
    std::size_t width = 0;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t size() const noexcept { return bags.size(); }
};

/// Checks the three decomposition conditions (vertex cover, arc cover,
/// running intersection) plus tree shape. Returns a description of the first
/// violation, or nothing when valid.
std::optional<std::string> decomposition_violation(const Pattern & p, const TreeDecomposition & td);

inline constexpr std::size_t default_decomposition_cap = 16;

/// Minimum-width decomposition found by exhaustive search over vertex
/// elimination orders of the underlying undirected graph. Throws CapExceeded
/// when m > max_m.
TreeDecomposition tree_decomposition(const Pattern & p, std::size_t max_m = default_decomposition_cap);

}  // namespace ghm
