#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ghm {

using Arc = std::pair<std::size_t, std::size_t>;

/// Simple unweighted digraph on m >= 1 vertices: no loops, no parallel arcs.
/// Arcs are kept sorted; vertex indices are 0-based.
class Pattern {
public:
    Pattern() = default;
    Pattern(std::size_t m, std::vector<Arc> arcs);

    /// m isolated vertices.
    static Pattern isolated(std::size_t m);
    /// Directed path 0 -> 1 -> ... -> m-1.
    static Pattern directed_path(std::size_t m);
    /// Directed cycle 0 -> 1 -> ... -> m-1 -> 0 (m >= 2).
    static Pattern directed_cycle(std::size_t m);

    std::size_t m() const noexcept { return m_; }
    const std::vector<Arc> & arcs() const noexcept { return arcs_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    bool has_arc(std::size_t i, std::size_t j) const;

    /// Weakly connected.
    bool connected() const;

    /// Vertex i of this pattern becomes vertex order[i] of the result.
    Pattern relabel(const std::vector<std::size_t> & order) const;

    friend bool operator==(const Pattern &, const Pattern &) = default;

private:
    std::size_t m_ = 1;
    std::vector<Arc> arcs_;
};

/// Pattern whose first k vertices are labeled; label i is pinned to x_i.
class LabeledPattern {
public:
    LabeledPattern() = default;
    LabeledPattern(Pattern pattern, std::size_t k);

    const Pattern & pattern() const noexcept { return pattern_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t m() const noexcept { return pattern_.m(); }

    friend bool operator==(const LabeledPattern &, const LabeledPattern &) = default;

private:
    Pattern pattern_;
    std::size_t k_ = 0;
};

inline constexpr std::size_t default_canonical_cap = 6;
inline constexpr std::size_t default_enumeration_cap = 5;

/// Lexicographically minimal off-diagonal adjacency bit string over every
/// vertex ordering, packed into bytes: [m, bits...]. Equal iff isomorphic.
std::string canonical_form(const Pattern & p, std::size_t max_m = default_canonical_cap);

/// Same, but orderings must keep label i at position i: [m, k, bits...].
std::string canonical_form(const LabeledPattern & p, std::size_t max_m = default_canonical_cap);

/// Lowercase hex rendering of a canonical byte string.
std::string to_hex(const std::string & bytes);

/// One representative per isomorphism class of simple digraphs on 1..max_m
/// vertices, ordered by m then canonical form.
std::vector<Pattern> enumerate_patterns(std::size_t max_m, bool connected_only = false,
                                        std::size_t cap = default_enumeration_cap);

/// One representative per label-order-preserving isomorphism class of
/// patterns on max(k,1)..max_m vertices with the first k labeled.
std::vector<LabeledPattern> enumerate_labeled_patterns(std::size_t max_m, std::size_t k, bool connected_only = false,
                                                       std::size_t cap = default_enumeration_cap);

/// Vertices of p2 are shifted by p1.m().
Pattern disjoint_union(const Pattern & p1, const Pattern & p2);

/// Disjoint union with label i of p2 identified with label i of p1.
/// Arcs that coincide after the merge are collapsed.
LabeledPattern glued_union(const LabeledPattern & p1, const LabeledPattern & p2);

}  // namespace ghm
