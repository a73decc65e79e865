#pragma once

#include "ghm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ghm::testing {

using Rng = std::mt19937_64;

inline WeightedGraph random_graph(Rng & rng, std::size_t n, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    WeightedGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            g(u, v) = dist(rng);
    return g;
}

inline Permutation random_permutation(Rng & rng, std::size_t n)
{
    auto image = Permutation::identity(n).image();
    std::shuffle(image.begin(), image.end(), rng);
    return Permutation(std::move(image));
}

/// k pairwise-distinct vertices.
inline std::vector<std::size_t> random_tuple(Rng & rng, std::size_t n, std::size_t k)
{
    auto image = Permutation::identity(n).image();
    std::shuffle(image.begin(), image.end(), rng);
    image.resize(k);
    return image;
}

inline std::size_t random_index(Rng & rng, std::size_t size)
{
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

/// |a - b| <= tol * max(1, |b|), the relative criterion used throughout.
inline bool close(double a, double b, double tol = 1e-9)
{
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace ghm::testing
