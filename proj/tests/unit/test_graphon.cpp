#include "ghm/error.hpp"
#include "ghm/graphon.hpp"
#include "support/testing.hpp"

#include <doctest.h>

#include <cmath>

using namespace ghm;
using ghm::testing::close;
using ghm::testing::Rng;

namespace {

StepGraphon random_graphon(Rng & rng, std::size_t q, bool uniform_blocks = false)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values(q * q);
    for (auto & v : values)
        v = unit(rng);
    if (uniform_blocks)
        return StepGraphon(q, std::move(values));
    std::vector<double> mu(q);
    double total = 0.0;
    for (auto & m : mu)
        total += m = 0.1 + unit(rng);
    for (auto & m : mu)
        m /= total;
    return StepGraphon(q, std::move(values), std::move(mu));
}

StepGraphon random_kernel(Rng & rng, std::size_t q)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> values(q * q);
    for (auto & v : values)
        v = unit(rng);
    return StepGraphon::signed_kernel(q, std::move(values), std::vector<double>(q, 1.0 / static_cast<double>(q)));
}

// Sum over every block map with an odometer; labeled vertices stay put and
// carry no measure.
double density_oracle(const Pattern & f, const StepGraphon & w, std::vector<std::size_t> pinned = {})
{
    const std::size_t m = f.m(), q = w.q(), k = pinned.size();
    std::vector<std::size_t> rho(m, 0);
    for (std::size_t i = 0; i < k; ++i)
        rho[i] = pinned[i];
    double total = 0.0;
    while (true) {
        double term = 1.0;
        for (std::size_t i = k; i < m; ++i)
            term *= w.mu()[rho[i]];
        for (const auto & [i, j] : f.arcs())
            term *= w(rho[i], rho[j]);
        total += term;
        std::size_t pos = k;
        while (pos < m && ++rho[pos] == q)
            rho[pos++] = 0;
        if (pos == m)
            break;
    }
    return total;
}

// max over every (S, T) pair of block subsets, both enumerated.
double cut_norm_oracle(const StepGraphon & w)
{
    const std::size_t q = w.q();
    double best = 0.0;
    for (unsigned s = 0; s < (1U << q); ++s)
        for (unsigned t = 0; t < (1U << q); ++t) {
            double sum = 0.0;
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b)
                    if ((s >> a & 1U) && (t >> b & 1U))
                        sum += w.mu()[a] * w.mu()[b] * w(a, b);
            best = std::max(best, std::abs(sum));
        }
    return best;
}

}  // namespace

TEST_CASE("graphon validation")
{
    CHECK_THROWS_AS(StepGraphon(2, {0, 0, 0}), ContractError);
    CHECK_THROWS_AS(StepGraphon(1, {1.5}), ContractError);
    CHECK_THROWS_AS(StepGraphon(1, {-0.5}), ContractError);
    CHECK_THROWS_AS(StepGraphon(2, {0, 0, 0, 0}, {0.5, 0.6}), ContractError);
    CHECK_THROWS_AS(StepGraphon(2, {0, 0, 0, 0}, {1.0, 0.0}), ContractError);
    CHECK_NOTHROW(StepGraphon::signed_kernel(1, {-0.5}, {1.0}));
    CHECK_THROWS_AS(StepGraphon::signed_kernel(1, {-1.5}, {1.0}), ContractError);
}

TEST_CASE("densities of simple graphons")
{
    const auto arc = Pattern(2, {{0, 1}});
    for (double p : {0.0, 0.3, 1.0}) {
        const auto w = StepGraphon::constant(p);
        CHECK(density(arc, w) == doctest::Approx(p).epsilon(1e-15));
        CHECK(density(Pattern::directed_cycle(3), w) == doctest::Approx(p * p * p).epsilon(1e-15));
        CHECK(density(Pattern::isolated(3), w) == 1.0);
    }
    CHECK(density(arc, StepGraphon(2, {1, 0, 0, 1})) == 0.5);
}

TEST_CASE("density matches summation over block maps")
{
    Rng rng(50);
    const auto atlas = enumerate_patterns(4);
    for (int trial = 0; trial < 3; ++trial) {
        const auto w = random_graphon(rng, 3);
        for (const auto & f : atlas) {
            const double t = density(f, w);
            REQUIRE(close(t, density_oracle(f, w), 1e-12));
            CHECK(t >= 0.0);
            CHECK(t <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("density product and invariance")
{
    Rng rng(51);
    const auto atlas = enumerate_patterns(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto w = random_graphon(rng, 3);
        const auto & a = atlas[testing::random_index(rng, atlas.size())];
        const auto & b = atlas[testing::random_index(rng, atlas.size())];
        CHECK(close(density(a, w) * density(b, w), density(disjoint_union(a, b), w), 1e-12));
        const auto moved = w.permute_blocks(testing::random_permutation(rng, 3));
        CHECK(close(density(a, moved), density(a, w), 1e-12));
    }
}

TEST_CASE("labeled densities")
{
    Rng rng(52);
    const auto w = random_graphon(rng, 3);
    for (const auto & f : enumerate_patterns(3))
        CHECK(density_labeled(LabeledPattern(f, 0), w, {}) == doctest::Approx(density(f, w)).epsilon(1e-14));

    const std::vector<std::size_t> one{2};
    CHECK(density_labeled(LabeledPattern(Pattern::isolated(1), 1), w, one) == 1.0);

    const std::vector<std::size_t> pair{2, 0};
    CHECK(density_labeled(LabeledPattern(Pattern(2, {{0, 1}}), 2), w, pair) == w(2, 0));

    for (const auto & f : enumerate_labeled_patterns(4, 2)) {
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                const std::vector<std::size_t> blocks{a, b};
                REQUIRE(close(density_labeled(f, w, blocks), density_oracle(f.pattern(), w, blocks), 1e-12));
            }
    }

    // Averaging a labeled density over its label block recovers the density.
    const auto out_arc = LabeledPattern(Pattern::directed_path(3), 1);
    double average = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
        const std::vector<std::size_t> blocks{a};
        average += w.mu()[a] * density_labeled(out_arc, w, blocks);
    }
    CHECK(close(average, density(Pattern::directed_path(3), w), 1e-13));

    const std::vector<std::size_t> outside{3};
    CHECK_THROWS_AS(density_labeled(LabeledPattern(Pattern::isolated(1), 1), w, outside), ContractError);
    CHECK_THROWS_AS(density_labeled(LabeledPattern(Pattern::isolated(1), 1), w, {}), ContractError);
}

TEST_CASE("cut norm")
{
    CHECK(cut_norm(StepGraphon::constant(0.4)) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(cut_norm(StepGraphon(3, std::vector<double>(9, 0.0))) == 0.0);

    const auto checker = StepGraphon::signed_kernel(2, {1, -1, -1, 1}, {0.5, 0.5});
    CHECK(cut_norm(checker) == 0.25);
    CHECK(cut_norm_oracle(checker) == 0.25);

    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const auto w = random_kernel(rng, 1 + testing::random_index(rng, 5));
        CHECK(close(cut_norm(w), cut_norm_oracle(w), 1e-14));
    }
    CHECK_THROWS_AS(cut_norm(random_kernel(rng, 13)), CapExceeded);
}

TEST_CASE("cut norm is a seminorm")
{
    Rng rng(54);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_kernel(rng, 4);
        const auto b = random_kernel(rng, 4);
        const double c = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        CHECK(close(cut_norm(c * a), std::abs(c) * cut_norm(a), 1e-13));
        CHECK(cut_norm(0.5 * a + 0.5 * b) <= 0.5 * cut_norm(a) + 0.5 * cut_norm(b) + 1e-15);
    }
}

TEST_CASE("cut distance")
{
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_graphon(rng, 4, true);
        const auto b = random_graphon(rng, 4, true);
        CHECK(cut_distance(a, a.permute_blocks(testing::random_permutation(rng, 4))) <= 1e-15);
        const double d = cut_distance(a, b);
        CHECK(d <= cut_norm(a - b) + 1e-15);
        CHECK(close(d, cut_distance(b, a), 1e-14));
        CHECK(d >= 0.0);
    }
    CHECK_THROWS_AS(cut_distance(random_graphon(rng, 3, true), random_graphon(rng, 4, true)), ContractError);
    CHECK_THROWS_AS(cut_distance(random_graphon(rng, 3), random_graphon(rng, 3)), ContractError);
}

TEST_CASE("sampling")
{
    const auto g = sample_graph(StepGraphon::constant(0.3), 5, 7);
    CHECK(g == WeightedGraph(5, 0.3));

    Rng rng(56);
    const auto w = random_graphon(rng, 3);
    CHECK(sample_graph(w, 20, 99) == sample_graph(w, 20, 99));
    CHECK_FALSE(sample_graph(w, 20, 99) == sample_graph(w, 20, 100));
    CHECK_THROWS_AS(sample_graph(w, 0, 1), ContractError);

    // Mean entry over many samples: each off-diagonal entry is W(U, V) for
    // independent uniform U, V, so its expectation is the arc density.
    const double expected = density(Pattern(2, {{0, 1}}), w);
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        const auto s = sample_graph(w, 2, seed);
        sum += s(0, 1);
        sum_sq += s(0, 1) * s(0, 1);
        ++count;
    }
    const double mean = sum / static_cast<double>(count);
    const double variance = sum_sq / static_cast<double>(count) - mean * mean;
    const double standard_error = std::sqrt(variance / static_cast<double>(count));
    CHECK(std::abs(mean - expected) <= 4.0 * standard_error);
}
