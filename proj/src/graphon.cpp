#include "ghm/graphon.hpp"

#include "ghm/error.hpp"
#include "ghm/hom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace ghm {

namespace {

constexpr double measure_tolerance = 1e-9;

std::vector<double> uniform_measure(std::size_t q)
{
    return std::vector<double>(q, q == 0 ? 0.0 : 1.0 / static_cast<double>(q));
}

}  // namespace

StepGraphon::StepGraphon(std::size_t q, std::vector<double> values, std::vector<double> mu, bool is_signed)
    : q_(q), values_(std::move(values)), mu_(std::move(mu)), signed_(is_signed)
{
    if (q_ == 0)
        throw ContractError("graphon needs at least one block");
    if (values_.size() != q_ * q_)
        throw ContractError("graphon value matrix has " + std::to_string(values_.size()) + " entries, expected "
                            + std::to_string(q_ * q_));
    if (mu_.size() != q_)
        throw ContractError("graphon has " + std::to_string(mu_.size()) + " block measures, expected "
                            + std::to_string(q_));
    const double lo = signed_ ? -1.0 : 0.0;
    for (double v : values_)
        if (!(v >= lo && v <= 1.0))
            throw ContractError("graphon value " + std::to_string(v) + " outside [" + std::to_string(lo) + ",1]");
    double total = 0.0;
    for (double m : mu_) {
        if (!(m > 0.0))
            throw ContractError("block measures must be positive");
        total += m;
    }
    if (std::abs(total - 1.0) > measure_tolerance)
        throw ContractError("block measures sum to " + std::to_string(total) + ", expected 1");
}

StepGraphon::StepGraphon(std::size_t q, std::vector<double> values, std::vector<double> mu)
    : StepGraphon(q, std::move(values), std::move(mu), false)
{
}

StepGraphon::StepGraphon(std::size_t q, std::vector<double> values)
    : StepGraphon(q, std::move(values), uniform_measure(q), false)
{
}

StepGraphon StepGraphon::signed_kernel(std::size_t q, std::vector<double> values, std::vector<double> mu)
{
    return StepGraphon(q, std::move(values), std::move(mu), true);
}

StepGraphon StepGraphon::constant(double p)
{
    return StepGraphon(1, {p});
}

bool StepGraphon::uniform() const noexcept
{
    const double expected = 1.0 / static_cast<double>(q_);
    return std::all_of(mu_.begin(), mu_.end(), [&](double m) { return std::abs(m - expected) <= measure_tolerance; });
}

StepGraphon StepGraphon::permute_blocks(const Permutation & s) const
{
    if (s.size() != q_)
        throw ContractError("block permutation has the wrong size");
    std::vector<double> values(q_ * q_);
    std::vector<double> mu(q_);
    for (std::size_t a = 0; a < q_; ++a) {
        mu[s(a)] = mu_[a];
        for (std::size_t b = 0; b < q_; ++b)
            values[s(a) * q_ + s(b)] = values_[a * q_ + b];
    }
    return StepGraphon(q_, std::move(values), std::move(mu), signed_);
}

namespace {

void check_same_structure(const StepGraphon & a, const StepGraphon & b)
{
    if (a.q() != b.q())
        throw ContractError("graphons have different block counts (" + std::to_string(a.q()) + " vs "
                            + std::to_string(b.q()) + ")");
    for (std::size_t i = 0; i < a.q(); ++i)
        if (std::abs(a.mu()[i] - b.mu()[i]) > measure_tolerance)
            throw ContractError("graphons have different block measures");
}

StepGraphon combine(const StepGraphon & a, const StepGraphon & b, double sign)
{
    check_same_structure(a, b);
    std::vector<double> values(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] += sign * b.values()[i];
    return StepGraphon::signed_kernel(a.q(), std::move(values), {a.mu().begin(), a.mu().end()});
}

}  // namespace

StepGraphon operator-(const StepGraphon & a, const StepGraphon & b)
{
    return combine(a, b, -1.0);
}

StepGraphon operator+(const StepGraphon & a, const StepGraphon & b)
{
    return combine(a, b, 1.0);
}

StepGraphon operator*(double c, const StepGraphon & a)
{
    std::vector<double> values(a.values().begin(), a.values().end());
    for (auto & v : values)
        v *= c;
    return StepGraphon::signed_kernel(a.q(), std::move(values), {a.mu().begin(), a.mu().end()});
}

double density(const Pattern & f, const StepGraphon & w)
{
    return CountingPlan(f).contract(w.q(), w.values(), w.mu(), {}, false);
}

double density_labeled(const LabeledPattern & f, const StepGraphon & w, std::span<const std::size_t> blocks)
{
    if (blocks.size() != f.k())
        throw ContractError("pattern has " + std::to_string(f.k()) + " labels but " + std::to_string(blocks.size())
                            + " blocks were given");
    for (auto b : blocks)
        if (b >= w.q())
            throw ContractError("block index " + std::to_string(b + 1) + " outside 1.." + std::to_string(w.q()));
    return CountingPlan(f).contract(w.q(), w.values(), w.mu(), blocks, false);
}

double cut_norm(const StepGraphon & w, std::size_t max_q)
{
    const std::size_t q = w.q();
    if (q > max_q)
        throw CapExceeded("exhaustive cut norm over 2^q block subsets; q = " + std::to_string(q),
                          std::ldexp(1.0, static_cast<int>(q)), std::ldexp(1.0, static_cast<int>(max_q)));

    // For fixed S the best T takes every column with positive mass (or every
    // column with negative mass).
    std::vector<double> mass(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            mass[a * q + b] = w.mu()[a] * w.mu()[b] * w(a, b);

    double best = 0.0;
    std::vector<double> column(q);
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << q); ++s) {
        std::fill(column.begin(), column.end(), 0.0);
        for (std::size_t a = 0; a < q; ++a)
            if (s >> a & 1U)
                for (std::size_t b = 0; b < q; ++b)
                    column[b] += mass[a * q + b];
        double positive = 0.0, negative = 0.0;
        for (double c : column)
            (c > 0.0 ? positive : negative) += c;
        best = std::max({best, positive, -negative});
    }
    return best;
}

double cut_distance(const StepGraphon & w1, const StepGraphon & w2, std::size_t max_q)
{
    check_same_structure(w1, w2);
    if (!w1.uniform() || !w2.uniform())
        throw ContractError("cut distance is implemented for uniform block measures only");
    const std::size_t q = w1.q();
    if (q > max_q)
        throw CapExceeded("cut distance over q! block permutations; q = " + std::to_string(q),
                          std::tgamma(static_cast<double>(q) + 1.0), std::tgamma(static_cast<double>(max_q) + 1.0));

    auto s = Permutation::identity(q).image();
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, cut_norm(w1 - w2.permute_blocks(Permutation(s)), max_q));
    } while (std::next_permutation(s.begin(), s.end()));
    return best;
}

WeightedGraph sample_graph(const StepGraphon & w, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw ContractError("sampled graph needs at least one vertex");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> cumulative(w.q());
    std::partial_sum(w.mu().begin(), w.mu().end(), cumulative.begin());
    std::vector<std::size_t> block(n);
    for (auto & b : block) {
        const double u = unit(rng) * cumulative.back();
        b = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        b = std::min(b, w.q() - 1);
    }

    WeightedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = w(block[i], block[j]);
    return g;
}

}  // namespace ghm
