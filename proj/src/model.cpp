#include "ghm/model.hpp"

#include "ghm/error.hpp"
#include "ghm/hom.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace ghm {

const char * to_string(Normalization n)
{
    switch (n) {
    case Normalization::none:
        return "none";
    case Normalization::density:
        return "density";
    }
    return "none";
}

Normalization normalization_from_string(const std::string & s)
{
    if (s == "none")
        return Normalization::none;
    if (s == "density")
        return Normalization::density;
    throw ContractError("unknown normalization '" + s + "' (expected none or density)");
}

std::size_t Dataset::vertex_count() const
{
    if (graphs.empty())
        throw ContractError("dataset is empty");
    const std::size_t n = graphs.front().n();
    for (const auto & g : graphs)
        if (g.n() != n)
            throw MixedSizeError("dataset mixes vertex counts (n = " + std::to_string(n) + " and n = "
                                 + std::to_string(g.n())
                                 + "); the model is defined for a fixed n, use the graphon tools for "
                                   "variable-size data");
    return n;
}

std::size_t Dataset::arity() const
{
    if (!equivariant())
        return 0;
    for (const auto & t : tuple_targets)
        if (!t.tuples.empty())
            return t.tuples.front().size();
    return 0;
}

void Dataset::validate() const
{
    const std::size_t n = vertex_count();
    for (std::size_t i = 0; i < graphs.size(); ++i)
        if (!graphs[i].in_model_domain())
            throw ContractError("graph " + std::to_string(i + 1) + " has an entry with |W(i,j)| > 1");

    if (!equivariant()) {
        if (targets.size() != graphs.size())
            throw ContractError("dataset has " + std::to_string(graphs.size()) + " graphs but "
                                + std::to_string(targets.size()) + " targets");
        return;
    }
    if (!targets.empty())
        throw ContractError("dataset mixes invariant and equivariant targets");
    if (tuple_targets.size() != graphs.size())
        throw ContractError("dataset has " + std::to_string(graphs.size()) + " graphs but "
                            + std::to_string(tuple_targets.size()) + " tuple target sets");
    const std::size_t k = arity();
    if (k == 0)
        throw ContractError("equivariant targets need tuples of length at least 1");
    for (std::size_t i = 0; i < tuple_targets.size(); ++i) {
        const auto & t = tuple_targets[i];
        if (t.tuples.size() != t.values.size())
            throw ContractError("graph " + std::to_string(i + 1) + " has " + std::to_string(t.tuples.size())
                                + " tuples but " + std::to_string(t.values.size()) + " values");
        for (const auto & x : t.tuples) {
            if (x.size() != k)
                throw ContractError("graph " + std::to_string(i + 1) + " has a tuple of length "
                                    + std::to_string(x.size()) + ", expected " + std::to_string(k));
            validate_labels(n, x);
        }
    }
}

HomModel::HomModel(std::vector<LabeledPattern> patterns, std::vector<double> coefficients, double shift,
                   double intercept, Normalization normalization, FeatureScaling scaling)
    : patterns_(std::move(patterns)), coefficients_(std::move(coefficients)), shift_(shift), intercept_(intercept),
      normalization_(normalization), scaling_(std::move(scaling))
{
    if (patterns_.empty())
        throw ContractError("model needs at least one pattern");
    if (patterns_.size() != coefficients_.size())
        throw ContractError("model has " + std::to_string(patterns_.size()) + " patterns but "
                            + std::to_string(coefficients_.size()) + " coefficients");
    const std::size_t k = patterns_.front().k();
    std::set<std::string> seen;
    for (const auto & p : patterns_) {
        if (p.k() != k)
            throw ContractError("model patterns have different label counts");
        if (!seen.insert(canonical_form(p)).second)
            throw ContractError("model contains two isomorphic patterns");
    }
    if (!scaling_.mean.empty() || !scaling_.scale.empty())
        if (scaling_.mean.size() != patterns_.size() || scaling_.scale.size() != patterns_.size())
            throw ContractError("feature scaling does not match the pattern count");
}

namespace {

double normalizer(const LabeledPattern & p, std::size_t n, Normalization normalization)
{
    if (normalization == Normalization::none)
        return 1.0;
    return std::pow(static_cast<double>(n), static_cast<double>(p.m() - p.k()));
}

std::vector<LabeledPattern> as_unlabeled(std::span<const Pattern> patterns)
{
    std::vector<LabeledPattern> out;
    out.reserve(patterns.size());
    for (const auto & p : patterns)
        out.emplace_back(p, 0);
    return out;
}

std::vector<CountingPlan> make_plans(std::span<const LabeledPattern> patterns)
{
    std::vector<CountingPlan> plans;
    plans.reserve(patterns.size());
    for (const auto & p : patterns)
        plans.emplace_back(p);
    return plans;
}

std::vector<double> plan_features(const WeightedGraph & shifted, std::span<const std::size_t> x,
                                  std::span<const LabeledPattern> patterns, std::span<const CountingPlan> plans,
                                  Normalization normalization)
{
    std::vector<double> row(plans.size());
    for (std::size_t j = 0; j < plans.size(); ++j)
        row[j] = plans[j].evaluate(shifted, x) / normalizer(patterns[j], shifted.n(), normalization);
    return row;
}

template <typename Work>
void parallel_for(std::size_t count, std::size_t threads, Work && work)
{
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < count; i = next++)
                    work(i);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        });
    for (auto & t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

void check_tuple(const WeightedGraph & g, std::span<const std::size_t> x, std::size_t k)
{
    if (x.size() != k)
        throw ContractError("tuple has length " + std::to_string(x.size()) + " but patterns have "
                            + std::to_string(k) + " labels");
    validate_labels(g.n(), x);
}

struct Design {
    Eigen::MatrixXd features;
    Eigen::VectorXd targets;
};

FitResult solve(Design design, std::vector<LabeledPattern> patterns, const FitOptions & options)
{
    const auto rows = design.features.rows();
    const auto cols = design.features.cols();
    const double row_count = static_cast<double>(rows);

    FeatureScaling scaling{std::vector<double>(static_cast<std::size_t>(cols), 0.0),
                           std::vector<double>(static_cast<std::size_t>(cols), 1.0)};
    double target_mean = 0.0;
    if (options.intercept)
        target_mean = design.targets.mean();

    Eigen::MatrixXd scaled(rows + (options.ridge > 0.0 ? cols : 0), cols);
    scaled.setZero();
    for (Eigen::Index j = 0; j < cols; ++j) {
        auto column = design.features.col(j);
        const double mean = options.intercept ? column.mean() : 0.0;
        const double spread = std::sqrt((column.array() - mean).square().sum() / row_count);
        const double scale = spread > 0.0 ? spread : 1.0;
        scaling.mean[static_cast<std::size_t>(j)] = mean;
        scaling.scale[static_cast<std::size_t>(j)] = scale;
        scaled.col(j).head(rows) = (column.array() - mean) / scale;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(scaled.rows());
    rhs.head(rows) = design.targets.array() - target_mean;
    if (options.ridge > 0.0)
        scaled.bottomRows(cols).diagonal().setConstant(std::sqrt(options.ridge));

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(scaled);
    const Eigen::VectorXd beta = solver.solve(rhs);

    const Eigen::VectorXd residual = scaled.topRows(rows) * beta - rhs.head(rows);
    const double sse = residual.squaredNorm();
    const double norm_y = design.targets.norm();

    std::vector<double> coefficients(static_cast<std::size_t>(cols));
    double intercept = target_mean;
    for (Eigen::Index j = 0; j < cols; ++j) {
        const auto i = static_cast<std::size_t>(j);
        coefficients[i] = beta[j] / scaling.scale[i];
        intercept -= coefficients[i] * scaling.mean[i];
    }

    HomModel model(std::move(patterns), std::move(coefficients), options.shift, intercept, options.normalization,
                   std::move(scaling));
    return FitResult{std::move(model), sse, norm_y > 0.0 ? std::sqrt(sse) / norm_y : std::sqrt(sse),
                     static_cast<std::size_t>(solver.rank()), static_cast<std::size_t>(rows)};
}

void check_fit_options(const FitOptions & options)
{
    if (!(options.ridge >= 0.0))
        throw ContractError("ridge must be nonnegative");
}

}  // namespace

std::vector<double> featurize(const WeightedGraph & g, std::span<const Pattern> patterns, double shift,
                              Normalization normalization)
{
    const auto labeled = as_unlabeled(patterns);
    const auto plans = make_plans(labeled);
    return plan_features(ghm::shift(g, shift), {}, labeled, plans, normalization);
}

std::vector<double> featurize_labeled(const WeightedGraph & g, std::span<const std::size_t> x,
                                      std::span<const LabeledPattern> patterns, double shift,
                                      Normalization normalization)
{
    for (const auto & p : patterns)
        check_tuple(g, x, p.k());
    const auto plans = make_plans(patterns);
    return plan_features(ghm::shift(g, shift), x, patterns, plans, normalization);
}

std::vector<double> featurize_batch(std::span<const WeightedGraph> graphs, std::span<const LabeledPattern> patterns,
                                    double shift, Normalization normalization, std::size_t threads)
{
    for (const auto & p : patterns)
        if (p.k() != 0)
            throw ContractError("featurize_batch expects unlabeled patterns");
    const auto plans = make_plans(patterns);
    const std::size_t p = patterns.size();
    std::vector<double> out(graphs.size() * p);
    parallel_for(graphs.size(), threads, [&](std::size_t i) {
        auto row = plan_features(ghm::shift(graphs[i], shift), {}, patterns, plans, normalization);
        std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(i * p));
    });
    return out;
}

FitResult fit(const Dataset & d, std::span<const Pattern> patterns, const FitOptions & options)
{
    check_fit_options(options);
    if (d.graphs.empty())
        throw ContractError("cannot fit an empty dataset");
    d.validate();
    if (d.equivariant())
        throw ContractError("fit expects an invariant dataset; use fit_equivariant for tuple targets");
    if (patterns.empty())
        throw ContractError("fit needs at least one pattern");

    auto labeled = as_unlabeled(patterns);
    const auto flat = featurize_batch(d.graphs, labeled, options.shift, options.normalization, options.threads);
    const auto rows = static_cast<Eigen::Index>(d.size());
    const auto cols = static_cast<Eigen::Index>(patterns.size());
    Design design{Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                      flat.data(), rows, cols),
                  Eigen::Map<const Eigen::VectorXd>(d.targets.data(), rows)};
    return solve(std::move(design), std::move(labeled), options);
}

FitResult fit_equivariant(const Dataset & d, std::span<const LabeledPattern> patterns, const FitOptions & options)
{
    check_fit_options(options);
    if (d.graphs.empty())
        throw ContractError("cannot fit an empty dataset");
    d.validate();
    if (!d.equivariant())
        throw ContractError("fit_equivariant expects tuple targets");
    if (patterns.empty())
        throw ContractError("fit_equivariant needs at least one pattern");
    const std::size_t k = d.arity();
    for (const auto & p : patterns)
        if (p.k() != k)
            throw ContractError("pattern has " + std::to_string(p.k()) + " labels but dataset tuples have length "
                                + std::to_string(k));

    std::vector<std::size_t> offset(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i)
        offset[i + 1] = offset[i] + d.tuple_targets[i].tuples.size();
    const std::size_t rows = offset.back();
    if (rows == 0)
        throw ContractError("equivariant dataset has no tuples");

    const auto plans = make_plans(patterns);
    Design design{Eigen::MatrixXd(rows, patterns.size()), Eigen::VectorXd(rows)};
    parallel_for(d.size(), options.threads, [&](std::size_t i) {
        const auto shifted = shift(d.graphs[i], options.shift);
        const auto & t = d.tuple_targets[i];
        for (std::size_t r = 0; r < t.tuples.size(); ++r) {
            const auto row = plan_features(shifted, t.tuples[r], patterns, plans, options.normalization);
            const auto at = static_cast<Eigen::Index>(offset[i] + r);
            for (std::size_t j = 0; j < row.size(); ++j)
                design.features(at, static_cast<Eigen::Index>(j)) = row[j];
            design.targets[at] = t.values[r];
        }
    });
    return solve(std::move(design), {patterns.begin(), patterns.end()}, options);
}

double predict_at(const HomModel & model, const WeightedGraph & g, std::span<const std::size_t> x)
{
    check_tuple(g, x, model.arity());
    const auto plans = make_plans(model.patterns());
    const auto row = plan_features(shift(g, model.shift()), x, model.patterns(), plans, model.normalization());
    double total = model.intercept();
    for (std::size_t j = 0; j < row.size(); ++j)
        total += model.coefficients()[j] * row[j];
    return total;
}

double predict(const HomModel & model, const WeightedGraph & g)
{
    if (model.arity() != 0)
        throw ContractError("model is equivariant; use predict_equivariant");
    return predict_at(model, g, {});
}

std::vector<std::vector<std::size_t>> distinct_tuples(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n)
        return out;
    std::vector<std::size_t> x(k, 0);
    std::vector<bool> used(n, false);
    // Depth-first over positions, skipping used vertices.
    auto recurse = [&](auto & self, std::size_t pos) -> void {
        if (pos == k) {
            out.push_back(x);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v])
                continue;
            used[v] = true;
            x[pos] = v;
            self(self, pos + 1);
            used[v] = false;
        }
    };
    recurse(recurse, 0);
    return out;
}

std::vector<TupleValue> predict_equivariant(const HomModel & model, const WeightedGraph & g)
{
    const auto plans = make_plans(model.patterns());
    const auto shifted = shift(g, model.shift());
    std::vector<TupleValue> out;
    for (auto & x : distinct_tuples(g.n(), model.arity())) {
        const auto row = plan_features(shifted, x, model.patterns(), plans, model.normalization());
        double total = model.intercept();
        for (std::size_t j = 0; j < row.size(); ++j)
            total += model.coefficients()[j] * row[j];
        out.push_back({std::move(x), total});
    }
    return out;
}

bool hom_values_differ(double a, double b, bool exact, double tolerance)
{
    if (exact)
        return a != b;
    return std::abs(a - b) > tolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

double max_abs_entry(const WeightedGraph & g)
{
    double m = 0.0;
    for (double x : g.data())
        m = std::max(m, std::abs(x));
    return m;
}

// Every partial sum of hom(f, g) is an integer below 2^53.
bool exactly_representable(const LabeledPattern & f, const WeightedGraph & g)
{
    if (!g.integer_valued())
        return false;
    const double maps = std::pow(static_cast<double>(g.n()), static_cast<double>(f.m() - f.k()));
    const double term = std::pow(std::max(1.0, max_abs_entry(g)), static_cast<double>(f.m() + f.pattern().arc_count()));
    return maps * term < 9007199254740992.0;
}

std::optional<Separation> search(const WeightedGraph & s1, std::span<const std::size_t> x1, const WeightedGraph & s2,
                                 std::span<const std::size_t> x2, const std::vector<LabeledPattern> & atlas,
                                 double tolerance)
{
    for (const auto & p : atlas) {
        const CountingPlan plan(p);
        const double h1 = plan.evaluate(s1, x1);
        const double h2 = plan.evaluate(s2, x2);
        const bool exact = exactly_representable(p, s1) && exactly_representable(p, s2);
        if (hom_values_differ(h1, h2, exact, tolerance))
            return Separation{p, h1, h2};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Separation> separate(const WeightedGraph & g1, const WeightedGraph & g2, std::size_t max_m, double shift,
                                   double tolerance)
{
    if (g1.n() != g2.n())
        throw ContractError("graphs have different vertex counts (" + std::to_string(g1.n()) + " vs "
                            + std::to_string(g2.n()) + ")");
    return search(ghm::shift(g1, shift), {}, ghm::shift(g2, shift), {},
                  enumerate_labeled_patterns(max_m, 0), tolerance);
}

std::optional<Separation> separate_labeled(const LabeledGraph & g1, const LabeledGraph & g2, std::size_t max_m,
                                           double shift, double tolerance)
{
    if (g1.graph().n() != g2.graph().n())
        throw ContractError("graphs have different vertex counts (" + std::to_string(g1.graph().n()) + " vs "
                            + std::to_string(g2.graph().n()) + ")");
    if (g1.k() != g2.k())
        throw ContractError("graphs have different label counts (" + std::to_string(g1.k()) + " vs "
                            + std::to_string(g2.k()) + ")");
    return search(ghm::shift(g1.graph(), shift), g1.labels(), ghm::shift(g2.graph(), shift), g2.labels(),
                  enumerate_labeled_patterns(max_m, g1.k()), tolerance);
}

}  // namespace ghm
