#include "ghm/io.hpp"

#include "ghm/error.hpp"

#include <fstream>
#include <sstream>

namespace ghm::io {

namespace {

[[noreturn]] void fail(const std::string & field, const std::string & what)
{
    throw ParseError("field '" + field + "': " + what);
}

const json & require(const json & j, const char * field)
{
    if (!j.is_object())
        throw ParseError("expected a JSON object");
    auto it = j.find(field);
    if (it == j.end())
        fail(field, "missing");
    return *it;
}

std::size_t as_count(const json & j, const std::string & field)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

double as_real(const json & j, const std::string & field)
{
    if (!j.is_number())
        fail(field, "expected a number");
    return j.get<double>();
}

std::vector<double> as_reals(const json & j, const std::string & field)
{
    if (!j.is_array())
        fail(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_real(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::vector<double>> as_matrix(const json & j, const std::string & field, std::size_t n)
{
    if (!j.is_array())
        fail(field, "expected an array of rows");
    if (j.size() != n)
        fail(field, "has " + std::to_string(j.size()) + " rows, expected " + std::to_string(n));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto row = as_reals(j[i], field + "[" + std::to_string(i) + "]");
        if (row.size() != n)
            fail(field, "matrix is not square: row " + std::to_string(i + 1) + " has " + std::to_string(row.size())
                            + " entries, expected " + std::to_string(n));
        rows.push_back(std::move(row));
    }
    return rows;
}

// 1-based index list -> 0-based, each within 1..bound.
std::vector<std::size_t> as_indices(const json & j, const std::string & field, std::size_t bound)
{
    if (!j.is_array())
        fail(field, "expected an array of integers");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto & v = j[i];
        if (!v.is_number_integer())
            fail(field, "entry " + std::to_string(i + 1) + " is not an integer");
        const auto x = v.get<long long>();
        if (x < 1 || static_cast<std::size_t>(x) > bound)
            fail(field, "index " + std::to_string(x) + " outside 1.." + std::to_string(bound));
        out.push_back(static_cast<std::size_t>(x - 1));
    }
    return out;
}

std::vector<std::size_t> as_labels(const json & j, const std::string & field, std::size_t n)
{
    auto labels = as_indices(j, field, n);
    try {
        validate_labels(n, labels);
    } catch (const ContractError & e) {
        fail(field, e.what());
    }
    return labels;
}

json one_based(const std::vector<std::size_t> & xs)
{
    json out = json::array();
    for (auto x : xs)
        out.push_back(x + 1);
    return out;
}

}  // namespace

json parse_json(const std::string & text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error & e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

json read_json_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error & e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

WeightedGraph graph_from_json(const json & j)
{
    const std::size_t n = as_count(require(j, "n"), "n");
    if (n == 0)
        fail("n", "graph must have at least one vertex");
    return WeightedGraph::from_rows(as_matrix(require(j, "weights"), "weights", n));
}

LabeledGraph labeled_graph_from_json(const json & j)
{
    auto g = graph_from_json(j);
    std::vector<std::size_t> labels;
    if (auto it = j.find("labels"); it != j.end())
        labels = as_labels(*it, "labels", g.n());
    return LabeledGraph(std::move(g), std::move(labels));
}

json to_json(const WeightedGraph & g)
{
    return json{{"n", g.n()}, {"weights", g.rows()}};
}

json to_json(const LabeledGraph & g)
{
    auto out = to_json(g.graph());
    out["labels"] = one_based(g.labels());
    return out;
}

LabeledPattern pattern_from_json(const json & j)
{
    const std::size_t m = as_count(require(j, "m"), "m");
    if (m == 0)
        fail("m", "pattern must have at least one vertex");
    const auto & edges = require(j, "edges");
    if (!edges.is_array())
        fail("edges", "expected an array of [i, j] pairs");
    std::vector<Arc> arcs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string field = "edges[" + std::to_string(e) + "]";
        if (!edges[e].is_array() || edges[e].size() != 2)
            fail(field, "expected an [i, j] pair");
        auto ends = as_indices(edges[e], field, m);
        arcs.emplace_back(ends[0], ends[1]);
    }
    std::size_t k = 0;
    if (auto it = j.find("k"); it != j.end())
        k = as_count(*it, "k");
    if (k > m)
        fail("k", "label count " + std::to_string(k) + " exceeds m = " + std::to_string(m));
    try {
        return LabeledPattern(Pattern(m, std::move(arcs)), k);
    } catch (const ContractError & e) {
        fail("edges", e.what());
    }
}

json to_json(const Pattern & p)
{
    json edges = json::array();
    for (const auto & [i, j] : p.arcs())
        edges.push_back({i + 1, j + 1});
    return json{{"m", p.m()}, {"edges", std::move(edges)}};
}

json to_json(const LabeledPattern & p)
{
    auto out = to_json(p.pattern());
    out["k"] = p.k();
    return out;
}

StepGraphon graphon_from_json(const json & j, bool allow_signed)
{
    const std::size_t q = as_count(require(j, "q"), "q");
    if (q == 0)
        fail("q", "graphon needs at least one block");
    auto rows = as_matrix(require(j, "B"), "B", q);
    std::vector<double> values;
    for (auto & r : rows)
        values.insert(values.end(), r.begin(), r.end());
    std::vector<double> mu(q, 1.0 / static_cast<double>(q));
    if (auto it = j.find("mu"); it != j.end()) {
        mu = as_reals(*it, "mu");
        if (mu.size() != q)
            fail("mu", "has " + std::to_string(mu.size()) + " entries, expected " + std::to_string(q));
    }
    try {
        return allow_signed ? StepGraphon::signed_kernel(q, std::move(values), std::move(mu))
                            : StepGraphon(q, std::move(values), std::move(mu));
    } catch (const ContractError & e) {
        fail("B/mu", e.what());
    }
}

json to_json(const StepGraphon & w)
{
    json rows = json::array();
    for (std::size_t a = 0; a < w.q(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < w.q(); ++b)
            row.push_back(w(a, b));
        rows.push_back(std::move(row));
    }
    return json{{"q", w.q()}, {"B", std::move(rows)}, {"mu", std::vector<double>(w.mu().begin(), w.mu().end())}};
}

HomModel model_from_json(const json & j)
{
    const double shift = as_real(require(j, "shift"), "shift");
    const auto & pj = require(j, "patterns");
    if (!pj.is_array() || pj.empty())
        fail("patterns", "expected a nonempty array of pattern objects");
    std::vector<LabeledPattern> patterns;
    for (std::size_t i = 0; i < pj.size(); ++i) {
        try {
            patterns.push_back(pattern_from_json(pj[i]));
        } catch (const ParseError & e) {
            throw ParseError("patterns[" + std::to_string(i) + "]: " + e.what());
        }
    }
    auto coefficients = as_reals(require(j, "coefficients"), "coefficients");
    double intercept = 0.0;
    if (auto it = j.find("intercept"); it != j.end())
        intercept = as_real(*it, "intercept");

    Normalization normalization = Normalization::none;
    FeatureScaling scaling;
    if (auto it = j.find("normalization"); it != j.end()) {
        if (!it->is_object())
            fail("normalization", "expected an object");
        if (auto kind = it->find("kind"); kind != it->end()) {
            if (!kind->is_string())
                fail("normalization.kind", "expected a string");
            try {
                normalization = normalization_from_string(kind->get<std::string>());
            } catch (const ContractError & e) {
                fail("normalization.kind", e.what());
            }
        }
        if (auto mean = it->find("mean"); mean != it->end())
            scaling.mean = as_reals(*mean, "normalization.mean");
        if (auto scale = it->find("scale"); scale != it->end())
            scaling.scale = as_reals(*scale, "normalization.scale");
    }
    try {
        return HomModel(std::move(patterns), std::move(coefficients), shift, intercept, normalization,
                        std::move(scaling));
    } catch (const ContractError & e) {
        throw ParseError(std::string("model: ") + e.what());
    }
}

json to_json(const HomModel & model)
{
    json patterns = json::array();
    for (const auto & p : model.patterns())
        patterns.push_back(to_json(p));
    json normalization{{"kind", to_string(model.normalization())}};
    if (!model.scaling().mean.empty()) {
        normalization["mean"] = model.scaling().mean;
        normalization["scale"] = model.scaling().scale;
    }
    return json{{"shift", model.shift()},
                {"normalization", std::move(normalization)},
                {"patterns", std::move(patterns)},
                {"coefficients", model.coefficients()},
                {"intercept", model.intercept()}};
}

Dataset dataset_from_json(const json & j)
{
    if (!j.is_array())
        throw ParseError("dataset: expected a JSON array of graph objects");
    Dataset d;
    bool any_tuples = false, any_scalar = false;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "dataset[" + std::to_string(i) + "]";
        try {
            d.graphs.push_back(graph_from_json(j[i]));
            const auto & y = require(j[i], "y");
            if (y.is_number()) {
                any_scalar = true;
                d.targets.push_back(y.get<double>());
            } else if (y.is_object()) {
                any_tuples = true;
                const auto & tj = require(y, "tuples");
                if (!tj.is_array())
                    fail("y.tuples", "expected an array of tuples");
                TupleTargets t;
                for (std::size_t r = 0; r < tj.size(); ++r)
                    t.tuples.push_back(as_labels(tj[r], "y.tuples[" + std::to_string(r) + "]", d.graphs.back().n()));
                t.values = as_reals(require(y, "values"), "y.values");
                if (t.values.size() != t.tuples.size())
                    fail("y.values", "has " + std::to_string(t.values.size()) + " entries for "
                                         + std::to_string(t.tuples.size()) + " tuples");
                d.tuple_targets.push_back(std::move(t));
            } else {
                fail("y", "expected a number or {\"tuples\", \"values\"}");
            }
        } catch (const ParseError & e) {
            throw ParseError(where + ": " + e.what());
        } catch (const ContractError & e) {
            throw ParseError(where + ": " + e.what());
        }
        if (any_tuples && any_scalar)
            throw ParseError(where + ": dataset mixes scalar and tuple targets");
    }
    return d;
}

json to_json(const Dataset & d)
{
    json out = json::array();
    for (std::size_t i = 0; i < d.graphs.size(); ++i) {
        auto item = to_json(d.graphs[i]);
        if (d.equivariant()) {
            json tuples = json::array();
            for (const auto & x : d.tuple_targets[i].tuples)
                tuples.push_back(one_based(x));
            item["y"] = json{{"tuples", std::move(tuples)}, {"values", d.tuple_targets[i].values}};
        } else {
            item["y"] = d.targets[i];
        }
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace ghm::io
