#include "ghm/error.hpp"
#include "ghm/graphon.hpp"
#include "ghm/hom.hpp"
#include "ghm/io.hpp"
#include "ghm/model.hpp"
#include "ghm/tree_decomposition.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ghm;

namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

WeightedGraph to_graph(const Matrix & a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw ContractError("expected a square 2-d array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    return WeightedGraph(n, std::vector<double>(a.data(), a.data() + n * n));
}

Matrix to_array(const WeightedGraph & g)
{
    const auto n = static_cast<py::ssize_t>(g.n());
    Matrix out({n, n});
    std::copy(g.data().begin(), g.data().end(), out.mutable_data());
    return out;
}

std::vector<WeightedGraph> to_graphs(const std::vector<Matrix> & arrays)
{
    std::vector<WeightedGraph> out;
    out.reserve(arrays.size());
    for (const auto & a : arrays)
        out.push_back(to_graph(a));
    return out;
}

std::vector<Pattern> unlabeled(const std::vector<LabeledPattern> & patterns)
{
    std::vector<Pattern> out;
    for (const auto & p : patterns) {
        if (p.k() != 0)
            throw ContractError("expected unlabeled patterns (k = 0)");
        out.push_back(p.pattern());
    }
    return out;
}

std::vector<LabeledPattern> default_atlas(std::size_t max_m, std::size_t k, bool connected)
{
    return enumerate_labeled_patterns(max_m, k, connected);
}

FitOptions options(double shift, double ridge, bool intercept, const std::string & normalization)
{
    FitOptions o;
    o.shift = shift;
    o.ridge = ridge;
    o.intercept = intercept;
    o.normalization = normalization_from_string(normalization);
    return o;
}

py::dict fit_summary(const FitResult & r)
{
    py::dict d;
    d["model"] = r.model;
    d["sse"] = r.sse;
    d["relative_residual"] = r.relative_residual;
    d["rank"] = r.rank;
    d["rows"] = r.rows;
    return d;
}

py::object separation(const std::optional<Separation> & s)
{
    if (!s)
        return py::none();
    return py::make_tuple(s->pattern, s->hom1, s->hom2);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Weighted graph homomorphism numbers, homomorphism models and step graphons.";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<ContractError> contract(m, "ContractError", PyExc_ValueError);
    static py::exception<MixedSizeError> mixed(m, "MixedSizeError", contract.ptr());
    static py::exception<ParseError> parse(m, "ParseError", PyExc_ValueError);
    static py::exception<CapExceeded> cap(m, "CapExceeded", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const CapExceeded & e) {
            cap(e.what());
        } catch (const ParseError & e) {
            parse(e.what());
        } catch (const MixedSizeError & e) {
            mixed(e.what());
        } catch (const ContractError & e) {
            contract(e.what());
        } catch (const Error & e) {
            error(e.what());
        }
    });

    py::class_<Pattern>(m, "Pattern")
        .def(py::init<std::size_t, std::vector<Arc>>(), py::arg("m"), py::arg("edges") = std::vector<Arc>{},
             "Simple digraph on vertices 0..m-1.")
        .def_property_readonly("m", &Pattern::m)
        .def_property_readonly("edges", &Pattern::arcs)
        .def("connected", &Pattern::connected)
        .def("canonical_form", [](const Pattern & p) { return to_hex(canonical_form(p)); })
        .def("treewidth", [](const Pattern & p) { return tree_decomposition(p).width; })
        .def_static("isolated", &Pattern::isolated)
        .def_static("directed_path", &Pattern::directed_path)
        .def_static("directed_cycle", &Pattern::directed_cycle)
        .def("__eq__", [](const Pattern & a, const Pattern & b) { return a == b; })
        .def("__repr__", [](const Pattern & p) { return "Pattern(" + io::to_json(p).dump() + ")"; });

    py::class_<LabeledPattern>(m, "LabeledPattern")
        .def(py::init<Pattern, std::size_t>(), py::arg("pattern"), py::arg("k") = 0,
             "Pattern whose first k vertices are labeled.")
        .def(py::init([](std::size_t m, std::vector<Arc> edges, std::size_t k) {
                 return LabeledPattern(Pattern(m, std::move(edges)), k);
             }),
             py::arg("m"), py::arg("edges"), py::arg("k") = 0)
        .def_property_readonly("pattern", &LabeledPattern::pattern)
        .def_property_readonly("m", &LabeledPattern::m)
        .def_property_readonly("k", &LabeledPattern::k)
        .def_property_readonly("edges", [](const LabeledPattern & p) { return p.pattern().arcs(); })
        .def("canonical_form", [](const LabeledPattern & p) { return to_hex(canonical_form(p)); })
        .def("to_json", [](const LabeledPattern & p) { return io::to_json(p).dump(); })
        .def("__eq__", [](const LabeledPattern & a, const LabeledPattern & b) { return a == b; })
        .def("__repr__", [](const LabeledPattern & p) { return "LabeledPattern(" + io::to_json(p).dump() + ")"; });
    py::implicitly_convertible<Pattern, LabeledPattern>();

    m.def("enumerate_patterns", &enumerate_patterns, py::arg("max_m"), py::arg("connected_only") = false,
          py::arg("cap") = default_enumeration_cap);
    m.def("enumerate_labeled_patterns", &enumerate_labeled_patterns, py::arg("max_m"), py::arg("k"),
          py::arg("connected_only") = false, py::arg("cap") = default_enumeration_cap);
    m.def("disjoint_union", &disjoint_union);
    m.def("glued_union", &glued_union);

    m.def(
        "hom",
        [](const LabeledPattern & f, const Matrix & w, double shift, const std::string & engine) {
            if (f.k() != 0)
                throw ContractError("labeled pattern; use hom_labeled");
            const auto g = ghm::shift(to_graph(w), shift);
            if (engine == "brute")
                return hom_brute(f.pattern(), g);
            if (engine != "dp")
                throw ContractError("engine must be 'dp' or 'brute'");
            return ghm::hom(f.pattern(), g);
        },
        py::arg("pattern"), py::arg("w"), py::arg("shift") = 0.0, py::arg("engine") = "dp",
        "hom(F, W + shift I): weighted count of all maps V(F) -> V(G).");
    m.def(
        "hom_labeled",
        [](const LabeledPattern & f, const Matrix & w, const std::vector<std::size_t> & labels, double shift,
           const std::string & engine) {
            LabeledGraph g(ghm::shift(to_graph(w), shift), labels);
            if (engine == "brute")
                return hom_labeled_brute(f, g);
            if (engine != "dp")
                throw ContractError("engine must be 'dp' or 'brute'");
            return ghm::hom_labeled(f, g);
        },
        py::arg("pattern"), py::arg("w"), py::arg("labels"), py::arg("shift") = 0.0, py::arg("engine") = "dp",
        "hom_x(F, W + shift I) with labeled vertex i pinned to labels[i] (0-based).");

    m.def("permute", [](const Matrix & w, const std::vector<std::size_t> & s) {
        return to_array(permute(to_graph(w), Permutation(s)));
    });
    m.def("edit_distance", [](const Matrix & a, const Matrix & b) { return edit_distance(to_graph(a), to_graph(b)); });

    py::class_<HomModel>(m, "HomModel")
        .def_property_readonly("patterns", &HomModel::patterns)
        .def_property_readonly("coefficients", &HomModel::coefficients)
        .def_property_readonly("intercept", &HomModel::intercept)
        .def_property_readonly("shift", &HomModel::shift)
        .def_property_readonly("arity", &HomModel::arity)
        .def("to_json", [](const HomModel & model) { return io::to_json(model).dump(); })
        .def_static("from_json", [](const std::string & text) { return io::model_from_json(io::parse_json(text)); });

    m.def(
        "featurize",
        [](const Matrix & w, const std::vector<LabeledPattern> & patterns, double shift, const std::string & norm) {
            return featurize(to_graph(w), unlabeled(patterns), shift, normalization_from_string(norm));
        },
        py::arg("w"), py::arg("patterns"), py::arg("shift") = 2.0, py::arg("normalization") = "none");
    m.def(
        "fit",
        [](const std::vector<Matrix> & graphs, const std::vector<double> & targets,
           std::optional<std::vector<LabeledPattern>> patterns, std::size_t max_m, bool connected, double shift,
           double ridge, bool intercept, const std::string & norm) {
            Dataset d;
            d.graphs = to_graphs(graphs);
            d.targets = targets;
            const auto basis = patterns ? *patterns : default_atlas(max_m, 0, connected);
            FitResult r = [&] {
                py::gil_scoped_release release;
                return ghm::fit(d, unlabeled(basis), options(shift, ridge, intercept, norm));
            }();
            return fit_summary(r);
        },
        py::arg("graphs"), py::arg("targets"), py::arg("patterns") = py::none(), py::arg("max_m") = 3,
        py::arg("connected") = false, py::arg("shift") = 2.0, py::arg("ridge") = 0.0, py::arg("intercept") = true,
        py::arg("normalization") = "none",
        "Least-squares fit of y ~ sum_F a_F hom(F, W + shift I). Returns a dict with the model and residuals.");
    m.def(
        "fit_equivariant",
        [](const std::vector<Matrix> & graphs, const std::vector<std::vector<std::vector<std::size_t>>> & tuples,
           const std::vector<std::vector<double>> & values, std::optional<std::vector<LabeledPattern>> patterns,
           std::size_t max_m, double shift, double ridge, bool intercept, const std::string & norm) {
            Dataset d;
            d.graphs = to_graphs(graphs);
            if (tuples.size() != values.size())
                throw ContractError("tuples and values have different lengths");
            for (std::size_t i = 0; i < tuples.size(); ++i)
                d.tuple_targets.push_back(TupleTargets{tuples[i], values[i]});
            const auto basis = patterns ? *patterns : default_atlas(max_m, d.arity(), false);
            FitResult r = [&] {
                py::gil_scoped_release release;
                return ghm::fit_equivariant(d, basis, options(shift, ridge, intercept, norm));
            }();
            return fit_summary(r);
        },
        py::arg("graphs"), py::arg("tuples"), py::arg("values"), py::arg("patterns") = py::none(),
        py::arg("max_m") = 3, py::arg("shift") = 2.0, py::arg("ridge") = 0.0, py::arg("intercept") = true,
        py::arg("normalization") = "none");
    m.def("predict", [](const HomModel & model, const Matrix & w) { return predict(model, to_graph(w)); });
    m.def("predict_at", [](const HomModel & model, const Matrix & w, const std::vector<std::size_t> & x) {
        return predict_at(model, to_graph(w), x);
    });
    m.def("predict_equivariant", [](const HomModel & model, const Matrix & w) {
        py::dict out;
        for (const auto & [x, value] : predict_equivariant(model, to_graph(w)))
            out[py::tuple(py::cast(x))] = value;
        return out;
    });

    m.def(
        "separate",
        [](const Matrix & a, const Matrix & b, std::size_t max_m, double shift) {
            return separation(ghm::separate(to_graph(a), to_graph(b), max_m, shift));
        },
        py::arg("w1"), py::arg("w2"), py::arg("max_m") = 3, py::arg("shift") = 2.0,
        "(pattern, hom1, hom2) for the first separating pattern, or None.");
    m.def(
        "separate_labeled",
        [](const Matrix & a, const std::vector<std::size_t> & xa, const Matrix & b,
           const std::vector<std::size_t> & xb, std::size_t max_m, double shift) {
            return separation(ghm::separate_labeled(LabeledGraph(to_graph(a), xa), LabeledGraph(to_graph(b), xb),
                                                    max_m, shift));
        },
        py::arg("w1"), py::arg("labels1"), py::arg("w2"), py::arg("labels2"), py::arg("max_m") = 3,
        py::arg("shift") = 2.0);

    py::class_<StepGraphon>(m, "StepGraphon")
        .def(py::init([](const Matrix & b, std::optional<std::vector<double>> mu, bool allow_signed) {
                 const auto g = to_graph(b);
                 std::vector<double> values(g.data().begin(), g.data().end());
                 auto measures = mu ? *mu : std::vector<double>(g.n(), 1.0 / static_cast<double>(g.n()));
                 return allow_signed ? StepGraphon::signed_kernel(g.n(), std::move(values), std::move(measures))
                                     : StepGraphon(g.n(), std::move(values), std::move(measures));
             }),
             py::arg("B"), py::arg("mu") = py::none(), py::arg("signed") = false)
        .def_property_readonly("q", &StepGraphon::q)
        .def_property_readonly("B", [](const StepGraphon & w) {
            return to_array(WeightedGraph(w.q(), std::vector<double>(w.values().begin(), w.values().end())));
        })
        .def_property_readonly("mu", [](const StepGraphon & w) {
            return std::vector<double>(w.mu().begin(), w.mu().end());
        })
        .def("permute_blocks",
             [](const StepGraphon & w, const std::vector<std::size_t> & s) { return w.permute_blocks(Permutation(s)); })
        .def("__sub__", [](const StepGraphon & a, const StepGraphon & b) { return a - b; });

    m.def("density", [](const LabeledPattern & f, const StepGraphon & w, const std::vector<std::size_t> & blocks) {
        return blocks.empty() && f.k() == 0 ? density(f.pattern(), w) : density_labeled(f, w, blocks);
    }, py::arg("pattern"), py::arg("graphon"), py::arg("blocks") = std::vector<std::size_t>{});
    m.def("cut_norm", [](const StepGraphon & w) { return cut_norm(w); });
    m.def("cut_distance", [](const StepGraphon & a, const StepGraphon & b) { return cut_distance(a, b); });
    m.def(
        "sample_graph",
        [](const StepGraphon & w, std::size_t n, std::uint64_t seed) { return to_array(sample_graph(w, n, seed)); },
        py::arg("graphon"), py::arg("n"), py::arg("seed") = 0);
}
