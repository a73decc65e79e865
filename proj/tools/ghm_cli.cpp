// ghm: command-line front end.
//
// Exit codes: 0 success, 1 not separated, 2 parse error, 3 resource cap
// exceeded, 4 input contract violation.

#include "ghm/error.hpp"
#include "ghm/graphon.hpp"
#include "ghm/hom.hpp"
#include "ghm/io.hpp"
#include "ghm/model.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ghm::io::json;

enum Exit : int {
    ok = 0,
    not_separated = 1,
    parse_error = 2,
    cap_exceeded = 3,
    contract_violation = 4,
};

std::string format15(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", x);
    return buffer;
}

double work_cap()
{
    if (const char * text = std::getenv("GHM_WORK_CAP")) {
        char * end = nullptr;
        const double cap = std::strtod(text, &end);
        if (end == text || *end != '\0' || !(cap > 0.0))
            throw ghm::ParseError("GHM_WORK_CAP: expected a positive number, got '" + std::string(text) + "'");
        return cap;
    }
    return ghm::default_work_cap;
}

void write_text(const std::string & path, const std::string & text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ghm::ContractError("cannot write '" + path + "'");
    out << text;
}

std::vector<ghm::LabeledPattern> read_pattern_list(const std::string & path)
{
    const auto j = ghm::io::read_json_file(path);
    if (!j.is_array())
        throw ghm::ParseError(path + ": expected a JSON array of pattern objects");
    std::vector<ghm::LabeledPattern> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(ghm::io::pattern_from_json(j[i]));
        } catch (const ghm::ParseError & e) {
            throw ghm::ParseError(path + ": [" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

// hom ----------------------------------------------------------------------

struct HomArgs {
    std::string pattern, graph, engine = "dp";
    double shift = 0.0;
    bool labeled = false;
};

int run_hom(const HomArgs & a)
{
    const auto pattern = ghm::io::pattern_from_json(ghm::io::read_json_file(a.pattern));
    const auto gj = ghm::io::read_json_file(a.graph);
    double value = 0.0;
    if (a.labeled) {
        auto g = ghm::io::labeled_graph_from_json(gj);
        ghm::LabeledGraph shifted(ghm::shift(g.graph(), a.shift), g.labels());
        value = a.engine == "brute" ? ghm::hom_labeled_brute(pattern, shifted, work_cap())
                                    : ghm::hom_labeled(pattern, shifted);
    } else {
        if (pattern.k() != 0)
            throw ghm::ContractError("pattern has k = " + std::to_string(pattern.k())
                                     + " labeled vertices; pass --labeled and give the graph labels");
        const auto g = ghm::shift(ghm::io::graph_from_json(gj), a.shift);
        value = a.engine == "brute" ? ghm::hom_brute(pattern.pattern(), g, work_cap()) : ghm::hom(pattern.pattern(), g);
    }
    std::cout << format15(value) << '\n';
    return ok;
}

// atlas --------------------------------------------------------------------

struct AtlasArgs {
    std::size_t max_m = 3, k = 0;
    bool connected = false;
    std::string out;
};

int run_atlas(const AtlasArgs & a)
{
    std::vector<ghm::LabeledPattern> atlas;
    if (a.k == 0)
        for (auto & p : ghm::enumerate_patterns(a.max_m, a.connected))
            atlas.emplace_back(std::move(p), 0);
    else
        atlas = ghm::enumerate_labeled_patterns(a.max_m, a.k, a.connected);

    std::map<std::size_t, std::size_t> counts;
    std::string list = "[\n";
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        const auto & p = atlas[i];
        ++counts[p.m()];
        auto item = ghm::io::to_json(p);
        item["canonical"] = ghm::to_hex(p.k() == 0 ? ghm::canonical_form(p.pattern()) : ghm::canonical_form(p));
        list += "  " + item.dump() + (i + 1 < atlas.size() ? ",\n" : "\n");
    }
    list += "]\n";
    std::cout << "m,classes\n";
    for (const auto & [m, c] : counts)
        std::cout << m << ',' << c << '\n';
    std::cout << "total," << atlas.size() << '\n';
    if (!a.out.empty())
        write_text(a.out, list);
    return ok;
}

// fit ----------------------------------------------------------------------

struct FitArgs {
    std::string dataset, out, report, patterns;
    std::size_t max_m = 3;
    double ridge = 0.0, shift = 2.0;
    bool connected = false, no_intercept = false;
    std::string normalization = "none";
    std::size_t threads = 0;
};

int run_fit(const FitArgs & a)
{
    const auto d = ghm::io::dataset_from_json(ghm::io::read_json_file(a.dataset));
    if (d.size() == 0)
        throw ghm::ContractError("dataset is empty");
    d.validate();
    const std::size_t k = d.arity();

    ghm::FitOptions options;
    options.ridge = a.ridge;
    options.shift = a.shift;
    options.intercept = !a.no_intercept;
    options.normalization = ghm::normalization_from_string(a.normalization);
    options.threads = a.threads;

    // Nested budgets: every pattern with at most b vertices, b = 1..max_m.
    std::vector<ghm::LabeledPattern> all;
    if (a.patterns.empty())
        all = ghm::enumerate_labeled_patterns(a.max_m, k, a.connected);
    else
        all = read_pattern_list(a.patterns);
    for (const auto & p : all)
        if (p.k() != k)
            throw ghm::ContractError("pattern list has k = " + std::to_string(p.k()) + " but dataset tuples have length "
                                     + std::to_string(k));

    std::size_t largest = 0;
    for (const auto & p : all)
        largest = std::max(largest, p.m());

    std::ostringstream csv;
    csv << "max_m,num_patterns,rank,sse,relative_residual\n";
    std::optional<ghm::FitResult> last;
    for (std::size_t budget = std::max<std::size_t>(k, 1); budget <= largest; ++budget) {
        std::vector<ghm::LabeledPattern> chosen;
        for (const auto & p : all)
            if (p.m() <= budget)
                chosen.push_back(p);
        if (chosen.empty())
            continue;
        ghm::FitResult result = [&] {
            if (k != 0)
                return ghm::fit_equivariant(d, chosen, options);
            std::vector<ghm::Pattern> plain;
            for (const auto & p : chosen)
                plain.push_back(p.pattern());
            return ghm::fit(d, plain, options);
        }();
        csv << budget << ',' << chosen.size() << ',' << result.rank << ',' << format15(result.sse) << ','
            << format15(result.relative_residual) << '\n';
        last = std::move(result);
    }
    std::cout << csv.str();
    if (!a.report.empty())
        write_text(a.report, csv.str());
    if (!a.out.empty() && last)
        write_text(a.out, ghm::io::to_json(last->model).dump(1) + '\n');
    return ok;
}

// predict ------------------------------------------------------------------

struct PredictArgs {
    std::string model, data;
};

std::string tuple_text(const std::vector<std::size_t> & x)
{
    std::string out;
    for (auto v : x)
        out += std::to_string(v + 1) + ' ';
    return out;
}

int run_predict(const PredictArgs & a)
{
    const auto model = ghm::io::model_from_json(ghm::io::read_json_file(a.model));
    const auto j = ghm::io::read_json_file(a.data);
    const bool equivariant = model.arity() != 0;

    if (j.is_object()) {
        const auto g = ghm::io::graph_from_json(j);
        if (!equivariant) {
            std::cout << format15(ghm::predict(model, g)) << '\n';
            return ok;
        }
        for (const auto & [x, value] : ghm::predict_equivariant(model, g))
            std::cout << tuple_text(x) << format15(value) << '\n';
        return ok;
    }

    const auto d = ghm::io::dataset_from_json(j);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto & g = d.graphs[i];
        if (!equivariant) {
            std::cout << format15(ghm::predict(model, g)) << '\n';
            continue;
        }
        if (d.equivariant()) {
            for (const auto & x : d.tuple_targets[i].tuples)
                std::cout << i + 1 << ' ' << tuple_text(x) << format15(ghm::predict_at(model, g, x)) << '\n';
        } else {
            for (const auto & [x, value] : ghm::predict_equivariant(model, g))
                std::cout << i + 1 << ' ' << tuple_text(x) << format15(value) << '\n';
        }
    }
    return ok;
}

// separate -----------------------------------------------------------------

struct SeparateArgs {
    std::string graph1, graph2;
    std::size_t max_m = 3;
    double shift = 2.0, tolerance = ghm::default_separation_tolerance;
    bool labeled = false;
};

int run_separate(const SeparateArgs & a)
{
    const auto j1 = ghm::io::read_json_file(a.graph1);
    const auto j2 = ghm::io::read_json_file(a.graph2);
    std::optional<ghm::Separation> witness;
    if (a.labeled)
        witness = ghm::separate_labeled(ghm::io::labeled_graph_from_json(j1), ghm::io::labeled_graph_from_json(j2),
                                        a.max_m, a.shift, a.tolerance);
    else
        witness = ghm::separate(ghm::io::graph_from_json(j1), ghm::io::graph_from_json(j2), a.max_m, a.shift,
                                a.tolerance);
    if (!witness) {
        std::cout << "NOT-SEPARATED (max_m = " << a.max_m << ")\n";
        return not_separated;
    }
    std::cout << ghm::io::to_json(witness->pattern).dump() << '\n';
    std::cout << "hom1 " << format15(witness->hom1) << '\n';
    std::cout << "hom2 " << format15(witness->hom2) << '\n';
    return ok;
}

// graphon ------------------------------------------------------------------

struct GraphonArgs {
    std::string pattern, graphon, graphon2, out;
    std::vector<std::size_t> blocks;
    std::size_t n = 10;
    std::uint64_t seed = 0;
};

int run_density(const GraphonArgs & a)
{
    const auto p = ghm::io::pattern_from_json(ghm::io::read_json_file(a.pattern));
    const auto w = ghm::io::graphon_from_json(ghm::io::read_json_file(a.graphon));
    std::vector<std::size_t> blocks;
    for (auto b : a.blocks) {
        if (b == 0 || b > w.q())
            throw ghm::ContractError("block index " + std::to_string(b) + " outside 1.." + std::to_string(w.q()));
        blocks.push_back(b - 1);
    }
    const double value = p.k() == 0 && blocks.empty() ? ghm::density(p.pattern(), w)
                                                      : ghm::density_labeled(p, w, blocks);
    std::cout << format15(value) << '\n';
    return ok;
}

int run_cutnorm(const GraphonArgs & a)
{
    const auto w = ghm::io::graphon_from_json(ghm::io::read_json_file(a.graphon), true);
    std::cout << format15(ghm::cut_norm(w)) << '\n';
    return ok;
}

int run_cutdist(const GraphonArgs & a)
{
    const auto w1 = ghm::io::graphon_from_json(ghm::io::read_json_file(a.graphon), true);
    const auto w2 = ghm::io::graphon_from_json(ghm::io::read_json_file(a.graphon2), true);
    std::cout << format15(ghm::cut_distance(w1, w2)) << '\n';
    std::cout << "# upper bound: minimum over block permutations only\n";
    return ok;
}

int run_sample(const GraphonArgs & a)
{
    const auto w = ghm::io::graphon_from_json(ghm::io::read_json_file(a.graphon));
    write_text(a.out, ghm::io::to_json(ghm::sample_graph(w, a.n, a.seed)).dump() + '\n');
    return ok;
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Weighted graph homomorphism numbers, homomorphism models and step graphons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ghm 0.1.0");

    HomArgs hom_args;
    auto * hom = app.add_subcommand("hom", "Print hom(F, W + cI), or hom_x with --labeled");
    hom->add_option("pattern", hom_args.pattern, "Pattern file")->required();
    hom->add_option("graph", hom_args.graph, "Graph file")->required();
    hom->add_option("--shift", hom_args.shift, "Diagonal shift c")->capture_default_str();
    hom->add_flag("--labeled", hom_args.labeled, "Pin the pattern's labeled vertices to the graph labels");
    hom->add_option("--engine", hom_args.engine, "Counting engine")
        ->check(CLI::IsMember({"dp", "brute"}))
        ->capture_default_str();

    AtlasArgs atlas_args;
    auto * atlas = app.add_subcommand("atlas", "Enumerate patterns up to isomorphism");
    atlas->add_option("--max-m", atlas_args.max_m, "Largest pattern size")->capture_default_str();
    atlas->add_option("--k", atlas_args.k, "Number of labeled vertices")->capture_default_str();
    atlas->add_flag("--connected", atlas_args.connected, "Weakly connected patterns only");
    atlas->add_option("--out", atlas_args.out, "Write the pattern list (JSON) here");

    FitArgs fit_args;
    auto * fit = app.add_subcommand("fit", "Fit a homomorphism model by least squares");
    fit->add_option("dataset", fit_args.dataset, "Dataset file")->required();
    fit->add_option("--max-m", fit_args.max_m, "Largest pattern size")->capture_default_str();
    fit->add_option("--patterns", fit_args.patterns, "Pattern list file (overrides --max-m/--connected)");
    fit->add_option("--ridge", fit_args.ridge, "Ridge penalty on standardized coefficients")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fit->add_option("--shift", fit_args.shift, "Diagonal shift")->capture_default_str();
    fit->add_flag("--connected", fit_args.connected, "Weakly connected patterns only");
    fit->add_flag("--no-intercept", fit_args.no_intercept, "Fit without a constant term");
    fit->add_option("--normalization", fit_args.normalization, "Feature normalization")
        ->check(CLI::IsMember({"none", "density"}))
        ->capture_default_str();
    fit->add_option("--threads", fit_args.threads, "Featurization threads (0: all cores)");
    fit->add_option("--out", fit_args.out, "Write the model for the largest budget here");
    fit->add_option("--report", fit_args.report, "Write the residual-vs-budget CSV here");

    PredictArgs predict_args;
    auto * predict = app.add_subcommand("predict", "Evaluate a model on a graph or dataset");
    predict->add_option("model", predict_args.model, "Model file")->required();
    predict->add_option("data", predict_args.data, "Graph or dataset file")->required();

    SeparateArgs separate_args;
    auto * separate = app.add_subcommand("separate", "Search for a pattern separating two graphs");
    separate->add_option("graph1", separate_args.graph1, "First graph file")->required();
    separate->add_option("graph2", separate_args.graph2, "Second graph file")->required();
    separate->add_option("--max-m", separate_args.max_m, "Largest pattern size")->capture_default_str();
    separate->add_option("--shift", separate_args.shift, "Diagonal shift")->capture_default_str();
    separate->add_option("--tolerance", separate_args.tolerance, "Relative tolerance")->capture_default_str();
    separate->add_flag("--labeled", separate_args.labeled, "Compare labeled graphs");

    GraphonArgs graphon_args;
    auto * graphon = app.add_subcommand("graphon", "Step graphon operations");
    graphon->require_subcommand(1);
    auto * density = graphon->add_subcommand("density", "Homomorphism density t(F, W)");
    density->add_option("pattern", graphon_args.pattern, "Pattern file")->required();
    density->add_option("graphon", graphon_args.graphon, "Graphon file")->required();
    density->add_option("--blocks", graphon_args.blocks, "Blocks (1-based) holding the labeled vertices");
    auto * cutnorm = graphon->add_subcommand("cutnorm", "Cut norm of a (signed) step function");
    cutnorm->add_option("graphon", graphon_args.graphon, "Graphon file")->required();
    auto * cutdist = graphon->add_subcommand("cutdist", "Cut distance upper bound over block permutations");
    cutdist->add_option("graphon1", graphon_args.graphon, "First graphon file")->required();
    cutdist->add_option("graphon2", graphon_args.graphon2, "Second graphon file")->required();
    auto * sample = graphon->add_subcommand("sample", "Sample an n-vertex weighted graph");
    sample->add_option("graphon", graphon_args.graphon, "Graphon file")->required();
    sample->add_option("--n", graphon_args.n, "Vertex count")->capture_default_str();
    sample->add_option("--seed", graphon_args.seed, "Random seed")->capture_default_str();
    sample->add_option("--out", graphon_args.out, "Write the graph here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        app.exit(e);
        return parse_error;
    }

    try {
        if (hom->parsed())
            return run_hom(hom_args);
        if (atlas->parsed())
            return run_atlas(atlas_args);
        if (fit->parsed())
            return run_fit(fit_args);
        if (predict->parsed())
            return run_predict(predict_args);
        if (separate->parsed())
            return run_separate(separate_args);
        if (density->parsed())
            return run_density(graphon_args);
        if (cutnorm->parsed())
            return run_cutnorm(graphon_args);
        if (cutdist->parsed())
            return run_cutdist(graphon_args);
        if (sample->parsed())
            return run_sample(graphon_args);
    } catch (const ghm::ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const ghm::CapExceeded & e) {
        std::cerr << "error: " << e.what() << '\n';
        return cap_exceeded;
    } catch (const ghm::MixedSizeError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return contract_violation;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return contract_violation;
    }
    return contract_violation;
}
