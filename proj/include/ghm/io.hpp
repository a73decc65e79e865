#pragma once

// JSON file formats. Vertex indices, labels and block indices are 1-based
// in files and 0-based in memory.

#include "ghm/graph.hpp"
#include "ghm/graphon.hpp"
#include "ghm/model.hpp"
#include "ghm/pattern.hpp"

#include <json.hpp>

#include <string>

namespace ghm::io {

using nlohmann::json;

/// Parses a file; syntax errors become ParseError with line/column info.
json read_json_file(const std::string & path);
json parse_json(const std::string & text);

/// {"n": int, "weights": [[...]]}; a "labels" field, if present, is ignored.
WeightedGraph graph_from_json(const json & j);
/// {"n": int, "weights": [[...]], "labels": [ints]}; labels default to empty.
LabeledGraph labeled_graph_from_json(const json & j);
json to_json(const WeightedGraph & g);
json to_json(const LabeledGraph & g);

/// {"m": int, "edges": [[i,j],...], "k": int (optional, default 0)}
LabeledPattern pattern_from_json(const json & j);
json to_json(const Pattern & p);
json to_json(const LabeledPattern & p);

/// {"q": int, "B": [[...]], "mu": [...] (optional, uniform)}. Signed
/// graphons accept values in [-1,1].
StepGraphon graphon_from_json(const json & j, bool allow_signed = false);
json to_json(const StepGraphon & w);

/// {"shift", "normalization": {"kind", "mean", "scale"}, "patterns",
///  "coefficients", "intercept"}
HomModel model_from_json(const json & j);
json to_json(const HomModel & model);

/// Array of graph objects each carrying "y": real, or
/// "y": {"tuples": [[...]], "values": [...]}.
Dataset dataset_from_json(const json & j);
json to_json(const Dataset & d);

}  // namespace ghm::io
