#pragma once

#include <string>

#include "json.hpp"

#include "distort/certificate.hpp"
#include "distort/embed.hpp"
#include "distort/interval_set.hpp"
#include "distort/metric_space.hpp"
#include "distort/ordinal.hpp"
#include "distort/rational.hpp"
#include "distort/solver.hpp"
#include "distort/stepfn.hpp"
#include "distort/trees.hpp"

namespace distort {

using Json = nlohmann::ordered_json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const Rational& r);
Json to_json(const Ordinal& o);
Json to_json(const MetricSpace& m);
Json to_json(const StepFunction& f);
Json to_json(const StepEmbedding& e);
Json to_json(const MatrixEmbedding& e);
Json to_json(const IntervalSet& s);
Json to_json(const TreeSpec& t);
Json to_json(const FiniteTree& t);
Json to_json(const WitnessReport& r);
Json to_json(const DistortionResult& r);
Json to_json(const Certificate& c);
Json to_json(const CountingReport& r);
Json to_json(const StageRecord& s);
Json path_to_json(const TreePath& p);

Rational rational_from_json(const Json& j);
Ordinal ordinal_from_json(const Json& j);
MetricSpace space_from_json(const Json& j);
StepFunction stepfn_from_json(const Json& j);
StepEmbedding step_embedding_from_json(const Json& j);
MatrixEmbedding matrix_embedding_from_json(const Json& j);
// Either embedding form; matrices become step functions on [0, n-1].
StepEmbedding any_embedding_from_json(const Json& j);
IntervalSet interval_set_from_json(const Json& j);
TreeSpec tree_spec_from_json(const Json& j);
TreePath path_from_json(const Json& j);
FiniteTree tree_from_json(const Json& j);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace distort
