#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "distort/metric_space.hpp"
#include "distort/ordinal.hpp"
#include "distort/spaces.hpp"
#include "distort/stepfn.hpp"

namespace distort {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rows aligned with domain points, one column per coordinate.
struct MatrixEmbedding {
  MetricSpace domain;
  std::vector<std::string> coordinates;
  std::vector<std::vector<Rational>> rows;
};

void validate_matrix_embedding(const MatrixEmbedding& e);
DistortionConstants matrix_distortion(const MatrixEmbedding& e);
// Coordinates become the points 0..n-1 of the finite interval [0,n-1].
StepEmbedding to_step_embedding(const MatrixEmbedding& e);
// Values on the common refinement; coordinates are named by their cut.
MatrixEmbedding to_matrix_embedding(const StepEmbedding& e);

struct EmbedFiniteOptions {
  // Throw instead of falling back to phantom coordinates.
  bool strict = false;
  std::size_t cap = kDefaultSizeCap;
};

struct FiniteEmbedding {
  MatrixEmbedding embedding;
  // Levels (1-based) that received a phantom atom. Empty when the plain
  // coordinates over the third level were already isometric.
  std::vector<std::size_t> phantom_levels;
  // Least pair on which the plain coordinates fail, when they do.
  std::optional<std::pair<std::string, std::string>> plain_failure;
};

// x -> (d(x,b) - 2)_b over the third-level points b, each coordinate flipped
// so that point 1 maps to the constant 1. When two or more levels are
// singletons these coordinates cannot separate every pair, so unless strict
// the coordinates are taken over the graph with a phantom second atom added
// to every singleton level and restricted back. Coordinates that exist only
// in the augmented graph carry a "+" prefix.
FiniteEmbedding embed_finite(const GraphSpec& spec, const EmbedFiniteOptions& opt = {});

struct AmalgamEmbedding {
  StepEmbedding embedding;
  std::vector<std::string> pattern_points;   // A without the basepoint
  std::vector<std::vector<int>> patterns;    // realized signs, first appearance order
  Ordinal copy_length;                       // sum of (part bound + 1)
  std::vector<Ordinal> block_offsets;
  std::uint64_t copies() const { return patterns.size(); }
};

// Each part must send the basepoint to 0 and every other shared point to a
// function with values in {-1, 1}. The output lives on [0, pred(T*N)] where T
// is the copy length and N the number of realized sign patterns; the result is
// verified to be an isometry.
AmalgamEmbedding embed_amalgam(const std::vector<StepEmbedding>& parts, const std::vector<std::string>& shared,
                               std::size_t cap = kDefaultSizeCap);

struct StageRecord {
  TreePath path;
  Ordinal rank;                         // stage at which the node's space is built
  std::optional<std::uint64_t> copies;  // N, for amalgam stages
  std::uint64_t copy_limit_log2 = 0;    // 2 + sum(path)
  Ordinal bound;
  std::size_t points = 0;
  bool phantom = false;
};

struct FamilyEmbedding {
  StepEmbedding embedding;
  std::vector<StageRecord> stages;  // children before parents
};

FamilyEmbedding embed_node(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt);
FamilyEmbedding embed_family(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt);
FamilyEmbedding embed_glued(const Ordinal& alpha, const FamilyOptions& opt);

// f(bot) = 0, f(1) = 1 and f(2) = -1 everywhere, shared points +-1 valued.
// Returns a description of the first failed property.
std::optional<std::string> check_normal_form(const StepEmbedding& e);

}  // namespace distort
