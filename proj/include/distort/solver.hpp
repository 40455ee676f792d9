#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distort/embed.hpp"
#include "distort/metric_space.hpp"
#include "distort/rational.hpp"

namespace distort {

enum class SolveStatus { exact, bounded };
std::string to_string(SolveStatus s);

struct SolverOptions {
  std::uint64_t budget = 1'000'000;  // search nodes (branching decisions)
  // Fix the coordinate that separates the first pair and order the rest.
  bool break_symmetry = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
  std::uint64_t restarts = 0;
  std::uint64_t improvements = 0;  // incumbents found by the search
};

struct DistortionResult {
  Rational lower;
  Rational upper;
  MatrixEmbedding witness;  // distortion exactly upper, contraction constant 1
  SearchStats stats;
  SolveStatus status = SolveStatus::bounded;
  unsigned dims = 0;
};

DistortionResult min_distortion(const MetricSpace& m, unsigned dims, const SolverOptions& opt = {});

// One coordinate's subproblem: minimize D such that some phi satisfies
// |phi(x)-phi(y)| <= D d(x,y) for all pairs and phi(hi)-phi(lo) >= d(hi,lo)
// for every listed constraint. nullopt when the constraints are cyclic.
struct Separation {
  std::size_t hi;
  std::size_t lo;
};
struct CoordinateOptimum {
  Rational D;
  std::vector<Rational> phi;
};
std::optional<CoordinateOptimum> coordinate_optimum(const MetricSpace& m, const std::vector<Separation>& constraints);

// Fréchet-style coordinates x -> d(x,p) - d(bot,p).
MatrixEmbedding frechet_embedding(const MetricSpace& m, const std::vector<std::size_t>& anchors);

}  // namespace distort
