#pragma once

// Shared by the solver driver and its conflict-driven search.

#include <cstdint>
#include <vector>

#include "distort/metric_space.hpp"
#include "distort/rational.hpp"

namespace distort::detail {

// Separation constraint phi(hi) - phi(lo) >= d in one coordinate.
struct Edge {
  std::uint32_t hi;
  std::uint32_t lo;
  std::int64_t d;
};

// Distances scaled to integers, pairs by decreasing distance then labels.
struct Problem {
  const MetricSpace* space = nullptr;
  std::size_t k = 0;
  std::vector<std::int64_t> dist;
  std::int64_t scale = 1;
  unsigned dims = 1;
  struct Pair {
    std::uint32_t u, v;
    std::int64_t d;
  };
  std::vector<Pair> pairs;

  std::int64_t d(std::size_t a, std::size_t b) const { return dist[a * k + b]; }
};

Problem make_problem(const MetricSpace& m, unsigned dims);

struct Ratio {
  bool feasible = true;
  std::int64_t p = 0, q = 1;
  std::vector<std::int64_t> psi;  // potentials scaled by q
  Rational value() const { return Rational(p, q); }
};

// Least D for one coordinate carrying the given separations.
Ratio ratio_optimum(const Problem& P, const std::vector<Edge>& E);

}  // namespace distort::detail
