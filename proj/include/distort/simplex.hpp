#pragma once

#include <gmpxx.h>

#include <vector>

namespace distort {

enum class Relation { le, ge, eq };
enum class LpStatus { optimal, infeasible, unbounded };

// minimize objective . x  subject to  rows[i] . x (rel) rhs[i],  x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<mpq_class> objective;
  std::vector<std::vector<mpq_class>> rows;
  std::vector<Relation> relations;
  std::vector<mpq_class> rhs;

  void add_row(std::vector<mpq_class> coeffs, Relation rel, mpq_class b);
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  mpq_class value;
  std::vector<mpq_class> x;
};

// Dense two-phase tableau simplex with Bland's rule; exact.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace distort
