#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distort/embed.hpp"
#include "distort/rational.hpp"
#include "distort/spaces.hpp"
#include "distort/stepfn.hpp"

namespace distort {

// k = floor(D/(2-D)) + 1, for 1 <= D < 2.
std::uint64_t separation_base(const Rational& D);
// 1 / ln k
double constant_cd(const Rational& D);
// Least n with k^n >= m.
unsigned analytic_min_coords(const Rational& D, std::uint64_t m);
// k^n: the largest (4-2D)-separated subset of [-D,D]^n in the sup norm.
mpz_class max_separated(const Rational& D, unsigned n);

struct ByproductParams {
  mpz_class k;                 // least k with ln k / ln base > m, i.e. base^m + 1
  mpz_class n_exponent;        // n = 2^(2+k)
  std::optional<mpz_class> n;  // spelled out while n <= 2^64
};
ByproductParams byproduct_params(const Rational& D, std::uint64_t m);

struct Certificate {
  Rational D;
  std::uint64_t m = 0;
  std::uint64_t base = 0;
  double c_d = 0;
  unsigned n_min = 0;
  std::vector<std::pair<unsigned, mpz_class>> capacities;  // (n, max_separated)
};
Certificate make_certificate(const Rational& D, std::uint64_t m, unsigned max_n = 0);

struct CountingReport {
  bool ok = false;
  std::string failure;
  Rational D;
  Rational threshold;
  std::uint64_t choices = 0;       // tuples (a_i, b_i) checked
  std::uint64_t attaining = 0;     // norm-attaining coordinates inspected
  std::size_t min_gamma = 0;       // smallest witness set over all choices
  unsigned required_gamma = 0;     // analytic_min_coords(D, n_h)
  std::uint64_t capacity_base = 0;
};

// Counting step of the distortion-2 argument on a graph space
// M(A_0^2, A_1^{n_1}, ..., A_h^{n_h}): for every a_i != b_i, norm-attaining
// coordinates of f(A)-f(B) must lie in every witness region, one witness per
// last-level pair gives a (4-2D)-separated family in [-D,D]^Gamma, and
// k^|Gamma| >= n_h.
CountingReport verify_witness_counting(const MatrixEmbedding& e, const Rational& D, const GraphSpec& spec);
CountingReport verify_witness_counting(const StepEmbedding& e, const Rational& D, const GraphSpec& spec);

}  // namespace distort
