#include "distort/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace distort {

namespace {

void check_range(const Rational& D) {
  if (D < Rational(1) || D >= Rational(2))
    throw std::domain_error("distortion parameter " + D.to_string() + " outside [1,2)");
}

std::string third_level_label(const std::string& first, const std::vector<std::string>& atoms) {
  std::string s = "{" + first;
  for (const auto& a : atoms) s += "," + a;
  return s + "}";
}

}  // namespace

std::uint64_t separation_base(const Rational& D) {
  check_range(D);
  return static_cast<std::uint64_t>((D / (Rational(2) - D)).floor()) + 1;
}

double constant_cd(const Rational& D) { return 1.0 / std::log(static_cast<double>(separation_base(D))); }

unsigned analytic_min_coords(const Rational& D, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("analytic_min_coords needs m >= 1");
  mpz_class base = static_cast<unsigned long>(separation_base(D));
  mpz_class reach = 1;
  unsigned n = 0;
  while (reach < static_cast<unsigned long>(m)) {
    reach *= base;
    ++n;
  }
  return n;
}

mpz_class max_separated(const Rational& D, unsigned n) {
  if (n == 0) throw std::invalid_argument("max_separated needs n >= 1");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), separation_base(D), n);
  return r;
}

ByproductParams byproduct_params(const Rational& D, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("byproduct_params needs m >= 1");
  ByproductParams p;
  mpz_ui_pow_ui(p.k.get_mpz_t(), separation_base(D), m);
  p.k += 1;
  p.n_exponent = p.k + 2;
  if (p.n_exponent <= 64) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), 2, p.n_exponent.get_ui());
    p.n = n;
  }
  return p;
}

Certificate make_certificate(const Rational& D, std::uint64_t m, unsigned max_n) {
  Certificate c;
  c.D = D;
  c.m = m;
  c.base = separation_base(D);
  c.c_d = constant_cd(D);
  c.n_min = analytic_min_coords(D, m);
  unsigned top = std::max(max_n, c.n_min);
  for (unsigned n = 1; n <= top; ++n) c.capacities.emplace_back(n, max_separated(D, n));
  return c;
}

CountingReport verify_witness_counting(const MatrixEmbedding& e, const Rational& D, const GraphSpec& spec) {
  check_range(D);
  validate_matrix_embedding(e);
  CountingReport r;
  r.D = D;
  r.threshold = Rational(4) - Rational(2) * D;
  r.capacity_base = separation_base(D);
  const auto& m = e.domain;
  if (spec.sizes.empty()) throw std::invalid_argument("witness counting needs at least one level");
  const std::size_t h = spec.sizes.size();
  const std::uint64_t nh = spec.sizes.back();
  r.required_gamma = nh >= 1 ? analytic_min_coords(D, nh) : 0;
  const std::size_t cols = e.coordinates.size();

  auto row = [&](const std::string& l) -> const std::vector<Rational>& { return e.rows[m.at(l)]; };
  for (const auto& v : e.rows[m.basepoint()])
    if (v != Rational(0)) {
      r.failure = "normalization violated: basepoint is not sent to 0";
      return r;
    }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      Rational norm(0);
      for (std::size_t c = 0; c < cols; ++c) norm = std::max(norm, abs(e.rows[i][c] - e.rows[j][c]));
      if (norm < m.d(i, j)) {
        r.failure = "normalization violated: pair (" + m.label(i) + ", " + m.label(j) + ") is contracted";
        return r;
      }
      if (norm > D * m.d(i, j)) {
        r.failure = "distortion exceeds D on pair (" + m.label(i) + ", " + m.label(j) + ")";
        return r;
      }
    }

  const auto& one = row(base_atom_label(1));
  const auto& two = row(base_atom_label(2));
  auto passes = [&](const std::vector<Rational>& x, const std::vector<Rational>& y, std::size_t c) {
    return abs(x[c] - y[c]) >= r.threshold;
  };

  std::vector<std::string> a_atoms(h - 1), b_atoms(h - 1);
  bool first_choice = true;
  std::function<bool(std::size_t)> choose = [&](std::size_t level) -> bool {
    if (level + 1 < h) {
      for (std::uint64_t a = 1; a <= spec.sizes[level]; ++a)
        for (std::uint64_t b = 1; b <= spec.sizes[level]; ++b) {
          if (a == b) continue;
          a_atoms[level] = level_atom_label(level + 1, a);
          b_atoms[level] = level_atom_label(level + 1, b);
          if (!choose(level + 1)) return false;
        }
      return true;
    }
    ++r.choices;
    std::vector<std::size_t> gamma;
    std::vector<std::string> last(nh);
    for (std::uint64_t a = 1; a <= nh; ++a) last[a - 1] = level_atom_label(h, a);
    for (std::uint64_t a = 0; a < nh; ++a)
      for (std::uint64_t b = 0; b < nh; ++b) {
        if (a == b) continue;
        auto A = a_atoms;
        A.push_back(last[a]);
        auto B = b_atoms;
        B.push_back(last[b]);
        const auto& fA = row(third_level_label(base_atom_label(1), A));
        const auto& fB = row(third_level_label(base_atom_label(2), B));
        Rational norm(0);
        for (std::size_t c = 0; c < cols; ++c) norm = std::max(norm, abs(fA[c] - fB[c]));
        std::optional<std::size_t> witness;
        for (std::size_t c = 0; c < cols; ++c) {
          if (abs(fA[c] - fB[c]) != norm) continue;
          ++r.attaining;
          bool inside = passes(one, two, c) && passes(row(last[a]), row(last[b]), c);
          for (std::size_t i = 0; i + 1 < h && inside; ++i) inside = passes(row(a_atoms[i]), row(b_atoms[i]), c);
          if (!inside) {
            r.failure = "norm-attaining coordinate " + e.coordinates[c] + " of f(A)-f(B) for A=" +
                        third_level_label("1", A) + " lies outside the witness regions";
            return false;
          }
          if (!witness) witness = c;
        }
        if (a < b) gamma.push_back(*witness);
      }
    std::sort(gamma.begin(), gamma.end());
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    for (std::uint64_t a = 0; a < nh; ++a) {
      for (auto c : gamma)
        if (abs(row(last[a])[c]) > D) {
          r.failure = "point " + last[a] + " leaves [-D,D] on the witness set";
          return false;
        }
      for (std::uint64_t b = a + 1; b < nh; ++b) {
        Rational sep(0);
        for (auto c : gamma) sep = std::max(sep, abs(row(last[a])[c] - row(last[b])[c]));
        if (sep < r.threshold) {
          r.failure = "witness family not (4-2D)-separated at " + last[a] + ", " + last[b];
          return false;
        }
      }
    }
    if (first_choice || gamma.size() < r.min_gamma) r.min_gamma = gamma.size();
    first_choice = false;
    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), r.capacity_base, gamma.size());
    if (cap < static_cast<unsigned long>(nh)) {
      r.failure = "capacity " + cap.get_str() + " of " + std::to_string(gamma.size()) +
                  " witness coordinates is below n_h = " + std::to_string(nh);
      return false;
    }
    return true;
  };
  r.ok = choose(0);
  return r;
}

CountingReport verify_witness_counting(const StepEmbedding& e, const Rational& D, const GraphSpec& spec) {
  return verify_witness_counting(to_matrix_embedding(e), D, spec);
}

}  // namespace distort
