#include "distort/simplex.hpp"

#include <stdexcept>

namespace distort {

void LinearProgram::add_row(std::vector<mpq_class> coeffs, Relation rel, mpq_class b) {
  if (coeffs.size() != num_vars) throw std::invalid_argument("LP row width differs from variable count");
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), a_(m, std::vector<mpq_class>(cols + 1)), basis_(m) {}

  mpq_class& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  mpq_class& rhs(std::size_t r) { return a_[r][cols_]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }

  void pivot(std::size_t r, std::size_t c) {
    mpq_class p = a_[r][c];
    for (auto& v : a_[r]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || a_[i][c] == 0) continue;
      mpq_class f = a_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  // Minimizes cost . x over the columns allowed; returns false when unbounded.
  bool optimize(const std::vector<mpq_class>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      // reduced cost r_j = c_j - c_B . column_j; Bland: least index with r_j < 0
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
        if (!allowed[j]) continue;
        mpq_class r = cost[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (a_[i][j] != 0) r -= cost[basis_[i]] * a_[i][j];
        if (r < 0) enter = j;
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (a_[i][enter] <= 0) continue;
        mpq_class ratio = a_[i][cols_] / a_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, cols_;
  std::vector<std::vector<mpq_class>> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  // Columns: original, one slack/surplus per inequality, one artificial per ge/eq row.
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::size_t cols = n;
  std::vector<Relation> rel = lp.relations;
  std::vector<bool> flip(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0) {
      flip[i] = true;
      if (rel[i] == Relation::le) rel[i] = Relation::ge;
      else if (rel[i] == Relation::ge) rel[i] = Relation::le;
    }
    if (rel[i] != Relation::eq) slack_col[i] = static_cast<int>(cols++);
  }
  const std::size_t first_art = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::le) art_col[i] = static_cast<int>(cols++);

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class s = flip[i] ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = s * lp.rows[i][j];
    t.rhs(i) = s * lp.rhs[i];
    if (slack_col[i] >= 0) t.at(i, static_cast<std::size_t>(slack_col[i])) = rel[i] == Relation::le ? 1 : -1;
    if (art_col[i] >= 0) {
      t.at(i, static_cast<std::size_t>(art_col[i])) = 1;
      t.basis(i) = static_cast<std::size_t>(art_col[i]);
    } else {
      t.basis(i) = static_cast<std::size_t>(slack_col[i]);
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);
  if (first_art < cols) {
    std::vector<mpq_class> phase1(cols, 0);
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1;
    t.optimize(phase1, allowed);
    mpq_class infeas = 0;
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (t.basis(i) >= first_art) infeas += t.rhs(i);
    if (infeas > 0) return result;
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis(i) < first_art) {
        ++i;
        continue;
      }
      std::size_t c = 0;
      while (c < first_art && t.at(i, c) == 0) ++c;
      if (c < first_art) {
        t.pivot(i, c);
        ++i;
      } else {
        t.drop_row(i);
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }

  std::vector<mpq_class> cost(cols, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  if (!t.optimize(cost, allowed)) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis(i) < n) result.x[t.basis(i)] = t.rhs(i);
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace distort
