#include "distort/solver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "conflict_search.hpp"
#include "distort/parallel.hpp"
#include "solver_detail.hpp"

namespace distort {

std::string to_string(SolveStatus s) { return s == SolveStatus::exact ? "exact" : "bounded"; }

namespace detail {

Problem make_problem(const MetricSpace& m, unsigned dims) {
  Problem P;
  P.space = &m;
  P.k = m.size();
  P.dims = dims;
  std::int64_t l = 1;
  for (const auto& v : m.dist()) l = std::lcm(l, v.den());
  P.scale = l;
  P.dist.resize(P.k * P.k);
  for (std::size_t i = 0; i < P.dist.size(); ++i) {
    Rational s = m.dist()[i] * Rational(l);
    P.dist[i] = s.num();
  }
  for (std::uint32_t u = 0; u < P.k; ++u)
    for (std::uint32_t v = u + 1; v < P.k; ++v) P.pairs.push_back({u, v, P.d(u, v)});
  auto key = [&](const Problem::Pair& p) {
    const auto& a = m.label(p.u);
    const auto& b = m.label(p.v);
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  std::stable_sort(P.pairs.begin(), P.pairs.end(), [&](const Problem::Pair& x, const Problem::Pair& y) {
    if (x.d != y.d) return x.d > y.d;
    return key(x) < key(y);
  });
  return P;
}

// Least D for one coordinate: raise D to the ratio of each negative cycle
// found by Bellman-Ford until none is left. A cycle made only of separation
// edges means no D works.
Ratio ratio_optimum(const Problem& P, const std::vector<Edge>& E) {
  const std::size_t k = P.k;
  Ratio r;
  r.psi.assign(k, 0);
  if (E.empty()) return r;
  r.p = 1;
  r.q = 1;
  std::vector<std::int64_t> dist(k);
  std::vector<std::int64_t> pred(k);
  std::vector<std::int64_t> pred_sep(k);  // separation distance of the pred edge, 0 for jumps
  for (;;) {
    std::fill(dist.begin(), dist.end(), 0);
    std::fill(pred.begin(), pred.end(), -1);
    bool changed = false;
    std::size_t last = 0;
    for (std::size_t pass = 1; pass <= k; ++pass) {
      changed = false;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          if (a == b) continue;
          std::int64_t cand = dist[a] + r.p * P.d(a, b);
          if (cand < dist[b]) {
            dist[b] = cand;
            pred[b] = static_cast<std::int64_t>(a);
            pred_sep[b] = 0;
            changed = true;
            last = b;
          }
        }
      for (const auto& e : E) {
        std::int64_t cand = dist[e.hi] - r.q * e.d;
        if (cand < dist[e.lo]) {
          dist[e.lo] = cand;
          pred[e.lo] = e.hi;
          pred_sep[e.lo] = e.d;
          changed = true;
          last = e.lo;
        }
      }
      if (!changed) break;
    }
    if (!changed) {
      r.psi = dist;
      return r;
    }
    std::size_t x = last;
    for (std::size_t i = 0; i < k; ++i) {
      if (pred[x] < 0) throw std::logic_error("broken predecessor chain in cycle search");
      x = static_cast<std::size_t>(pred[x]);
    }
    std::int64_t sum_sep = 0, sum_jump = 0;
    std::size_t y = x;
    do {
      std::size_t py = static_cast<std::size_t>(pred[y]);
      if (pred_sep[y] > 0) sum_sep += pred_sep[y];
      else sum_jump += P.d(py, y);
      y = py;
    } while (y != x);
    if (sum_jump == 0) {
      r.feasible = false;
      return r;
    }
    std::int64_t g = std::gcd(sum_sep, sum_jump);
    r.p = sum_sep / g;
    r.q = sum_jump / g;
  }
}

}  // namespace detail

namespace {

using detail::Edge;
using detail::Problem;
using detail::Ratio;
using detail::ratio_optimum;

struct Witness {
  Rational distortion;
  std::vector<std::vector<Rational>> rows;
};

// Exact contraction/expansion of rows; rows rescaled so the contraction is 1.
std::optional<Witness> measure(const MetricSpace& m, std::vector<std::vector<Rational>> rows) {
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      Rational best(0);
      for (std::size_t c = 0; c < rows[i].size(); ++c) best = std::max(best, abs(rows[i][c] - rows[j][c]));
      Rational ratio = best / m.d(i, j);
      if (!lo || ratio < *lo) lo = ratio;
      if (!hi || ratio > *hi) hi = ratio;
    }
  if (!lo || *lo == Rational(0)) return std::nullopt;
  for (auto& r : rows)
    for (auto& v : r) v /= *lo;
  return Witness{*hi / *lo, std::move(rows)};
}

Witness witness_from_edges(const Problem& P, const std::vector<std::vector<Edge>>& edges) {
  const MetricSpace& m = *P.space;
  std::vector<std::vector<Rational>> rows(P.k, std::vector<Rational>(P.dims, Rational(0)));
  for (std::size_t j = 0; j < edges.size() && j < P.dims; ++j) {
    Ratio r = ratio_optimum(P, edges[j]);
    if (!r.feasible) throw std::logic_error("witness built from infeasible coordinate");
    Rational unit(1, r.q);
    unit /= Rational(P.scale);
    for (std::size_t x = 0; x < P.k; ++x)
      rows[x][j] = Rational(r.psi[x] - r.psi[m.basepoint()]) * unit;
  }
  auto w = measure(m, std::move(rows));
  if (!w) throw std::logic_error("assignment produced a degenerate witness");
  return *w;
}

// Static-order dive choosing, pair by pair, the option with the smallest exact
// coordinate optimum.
Witness greedy_dive(const Problem& P) {
  std::vector<std::vector<Edge>> edges(P.dims);
  std::vector<Rational> current(P.dims, Rational(0));
  unsigned used = 0;
  for (const auto& pr : P.pairs) {
    std::optional<Rational> best_val;
    unsigned best_coord = 0;
    Edge best_edge{};
    auto consider = [&](unsigned j, Edge e) {
      auto trial = edges[j];
      trial.push_back(e);
      Ratio r = ratio_optimum(P, trial);
      if (!r.feasible) return;
      Rational overall = r.value();
      for (unsigned i = 0; i < used; ++i)
        if (i != j) overall = std::max(overall, current[i]);
      if (!best_val || overall < *best_val) {
        best_val = overall;
        best_coord = j;
        best_edge = e;
      }
    };
    for (unsigned j = 0; j < used; ++j) {
      consider(j, {pr.u, pr.v, pr.d});
      consider(j, {pr.v, pr.u, pr.d});
    }
    if (used < P.dims) consider(used, {pr.u, pr.v, pr.d});
    if (!best_val) throw std::logic_error("greedy dive found no acyclic option");
    if (best_coord == used) ++used;
    edges[best_coord].push_back(best_edge);
    current[best_coord] = ratio_optimum(P, edges[best_coord]).value();
  }
  return witness_from_edges(P, edges);
}

// Best of the first few thousand anchor sets, measured in parallel and
// reduced in enumeration order.
std::optional<Witness> frechet_heuristic(const MetricSpace& m, unsigned dims) {
  const std::size_t k = m.size();
  const std::size_t r = std::min<std::size_t>(dims, k);
  std::vector<std::vector<std::size_t>> picks;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  while (picks.size() < 3000) {
    picks.push_back(pick);
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == k - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<std::optional<Witness>> found(picks.size());
  parallel_for(picks.size(), [&](std::size_t t) { found[t] = measure(m, frechet_embedding(m, picks[t]).rows); });
  std::optional<Witness> best;
  for (auto& w : found)
    if (w && (!best || w->distortion < best->distortion)) best = std::move(w);
  if (best && best->rows.front().size() < dims)
    for (auto& row : best->rows) row.resize(dims, Rational(0));
  return best;
}

}  // namespace

MatrixEmbedding frechet_embedding(const MetricSpace& m, const std::vector<std::size_t>& anchors) {
  MatrixEmbedding e{m, {}, std::vector<std::vector<Rational>>(m.size())};
  for (auto p : anchors) {
    e.coordinates.push_back("d(.," + m.label(p) + ")");
    for (std::size_t x = 0; x < m.size(); ++x) e.rows[x].push_back(m.d(x, p) - m.d(m.basepoint(), p));
  }
  return e;
}

std::optional<CoordinateOptimum> coordinate_optimum(const MetricSpace& m, const std::vector<Separation>& constraints) {
  Problem P = detail::make_problem(m, 1);
  std::vector<Edge> E;
  for (const auto& c : constraints) {
    if (c.hi >= m.size() || c.lo >= m.size() || c.hi == c.lo) throw std::invalid_argument("bad separation constraint");
    E.push_back({static_cast<std::uint32_t>(c.hi), static_cast<std::uint32_t>(c.lo), P.d(c.hi, c.lo)});
  }
  Ratio r = ratio_optimum(P, E);
  if (!r.feasible) return std::nullopt;
  CoordinateOptimum out{r.value(), {}};
  for (std::size_t x = 0; x < m.size(); ++x)
    out.phi.push_back(Rational(r.psi[x] - r.psi[m.basepoint()]) / Rational(r.q) / Rational(P.scale));
  return out;
}

DistortionResult min_distortion(const MetricSpace& m, unsigned dims, const SolverOptions& opt) {
  if (m.size() < 2) throw std::invalid_argument("min_distortion needs at least two points");
  if (dims == 0) throw std::invalid_argument("min_distortion needs at least one coordinate");
  if (dims > 127) throw std::invalid_argument("min_distortion supports at most 127 coordinates");
  Problem P = detail::make_problem(m, dims);
  DistortionResult res;
  res.dims = dims;

  Witness best = greedy_dive(P);
  if (auto f = frechet_heuristic(m, dims); f && f->distortion < best.distortion) best = std::move(*f);

  auto finish = [&](Rational lower, SolveStatus status) {
    res.upper = best.distortion;
    res.lower = std::min(lower, res.upper);
    res.status = status;
    res.witness = MatrixEmbedding{m, {}, best.rows};
    for (unsigned j = 0; j < dims; ++j) res.witness.coordinates.push_back("x" + std::to_string(j + 1));
    return res;
  };
  if (best.distortion == Rational(1)) return finish(Rational(1), SolveStatus::exact);

  // Each satisfying assignment strictly improves the incumbent; refutation
  // at the incumbent proves it optimal.
  detail::ConflictSearch search(P, opt.break_symmetry);
  search.set_threshold(best.distortion.num(), best.distortion.den());
  for (;;) {
    std::uint64_t spent = res.stats.nodes;
    auto out = search.solve(opt.budget > spent ? opt.budget - spent : 0, res.stats);
    if (out == detail::ConflictSearch::Outcome::unsat) return finish(best.distortion, SolveStatus::exact);
    if (out == detail::ConflictSearch::Outcome::budget) return finish(Rational(1), SolveStatus::bounded);
    Witness w = witness_from_edges(P, search.model());
    if (!(w.distortion < best.distortion)) throw std::logic_error("search returned no improvement");
    best = std::move(w);
    ++res.stats.improvements;
    search.set_threshold(best.distortion.num(), best.distortion.den());
  }
}

}  // namespace distort
