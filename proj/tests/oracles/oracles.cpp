#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <gmpxx.h>

#include "distort/simplex.hpp"

namespace oracle {

using distort::MetricSpace;
using distort::Ordinal;
using distort::Rational;

Ordinal Small::to_ordinal() const {
  std::vector<Ordinal::Term> t;
  if (a) t.push_back({Ordinal::finite(2), a});
  if (b) t.push_back({Ordinal::finite(1), b});
  if (c) t.push_back({Ordinal::finite(0), c});
  return Ordinal::from_terms(std::move(t));
}

Small small_fundamental(const Small& g, std::uint64_t n) {
  if (!g.is_limit()) throw std::invalid_argument("not a limit");
  if (g.b > 0) return {g.a, g.b - 1, n};
  return {g.a - 1, n, 0};
}

std::vector<Small> DerivedOracle::box_points() const {
  std::vector<Small> out;
  for (std::uint64_t a = 0; a <= box_; ++a)
    for (std::uint64_t b = 0; b <= box_; ++b)
      for (std::uint64_t c = 0; c <= box_; ++c) out.push_back({a, b, c});
  return out;
}

bool DerivedOracle::member(const Small& g, unsigned k) {
  if (k == 0) return true;
  if (!g.is_limit()) return false;
  auto key = std::make_pair(g, k);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool ok = true;
  auto pts = box_points();
  for (std::uint64_t n = 1; n <= 3 && ok; ++n) {
    Small lo = small_fundamental(g, n);
    bool found = false;
    for (const auto& p : pts)
      if (lo < p && p < g && member(p, k - 1)) {
        found = true;
        break;
      }
    ok = found;
  }
  memo_[key] = ok;
  return ok;
}

std::map<std::pair<std::string, std::string>, int> graph_distances(std::uint64_t base_atoms,
                                                                   const std::vector<std::uint64_t>& sizes) {
  std::vector<std::string> names{"bot"};
  std::vector<std::vector<std::string>> level(1);
  for (std::uint64_t j = 1; j <= base_atoms; ++j) level[0].push_back(std::to_string(j));
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    level.emplace_back();
    for (std::uint64_t j = 1; j <= sizes[i]; ++j)
      level.back().push_back("a" + std::to_string(i + 1) + "_" + std::to_string(j));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto& l : level)
    for (auto& x : l) {
      names.push_back(x);
      edges.push_back({"bot", x});
    }
  // every tuple, built recursively
  std::function<void(std::size_t, std::vector<std::string>&)> rec = [&](std::size_t i,
                                                                       std::vector<std::string>& pick) {
    if (i == level.size()) {
      std::string t = "{";
      for (std::size_t q = 0; q < pick.size(); ++q) t += (q ? "," : "") + pick[q];
      t += "}";
      names.push_back(t);
      for (auto& x : pick) edges.push_back({t, x});
      return;
    }
    for (auto& x : level[i]) {
      pick.push_back(x);
      rec(i + 1, pick);
      pick.pop_back();
    }
  };
  std::vector<std::string> pick;
  rec(0, pick);

  const std::size_t n = names.size();
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id[names[i]] = i;
  const int inf = 1 << 28;
  std::vector<int> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (auto& [x, y] : edges) {
    d[id[x] * n + id[y]] = 1;
    d[id[y] * n + id[x]] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  std::map<std::pair<std::string, std::string>, int> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[{names[i], names[j]}] = d[i * n + j];
  return out;
}

std::map<std::pair<std::string, std::string>, Rational> product_amalgam(const std::vector<MetricSpace>& parts,
                                                                        const std::vector<std::string>& shared) {
  // A point of the product is one label per factor.
  struct Point {
    std::string name;
    std::vector<std::string> coord;
  };
  std::vector<Point> pts;
  for (auto& a : shared) pts.push_back({a, std::vector<std::string>(parts.size(), a)});
  for (std::size_t c = 0; c < parts.size(); ++c)
    for (auto& l : parts[c].labels()) {
      if (std::find(shared.begin(), shared.end(), l) != shared.end()) continue;
      std::vector<std::string> coord(parts.size(), "bot");
      coord[c] = l;
      pts.push_back({std::to_string(c + 1) + ":" + l, coord});
    }
  std::map<std::pair<std::string, std::string>, Rational> out;
  for (auto& x : pts)
    for (auto& y : pts) {
      Rational best(0);
      for (std::size_t c = 0; c < parts.size(); ++c)
        best = std::max(best, parts[c].d(parts[c].at(x.coord[c]), parts[c].at(y.coord[c])));
      out[{x.name, y.name}] = best;
    }
  return out;
}

namespace {

mpq_class to_mpq(const Rational& r) { return mpq_class(mpz_class(r.num()), mpz_class(r.den())); }

Rational from_mpq(mpq_class q) {
  q.canonicalize();
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw std::overflow_error("oracle value too big");
  return Rational(q.get_num().get_si(), q.get_den().get_si());
}

struct PairList {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  explicit PairList(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) pairs.push_back({i, j});
  }
};

}  // namespace

Rational enumerate_min_distortion(const MetricSpace& m, unsigned dims, std::uint64_t* leaves) {
  const std::size_t k = m.size();
  if (k < 2) return Rational(1);
  PairList pl(k);
  const std::size_t P = pl.pairs.size();
  if (P > 32) throw std::invalid_argument("enumeration oracle supports at most 8 points");

  // per-coordinate LP value keyed by 2 bits per pair: 1 = first above second, 2 = reverse
  std::unordered_map<std::uint64_t, std::optional<mpq_class>> memo;
  auto coordinate_value = [&](std::uint64_t key) -> std::optional<mpq_class> {
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // a directed cycle of separations can never be met
    std::vector<std::vector<std::size_t>> out(k);
    std::vector<int> indeg(k, 0);
    for (std::size_t p = 0; p < P; ++p) {
      unsigned s = (key >> (2 * p)) & 3u;
      if (!s) continue;
      auto [i, j] = pl.pairs[p];
      out[s == 1 ? i : j].push_back(s == 1 ? j : i);
      ++indeg[s == 1 ? j : i];
    }
    std::vector<std::size_t> ready;
    for (std::size_t u = 0; u < k; ++u)
      if (!indeg[u]) ready.push_back(u);
    std::size_t seen = 0;
    while (!ready.empty()) {
      auto u = ready.back();
      ready.pop_back();
      ++seen;
      for (auto v : out[u])
        if (!--indeg[v]) ready.push_back(v);
    }
    if (seen < k) return memo[key] = std::nullopt;
    distort::LinearProgram lp;
    lp.num_vars = k + 1;
    lp.objective.assign(k + 1, 0);
    lp.objective[k] = 1;
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v) {
        if (u == v) continue;
        std::vector<mpq_class> row(k + 1, 0);
        row[u] = 1;
        row[v] = -1;
        row[k] = -to_mpq(m.d(u, v));
        lp.add_row(row, distort::Relation::le, 0);
      }
    for (std::size_t p = 0; p < P; ++p) {
      unsigned s = (key >> (2 * p)) & 3u;
      if (!s) continue;
      auto [i, j] = pl.pairs[p];
      std::size_t hi = s == 1 ? i : j, lo = s == 1 ? j : i;
      std::vector<mpq_class> row(k + 1, 0);
      row[hi] = 1;
      row[lo] = -1;
      lp.add_row(row, distort::Relation::ge, to_mpq(m.d(i, j)));
    }
    auto res = distort::solve_lp(lp);
    std::optional<mpq_class> v;
    if (res.status == distort::LpStatus::optimal) v = res.value;
    memo[key] = v;
    return v;
  };

  std::vector<std::uint64_t> key(dims, 0);
  std::optional<mpq_class> best;
  std::uint64_t count = 0;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t p, unsigned used) {
    if (p == P) {
      ++count;
      mpq_class worst = 0;
      for (unsigned c = 0; c < used; ++c) {
        auto v = coordinate_value(key[c]);
        if (!v) return;
        worst = std::max(worst, *v);
      }
      if (!best || worst < *best) best = worst;
      return;
    }
    for (unsigned c = 0; c < used; ++c)
      for (unsigned s = 1; s <= 2; ++s) {
        key[c] |= std::uint64_t(s) << (2 * p);
        rec(p + 1, used);
        key[c] &= ~(std::uint64_t(3) << (2 * p));
      }
    if (used < dims) {
      key[used] |= std::uint64_t(1) << (2 * p);
      rec(p + 1, used + 1);
      key[used] &= ~(std::uint64_t(3) << (2 * p));
    }
  };
  rec(0, 0);
  if (leaves) *leaves = count;
  if (!best) throw std::logic_error("no feasible assignment");
  return from_mpq(*best);
}

bool distortion_feasible(const MetricSpace& m, unsigned dims, const Rational& t) {
  const std::size_t k = m.size();
  if (k < 2) return true;
  std::int64_t L = 1;
  for (auto& r : m.dist()) L = std::lcm(L, r.den());
  std::vector<std::int64_t> D(k * k);
  for (std::size_t i = 0; i < k * k; ++i) D[i] = (m.dist()[i] * Rational(L)).num();
  const std::int64_t num = t.num(), den = t.den();
  PairList pl(k);

  // weight[c][u*k+v]: bound on phi_v - phi_u, tightened by separations
  std::vector<std::vector<std::int64_t>> w(dims, std::vector<std::int64_t>(k * k));
  for (auto& wc : w)
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v) wc[u * k + v] = u == v ? 0 : num * D[u * k + v];

  auto consistent = [&](const std::vector<std::int64_t>& wc) {
    auto d = wc;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) d[u * k + v] = std::min(d[u * k + v], d[u * k + x] + d[x * k + v]);
    for (std::size_t u = 0; u < k; ++u)
      if (d[u * k + u] < 0) return false;
    return true;
  };

  std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t p, unsigned used) {
    if (p == pl.pairs.size()) return true;
    auto [i, j] = pl.pairs[p];
    auto try_option = [&](unsigned c, std::size_t hi, std::size_t lo) {
      auto saved = w[c][hi * k + lo];
      // phi_lo - phi_hi <= -d
      w[c][hi * k + lo] = std::min(saved, -den * D[i * k + j]);
      bool ok = consistent(w[c]) && rec(p + 1, std::max(used, c + 1));
      w[c][hi * k + lo] = saved;
      return ok;
    };
    for (unsigned c = 0; c < used; ++c)
      if (try_option(c, i, j) || try_option(c, j, i)) return true;
    return used < dims && try_option(used, i, j);
  };
  return rec(0, 0);
}

Rational decide_min_distortion(const MetricSpace& m, unsigned dims) {
  const std::size_t k = m.size();
  if (k < 2) return Rational(1);
  std::int64_t L = 1;
  for (auto& r : m.dist()) L = std::lcm(L, r.den());
  std::int64_t maxd = 0;
  for (auto& r : m.dist()) maxd = std::max(maxd, (r * Rational(L)).num());
  // a simple cycle has at most k edges, so the optimum is P/Q with Q <= P <= k*maxd
  const std::int64_t lim = static_cast<std::int64_t>(k) * maxd;
  std::vector<Rational> cand;
  for (std::int64_t q = 1; q <= lim; ++q)
    for (std::int64_t p = q; p <= lim; ++p) cand.emplace_back(p, q);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  if (!distortion_feasible(m, dims, cand[hi])) throw std::logic_error("candidate range too small");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (distortion_feasible(m, dims, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

PackingResult packing(const Rational& D, unsigned n) {
  const Rational s = Rational(4) - Rational(2) * D;
  if (s <= Rational(0)) throw std::invalid_argument("separation must be positive");
  std::uint64_t per_axis = 0;
  for (Rational left = -D; left <= D; left += s) ++per_axis;
  std::uint64_t box = 1;
  for (unsigned i = 0; i < n; ++i) box *= per_axis;

  std::vector<Rational> grid;
  for (Rational v = -D; v <= D; v += s / Rational(2)) grid.push_back(v);
  std::vector<std::vector<std::size_t>> pts(1);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (auto& p : pts)
      for (std::size_t g = 0; g < grid.size(); ++g) {
        auto q = p;
        q.push_back(g);
        next.push_back(q);
      }
    pts = std::move(next);
  }
  auto separated = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    for (unsigned i = 0; i < n; ++i)
      if (abs(grid[x[i]] - grid[y[i]]) >= s) return true;
    return false;
  };
  std::uint64_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    best = std::max<std::uint64_t>(best, chosen.size());
    if (best >= box) return;
    if (chosen.size() + (pts.size() - from) <= best) return;
    for (std::size_t i = from; i < pts.size() && best < box; ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && separated(pts[c], pts[i]);
      if (!ok) continue;
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return {box, best};
}

}  // namespace oracle
