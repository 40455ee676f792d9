#include "conflict_search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace distort::detail {

namespace {

constexpr std::uint32_t kUndef = std::numeric_limits<std::uint32_t>::max();

double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (std::uint64_t i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

ConflictSearch::ConflictSearch(const Problem& P, bool break_symmetry) : P_(P), k_(P.k) {
  const std::size_t np = P_.pairs.size();
  const std::size_t nv = np * P_.dims * 2;
  atoms_.resize(nv);
  for (std::size_t i = 0; i < np; ++i)
    for (unsigned j = 0; j < P_.dims; ++j) {
      const auto& pr = P_.pairs[i];
      atoms_[atom_var(i, j, 0)] = {static_cast<std::uint32_t>(i), j, pr.u, pr.v, pr.d};
      atoms_[atom_var(i, j, 1)] = {static_cast<std::uint32_t>(i), j, pr.v, pr.u, pr.d};
    }
  assign_.assign(nv, -1);
  level_.assign(nv, 0);
  reason_.assign(nv, kNoReason);
  mark_.assign(nv, 0);
  watches_.resize(2 * nv);
  seen_.assign(nv, 0);
  apsp_.assign(P_.dims, std::vector<std::int64_t>(k_ * k_, 0));
  stack_.resize(P_.dims);
  sat_count_.assign(np, 0);
  open_pairs_ = np;

  // earlier pairs (larger distances) start slightly ahead
  activity_.resize(nv);
  for (std::uint32_t v = 0; v < nv; ++v)
    activity_[v] = 1e-3 * static_cast<double>(np - atoms_[v].pair) / static_cast<double>(np);
  heap_pos_.assign(nv, -1);
  for (std::uint32_t v = 0; v < nv; ++v) heap_insert(v);

  for (std::size_t i = 0; i < np; ++i) {
    std::vector<Lit> c;
    for (unsigned j = 0; j < P_.dims; ++j)
      for (unsigned s = 0; s < 2; ++s) c.push_back(pos(atom_var(i, j, s)));
    add_clause(std::move(c));
    for (unsigned j = 0; j < P_.dims; ++j) add_clause({neg(atom_var(i, j, 0)), neg(atom_var(i, j, 1))});
  }

  if (break_symmetry && np > 0) {
    // Coordinates may be permuted and negated. Pair 0 goes to coordinate 0
    // with sign 0; the others are ordered by the first pair they separate,
    // which they separate with sign 0.
    add_clause({pos(atom_var(0, 0, 0))});
    for (unsigned j = 1; j < P_.dims; ++j)
      for (std::size_t i = 0; i < np; ++i) {
        std::vector<Lit> c{neg(atom_var(i, j, 1))};
        for (std::size_t e = 0; e < i; ++e)
          for (unsigned s = 0; s < 2; ++s) c.push_back(pos(atom_var(e, j, s)));
        add_clause(std::move(c));
      }
    for (unsigned j = 2; j < P_.dims; ++j)
      for (std::size_t i = 0; i < np; ++i)
        for (unsigned s = 0; s < 2; ++s) {
          std::vector<Lit> c{neg(atom_var(i, j, s))};
          for (std::size_t e = 0; e <= i; ++e)
            for (unsigned t = 0; t < 2; ++t) c.push_back(pos(atom_var(e, j - 1, t)));
          add_clause(std::move(c));
        }
  }
  max_learnts_ = std::max<double>(2000, static_cast<double>(clauses_.size()) / 3);
}

void ConflictSearch::add_clause(std::vector<Lit> lits) {
  if (lits.empty()) {
    unsat_ = true;
    return;
  }
  if (lits.size() == 1) {
    int v = value(lits[0]);
    if (v == 0) unsat_ = true;
    if (v < 0) enqueue(lits[0], kNoReason);
    return;
  }
  Clause c;
  c.lits = std::move(lits);
  attach(std::move(c));
}

std::int32_t ConflictSearch::attach(Clause c) {
  auto idx = static_cast<std::int32_t>(clauses_.size());
  watches_[c.lits[0] ^ 1U].push_back(idx);
  watches_[c.lits[1] ^ 1U].push_back(idx);
  clauses_.push_back(std::move(c));
  return idx;
}

void ConflictSearch::enqueue(Lit l, std::int32_t reason) {
  std::uint32_t v = var(l);
  assign_[v] = negated(l) ? 0 : 1;
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
  if (!negated(l) && sat_count_[atoms_[v].pair]++ == 0) --open_pairs_;
}

void ConflictSearch::relax(unsigned coord, const Atom& a) {
  auto& A = apsp_[coord];
  const std::int64_t w = -q_ * a.d;
  for (std::size_t x = 0; x < k_; ++x) {
    std::int64_t head = A[x * k_ + a.hi] + w;
    const std::int64_t* from = &A[a.lo * k_];
    std::int64_t* row = &A[x * k_];
    for (std::size_t y = 0; y < k_; ++y) {
      std::int64_t cand = head + from[y];
      if (cand < row[y]) row[y] = cand;
    }
  }
}

bool ConflictSearch::theory_assert(std::uint32_t v) {
  const Atom& a = atoms_[v];
  auto& A = apsp_[a.coord];
  const std::int64_t need = q_ * a.d;
  if (A[a.lo * k_ + a.hi] - need <= 0) {
    conflict_.assign(1, neg(v));
    for (auto e : path_atoms(a.coord, a.lo, a.hi, stack_[a.coord].size(), need)) conflict_.push_back(neg(e));
    return false;
  }
  stack_[a.coord].push_back(v);
  if (A[a.hi * k_ + a.lo] <= -need) return true;  // already implied
  relax(a.coord, a);
  return scan(a.coord);
}

bool ConflictSearch::scan(unsigned coord) {
  const auto& A = apsp_[coord];
  const auto mark = static_cast<std::uint32_t>(stack_[coord].size());
  for (std::size_t i = 0; i < P_.pairs.size(); ++i) {
    const std::int64_t need = q_ * P_.pairs[i].d;
    for (unsigned s = 0; s < 2; ++s) {
      std::uint32_t v = atom_var(i, coord, s);
      const Atom& a = atoms_[v];
      if (A[a.hi * k_ + a.lo] <= -need) {
        if (assign_[v] == 1) continue;
        if (assign_[v] == 0) {
          conflict_.assign(1, pos(v));
          for (auto e : path_atoms(coord, a.hi, a.lo, mark, -need)) conflict_.push_back(neg(e));
          return false;
        }
        enqueue(pos(v), kTheory);
        mark_[v] = mark;
      } else if (A[a.lo * k_ + a.hi] - need <= 0) {
        // a pending true atom here fails when its turn comes
        if (assign_[v] >= 0) continue;
        enqueue(neg(v), kTheory);
        mark_[v] = mark;
      }
    }
  }
  return true;
}

// Atoms on a shortest path from -> to using the first `prefix` separations of
// the coordinate; the path weight is at most bound by construction.
std::vector<std::uint32_t> ConflictSearch::path_atoms(unsigned coord, std::uint32_t from, std::uint32_t to,
                                                      std::size_t prefix, std::int64_t bound) const {
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> dist(k_, inf);
  std::vector<std::uint32_t> pred(k_, kUndef), via(k_, kUndef);
  dist[from] = 0;
  const auto& S = stack_[coord];
  for (std::size_t round = 0; round <= k_; ++round) {
    bool changed = false;
    for (std::size_t x = 0; x < k_; ++x) {
      if (dist[x] >= inf) continue;
      for (std::size_t y = 0; y < k_; ++y) {
        if (x == y) continue;
        std::int64_t cand = dist[x] + p_ * P_.dist[x * k_ + y];
        if (cand < dist[y]) {
          dist[y] = cand;
          pred[y] = static_cast<std::uint32_t>(x);
          via[y] = kUndef;
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < prefix; ++i) {
      const Atom& a = atoms_[S[i]];
      if (dist[a.hi] >= inf) continue;
      std::int64_t cand = dist[a.hi] - q_ * a.d;
      if (cand < dist[a.lo]) {
        dist[a.lo] = cand;
        pred[a.lo] = a.hi;
        via[a.lo] = S[i];
        changed = true;
      }
    }
    if (!changed) break;
    if (round == k_) throw std::logic_error("separation graph has a nonpositive cycle");
  }
  if (dist[to] > bound) throw std::logic_error("no explaining path for a theory implication");
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = to; y != from; y = pred[y]) {
    if (via[y] != kUndef) out.push_back(via[y]);
  }
  return out;
}

std::vector<ConflictSearch::Lit> ConflictSearch::reason_lits(std::uint32_t v) const {
  if (reason_[v] >= 0) return clauses_[static_cast<std::size_t>(reason_[v])].lits;
  const Atom& a = atoms_[v];
  std::vector<Lit> out;
  if (assign_[v] == 1) {
    out.push_back(pos(v));
    for (auto e : path_atoms(a.coord, a.hi, a.lo, mark_[v], -q_ * a.d)) out.push_back(neg(e));
  } else {
    out.push_back(neg(v));
    for (auto e : path_atoms(a.coord, a.lo, a.hi, mark_[v], q_ * a.d)) out.push_back(neg(e));
  }
  return out;
}

bool ConflictSearch::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    if (!negated(p) && !theory_assert(var(p))) return false;
    auto& ws = watches_[p];
    const Lit fl = p ^ 1U;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      std::int32_t ci = ws[i++];
      Clause& c = clauses_[static_cast<std::size_t>(ci)];
      if (c.deleted) continue;
      if (c.lits[0] == fl) std::swap(c.lits[0], c.lits[1]);
      if (value(c.lits[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t t = 2; t < c.lits.size(); ++t)
        if (value(c.lits[t]) != 0) {
          std::swap(c.lits[1], c.lits[t]);
          watches_[c.lits[1] ^ 1U].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c.lits[0]) == 0) {
        conflict_ = c.lits;
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return false;
      }
      enqueue(c.lits[0], ci);
    }
    ws.resize(j);
  }
  return true;
}

void ConflictSearch::analyze(std::vector<Lit>& learnt, int& back_level) {
  learnt.assign(1, 0);
  int open = 0;
  Lit p = kUndef;
  std::size_t idx = trail_.size();
  std::vector<Lit> confl = conflict_;
  for (;;) {
    for (Lit l : confl) {
      std::uint32_t v = var(l);
      if (p != kUndef && v == var(p)) continue;
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump_var(v);
      if (level_[v] >= level()) ++open;
      else learnt.push_back(l);
    }
    do --idx;
    while (!seen_[var(trail_[idx])]);
    p = trail_[idx];
    seen_[var(p)] = 0;
    if (--open <= 0) break;
    std::uint32_t pv = var(p);
    if (reason_[pv] >= 0) bump_clause(clauses_[static_cast<std::size_t>(reason_[pv])]);
    confl = reason_lits(pv);
  }
  learnt[0] = p ^ 1U;
  back_level = 0;
  std::size_t at = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    seen_[var(learnt[i])] = 0;
    if (level_[var(learnt[i])] > back_level) {
      back_level = level_[var(learnt[i])];
      at = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[at]);
}

void ConflictSearch::new_level() {
  Snapshot s;
  s.apsp = apsp_;
  for (const auto& st : stack_) s.sizes.push_back(st.size());
  snapshots_.push_back(std::move(s));
  trail_lim_.push_back(trail_.size());
}

void ConflictSearch::cancel_until(int lvl) {
  if (level() <= lvl) return;
  const auto L = static_cast<std::size_t>(lvl);
  for (std::size_t i = trail_.size(); i-- > trail_lim_[L];) {
    std::uint32_t v = var(trail_[i]);
    if (assign_[v] == 1 && --sat_count_[atoms_[v].pair] == 0) {
      ++open_pairs_;
      const std::size_t pr = atoms_[v].pair;
      for (unsigned j = 0; j < P_.dims; ++j)
        for (unsigned s = 0; s < 2; ++s) heap_insert(atom_var(pr, j, s));
    }
    assign_[v] = -1;
    reason_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[L]);
  qhead_ = trail_.size();
  trail_lim_.resize(L);
  apsp_ = std::move(snapshots_[L].apsp);
  for (std::size_t j = 0; j < stack_.size(); ++j) stack_[j].resize(snapshots_[L].sizes[j]);
  snapshots_.resize(L);
}

void ConflictSearch::rebuild_theory() {
  for (unsigned j = 0; j < P_.dims; ++j) {
    auto& A = apsp_[j];
    for (std::size_t i = 0; i < A.size(); ++i) A[i] = p_ * P_.dist[i];
    for (auto v : stack_[j]) {
      const Atom& a = atoms_[v];
      if (A[a.lo * k_ + a.hi] - q_ * a.d <= 0) {
        unsat_ = true;
        return;
      }
      if (A[a.hi * k_ + a.lo] > -q_ * a.d) relax(j, a);
    }
  }
}

bool ConflictSearch::level_zero_scan() {
  for (unsigned j = 0; j < P_.dims; ++j)
    if (!scan(j)) return false;
  return true;
}

void ConflictSearch::set_threshold(std::int64_t p, std::int64_t q) {
  cancel_until(0);
  p_ = p;
  q_ = q;
  if (unsat_) return;
  rebuild_theory();
  if (!unsat_ && !level_zero_scan()) unsat_ = true;
}

void ConflictSearch::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void ConflictSearch::bump_clause(Clause& c) {
  if (!c.learnt) return;
  c.activity += cla_inc_;
  if (c.activity > 1e20) {
    for (auto& d : clauses_)
      if (d.learnt) d.activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void ConflictSearch::reduce_learnts() {
  std::vector<std::int32_t> cand;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (!c.learnt || c.deleted || c.lits.size() <= 2) continue;
    std::uint32_t v = var(c.lits[0]);
    if (assign_[v] >= 0 && reason_[v] == static_cast<std::int32_t>(i)) continue;
    cand.push_back(static_cast<std::int32_t>(i));
  }
  std::stable_sort(cand.begin(), cand.end(), [&](std::int32_t a, std::int32_t b) {
    return clauses_[static_cast<std::size_t>(a)].activity < clauses_[static_cast<std::size_t>(b)].activity;
  });
  for (std::size_t i = 0; i < cand.size() / 2; ++i) {
    Clause& c = clauses_[static_cast<std::size_t>(cand[i])];
    c.deleted = true;
    std::vector<Lit>().swap(c.lits);
    --learnt_count_;
  }
  max_learnts_ *= 1.1;
}

void ConflictSearch::heap_insert(std::uint32_t v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<std::int32_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

std::uint32_t ConflictSearch::heap_pop() {
  std::uint32_t top = heap_.front();
  heap_pos_[top] = -1;
  std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void ConflictSearch::heap_up(std::size_t i) {
  std::uint32_t v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<std::int32_t>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int32_t>(i);
}

void ConflictSearch::heap_down(std::size_t i) {
  std::uint32_t v = heap_[i];
  for (;;) {
    std::size_t c = 2 * i + 1;
    if (c >= heap_.size()) break;
    if (c + 1 < heap_.size() && heap_less(heap_[c + 1], heap_[c])) ++c;
    if (!heap_less(heap_[c], v)) break;
    heap_[i] = heap_[c];
    heap_pos_[heap_[i]] = static_cast<std::int32_t>(i);
    i = c;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<std::int32_t>(i);
}

ConflictSearch::Outcome ConflictSearch::solve(std::uint64_t decisions, SearchStats& stats) {
  if (unsat_) return Outcome::unsat;
  std::uint64_t used = 0;
  std::uint64_t restart_no = 0;
  std::uint64_t since_restart = 0;
  double restart_at = 100 * luby(2, restart_no);
  std::vector<Lit> learnt;
  for (;;) {
    if (!propagate()) {
      ++stats.conflicts;
      ++since_restart;
      int top = 0;
      for (Lit l : conflict_) top = std::max(top, level_[var(l)]);
      if (top == 0) {
        unsat_ = true;
        return Outcome::unsat;
      }
      if (top < level()) cancel_until(top);
      int back = 0;
      analyze(learnt, back);
      cancel_until(back);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        Clause c;
        c.lits = learnt;
        c.learnt = true;
        std::int32_t ci = attach(std::move(c));
        bump_clause(clauses_[static_cast<std::size_t>(ci)]);
        ++learnt_count_;
        ++stats.learned;
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      cla_inc_ /= 0.999;
      continue;
    }
    if (open_pairs_ == 0) {
      model_.assign(P_.dims, {});
      for (unsigned j = 0; j < P_.dims; ++j)
        for (auto v : stack_[j]) model_[j].push_back({atoms_[v].hi, atoms_[v].lo, atoms_[v].d});
      return Outcome::sat;
    }
    if (static_cast<double>(since_restart) >= restart_at) {
      ++stats.restarts;
      since_restart = 0;
      restart_at = 100 * luby(2, ++restart_no);
      cancel_until(0);
      continue;
    }
    if (static_cast<double>(learnt_count_) >= max_learnts_) reduce_learnts();
    if (used >= decisions) return Outcome::budget;
    std::uint32_t next = kUndef;
    while (!heap_.empty()) {
      std::uint32_t v = heap_pop();
      if (assign_[v] < 0 && sat_count_[atoms_[v].pair] == 0) {
        next = v;
        break;
      }
    }
    if (next == kUndef) throw std::logic_error("open pair without a free atom");
    ++used;
    ++stats.nodes;
    new_level();
    enqueue(pos(next), kNoReason);
  }
}

std::vector<std::vector<Edge>> ConflictSearch::model() const { return model_; }

}  // namespace distort::detail
