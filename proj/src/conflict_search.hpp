#pragma once

// Decides whether some assignment pair -> (coordinate, sign) admits maps with
// distortion strictly below a threshold p/q. Boolean atoms say "pair i is
// separated in coordinate j with sign s"; every coordinate is a system of
// difference constraints, and a cycle of nonpositive weight at p/q is a
// nogood that gets learned as a clause. Learned clauses stay valid when the
// threshold drops, so one instance serves a whole descent of incumbents.

#include <cstdint>
#include <vector>

#include "distort/solver.hpp"
#include "solver_detail.hpp"

namespace distort::detail {

class ConflictSearch {
 public:
  enum class Outcome { sat, unsat, budget };

  ConflictSearch(const Problem& P, bool break_symmetry);

  // Thresholds must not increase between calls.
  void set_threshold(std::int64_t p, std::int64_t q);
  Outcome solve(std::uint64_t decisions, SearchStats& stats);
  // Separations of the last satisfying assignment, per coordinate.
  std::vector<std::vector<Edge>> model() const;

 private:
  using Lit = std::uint32_t;
  static constexpr std::int32_t kNoReason = -1;
  static constexpr std::int32_t kTheory = -2;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Atom {
    std::uint32_t pair, coord, hi, lo;
    std::int64_t d;
  };

  static Lit pos(std::uint32_t v) { return v << 1; }
  static Lit neg(std::uint32_t v) { return (v << 1) | 1U; }
  static std::uint32_t var(Lit l) { return l >> 1; }
  static bool negated(Lit l) { return l & 1U; }
  std::uint32_t atom_var(std::size_t pair, unsigned coord, unsigned sign) const {
    return static_cast<std::uint32_t>((pair * P_.dims + coord) * 2 + sign);
  }
  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    int v = assign_[var(l)];
    return v < 0 ? -1 : (v ^ static_cast<int>(negated(l)));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void add_clause(std::vector<Lit> lits);
  std::int32_t attach(Clause c);
  void enqueue(Lit l, std::int32_t reason);
  bool propagate();  // false on conflict, stored in conflict_
  bool theory_assert(std::uint32_t v);
  bool scan(unsigned coord);
  void relax(unsigned coord, const Atom& a);
  std::vector<std::uint32_t> path_atoms(unsigned coord, std::uint32_t from, std::uint32_t to, std::size_t prefix,
                                        std::int64_t bound) const;
  std::vector<Lit> reason_lits(std::uint32_t v) const;
  void analyze(std::vector<Lit>& learnt, int& back_level);
  void cancel_until(int lvl);
  void new_level();
  void rebuild_theory();
  bool level_zero_scan();

  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);
  void reduce_learnts();
  void heap_insert(std::uint32_t v);
  std::uint32_t heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(std::uint32_t a, std::uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

  const Problem& P_;
  std::size_t k_;
  std::int64_t p_ = 0, q_ = 1;
  std::vector<Atom> atoms_;
  std::vector<std::int8_t> assign_;
  std::vector<int> level_;
  std::vector<std::int32_t> reason_;
  std::vector<std::uint32_t> mark_;  // theory prefix length behind a theory implication
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::int32_t>> watches_;
  std::vector<Lit> conflict_;
  bool unsat_ = false;

  // per coordinate: shortest paths at p/q and the separations asserted so far
  std::vector<std::vector<std::int64_t>> apsp_;
  std::vector<std::vector<std::uint32_t>> stack_;
  struct Snapshot {
    std::vector<std::vector<std::int64_t>> apsp;
    std::vector<std::size_t> sizes;
  };
  std::vector<Snapshot> snapshots_;

  std::vector<std::uint32_t> sat_count_;  // true atoms per pair
  std::size_t open_pairs_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1, cla_inc_ = 1;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int32_t> heap_pos_;
  std::vector<std::uint8_t> seen_;
  std::size_t learnt_count_ = 0;
  double max_learnts_ = 0;
  std::vector<std::vector<Edge>> model_;
};

}  // namespace distort::detail
