#pragma once

#include <cstdint>
#include <vector>

#include "distort/ordinal.hpp"

namespace distort {

// Half-open piece (lo, hi].
struct OrdinalInterval {
  Ordinal lo;
  Ordinal hi;
  friend bool operator==(const OrdinalInterval&, const OrdinalInterval&) = default;
};

// Clopen subset of [0,bound]: a union of disjoint (lo,hi] pieces plus an
// optional point 0. Pieces are kept sorted with touching pieces merged.
class IntervalSet {
 public:
  explicit IntervalSet(Ordinal bound) : bound_(std::move(bound)) {}
  IntervalSet(Ordinal bound, bool includes_zero, std::vector<OrdinalInterval> pieces);

  static IntervalSet whole(const Ordinal& bound);

  const Ordinal& bound() const { return bound_; }
  bool includes_zero() const { return includes_zero_; }
  const std::vector<OrdinalInterval>& pieces() const { return pieces_; }
  bool empty() const { return !includes_zero_ && pieces_.empty(); }

  bool contains(const Ordinal& gamma) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  bool subset_of(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  void normalize();

  Ordinal bound_;
  bool includes_zero_ = false;
  std::vector<OrdinalInterval> pieces_;
};

// min(cap, |s ∩ K^(alpha)|), walking next_derived_point through each piece.
std::uint64_t count_derived_in(const IntervalSet& s, const Ordinal& alpha, std::uint64_t cap);

}  // namespace distort
