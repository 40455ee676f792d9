#include "distort/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace distort {

IntervalSet::IntervalSet(Ordinal bound, bool includes_zero, std::vector<OrdinalInterval> pieces)
    : bound_(std::move(bound)), includes_zero_(includes_zero), pieces_(std::move(pieces)) {
  normalize();
}

IntervalSet IntervalSet::whole(const Ordinal& bound) {
  std::vector<OrdinalInterval> pieces;
  if (!bound.is_zero()) pieces.push_back({Ordinal(), bound});
  return IntervalSet(bound, true, std::move(pieces));
}

void IntervalSet::normalize() {
  for (const auto& p : pieces_) {
    if (!(p.lo < p.hi)) throw std::invalid_argument("interval piece with lo >= hi");
    if (p.hi > bound_) throw std::invalid_argument("interval piece exceeds bound " + bound_.to_string());
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const OrdinalInterval& a, const OrdinalInterval& b) { return a.lo < b.lo; });
  std::vector<OrdinalInterval> merged;
  for (auto& p : pieces_) {
    if (!merged.empty()) {
      if (p.lo < merged.back().hi) throw std::invalid_argument("overlapping interval pieces");
      if (p.lo == merged.back().hi) {
        merged.back().hi = std::move(p.hi);
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  pieces_ = std::move(merged);
}

bool IntervalSet::contains(const Ordinal& gamma) const {
  if (gamma.is_zero()) return includes_zero_;
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), gamma,
                             [](const OrdinalInterval& p, const Ordinal& g) { return p.hi < g; });
  return it != pieces_.end() && it->lo < gamma;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  if (bound_ != other.bound_) throw std::invalid_argument("intersect: mismatched bounds");
  std::vector<OrdinalInterval> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const auto& a = pieces_[i];
    const auto& b = other.pieces_[j];
    const Ordinal& lo = std::max(a.lo, b.lo);
    const Ordinal& hi = std::min(a.hi, b.hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a.hi < b.hi) ++i; else ++j;
  }
  return IntervalSet(bound_, includes_zero_ && other.includes_zero_, std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  if (bound_ != other.bound_) throw std::invalid_argument("unite: mismatched bounds");
  std::vector<OrdinalInterval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  std::sort(all.begin(), all.end(),
            [](const OrdinalInterval& a, const OrdinalInterval& b) { return a.lo < b.lo; });
  std::vector<OrdinalInterval> merged;
  for (auto& p : all) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (p.hi > merged.back().hi) merged.back().hi = p.hi;
      continue;
    }
    merged.push_back(p);
  }
  return IntervalSet(bound_, includes_zero_ || other.includes_zero_, std::move(merged));
}

bool IntervalSet::subset_of(const IntervalSet& other) const { return intersect(other) == *this; }

std::uint64_t count_derived_in(const IntervalSet& s, const Ordinal& alpha, std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("count_derived_in: cap must be positive");
  std::uint64_t count = 0;
  if (s.includes_zero() && alpha.is_zero()) ++count;
  for (const auto& p : s.pieces()) {
    for (Ordinal d = next_derived_point(p.lo, alpha); d <= p.hi && count < cap;
         d = next_derived_point(d, alpha))
      ++count;
    if (count >= cap) return cap;
  }
  return std::min(count, cap);
}

}  // namespace distort
