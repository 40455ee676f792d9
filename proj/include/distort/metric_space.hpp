#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "distort/rational.hpp"

namespace distort {

// Finite labeled metric space with a basepoint and a designated shared set A.
// The constructor checks shape only; use validate_metric for the axioms.
class MetricSpace {
 public:
  MetricSpace() = default;
  MetricSpace(std::vector<std::string> labels, std::vector<Rational> dist, std::size_t basepoint,
              std::vector<std::size_t> shared);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  std::size_t at(const std::string& label) const;

  const Rational& d(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
  const std::vector<Rational>& dist() const { return dist_; }
  std::size_t basepoint() const { return basepoint_; }
  const std::vector<std::size_t>& shared() const { return shared_; }
  bool is_shared(std::size_t i) const;

  friend bool operator==(const MetricSpace& a, const MetricSpace& b);

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> dist_;
  std::size_t basepoint_ = 0;
  std::vector<std::size_t> shared_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct MetricViolation {
  std::string kind;
  std::vector<std::size_t> points;
  std::string detail;
};

struct MetricReport {
  bool ok = true;
  std::vector<MetricViolation> violations;
  std::size_t violation_count = 0;
};

// Exhaustive check: zero diagonal, symmetry, distinct points at distance >= 1,
// shared points within 1 of the basepoint, and every triangle inequality.
// Keeps at most max_listed violations, the lexicographically least ones.
MetricReport validate_metric(const MetricSpace& m, std::size_t max_listed = 16);

class SizeCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace distort
