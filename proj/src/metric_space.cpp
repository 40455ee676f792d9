#include "distort/metric_space.hpp"

#include <algorithm>
#include <mutex>

#include "distort/parallel.hpp"

namespace distort {

MetricSpace::MetricSpace(std::vector<std::string> labels, std::vector<Rational> dist,
                         std::size_t basepoint, std::vector<std::size_t> shared)
    : labels_(std::move(labels)), dist_(std::move(dist)), basepoint_(basepoint), shared_(std::move(shared)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("metric space must have at least one point");
  if (dist_.size() != n * n)
    throw std::invalid_argument("distance matrix has " + std::to_string(dist_.size()) + " entries, expected " +
                                std::to_string(n * n));
  if (basepoint_ >= n) throw std::invalid_argument("basepoint index out of range");
  for (std::size_t i = 0; i < n; ++i)
    if (!index_.emplace(labels_[i], i).second) throw std::invalid_argument("duplicate label '" + labels_[i] + "'");
  std::sort(shared_.begin(), shared_.end());
  shared_.erase(std::unique(shared_.begin(), shared_.end()), shared_.end());
  for (auto s : shared_)
    if (s >= n) throw std::invalid_argument("shared index out of range");
}

std::optional<std::size_t> MetricSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MetricSpace::at(const std::string& label) const {
  auto i = index_of(label);
  if (!i) throw std::out_of_range("no point labeled '" + label + "'");
  return *i;
}

bool MetricSpace::is_shared(std::size_t i) const {
  return std::binary_search(shared_.begin(), shared_.end(), i);
}

bool operator==(const MetricSpace& a, const MetricSpace& b) {
  return a.labels_ == b.labels_ && a.dist_ == b.dist_ && a.basepoint_ == b.basepoint_ && a.shared_ == b.shared_;
}

MetricReport validate_metric(const MetricSpace& m, std::size_t max_listed) {
  const std::size_t n = m.size();
  MetricReport report;
  auto note = [&](std::vector<MetricViolation>& out, std::size_t& count, MetricViolation v) {
    ++count;
    if (out.size() < max_listed) out.push_back(std::move(v));
  };

  std::vector<MetricViolation> local;
  std::size_t local_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.d(i, i) != Rational(0))
      note(local, local_count, {"self-distance", {i}, "d(x,x) = " + m.d(i, i).to_string()});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.d(i, j) != m.d(j, i))
        note(local, local_count, {"asymmetric", {i, j}, m.d(i, j).to_string() + " vs " + m.d(j, i).to_string()});
      if (m.d(i, j) < Rational(1))
        note(local, local_count, {"discreteness", {i, j}, "distance " + m.d(i, j).to_string() + " < 1"});
    }
  }
  for (auto a : m.shared())
    if (m.d(a, m.basepoint()) > Rational(1))
      note(local, local_count, {"shared-far", {a, m.basepoint()}, "shared point at distance " +
                                                                     m.d(a, m.basepoint()).to_string()});

  // Triangles, one row per task; merged in row order so the listing is deterministic.
  std::vector<std::vector<MetricViolation>> rows(n);
  std::vector<std::size_t> row_counts(n, 0);
  parallel_for(n, [&](std::size_t x) {
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (m.d(x, z) > m.d(x, y) + m.d(y, z)) {
          ++row_counts[x];
          if (rows[x].size() < max_listed)
            rows[x].push_back({"triangle", {x, y, z},
                               "d(" + m.label(x) + "," + m.label(z) + ") = " + m.d(x, z).to_string() + " > " +
                                   m.d(x, y).to_string() + " + " + m.d(y, z).to_string()});
        }
      }
  });
  for (std::size_t x = 0; x < n; ++x) {
    local_count += row_counts[x];
    for (auto& v : rows[x])
      if (local.size() < max_listed) local.push_back(std::move(v));
  }
  report.violations = std::move(local);
  report.violation_count = local_count;
  report.ok = local_count == 0;
  return report;
}

}  // namespace distort
