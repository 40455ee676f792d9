#include "distort/stepfn.hpp"

#include <algorithm>
#include <stdexcept>

#include "distort/parallel.hpp"

namespace distort {

StepFunction::StepFunction(Ordinal bound, std::vector<Ordinal> cuts, std::vector<Rational> values)
    : cuts_(std::move(cuts)), values_(std::move(values)) {
  if (cuts_.empty()) throw std::invalid_argument("step function needs at least one piece");
  if (cuts_.size() != values_.size()) throw std::invalid_argument("step function cuts and values differ in length");
  for (std::size_t i = 1; i < cuts_.size(); ++i)
    if (!(cuts_[i - 1] < cuts_[i])) throw std::invalid_argument("step function cuts must ascend strictly");
  if (cuts_.back() != bound)
    throw std::invalid_argument("last cut " + cuts_.back().to_string() + " differs from bound " + bound.to_string());
}

StepFunction StepFunction::constant(const Ordinal& bound, const Rational& v) { return StepFunction(bound, {bound}, {v}); }

std::size_t StepFunction::piece_of(const Ordinal& gamma) const {
  if (gamma > bound()) throw std::out_of_range("point " + gamma.to_string() + " beyond bound " + bound().to_string());
  return static_cast<std::size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), gamma) - cuts_.begin());
}

Rational StepFunction::evaluate(const Ordinal& gamma) const { return values_[piece_of(gamma)]; }

IntervalSet StepFunction::piece_set(std::size_t j) const {
  if (j == 0) {
    std::vector<OrdinalInterval> p;
    if (!cuts_[0].is_zero()) p.push_back({Ordinal(), cuts_[0]});
    return IntervalSet(bound(), true, std::move(p));
  }
  return IntervalSet(bound(), false, {{cuts_[j - 1], cuts_[j]}});
}

StepFunction StepFunction::simplified() const {
  std::vector<Ordinal> cuts;
  std::vector<Rational> values;
  for (std::size_t j = 0; j < cuts_.size(); ++j) {
    if (!values.empty() && values.back() == values_[j]) {
      cuts.back() = cuts_[j];
      continue;
    }
    cuts.push_back(cuts_[j]);
    values.push_back(values_[j]);
  }
  return StepFunction(bound(), std::move(cuts), std::move(values));
}

std::vector<Ordinal> common_refinement(const std::vector<const StepFunction*>& fs) {
  std::vector<Ordinal> out;
  for (const auto* f : fs) {
    if (f->bound() != fs.front()->bound()) throw std::invalid_argument("step functions with mismatched bounds");
    std::vector<Ordinal> merged;
    merged.reserve(out.size() + f->cuts().size());
    std::set_union(out.begin(), out.end(), f->cuts().begin(), f->cuts().end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

std::vector<Rational> values_on(const StepFunction& f, const std::vector<Ordinal>& refinement) {
  std::vector<Rational> out;
  out.reserve(refinement.size());
  std::size_t j = 0;
  for (const auto& c : refinement) {
    while (f.cuts()[j] < c) ++j;
    out.push_back(f.values()[j]);
  }
  return out;
}

Rational sup_distance(const StepFunction& f, const StepFunction& g) {
  auto cuts = common_refinement({&f, &g});
  auto fv = values_on(f, cuts), gv = values_on(g, cuts);
  Rational best(0);
  for (std::size_t i = 0; i < cuts.size(); ++i) best = std::max(best, abs(fv[i] - gv[i]));
  return best;
}

IntervalSet witness_region(const StepFunction& fa, const StepFunction& fb, const Rational& D) {
  if (D < Rational(1) || D >= Rational(2)) throw std::domain_error("witness_region needs 1 <= D < 2");
  const Rational threshold = Rational(4) - Rational(2) * D;
  auto cuts = common_refinement({&fa, &fb});
  auto av = values_on(fa, cuts), bv = values_on(fb, cuts);
  bool zero = false;
  std::vector<OrdinalInterval> pieces;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    if (abs(av[j] - bv[j]) < threshold) continue;
    if (j == 0) {
      zero = true;
      if (!cuts[0].is_zero()) pieces.push_back({Ordinal(), cuts[0]});
    } else {
      pieces.push_back({cuts[j - 1], cuts[j]});
    }
  }
  return IntervalSet(fa.bound(), zero, std::move(pieces));
}

void validate_step_embedding(const StepEmbedding& e) {
  if (e.images.size() != e.domain.size())
    throw std::invalid_argument("embedding has " + std::to_string(e.images.size()) + " images for " +
                                std::to_string(e.domain.size()) + " points");
  for (const auto& f : e.images)
    if (f.bound() != e.images.front().bound()) throw std::invalid_argument("embedding images have different bounds");
}

WitnessReport witness_report(const StepEmbedding& e, const std::vector<std::pair<std::string, std::string>>& pairs,
                             const Rational& D, const std::vector<Ordinal>& alphas, std::uint64_t cap) {
  validate_step_embedding(e);
  if (D < Rational(1) || D >= Rational(2)) throw std::domain_error("witness_report needs 1 <= D < 2");
  WitnessReport r{pairs, D, Rational(4) - Rational(2) * D, IntervalSet::whole(e.bound()), {}};
  for (const auto& [a, b] : pairs) r.region = r.region.intersect(witness_region(e.image(a), e.image(b), D));
  for (const auto& alpha : alphas) r.counts.push_back({alpha, count_derived_in(r.region, alpha, cap)});
  return r;
}

std::optional<Rational> DistortionConstants::distortion() const {
  if (c1 == Rational(0)) return std::nullopt;
  return c2 / c1;
}

SampledEmbedding sample(const StepEmbedding& e) {
  validate_step_embedding(e);
  std::vector<const StepFunction*> fs;
  for (const auto& f : e.images) fs.push_back(&f);
  SampledEmbedding s;
  s.cuts = common_refinement(fs);
  for (const auto& f : e.images) s.rows.push_back(values_on(f, s.cuts));
  return s;
}

namespace {

Rational row_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational best(0);
  for (std::size_t c = 0; c < a.size(); ++c) {
    Rational v = abs(a[c] - b[c]);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

DistortionConstants embedding_distortion(const StepEmbedding& e) {
  if (e.domain.size() < 2) throw std::invalid_argument("distortion needs at least two points");
  auto s = sample(e);
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = i + 1; j < s.rows.size(); ++j) {
      Rational ratio = row_distance(s.rows[i], s.rows[j]) / e.domain.d(i, j);
      if (!lo || ratio < *lo) lo = ratio;
      if (!hi || ratio > *hi) hi = ratio;
    }
  return {*lo, *hi};
}

std::optional<std::pair<std::size_t, std::size_t>> find_isometry_violation(
    const MetricSpace& m, const std::vector<std::vector<Rational>>& rows) {
  const std::size_t n = m.size();
  if (rows.size() != n) throw std::invalid_argument("row count differs from domain size");
  std::vector<std::size_t> first_bad(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (row_distance(rows[i], rows[j]) != m.d(i, j)) {
        first_bad[i] = j;
        return;
      }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (first_bad[i] < n) return std::make_pair(i, first_bad[i]);
  return std::nullopt;
}

}  // namespace distort
