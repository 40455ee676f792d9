#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distort/interval_set.hpp"
#include "distort/metric_space.hpp"
#include "distort/ordinal.hpp"
#include "distort/rational.hpp"

namespace distort {

// Piecewise constant function on [0,bound]. Piece 0 is [0,cuts[0]], piece j is
// (cuts[j-1],cuts[j]]; the last cut equals the bound.
class StepFunction {
 public:
  StepFunction(Ordinal bound, std::vector<Ordinal> cuts, std::vector<Rational> values);
  static StepFunction constant(const Ordinal& bound, const Rational& v);

  const Ordinal& bound() const { return cuts_.back(); }
  const std::vector<Ordinal>& cuts() const { return cuts_; }
  const std::vector<Rational>& values() const { return values_; }

  std::size_t piece_of(const Ordinal& gamma) const;
  Rational evaluate(const Ordinal& gamma) const;
  IntervalSet piece_set(std::size_t j) const;
  // Same function with equal neighbouring pieces merged.
  StepFunction simplified() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<Ordinal> cuts_;
  std::vector<Rational> values_;
};

// Sorted union of the cut lists.
std::vector<Ordinal> common_refinement(const std::vector<const StepFunction*>& fs);
// Values of f at each cut of a refinement of f's cuts.
std::vector<Rational> values_on(const StepFunction& f, const std::vector<Ordinal>& refinement);

Rational sup_distance(const StepFunction& f, const StepFunction& g);
// {gamma : |fa(gamma) - fb(gamma)| >= 4 - 2D}, for 1 <= D < 2.
IntervalSet witness_region(const StepFunction& fa, const StepFunction& fb, const Rational& D);

struct StepEmbedding {
  MetricSpace domain;
  std::vector<StepFunction> images;  // aligned with domain labels

  const Ordinal& bound() const { return images.front().bound(); }
  const StepFunction& image(const std::string& label) const { return images[domain.at(label)]; }
};

void validate_step_embedding(const StepEmbedding& e);

struct WitnessCount {
  Ordinal alpha;
  std::uint64_t count;
};

struct WitnessReport {
  std::vector<std::pair<std::string, std::string>> pairs;
  Rational D;
  Rational threshold;
  IntervalSet region;
  std::vector<WitnessCount> counts;
};

WitnessReport witness_report(const StepEmbedding& e, const std::vector<std::pair<std::string, std::string>>& pairs,
                             const Rational& D, const std::vector<Ordinal>& alphas, std::uint64_t cap);

struct DistortionConstants {
  Rational c1;
  Rational c2;
  // nullopt when c1 = 0
  std::optional<Rational> distortion() const;
};

DistortionConstants embedding_distortion(const StepEmbedding& e);

// Values of every image on the common refinement of all images: row i holds
// the values of point i at each refinement cut.
struct SampledEmbedding {
  std::vector<Ordinal> cuts;
  std::vector<std::vector<Rational>> rows;
};
SampledEmbedding sample(const StepEmbedding& e);

// Lexicographically least pair (i<j) where the sup distance differs from d.
std::optional<std::pair<std::size_t, std::size_t>> find_isometry_violation(
    const MetricSpace& m, const std::vector<std::vector<Rational>>& rows);

}  // namespace distort
