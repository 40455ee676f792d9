#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distort/metric_space.hpp"
#include "distort/ordinal.hpp"
#include "distort/trees.hpp"

namespace distort {

inline constexpr std::size_t kDefaultSizeCap = 5000;

// M(A_0^base, A_1^{n_1}, ..., A_h^{n_h}). Empty sizes give M(A_0^base).
struct GraphSpec {
  std::vector<std::uint64_t> sizes;
  std::uint64_t base_atoms = 2;
};

// Label helpers shared by builders and embedders.
std::string bottom_label();
std::string base_atom_label(std::uint64_t j);
std::string level_atom_label(std::size_t level, std::uint64_t j);

std::size_t graph_point_count(const GraphSpec& spec);
MetricSpace build_graph(const GraphSpec& spec, std::size_t cap = kDefaultSizeCap);

struct AmalgamSpec {
  std::vector<MetricSpace> components;
  std::vector<std::string> shared;
};

class AmalgamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Points: A in the given order, then each component's non-A points tagged
// "i:" with the 1-based component position.
MetricSpace sup_amalgam(const AmalgamSpec& spec, std::size_t cap = kDefaultSizeCap);

struct FamilyOptions {
  std::uint64_t width = 2;
  std::uint64_t base_atoms = 2;
  std::size_t cap = kDefaultSizeCap;
  // mu of the ambient tree T_{mu+1}. Unset: mu = stage for a nonempty path,
  // stage-1 for the empty path.
  std::optional<Ordinal> ambient;
};

// Shared set at node p: bottom, the base atoms and A_i^{p_i} for every level of p.
std::vector<std::string> family_shared_labels(const TreePath& path, std::uint64_t base_atoms);

// Resolves (stage, path) against the ambient tree. A nonempty path must be a
// node maximal at that stage: rank(path) <= stage <= survival(path). The empty
// path needs stage = mu+1. Returns the subtree parameter below the node
// (nullopt for a leaf); the space only depends on the node.
std::optional<Ordinal> family_node(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt);

// Width-truncated M^stage_path: a graph space at leaves, otherwise the
// sup-amalgam of the children's spaces over the node's shared set.
MetricSpace family_space(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt);
std::size_t family_point_count(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt);

// Same recursion addressed directly by subtree parameter.
MetricSpace node_space(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt);
std::size_t node_point_count(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt);
std::optional<Ordinal> child_subtree(const Ordinal& sub, std::uint64_t k);

// Top-level space M_alpha: family_space(alpha, empty) at successors; at limits
// the components M^{alpha[n]+1}_empty for n <= width glued over bottom and A_0.
MetricSpace glued_space(const Ordinal& alpha, const FamilyOptions& opt);
std::size_t glued_point_count(const Ordinal& alpha, const FamilyOptions& opt);

// glued_space with A_0^k in place of A_0^2.
MetricSpace byproduct_space(const Ordinal& alpha, std::uint64_t k, FamilyOptions opt);

}  // namespace distort
