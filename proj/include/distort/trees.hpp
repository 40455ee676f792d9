#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "distort/ordinal.hpp"

namespace distort {

// The tree T_{alpha+1}.
struct TreeSpec {
  Ordinal alpha;
};

using TreePath = std::vector<std::uint64_t>;
using FiniteTree = std::set<TreePath>;

// Parameter of the subtree hanging below child n of T_{alpha+1}: alpha-1 at
// successors, alpha[n] at limits. alpha must be positive.
Ordinal child_alpha(const Ordinal& alpha, std::uint64_t n);

// Subtree parameter at node p: the subtree below p is p^T_{c+1} for the
// returned c, or p is a leaf (nullopt). p must be in the tree.
std::optional<Ordinal> node_subtree(const TreeSpec& spec, const TreePath& p);

bool contains(const TreeSpec& spec, const TreePath& p);
// The empty path gets the formal value alpha+1.
Ordinal rank(const TreeSpec& spec, const TreePath& p);
// Largest beta with p in the beta-th derived tree.
Ordinal survival(const TreeSpec& spec, const TreePath& p);
Ordinal index(const TreeSpec& spec);

void validate_tree(const FiniteTree& t);
FiniteTree derive_finite(const FiniteTree& t);
// nullopt when a nonempty fixed point is reached.
std::optional<std::uint64_t> index_finite(const FiniteTree& t);
// Brute force: first k at which p is maximal in the k-th derived tree.
std::map<TreePath, std::uint64_t> maximality_stages(const FiniteTree& t);

// Keeps child indices <= width at every level. Throws once more than cap
// nodes would be produced.
FiniteTree truncate(const TreeSpec& spec, std::uint64_t width, std::size_t cap = 1'000'000);
// Closed-form rank of p inside truncate(spec, width).
std::uint64_t truncated_rank(const TreeSpec& spec, const TreePath& p, std::uint64_t width);
std::uint64_t truncated_index(const TreeSpec& spec, std::uint64_t width);

}  // namespace distort
