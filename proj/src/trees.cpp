#include "distort/trees.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace distort {

namespace {

std::string path_string(const TreePath& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

[[noreturn]] void not_in_tree(const TreeSpec& spec, const TreePath& p) {
  throw std::invalid_argument("path " + path_string(p) + " is not in T_{" +
                              successor(spec.alpha).to_string() + "}");
}

// h(c, W): index of the width-W truncation of T_{c+1}.
std::uint64_t trunc_height(const Ordinal& c, std::uint64_t width) {
  if (c.is_zero()) return 1;
  if (c.is_successor()) return 1 + trunc_height(predecessor(c), width);
  std::uint64_t best = 0;
  for (std::uint64_t k = 1; k <= width; ++k) best = std::max(best, trunc_height(child_alpha(c, k), width));
  return 1 + best;
}

}  // namespace

Ordinal child_alpha(const Ordinal& alpha, std::uint64_t n) {
  if (alpha.is_zero()) throw std::invalid_argument("child_alpha: T_1 has no subtrees");
  if (n == 0) throw std::invalid_argument("tree entries start at 1");
  if (alpha.is_successor()) return predecessor(alpha);
  return fundamental_sequence(alpha, n);
}

std::optional<Ordinal> node_subtree(const TreeSpec& spec, const TreePath& p) {
  if (p.empty()) return spec.alpha;
  Ordinal a = spec.alpha;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) not_in_tree(spec, p);
    if (i + 1 == p.size()) {
      if (a.is_zero()) return std::nullopt;
      return child_alpha(a, p[i]);
    }
    if (a.is_zero()) not_in_tree(spec, p);
    a = child_alpha(a, p[i]);
  }
  return std::nullopt;
}

bool contains(const TreeSpec& spec, const TreePath& p) {
  if (p.empty()) throw std::invalid_argument("contains: the empty path is not a tree member");
  Ordinal a = spec.alpha;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) return false;
    if (i + 1 == p.size()) return true;
    if (a.is_zero()) return false;
    a = child_alpha(a, p[i]);
  }
  return true;
}

Ordinal rank(const TreeSpec& spec, const TreePath& p) {
  if (p.empty()) return successor(spec.alpha);
  if (!contains(spec, p)) not_in_tree(spec, p);
  auto sub = node_subtree(spec, p);
  return sub ? successor(*sub) : Ordinal();
}

Ordinal survival(const TreeSpec& spec, const TreePath& p) {
  if (p.empty() || !contains(spec, p)) not_in_tree(spec, p);
  Ordinal a = spec.alpha;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) a = child_alpha(a, p[i]);
  return a;
}

Ordinal index(const TreeSpec& spec) { return successor(spec.alpha); }

void validate_tree(const FiniteTree& t) {
  for (const auto& p : t) {
    if (p.empty()) throw std::invalid_argument("finite tree contains the empty path");
    if (std::find(p.begin(), p.end(), 0) != p.end())
      throw std::invalid_argument("tree path " + path_string(p) + " has a zero entry");
    if (p.size() > 1 && !t.count(TreePath(p.begin(), p.end() - 1)))
      throw std::invalid_argument("tree not prefix-closed at " + path_string(p));
  }
}

FiniteTree derive_finite(const FiniteTree& t) {
  // A parent family survives when one of its members has a child.
  std::set<TreePath> live_families;
  for (const auto& p : t) {
    if (p.size() < 2) continue;
    TreePath parent(p.begin(), p.end() - 1);
    live_families.insert(TreePath(parent.begin(), parent.end() - 1));
  }
  FiniteTree out;
  for (const auto& p : t)
    if (live_families.count(TreePath(p.begin(), p.end() - 1))) out.insert(p);
  return out;
}

std::optional<std::uint64_t> index_finite(const FiniteTree& t) {
  FiniteTree cur = t;
  std::uint64_t k = 0;
  while (!cur.empty()) {
    FiniteTree next = derive_finite(cur);
    if (next == cur) return std::nullopt;
    cur = std::move(next);
    ++k;
  }
  return k;
}

std::map<TreePath, std::uint64_t> maximality_stages(const FiniteTree& t) {
  std::map<TreePath, std::uint64_t> stage;
  FiniteTree cur = t;
  std::uint64_t k = 0;
  while (!cur.empty()) {
    std::set<TreePath> has_child;
    for (const auto& p : cur)
      if (p.size() > 1) has_child.insert(TreePath(p.begin(), p.end() - 1));
    for (const auto& p : cur)
      if (!has_child.count(p) && !stage.count(p)) stage[p] = k;
    FiniteTree next = derive_finite(cur);
    if (next == cur) break;
    cur = std::move(next);
    ++k;
  }
  return stage;
}

FiniteTree truncate(const TreeSpec& spec, std::uint64_t width, std::size_t cap) {
  if (width == 0) throw std::invalid_argument("truncate: width must be positive");
  FiniteTree out;
  TreePath cur;
  std::function<void(const Ordinal&)> grow = [&](const Ordinal& a) {
    for (std::uint64_t k = 1; k <= width; ++k) {
      cur.push_back(k);
      out.insert(cur);
      if (out.size() > cap)
        throw std::length_error("tree truncation exceeds cap of " + std::to_string(cap) + " nodes");
      if (!a.is_zero()) grow(child_alpha(a, k));
      cur.pop_back();
    }
  };
  grow(spec.alpha);
  return out;
}

std::uint64_t truncated_rank(const TreeSpec& spec, const TreePath& p, std::uint64_t width) {
  if (p.empty()) return trunc_height(spec.alpha, width);
  if (!contains(spec, p)) not_in_tree(spec, p);
  auto sub = node_subtree(spec, p);
  return sub ? trunc_height(*sub, width) : 0;
}

std::uint64_t truncated_index(const TreeSpec& spec, std::uint64_t width) {
  return trunc_height(spec.alpha, width);
}

}  // namespace distort
