#include "distort/spaces.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace distort {

namespace {

std::size_t checked_size_mul(std::size_t a, std::size_t b) {
  std::size_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::size_t>::max();
  return r;
}

std::size_t checked_size_add(std::size_t a, std::size_t b) {
  std::size_t r;
  if (__builtin_add_overflow(a, b, &r)) return std::numeric_limits<std::size_t>::max();
  return r;
}

void check_cap(std::size_t points, std::size_t cap, const std::string& what) {
  if (points > cap)
    throw SizeCapError("size cap exceeded: " + what + " needs " +
                       (points == std::numeric_limits<std::size_t>::max() ? std::string("more than 2^64")
                                                                         : std::to_string(points)) +
                       " points, cap is " + std::to_string(cap));
}

std::string path_string(const TreePath& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

std::string bottom_label() { return "bot"; }
std::string base_atom_label(std::uint64_t j) { return std::to_string(j); }
std::string level_atom_label(std::size_t level, std::uint64_t j) {
  return "a" + std::to_string(level) + "_" + std::to_string(j);
}

std::size_t graph_point_count(const GraphSpec& spec) {
  std::size_t atoms = spec.base_atoms;
  std::size_t prod = spec.base_atoms;
  for (auto n : spec.sizes) {
    atoms = checked_size_add(atoms, n);
    prod = checked_size_mul(prod, n);
  }
  return checked_size_add(checked_size_add(1, atoms), prod);
}

MetricSpace build_graph(const GraphSpec& spec, std::size_t cap) {
  if (spec.base_atoms < 2) throw std::invalid_argument("graph needs at least two base atoms");
  for (auto n : spec.sizes)
    if (n == 0) throw std::invalid_argument("graph level sizes must be positive");
  std::size_t total = graph_point_count(spec);
  std::string sizes_text = "(";
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) sizes_text += (i ? "," : "") + std::to_string(spec.sizes[i]);
  check_cap(total, cap, "graph " + sizes_text + ")");

  // levels[0] is A_0, levels[i] is A_i.
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::string> labels{bottom_label()};
  levels.emplace_back();
  for (std::uint64_t j = 1; j <= spec.base_atoms; ++j) {
    levels[0].push_back(labels.size());
    labels.push_back(base_atom_label(j));
  }
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    levels.emplace_back();
    for (std::uint64_t j = 1; j <= spec.sizes[i]; ++j) {
      levels.back().push_back(labels.size());
      labels.push_back(level_atom_label(i + 1, j));
    }
  }
  const std::size_t atom_end = labels.size();

  std::vector<std::vector<std::size_t>> adj(total);
  for (std::size_t a = 1; a < atom_end; ++a) {
    adj[0].push_back(a);
    adj[a].push_back(0);
  }
  // Third level: one point per choice of an atom from every level, last level fastest.
  std::vector<std::size_t> choice(levels.size(), 0);
  for (bool done = false; !done;) {
    std::size_t id = labels.size();
    std::string name = "{";
    for (std::size_t l = 0; l < levels.size(); ++l) {
      std::size_t atom = levels[l][choice[l]];
      name += (l ? "," : "") + labels[atom];
      adj[id].push_back(atom);
      adj[atom].push_back(id);
    }
    labels.push_back(name + "}");
    std::ptrdiff_t l = static_cast<std::ptrdiff_t>(levels.size()) - 1;
    for (; l >= 0; --l) {
      if (++choice[l] < levels[l].size()) break;
      choice[l] = 0;
    }
    done = l < 0;
  }

  const std::size_t n = labels.size();
  std::vector<Rational> dist(n * n);
  std::vector<int> seen(n);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), -1);
    seen[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (auto v : adj[u])
        if (seen[v] < 0) {
          seen[v] = seen[u] + 1;
          queue.push_back(v);
        }
    }
    for (std::size_t t = 0; t < n; ++t) dist[s * n + t] = Rational(seen[t]);
  }
  std::vector<std::size_t> shared;
  for (std::size_t i = 0; i < atom_end; ++i) shared.push_back(i);
  return MetricSpace(std::move(labels), std::move(dist), 0, std::move(shared));
}

MetricSpace sup_amalgam(const AmalgamSpec& spec, std::size_t cap) {
  if (spec.components.empty()) throw AmalgamError("sup-amalgam needs at least one component");
  if (spec.shared.empty()) throw AmalgamError("sup-amalgam needs a nonempty shared set");
  const auto& first = spec.components.front();
  const std::string bottom = first.label(first.basepoint());
  if (std::find(spec.shared.begin(), spec.shared.end(), bottom) == spec.shared.end())
    throw AmalgamError("basepoint '" + bottom + "' missing from the shared set");

  const std::size_t a_count = spec.shared.size();
  std::vector<std::vector<std::size_t>> shared_idx(spec.components.size());
  std::size_t total = a_count;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& m = spec.components[c];
    const std::string where = "component " + std::to_string(c + 1);
    if (m.label(m.basepoint()) != bottom) throw AmalgamError(where + " has a different basepoint");
    std::vector<bool> in_a(m.size(), false);
    for (const auto& l : spec.shared) {
      auto i = m.index_of(l);
      if (!i) throw AmalgamError(where + " lacks shared point '" + l + "'");
      if (in_a[*i]) throw AmalgamError("shared label '" + l + "' listed twice");
      in_a[*i] = true;
      shared_idx[c].push_back(*i);
    }
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = x + 1; y < m.size(); ++y)
        if (m.d(x, y) < Rational(1))
          throw AmalgamError("SA2 violated in " + where + ": d(" + m.label(x) + "," + m.label(y) + ") < 1");
    for (auto a : shared_idx[c])
      if (m.d(a, m.basepoint()) > Rational(1))
        throw AmalgamError("SA2 violated in " + where + ": shared point '" + m.label(a) +
                           "' is farther than 1 from the basepoint");
    if (c > 0)
      for (std::size_t i = 0; i < a_count; ++i)
        for (std::size_t j = 0; j < a_count; ++j)
          if (m.d(shared_idx[c][i], shared_idx[c][j]) != first.d(shared_idx[0][i], shared_idx[0][j]))
            throw AmalgamError("SA1 violated: " + where + " disagrees on d(" + spec.shared[i] + "," +
                               spec.shared[j] + ")");
    total = checked_size_add(total, m.size() - a_count);
  }
  check_cap(total, cap, "sup-amalgam");

  // owner/local index for every output point
  std::vector<std::string> labels = spec.shared;
  std::vector<std::size_t> owner(a_count, 0), local(a_count);
  for (std::size_t i = 0; i < a_count; ++i) local[i] = shared_idx[0][i];
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& m = spec.components[c];
    std::vector<bool> in_a(m.size(), false);
    for (auto a : shared_idx[c]) in_a[a] = true;
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (in_a[x]) continue;
      labels.push_back(std::to_string(c + 1) + ":" + m.label(x));
      owner.push_back(c);
      local.push_back(x);
    }
  }

  const std::size_t n = labels.size();
  std::vector<Rational> dist(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Rational v;
      bool xa = x < a_count, ya = y < a_count;
      if (xa && ya) {
        v = first.d(local[x], local[y]);
      } else if (xa) {
        const auto& m = spec.components[owner[y]];
        v = m.d(shared_idx[owner[y]][x], local[y]);
      } else if (ya) {
        const auto& m = spec.components[owner[x]];
        v = m.d(local[x], shared_idx[owner[x]][y]);
      } else if (owner[x] == owner[y]) {
        v = spec.components[owner[x]].d(local[x], local[y]);
      } else {
        const auto& mx = spec.components[owner[x]];
        const auto& my = spec.components[owner[y]];
        v = std::max(mx.d(local[x], mx.basepoint()), my.d(local[y], my.basepoint()));
      }
      dist[x * n + y] = v;
    }
  }
  std::vector<std::size_t> shared(a_count);
  for (std::size_t i = 0; i < a_count; ++i) shared[i] = i;
  std::size_t base = static_cast<std::size_t>(
      std::find(spec.shared.begin(), spec.shared.end(), bottom) - spec.shared.begin());
  return MetricSpace(std::move(labels), std::move(dist), base, std::move(shared));
}

std::vector<std::string> family_shared_labels(const TreePath& path, std::uint64_t base_atoms) {
  std::vector<std::string> out{bottom_label()};
  for (std::uint64_t j = 1; j <= base_atoms; ++j) out.push_back(base_atom_label(j));
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::uint64_t j = 1; j <= path[i]; ++j) out.push_back(level_atom_label(i + 1, j));
  return out;
}

std::optional<Ordinal> child_subtree(const Ordinal& sub, std::uint64_t k) {
  if (sub.is_zero()) return std::nullopt;
  return child_alpha(sub, k);
}

std::optional<Ordinal> family_node(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt) {
  if (path.empty()) {
    if (!stage.is_successor())
      throw std::invalid_argument("path/stage mismatch: the empty path needs a successor stage, got " +
                                  stage.to_string());
    Ordinal mu = predecessor(stage);
    if (opt.ambient && *opt.ambient != mu)
      throw std::invalid_argument("path/stage mismatch: the empty path lives at stage mu+1 = " +
                                  successor(*opt.ambient).to_string());
    return mu;
  }
  TreeSpec spec{opt.ambient ? *opt.ambient : stage};
  if (!contains(spec, path))
    throw std::invalid_argument("path/stage mismatch: " + path_string(path) + " is not in T_{" +
                                successor(spec.alpha).to_string() + "}");
  Ordinal r = rank(spec, path);
  Ordinal s = survival(spec, path);
  if (stage < r || stage > s)
    throw std::invalid_argument("path/stage mismatch: " + path_string(path) + " is maximal only at stages " +
                                r.to_string() + " through " + s.to_string());
  return node_subtree(spec, path);
}

std::size_t node_point_count(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt) {
  if (!sub) return graph_point_count(GraphSpec{path, opt.base_atoms});
  std::size_t a = family_shared_labels(path, opt.base_atoms).size();
  std::size_t total = a;
  for (std::uint64_t k = 1; k <= opt.width; ++k) {
    TreePath child = path;
    child.push_back(k);
    std::size_t c = node_point_count(child_subtree(*sub, k), child, opt);
    total = checked_size_add(total, c - a);
    if (total > opt.cap) return total;
  }
  return total;
}

MetricSpace node_space(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt) {
  if (opt.width == 0) throw std::invalid_argument("width must be positive");
  if (!sub) {
    if (path.empty()) throw std::invalid_argument("path/stage mismatch: stage 0 needs a nonempty path");
    return build_graph(GraphSpec{path, opt.base_atoms}, opt.cap);
  }
  check_cap(node_point_count(sub, path, opt), opt.cap, "family space at " + path_string(path));
  AmalgamSpec spec;
  spec.shared = family_shared_labels(path, opt.base_atoms);
  for (std::uint64_t k = 1; k <= opt.width; ++k) {
    TreePath child = path;
    child.push_back(k);
    spec.components.push_back(node_space(child_subtree(*sub, k), child, opt));
  }
  return sup_amalgam(spec, opt.cap);
}

std::size_t family_point_count(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt) {
  return node_point_count(family_node(stage, path, opt), path, opt);
}

MetricSpace family_space(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt) {
  return node_space(family_node(stage, path, opt), path, opt);
}

std::size_t glued_point_count(const Ordinal& alpha, const FamilyOptions& opt) {
  if (alpha.is_zero()) throw std::invalid_argument("glued space needs alpha >= 1");
  if (alpha.is_successor()) return node_point_count(predecessor(alpha), {}, opt);
  std::size_t a = 1 + opt.base_atoms;
  std::size_t total = a;
  for (std::uint64_t n = 1; n <= opt.width; ++n) {
    total = checked_size_add(total, node_point_count(fundamental_sequence(alpha, n), {}, opt) - a);
    if (total > opt.cap) return total;
  }
  return total;
}

MetricSpace glued_space(const Ordinal& alpha, const FamilyOptions& opt) {
  if (alpha.is_zero()) throw std::invalid_argument("glued space needs alpha >= 1");
  if (alpha.is_successor()) return node_space(predecessor(alpha), {}, opt);
  check_cap(glued_point_count(alpha, opt), opt.cap, "glued space for " + alpha.to_string());
  AmalgamSpec spec;
  spec.shared = family_shared_labels({}, opt.base_atoms);
  for (std::uint64_t n = 1; n <= opt.width; ++n) spec.components.push_back(node_space(fundamental_sequence(alpha, n), {}, opt));
  return sup_amalgam(spec, opt.cap);
}

MetricSpace byproduct_space(const Ordinal& alpha, std::uint64_t k, FamilyOptions opt) {
  opt.base_atoms = k;
  return glued_space(alpha, opt);
}

}  // namespace distort
