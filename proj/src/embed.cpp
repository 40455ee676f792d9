#include "distort/embed.hpp"

#include <algorithm>
#include <map>

namespace distort {

namespace {

std::string pair_text(const MetricSpace& m, std::pair<std::size_t, std::size_t> p) {
  return "(" + m.label(p.first) + ", " + m.label(p.second) + ")";
}

void check_cap(std::size_t points, std::size_t cap) {
  if (points > cap)
    throw SizeCapError("size cap exceeded: embedding domain needs " + std::to_string(points) + " points, cap is " +
                       std::to_string(cap));
}

bool all_values(const StepFunction& f, const Rational& v) {
  return std::all_of(f.values().begin(), f.values().end(), [&](const Rational& x) { return x == v; });
}

bool sign_valued(const StepFunction& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](const Rational& x) { return x == Rational(1) || x == Rational(-1); });
}

// Plain coordinates over the third level of g.
MatrixEmbedding third_level_coordinates(const MetricSpace& g) {
  const std::size_t bot = g.basepoint();
  const std::size_t one = g.at(base_atom_label(1));
  std::vector<std::size_t> F;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.d(bot, i) == Rational(2)) F.push_back(i);
  MatrixEmbedding e{g, {}, std::vector<std::vector<Rational>>(g.size())};
  for (auto b : F) {
    e.coordinates.push_back(g.label(b));
    Rational sign = (g.d(one, b) - Rational(2)) == Rational(-1) ? Rational(-1) : Rational(1);
    for (std::size_t x = 0; x < g.size(); ++x) e.rows[x].push_back(sign * (g.d(x, b) - Rational(2)));
  }
  return e;
}

}  // namespace

void validate_matrix_embedding(const MatrixEmbedding& e) {
  if (e.rows.size() != e.domain.size()) throw std::invalid_argument("matrix embedding row count differs from domain");
  for (const auto& r : e.rows)
    if (r.size() != e.coordinates.size()) throw std::invalid_argument("matrix embedding row has wrong width");
}

DistortionConstants matrix_distortion(const MatrixEmbedding& e) {
  return embedding_distortion(to_step_embedding(e));
}

StepEmbedding to_step_embedding(const MatrixEmbedding& e) {
  validate_matrix_embedding(e);
  if (e.coordinates.empty()) throw std::invalid_argument("matrix embedding without coordinates");
  std::vector<Ordinal> cuts;
  for (std::size_t c = 0; c < e.coordinates.size(); ++c) cuts.push_back(Ordinal::finite(c));
  Ordinal bound = cuts.back();
  StepEmbedding s{e.domain, {}};
  for (const auto& r : e.rows) s.images.emplace_back(bound, cuts, r);
  return s;
}

MatrixEmbedding to_matrix_embedding(const StepEmbedding& e) {
  auto s = sample(e);
  MatrixEmbedding m{e.domain, {}, std::move(s.rows)};
  for (const auto& c : s.cuts) m.coordinates.push_back(c.to_string());
  return m;
}

FiniteEmbedding embed_finite(const GraphSpec& spec, const EmbedFiniteOptions& opt) {
  MetricSpace g = build_graph(spec, opt.cap);
  FiniteEmbedding out{third_level_coordinates(g), {}, std::nullopt};
  if (auto bad = find_isometry_violation(g, out.embedding.rows)) {
    out.plain_failure = std::make_pair(g.label(bad->first), g.label(bad->second));
    if (opt.strict)
      throw EmbeddingError("third-level coordinates are not isometric on " + pair_text(g, *bad));
    GraphSpec wide = spec;
    for (std::size_t i = 0; i < wide.sizes.size(); ++i)
      if (wide.sizes[i] == 1) {
        wide.sizes[i] = 2;
        out.phantom_levels.push_back(i + 1);
      }
    MatrixEmbedding big = third_level_coordinates(build_graph(wide, std::max(opt.cap, graph_point_count(wide))));
    MatrixEmbedding restricted{g, {}, std::vector<std::vector<Rational>>(g.size())};
    for (const auto& c : big.coordinates) restricted.coordinates.push_back(g.index_of(c) ? c : "+" + c);
    for (std::size_t x = 0; x < g.size(); ++x) restricted.rows[x] = big.rows[big.domain.at(g.label(x))];
    out.embedding = std::move(restricted);
    if (auto still = find_isometry_violation(g, out.embedding.rows))
      throw EmbeddingError("augmented coordinates are not isometric on " + pair_text(g, *still));
  }
  if (auto why = check_normal_form(to_step_embedding(out.embedding)))
    throw EmbeddingError("finite embedding lost a normal-form property: " + *why);
  return out;
}

std::optional<std::string> check_normal_form(const StepEmbedding& e) {
  const auto& m = e.domain;
  if (!all_values(e.images[m.basepoint()], Rational(0))) return "basepoint is not sent to 0";
  for (auto a : m.shared())
    if (a != m.basepoint() && !sign_valued(e.images[a])) return "shared point " + m.label(a) + " is not +-1 valued";
  if (auto one = m.index_of(base_atom_label(1)); one && !all_values(e.images[*one], Rational(1)))
    return "point 1 is not sent to the constant 1";
  if (auto two = m.index_of(base_atom_label(2)); two && !all_values(e.images[*two], Rational(-1)))
    return "point 2 is not sent to the constant -1";
  return std::nullopt;
}

AmalgamEmbedding embed_amalgam(const std::vector<StepEmbedding>& parts, const std::vector<std::string>& shared,
                               std::size_t cap) {
  if (parts.empty()) throw std::invalid_argument("embed_amalgam needs at least one part");
  AmalgamSpec spec;
  spec.shared = shared;
  for (const auto& p : parts) {
    validate_step_embedding(p);
    spec.components.push_back(p.domain);
  }
  MetricSpace dom = sup_amalgam(spec, cap);
  const std::string bottom = dom.label(dom.basepoint());

  AmalgamEmbedding out{StepEmbedding{dom, {}}, {}, {}, Ordinal(), {}};
  for (const auto& l : shared)
    if (l != bottom) out.pattern_points.push_back(l);

  // Per part: refinement cuts, sampled rows, and the sign pattern on each piece.
  std::vector<SampledEmbedding> sampled;
  std::vector<std::vector<std::size_t>> piece_pattern(parts.size());
  std::map<std::vector<int>, std::size_t> pattern_index;
  for (std::size_t n = 0; n < parts.size(); ++n) {
    const auto& p = parts[n];
    const std::string where = "part " + std::to_string(n + 1);
    if (!all_values(p.image(bottom), Rational(0))) throw std::invalid_argument(where + " does not send the basepoint to 0");
    for (const auto& l : out.pattern_points)
      if (!sign_valued(p.image(l))) throw std::invalid_argument(where + " sends shared point " + l + " outside {-1,1}");
    sampled.push_back(sample(p));
    const auto& s = sampled.back();
    for (std::size_t c = 0; c < s.cuts.size(); ++c) {
      std::vector<int> eps;
      for (const auto& l : out.pattern_points) eps.push_back(s.rows[p.domain.at(l)][c] == Rational(1) ? 1 : -1);
      auto [it, fresh] = pattern_index.emplace(eps, out.patterns.size());
      if (fresh) out.patterns.push_back(eps);
      piece_pattern[n].push_back(it->second);
    }
    out.block_offsets.push_back(out.copy_length);
    out.copy_length = add(out.copy_length, successor(p.bound()));
  }
  const std::size_t N = out.patterns.size();

  std::vector<Ordinal> cuts;
  for (std::size_t e = 0; e < N; ++e) {
    Ordinal base = e == 0 ? Ordinal() : mul_nat(out.copy_length, e);
    for (std::size_t n = 0; n < parts.size(); ++n) {
      Ordinal block = add(base, out.block_offsets[n]);
      for (const auto& c : sampled[n].cuts) cuts.push_back(add(block, c));
    }
  }
  const Ordinal bound = cuts.back();

  // owner part and local index of every amalgam point outside A
  const std::size_t a_count = shared.size();
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t n = 0; n < parts.size(); ++n)
    for (std::size_t x = 0; x < parts[n].domain.size(); ++x)
      if (std::find(shared.begin(), shared.end(), parts[n].domain.label(x)) == shared.end()) origin.emplace_back(n, x);

  std::vector<std::vector<Rational>> rows(dom.size(), std::vector<Rational>(cuts.size()));
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto& row = rows[i];
    std::size_t pos = 0;
    for (std::size_t e = 0; e < N; ++e)
      for (std::size_t n = 0; n < parts.size(); ++n)
        for (std::size_t c = 0; c < sampled[n].cuts.size(); ++c, ++pos) {
          if (i < a_count) {
            if (dom.label(i) == bottom) continue;
            auto k = std::find(out.pattern_points.begin(), out.pattern_points.end(), dom.label(i)) -
                     out.pattern_points.begin();
            row[pos] = Rational(out.patterns[e][static_cast<std::size_t>(k)]);
          } else {
            auto [owner, local] = origin[i - a_count];
            if (owner == n && piece_pattern[n][c] == e) row[pos] = sampled[n].rows[local][c];
          }
        }
  }

  if (auto bad = find_isometry_violation(dom, rows))
    throw EmbeddingError("amalgam embedding is not isometric on " + pair_text(dom, *bad));
  for (const auto& row : rows) out.embedding.images.push_back(StepFunction(bound, cuts, row).simplified());
  return out;
}

FamilyEmbedding embed_node(const std::optional<Ordinal>& sub, const TreePath& path, const FamilyOptions& opt) {
  std::uint64_t limit_log2 = opt.base_atoms;
  for (auto p : path) limit_log2 += p;
  if (!sub) {
    if (path.empty()) throw std::invalid_argument("path/stage mismatch: stage 0 needs a nonempty path");
    auto fin = embed_finite(GraphSpec{path, opt.base_atoms}, EmbedFiniteOptions{false, opt.cap});
    FamilyEmbedding out{to_step_embedding(fin.embedding), {}};
    out.stages.push_back({path, Ordinal(), std::nullopt, limit_log2, out.embedding.bound(),
                          out.embedding.domain.size(), !fin.phantom_levels.empty()});
    return out;
  }
  check_cap(node_point_count(sub, path, opt), opt.cap);
  FamilyEmbedding out;
  std::vector<StepEmbedding> parts;
  for (std::uint64_t k = 1; k <= opt.width; ++k) {
    TreePath child = path;
    child.push_back(k);
    FamilyEmbedding c = embed_node(child_subtree(*sub, k), child, opt);
    out.stages.insert(out.stages.end(), c.stages.begin(), c.stages.end());
    parts.push_back(std::move(c.embedding));
  }
  auto am = embed_amalgam(parts, family_shared_labels(path, opt.base_atoms), opt.cap);
  out.embedding = std::move(am.embedding);
  out.stages.push_back({path, successor(*sub), am.copies(), limit_log2, out.embedding.bound(),
                        out.embedding.domain.size(), false});
  if (limit_log2 < 64 && am.copies() > (std::uint64_t{1} << limit_log2))
    throw EmbeddingError("copy count " + std::to_string(am.copies()) + " exceeds 2^" + std::to_string(limit_log2));
  if (auto why = check_normal_form(out.embedding)) throw EmbeddingError("family embedding: " + *why);
  return out;
}

FamilyEmbedding embed_family(const Ordinal& stage, const TreePath& path, const FamilyOptions& opt) {
  return embed_node(family_node(stage, path, opt), path, opt);
}

FamilyEmbedding embed_glued(const Ordinal& alpha, const FamilyOptions& opt) {
  if (alpha.is_zero()) throw std::invalid_argument("glued space needs alpha >= 1");
  if (alpha.is_successor()) return embed_node(predecessor(alpha), {}, opt);
  check_cap(glued_point_count(alpha, opt), opt.cap);
  FamilyEmbedding out;
  std::vector<StepEmbedding> parts;
  for (std::uint64_t n = 1; n <= opt.width; ++n) {
    FamilyEmbedding c = embed_node(fundamental_sequence(alpha, n), {}, opt);
    out.stages.insert(out.stages.end(), c.stages.begin(), c.stages.end());
    parts.push_back(std::move(c.embedding));
  }
  auto am = embed_amalgam(parts, family_shared_labels({}, opt.base_atoms), opt.cap);
  out.embedding = std::move(am.embedding);
  out.stages.push_back({{}, alpha, am.copies(), opt.base_atoms, out.embedding.bound(), out.embedding.domain.size(), false});
  if (auto why = check_normal_form(out.embedding)) throw EmbeddingError("glued embedding: " + *why);
  return out;
}

}  // namespace distort
