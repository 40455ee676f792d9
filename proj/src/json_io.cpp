#include "distort/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace distort {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }
Json to_json(const Ordinal& o) { return o.to_string(); }

Json to_json(const MetricSpace& m) {
  Json dist = Json::array();
  for (const auto& v : m.dist()) dist.push_back(v.to_string());
  return Json{{"labels", m.labels()}, {"dist", dist}, {"basepoint", m.basepoint()}, {"sharedA", m.shared()}};
}

Json to_json(const StepFunction& f) {
  Json cuts = Json::array(), values = Json::array();
  for (const auto& c : f.cuts()) cuts.push_back(c.to_string());
  for (const auto& v : f.values()) values.push_back(v.to_string());
  return Json{{"bound", f.bound().to_string()}, {"cuts", cuts}, {"values", values}};
}

Json to_json(const StepEmbedding& e) {
  Json map = Json::array();
  for (const auto& f : e.images) map.push_back(to_json(f));
  return Json{{"kind", "step"}, {"domain", to_json(e.domain)}, {"bound", e.bound().to_string()}, {"map", map}};
}

Json to_json(const MatrixEmbedding& e) {
  Json rows = Json::array();
  for (const auto& r : e.rows) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(v.to_string());
    rows.push_back(row);
  }
  return Json{{"kind", "matrix"}, {"domain", to_json(e.domain)}, {"coordinates", e.coordinates}, {"entries", rows}};
}

Json to_json(const IntervalSet& s) {
  Json pieces = Json::array();
  for (const auto& p : s.pieces()) pieces.push_back(Json::array({p.lo.to_string(), p.hi.to_string()}));
  return Json{{"bound", s.bound().to_string()}, {"zero", s.includes_zero()}, {"pieces", pieces}};
}

Json to_json(const TreeSpec& t) { return Json{{"alpha", t.alpha.to_string()}}; }

Json path_to_json(const TreePath& p) { return Json(p); }

Json to_json(const FiniteTree& t) {
  Json out = Json::array();
  for (const auto& p : t) out.push_back(path_to_json(p));
  return out;
}

Json to_json(const WitnessReport& r) {
  Json pairs = Json::array(), counts = Json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back(Json::array({a, b}));
  for (const auto& c : r.counts) counts.push_back(Json{{"alpha", c.alpha.to_string()}, {"count", c.count}});
  return Json{{"pairs", pairs},
              {"D", r.D.to_string()},
              {"threshold", r.threshold.to_string()},
              {"region", to_json(r.region)},
              {"counts", counts}};
}

Json to_json(const DistortionResult& r) {
  return Json{{"dims", r.dims},
              {"lower", r.lower.to_string()},
              {"upper", r.upper.to_string()},
              {"status", to_string(r.status)},
              {"witness", to_json(r.witness)},
              {"stats",
               {{"nodes", r.stats.nodes},
                {"conflicts", r.stats.conflicts},
                {"learned", r.stats.learned},
                {"restarts", r.stats.restarts},
                {"improvements", r.stats.improvements}}}};
}

Json to_json(const Certificate& c) {
  Json caps = Json::array();
  for (const auto& [n, cap] : c.capacities) caps.push_back(Json{{"n", n}, {"max_separated", cap.get_str()}});
  return Json{{"D", c.D.to_string()}, {"m", c.m},         {"base", c.base},
              {"C_D", c.c_d},         {"n_min", c.n_min}, {"capacities", caps}};
}

Json to_json(const CountingReport& r) {
  return Json{{"ok", r.ok},
              {"failure", r.failure},
              {"D", r.D.to_string()},
              {"threshold", r.threshold.to_string()},
              {"choices", r.choices},
              {"attaining_coordinates", r.attaining},
              {"min_gamma", r.min_gamma},
              {"required_gamma", r.required_gamma},
              {"base", r.capacity_base}};
}

Json to_json(const StageRecord& s) {
  Json j{{"path", path_to_json(s.path)}, {"rank", s.rank.to_string()}, {"bound", s.bound.to_string()},
         {"points", s.points}, {"phantom", s.phantom}};
  if (s.copies) {
    j["N"] = *s.copies;
    j["N_limit_log2"] = s.copy_limit_log2;
  }
  return j;
}

Rational rational_from_json(const Json& j) {
  return guarded("rational", [&] {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return Rational::parse(j.get<std::string>());
  });
}

Ordinal ordinal_from_json(const Json& j) {
  return guarded("ordinal", [&] {
    if (j.is_number_integer()) {
      if (j.get<std::int64_t>() < 0 && !j.is_number_unsigned()) throw std::invalid_argument("negative ordinal");
      return Ordinal::finite(j.get<std::uint64_t>());
    }
    return Ordinal::parse(j.get<std::string>());
  });
}

MetricSpace space_from_json(const Json& j) {
  return guarded("metric space", [&] {
    auto labels = field(j, "labels").get<std::vector<std::string>>();
    std::vector<Rational> dist;
    for (const auto& v : field(j, "dist")) dist.push_back(rational_from_json(v));
    auto base = field(j, "basepoint").get<std::size_t>();
    auto shared = j.contains("sharedA") ? j.at("sharedA").get<std::vector<std::size_t>>() : std::vector<std::size_t>{};
    return MetricSpace(std::move(labels), std::move(dist), base, std::move(shared));
  });
}

StepFunction stepfn_from_json(const Json& j) {
  return guarded("step function", [&] {
    std::vector<Ordinal> cuts;
    std::vector<Rational> values;
    for (const auto& c : field(j, "cuts")) cuts.push_back(ordinal_from_json(c));
    for (const auto& v : field(j, "values")) values.push_back(rational_from_json(v));
    return StepFunction(ordinal_from_json(field(j, "bound")), std::move(cuts), std::move(values));
  });
}

StepEmbedding step_embedding_from_json(const Json& j) {
  return guarded("step embedding", [&] {
    StepEmbedding e{space_from_json(field(j, "domain")), {}};
    for (const auto& f : field(j, "map")) e.images.push_back(stepfn_from_json(f));
    validate_step_embedding(e);
    return e;
  });
}

MatrixEmbedding matrix_embedding_from_json(const Json& j) {
  return guarded("matrix embedding", [&] {
    MatrixEmbedding e{space_from_json(field(j, "domain")),
                      field(j, "coordinates").get<std::vector<std::string>>(), {}};
    for (const auto& r : field(j, "entries")) {
      std::vector<Rational> row;
      for (const auto& v : r) row.push_back(rational_from_json(v));
      e.rows.push_back(std::move(row));
    }
    validate_matrix_embedding(e);
    return e;
  });
}

StepEmbedding any_embedding_from_json(const Json& j) {
  const Json& e = j.contains("embedding") ? j.at("embedding") : j;
  if (e.contains("kind") && e.at("kind") == "matrix") return to_step_embedding(matrix_embedding_from_json(e));
  if (e.contains("entries")) return to_step_embedding(matrix_embedding_from_json(e));
  return step_embedding_from_json(e);
}

IntervalSet interval_set_from_json(const Json& j) {
  return guarded("interval set", [&] {
    std::vector<OrdinalInterval> pieces;
    for (const auto& p : field(j, "pieces")) pieces.push_back({ordinal_from_json(p.at(0)), ordinal_from_json(p.at(1))});
    return IntervalSet(ordinal_from_json(field(j, "bound")), field(j, "zero").get<bool>(), std::move(pieces));
  });
}

TreeSpec tree_spec_from_json(const Json& j) {
  return guarded("tree spec", [&] { return TreeSpec{ordinal_from_json(field(j, "alpha"))}; });
}

TreePath path_from_json(const Json& j) {
  return guarded("tree path", [&] { return j.get<TreePath>(); });
}

FiniteTree tree_from_json(const Json& j) {
  return guarded("finite tree", [&] {
    FiniteTree t;
    for (const auto& p : j) t.insert(path_from_json(p));
    validate_tree(t);
    return t;
  });
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace distort
