// distort_lab: command-line front end for the library.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acceptance/acceptance.hpp"
#include "distort/certificate.hpp"
#include "distort/embed.hpp"
#include "distort/json_io.hpp"
#include "distort/solver.hpp"
#include "distort/spaces.hpp"
#include "distort/stepfn.hpp"
#include "distort/trees.hpp"

using namespace distort;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string format;  // empty: the command's natural format
  std::string output;
  std::uint64_t seed = acceptance::Config{}.seed;
  std::size_t cap = kDefaultSizeCap;
};

// What a command produced: a JSON value and its text rendering.
struct Output {
  Json json;
  std::string text;
  bool prefer_json = true;
  int code = 0;
};

void emit(const RunConfig& rc, Output out) {
  bool as_json = rc.format.empty() ? out.prefer_json : rc.format == "json";
  std::string body;
  if (as_json) {
    if (out.json.is_object()) out.json["seed"] = rc.seed;
    body = out.json.dump(2) + "\n";
  } else {
    body = out.text;
    if (!body.empty() && body.back() != '\n') body += '\n';
  }
  if (rc.output.empty()) std::cout << body;
  else write_file_atomic(rc.output, body);
}

Rational parse_rational(const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::exception& e) {
    throw UsageError("bad rational '" + s + "': " + e.what());
  }
}

Ordinal parse_ordinal(const std::string& s) {
  try {
    return Ordinal::parse(s);
  } catch (const std::exception& e) {
    throw UsageError("bad ordinal '" + s + "': " + e.what());
  }
}

// Accepts plain integers and exact scientific forms like 1e6.
std::uint64_t parse_count(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1 || v > 1e18 || std::floor(v) != v) throw UsageError("bad count '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

// "3" or "1..4"
std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  auto dots = s.find("..");
  auto lo = parse_count(s.substr(0, dots));
  auto hi = dots == std::string::npos ? lo : parse_count(s.substr(dots + 2));
  if (hi < lo || hi > 64) throw UsageError("bad dimension range '" + s + "'");
  return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
}

std::string show(const Rational& r) { return r.is_integer() ? std::to_string(r.num()) : r.to_string(); }

std::string path_text(const TreePath& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Json load(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

std::string space_summary(const MetricSpace& m) {
  std::ostringstream os;
  os << m.size() << " points, basepoint " << m.label(m.basepoint()) << ", " << m.shared().size() << " shared";
  return os.str();
}

FamilyOptions family_options(const RunConfig& rc, std::uint64_t width) {
  FamilyOptions opt;
  opt.width = width;
  opt.cap = rc.cap;
  return opt;
}

// ---- ordinal

void add_ordinal(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("ordinal", "ordinal arithmetic below epsilon_0");
  cmd->require_subcommand(1);

  static std::string a, b, alpha;
  static std::uint64_t n = 1;

  auto* norm = cmd->add_subcommand("normalize", "parse and print in normal form");
  norm->add_option("value", a)->required();
  norm->callback([&] {
    auto o = parse_ordinal(a);
    emit(rc, {Json{{"ordinal", o.to_string()}}, o.to_string(), false});
  });

  auto* sum = cmd->add_subcommand("add", "ordinal sum a + b");
  sum->add_option("a", a)->required();
  sum->add_option("b", b)->required();
  sum->callback([&] {
    auto o = add(parse_ordinal(a), parse_ordinal(b));
    emit(rc, {Json{{"ordinal", o.to_string()}}, o.to_string(), false});
  });

  auto* cmp = cmd->add_subcommand("compare", "print <, = or >");
  cmp->add_option("a", a)->required();
  cmp->add_option("b", b)->required();
  cmp->callback([&] {
    auto x = parse_ordinal(a), y = parse_ordinal(b);
    std::string r = x < y ? "<" : (x == y ? "=" : ">");
    emit(rc, {Json{{"relation", r}}, r, false});
  });

  auto* fs = cmd->add_subcommand("fundamental", "n-th element of the canonical sequence of a limit");
  fs->add_option("alpha", alpha)->required();
  fs->add_option("--n", n, "index, from 1")->check(CLI::PositiveNumber);
  fs->callback([&] {
    auto al = parse_ordinal(alpha);
    if (!al.is_limit()) throw UsageError(al.to_string() + " is not a limit");
    auto o = fundamental_sequence(al, n);
    emit(rc, {Json{{"alpha", al.to_string()}, {"n", n}, {"ordinal", o.to_string()}}, o.to_string(), false});
  });

  auto* cb = cmd->add_subcommand("cb-rank", "Cantor-Bendixson rank of [0,beta]");
  cb->add_option("beta", a)->required();
  cb->callback([&] {
    auto o = cb_rank_interval(parse_ordinal(a));
    emit(rc, {Json{{"rank", o.to_string()}}, o.to_string(), false});
  });

  auto* nd = cmd->add_subcommand("next-derived", "least point above gamma in the alpha-th derived set");
  nd->add_option("gamma", a)->required();
  nd->add_option("--alpha", alpha)->required();
  nd->callback([&] {
    auto o = next_derived_point(parse_ordinal(a), parse_ordinal(alpha));
    emit(rc, {Json{{"ordinal", o.to_string()}}, o.to_string(), false});
  });
}

// ---- tree

void add_tree(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("tree", "the trees T_{alpha+1}");
  cmd->require_subcommand(1);

  static std::string alpha;
  static std::vector<std::uint64_t> path;
  static std::uint64_t width = 2;

  auto* idx = cmd->add_subcommand("index", "index of T_{alpha+1}");
  idx->add_option("--alpha", alpha)->required();
  idx->callback([&] {
    auto o = index(TreeSpec{parse_ordinal(alpha)});
    emit(rc, {Json{{"alpha", alpha}, {"index", o.to_string()}}, o.to_string(), false});
  });

  auto* rk = cmd->add_subcommand("rank", "rank and survival of a node");
  rk->add_option("--alpha", alpha)->required();
  rk->add_option("--path", path, "child indices, comma separated")->delimiter(',');
  rk->callback([&] {
    TreeSpec s{parse_ordinal(alpha)};
    if (!contains(s, path)) throw UsageError("path " + path_text(path) + " is not in the tree");
    auto r = rank(s, path), sv = survival(s, path);
    emit(rc, {Json{{"path", path_to_json(path)}, {"rank", r.to_string()}, {"survival", sv.to_string()}},
              "rank " + r.to_string() + ", survival " + sv.to_string(), false});
  });

  auto* tr = cmd->add_subcommand("truncate", "finite truncation with child indices <= width");
  tr->add_option("--alpha", alpha)->required();
  tr->add_option("--width", width)->check(CLI::PositiveNumber);
  tr->callback([&] {
    TreeSpec s{parse_ordinal(alpha)};
    auto t = truncate(s, width, rc.cap);
    auto brute = index_finite(t);
    Json j{{"alpha", alpha}, {"width", width}, {"nodes", t.size()}, {"index", truncated_index(s, width)}};
    j["derived_index"] = brute ? Json(*brute) : Json(nullptr);
    j["tree"] = to_json(t);
    std::string text = std::to_string(t.size()) + " nodes, index " + std::to_string(truncated_index(s, width));
    Output out{j, text, true};
    if (!brute || *brute != truncated_index(s, width)) {
      out.code = kVerifyFailed;
      out.text += ", derivation disagrees";
    }
    int code = out.code;
    emit(rc, std::move(out));
    if (code) throw CLI::RuntimeError(code);
  });
}

// ---- space

void add_space(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("space", "build and validate metric spaces");
  cmd->require_subcommand(1);

  static std::vector<std::uint64_t> sizes, path;
  static std::uint64_t base_atoms = 2, width = 2;
  static std::string alpha, file;

  auto* bg = cmd->add_subcommand("build-graph", "the graph space M(A_0^base, A_1^{n_1}, ...)");
  bg->add_option("--sizes", sizes, "level sizes, comma separated")->delimiter(',');
  bg->add_option("--base-atoms", base_atoms)->check(CLI::PositiveNumber);
  bg->callback([&] {
    auto m = build_graph(GraphSpec{sizes, base_atoms}, rc.cap);
    emit(rc, {to_json(m), space_summary(m)});
  });

  auto* fam = cmd->add_subcommand("family", "width-truncated family space at a stage and node");
  fam->add_option("--alpha", alpha, "stage")->required();
  fam->add_option("--path", path)->delimiter(',');
  fam->add_option("--width", width)->check(CLI::PositiveNumber);
  fam->callback([&] {
    auto m = family_space(parse_ordinal(alpha), path, family_options(rc, width));
    emit(rc, {to_json(m), space_summary(m)});
  });

  auto* gl = cmd->add_subcommand("glued", "top-level space for alpha");
  gl->add_option("--alpha", alpha)->required();
  gl->add_option("--width", width)->check(CLI::PositiveNumber);
  gl->callback([&] {
    auto m = glued_space(parse_ordinal(alpha), family_options(rc, width));
    emit(rc, {to_json(m), space_summary(m)});
  });

  auto* val = cmd->add_subcommand("validate", "check the metric axioms");
  val->add_option("file", file)->required();
  val->callback([&] {
    auto m = space_from_json(load(file));
    auto rep = validate_metric(m);
    Json v = Json::array();
    std::string text = rep.ok ? "ok: " + space_summary(m) : std::to_string(rep.violation_count) + " violations";
    for (const auto& x : rep.violations) {
      Json pts = Json::array();
      std::string names;
      for (auto p : x.points) {
        pts.push_back(m.label(p));
        names += " " + m.label(p);
      }
      v.push_back(Json{{"kind", x.kind}, {"points", pts}, {"detail", x.detail}});
      text += "\n" + x.kind + ":" + names + " " + x.detail;
    }
    Output out{Json{{"ok", rep.ok}, {"points", m.size()}, {"violation_count", rep.violation_count}, {"violations", v}},
               text, false};
    emit(rc, std::move(out));
    if (!rep.ok) throw CLI::RuntimeError(kVerifyFailed);
  });
}

// ---- embed

Output embedding_output(const StepEmbedding& e, const std::vector<StageRecord>& stages) {
  Json j = to_json(e);
  if (!stages.empty()) {
    Json s = Json::array();
    for (const auto& r : stages) s.push_back(to_json(r));
    j["stages"] = s;
  }
  return {j, std::to_string(e.domain.size()) + " points on [0," + e.bound().to_string() + "]"};
}

void add_embed(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("embed", "isometric embeddings into step functions");
  cmd->require_subcommand(1);

  static std::vector<std::uint64_t> sizes, path;
  static std::uint64_t width = 2;
  static std::string alpha, file;
  static bool strict = false;

  auto* fin = cmd->add_subcommand("finite", "coordinate embedding of a graph space");
  fin->add_option("--sizes", sizes)->delimiter(',');
  fin->add_flag("--strict", strict, "fail instead of using phantom coordinates");
  fin->callback([&] {
    auto fe = embed_finite(GraphSpec{sizes}, EmbedFiniteOptions{strict, rc.cap});
    Json j = to_json(fe.embedding);
    j["phantom_levels"] = fe.phantom_levels;
    if (fe.plain_failure) j["plain_failure"] = Json::array({fe.plain_failure->first, fe.plain_failure->second});
    emit(rc, {j, std::to_string(fe.embedding.domain.size()) + " points in " +
                     std::to_string(fe.embedding.coordinates.size()) + " coordinates"});
  });

  auto* fam = cmd->add_subcommand("family", "embedding of a family space");
  fam->add_option("--alpha", alpha, "stage")->required();
  fam->add_option("--path", path)->delimiter(',');
  fam->add_option("--width", width)->check(CLI::PositiveNumber);
  fam->callback([&] {
    auto fe = embed_family(parse_ordinal(alpha), path, family_options(rc, width));
    emit(rc, embedding_output(fe.embedding, fe.stages));
  });

  auto* gl = cmd->add_subcommand("glued", "embedding of the top-level space");
  gl->add_option("--alpha", alpha)->required();
  gl->add_option("--width", width)->check(CLI::PositiveNumber);
  gl->callback([&] {
    auto fe = embed_glued(parse_ordinal(alpha), family_options(rc, width));
    emit(rc, embedding_output(fe.embedding, fe.stages));
  });

  auto* ver = cmd->add_subcommand("verify", "check isometry and the normal form of an embedding");
  ver->add_option("file", file)->required();
  ver->callback([&] {
    auto e = any_embedding_from_json(load(file));
    auto s = sample(e);
    auto bad = find_isometry_violation(e.domain, s.rows);
    auto nf = check_normal_form(e);
    Json j{{"isometric", !bad}, {"normal_form", !nf}};
    std::string text = bad ? "not isometric on " + e.domain.label(bad->first) + ", " + e.domain.label(bad->second)
                           : "isometric";
    if (bad) j["violation"] = Json::array({e.domain.label(bad->first), e.domain.label(bad->second)});
    if (nf) {
      j["normal_form_failure"] = *nf;
      text += "; " + *nf;
    } else {
      text += "; normal form holds";
    }
    emit(rc, {j, text, false});
    if (bad) throw CLI::RuntimeError(kVerifyFailed);
  });
}

// ---- stepfn

void add_stepfn(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("stepfn", "step-function witness machinery");
  cmd->require_subcommand(1);

  static std::string file, D;
  static std::vector<std::string> pairs, alphas;
  static std::uint64_t cap = 1000;

  auto* ve = cmd->add_subcommand("verify-embedding", "distortion and witness-region counts of an embedding");
  ve->add_option("file", file)->required();
  ve->add_option("--pairs", pairs, "label pair a,b; repeatable")->required()->allow_extra_args(false);
  ve->add_option("--D", D)->required();
  ve->add_option("--alpha", alphas, "derived-set orders; repeatable")->allow_extra_args(false);
  ve->add_option("--count-cap", cap)->check(CLI::PositiveNumber);
  ve->callback([&] {
    auto e = any_embedding_from_json(load(file));
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& p : pairs) {
      auto comma = p.find(',');
      if (comma == std::string::npos) throw UsageError("pair '" + p + "' needs the form a,b");
      ps.emplace_back(p.substr(0, comma), p.substr(comma + 1));
      for (const auto& l : {ps.back().first, ps.back().second})
        if (!e.domain.index_of(l)) throw UsageError("no point labeled '" + l + "'");
    }
    std::vector<Ordinal> al;
    for (const auto& a : alphas) al.push_back(parse_ordinal(a));
    if (al.empty()) al.push_back(Ordinal());
    Rational d = parse_rational(D);
    auto rep = witness_report(e, ps, d, al, cap);
    auto dc = embedding_distortion(e);
    Json j = to_json(rep);
    j["c1"] = dc.c1.to_string();
    j["c2"] = dc.c2.to_string();
    j["distortion"] = dc.distortion() ? Json(dc.distortion()->to_string()) : Json(nullptr);
    std::string text = "distortion " + (dc.distortion() ? show(*dc.distortion()) : std::string("undefined")) +
                       ", threshold " + show(rep.threshold);
    for (const auto& c : rep.counts) text += "\nalpha " + c.alpha.to_string() + ": " + std::to_string(c.count);
    emit(rc, {j, text, false});
  });
}

// ---- solve

void add_solve(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("solve", "minimum distortion into l_inf^n");
  cmd->require_subcommand(1);

  static std::string file, dims_text = "1", budget = "1000000";
  static unsigned dims = 1;
  static bool no_symmetry = false;

  auto options = [] {
    SolverOptions opt;
    opt.budget = parse_count(budget);
    opt.break_symmetry = !no_symmetry;
    return opt;
  };

  auto* md = cmd->add_subcommand("min-distortion", "exact search with a witness");
  md->add_option("space", file)->required();
  md->add_option("--dims", dims)->check(CLI::Range(1u, 64u));
  md->add_option("--budget", budget, "search decisions, e.g. 1e6");
  md->add_flag("--no-symmetry", no_symmetry, "disable symmetry-breaking clauses");
  md->callback([&] {
    auto m = space_from_json(load(file));
    auto r = min_distortion(m, dims, options());
    std::string text = to_string(r.status) + ": " +
                       (r.status == SolveStatus::exact ? show(r.upper)
                                                       : "[" + show(r.lower) + ", " + show(r.upper) + "]") +
                       " in " + std::to_string(dims) + " coordinates, " + std::to_string(r.stats.nodes) + " nodes";
    Json j = to_json(r);
    j["budget"] = options().budget;
    emit(rc, {j, text});
  });

  auto* cv = cmd->add_subcommand("curve", "minimum distortion per dimension as CSV");
  cv->add_option("--space", file)->required();
  cv->add_option("--dims", dims_text, "range lo..hi");
  cv->add_option("--budget", budget);
  cv->callback([&] {
    auto m = space_from_json(load(file));
    auto [lo, hi] = parse_range(dims_text);
    std::string csv = "n,D_min_num,D_min_den\n";
    Json rows = Json::array();
    bool exact = true;
    for (unsigned n = lo; n <= hi; ++n) {
      auto r = min_distortion(m, n, options());
      exact = exact && r.status == SolveStatus::exact;
      csv += std::to_string(n) + "," + std::to_string(r.upper.num()) + "," + std::to_string(r.upper.den()) + "\n";
      rows.push_back(Json{{"n", n}, {"D_min", r.upper.to_string()}, {"status", to_string(r.status)}});
    }
    emit(rc, {Json{{"curve", rows}}, csv, false});
    if (!exact) std::cerr << "some dimensions hit the budget; their rows are upper bounds\n";
  });
}

// ---- certify

void add_certify(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("certify", "counting certificates");
  cmd->require_subcommand(1);

  static std::string D, file;
  static std::uint64_t m = 1;
  static unsigned max_n = 0;
  static std::vector<std::uint64_t> sizes;

  auto* cnt = cmd->add_subcommand("counting", "separation base, C_D and capacities for D and m");
  cnt->add_option("--D", D)->required();
  cnt->add_option("--m", m)->check(CLI::PositiveNumber);
  cnt->add_option("--max-n", max_n, "list capacities up to this n");
  cnt->callback([&] {
    auto c = make_certificate(parse_rational(D), m, max_n);
    std::ostringstream os;
    os << "D " << show(c.D) << ": base " << c.base << ", C_D " << c.c_d << ", at least " << c.n_min
       << " coordinates for " << m << " last-level points";
    for (const auto& [n, cap] : c.capacities) os << "\nn=" << n << " capacity " << cap.get_str();
    emit(rc, {to_json(c), os.str(), false});
  });

  auto* wit = cmd->add_subcommand("witness", "run the counting argument on an embedding of a graph space");
  wit->add_option("file", file)->required();
  wit->add_option("--D", D)->required();
  wit->add_option("--sizes", sizes)->delimiter(',');
  wit->callback([&] {
    auto j = load(file);
    Rational d = parse_rational(D);
    if (d < Rational(1) || !(d < Rational(2))) throw UsageError("the counting argument needs 1 <= D < 2");
    const Json& e = j.contains("witness") ? j.at("witness") : j;
    auto rep = e.contains("entries") ? verify_witness_counting(matrix_embedding_from_json(e), d, GraphSpec{sizes})
                                     : verify_witness_counting(step_embedding_from_json(e), d, GraphSpec{sizes});
    std::string text = rep.ok ? "ok: " + std::to_string(rep.choices) + " choices, smallest witness set " +
                                    std::to_string(rep.min_gamma) + " >= " + std::to_string(rep.required_gamma)
                              : "failed: " + rep.failure;
    emit(rc, {to_json(rep), text, false});
    if (!rep.ok) throw CLI::RuntimeError(kVerifyFailed);
  });
}

// ---- selftest

// A graph space with d(1,2) stretched past d(1,bot) + d(bot,2).
MetricSpace metric_violation_fixture() {
  auto m = build_graph(GraphSpec{{2}});
  auto d = m.dist();
  auto a = m.at("1"), b = m.at("2");
  d[a * m.size() + b] = d[b * m.size() + a] = Rational(3);
  return MetricSpace(m.labels(), d, m.basepoint(), m.shared());
}

void add_selftest(CLI::App& app, RunConfig& rc) {
  auto* cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  static std::vector<int> only;
  static std::string fixture;
  cmd->add_option("--only", only, "criteria to run")->check(CLI::Range(1, acceptance::kCriteria))->delimiter(',');
  cmd->add_option("--fixture", fixture, "check a space instead: 'metric-violation' or a space JSON file");
  cmd->callback([&] {
    if (!fixture.empty()) {
      MetricSpace m = fixture == "metric-violation" ? metric_violation_fixture() : space_from_json(load(fixture));
      auto rep = validate_metric(m);
      Json v = Json::array();
      std::string text = rep.ok ? "PASS fixture satisfies the metric axioms"
                                : "FAIL fixture: " + std::to_string(rep.violation_count) + " violations";
      for (const auto& x : rep.violations) {
        std::string names;
        Json pts = Json::array();
        for (auto p : x.points) {
          names += (names.empty() ? "" : ",") + m.label(p);
          pts.push_back(m.label(p));
        }
        v.push_back(Json{{"kind", x.kind}, {"points", pts}, {"detail", x.detail}});
        text += "\n  " + x.kind + " at (" + names + ") " + x.detail;
      }
      emit(rc, {Json{{"fixture", fixture}, {"pass", rep.ok}, {"violations", v}}, text + "\nseed " +
                                                                                  std::to_string(rc.seed), false});
      if (!rep.ok) throw CLI::RuntimeError(kVerifyFailed);
      return;
    }
    acceptance::Config cfg;
    cfg.seed = rc.seed;
    std::vector<int> ids = only;
    if (ids.empty())
      for (int id = 1; id <= acceptance::kCriteria; ++id) ids.push_back(id);
    bool all = true;
    Json crit = Json::array();
    std::string text;
    const bool live = rc.output.empty() && rc.format != "json";
    for (int id : ids) {
      auto r = acceptance::run_criterion(id, cfg);
      all = all && r.pass;
      crit.push_back(Json{{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"seconds", r.seconds},
                          {"limit_seconds", r.limit},
                          {"detail", r.detail}});
      if (live) std::cout << acceptance::format_line(r) << std::endl;
      text += acceptance::format_line(r) + "\n";
    }
    text += std::string(all ? "all passed" : "FAILED") + ", seed " + std::to_string(rc.seed);
    if (live) std::cout << text.substr(text.rfind('\n') + 1) << "\n";
    else emit(rc, {Json{{"pass", all}, {"criteria", crit}}, text, false});
    if (!all) throw CLI::RuntimeError(kVerifyFailed);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distort_lab: ordinals, trees, metric spaces and their embeddings"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--output", rc.output, "write the result to this file");
  app.add_option("--seed", rc.seed, "seed for randomized checks, recorded in outputs");
  app.add_option("--cap", rc.cap, "size cap in points")->check(CLI::PositiveNumber);
  app.fallthrough();

  add_ordinal(app, rc);
  add_tree(app, rc);
  add_space(app, rc);
  add_embed(app, rc);
  add_stepfn(app, rc);
  add_solve(app, rc);
  add_certify(app, rc);
  add_selftest(app, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeCapError& e) {
    std::cerr << "size cap exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const EmbeddingError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return 0;
}
