// Copyright 2026 The CuspForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "cuspforge/certify.hpp"
#include "cuspforge/cli.hpp"
#include "cuspforge/lobachevsky.hpp"
#include "cuspforge/optimizer.hpp"
#include "cuspforge/polytope.hpp"
#include "cuspforge/triangulation.hpp"
#include "json_io.hpp"
#include "lemma_suite.hpp"

namespace cuspforge::cli {

namespace {

// Exit with a specific code after printing a diagnostic.
class CommandFailure : public std::runtime_error {
 public:
  CommandFailure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

class Timer {
 public:
  explicit Timer(bool enabled) : enabled_(enabled) {}
  template <typename F>
  auto phase(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, start);
    } else {
      auto result = f();
      record(name, start);
      return result;
    }
  }
  json to_json() const { return phases_; }
  bool enabled() const { return enabled_; }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point start) {
    if (!enabled_) return;
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    phases_[name] = ms.count();
  }
  bool enabled_;
  json phases_ = json::object();
};

struct Context {
  std::uint64_t seed = 0;
  bool timings = false;
  json inputs = json::array();
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

std::string load_input(Context& ctx, const std::string& path) {
  std::string text = read_file(path);
  ctx.inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
  return text;
}

Triangulation load_triangulation(Context& ctx, const std::string& path) {
  const std::string text = load_input(ctx, path);
  try {
    return parse_triangulation(text);
  } catch (const ParseError& e) {
    throw CommandFailure(kUsageError, path + ": " + e.what());
  } catch (const InvalidTriangulation& e) {
    throw CommandFailure(kUsageError, path + ": " + e.what());
  }
}

AngleVector load_angles(Context& ctx, const std::string& path, std::size_t expected) {
  return parse_angles(load_input(ctx, path), expected, path);
}

json triangulation_summary(const Triangulation& tri) {
  const auto edges = edge_classes(tri);
  const auto links = vertex_links(tri);
  json e = json::array();
  for (const auto& c : edges) e.push_back({{"id", c.id}, {"degree", c.degree()}});
  json v = json::array();
  for (const auto& l : links)
    v.push_back({{"id", l.id},
                 {"euler_characteristic", l.euler_characteristic},
                 {"orientable", l.orientable},
                 {"cusp", l.is_cusp()}});
  return {{"label", tri.label()},
          {"n_tets", tri.size()},
          {"n_edges", edges.size()},
          {"n_vertices", links.size()},
          {"edge_classes", e},
          {"vertices", v},
          {"cusped", is_cusped(links)},
          {"euler_characteristic", euler_characteristic(tri)}};
}

json classification_json(const std::vector<TetClass>& classes) {
  json a = json::array();
  for (TetClass c : classes) a.push_back(std::string(to_string(c)));
  return a;
}

void emit(Context& ctx, const std::string& command, json results, const Timer& timer) {
  json report = {{"command", command},
                 {"inputs", ctx.inputs},
                 {"seed", ctx.seed},
                 {"ordering", kOrderingConvention},
                 {"results", std::move(results)}};
  if (timer.enabled()) report["timings"] = timer.to_json();
  *ctx.out << report.dump(2) << '\n';
}

// "1.2", "pi", "pi/3", "2*pi/3", "-pi/6".
double parse_angle_expr(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?)\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) v /= std::stod(m[3].str());
    return m[1].str() == "-" ? -v : v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || text.find_first_not_of(" \t", used) != std::string::npos)
    throw CommandFailure(kUsageError, "cannot parse angle '" + text + "'");
  return v;
}

int cmd_check(Context& ctx, const std::string& path) {
  Timer timer(ctx.timings);
  const Triangulation tri = timer.phase("parse", [&] { return load_triangulation(ctx, path); });
  json results = triangulation_summary(tri);
  timer.phase("constraints", [&] {
    const LinearSystem sys = build_constraints(IncidenceIndex(tri));
    std::size_t triples = 0, edges = 0;
    for (RowKind k : sys.kinds) (k == RowKind::vertex_triple ? triples : edges)++;
    const InteriorPointResult ip = interior_point(sys);
    static const char* names[] = {"found", "empty-interior", "empty-closure"};
    results["constraints"] = {{"dimension", sys.dimension()},
                              {"triple_rows", triples},
                              {"edge_rows", edges}};
    results["interior"] = {{"status", names[static_cast<int>(ip.status)]},
                           {"min_slack", ip.min_slack}};
    if (ip.witness) results["interior"]["witness"] = *ip.witness;
  });
  emit(ctx, "check", std::move(results), timer);
  return kOk;
}

struct SolveFlags {
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  std::size_t starts = 1;
  double flat_tol = kDefaultFlatTol;
};

int cmd_solve(Context& ctx, const std::string& path, const SolveFlags& f) {
  Timer timer(ctx.timings);
  const Triangulation tri = timer.phase("parse", [&] { return load_triangulation(ctx, path); });
  const LinearSystem sys =
      timer.phase("constraints", [&] { return build_constraints(IncidenceIndex(tri)); });
  OptimizerOptions opts;
  opts.tol = f.tol;
  opts.max_iter = f.max_iter;
  opts.flat_tol = f.flat_tol;
  opts.seed = ctx.seed;

  OptimizationResult res;
  json multistart;
  timer.phase("maximize", [&] {
    if (f.starts <= 1) {
      res = maximize_volume(sys, opts);
      return;
    }
    const UniquenessReport u = uniqueness_probe(sys, f.starts, ctx.seed, opts);
    std::size_t best = 0;
    for (std::size_t k = 1; k < u.volumes.size(); ++k)
      if (u.volumes[k] > u.volumes[best]) best = k;
    OptimizerOptions o = opts;
    o.seed = start_seed(ctx.seed, best);
    res = maximize_volume(sys, o);
    multistart = {{"starts", f.starts},
                  {"best_start", best},
                  {"max_spread", u.max_spread},
                  {"volume_spread", u.volume_spread},
                  {"volumes", u.volumes}};
  });

  json results = {{"status", std::string(to_string(res.status))}};
  if (res.status == OptimizationStatus::empty_closure) {
    emit(ctx, "solve", std::move(results), timer);
    *ctx.err << "error: " << path << ": the closure of the angle-structure polytope is empty\n";
    return kEmptyClosure;
  }
  const MaximalityCertificate cert =
      timer.phase("certify", [&] { return certify(sys, res.point, f.flat_tol); });
  const auto classes =
      timer.phase("classify", [&] { return classify_tetrahedra(res.point, f.flat_tol); });
  const bool candidate = res.status == OptimizationStatus::converged && cert.signs_ok &&
                         cert.gradient_residual < 1e-8 && res.active_set.empty();
  results["point"] = to_json(res.point);
  results["volume"] = res.volume;
  results["flat_tets"] = res.flat_tets;
  results["active_set"] = to_json(res.active_set);
  results["kkt_residual"] = res.kkt_residual;
  results["iterations"] = res.iterations;
  results["classification"] = classification_json(classes);
  results["certificate"] = to_json(cert);
  results["candidate_complete"] = candidate;
  if (!multistart.is_null()) results["multistart"] = multistart;
  emit(ctx, "solve", std::move(results), timer);
  if (res.status == OptimizationStatus::iteration_cap) {
    *ctx.err << "error: iteration cap reached after " << res.iterations << " iterations\n";
    return kIterationCap;
  }
  return kOk;
}

// Parses the triangulation and a closure point, rejecting infeasible points.
std::pair<LinearSystem, AngleVector> load_point(Context& ctx, const std::string& tri_path,
                                                const std::string& angles_path,
                                                const std::string& what) {
  const Triangulation tri = load_triangulation(ctx, tri_path);
  LinearSystem sys = build_constraints(IncidenceIndex(tri));
  AngleVector p = load_angles(ctx, angles_path, sys.dimension());
  const MembershipResult m = classify_membership(sys, p);
  if (m.kind == Membership::infeasible) {
    std::ostringstream msg;
    msg << angles_path << ": " << what << " is not in the closure (equality residual "
        << m.equality_residual << ")";
    throw CommandFailure(kRuntimeError, msg.str());
  }
  return {std::move(sys), std::move(p)};
}

int cmd_certify(Context& ctx, const std::string& tri_path, const std::string& angles_path,
                double tol) {
  Timer timer(ctx.timings);
  auto [sys, p] = timer.phase("parse", [&] { return load_point(ctx, tri_path, angles_path, "point"); });
  const MaximalityCertificate cert = timer.phase("certify", [&] { return certify(sys, p, tol); });
  json results = to_json(cert);
  results["classification"] = classification_json(classify_tetrahedra(p, tol));
  results["volume"] = volume(p);
  emit(ctx, "certify", std::move(results), timer);
  return kOk;
}

int cmd_dominate(Context& ctx, const std::string& tri_path, const std::string& angles_path,
                 std::size_t samples) {
  Timer timer(ctx.timings);
  auto [sys, p] = timer.phase("parse", [&] { return load_point(ctx, tri_path, angles_path, "point"); });
  const DominanceReport rep =
      timer.phase("sample", [&] { return dominance_check(sys, p, samples, ctx.seed); });
  json results = to_json(rep);
  results["volume"] = volume(p);
  emit(ctx, "dominate", std::move(results), timer);
  return kOk;
}

int cmd_segment(Context& ctx, const std::string& tri_path, const std::string& p_path,
                const std::string& q_path, std::size_t samples, const std::string& out_path) {
  Timer timer(ctx.timings);
  auto [sys, p] = load_point(ctx, tri_path, p_path, "p");
  const AngleVector q = load_angles(ctx, q_path, sys.dimension());
  if (classify_membership(sys, q).kind == Membership::infeasible)
    throw CommandFailure(kRuntimeError, q_path + ": q is not in the closure");

  std::ostringstream csv;
  csv << "t,f,df\n" << std::setprecision(17);
  timer.phase("sample", [&] {
    for (std::size_t k = 1; k <= samples; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(samples + 1);
      csv << t << ',' << volume(segment(p, q, t)) << ',' << segment_derivative(p, q, t).value
          << '\n';
    }
  });
  const FlatSet flat = classify_membership(sys, p).flat;
  const BoundaryLimitReport limit = boundary_derivative_limit(p, q, flat);
  if (out_path.empty()) {
    *ctx.out << csv.str();
    return kOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw CommandFailure(kRuntimeError, "cannot write '" + out_path + "'");
  file << csv.str();
  json results = {{"samples", samples},
                  {"csv", out_path},
                  {"f0", volume(p)},
                  {"f1", volume(q)},
                  {"boundary_limit", to_json(limit)}};
  emit(ctx, "segment", std::move(results), timer);
  return kOk;
}

int cmd_lambda(Context& ctx, const std::string& theta_text) {
  Timer timer(ctx.timings);
  const double theta = parse_angle_expr(theta_text);
  if (!std::isfinite(theta)) throw CommandFailure(kUsageError, "theta must be finite");
  json results = {{"theta", theta},
                  {"value", lobachevsky(theta)},
                  {"derivative", lobachevsky_derivative(theta)}};
  emit(ctx, "lambda", std::move(results), timer);
  return kOk;
}

int cmd_volume(Context& ctx, const std::string& tri_path, const std::string& angles_path) {
  Timer timer(ctx.timings);
  const Triangulation tri = load_triangulation(ctx, tri_path);
  const LinearSystem sys = build_constraints(IncidenceIndex(tri));
  const AngleVector x = load_angles(ctx, angles_path, sys.dimension());
  const MembershipResult m = classify_membership(sys, x);
  static const char* names[] = {"interior", "boundary", "infeasible"};
  json results = {{"volume", volume(x)},
                  {"tetrahedra", tetrahedron_volumes(x)},
                  {"membership", names[static_cast<int>(m.kind)]},
                  {"equality_residual", m.equality_residual},
                  {"flat_set", to_json(m.flat)}};
  emit(ctx, "volume", std::move(results), timer);
  return kOk;
}

int cmd_lemmas(Context& ctx, std::size_t samples, const std::string& fault) {
  Timer timer(ctx.timings);
  const auto suites = timer.phase("suites", [&] { return run_lemma_suites(samples, ctx.seed, fault); });
  json arr = json::array();
  std::vector<std::string> failing;
  for (const auto& s : suites) {
    arr.push_back({{"name", s.name},
                   {"checks", s.checks},
                   {"worst", s.worst},
                   {"threshold", s.threshold},
                   {"extra", s.extra},
                   {"passed", s.passed}});
    if (!s.passed) failing.push_back(s.name);
  }
  json results = {{"samples", samples},
                  {"suites", arr},
                  {"failing", failing},
                  {"passed", failing.empty()}};
  emit(ctx, "lemmas", std::move(results), timer);
  if (!failing.empty()) {
    for (const auto& name : failing) *ctx.err << "error: suite failed: " << name << '\n';
    return kLemmaFailure;
  }
  return kOk;
}

int cmd_move23(Context& ctx, const std::string& path, std::size_t tet, int face,
               const std::string& out_path) {
  Timer timer(ctx.timings);
  const Triangulation tri = load_triangulation(ctx, path);
  if (tet >= tri.size() || face < 0 || face > 3)
    throw CommandFailure(kUsageError, "invalid face: tet " + std::to_string(tet) + " face " +
                                          std::to_string(face));
  Triangulation moved = tri;
  try {
    moved = pachner_23(tri, FaceRef{tet, face});
  } catch (const UnsupportedMove& e) {
    throw CommandFailure(kRuntimeError, e.what());
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw CommandFailure(kRuntimeError, "cannot write '" + out_path + "'");
  file << write_triangulation(moved);
  json results = {{"face", {{"tet", tet}, {"face", face}}},
                  {"output", out_path},
                  {"before", triangulation_summary(tri)},
                  {"after", triangulation_summary(moved)}};
  emit(ctx, "move23", std::move(results), timer);
  return kOk;
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("CUSPFORGE_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-')
    throw CommandFailure(kUsageError, std::string("CUSPFORGE_SEED is not an unsigned integer: ") + s);
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume maximization over angle structures of ideal triangulations", "cuspforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cuspforge 1.0.0");

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Random seed (default: $CUSPFORGE_SEED or 0)");
  app.add_flag("--timings", ctx.timings, "Add per-phase timings to the report");

  std::function<int()> action;
  std::string tri_path, p_path, q_path, out_path, theta, fault;

  auto* check = app.add_subcommand("check", "Parse a triangulation and report its combinatorics");
  check->add_option("file", tri_path, "Triangulation (.tri)")->required();
  check->callback([&] { action = [&] { return cmd_check(ctx, tri_path); }; });

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Maximize the volume over the closed polytope");
  solve->add_option("file", tri_path, "Triangulation (.tri)")->required();
  solve->add_option("--tol", solve_flags.tol, "Projected-gradient tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solve_flags.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  solve->add_option("--starts", solve_flags.starts, "Number of random starts")->check(CLI::PositiveNumber);
  solve->add_option("--flat-tol", solve_flags.flat_tol, "Flatness tolerance")->check(CLI::PositiveNumber);
  solve->callback([&] { action = [&] { return cmd_solve(ctx, tri_path, solve_flags); }; });

  double certify_tol = kDefaultFlatTol;
  auto* cert = app.add_subcommand("certify", "Maximality certificate at a closure point");
  cert->add_option("file", tri_path, "Triangulation (.tri)")->required();
  cert->add_option("angles", p_path, "Angle vector (.json)")->required();
  cert->add_option("--tol", certify_tol, "Bound tolerance")->check(CLI::PositiveNumber);
  cert->callback([&] { action = [&] { return cmd_certify(ctx, tri_path, p_path, certify_tol); }; });

  std::size_t dom_samples = 1000;
  auto* dom = app.add_subcommand("dominate", "Sample the closure and compare volumes");
  dom->add_option("file", tri_path, "Triangulation (.tri)")->required();
  dom->add_option("angles", p_path, "Angle vector (.json)")->required();
  dom->add_option("--samples", dom_samples, "Number of samples")->check(CLI::PositiveNumber);
  dom->callback([&] { action = [&] { return cmd_dominate(ctx, tri_path, p_path, dom_samples); }; });

  std::size_t seg_samples = 50;
  auto* seg = app.add_subcommand("segment", "Volume and derivative along a segment, as CSV");
  seg->add_option("file", tri_path, "Triangulation (.tri)")->required();
  seg->add_option("p", p_path, "Start point (.json)")->required();
  seg->add_option("q", q_path, "End point (.json)")->required();
  seg->add_option("--samples", seg_samples, "Interior sample count")->check(CLI::PositiveNumber);
  seg->add_option("--out", out_path, "CSV output path (JSON report then goes to stdout)");
  seg->callback([&] {
    action = [&] { return cmd_segment(ctx, tri_path, p_path, q_path, seg_samples, out_path); };
  });

  auto* lam = app.add_subcommand("lambda", "Evaluate the Lobachevsky function");
  lam->add_option("theta", theta, "Angle in radians; forms like pi/3 or 2*pi/3 accepted")->required();
  lam->callback([&] { action = [&] { return cmd_lambda(ctx, theta); }; });

  auto* vol = app.add_subcommand("volume", "Volume of an angle vector");
  vol->add_option("file", tri_path, "Triangulation (.tri)")->required();
  vol->add_option("angles", p_path, "Angle vector (.json)")->required();
  vol->callback([&] { action = [&] { return cmd_volume(ctx, tri_path, p_path); }; });

  std::size_t lemma_samples = 1000;
  auto* lem = app.add_subcommand("lemmas", "Sampling checks of the decorated-tetrahedron identities");
  lem->add_option("--samples", lemma_samples, "Random tetrahedra per suite");
  lem->add_option("--inject-fault", fault, "")->check(CLI::IsMember(suite_names()))->group("");
  lem->callback([&] { action = [&] { return cmd_lemmas(ctx, lemma_samples, fault); }; });

  std::size_t move_tet = 0;
  int move_face = 0;
  auto* mv = app.add_subcommand("move23", "Apply a 2-3 move across a face");
  mv->add_option("file", tri_path, "Triangulation (.tri)")->required();
  mv->add_option("tet", move_tet, "Tetrahedron index")->required();
  mv->add_option("face", move_face, "Face index 0..3")->required();
  mv->add_option("--out", out_path, "Output path for the new triangulation")->required();
  mv->callback([&] { action = [&] { return cmd_move23(ctx, tri_path, move_tet, move_face, out_path); }; });

  for (auto* sub : {check, solve, cert, dom, seg, lam, vol, lem, mv}) {
    sub->add_option("--seed", seed_flag, "Random seed (default: $CUSPFORGE_SEED or 0)");
    sub->add_flag("--timings", ctx.timings, "Add per-phase timings to the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (seed_flag)
      ctx.seed = *seed_flag;
    else if (auto s = env_seed())
      ctx.seed = *s;
    return action();
  } catch (const CommandFailure& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace cuspforge::cli
