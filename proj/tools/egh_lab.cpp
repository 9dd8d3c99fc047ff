// egh_lab: command-line front end. Exit codes: 0 success, 1 verdict
// mismatch, 2 input error.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "egh/borsuk.hpp"
#include "egh/errors.hpp"
#include "egh/escape.hpp"
#include "egh/gh.hpp"
#include "egh/good_approx.hpp"
#include "egh/io.hpp"
#include "egh/scenarios.hpp"
#include "egh/verdicts.hpp"

using namespace egh;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Output {
  std::string json_path, csv_path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void emit(Json report) const {
    if (!json_path.empty()) write_text_atomic(json_path, report.dump(2) + "\n");
    if (!csv_path.empty()) write_text_atomic(csv_path, to_csv(header, rows));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Triple load_triple(const std::string& path) {
  Json j = read_json(path);
  if (j.contains("triples")) {
    if (j.at("triples").empty()) throw StructuralError(path + ": no triples in the sequence file");
    return triple_from_json(j.at("triples").at(0));
  }
  return triple_from_json(j);
}

// ---- gh ---------------------------------------------------------------

int cmd_gh(const std::string& a, const std::string& b, bool equivariant, double tol, const Output& out,
           const std::string& echo) {
  auto t0 = std::chrono::steady_clock::now();
  Triple X = load_triple(a), Y = load_triple(b);
  GhOptions opt;
  opt.tol = tol;
  GhResult r = equivariant ? equivariant_gh(X, Y, opt) : pointed_gh(X.X(), Y.X(), opt);
  std::cout << (equivariant ? "equivariant" : "pointed") << " GH distance: " << fmt_double(r.value)
            << " (" << r.mode() << ", bounds [" << fmt_double(r.lower) << ", " << fmt_double(r.upper)
            << "])\n";
  Json rep{{"command", echo}, {"inputs", {a, b}}, {"equivariant", equivariant}, {"result", to_json(r)},
           {"seconds", seconds_since(t0)}};
  Output o = out;
  o.header = {"quantity", "value"};
  o.rows = {{"value", fmt_double(r.value)}, {"lower", fmt_double(r.lower)}, {"upper", fmt_double(r.upper)},
            {"mode", r.mode()}};
  o.emit(rep);
  return 0;
}

// ---- check ------------------------------------------------------------

int cmd_check(const std::string& name, int from, int to, double delta, int nmax, int grid, int minor,
              const Output& out, const std::string& echo) {
  if (from < 1 || to < from) throw DomainError("index range must satisfy 1 <= from <= to");
  auto t0 = std::chrono::steady_clock::now();
  Json records = Json::array();
  Output o = out;
  o.header = {"scenario", "index", "match"};
  bool all = true;
  for (int i = from; i <= to; ++i) {
    CheckOutcome c;
    if (name == "hexagon") c = check_hexagon(i, delta, nmax);
    else if (name.rfind("counterexample-", 0) == 0) c = check_counterexample(parse_bullet(name.substr(15)), i, delta, nmax);
    else if (name == "torus-collapse") c = check_torus(i, grid, minor, delta, nmax, kDefaultSeed);
    else if (name == "cyclic-tower") c = check_tower(i);
    else if (name == "collapsing-sphere") c = check_sphere(i);
    else if (name == "rotation") c = check_rotation(i, delta, nmax);
    else throw DomainError("unknown scenario '" + name + "'");
    c.record["match"] = c.match;
    all = all && c.match;
    std::cout << name << " i=" << i << ": " << (c.match ? "expected verdicts" : "VERDICT MISMATCH") << "\n";
    o.rows.push_back({name, std::to_string(i), c.match ? "1" : "0"});
    records.push_back(c.record);
  }
  Json rep{{"command", echo}, {"scenario", name}, {"version", kScenarioVersion}, {"delta", delta},
           {"n_max", nmax}, {"indices", records}, {"all_match", all}, {"seconds", seconds_since(t0)}};
  o.emit(rep);
  return all ? 0 : 1;
}

// ---- borsuk -----------------------------------------------------------

int cmd_borsuk(const std::string& map_file, int n, int k, int s, std::uint64_t seed, const Output& out,
               const std::string& echo) {
  auto t0 = std::chrono::steady_clock::now();
  OddMapSample sample;
  if (!map_file.empty()) {
    sample = sample_from_json(read_json(map_file));
  } else {
    if (n - 1 < k)
      throw DomainError("sphere dimension n-1 = " + std::to_string(n - 1) + " is below k = " + std::to_string(k) +
                        "; the zero guarantee needs n > k");
    auto tri = std::make_shared<const SymmetricTriangulation>(build_triangulation(n, s));
    sample = random_odd_sample(tri, k, seed);
  }
  ContinuityModulus m = continuity_modulus(sample);
  ZeroWitness w = find_near_zero(sample);
  bool ok = w.vertex_value_norm() <= 2.0 * m.eps_est + 1e-12;
  std::cout << "zero witness in simplex " << w.simplex << ": |f~(x0)| = " << fmt_double(w.value_norm())
            << ", |f(vertex)| = " << fmt_double(w.vertex_value_norm()) << ", eps_est = " << fmt_double(m.eps_est)
            << (ok ? "" : "  (exceeds 2 eps_est)") << "\n";
  Json rep{{"command", echo},
           {"n", sample.tri->n},
           {"k", sample.target_dim()},
           {"subdivisions", sample.tri->subdivisions},
           {"seed", seed},
           {"eps_est", m.eps_est},
           {"delta_est", m.delta_est},
           {"witness", to_json(w)},
           {"within_bound", ok},
           {"seconds", seconds_since(t0)}};
  Output o = out;
  o.header = {"quantity", "value"};
  o.rows = {{"value_norm", fmt_double(w.value_norm())},
            {"vertex_value_norm", fmt_double(w.vertex_value_norm())},
            {"eps_est", fmt_double(m.eps_est)}};
  o.emit(rep);
  return ok ? 0 : 1;
}

// ---- norms ------------------------------------------------------------

int cmd_norms_hexagon(int i, const Output& out, const std::string& echo) {
  Triple t = hexagon_graph(i);
  ApproximationMap a = approximation_from_displacement(t, point_triple(), std::vector<int>(t.G().order(), 0), 1.0);
  Region B = finite_region(a.source, a.A_src, "displacement<1");
  Output o = out;
  o.header = {"element", "norm"};
  Json table = Json::array();
  for (int g = 0; g < t.G().order(); ++g) {
    double nv = escape_norm(*a.source, B, PermGroupView::of(g));
    std::string name = cycle_string(t.X(), t.G().element(g));
    o.rows.push_back({name, fmt_double(nv)});
    table.push_back({{"element", name}, {"norm", nv}});
    std::cout << name << "\t" << fmt_double(nv) << "\n";
  }
  o.emit(Json{{"command", echo}, {"scenario", "hexagon"}, {"index", i}, {"norms", table}});
  return 0;
}

int cmd_norms(const std::string& name, int index, const std::vector<double>& sweep, std::uint64_t seed,
              const Output& out, const std::string& echo) {
  if (name == "hexagon") return cmd_norms_hexagon(index, out, echo);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> radii = sweep.empty() ? std::vector<double>{0.0} : sweep;
  Output o = out;
  o.header = {"radius", "direction", "tau", "algebra_norm", "gauge", "sandwich_ok"};
  Json per_r = Json::array();
  bool all_ok = true;
  for (double r : radii) {
    NormScenario s = norm_scenario(name, r);
    const int k = s.group->algebra_dim();
    GleasonEstimate c0 = estimate_gleason_constant(*s.group, s.B, gleason_words(s, 400, seed));
    auto hull_dirs = unit_directions(k, 200, seed + 1);
    HullGauge gauge = convex_hull_norm(*s.group, s.B, hull_dirs);
    int failures = 0;
    auto dirs = unit_directions(k, 100, seed + 2);
    for (size_t d = 0; d < dirs.size(); ++d) {
      TauResult tr = tau_and_algebra_norm(*s.group, s.B, dirs[d]);
      double v = tr.algebra_norm();
      double gv = gauge(dirs[d]);
      bool ok = v <= gv * (1 + 1e-9) && gv <= 2 * c0.c0 * v;
      failures += ok ? 0 : 1;
      o.rows.push_back({fmt_double(r), std::to_string(d), fmt_double(tr.tau()), fmt_double(v), fmt_double(gv),
                        ok ? "1" : "0"});
    }
    all_ok = all_ok && failures == 0;
    std::cout << name << " r=" << (r > 0 ? fmt_double(r) : "default") << ": C0_est = " << fmt_double(c0.c0)
              << " over " << c0.samples << " words; sandwich failures " << failures << "/100\n";
    per_r.push_back({{"radius", r}, {"c0_est", c0.c0}, {"words", c0.samples}, {"sandwich_failures", failures}});
  }
  o.emit(Json{{"command", echo}, {"scenario", name}, {"seed", seed}, {"sweep", per_r},
              {"seconds", seconds_since(t0)}});
  return all_ok ? 0 : 1;
}

// ---- scenario export --------------------------------------------------

Json map_table(const ApproximationMap& a) {
  Json rows = Json::array();
  for (const Elem& g : a.A_src)
    rows.push_back({{"g", to_json(*a.source, g)}, {"phi", to_json(*a.target, a.phi(g))}});
  return Json{{"label", a.label}, {"source", a.source->name()}, {"target", a.target->name()},
              {"A", a.A_tgt.label}, {"source_scale", a.source_scale}, {"A_i", rows}};
}

int cmd_export(const std::string& name, int i, const std::string& path) {
  Json triples = Json::array(), maps = Json::array();
  if (name == "hexagon") triples.push_back(to_json(hexagon_graph(i)));
  else if (name == "collapsing-sphere") triples.push_back(to_json(collapsing_sphere(i, 1, 16)));
  else if (name == "torus-collapse") {
    TorusCollapse tc = torus_collapse(i, 16);
    triples.push_back(to_json(tc.triple));
    maps.push_back(map_table(tc.map));
  } else if (name.rfind("counterexample-", 0) == 0) maps.push_back(map_table(counterexample(parse_bullet(name.substr(15)), i)));
  else if (name == "cyclic-tower") maps.push_back(map_table(cyclic_tower(2, i)));
  else if (name == "rotation") maps.push_back(map_table(rotation_approximation(i)));
  else throw DomainError("unknown scenario '" + name + "'");
  Json j{{"scenario", name}, {"version", kScenarioVersion}, {"indices", {i}}, {"triples", triples}, {"maps", maps}};
  std::string text = j.dump(2) + "\n";
  if (path.empty()) std::cout << text;
  else write_text_atomic(path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Gromov-Hausdorff and good-approximation laboratory"};
  app.require_subcommand(1);
  Output out;
  std::string echo;
  for (int a = 0; a < argc; ++a) echo += (a ? " " : "") + std::string(argv[a]);

  auto add_outputs = [&](CLI::App* c) {
    c->add_option("--json", out.json_path, "Write the JSON report here");
    c->add_option("--csv", out.csv_path, "Write the CSV table here");
  };

  std::string gh_a, gh_b;
  bool equivariant = false;
  double tol = 1e-6;
  auto* gh = app.add_subcommand("gh", "Pointed or equivariant GH distance between two triple files");
  gh->add_option("first", gh_a)->required()->check(CLI::ExistingFile);
  gh->add_option("second", gh_b)->required()->check(CLI::ExistingFile);
  gh->add_flag("--equivariant", equivariant);
  gh->add_option("--tol", tol)->check(CLI::PositiveNumber);
  add_outputs(gh);

  std::string scen;
  int from = 1, to = 1, grid = 128, minor = 8, nmax = 3;
  double delta = 0.05;
  auto* check = app.add_subcommand("check", "Run a scenario through the condition checker and verdicts");
  check->add_option("scenario", scen)->required();
  check->add_option("--from", from);
  check->add_option("--to", to);
  check->add_option("--delta", delta)->check(CLI::PositiveNumber);
  check->add_option("--nmax", nmax)->check(CLI::Range(1, 6));
  check->add_option("--grid", grid, "torus-collapse: first-factor points");
  check->add_option("--minor", minor, "torus-collapse: second-factor points");
  add_outputs(check);

  std::string map_file;
  int bn = 3, bk = 1, bs = 3;
  std::uint64_t seed = kDefaultSeed;
  auto* borsuk = app.add_subcommand("borsuk", "Near-zero witness for an odd map on a triangulated sphere");
  borsuk->add_option("--map", map_file)->check(CLI::ExistingFile);
  borsuk->add_flag("--random", "Use a random odd sample (the default without --map)");
  borsuk->add_option("--n", bn);
  borsuk->add_option("--k", bk);
  borsuk->add_option("--s", bs);
  borsuk->add_option("--seed", seed);
  add_outputs(borsuk);

  std::string norm_name;
  int norm_index = 1;
  std::vector<double> sweep;
  auto* norms = app.add_subcommand("norms", "Escape norms, tau, Gleason constant and hull sandwich");
  norms->add_option("scenario", norm_name)->required();
  norms->add_option("--index", norm_index);
  norms->add_option("--r-sweep", sweep, "Neighbourhood radii");
  norms->add_option("--seed", seed);
  add_outputs(norms);

  std::string exp_name, exp_path;
  int exp_index = 1;
  auto* scenario = app.add_subcommand("scenario", "Scenario utilities");
  scenario->require_subcommand(1);
  auto* exp = scenario->add_subcommand("export", "Write a scenario index as JSON");
  exp->add_option("name", exp_name)->required();
  exp->add_option("index", exp_index)->required();
  exp->add_option("--out", exp_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gh) return cmd_gh(gh_a, gh_b, equivariant, tol, out, echo);
    if (*check) return cmd_check(scen, from, to, delta, nmax, grid, minor, out, echo);
    if (*borsuk) return cmd_borsuk(map_file, bn, bk, bs, seed, out, echo);
    if (*norms) return cmd_norms(norm_name, norm_index, sweep, seed, out, echo);
    if (*exp) return cmd_export(exp_name, exp_index, exp_path);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
