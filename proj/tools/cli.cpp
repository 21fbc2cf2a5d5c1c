#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlemap/cf.hpp"
#include "circlemap/errors.hpp"
#include "circlemap/measures.hpp"
#include "circlemap/parallel.hpp"
#include "circlemap/partitions.hpp"
#include "circlemap/renorm.hpp"
#include "circlemap/rotation.hpp"
#include "circlemap/smoothness.hpp"
#include "circlemap/tongues.hpp"
#include "circlemap/triples.hpp"
#include "map_spec.hpp"

#ifndef CIRCLEMAP_VERSION
#define CIRCLEMAP_VERSION "0.0.0"
#endif

namespace cmtool {

using namespace circlemap;
using nlohmann::json;

const char* tool_version() { return CIRCLEMAP_VERSION; }

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "LO:HI:N", N points including both ends
std::vector<double> parse_range(const std::string& s, const char* flag) {
  double lo, hi;
  long n;
  char tail;
  if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &tail) != 3 || n < 1)
    throw InvalidArgument(std::string(flag) + " expects LO:HI:N with N >= 1");
  std::vector<double> v(n);
  for (long i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

struct Output {
  std::string out_path, sidecar_path;
  std::ostream* out = nullptr;
  json header;

  void write_text(const std::string& text) const {
    if (out_path.empty()) {
      *out << text;
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw InvalidArgument("cannot write " + out_path);
    f << text;
  }
  json with_header(const json& body) const {
    json j = header;
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    return j;
  }
  void json_main(const json& body) const { write_text(with_header(body).dump(2) + "\n"); }
  // sidecar path: explicit, else <out>.json, else nothing when CSV went to stdout
  void json_sidecar(const json& body) const {
    std::string path = sidecar_path;
    if (path.empty() && !out_path.empty()) path = out_path + ".json";
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << with_header(body).dump(2) << "\n";
  }
};

struct MapOpts {
  std::string file, arnold;
  CLI::Option* file_opt = nullptr;
  CLI::Option* arnold_opt = nullptr;

  void add(CLI::App* sub) {
    file_opt = sub->add_option("--map", file, "map spec JSON file");
    arnold_opt = sub->add_option("--arnold", arnold, "inline Arnold map A,B or alpha=SPEC,B");
    file_opt->excludes(arnold_opt);
  }
  CircleMapLift get() const {
    if (!file.empty()) return load_map_file(file);
    if (!arnold.empty()) return map_from_arnold_flag(arnold);
    throw InvalidArgument("one of --map or --arnold is required");
  }
};

json echo_options(const CLI::App* app) {
  json e = json::object();
  for (const CLI::Option* o : app->get_options()) {
    const std::string name = o->get_single_name();
    if (name.empty() || name == "help" || name == "version") continue;
    if (o->count() > 0) {
      const auto& r = o->results();
      e[name] = r.size() == 1 ? json(r[0]) : json(r);
    } else if (!o->get_default_str().empty()) {
      e[name] = o->get_default_str();
    } else {
      e[name] = nullptr;
    }
  }
  return e;
}

json error_json(const std::exception& ex) {
  json j;
  if (auto* e = dynamic_cast<const Error*>(&ex)) {
    j["error"] = e->code();
    if (auto* r = dynamic_cast<const RationalRotation*>(e)) {
      j["p"] = r->p();
      j["q"] = r->q();
    } else if (auto* r = dynamic_cast<const RationalDetected*>(e)) {
      j["step"] = r->step();
    } else if (auto* r = dynamic_cast<const NoConvergence*>(e)) {
      j["residual"] = r->residual();
    } else if (auto* r = dynamic_cast<const HitCriticalOrbit*>(e)) {
      j["step"] = r->step();
    } else if (auto* r = dynamic_cast<const PeriodicOrbit*>(e)) {
      j["q"] = r->q();
    } else if (auto* r = dynamic_cast<const CommutationFailure*>(e)) {
      j["defect"] = r->defect();
    }
  } else {
    j["error"] = "InternalError";
  }
  j["message"] = ex.what();
  return j;
}

// deferred so that every subcommand's options are parsed before running
using Action = std::function<void(const Output&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for analytic circle maps", "circlemap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CIRCLEMAP_VERSION);
  Output o;
  o.out = &out;
  unsigned threads = 1;
  app.add_option("--out", o.out_path, "output file (default stdout)");
  app.add_option("--sidecar", o.sidecar_path, "JSON sidecar path (default <out>.json)");
  app.add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();

  Action action;
  CLI::App* chosen = nullptr;
  std::string sub_name;
  auto make = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto bind = [&](CLI::App* s, std::string name, Action a) {
    s->callback([&, s, name, a] {
      chosen = s;
      sub_name = name;
      action = a;
    });
  };

  // staircase
  double st_b = 0.0;
  std::string st_range;
  std::int64_t st_qcap = 1000;
  {
    auto* s = make("staircase", "rotation number brackets along a line of constant b");
    s->add_option("--b", st_b, "nonlinearity b")->required();
    s->add_option("--a-range", st_range, "LO:HI:N")->required();
    s->add_option("--qcap", st_qcap, "largest denominator")->capture_default_str();
    bind(s, "staircase", [&](const Output& out) {
      const auto steps = staircase(st_b, parse_range(st_range, "--a-range"), st_qcap);
      std::ostringstream csv;
      csv << "a,rot_lo,rot_hi\n";
      json rows = json::array();
      for (const auto& st : steps) {
        csv << num(st.a) << "," << num(st.lo.value()) << "," << num(st.hi.value()) << "\n";
        rows.push_back({{"a", st.a}, {"lo", st.lo.str()}, {"hi", st.hi.str()}});
      }
      out.write_text(csv.str());
      out.json_sidecar({{"brackets", rows}});
    });
  }

  // tongue
  std::string tg_alpha, tg_grid;
  double tg_tol = 1e-10;
  {
    auto* s = make("tongue", "a*(b) along the tongue of an irrational rotation number");
    s->add_option("--alpha", tg_alpha, "golden | silver | cf:... | decimal")->required();
    s->add_option("--b-grid", tg_grid, "LO:HI:N")->required();
    s->add_option("--tol", tg_tol, "tolerance in a")->capture_default_str();
    bind(s, "tongue", [&](const Output& out) {
      const auto cf = parse_alpha(tg_alpha);
      const auto grid = parse_range(tg_grid, "--b-grid");
      std::vector<TonguePoint> pts(grid.size());
      parallel_for(grid.size(), [&](std::size_t i) { pts[i] = tongue_point_full(cf, grid[i], tg_tol); });
      std::ostringstream csv;
      csv << "b,a,residual\n";
      json rows = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << num(grid[i]) << "," << num(pts[i].a) << "," << num(pts[i].residual) << "\n";
        rows.push_back({{"b", grid[i]}, {"a_lo", pts[i].a_lo}, {"a_hi", pts[i].a_hi},
                        {"resolved", pts[i].resolved}});
      }
      out.write_text(csv.str());
      out.json_sidecar({{"samples", rows}});
    });
  }

  // boundary
  std::int64_t bd_p = 0, bd_q = 1;
  double bd_b = 0.0;
  std::string bd_grid;
  {
    auto* s = make("boundary", "edges of the p/q tongue");
    s->add_option("--p", bd_p, "numerator")->required();
    s->add_option("--q", bd_q, "denominator")->required();
    auto* ob = s->add_option("--b", bd_b, "nonlinearity b");
    auto* og = s->add_option("--b-grid", bd_grid, "LO:HI:N instead of --b");
    ob->excludes(og);
    bind(s, "boundary", [&, ob, og](const Output& out) {
      std::vector<double> grid;
      if (og->count()) grid = parse_range(bd_grid, "--b-grid");
      else if (ob->count()) grid = {bd_b};
      else throw InvalidArgument("one of --b or --b-grid is required");
      std::ostringstream csv;
      csv << "b,a_left,a_right\n";
      json rows = json::array();
      for (double b : grid) {
        const BoundaryPair bp = rational_boundary_full(bd_p, bd_q, b);
        csv << num(b) << "," << num(bp.a_left) << "," << num(bp.a_right) << "\n";
        rows.push_back({{"b", b}, {"x_left", bp.x_left}, {"x_right", bp.x_right},
                        {"residual", bp.residual}});
      }
      out.write_text(csv.str());
      out.json_sidecar({{"solutions", rows}});
    });
  }

  // rot
  MapOpts rot_map;
  int rot_depth = 20;
  std::int64_t rot_qcap = kDefaultQCap;
  {
    auto* s = make("rot", "certified rotation number bracket");
    rot_map.add(s);
    s->add_option("--depth", rot_depth, "continued fraction digits to report")->capture_default_str();
    s->add_option("--qcap", rot_qcap, "largest denominator")->capture_default_str();
    bind(s, "rot", [&](const Output& out) {
      if (rot_depth < 1) throw InvalidArgument("--depth must be positive");
      const RotationResult r = rot_bracket(rot_map.get(), rot_qcap);
      std::vector<std::int64_t> d = r.digits;
      if (d.size() > static_cast<std::size_t>(rot_depth)) d.resize(rot_depth);
      out.json_main({{"estimate", r.estimate}, {"lower", r.lower.str()}, {"upper", r.upper.str()},
                     {"digits", d}, {"exact", r.exact}, {"width", r.upper.value() - r.lower.value()}});
    });
  }

  // brjuno
  std::string bj_alpha;
  int bj_depth = 40;
  {
    auto* s = make("brjuno", "Brjuno function by the Gauss-map series");
    s->add_option("--alpha", bj_alpha, "golden | silver | cf:... | decimal")->required();
    s->add_option("--depth", bj_depth, "series terms")->capture_default_str();
    bind(s, "brjuno", [&](const Output& out) {
      const BrjunoValue v = brjuno(parse_alpha(bj_alpha), bj_depth);
      out.json_main({{"value", v.value}, {"depth", v.depth}, {"tail_bound", v.tail_bound}});
    });
  }

  // measure
  MapOpts ms_map;
  int ms_grid = 1024, ms_orbits = 256;
  std::int64_t ms_iters = 131072, ms_min = 0;
  double ms_tol = 1e-6;
  {
    auto* s = make("measure", "(-1)-measure density on a uniform grid");
    ms_map.add(s);
    s->add_option("--grid", ms_grid, "cells")->capture_default_str();
    s->add_option("--iters", ms_iters, "largest averaging length")->capture_default_str();
    s->add_option("--tol", ms_tol, "L1 change between doublings")->capture_default_str();
    s->add_option("--orbits", ms_orbits, "ensemble size for critical maps")->capture_default_str();
    s->add_option("--min-length", ms_min, "first averaging length, 0 = method default")
        ->capture_default_str();
    bind(s, "measure", [&](const Output& out) {
      const CircleMapLift m = ms_map.get();
      DensityOptions opt;
      opt.orbits = ms_orbits;
      opt.min_length = ms_min;
      const DiscreteDensity d = minus_one_density(m, ms_grid, ms_iters, ms_tol, opt);
      std::ostringstream csv;
      csv << "cell_midpoint,weight\n";
      for (int i = 0; i < d.grid_n; ++i)
        csv << num((i + 0.5) / d.grid_n) << "," << num(d.weights[i]) << "\n";
      out.write_text(csv.str());
      out.json_sidecar({{"residual", d.residual}, {"iterations", d.iterations},
                        {"method", d.method},
                        {"invariance_residual", invariance_residual(m, d, 8)},
                        {"max_cell_mass", max_cell_mass(d)}});
    });
  }

  // partition
  MapOpts pt_map;
  int pt_level = 0;
  {
    auto* s = make("partition", "dynamical partition of level n");
    pt_map.add(s);
    s->add_option("--level", pt_level, "level n")->required();
    bind(s, "partition", [&](const Output& out) {
      const CircleMapLift m = pt_map.get();
      const DynamicalPartition P = build_partition(m, pt_level);
      const PartitionStats st = partition_stats(P, m);
      std::ostringstream csv;
      csv << "label,l,left,right,length\n";
      for (const auto& I : P.intervals)
        csv << (I.is_long ? "long" : "short") << "," << I.l << "," << num(I.left) << ","
            << num(I.right) << "," << num(I.length()) << "\n";
      out.write_text(csv.str());
      out.json_sidecar({{"level", P.level}, {"q_n", P.q_n}, {"q_n1", P.q_n1}, {"p_n", P.p_n},
                        {"p_n1", P.p_n1}, {"M_n", P.M_n}, {"J_index", P.J_index},
                        {"J_len", P.J_len}, {"total_length", P.total_length},
                        {"max_adjacent_ratio", st.max_adjacent_ratio}, {"max_len", st.max_len},
                        {"cube_ratio", st.cube_ratio},
                        {"return_distortion", return_distortion(P, m)}});
    });
  }

  // renorm
  MapOpts rn_map;
  int rn_levels = 10, rn_samples = 64;
  std::int64_t rn_qcap = kPartitionQCap;
  {
    auto* s = make("renorm", "expansion observables along the closest returns");
    rn_map.add(s);
    s->add_option("--levels", rn_levels, "largest level n (<= 14)")->capture_default_str();
    s->add_option("--qcap", rn_qcap, "largest return time")->capture_default_str();
    s->add_option("--samples", rn_samples, "points per return arc")->capture_default_str();
    bind(s, "renorm", [&](const Output& out) {
      const CircleMapLift m = rn_map.get();
      const ExpansionEstimate e = expansion_rates(m, rn_levels, rn_qcap);
      std::ostringstream csv;
      csv << "n,q_n,M_n,J_n,min_P_prime\n";
      for (std::size_t i = 0; i < e.levels.size(); ++i) {
        double pmin = std::nan("");
        if (std::isfinite(e.Jn[i])) pmin = expansion_lower_bound(m, e.levels[i], rn_samples).min_P_prime;
        csv << e.levels[i] << "," << e.q[i] << "," << num(e.Mn[i]) << "," << num(e.Jn[i]) << ","
            << num(pmin) << "\n";
      }
      out.write_text(csv.str());
      out.json_sidecar({{"s", e.s}, {"lambda1_proxy", e.lambda1_proxy},
                        {"lambda2_proxy", e.lambda2_proxy}, {"k", e.k},
                        {"log_ratio", e.log_lambda1 / e.log_lambda2}});
    });
  }

  // triple lift
  MapOpts tr_map;
  double tr_mu1 = 0.0;
  {
    auto* s = make("triple", "triple-space lifts");
    s->require_subcommand(1);
    auto* lift = s->add_subcommand("lift", "lift a map to (F, H_a, G)");
    lift->fallthrough();
    tr_map.add(lift);
    auto* om = lift->add_option("--mu1", tr_mu1, "subtract mu1 sin(2 pi x) first (b = 1 + 2 pi mu1)");
    bind(lift, "triple lift", [&, om](const Output& out) {
      CircleMapLift m = tr_map.get();
      if (om->count()) {
        auto sc = m.sin_coeffs();
        auto rc = m.cos_coeffs();
        if (sc.empty()) {
          sc.assign(1, 0.0);
          rc.assign(1, 0.0);
        }
        sc[0] -= tr_mu1;
        m = CircleMapLift(m.c0(), rc, sc);
      }
      FamilyDiagnostics dg;
      const TripleReal t = lift_family(m, &dg);
      json body = {{"f_shift", t.f_shift}, {"a", t.a}, {"h_shift", t.h_shift},
                   {"pi_scale", t.pi_scale}, {"g_nodes", t.g_nodes},
                   {"residual", conjugacy_residual(t, m)},
                   {"commutation_defect", commutation_defect(t)}};
      if (t.a != 0.0)
        body["critical_pair"] = {{"c1", {dg.c1.real(), dg.c1.imag()}},
                                 {"d1", {dg.d1.real(), dg.d1.imag()}},
                                 {"d2", {dg.d2.real(), dg.d2.imag()}},
                                 {"A", dg.A.real()}};
      out.json_main(body);
    });
  }

  // smoothness
  std::string sm_alpha;
  int sm_jmax = 14;
  double sm_tol = 1e-10;
  std::int64_t sm_qcap = 0;
  {
    auto* s = make("smoothness", "divided differences of a*(b) as b -> 1");
    s->add_option("--alpha", sm_alpha, "golden | silver | cf:... | decimal")->required();
    s->add_option("--jmax", sm_jmax, "b_j = 1 - 2^-j up to j = jmax")->capture_default_str();
    s->add_option("--tol", sm_tol, "tolerance in a")->capture_default_str();
    s->add_option("--qcap", sm_qcap, "largest convergent, 0 = from tol")->capture_default_str();
    bind(s, "smoothness", [&](const Output& out) {
      const SmoothnessReport r = probe_report(parse_alpha(sm_alpha), sm_jmax, sm_tol, sm_qcap);
      std::ostringstream csv;
      csv << "b,a,a_error,residual\n";
      for (std::size_t i = 0; i < r.b_samples.size(); ++i)
        csv << num(r.b_samples[i]) << "," << num(r.a_values[i]) << "," << num(r.a_error[i]) << ","
            << num(r.residuals[i]) << "\n";
      out.write_text(csv.str());
      json orders = json::array();
      for (int m = 0; m < kMaxDiffOrder; ++m)
        orders.push_back({{"order", m + 1}, {"divided_diffs", r.divided_diffs[m]},
                          {"noise", r.noise[m]}, {"bounded", r.bounded[m]},
                          {"grows", r.grows[m]}, {"growth_exponent", r.growth_exponents[m]}});
      json k = r.estimated_k ? json(*r.estimated_k) : json(nullptr);
      out.json_sidecar({{"b_samples", r.b_samples}, {"a_values", r.a_values},
                        {"orders", orders}, {"estimated_k", k}});
      if (!r.estimated_k)
        throw InconclusiveReport("neither boundedness nor growth was detected at any order");
    });
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o1, o2;
    const int code = app.exit(e, o1, o2);
    out << o1.str();
    if (code == 0) return 0;
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {  // thrown by option callbacks
    err << error_json(e).dump() << "\n";
    return 2;
  }

  try {
    set_thread_count(threads);
    json echo = echo_options(&app);
    const json sub = echo_options(chosen);
    for (auto it = sub.begin(); it != sub.end(); ++it) echo[it.key()] = it.value();
    o.header = {{"tool_version", CIRCLEMAP_VERSION}, {"subcommand", sub_name}, {"config_echo", echo}};
    action(o);
  } catch (const InvalidArgument& e) {
    err << error_json(e).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << error_json(e).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cmtool
