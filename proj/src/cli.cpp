#include "cfl/cli.hpp"

#include "cfl/calculus.hpp"
#include "cfl/dynamics.hpp"
#include "cfl/frame_check.hpp"
#include "cfl/geometry.hpp"
#include "cfl/models.hpp"
#include "cfl/sampling.hpp"
#include "cfl/spectral.hpp"
#include "cfl/sturm.hpp"
#include "cfl/toric.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cfl {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

double parse_full_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("cannot parse number '" + s + "'");
  }
  if (used != s.size()) {
    throw ParameterError("trailing characters in number '" + s + "'");
  }
  return v;
}

int parse_full_int(const std::string& s) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("cannot parse integer '" + s + "'");
  }
  if (used != s.size()) {
    throw ParameterError("trailing characters in integer '" + s + "'");
  }
  return v;
}

struct ModelFlags {
  std::string name;
  double a = 0.0, b = 0.0, c3 = 0.0, c = 0.0, l = 0.0;
  std::vector<std::string> extra;
  CLI::Option* oa = nullptr;
  CLI::Option* ob = nullptr;
  CLI::Option* oc3 = nullptr;
  CLI::Option* oc = nullptr;
  CLI::Option* ol = nullptr;

  void attach(CLI::App* cmd, const std::string& default_name) {
    name = default_name;
    cmd->add_option("--model", name, "model name from the catalog");
    oa = cmd->add_option("--a", a, "model parameter a");
    ob = cmd->add_option("--b", b, "model parameter b");
    oc3 = cmd->add_option("--c3", c3, "revolution profile coefficient");
    oc = cmd->add_option("--c", c, "torus bundle constant I~");
    ol = cmd->add_option("--l", l, "torus bundle base period");
    cmd->add_option("--param", extra,
                    "extra parameter as key=value (repeatable)");
  }

  std::map<std::string, double> params() const {
    std::map<std::string, double> m;
    if (oa && oa->count()) m["a"] = a;
    if (ob && ob->count()) m["b"] = b;
    if (oc3 && oc3->count()) m["c3"] = c3;
    if (oc && oc->count()) m["c"] = c;
    if (ol && ol->count()) m["l"] = l;
    for (const std::string& kv : extra) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParameterError("--param expects key=value, got '" + kv + "'");
      }
      m[kv.substr(0, eq)] = parse_full_double(kv.substr(eq + 1));
    }
    return m;
  }
};

ChartPoint parse_point(const std::string& text) {
  std::array<double, 3> c{};
  std::stringstream ss(text);
  std::string item;
  int got = 0;
  while (std::getline(ss, item, ',')) {
    if (got >= 3) throw ParameterError("point needs exactly 3 coordinates");
    c[got++] = parse_full_double(item);
  }
  if (got != 3) throw ParameterError("point needs exactly 3 coordinates");
  return ChartPoint(c[0], c[1], c[2]);
}

json to_json(const ResidualReport& r) {
  return json{{"relation", r.relation_id},
              {"points", r.points_tested},
              {"max_residual", r.max_residual},
              {"mean_residual", r.mean_residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

json params_json(const std::map<std::string, double>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

void emit(const json& doc, const std::string& out_dir,
          const std::string& file_name, std::ostream& out) {
  out << doc.dump(2) << "\n";
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream f(std::filesystem::path(out_dir) / file_name);
  if (!f) throw ParameterError("cannot write to output directory " + out_dir);
  f << doc.dump(2) << "\n";
}

void write_csv(const std::string& out_dir, const std::string& file_name,
               const std::string& header,
               const std::vector<std::string>& rows) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream f(std::filesystem::path(out_dir) / file_name);
  if (!f) throw ParameterError("cannot write to output directory " + out_dir);
  f << header << "\n";
  for (const std::string& r : rows) f << r << "\n";
}

int cmd_verify(const ModelFlags& mf, int points, double tol,
               std::uint64_t seed, const std::string& out_dir,
               std::ostream& out) {
  ModelPtr model = make_model(mf.name, mf.params());
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "verify";
  doc["model"] = model->name();
  doc["parameters"] = params_json(model->parameters());

  bool all_pass = true;
  if (model->has_frame_fields()) {
    std::vector<ChartPoint> pts = stratified_points(*model, points, seed);
    auto se = check_structure_equations(*model, pts, {}, tol);
    auto jc = check_jacobi_relations(*model, pts, {}, tol);
    doc["structure_equations"] = json::array();
    for (const auto& r : se) {
      doc["structure_equations"].push_back(to_json(r));
      all_pass = all_pass && r.pass;
    }
    doc["jacobi"] = json::array();
    for (const auto& r : jc) {
      doc["jacobi"].push_back(to_json(r));
      all_pass = all_pass && r.pass;
    }

    int n_small = std::max(5, points / 20);
    std::vector<ChartPoint> small(pts.begin(), pts.begin() + std::min<size_t>(n_small, pts.size()));
    double gram_worst = 0.0;
    for (const ChartPoint& p : small) {
      FrameSample fs = evaluate_frame(*model, p);
      std::array<TangentVector, 3> e = {fs.R, fs.X1, fs.X2};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          double g = metric(*model, e[i], e[j]);
          gram_worst = std::max(gram_worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
      }
    }
    doc["metric_orthonormality_max"] = gram_worst;
    bool gram_ok = gram_worst < 1e-5;
    all_pass = all_pass && gram_ok;

    double curv_worst = 0.0;
    for (const ChartPoint& p : small) {
      CurvatureSample table = curvature(*model, p);
      CurvatureSample oracle = curvature_numeric_oracle(*model, p);
      for (int pi = 0; pi < 3; ++pi) {
        for (int k = 0; k < 3; ++k) {
          curv_worst = std::max(
              curv_worst,
              (table.entries[pi][k] - oracle.entries[pi][k]).cwiseAbs().maxCoeff());
        }
      }
    }
    doc["curvature_vs_oracle_max"] = curv_worst;
    bool curv_ok = curv_worst < 1e-3;
    all_pass = all_pass && curv_ok;
  } else {
    doc["frame_checks"] = "delegated to cover";
    auto params = model->parameters();
    double expected = ellipsoid_K(params.at("a"), params.at("b"));
    ChartPoint mid(0.5 * params.at("a"), 0.0, 0.0);
    double actual = model->scalar(FrameScalar::K, mid);
    doc["constant_k"] = actual;
    doc["constant_k_formula"] = expected;
    bool k_ok = std::abs(actual - expected) < 1e-12 * std::max(1.0, expected);
    doc["k_metadata_pass"] = k_ok;
    all_pass = all_pass && k_ok;
  }

  doc["pass"] = all_pass;
  emit(doc, out_dir, "verify.json", out);
  return all_pass ? 0 : 1;
}

int cmd_cz(const ModelFlags& mf, const std::string& orbit_label,
           const std::string& seed_point, int grid, int window, double tol,
           const std::string& out_dir, std::ostream& out) {
  ModelPtr model = make_model(mf.name, mf.params());

  ClosedOrbitDescriptor orbit;
  if (!seed_point.empty()) {
    ChartPoint seedp = parse_point(seed_point);
    Section section;
    section.coord = 1;
    section.value = seedp.coords[1];
    orbit = find_closed_orbit(*model, seedp, section, tol);
  } else {
    auto orbits = model->known_orbits();
    if (orbits.empty()) {
      throw ParameterError("model " + model->name() + " has no known orbits");
    }
    if (orbit_label.empty()) {
      orbit = orbits.front();
    } else {
      auto it = std::find_if(orbits.begin(), orbits.end(),
                             [&](const ClosedOrbitDescriptor& o) {
                               return o.label == orbit_label;
                             });
      if (it == orbits.end()) {
        throw ParameterError("model " + model->name() + " has no orbit '" +
                             orbit_label + "'");
      }
      orbit = *it;
    }
  }

  AsymptoticProblem problem = make_asymptotic_problem(*model, orbit, 256, tol);
  Spectrum spec = discretized_spectrum(problem, grid, window);
  int cz = cz_index(spec);
  LinearizedPath path = symplectic_path(*model, orbit);
  OrbitType type = classify_orbit(path);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "cz";
  doc["model"] = model->name();
  doc["parameters"] = params_json(model->parameters());
  doc["orbit"] = orbit.label;
  doc["period"] = orbit.period;
  doc["k_min"] = problem.K_min();
  doc["k_max"] = problem.K_max();
  doc["window"] = window;
  doc["grid"] = grid;
  doc["spectrum"] = json::array();
  for (const auto& e : spec.entries) {
    doc["spectrum"].push_back(
        {{"tau", e.tau}, {"winding", e.winding}, {"multiplicity", e.multiplicity}});
  }
  doc["labels"] = json::object();
  for (const auto& [k, tau] : spec.labels) {
    doc["labels"][std::to_string(k)] = tau;
  }
  doc["cz"] = cz;
  doc["classification"] = to_string(type);
  doc["monodromy_trace"] = path.monodromy().trace();

  bool pass = true;
  if (auto kc = model->constant_k()) {
    Spectrum oracle = constant_k_spectrum(*kc, orbit.period, window);
    double dev = 0.0;
    for (const auto& [k, tau] : spec.labels) {
      auto it = oracle.labels.find(k);
      if (it != oracle.labels.end()) {
        dev = std::max(dev, std::abs(tau - it->second));
      }
    }
    doc["oracle_label_deviation"] = dev;
    pass = pass && dev < 1e-6;
  }

  try {
    ActionIndexReport air =
        check_action_index(orbit.period, cz, problem.K_min(), problem.K_max());
    json aj;
    aj["pass"] = air.pass;
    if (air.upper_applicable) {
      aj["upper_bound"] = air.upper_bound;
      aj["upper_slack"] = air.upper_slack;
    }
    if (air.lower_applicable) {
      aj["lower_bound"] = air.lower_bound;
      aj["lower_slack"] = air.lower_slack;
    }
    if (air.scaled_applicable) {
      aj["scaled_bound"] = air.scaled_bound;
      aj["scaled_slack"] = air.scaled_slack;
    }
    doc["action_index"] = aj;
    pass = pass && air.pass;
  } catch (const InapplicableError& e) {
    doc["action_index"] = std::string("inapplicable: ") + e.what();
  }

  doc["pass"] = pass;
  emit(doc, out_dir, "cz.json", out);
  return pass ? 0 : 1;
}

int cmd_toric_scan(const std::string& profile_name, double a, double b,
                   int k_max, int samples, double tol,
                   const std::string& out_dir, std::ostream& out) {
  ToricProfile profile = [&] {
    if (profile_name == "linear") return ToricProfile::linear(a, b);
    if (profile_name == "parabolic") return ToricProfile::parabolic(a, b);
    throw ParameterError("unknown profile '" + profile_name +
                         "' (use linear or parabolic)");
  }();

  std::vector<ModeScanResult> results = mode_scan(profile, k_max, samples, tol);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "toric-scan";
  doc["profile"] = profile_name;
  doc["a"] = a;
  doc["b"] = b;
  doc["k_max"] = k_max;
  doc["samples"] = samples;

  std::vector<std::string> rows;
  json admissible = json::array();
  double margin = 1e300;
  for (const auto& r : results) {
    std::ostringstream row;
    row << r.k1 << "," << r.k2 << "," << r.max_residual << ","
        << (r.admissible ? 1 : 0);
    rows.push_back(row.str());
    if (r.admissible) {
      admissible.push_back({{"k1", r.k1}, {"k2", r.k2}});
    } else {
      margin = std::min(margin, r.max_residual);
    }
  }
  doc["admissible_modes"] = admissible;
  doc["min_residual_margin"] = margin;

  bool unexpected = !admissible.empty() && profile_name != "linear";
  if (unexpected) {
    doc["verdict"] = "admissible mode on a non-linear profile; scan inconsistent";
  } else if (!admissible.empty()) {
    doc["verdict"] = "consistent with frame existence after global rescaling";
  } else {
    doc["verdict"] = "no admissible Fourier mode; frame existence excluded";
  }
  doc["pass"] = !unexpected;

  emit(doc, out_dir, "toric_scan.json", out);
  write_csv(out_dir, "toric_scan.csv", "k1,k2,max_residual,admissible", rows);
  return unexpected ? 1 : 0;
}

int cmd_sturm(const ModelFlags& mf, const std::string& point_text,
              double window, double tol, std::uint64_t seed,
              const std::string& out_dir, std::ostream& out) {
  ModelPtr model = make_model(mf.name, mf.params());
  ChartPoint p0 = point_text.empty()
                      ? stratified_points(*model, 1, seed).front()
                      : parse_point(point_text);

  Trajectory traj = integrate_reeb(*model, p0, window, 1e-12);
  double residual = jacobi_residual(*model, traj);
  OscillationReport rep = zero_gaps(*model, traj, {0.0, window});

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "sturm";
  doc["model"] = model->name();
  doc["parameters"] = params_json(model->parameters());
  doc["window"] = window;
  doc["ode_residual"] = residual;
  doc["ode_tolerance"] = tol;
  doc["zeros"] = rep.zeros;
  doc["gaps"] = rep.gaps;
  doc["inf_k"] = rep.inf_k;
  doc["sup_k"] = rep.sup_k;
  doc["bound_upper"] = rep.bound_upper;
  doc["bound_lower_per_pair"] = rep.bound_lower_per_pair;
  doc["violations"] = rep.violations;

  bool pass = rep.pass && residual < tol;
  doc["pass"] = pass;
  emit(doc, out_dir, "sturm.json", out);

  std::vector<std::string> zero_rows;
  for (size_t i = 0; i < rep.zeros.size(); ++i) {
    std::ostringstream row;
    row << i << "," << rep.zeros[i];
    zero_rows.push_back(row.str());
  }
  write_csv(out_dir, "zeros.csv", "index,t", zero_rows);

  std::vector<std::string> trace_rows;
  int n_plot = 1000;
  for (int i = 0; i <= n_plot; ++i) {
    double t = window * double(i) / double(n_plot);
    double iv =
        model->scalar(FrameScalar::I, wrap_to_chart(*model, traj.at(t)));
    std::ostringstream row;
    row << t << "," << iv;
    trace_rows.push_back(row.str());
  }
  write_csv(out_dir, "i_trace.csv", "t,I", trace_rows);
  return pass ? 0 : 1;
}

int cmd_monodromy(const std::string& itilde, double l, bool catalog,
                  const std::string& out_dir, std::ostream& out) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "monodromy";

  if (catalog) {
    doc["catalog"] = json::array();
    for (const FlatQuotientDatum& d : quotient_catalog()) {
      doc["catalog"].push_back(
          {{"label", std::string(1, d.label)},
           {"phi", {{d.phi[0][0], d.phi[0][1]}, {d.phi[1][0], d.phi[1][1]}}},
           {"declared_order", d.declared_order},
           {"matrix_order", d.matrix_order},
           {"trace", d.trace},
           {"det", d.det},
           {"deck", d.deck_description}});
    }
    doc["pass"] = true;
    emit(doc, out_dir, "monodromy.json", out);
    return 0;
  }

  MonodromyProblem problem;
  problem.I_tilde = parse_trig_poly(itilde);
  problem.l = l;
  DetIdentityReport rep = det_identity_check(problem);
  bool obstruction = integral_obstruction(problem);

  doc["itilde"] = itilde;
  doc["l"] = l;
  doc["phi"] = {{rep.phi(0, 0), rep.phi(0, 1)}, {rep.phi(1, 0), rep.phi(1, 1)}};
  doc["det"] = rep.det_phi;
  doc["integral"] = rep.integral;
  doc["expected_det"] = rep.expected_det;
  doc["residual"] = rep.residual;
  doc["mean_vanishes"] = obstruction;
  doc["pass"] = rep.pass;
  emit(doc, out_dir, "monodromy.json", out);
  return rep.pass ? 0 : 1;
}

int cmd_toponogov(const std::string& m_name, double c3, bool c3_given,
                  int n_seeds, double tol, const std::string& out_dir,
                  std::ostream& out) {
  double coef = 0.0;
  if (!m_name.empty()) {
    if (m_name != "sin") {
      throw ParameterError("--m supports only 'sin'; use --c3 for s^3 terms");
    }
    coef = 0.0;
  }
  if (c3_given) coef = c3;

  RevolutionModel model(coef);
  ToponogovReport rep = toponogov_check(model, n_seeds, tol);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "toponogov";
  doc["model"] = "revolution";
  doc["c3"] = coef;
  doc["l_min"] = rep.l_min;
  doc["k_min"] = rep.k_min;
  doc["bound"] = rep.bound;
  doc["slack"] = rep.slack;
  doc["candidates"] = json::array();
  for (const auto& c : rep.candidates) {
    doc["candidates"].push_back({{"label", c.label}, {"period", c.period}});
  }
  doc["pass"] = rep.pass;
  emit(doc, out_dir, "toponogov.json", out);
  return rep.pass ? 0 : 1;
}

int cmd_flow(const ModelFlags& mf, const std::string& point_text, double time,
             int steps, double tol, const std::string& out_dir,
             std::ostream& out) {
  ModelPtr model = make_model(mf.name, mf.params());
  ChartPoint p0 = point_text.empty() ? stratified_points(*model, 1, 1).front()
                                     : parse_point(point_text);
  Trajectory traj = integrate_reeb(*model, p0, time, tol);
  double act = action(*model, traj, tol);

  std::vector<std::string> rows;
  for (int i = 0; i <= steps; ++i) {
    double t = time * double(i) / double(steps);
    ChartPoint p = wrap_to_chart(*model, traj.at(t));
    std::ostringstream row;
    row << t << "," << p.coords[0] << "," << p.coords[1] << ","
        << p.coords[2];
    rows.push_back(row.str());
  }
  write_csv(out_dir, "flow.csv", "t,c0,c1,c2", rows);

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "flow";
  doc["model"] = model->name();
  doc["parameters"] = params_json(model->parameters());
  doc["time"] = time;
  doc["action"] = act;
  ChartPoint pf = wrap_to_chart(*model, traj.final());
  doc["final"] = {pf.coords[0], pf.coords[1], pf.coords[2]};
  doc["pass"] = true;
  emit(doc, out_dir, "flow.json", out);
  return 0;
}

}  // namespace

TrigPoly parse_trig_poly(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParameterError("empty I~ expression");

  TrigPoly poly;
  size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1.0;
      ++i;
    }
    size_t j = i;
    while (j < s.size()) {
      char c = s[j];
      if ((c == '+' || c == '-') && j > i) {
        char prev = s[j - 1];
        if (prev != 'e' && prev != 'E') break;
      }
      ++j;
    }
    std::string term = s.substr(i, j - i);
    i = j;
    if (term.empty()) throw ParameterError("malformed I~ expression");

    size_t fpos = term.find("cos(");
    bool is_cos = fpos != std::string::npos;
    if (!is_cos) fpos = term.find("sin(");
    if (fpos == std::string::npos) {
      poly.constant += sign * parse_full_double(term);
      continue;
    }
    double coef = 1.0;
    if (fpos > 0) {
      std::string pre = term.substr(0, fpos);
      if (!pre.empty() && pre.back() == '*') pre.pop_back();
      if (!pre.empty()) coef = parse_full_double(pre);
    }
    if (term.back() != ')') {
      throw ParameterError("unterminated cos/sin in I~ expression");
    }
    int k = parse_full_int(term.substr(fpos + 4, term.size() - fpos - 5));
    if (k < 1) throw ParameterError("harmonic index must be >= 1");
    auto& coefs = is_cos ? poly.cos_coef : poly.sin_coef;
    if (static_cast<int>(coefs.size()) < k) coefs.resize(k, 0.0);
    coefs[k - 1] += sign * coef;
  }
  return poly;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"numerical laboratory for contact canonical frames"};
  app.name("cfl");
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file");

  ModelFlags verify_mf, cz_mf, sturm_mf, flow_mf;
  std::string out_dir;
  app.add_option("--out", out_dir, "directory for report files")
      ->configurable(true);

  auto* verify = app.add_subcommand("verify", "frame identity checks");
  verify_mf.attach(verify, "t3");
  int verify_points = 200;
  double verify_tol = 1e-5;
  std::uint64_t verify_seed = 1;
  verify->add_option("--points", verify_points, "stratified sample count");
  verify->add_option("--tol", verify_tol, "residual tolerance");
  verify->add_option("--seed", verify_seed, "sampling seed");

  auto* cz = app.add_subcommand("cz", "Conley-Zehnder index of an orbit");
  cz_mf.attach(cz, "ellipsoid");
  std::string cz_orbit, cz_seed_point;
  int cz_grid = 256, cz_window = 4;
  double cz_tol = 1e-9;
  cz->add_option("--orbit", cz_orbit, "label from the model's known orbits");
  cz->add_option("--seed-point", cz_seed_point,
                 "chart point 'c0,c1,c2' to start the orbit search");
  cz->add_option("--grid", cz_grid, "spectral grid size");
  cz->add_option("--window", cz_window, "winding window");
  cz->add_option("--tol", cz_tol, "integration tolerance");

  auto* toric = app.add_subcommand("toric-scan", "Fourier mode admissibility");
  std::string toric_profile = "linear";
  double toric_a = 4.0 * kPi, toric_b = 4.0 * kPi;
  int toric_kmax = 8, toric_samples = 200;
  double toric_tol = 1e-10;
  toric->add_option("--profile", toric_profile, "linear or parabolic");
  toric->add_option("--a", toric_a, "profile width");
  toric->add_option("--b", toric_b, "profile height f(0)");
  toric->add_option("--kmax", toric_kmax, "mode bound");
  toric->add_option("--samples", toric_samples, "t sample count");
  toric->add_option("--tol", toric_tol, "admissibility tolerance");

  auto* sturm = app.add_subcommand("sturm", "oscillation of I along a Reeb line");
  sturm_mf.attach(sturm, "katok");
  std::string sturm_point;
  double sturm_window = 6.0 * kPi, sturm_tol = 1e-4;
  std::uint64_t sturm_seed = 1;
  sturm->add_option("--point", sturm_point, "start point 'c0,c1,c2'");
  sturm->add_option("--window", sturm_window, "time window length");
  sturm->add_option("--tol", sturm_tol, "ODE residual tolerance");
  sturm->add_option("--seed", sturm_seed, "seed for the default start point");

  auto* mono = app.add_subcommand("monodromy", "flat bundle monodromy");
  std::string mono_itilde = "0";
  double mono_l = kTwoPi;
  bool mono_catalog = false;
  mono->add_option("--Itilde", mono_itilde,
                   "I~ as a trigonometric polynomial expression");
  mono->add_option("--l", mono_l, "base circle length");
  mono->add_flag("--catalog", mono_catalog, "emit the six flat quotients");

  auto* topo = app.add_subcommand("toponogov", "shortest geodesic bound");
  std::string topo_m;
  double topo_c3 = 0.0, topo_tol = 1e-9;
  int topo_seeds = 9;
  topo->add_option("--m", topo_m, "profile name ('sin')");
  auto* topo_c3_opt = topo->add_option("--c3", topo_c3, "profile coefficient");
  topo->add_option("--seeds", topo_seeds, "shooting seed count");
  topo->add_option("--tol", topo_tol, "integration tolerance");

  auto* flow = app.add_subcommand("flow", "integrate a Reeb trajectory");
  flow_mf.attach(flow, "katok");
  std::string flow_point;
  double flow_time = kTwoPi, flow_tol = 1e-9;
  int flow_steps = 400;
  flow->add_option("--point", flow_point, "start point 'c0,c1,c2'");
  flow->add_option("--time", flow_time, "integration time");
  flow->add_option("--steps", flow_steps, "CSV sample count");
  flow->add_option("--tol", flow_tol, "integration tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify(verify_mf, verify_points, verify_tol, verify_seed,
                        out_dir, out);
    }
    if (cz->parsed()) {
      return cmd_cz(cz_mf, cz_orbit, cz_seed_point, cz_grid, cz_window, cz_tol,
                    out_dir, out);
    }
    if (toric->parsed()) {
      return cmd_toric_scan(toric_profile, toric_a, toric_b, toric_kmax,
                            toric_samples, toric_tol, out_dir, out);
    }
    if (sturm->parsed()) {
      return cmd_sturm(sturm_mf, sturm_point, sturm_window, sturm_tol,
                       sturm_seed, out_dir, out);
    }
    if (mono->parsed()) {
      return cmd_monodromy(mono_itilde, mono_l, mono_catalog, out_dir, out);
    }
    if (topo->parsed()) {
      return cmd_toponogov(topo_m, topo_c3, topo_c3_opt->count() > 0,
                           topo_seeds, topo_tol, out_dir, out);
    }
    if (flow->parsed()) {
      return cmd_flow(flow_mf, flow_point, flow_time, flow_steps, flow_tol,
                      out_dir, out);
    }
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no command selected\n";
  return 2;
}

}  // namespace cfl
