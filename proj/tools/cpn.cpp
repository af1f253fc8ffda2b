#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "job_config.hpp"
#include "cpn/verify.hpp"

namespace fs = std::filesystem;
using namespace cpn;
using cli::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

struct Options {
  std::string config, preset, out, matrix, point;
  double a = 1.0;
  double tol = -1.0;
  int grid = 0;
  std::string chart, project;
  std::vector<int> criteria;
};

cplx parse_point_arg(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  is >> re;
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw Error(Errc::config, "point must be 're,im'");
  }
  return {re, im};
}

cli::JobConfig load(const Options& o, bool need_model) {
  cli::JobConfig job;
  if (!o.config.empty() && !o.preset.empty()) throw Error(Errc::config, "use either --config or --preset");
  if (!o.config.empty()) {
    job = cli::parse_job(cli::read_json_file(o.config));
  } else if (!o.preset.empty()) {
    job.sol = make_preset(o.preset, o.a);
  } else if (need_model) {
    throw Error(Errc::config, "a model is required: --config <path> or --preset <name>");
  }
  if (o.tol > 0) job.tol = o.tol;
  if (o.grid > 0) job.grid.n_radial = job.grid.n_angular = o.grid;
  if (!o.chart.empty()) job.grid.chart = cli::parse_chart(o.chart);
  if (!o.project.empty()) job.projection = cli::parse_projection(o.project);
  if (!o.point.empty()) job.point = parse_point_arg(o.point);
  return job;
}

// Writes JSON to <out>/<name> when --out is given, always to stdout.
void emit(const Options& o, const std::string& name, const json& j) {
  cli::write_json(std::cout, j);
  if (o.out.empty()) return;
  fs::create_directories(o.out);
  std::ofstream os(fs::path(o.out) / name);
  if (!os) throw Error(Errc::io_failure, "cannot write " + (fs::path(o.out) / name).string());
  cli::write_json(os, j);
}

std::string out_path(const Options& o, const std::string& name) {
  const std::string dir = o.out.empty() ? "." : o.out;
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

json solution_json(const CpnSolution& sol) {
  json comps = json::array();
  for (const auto& f : sol.f()) comps.push_back(f.to_string());
  json sing = json::array();
  for (cplx p : sol.singularities().points()) sing.push_back(cli::to_json(p));
  return {{"label", sol.label()},
          {"n", sol.n()},
          {"kind", kind_name(sol.kind())},
          {"components", comps},
          {"singular_points", sing},
          {"singular_denominators", static_cast<int>(sol.singularities().denominators().size())}};
}

int cmd_construct(const Options& o) {
  const auto job = load(o, true);
  const CpnSolution& sol = *job.sol;
  const auto pts = random_safe_points(sol, 50, kSeed, 0.05, 2.0);
  double el = 0, cons = 0;
  for (cplx z : pts) {
    el = std::max(el, el_residual(sol, z));
    cons = std::max(cons, conservation_residual(sol, z));
  }
  json j = solution_json(sol);
  j["residuals"] = {{"points", static_cast<int>(pts.size())}, {"field_equations_max", el}, {"conservation_max", cons}};
  emit(o, "construct.json", j);
  return kOk;
}

int cmd_immerse(const Options& o) {
  const auto job = load(o, true);
  const Immersion im(*job.sol, job.base_point);
  const std::string prefix = out_path(o, "mesh");
  const MeshSummary s = export_mesh(im, job.grid, prefix, job.projection);
  json j = solution_json(*job.sol);
  j["base_point"] = cli::to_json(im.base_point);
  j["mesh"] = {{"prefix", prefix}, {"vertices", s.vertices}, {"faces", s.faces},
               {"bbox_min", cli::to_json(s.bbox_min)}, {"bbox_max", cli::to_json(s.bbox_max)}};
  cli::write_json(std::cout, j);
  return kOk;
}

int cmd_curvature(const Options& o) {
  const auto job = load(o, true);
  const CpnSolution& sol = *job.sol;
  const GridSpec& g = job.grid;
  std::vector<cplx> pts;
  for (int i = 0; i < g.n_radial; ++i)
    for (int k = 0; k < g.n_angular; ++k) {
      const double r = g.n_radial == 1 ? g.r_min : g.r_min + (g.r_max - g.r_min) * i / (g.n_radial - 1);
      pts.push_back(std::polar(r, 2.0 * M_PI * k / g.n_angular));
    }
  std::vector<std::string> rows(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    const cplx z = pts[i];
    if (!sol.is_safe(z)) return;
    std::string line = fmt(z.real()) + "," + fmt(z.imag()) + ",";
    const MetricSample m = metric(sol, z);
    line += fmt(m.g_xx.real()) + "," + fmt(m.g_xx.imag()) + "," + fmt(m.g_xbx) + "," + fmt(m.det_g) + ",";
    if (m.degenerate) {
      line += "nan,nan";
    } else {
      const CurvatureSample c = mean_curvature(sol, z);
      line += fmt(c.K) + "," + fmt(c.H_norm);
    }
    rows[i] = line;
  });
  std::ostringstream os;
  os << "re_xi,im_xi,J_re,J_im,q,det_g,K,H\n";
  for (const auto& r : rows)
    if (!r.empty()) os << r << '\n';
  if (o.out.empty()) {
    std::cout << os.str();
  } else {
    const std::string path = out_path(o, "curvature.csv");
    std::ofstream f(path);
    if (!f) throw Error(Errc::io_failure, "cannot write " + path);
    f << os.str();
    std::cout << path << '\n';
  }
  return kOk;
}

int cmd_charge(const Options& o) {
  const auto job = load(o, true);
  const QuadratureResult q = topological_charge(*job.sol);
  const double gap = std::abs(q.value - std::round(q.value));
  const double tol = o.tol > 0 ? o.tol : 1e-3;
  emit(o, "charge.json",
       {{"Q", q.value}, {"integrality_gap", gap}, {"quadrature_error", q.error}, {"radial_nodes", q.radial_nodes},
        {"tolerance", tol}, {"pass", gap < tol}});
  return gap < tol ? kOk : kCheckFailed;
}

int cmd_willmore(const Options& o) {
  const auto job = load(o, true);
  const QuadratureResult w = willmore(*job.sol);
  emit(o, "willmore.json", {{"willmore", w.value}, {"quadrature_error", w.error}, {"radial_nodes", w.radial_nodes}});
  return kOk;
}

int cmd_frame(const Options& o) {
  const auto job = load(o, true);
  const CpnSolution& sol = *job.sol;
  const cplx z = job.point;
  const FrameState f = complete_frame(sol, z);
  const GWMatrices gw = gauss_weingarten(sol, z, f);
  json normals = json::array();
  for (const auto& n : f.normals) normals.push_back(cli::to_json(n.mat()));
  json j = {{"point", cli::to_json(z)},
            {"pivots", f.pivots},
            {"dX", cli::to_json(f.dX)},
            {"dbarX", cli::to_json(f.dbX)},
            {"normals", normals},
            {"frame_conditions", frame_conditions(f)},
            {"A", cli::to_json(gw.A)},
            {"B", cli::to_json(gw.B)},
            {"gcr_residual", gcr_residual(sol, z)},
            {"gw_defining_residual", gw_defining_residual(sol, z)}};
  if (sol.n() == 2 && sol.kind() == SolutionKind::holomorphic) {
    const Cp2Frame c = cp2_frame(sol, z);
    j["cp2"] = {{"Phi", cli::to_json(c.Phi)},
                {"unitarity_defect", c.unitarity_defect},
                {"reference_unitarity_defect", c.reference_unitarity_defect},
                {"tangent_d_residual", c.tangent_d_residual},
                {"tangent_dbar_residual", c.tangent_dbar_residual},
                {"normal_conditions", c.normal_conditions}};
  }
  emit(o, "frame.json", j);
  return kOk;
}

CMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::config, "matrix must be 3 rows");
  CMatrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw Error(Errc::config, "matrix rows must have 3 entries");
    for (int k = 0; k < 3; ++k) m(i, k) = cli::parse_complex(j[i][k]);
  }
  return m;
}

int cmd_decompose(const Options& o) {
  if (o.matrix.empty()) throw Error(Errc::config, "--matrix <file> is required");
  const json in = cli::read_json_file(o.matrix);
  const CMatrix g = parse_matrix(in.is_object() && in.contains("matrix") ? in.at("matrix") : in);
  const Su3Factors f = decompose_su3(g);
  emit(o, "su3_factors.json",
       {{"A1", cli::to_json(f.A1)},
        {"A2", cli::to_json(f.A2)},
        {"lambda", cli::to_json(f.mu)},
        {"alpha", f.theta},
        {"recomposition_error", max_abs(recompose(f) - g)}});
  return kOk;
}

json report_json(const std::vector<CriterionResult>& cs) {
  json arr = json::array();
  for (const auto& c : cs) {
    json checks = json::array(), diags = json::array();
    for (const auto& k : c.checks)
      checks.push_back({{"name", k.name}, {"value", k.value}, {"tolerance", k.tolerance}, {"pass", k.pass}, {"topic", k.topic}});
    for (const auto& k : c.diagnostics) diags.push_back({{"name", k.name}, {"value", k.value}, {"topic", k.topic}});
    arr.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"seconds", c.seconds},
                   {"checks", checks}, {"diagnostics", diags}, {"notes", c.notes}});
  }
  return arr;
}

int cmd_verify(const Options& o) {
  const auto job = load(o, false);
  std::vector<CriterionResult> results;
  if (job.sol) {
    results.push_back(verify_solution(*job.sol, job.tol));
  } else {
    results = run_acceptance(o.criteria).criteria;
  }
  bool ok = true;
  for (const auto& c : results) {
    std::cout << render(c);
    ok = ok && c.pass();
  }
  if (!o.out.empty()) {
    const std::string path = out_path(o, "report.json");
    std::ofstream os(path);
    if (!os) throw Error(Errc::io_failure, "cannot write " + path);
    cli::write_json(os, {{"pass", ok}, {"criteria", report_json(results)}});
  }
  return ok ? kOk : kCheckFailed;
}

int exit_for(Errc c) {
  switch (c) {
    case Errc::config:
    case Errc::invalid_input:
    case Errc::dimension_mismatch:
      return kUsage;
    default:
      return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CP^N sigma-model surfaces: construction, immersion, geometry and checks"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "JSON job file");
    s->add_option("--preset", o.preset, "built-in model: cp1-sphere, cp1-k2, cp1-k3, ex1, ex2, ex3");
    s->add_option("--a", o.a, "parameter a of the ex1 preset");
    s->add_option("--out", o.out, "output directory");
    s->add_option("--tol", o.tol, "check tolerance");
    s->add_option("--grid", o.grid, "grid resolution n (n x n)");
    s->add_option("--chart", o.chart, "disk, polar or both");
    s->add_option("--project", o.project, "first3 or pca");
    s->add_option("--point", o.point, "evaluation point re,im");
  };
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Cmd cmds[] = {{"construct", "summarize a solution and its residuals", cmd_construct},
                      {"immerse", "integrate the immersion on a grid; write OBJ, PLY and CSV", cmd_immerse},
                      {"curvature", "metric and curvature table", cmd_curvature},
                      {"charge", "topological charge", cmd_charge},
                      {"willmore", "Willmore functional", cmd_willmore},
                      {"frame", "frame, Gauss-Weingarten matrices and compatibility residual", cmd_frame},
                      {"decompose-su3", "factor a special unitary 3x3 matrix", cmd_decompose},
                      {"verify", "acceptance suite, or per-solution checks with a model", cmd_verify}};
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const Cmd& c : cmds) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    common(s);
    if (std::string(c.name) == "decompose-su3") s->add_option("--matrix", o.matrix, "JSON 3x3 matrix file");
    if (std::string(c.name) == "verify") s->add_option("--criterion", o.criteria, "criterion ids (default all)");
    subs.emplace_back(s, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    for (const auto& [s, c] : subs)
      if (s->parsed()) return c->run(o);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
