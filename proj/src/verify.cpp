#include "cpn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace cpn {

bool CriterionResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerificationReport::all_pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass(); });
}

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult start(int id, std::string title) {
  CriterionResult c;
  c.id = id;
  c.title = std::move(title);
  return c;
}

CheckResult below(std::string name, double v, double tol, std::string topic) {
  return {std::move(name), v, tol, std::isfinite(v) && v < tol, std::move(topic)};
}

CheckResult above(std::string name, double v, double tol, std::string topic) {
  return {std::move(name), v, tol, std::isfinite(v) && v > tol, std::move(topic)};
}

CheckResult info(std::string name, double v, std::string topic) {
  return {std::move(name), v, 0.0, true, std::move(topic)};
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::isnan(x) ? std::numeric_limits<double>::infinity() : x);
  return m;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

std::string label_of(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", a);
  return buf;
}

// Matrix of a linear map on coordinate vectors.
Eigen::MatrixXd matrix_of(const std::function<RVector(const RVector&)>& f, int n) {
  const int m = static_cast<int>(f(RVector::Zero(n)).size());
  Eigen::MatrixXd L(m, n);
  for (int j = 0; j < n; ++j) L.col(j) = f(RVector::Unit(n, j));
  return L;
}

Eigen::MatrixXd cp1_map() { return matrix_of(cp1_from_coords, 3); }
Eigen::MatrixXd reference_map() { return matrix_of(reference_labels_from_coords, 8); }
Eigen::MatrixXd example1_map() { return matrix_of(example1_from_coords, 8); }

std::vector<cplx> uniform_points(std::mt19937_64& rng, int count, double x0, double x1, double y0, double y1) {
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) {
    const double x = ux(rng);
    out.emplace_back(x, uy(rng));
  }
  return out;
}

Mesh grid_mesh(const Immersion& im) {
  GridSpec g;
  g.chart = Chart::polar;
  g.n_radial = 32;
  g.n_angular = 32;
  g.r_min = 0.05;
  g.r_max = 3.0;
  return build_mesh(im, g);
}

// ---------------------------------------------------------------------------

CriterionResult criterion1() {
  CriterionResult c = start(1, "Solution validity");
  std::vector<std::pair<std::string, CpnSolution>> sols;
  sols.emplace_back("cp1-sphere", cp1_power(1));
  sols.emplace_back("cp1-k2", cp1_power(2));
  for (double a : {0.0, 1.0, std::sqrt(2.0)}) sols.emplace_back("ex1(a=" + label_of(a) + ")", example1(a));
  sols.emplace_back("ex2", example2());
  sols.emplace_back("ex3", example3());
  for (const auto& [name, sol] : sols) {
    const auto pts = random_safe_points(sol, 50, kSeed, 0.05, 2.0);
    const int n = static_cast<int>(pts.size());
    const double el = max_of(parallel_map(n, [&](int i) { return el_residual(sol, pts[i]); }));
    const double cons = max_of(parallel_map(n, [&](int i) { return conservation_residual(sol, pts[i]); }));
    c.checks.push_back(below("field equations " + name, el, 1e-8, "Euler-Lagrange residual, 50 points"));
    c.checks.push_back(below("conservation " + name, cons, 1e-8, "dK = dbar K^dagger, 50 points"));
  }
  return c;
}

CriterionResult criterion2() {
  CriterionResult c = start(2, "Sphere reproduction (cp1-sphere)");
  const CpnSolution sol = cp1_power(1);
  const Immersion im(sol);
  const Mesh mesh = grid_mesh(im);
  const Eigen::MatrixXd L = cp1_map();
  const RVector offset = closed_form_cp1(RationalFn::identity(), im.base_point) - L * coords(im.base_value, im.basis);
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<double> dev(n);
  for (int i = 0; i < n; ++i) {
    const RVector x = L * mesh.vertices[i].coords + offset;
    dev[i] = std::abs(x(0) * x(0) + x(1) * x(1) + (x(2) - 1.0) * (x(2) - 1.0) - 1.0);
  }
  const std::vector<double> K = parallel_map(n, [&](int i) { return gaussian_curvature(sol, mesh.vertices[i].xi); });
  const std::vector<double> ii = parallel_map(n, [&](int i) {
    const cplx z = mesh.vertices[i].xi;
    const PolarForms p = polar_forms(sol, std::abs(z), std::arg(z), L);
    return std::max({std::abs(p.II_rr - p.I_rr), std::abs(p.II_rphi - p.I_rphi), std::abs(p.II_phiphi - p.I_phiphi)});
  });
  c.checks.push_back(info("grid vertices", n, "32x32 polar grid, r in [0.05, 3]"));
  c.checks.back().pass = n == 1024;
  c.checks.push_back(below("sphere identity X1^2+X2^2+(X3-1)^2-1", max_of(dev), 1e-8, "closed-form coordinates"));
  c.checks.push_back(below("curvature spread", spread(K), 1e-6, "Gaussian curvature over the grid"));
  c.checks.push_back(below("II - I", max_of(ii), 1e-8, "fundamental forms in closed-form coordinates"));
  c.diagnostics.push_back(info("K (-1/2 tr metric)", mean(K), "curvature under the pinned inner product"));
  return c;
}

CriterionResult criterion3() {
  CriterionResult c = start(3, "Hyperellipsoid identity (ex1, a = 1)");
  const CpnSolution sol = example1(1.0);
  const Immersion im(sol);
  const Mesh mesh = grid_mesh(im);
  const Eigen::MatrixXd L = example1_map();
  const RationalFn w1(Poly({0.0, 1.0})), w2(Poly::monomial(2));
  const RVector offset = closed_form_cp2_holo(w1, w2, im.base_point) - L * coords(im.base_value, im.basis);
  const double wts[8] = {1, 1, 1, 1, 1, 2, 2, 1};
  auto quad = [&](const RVector& x) {
    double s = 0.0;
    for (int k = 0; k < 8; ++k) s += wts[k] * x(k) * x(k);
    return s;
  };
  std::vector<double> dev, raw, closed;
  for (const auto& v : mesh.vertices) {
    RVector x = L * v.coords + offset;
    closed.push_back((x - closed_form_cp2_holo(w1, w2, v.xi)).cwiseAbs().maxCoeff());
    raw.push_back(quad(x));
    x(2) -= 1.0;  // integration constants X3 -> X3 - 1, X4 -> X4 - 1
    x(3) -= 1.0;
    dev.push_back(std::abs(quad(x) - 2.0));
  }
  c.checks.push_back(info("grid vertices", static_cast<double>(mesh.vertices.size()), "32x32 polar grid"));
  c.checks.back().pass = mesh.vertices.size() == 1024;
  c.checks.push_back(below("hyperellipsoid sum - 2", max_of(dev), 1e-8, "weights (1,1,1,1,1,2,2,1), X3, X4 shifted by -1"));
  c.diagnostics.push_back(info("immersion vs closed form", max_of(closed), "integrated X through the fixed label map"));
  c.diagnostics.push_back(info("unshifted sum spread", spread(raw), "closed forms taken without the constant shift"));
  c.notes.push_back("closed forms are defined up to additive constants; the identity holds with X3 and X4 shifted by -1");
  double lit = 0.0, corr = 0.0;
  for (const CpnSolution& s : {sol, example2()}) {
    for (cplx z : random_safe_points(s, 10, kSeed, 0.3, 2.0)) {
      const FormsAssembly f = assemble_forms_cp2(s, z);
      lit = std::max(lit, f.literal_residual);
      corr = std::max(corr, f.corrected_residual);
    }
  }
  c.diagnostics.push_back(info("one-forms, literal S assignment", lit, "assembly of the reference eight one-forms"));
  c.diagnostics.push_back(info("one-forms, corrected assignment", corr, "assembly with the measured label map"));
  return c;
}

CriterionResult criterion4() {
  CriterionResult c = start(4, "Example 1 curvature");
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> ua(0.0, 2.0), ur(0.05, 2.0), ut(0.0, 2.0 * M_PI);
  std::vector<std::pair<double, cplx>> samples;
  for (int i = 0; i < 50; ++i) {
    const double a = ua(rng), r = ur(rng);
    samples.emplace_back(a, std::polar(r, ut(rng)));
  }
  const std::vector<double> rel = parallel_map(50, [&](int i) {
    const auto [a, z] = samples[i];
    const double k = gaussian_curvature(example1(a), z), kp = reference::example1_K(a, z);
    return std::abs(k - kp) / std::abs(kp);
  });
  c.checks.push_back(below("K vs closed form (relative)", max_of(rel), 1e-6, "50 random (a, xi)"));
  std::vector<double> abs_err;
  for (int i = 0; i < 50; ++i) {
    const auto [a, z] = samples[i];
    abs_err.push_back(std::abs(gaussian_curvature(example1(a), z) + reference::example1_K(a, z)));
  }
  c.diagnostics.push_back(info("|K + closed form| (sign-flipped)", max_of(abs_err), "50 random (a, xi)"));
  for (auto [a, target] : {std::pair{std::sqrt(2.0), -2.0}, std::pair{0.0, -4.0}}) {
    const CpnSolution sol = example1(a);
    const auto pts = random_safe_points(sol, 50, kSeed, 0.05, 2.0);
    const std::vector<double> K = parallel_map(50, [&](int i) { return gaussian_curvature(sol, pts[i]); });
    std::vector<double> err;
    for (double k : K) err.push_back(std::abs(k - target));
    const std::string tag = "a=" + label_of(a);
    c.checks.push_back(below("K spread " + tag, spread(K), 1e-8, "constancy over 50 points"));
    c.checks.push_back(below("|K - (" + label_of(target) + ")| " + tag, max_of(err), 1e-8, "constant value"));
    c.diagnostics.push_back(info("mean K " + tag, mean(K), "measured constant"));
  }
  return c;
}

CriterionResult criterion5() {
  CriterionResult c = start(5, "Example 3 immersion and curvatures");
  const CpnSolution sol = example3();
  const Immersion im(sol, cplx{2.0, 0.0});
  const Eigen::MatrixXd L = reference_map();
  const RVector offset = closed_form_example3(2.0, 0.0) - L * coords(im.base_value, im.basis);
  std::vector<cplx> pts;
  for (double r : {1.2, 1.5, 2.0, 2.5, 3.0})
    for (int j = 0; j < 12; ++j) pts.push_back(std::polar(r, 2.0 * M_PI * j / 12));
  const std::vector<double> dev = parallel_map(static_cast<int>(pts.size()), [&](int i) {
    const RVector x = L * immerse(im, pts[i]).coords + offset;
    return (x - closed_form_example3(std::abs(pts[i]), std::arg(pts[i]))).cwiseAbs().maxCoeff();
  });
  c.checks.push_back(below("immersion vs closed-form coordinates", max_of(dev), 1e-6, "60 points, r in [1.2, 3]"));
  const double K2 = gaussian_curvature(sol, 2.0);
  const CurvatureSample H2 = mean_curvature(sol, 2.0);
  c.checks.push_back(below("K(r=2) vs 5.6862 (relative)", std::abs(K2 - reference::kExample3K2) / reference::kExample3K2, 1e-5,
                           "Gaussian curvature of the immersion"));
  c.checks.push_back(below("H(r=2) vs 0.62980 (relative)",
                           std::abs(H2.H_norm - reference::kExample3H2) / reference::kExample3H2, 1e-5,
                           "mean curvature of the immersion"));
  double form_err = 0.0, rev_err = 0.0;
  for (double r : {1.2, 1.5, 2.0, 3.0}) {
    const PolarForms p = polar_forms(sol, r, 0.0, L);
    const PolarForms q = revolution_forms(reference::example3_profile(r));
    const reference::Example3Forms e = reference::example3_forms(r);
    form_err = std::max({form_err, std::abs(p.I_rr - e.I_rr), std::abs(p.I_phiphi - e.I_phiphi), std::abs(p.I_rphi),
                         std::abs(p.II_rr - e.II_rr), std::abs(p.II_phiphi - e.II_phiphi), std::abs(p.II_rphi)});
    rev_err = std::max({rev_err, std::abs(q.I_rr - e.I_rr), std::abs(q.I_phiphi - e.I_phiphi),
                        std::abs(q.II_rr - e.II_rr), std::abs(q.II_phiphi - e.II_phiphi)});
  }
  c.checks.push_back(below("I, II of the immersion vs reference forms", form_err, 1e-7, "r in {1.2, 1.5, 2, 3}"));
  c.diagnostics.push_back(info("K(r=2) of the immersion", K2, "measured"));
  c.diagnostics.push_back(info("|H|(r=2) of the immersion", H2.H_norm, "measured"));
  const PolarForms q2 = revolution_forms(reference::example3_profile(2.0));
  c.diagnostics.push_back(info("closed-form surface: I, II vs reference forms", rev_err, "surface of revolution"));
  c.diagnostics.push_back(info("closed-form surface: K(2)", q2.K, "surface of revolution"));
  c.diagnostics.push_back(info("curvature formula at r=2", reference::example3_K(2.0), "reference K formula"));
  c.diagnostics.push_back(info("mean curvature formula at r=2", reference::example3_H(2.0), "reference H formula"));
  c.diagnostics.push_back(info("closed-form surface: H(2) / formula H(2)", q2.H / reference::example3_H(2.0),
                               "surface of revolution"));
  c.notes.push_back("the field's immersion is not the closed-form surface of revolution; see decisions ledger");
  return c;
}

CriterionResult criterion6() {
  CriterionResult c = start(6, "Topological charge and action");
  for (int k = 1; k <= 3; ++k) {
    const QuadratureResult q = topological_charge(cp1_power(k));
    c.checks.push_back(below("|Q| - " + std::to_string(k) + " for W = xi^" + std::to_string(k),
                             std::abs(std::abs(q.value) - k), 1e-3, "charge by sphere quadrature"));
    c.diagnostics.push_back(info("Q for k=" + std::to_string(k), q.value, "signed value"));
  }
  std::vector<std::pair<std::string, CpnSolution>> holo;
  for (int k = 1; k <= 3; ++k) holo.emplace_back("W=xi^" + std::to_string(k), cp1_power(k));
  for (double a : {0.0, 1.0, std::sqrt(2.0)}) holo.emplace_back("ex1(a=" + label_of(a) + ")", example1(a));
  for (const auto& [name, sol] : holo) {
    const double q = std::abs(topological_charge(sol).value);
    const double s = total_action(sol).value;
    c.checks.push_back(below("S vs 2 pi |Q| " + name, std::abs(s - 2.0 * M_PI * q) / (2.0 * M_PI * q), 1e-4,
                             "action-charge relation"));
  }
  return c;
}

CriterionResult criterion7() {
  CriterionResult c = start(7, "Path independence and closedness");
  std::vector<std::pair<std::string, CpnSolution>> sols;
  sols.emplace_back("cp1-k2", cp1_power(2));
  sols.emplace_back("ex1(a=1)", example1(1.0));
  sols.emplace_back("ex2", example2());
  sols.emplace_back("ex3", example3());
  std::mt19937_64 rng(kSeed + 7);
  double path_gap = 0.0, loop_gap = 0.0;
  int pairs = 0, loops = 0;
  // the box Re xi in [0.2, 2] is convex and free of singular points, so any two paths in it are homotopic
  for (const auto& [name, sol] : sols) {
    for (int i = 0; i < 5; ++i) {
      const auto p = uniform_points(rng, 3, 0.2, 2.0, -1.5, 1.5);
      const Immersion im(sol, p[0]);
      const ImmersionSample s1 = immerse(im, p[1], Path::segment(p[0], p[1]));
      const ImmersionSample s2 = immerse(im, p[1], Path({p[0], p[2], p[1]}));
      path_gap = std::max(path_gap, max_abs(s1.X.mat() - s2.X.mat()));
      ++pairs;
    }
  }
  const int loop_plan[4] = {2, 2, 3, 3};
  for (size_t s = 0; s < sols.size(); ++s) {
    const Immersion im(sols[s].second, cplx{1.0, 0.0});
    for (int i = 0; i < loop_plan[s]; ++i) {
      const cplx ctr = uniform_points(rng, 1, 0.6, 1.6, -1.0, 1.0)[0];
      const Path loop = i % 2 == 0 ? Path::circle(ctr, 0.35, 24) : Path::square(ctr - cplx{0.3, 0.3}, 0.6);
      loop_gap = std::max(loop_gap, closedness_residual(im, loop));
      ++loops;
    }
  }
  c.checks.push_back(below("homotopic path pairs (" + std::to_string(pairs) + ")", path_gap, 1e-9, "max |X1 - X2|"));
  c.checks.push_back(below("contractible loops (" + std::to_string(loops) + ")", loop_gap, 1e-9, "loop integral"));
  return c;
}

CriterionResult criterion8() {
  CriterionResult c = start(8, "Frames");
  std::vector<std::pair<std::string, CpnSolution>> sols;
  sols.emplace_back("cp1-sphere", cp1_power(1));
  sols.emplace_back("ex1(a=1)", example1(1.0));
  sols.emplace_back("ex2", example2());
  sols.emplace_back("ex3", example3());
  double ortho = 0.0, defining = 0.0, gcr = 0.0;
  for (const auto& [name, sol] : sols) {
    const auto pts = random_safe_points(sol, 20, kSeed + 8, 0.1, 2.0);
    const int n = static_cast<int>(pts.size());
    ortho = std::max(ortho, max_of(parallel_map(n, [&](int i) { return frame_conditions(complete_frame(sol, pts[i])); })));
    defining = std::max(defining, max_of(parallel_map(n, [&](int i) { return gw_defining_residual(sol, pts[i]); })));
    gcr = std::max(gcr, max_of(parallel_map(n, [&](int i) { return gcr_residual(sol, pts[i]); })));
  }
  const CpnSolution ctl = nonsolution_control();
  const auto cpts = random_safe_points(ctl, 20, kSeed + 8, 0.1, 2.0);
  const std::vector<double> cg = parallel_map(static_cast<int>(cpts.size()), [&](int i) { return gcr_residual(ctl, cpts[i]); });
  c.checks.push_back(below("frame orthonormality", ortho, 1e-9, "tangent/normal conditions, 80 points"));
  c.checks.push_back(below("Gauss-Weingarten defining property", defining, 1e-5, "finite-difference frame derivatives"));
  c.checks.push_back(below("GCR residual on solutions", gcr, 1e-4, "dbar A - d B + [A, B]"));
  c.checks.push_back(above("GCR residual on control (min)", *std::min_element(cg.begin(), cg.end()), 1e-2,
                           "W = xi + 0.2 xibar"));

  const CpnSolution e1 = example1(1.0);
  std::vector<std::pair<const CpnSolution*, cplx>> cases;
  const CpnSolution line =
      make_holomorphic(2, {RationalFn::constant(1.0), RationalFn::identity(), RationalFn()}, "W1=xi, W2=0");
  cases.emplace_back(&line, cplx{1.0, 0.0});
  for (cplx z : random_safe_points(e1, 20, kSeed + 8, 0.1, 2.0)) cases.emplace_back(&e1, z);
  double unit = 0, det = 0, td = 0, tdb = 0, nc = 0, reference_unit = 0;
  for (const auto& [s, z] : cases) {
    const Cp2Frame f = cp2_frame(*s, z);
    unit = std::max(unit, f.unitarity_defect);
    det = std::max(det, f.det_defect);
    td = std::max(td, f.tangent_d_residual);
    tdb = std::max(tdb, f.tangent_dbar_residual);
    nc = std::max(nc, f.normal_conditions);
    reference_unit = std::max(reference_unit, f.reference_unitarity_defect);
  }
  c.checks.push_back(below("Phi unitary", unit, 1e-12, "CP^2 holomorphic frame"));
  c.checks.push_back(below("det Phi = 1", det, 1e-9, "CP^2 holomorphic frame"));
  c.checks.push_back(below("dX = e^{u/2} Phi^-1 Y_- Phi", td, 1e-8, "tangent identity"));
  c.checks.push_back(below("dbarX = e^{ubar/2} Phi^-1 Y_+ Phi", tdb, 1e-8, "tangent identity"));
  c.diagnostics.push_back(info("normals Phi^-1 S_{i+2} Phi: frame-condition defect", nc, "E10 lies in span{S5, S7}"));
  c.diagnostics.push_back(info("Phi with reference entries: unitarity defect", reference_unit, "row 2, column 1 unconjugated"));
  return c;
}

CriterionResult criterion9() {
  CriterionResult c = start(9, "SU(3) decomposition");
  std::mt19937_64 rng(kSeed + 9);
  double rec = 0.0, fac = 0.0;
  const CMatrix I2 = CMatrix::Identity(2, 2);
  for (int i = 0; i < 100; ++i) {
    const CMatrix g = random_special_unitary(3, rng);
    const Su3Factors f = decompose_su3(g);
    rec = std::max(rec, max_abs(recompose(f) - g));
    fac = std::max({fac, max_abs(f.A1.adjoint() * f.A1 - I2), max_abs(f.A2.adjoint() * f.A2 - I2),
                    std::abs(f.A1.determinant() - 1.0), std::abs(f.A2.determinant() - 1.0), std::abs(std::abs(f.mu) - 1.0),
                    f.theta < 0 || f.theta > M_PI / 2 ? 1.0 : 0.0});
  }
  c.checks.push_back(below("recomposition error, 100 samples", rec, 1e-10, "factor round trip"));
  c.checks.push_back(below("factor validity", fac, 1e-10, "SU(2) blocks, |lambda| = 1, alpha in [0, pi/2]"));
  const Su3Factors id = decompose_su3(CMatrix::Identity(3, 3));
  c.checks.push_back(below("identity factors", std::max({max_abs(id.A1 - I2), max_abs(id.A2 - I2), std::abs(id.mu - 1.0), id.theta}),
                           1e-14, "canonical representative"));
  Su3Factors m{I2, I2, std::polar(1.0, M_PI / 4), M_PI / 6};
  const Su3Factors back = decompose_su3(recompose(m));
  c.checks.push_back(below("middle factor recovered", std::abs(back.mu * back.mu - m.mu * m.mu) + std::abs(back.theta - m.theta),
                           1e-12, "lambda^2 and alpha"));
  return c;
}

CriterionResult criterion10() {
  CriterionResult c = start(10, "Unreproduced claim: CP^1 sphere curvature");
  const CpnSolution sol = cp1_power(1);
  const auto pts = random_safe_points(sol, 100, kSeed + 10, 0.05, 2.5);
  const std::vector<double> K = parallel_map(100, [&](int i) { return gaussian_curvature(sol, pts[i]); });
  const Eigen::MatrixXd L = cp1_map();
  const std::vector<double> Kl = parallel_map(100, [&](int i) {
    return polar_forms(sol, std::abs(pts[i]), std::arg(pts[i]), L).K;
  });
  c.checks.push_back(below("measured curvature is constant", spread(K), 1e-6, "100 points"));
  c.diagnostics.push_back(info("claimed K", reference::kSphereK, "quoted value"));
  c.diagnostics.push_back(info("measured K (-1/2 tr metric)", mean(K), "pinned convention"));
  c.diagnostics.push_back(info("K in closed-form coordinates", mean(Kl), "coordinates scaled by 2"));
  const bool differs = std::abs(mean(K) - reference::kSphereK) > 1e-6;
  c.notes.push_back(differs ? "DISCREPANCY flagged: claimed K = 1, measured K = " + label_of(mean(K)) +
                                  " under the pinned metric; the claim holds only in the closed-form coordinates"
                            : "claimed value reproduced");
  return c;
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const std::function<CriterionResult()> table[kCriterionCount] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  static const double budget[kCriterionCount] = {10, 5, 0, 0, 0, 30, 0, 0, 2, 0};
  if (id < 1 || id > kCriterionCount) throw Error(Errc::config, "no criterion " + std::to_string(id));
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1]();
  } catch (const Error& e) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.checks.push_back({"evaluation", std::numeric_limits<double>::quiet_NaN(), 0.0, false, e.what()});
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget[id - 1] > 0) r.checks.push_back(below("runtime [s]", r.seconds, budget[id - 1], "time budget"));
  return r;
}

VerificationReport run_acceptance(const std::vector<int>& ids) {
  VerificationReport rep;
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  for (int id : todo) rep.criteria.push_back(run_criterion(id));
  return rep;
}

CriterionResult verify_solution(const CpnSolution& sol, double tol) {
  CriterionResult c = start(0, "Solution checks: " + (sol.label().empty() ? std::string("custom") : sol.label()));
  const auto t0 = Clock::now();
  try {
    const auto pts = random_safe_points(sol, 50, kSeed, 0.05, 2.0);
    const int n = static_cast<int>(pts.size());
    c.checks.push_back(below("field equations", max_of(parallel_map(n, [&](int i) { return el_residual(sol, pts[i]); })),
                             tol, "Euler-Lagrange residual"));
    c.checks.push_back(below("conservation",
                             max_of(parallel_map(n, [&](int i) { return conservation_residual(sol, pts[i]); })), tol,
                             "dK = dbar K^dagger"));
    const Immersion im(sol);
    double loop = 0.0;
    for (int i = 0; i < 3 && i < n; ++i) {
      const Path p = Path::circle(pts[i], 0.02, 24);
      if (p.is_safe(sol.singularities())) loop = std::max(loop, closedness_residual(im, p));
    }
    c.checks.push_back(below("closedness", loop, 1e-9, "small loops"));
    std::vector<double> fc, gcr;
    for (int i = 0; i < 10 && i < n; ++i) {
      try {
        fc.push_back(frame_conditions(complete_frame(sol, pts[i])));
        gcr.push_back(gcr_residual(sol, pts[i]));
      } catch (const Error& e) {
        if (e.code() != Errc::rank_deficient && e.code() != Errc::degenerate_metric) throw;
      }
    }
    c.checks.push_back(below("frame orthonormality", max_of(fc), 1e-9, "Gram-Schmidt frame"));
    c.checks.push_back(below("GCR residual", max_of(gcr), 1e-4, "compatibility of A, B"));
    if (sol.kind() != SolutionKind::general) {
      const QuadratureResult q = topological_charge(sol);
      c.diagnostics.push_back(info("topological charge", q.value, "sphere quadrature"));
      c.diagnostics.push_back(info("total action", total_action(sol).value, "sphere quadrature"));
    }
  } catch (const Error& e) {
    c.checks.push_back({"evaluation", std::numeric_limits<double>::quiet_NaN(), 0.0, false, e.what()});
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

std::string render(const CriterionResult& c) {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s %2d  %s  (%.2f s)\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str(), c.seconds);
  os << buf;
  for (const auto& k : c.checks) {
    std::snprintf(buf, sizeof buf, "      %-4s %s = %.6g (tol %.3g)\n", k.pass ? "ok" : "MISS", k.name.c_str(), k.value,
                  k.tolerance);
    os << buf;
  }
  for (const auto& k : c.diagnostics) {
    std::snprintf(buf, sizeof buf, "      info %s = %.10g\n", k.name.c_str(), k.value);
    os << buf;
  }
  for (const auto& n : c.notes) os << "      note " << n << '\n';
  return os.str();
}

}  // namespace cpn
