#include "cpn/geometry.hpp"

#include <cmath>

namespace cpn {

namespace {

struct MetricJets {
  Jet J, q;
};

// Complex metric of the immersion itself: J = 2(dX, dX), q = 2(dX, dbarX) under the
// bilinear product, with dX = i K^dagger, dbarX = i K. j_scalars' q agrees only when dbar f = 0.
MetricJets metric_jets(const CpnSolution& sol, cplx pt, int order) {
  const JMat k = detail::k_jet(sol.jet(pt, order + 1));
  const JMat kh = k.adjoint();
  return {Jet(-2.0) * inner_bilinear(kh, kh), real_part(Jet(-2.0) * inner_bilinear(kh, k))};
}

struct Derivs {
  CMatrix dX, dbX, dd, ddb, dbdb;  // X_xi, X_xibar, X_xixi, X_xixibar, X_xibarxibar
};

Derivs derivs(const CpnSolution& sol, cplx pt) {
  const JMat k = detail::k_jet(sol.jet(pt, 2));
  const JMat kh = k.adjoint();
  return {kI * kh.value(), kI * k.value(), kI * kh.d().value(), kI * k.d().value(), kI * k.dbar().value()};
}

// Removes the part of m in the complex span of the two tangents, using the bilinear product.
CMatrix normal_part(const CMatrix& m, const CMatrix& t1, const CMatrix& t2) {
  Eigen::Matrix2cd g;
  g << inner_bilinear(t1, t1), inner_bilinear(t1, t2), inner_bilinear(t2, t1), inner_bilinear(t2, t2);
  const Eigen::Vector2cd rhs(inner_bilinear(m, t1), inner_bilinear(m, t2));
  if (std::abs(g.determinant()) < kDegenerateDet) throw Error(Errc::degenerate_metric, "tangents are dependent");
  const Eigen::Vector2cd ab = g.inverse() * rhs;
  return m - ab(0) * t1 - ab(1) * t2;
}

double det_g(const MetricSample& m) { return std::norm(m.g_xx) - m.g_xbx * m.g_xbx; }

void require_nondegenerate(const CpnSolution& sol, cplx pt) {
  const MetricSample m = metric(sol, pt);
  if (m.degenerate) throw Error(Errc::degenerate_metric, "metric determinant below threshold");
}

}  // namespace

MetricSample metric(const CpnSolution& sol, cplx pt) {
  const auto [dX, dbX] = tangents(sol, pt);
  const CMatrix x1 = dX + dbX, x2 = kI * (dX - dbX);
  MetricSample m;
  m.pt = pt;
  m.g_xx = 2.0 * inner_bilinear(dX, dX);
  m.g_xbx = 2.0 * inner_bilinear(dX, dbX).real();
  m.g_bxbx = std::conj(m.g_xx);
  m.q_scalar = j_scalars(sol, pt).q;
  m.g11 = inner(x1, x1);
  m.g12 = inner(x1, x2);
  m.g22 = inner(x2, x2);
  m.det_g = det_g(m);
  m.degenerate = std::abs(m.det_g) < kDegenerateDet;
  return m;
}

double gaussian_curvature_brioschi(const CpnSolution& sol, cplx pt) {
  require_nondegenerate(sol, pt);
  const MetricJets mj = metric_jets(sol, pt, 2);
  const Jet reJ = real_part(mj.J), imJ = real_part(-kI * mj.J);
  const Jet E = mj.q + reJ, G = mj.q - reJ, F = -imJ;
  auto dv = [](const Jet& j, int nx, int ny) { return xy_derivative(j, nx, ny).real(); };
  const double e = dv(E, 0, 0), f = dv(F, 0, 0), g = dv(G, 0, 0);
  const double Eu = dv(E, 1, 0), Ev = dv(E, 0, 1), Fu = dv(F, 1, 0), Fv = dv(F, 0, 1), Gu = dv(G, 1, 0),
               Gv = dv(G, 0, 1);
  const double Evv = dv(E, 0, 2), Fuv = dv(F, 1, 1), Guu = dv(G, 2, 0);
  Eigen::Matrix3d m1, m2;
  m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, e, f, 0.5 * Gv, f, g;
  m2 << 0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, e, f, 0.5 * Gu, f, g;
  const double w = e * g - f * f;
  return (m1.determinant() - m2.determinant()) / (w * w);
}

double gaussian_curvature(const CpnSolution& sol, cplx pt) {
  const MetricSample m = metric(sol, pt);
  if (m.degenerate) throw Error(Errc::degenerate_metric, "metric determinant below threshold");
  if (std::abs(m.g_xx) >= kConformalJ) return gaussian_curvature_brioschi(sol, pt);
  const Jet q = metric_jets(sol, pt, 2).q;
  return (-2.0 / q.value().real() * log(q).derivative(1, 1)).real();
}

SecondForm second_fundamental_form(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const Derivs d = derivs(sol, pt);
  if (std::max({max_abs(d.dd), max_abs(d.ddb), max_abs(d.dbdb)}) == 0.0) {
    const CMatrix z = CMatrix::Zero(sol.dim(), sol.dim());
    return {z, z, z};
  }
  require_nondegenerate(sol, pt);
  return {normal_part(d.dd, d.dX, d.dbX), normal_part(d.ddb, d.dX, d.dbX), normal_part(d.dbdb, d.dX, d.dbX)};
}

CurvatureSample mean_curvature(const CpnSolution& sol, cplx pt) {
  const MetricSample m = metric(sol, pt);
  if (m.degenerate) throw Error(Errc::degenerate_metric, "metric determinant below threshold");
  const SecondForm ii = second_fundamental_form(sol, pt);
  CurvatureSample c;
  c.pt = pt;
  c.K = gaussian_curvature(sol, pt);
  const CMatrix h = (m.g_xx * ii.bxbx - 2.0 * m.g_xbx * ii.xbx + m.g_bxbx * ii.xx) / m.det_g;
  c.H_vec = SuElement::project(h).mat();
  c.H_norm = std::sqrt(std::max(0.0, inner(c.H_vec, c.H_vec)));
  return c;
}

namespace {

double willmore_density(const CpnSolution& sol, cplx pt) {
  const MetricSample m = metric(sol, pt);
  if (m.degenerate) return 0.0;  // branch points and constant maps carry no area
  const CurvatureSample c = mean_curvature(sol, pt);
  return c.H_norm * c.H_norm * std::sqrt(std::max(0.0, m.g11 * m.g22 - m.g12 * m.g12));
}

}  // namespace

QuadratureResult willmore(const CpnSolution& sol, const SphereOptions& opts) {
  const CpnSolution inv = sol.inverted();
  return sphere_quadrature([&](cplx z) { return willmore_density(sol, z); },
                           [&](cplx w) { return willmore_density(inv, w); }, opts);
}

QuadratureResult topological_charge(const CpnSolution& sol, const SphereOptions& opts) {
  const CpnSolution inv = sol.inverted();
  return sphere_quadrature([&](cplx z) { return detail::charge_density_unchecked(sol, z); },
                           [&](cplx w) { return detail::charge_density_unchecked(inv, w); }, opts);
}

namespace {

PolarForms from_vectors(const RVector& xr, const RVector& xp, const RVector& xrr, const RVector& xrp,
                        const RVector& xpp) {
  Eigen::Matrix2d g;
  g << xr.dot(xr), xr.dot(xp), xp.dot(xr), xp.dot(xp);
  if (std::abs(g.determinant()) < kDegenerateDet) throw Error(Errc::degenerate_metric, "polar metric degenerate");
  const Eigen::Matrix2d gi = g.inverse();
  auto normal = [&](const RVector& v) {
    const Eigen::Vector2d c = gi * Eigen::Vector2d(v.dot(xr), v.dot(xp));
    return RVector(v - c(0) * xr - c(1) * xp);
  };
  const RVector nrr = normal(xrr), nrp = normal(xrp), npp = normal(xpp);
  RVector h = 0.5 * (gi(0, 0) * nrr + 2.0 * gi(0, 1) * nrp + gi(1, 1) * npp);
  if (h.norm() < 1e-300) h = nrr;
  const RVector n = h / h.norm();
  PolarForms p;
  p.I_rr = g(0, 0);
  p.I_rphi = g(0, 1);
  p.I_phiphi = g(1, 1);
  p.II_rr = nrr.dot(n);
  p.II_rphi = nrp.dot(n);
  p.II_phiphi = npp.dot(n);
  Eigen::Matrix2d b;
  b << p.II_rr, p.II_rphi, p.II_rphi, p.II_phiphi;
  p.K = b.determinant() / g.determinant();
  p.H = 0.5 * (gi * b).trace();
  return p;
}

}  // namespace

PolarForms polar_forms(const CpnSolution& sol, double r, double phi, const Eigen::MatrixXd& L) {
  const cplx pt = std::polar(r, phi);
  sol.require_safe(pt);
  const Derivs d = derivs(sol, pt);
  const SuBasis basis(sol.dim());
  if (L.cols() != basis.size()) throw Error(Errc::dimension_mismatch, "coordinate map size");
  auto y = [&](const CMatrix& m) { return RVector((L * coords_complex(m, basis)).real()); };
  const cplx e = std::polar(1.0, phi), e2 = e * e;
  const RVector xr = y(e * d.dX + std::conj(e) * d.dbX);
  const RVector xp = y(kI * r * (e * d.dX - std::conj(e) * d.dbX));
  const RVector xrr = y(e2 * d.dd + 2.0 * d.ddb + std::conj(e2) * d.dbdb);
  // tangential terms of the mixed and angular derivatives drop out after projection
  const RVector xrp = y(kI * r * (e2 * d.dd - std::conj(e2) * d.dbdb));
  const RVector xpp = y(-r * r * (e2 * d.dd - 2.0 * d.ddb + std::conj(e2) * d.dbdb));
  return from_vectors(xr, xp, xrr, xrp, xpp);
}

PolarForms revolution_forms(const Profile& p) {
  const double s = std::hypot(p.drho, p.dz);
  PolarForms f;
  f.I_rr = s * s;
  f.I_phiphi = p.rho * p.rho;
  f.II_rr = (p.drho * p.d2z - p.dz * p.d2rho) / s;
  f.II_phiphi = p.dz * p.rho / s;
  f.H = 0.5 * (f.II_rr / f.I_rr + f.II_phiphi / f.I_phiphi);
  if (f.H < 0) {
    f.II_rr = -f.II_rr;
    f.II_phiphi = -f.II_phiphi;
    f.H = -f.H;
  }
  f.K = f.II_rr * f.II_phiphi / (f.I_rr * f.I_phiphi);
  return f;
}

}  // namespace cpn
