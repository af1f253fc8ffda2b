#include "cpn/frames.hpp"

#include <algorithm>
#include <cmath>

namespace cpn {

namespace {

constexpr double kDropTol = 1e-8;

struct JetFrame {
  JMat dX, dbX;
  std::vector<JMat> normals;
  std::vector<int> pivots;
  JMat K;
};

bool tangents_vanish(const CpnSolution& sol, cplx pt) { return max_abs(k_matrix(sol, pt).K) < 1e-14; }

JetFrame jet_frame(const CpnSolution& sol, cplx pt, const std::vector<int>* pivots) {
  sol.require_safe(pt);
  JetFrame fr;
  fr.K = detail::k_jet(sol.jet(pt, 2));
  fr.dX = Jet(kI) * fr.K.adjoint();
  fr.dbX = Jet(kI) * fr.K;
  std::vector<JMat> done;
  auto reduce = [&](JMat v) {
    for (const JMat& e : done) v -= inner(v, e) * e;
    return v;
  };
  for (const JMat& t : {fr.dX + fr.dbX, Jet(kI) * (fr.dX - fr.dbX)}) {
    const JMat v = reduce(t);
    const Jet n2 = inner(v, v);
    if (std::sqrt(std::max(0.0, n2.value().real())) < kDropTol)
      throw Error(Errc::rank_deficient, "immersion tangents are dependent");
    done.push_back(reciprocal(sqrt(n2)) * v);
  }
  const SuBasis basis(sol.dim());
  for (int i = 0; i < basis.size(); ++i) {
    const bool wanted = pivots && std::find(pivots->begin(), pivots->end(), i) != pivots->end();
    if (pivots && !wanted) continue;
    const JMat v = reduce(JMat::constant(basis[i].mat()));
    const Jet n2 = inner(v, v);
    const double n = std::sqrt(std::max(0.0, n2.value().real()));
    if (n < kDropTol) {
      if (pivots) throw Error(Errc::frame_discontinuity, "Gram-Schmidt pivot collapsed");
      continue;
    }
    done.push_back(reciprocal(sqrt(n2)) * v);
    fr.normals.push_back(done.back());
    fr.pivots.push_back(i);
  }
  if (static_cast<int>(fr.normals.size()) != basis.size() - 2)
    throw Error(Errc::rank_deficient, "could not complete the frame");
  return fr;
}

FrameState to_state(const JetFrame& jf, cplx pt) {
  FrameState s;
  s.pt = pt;
  s.dX = jf.dX.value();
  s.dbX = jf.dbX.value();
  for (const JMat& n : jf.normals) s.normals.push_back(SuElement::project(n.value()));
  s.pivots = jf.pivots;
  return s;
}

// Rows: tangential coefficients (alpha, beta) with alpha (dX, w) ... solved from
// (m, dX) = alpha J + beta q, (m, dbarX) = alpha q + beta Jbar in bilinear units.
Eigen::Vector2cd tangent_coeffs(const Eigen::Matrix2cd& gram_inv, cplx with_dx, cplx with_dbx) {
  return gram_inv * Eigen::Vector2cd(with_dx, with_dbx);
}

GWMatrices gw_from_jets(const JetFrame& jf) {
  const CMatrix dX = jf.dX.value(), dbX = jf.dbX.value();
  const CMatrix dd = (Jet(kI) * jf.K.adjoint().d()).value();
  const CMatrix ddb = (Jet(kI) * jf.K.d()).value();
  const CMatrix dbdb = (Jet(kI) * jf.K.dbar()).value();
  Eigen::Matrix2cd g;
  g << inner_bilinear(dX, dX), inner_bilinear(dX, dbX), inner_bilinear(dbX, dX), inner_bilinear(dbX, dbX);
  if (std::abs(g.determinant()) < kDegenerateDet) throw Error(Errc::degenerate_metric, "tangent Gram matrix singular");
  const Eigen::Matrix2cd gi = g.inverse();
  const int m = static_cast<int>(jf.normals.size()) + 2;
  GWMatrices gw{CMatrix::Zero(m, m), CMatrix::Zero(m, m)};
  std::vector<CMatrix> eta, deta, dbeta;
  for (const JMat& n : jf.normals) {
    eta.push_back(n.value());
    deta.push_back(n.d().value());
    dbeta.push_back(n.dbar().value());
  }
  const Eigen::Vector2cd a1 = tangent_coeffs(gi, inner_bilinear(dd, dX), inner_bilinear(dd, dbX));
  const Eigen::Vector2cd a2 = tangent_coeffs(gi, inner_bilinear(dbdb, dX), inner_bilinear(dbdb, dbX));
  gw.A(0, 0) = a1(0);
  gw.A(0, 1) = a1(1);
  gw.B(1, 0) = a2(0);
  gw.B(1, 1) = a2(1);
  for (int k = 0; k + 2 < m; ++k) {
    const cplx Jk = inner_bilinear(dd, eta[k]), Hk = inner_bilinear(ddb, eta[k]), Jbk = inner_bilinear(dbdb, eta[k]);
    gw.A(0, k + 2) = Jk;
    gw.A(1, k + 2) = Hk;
    gw.B(0, k + 2) = Hk;
    gw.B(1, k + 2) = Jbk;
    const Eigen::Vector2cd al = tangent_coeffs(gi, -Jk, -Hk);
    const Eigen::Vector2cd be = tangent_coeffs(gi, -Hk, -Jbk);
    gw.A(k + 2, 0) = al(0);
    gw.A(k + 2, 1) = al(1);
    gw.B(k + 2, 0) = be(0);
    gw.B(k + 2, 1) = be(1);
    for (int l = 0; l + 2 < m; ++l) {
      gw.A(k + 2, l + 2) = inner_bilinear(deta[k], eta[l]);
      gw.B(k + 2, l + 2) = inner_bilinear(dbeta[k], eta[l]);
    }
  }
  return gw;
}

std::vector<CMatrix> frame_vectors(const FrameState& f) {
  std::vector<CMatrix> v{f.dX, f.dbX};
  for (const auto& n : f.normals) v.push_back(n.mat());
  return v;
}

}  // namespace

FrameState complete_frame(const CpnSolution& sol, cplx pt, const std::vector<int>* pivots) {
  return to_state(jet_frame(sol, pt, pivots), pt);
}

double frame_conditions(const FrameState& frame) {
  double r = 0.0;
  const size_t m = frame.normals.size();
  for (size_t j = 0; j < m; ++j) {
    const CMatrix& ej = frame.normals[j].mat();
    r = std::max({r, std::abs(inner_bilinear(frame.dX, ej)), std::abs(inner_bilinear(frame.dbX, ej))});
    for (size_t k = 0; k < m; ++k) r = std::max(r, std::abs(inner(ej, frame.normals[k].mat()) - (j == k ? 1.0 : 0.0)));
  }
  return r;
}

GWMatrices gauss_weingarten(const CpnSolution& sol, cplx pt, const FrameState& frame) {
  if (tangents_vanish(sol, pt)) {
    const int m = sol.dim() * sol.dim() - 1;
    return {CMatrix::Zero(m, m), CMatrix::Zero(m, m)};
  }
  return gw_from_jets(jet_frame(sol, pt, &frame.pivots));
}

double gw_defining_residual(const CpnSolution& sol, cplx pt, double h) {
  const FrameState c = complete_frame(sol, pt);
  const GWMatrices gw = gauss_weingarten(sol, pt, c);
  auto at = [&](cplx z) { return frame_vectors(complete_frame(sol, z, &c.pivots)); };
  const auto xp = at(pt + h), xm = at(pt - h), yp = at(pt + kI * h), ym = at(pt - kI * h);
  const auto eta = frame_vectors(c);
  double r = 0.0;
  for (size_t i = 0; i < eta.size(); ++i) {
    const CMatrix dx = (xp[i] - xm[i]) / (2.0 * h), dy = (yp[i] - ym[i]) / (2.0 * h);
    const CMatrix d = 0.5 * (dx - kI * dy), db = 0.5 * (dx + kI * dy);
    CMatrix ad = CMatrix::Zero(sol.dim(), sol.dim()), bd = ad;
    for (size_t l = 0; l < eta.size(); ++l) {
      ad += gw.A(i, l) * eta[l];
      bd += gw.B(i, l) * eta[l];
    }
    const double scale = std::max({1.0, max_abs(d), max_abs(db)});
    r = std::max({r, max_abs(d - ad) / scale, max_abs(db - bd) / scale});
  }
  return r;
}

double gcr_residual(const CpnSolution& sol, cplx pt, double h) {
  sol.require_safe(pt);
  if (tangents_vanish(sol, pt)) return 0.0;
  const JetFrame center = jet_frame(sol, pt, nullptr);
  // the whole stencil shares the center's pivots so the frame is one smooth field
  auto gw = [&](cplx z) { return gw_from_jets(jet_frame(sol, z, &center.pivots)); };
  const GWMatrices c = gw_from_jets(center);
  // fourth-order central stencil
  auto diff = [&](cplx dir) {
    const GWMatrices p1 = gw(pt + dir * h), m1 = gw(pt - dir * h), p2 = gw(pt + 2.0 * dir * h), m2 = gw(pt - 2.0 * dir * h);
    return GWMatrices{(8.0 * (p1.A - m1.A) - (p2.A - m2.A)) / (12.0 * h), (8.0 * (p1.B - m1.B) - (p2.B - m2.B)) / (12.0 * h)};
  };
  const GWMatrices x = diff(1.0), y = diff(kI);
  const CMatrix &Ax = x.A, &Ay = y.A, &Bx = x.B, &By = y.B;
  const CMatrix dbA = 0.5 * (Ax + kI * Ay), dB = 0.5 * (Bx - kI * By);
  return max_abs(dbA - dB + c.A * c.B - c.B * c.A);
}

Cp2Frame cp2_frame(const CpnSolution& sol, cplx pt) {
  if (sol.n() != 2 || sol.kind() != SolutionKind::holomorphic)
    throw Error(Errc::invalid_input, "the closed-form frame needs a holomorphic CP^2 solution");
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 1);
  if (std::abs(f[0].value()) < 1e-12) throw Error(Errc::singular_point, "f_0 vanishes; affine chart undefined");
  const Jet inv = reciprocal(f[0]);
  const Jet w1 = f[1] * inv, w2 = f[2] * inv;
  const cplx W1 = w1.value(), W2 = w2.value(), dW1 = w1.derivative(1, 0), dW2 = w2.derivative(1, 0);
  const double A = 1.0 + std::norm(W1) + std::norm(W2);
  const double q = j_scalars(sol, pt).q;
  const double r = A * std::sqrt(std::max(0.0, q));
  if (r < 1e-14) throw Error(Errc::degenerate_metric, "r vanishes");
  const cplx d1 = (1.0 + std::norm(W2)) * dW1 - W1 * std::conj(W2) * dW2;
  const cplx d2 = (1.0 + std::norm(W1)) * dW2 - std::conj(W1) * W2 * dW1;
  const double sa = std::sqrt(A);
  Cp2Frame out;
  CMatrix phi(3, 3);
  phi << 1.0 / sa, std::conj(W1) / sa, std::conj(W2) / sa,
      kI / (r * sa) * (W1 * std::conj(dW1) + W2 * std::conj(dW2)), -kI / (r * sa) * std::conj(d1),
      -kI / (r * sa) * std::conj(d2),
      kI / r * (W1 * dW2 - W2 * dW1), -kI / r * dW2, kI / r * dW1;
  out.Phi = phi;
  out.Phi_reference = phi;
  out.Phi_reference(1, 0) = kI / (r * sa) * (W1 * dW1 + W2 * dW2);
  const CMatrix id = CMatrix::Identity(3, 3);
  out.unitarity_defect = max_abs(phi.adjoint() * phi - id);
  out.det_defect = std::abs(phi.determinant() - 1.0);
  out.reference_unitarity_defect = max_abs(out.Phi_reference.adjoint() * out.Phi_reference - id);

  CMatrix ym = CMatrix::Zero(3, 3), yp = CMatrix::Zero(3, 3);
  ym(1, 0) = 1.0;
  yp(0, 1) = 1.0;
  const auto [dX, dbX] = tangents(sol, pt);
  const cplx eu2 = -std::sqrt(q);  // e^{u/2}; the phase is fixed by matching dX
  out.tangent_d_residual = max_abs(dX - eu2 * phi.adjoint() * ym * phi);
  out.tangent_dbar_residual = max_abs(dbX - std::conj(eu2) * phi.adjoint() * yp * phi);

  FrameState& fr = out.frame;
  fr.pt = pt;
  fr.dX = dX;
  fr.dbX = dbX;
  const SuBasis basis(3);
  for (int i = 2; i < 8; ++i) {
    const CMatrix s = basis[i].mat() / std::sqrt(inner(basis[i], basis[i]));
    fr.normals.push_back(SuElement::project(phi.adjoint() * s * phi));
    fr.pivots.push_back(i);
  }
  out.normal_conditions = frame_conditions(fr);
  return out;
}

Su3Factors decompose_su3(const CMatrix& g) {
  if (g.rows() != 3 || g.cols() != 3) throw Error(Errc::dimension_mismatch, "decompose_su3 needs a 3x3 matrix");
  if (max_abs(g.adjoint() * g - CMatrix::Identity(3, 3)) > 1e-10 || std::abs(g.determinant() - 1.0) > 1e-10)
    throw Error(Errc::invalid_input, "input is not special unitary");
  Su3Factors f;
  const double c = std::min(1.0, std::abs(g(0, 0)));
  f.theta = std::acos(c);
  const double s = std::sin(f.theta);
  f.mu = g(0, 0) == cplx{} ? cplx{1.0, 0.0} : std::polar(1.0, 0.5 * std::arg(g(0, 0)));
  const cplx mu2 = f.mu * f.mu;
  CMatrix mid = CMatrix::Identity(3, 3);
  mid(0, 0) = mu2 * c;
  mid(0, 1) = -s;
  mid(1, 0) = s;
  mid(1, 1) = c / mu2;
  if (s < 1e-12) {
    f.A1 = CMatrix::Identity(2, 2);
    CMatrix d = CMatrix::Identity(2, 2);
    d(0, 0) = mu2;
    f.A2 = d * g.block(1, 1, 2, 2);
    return f;
  }
  const cplx a1 = g(1, 0) / s, mb1 = g(2, 0) / s;  // (a1, -conj(b1))
  const cplx b1 = -std::conj(mb1);
  f.A1.resize(2, 2);
  f.A1 << a1, b1, -std::conj(b1), std::conj(a1);
  CMatrix e1 = CMatrix::Identity(3, 3);
  e1.block(1, 1, 2, 2) = f.A1;
  // the remainder is diag(1, A2) exactly; taking it from the product keeps the recomposition exact
  f.A2 = (mid.adjoint() * e1.adjoint() * g).block(1, 1, 2, 2);
  return f;
}

CMatrix recompose(const Su3Factors& f) {
  CMatrix e1 = CMatrix::Identity(3, 3), e2 = CMatrix::Identity(3, 3), mid = CMatrix::Identity(3, 3);
  e1.block(1, 1, 2, 2) = f.A1;
  e2.block(1, 1, 2, 2) = f.A2;
  const cplx mu2 = f.mu * f.mu;
  const double c = std::cos(f.theta), s = std::sin(f.theta);
  mid(0, 0) = mu2 * c;
  mid(0, 1) = -s;
  mid(1, 0) = s;
  mid(1, 1) = c / mu2;
  return e1 * mid * e2;
}

CMatrix random_special_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix rr = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const cplx d = rr(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  const cplx det = q.determinant();
  q *= std::pow(det, -1.0 / dim);
  return q;
}

}  // namespace cpn
