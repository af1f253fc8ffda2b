#include "cpn/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cpn {

const char* kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::holomorphic: return "holomorphic";
    case SolutionKind::antiholomorphic: return "antiholomorphic";
    case SolutionKind::mixed: return "mixed";
    case SolutionKind::general: return "general";
  }
  return "?";
}

namespace detail {

Jet dot(const JVec& a, const JVec& b) {
  Jet s(0.0);
  for (size_t i = 0; i < a.size(); ++i) s += conj(a[i]) * b[i];
  return s;
}

JVec d(const JVec& v) {
  JVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.d());
  return r;
}

JVec dbar(const JVec& v) {
  JVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.dbar());
  return r;
}

JMat projector_jet(const JVec& f) {
  const Jet inv = reciprocal(dot(f, f));
  return JMat::identity(static_cast<int>(f.size())) - inv * JMat::outer(f, f);
}

JMat k_jet(const JVec& f) {
  const JVec df = d(f), dbf = dbar(f);
  const Jet n = dot(f, f);
  const Jet inv = reciprocal(n);
  JMat k = inv * (JMat::outer(dbf, f) - JMat::outer(f, df));
  k += (inv * inv * (dot(df, f) - dot(f, dbf))) * JMat::outer(f, f);
  return k;
}

Jet projected_pairing(const JVec& f, const JVec& a, const JVec& b) {
  Jet s(0.0);
  const size_t m = f.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const Jet wa = f[i] * a[j] - f[j] * a[i];
      const Jet wb = f[i] * b[j] - f[j] * b[i];
      s += conj(wa) * wb;
    }
  const Jet n = dot(f, f);
  return s * reciprocal(n * n);
}

}  // namespace detail

using detail::dot;

CpnSolution::CpnSolution(int n, std::vector<FieldExpr> f, SolutionKind kind, std::string label)
    : CpnSolution(n, std::move(f), kind, std::move(label), Unchecked{}) {
  validate();
}

CpnSolution::CpnSolution(int n, std::vector<FieldExpr> f, SolutionKind kind, std::string label, Unchecked)
    : n_(n), f_(std::move(f)), kind_(kind), label_(std::move(label)) {
  if (n_ < 1) throw Error(Errc::invalid_input, "model index must be at least 1");
  if (static_cast<int>(f_.size()) != n_ + 1)
    throw Error(Errc::dimension_mismatch, "field needs n+1 homogeneous components");
  if (std::all_of(f_.begin(), f_.end(), [](const FieldExpr& e) { return e.is_zero(); }))
    throw Error(Errc::invalid_input, "field is identically zero");
  sing_ = Singularities::of(f_);
}

void CpnSolution::validate() const {
  if (kind_ == SolutionKind::general) return;
  const auto pts = random_safe_points(*this, 50, 20240531u, 0.05, 2.0);
  double worst = 0.0;
  for (cplx p : pts) worst = std::max(worst, el_residual(*this, p));
  if (!(worst < 1e-8)) {
    std::ostringstream os;
    os << "field does not solve the CP^" << n_ << " equations (residual " << worst << ")";
    throw Error(Errc::invalid_input, os.str());
  }
}

JVec CpnSolution::jet(cplx pt, int order) const {
  JVec v;
  v.reserve(f_.size());
  for (const auto& e : f_) v.push_back(e.jet(pt, order));
  return v;
}

CVector CpnSolution::value(cplx pt) const {
  CVector v(dim());
  for (int i = 0; i < dim(); ++i) v(i) = f_[i](pt);
  return v;
}

bool CpnSolution::is_safe(cplx pt) const {
  if (!std::isfinite(pt.real()) || !std::isfinite(pt.imag())) return false;
  if (!sing_.is_safe(pt)) return false;
  const CVector v = value(pt);
  return v.allFinite() && v.norm() > 1e-10;
}

void CpnSolution::require_safe(cplx pt) const {
  sing_.require_safe(pt);
  const CVector v = value(pt);
  if (!v.allFinite() || v.norm() <= 1e-10) {
    std::ostringstream os;
    os << "field vanishes or is undefined at (" << pt.real() << ", " << pt.imag() << ")";
    throw Error(Errc::singular_point, os.str());
  }
}

CpnSolution CpnSolution::inverted() const {
  std::vector<FieldExpr> g;
  for (const auto& e : f_) g.push_back(e.map_leaves([](const RationalFn& r) { return r.inverted_argument(); }));
  return CpnSolution(n_, std::move(g), kind_, label_ + " (inverted chart)", Unchecked{});
}

CpnSolution CpnSolution::rescaled(cplx s) const {
  std::vector<FieldExpr> g;
  for (const auto& e : f_) g.push_back(e.map_leaves([s](const RationalFn& r) { return r.scaled_argument(s); }));
  return CpnSolution(n_, std::move(g), kind_, label_, Unchecked{});
}

CpnSolution CpnSolution::rotated(const CMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) throw Error(Errc::dimension_mismatch, "rotation size");
  if (max_abs(u.adjoint() * u - CMatrix::Identity(dim(), dim())) > 1e-10)
    throw Error(Errc::invalid_input, "rotation is not unitary");
  std::vector<FieldExpr> g(f_.size(), FieldExpr(0.0));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (u(i, j) != cplx{}) g[i] = g[i] + FieldExpr(u(i, j)) * f_[j];
  return CpnSolution(n_, std::move(g), kind_, label_, Unchecked{});
}

namespace {

// Clears denominators and strips the common polynomial factor.
std::vector<Poly> homogeneous_polys(const std::vector<RationalFn>& comps) {
  std::vector<Poly> out;
  for (size_t i = 0; i < comps.size(); ++i) {
    Poly p = comps[i].num();
    for (size_t j = 0; j < comps.size(); ++j)
      if (j != i) p = p * comps[j].den();
    out.push_back(p);
  }
  Poly g;
  for (const auto& p : out) g = gcd(g, p);
  if (g.degree() > 0)
    for (auto& p : out) p = divmod(p, g, 1e-10).first;
  double scale = 0.0;
  for (const auto& p : out) scale = std::max(scale, p.max_abs_coeff());
  for (auto& p : out) p = cplx{1.0 / scale, 0.0} * p;
  return out;
}

void check_components(int n, const std::vector<RationalFn>& comps) {
  if (static_cast<int>(comps.size()) != n + 1)
    throw Error(Errc::dimension_mismatch, "expected n+1 components");
  if (std::all_of(comps.begin(), comps.end(), [](const RationalFn& r) { return r.is_zero(); }))
    throw Error(Errc::invalid_input, "all components are zero");
}

}  // namespace

CpnSolution make_holomorphic(int n, const std::vector<RationalFn>& components, std::string label) {
  check_components(n, components);
  std::vector<FieldExpr> f;
  for (const auto& p : homogeneous_polys(components)) f.push_back(FieldExpr::holo(RationalFn(p)));
  return CpnSolution(n, std::move(f), SolutionKind::holomorphic, std::move(label));
}

CpnSolution make_antiholomorphic(int n, const std::vector<RationalFn>& components, std::string label) {
  check_components(n, components);
  std::vector<FieldExpr> f;
  for (const auto& p : homogeneous_polys(components)) f.push_back(FieldExpr::antiholo(RationalFn(p)));
  return CpnSolution(n, std::move(f), SolutionKind::antiholomorphic, std::move(label));
}

CpnSolution make_mixed_cp2(const std::vector<RationalFn>& g, std::string label) {
  if (g.size() != 3) throw Error(Errc::dimension_mismatch, "mixed construction needs three generators");
  RationalFn w[3][3];
  bool any = false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      w[i][j] = g[i] * g[j].derivative() - g[j] * g[i].derivative();
      if (i != j && !w[i][j].is_zero()) any = true;
    }
  if (!any) throw Error(Errc::invalid_input, "generators are proportional: all Wronskians vanish");
  std::vector<FieldExpr> f;
  for (int i = 0; i < 3; ++i) {
    FieldExpr s(0.0);
    for (int k = 0; k < 3; ++k)
      if (k != i) s = s + FieldExpr::antiholo(g[k]) * FieldExpr::holo(w[k][i]);
    f.push_back(s);
  }
  return CpnSolution(2, std::move(f), SolutionKind::mixed, std::move(label));
}

CpnSolution make_field(int n, std::vector<FieldExpr> f, std::string label) {
  return CpnSolution(n, std::move(f), SolutionKind::general, std::move(label));
}

ProjectorSample projector(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const CVector f = sol.value(pt);
  const CMatrix p = CMatrix::Identity(sol.dim(), sol.dim()) - f * f.adjoint() / f.squaredNorm();
  return {pt, p};
}

KSample k_matrix(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 1);
  const CMatrix k = detail::k_jet(f).value();
  const JMat p = detail::projector_jet(f);
  const JMat pd = p.dbar();
  const CMatrix comm = (pd * p - p * pd).value();
  return {pt, k, max_abs(k - comm)};
}

CMatrix k_matrix_cp2_closed(const CpnSolution& sol, cplx pt) {
  if (sol.n() != 2) throw Error(Errc::invalid_input, "closed-form K needs n = 2");
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 1);
  if (std::abs(f[0].value()) < 1e-12) throw Error(Errc::singular_point, "f_0 vanishes; affine chart undefined");
  const Jet inv0 = reciprocal(f[0]);
  const Jet w1 = f[1] * inv0, w2 = f[2] * inv0;
  const Jet c1 = conj(w1), c2 = conj(w2);
  const cplx W1 = w1.value(), W2 = w2.value(), C1 = c1.value(), C2 = c2.value();
  const cplx dW1 = w1.derivative(1, 0), dW2 = w2.derivative(1, 0);
  const cplx dC1 = c1.derivative(1, 0), dC2 = c2.derivative(1, 0);
  const cplx bW1 = w1.derivative(0, 1), bW2 = w2.derivative(0, 1);
  const cplx bC1 = c1.derivative(0, 1), bC2 = c2.derivative(0, 1);
  const double a = 1.0 + std::norm(W1) + std::norm(W2);
  const cplx rho = C1 * dW1 - W1 * dC1 + C2 * dW2 - W2 * dC2;
  CMatrix m1(3, 3), m2(3, 3);
  m1 << 0.0, -bC1, -bC2, bW1, C1 * bW1 - W1 * bC1, C2 * bW1 - W1 * bC2, bW2, C1 * bW2 - W2 * bC1,
      C2 * bW2 - W2 * bC2;
  m2 << 1.0, C1, C2, W1, W1 * C1, W1 * C2, W2, C1 * W2, W2 * C2;
  return m1 / a + std::conj(rho) / (a * a) * m2;
}

double el_residual(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JVec fj = sol.jet(pt, 2);
  const int m = sol.dim();
  CVector f(m), df(m), dbf(m), ddb(m);
  for (int i = 0; i < m; ++i) {
    f(i) = fj[i].value();
    df(i) = fj[i].derivative(1, 0);
    dbf(i) = fj[i].derivative(0, 1);
    ddb(i) = fj[i].derivative(1, 1);
  }
  const double n2 = f.squaredNorm();
  const CVector v = ddb - (f.dot(dbf) * df + f.dot(df) * dbf) / n2;
  const CVector pv = v - f * (f.dot(v) / n2);
  return pv.cwiseAbs().maxCoeff() / std::sqrt(n2);
}

double el_residual_affine(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JVec fj = sol.jet(pt, 2);
  int k = 0;
  for (int i = 1; i < sol.dim(); ++i)
    if (std::abs(fj[i].value()) > std::abs(fj[k].value())) k = i;
  const Jet inv = reciprocal(fj[k]);
  JVec w;
  for (int i = 0; i < sol.dim(); ++i)
    if (i != k) w.push_back(fj[i] * inv);
  double a = 1.0;
  for (const auto& x : w) a += std::norm(x.value());
  double worst = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    cplx r = w[i].derivative(1, 1);
    for (size_t j = 0; j < w.size(); ++j)
      r -= std::conj(w[j].value()) *
           (w[i].derivative(1, 0) * w[j].derivative(0, 1) + w[i].derivative(0, 1) * w[j].derivative(1, 0)) / a;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double conservation_residual(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JMat k = detail::k_jet(sol.jet(pt, 2));
  const CMatrix dk = k.d().value();
  const CMatrix dbkh = k.adjoint().dbar().value();
  return std::max(max_abs(dk - dbkh), max_abs(dk - dk.adjoint()));
}

JScalars j_scalars(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 1);
  const JVec df = detail::d(f), dbf = detail::dbar(f);
  JScalars s;
  s.J = detail::projected_pairing(f, dbf, df).value();
  s.Jbar = detail::projected_pairing(f, df, dbf).value();
  const cplx q = detail::projected_pairing(f, df, df).value();
  s.q = q.real();
  s.q_imag = q.imag();
  return s;
}

cplx dbar_j(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 2);
  return detail::projected_pairing(f, detail::dbar(f), detail::d(f)).derivative(0, 1);
}

namespace {

// |P dbar f|^2/|f|^2 and |P d f|^2/|f|^2 without safety checks.
std::pair<double, double> pairings(const CpnSolution& sol, cplx pt) {
  const JVec f = sol.jet(pt, 1);
  const JVec df = detail::d(f), dbf = detail::dbar(f);
  return {detail::projected_pairing(f, dbf, dbf).value().real(), detail::projected_pairing(f, df, df).value().real()};
}

}  // namespace

double action_density(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  const auto [a, b] = pairings(sol, pt);
  return 0.25 * (a + b);
}

double charge_density(const CpnSolution& sol, cplx pt) {
  sol.require_safe(pt);
  return detail::charge_density_unchecked(sol, pt);
}

double detail::charge_density_unchecked(const CpnSolution& sol, cplx pt) {
  const auto [a, b] = pairings(sol, pt);
  return (a - b) / M_PI;
}

QuadratureResult total_action(const CpnSolution& sol, const SphereOptions& opts) {
  const CpnSolution inv = sol.inverted();
  auto dens = [](const CpnSolution& s) {
    return [&s](cplx pt) {
      const auto [a, b] = pairings(s, pt);
      return 2.0 * (a + b);
    };
  };
  return sphere_quadrature(dens(sol), dens(inv), opts);
}

std::vector<cplx> random_safe_points(const CpnSolution& sol, int count, unsigned seed, double rmin, double rmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(rmin, rmax), ut(0.0, 2.0 * M_PI);
  std::vector<cplx> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100 * count + 1000) throw Error(Errc::singular_point, "could not find enough safe sample points");
    const cplx p = std::polar(ur(rng), ut(rng));
    if (sol.is_safe(p)) out.push_back(p);
  }
  return out;
}

}  // namespace cpn
