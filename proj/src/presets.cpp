#include "cpn/presets.hpp"

#include <cmath>

namespace cpn {

namespace {

RationalFn poly(std::vector<cplx> c) { return RationalFn(Poly(std::move(c))); }

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"cp1-sphere", "cp1-k2", "cp1-k3", "ex1", "ex2", "ex3"};
  return names;
}

CpnSolution make_preset(const std::string& name, double a) {
  if (name == "cp1-sphere") return cp1_power(1);
  if (name == "cp1-k2") return cp1_power(2);
  if (name == "cp1-k3") return cp1_power(3);
  if (name == "ex1") return example1(a);
  if (name == "ex2") return example2();
  if (name == "ex3") return example3();
  throw Error(Errc::config, "unknown preset '" + name + "'");
}

CpnSolution cp1_power(int k) {
  if (k < 1) throw Error(Errc::invalid_input, "power must be positive");
  return make_holomorphic(1, {RationalFn::constant(1.0), RationalFn(Poly::monomial(k))},
                          k == 1 ? "cp1-sphere" : "cp1-k" + std::to_string(k));
}

CpnSolution example1(double a) {
  return make_holomorphic(2, {RationalFn::constant(1.0), poly({0.0, a}), RationalFn(Poly::monomial(2))}, "ex1");
}

CpnSolution example2() {
  return make_mixed_cp2({RationalFn::constant(1.0), RationalFn::identity(), RationalFn(Poly::monomial(2))}, "ex2");
}

CpnSolution example3() {
  const FieldExpr x = FieldExpr::xi(), xb = FieldExpr::xibar();
  return CpnSolution(2, {FieldExpr(1.0) - x * xb, x + xb, xb - x}, SolutionKind::mixed, "ex3");
}

CpnSolution nonsolution_control() {
  const FieldExpr x = FieldExpr::xi(), xb = FieldExpr::xibar();
  return make_field(1, {FieldExpr(1.0), x + 0.2 * xb}, "control");
}

namespace reference {

double example1_q(double a, cplx xi) {
  const double t = std::norm(xi), a2 = a * a;
  const double den = 1.0 + a2 * t + t * t;
  return (a2 + 4.0 * t + a2 * t * t) / (den * den);
}

double example1_K(double a, cplx xi) {
  const double t = std::norm(xi), a2 = a * a;
  const double u = 1.0 + a2 * t + t * t, v = a2 + 4.0 * t + a2 * t * t;
  return -4.0 + 8.0 * a2 * std::pow(u / v, 3);
}

Example3Forms example3_forms(double r) {
  const double r2 = r * r, r4 = r2 * r2, p = r4 + 6.0 * r2 + 1.0;
  const double c1 = 1.0 / (r2 * (1.0 + r2) * (1.0 + r2));
  const double c2 = 4.0 / ((1.0 + r2) * (1.0 + r2) * std::sqrt(p));
  return {c1 * p / r2, c1 * (r2 - 1.0) * (r2 - 1.0), c2 * (r2 + 3.0), c2 * r2 * (r2 - 1.0)};
}

double example3_K(double r) {
  const double r2 = r * r, r4 = r2 * r2, p = r4 + 6.0 * r2 + 1.0;
  return 16.0 * r4 * r4 * (r2 + 3.0) / (p * p * (r2 - 1.0));
}

double example3_H(double r) {
  const double r2 = r * r, r4 = r2 * r2, p = r4 + 6.0 * r2 + 1.0;
  return r4 * (r4 + 4.0 * r2 - 1.0) / (std::pow(p, 1.5) * (r2 - 1.0));
}

Profile example3_profile(double r) {
  if (!(r > 0.0)) throw Error(Errc::invalid_input, "radius must be positive");
  const double r2 = r * r, s = 1.0 + r2;
  const double n = -r2 * r2 + 4.0 * r2 + 1.0, dn = -4.0 * r2 * r + 8.0 * r;
  const double d = r2 * s * s, dd = 6.0 * r2 * r2 * r + 8.0 * r2 * r + 2.0 * r;
  Profile p;
  p.rho = (r2 - 1.0) / (r * s);
  p.drho = n / d;
  p.d2rho = (dn * d - n * dd) / (d * d);
  p.z = 2.0 / s;
  p.dz = -4.0 * r / (s * s);
  p.d2z = -4.0 / (s * s) + 16.0 * r2 / (s * s * s);
  return p;
}

}  // namespace reference

}  // namespace cpn
