#include <gtest/gtest.h>

#include "cpn/jet.hpp"
#include "cpn/numerics.hpp"

using namespace cpn;

namespace {

// Independent finite-difference Wirtinger derivatives of a scalar function.
cplx fd_d(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-5) { return fd_wirtinger(f, z, h).first; }
cplx fd_db(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-5) { return fd_wirtinger(f, z, h).second; }

}  // namespace

TEST(Jet, VariableAndConjugate) {
  const cplx z0{0.4, -0.7};
  const Jet x = Jet::variable(z0, 4);
  EXPECT_EQ(x.value(), z0);
  EXPECT_EQ(x.derivative(1, 0), cplx(1.0));
  EXPECT_EQ(x.derivative(0, 1), cplx(0.0));
  const Jet xb = conj(x);
  EXPECT_EQ(xb.value(), std::conj(z0));
  EXPECT_EQ(xb.derivative(0, 1), cplx(1.0));
  EXPECT_EQ(xb.derivative(1, 0), cplx(0.0));
}

TEST(Jet, ProductMatchesClosedForm) {
  // f = xi^2 xibar^3: d^a dbar^b known by hand
  const cplx z0{0.8, 0.3};
  const Jet x = Jet::variable(z0, 4);
  const Jet f = x * x * conj(x) * conj(x) * conj(x);
  const cplx zb = std::conj(z0);
  EXPECT_LT(std::abs(f.derivative(1, 0) - 2.0 * z0 * zb * zb * zb), 1e-13);
  EXPECT_LT(std::abs(f.derivative(0, 1) - 3.0 * z0 * z0 * zb * zb), 1e-13);
  EXPECT_LT(std::abs(f.derivative(1, 1) - 6.0 * z0 * zb * zb), 1e-13);
  EXPECT_LT(std::abs(f.derivative(2, 2) - 12.0 * zb), 1e-12);
  EXPECT_LT(std::abs(f.derivative(1, 3) - 12.0 * z0), 1e-12);
}

TEST(Jet, ReciprocalLogSqrtAgainstFiniteDifferences) {
  const cplx z0{0.6, 0.45};
  const Jet x = Jet::variable(z0, 4);
  const Jet u = Jet(1.0) + x * conj(x);  // 1 + |xi|^2, real and positive
  auto uf = [](cplx z) { return 1.0 + std::norm(z); };
  struct Case {
    Jet j;
    std::function<cplx(cplx)> f;
  };
  const Case cases[] = {{reciprocal(u), [&](cplx z) { return cplx(1.0 / uf(z)); }},
                        {log(u), [&](cplx z) { return cplx(std::log(uf(z))); }},
                        {sqrt(u), [&](cplx z) { return cplx(std::sqrt(uf(z))); }},
                        {(x * x + Jet(2.0)) / (conj(x) + Jet(3.0)),
                         [](cplx z) { return (z * z + 2.0) / (std::conj(z) + 3.0); }}};
  for (const auto& c : cases) {
    EXPECT_LT(std::abs(c.j.value() - c.f(z0)), 1e-14);
    EXPECT_LT(std::abs(c.j.derivative(1, 0) - fd_d(c.f, z0)), 1e-8);
    EXPECT_LT(std::abs(c.j.derivative(0, 1) - fd_db(c.f, z0)), 1e-8);
    // second order: difference the first-order jet derivative
    auto d1 = [&](cplx z) { return fd_d(c.f, z, 1e-4); };
    EXPECT_LT(std::abs(c.j.derivative(1, 1) - fd_db(d1, z0, 1e-3)), 1e-5);
  }
}

TEST(Jet, LaplacianOfLogOnePlusNorm) {
  // d dbar ln(1 + |xi|^2) = 1/(1 + |xi|^2)^2
  const cplx z0{-1.1, 0.2};
  const Jet x = Jet::variable(z0, 3);
  const Jet l = log(Jet(1.0) + x * conj(x));
  const double u = 1.0 + std::norm(z0);
  EXPECT_LT(std::abs(l.derivative(1, 1) - 1.0 / (u * u)), 1e-14);
}

TEST(Jet, RealDerivatives) {
  // g = x^2 y + y^3 with xi = x + i y
  const cplx z0{0.5, -0.25};
  const Jet x = Jet::variable(z0, 4);
  const Jet X = real_part(x);
  const Jet Y = (x - conj(x)) * Jet(cplx{0, -0.5});
  const Jet g = X * X * Y + Y * Y * Y;
  const double a = z0.real(), b = z0.imag();
  EXPECT_NEAR(xy_derivative(g, 1, 0).real(), 2 * a * b, 1e-13);
  EXPECT_NEAR(xy_derivative(g, 0, 1).real(), a * a + 3 * b * b, 1e-13);
  EXPECT_NEAR(xy_derivative(g, 1, 1).real(), 2 * a, 1e-13);
  EXPECT_NEAR(xy_derivative(g, 0, 2).real(), 6 * b, 1e-13);
  EXPECT_NEAR(xy_derivative(g, 2, 0).real(), 2 * b, 1e-13);
  EXPECT_NEAR(xy_derivative(g, 0, 3).real(), 6.0, 1e-12);
}

TEST(Jet, DerivativeShiftsOrder) {
  const Jet x = Jet::variable({0.1, 0.2}, 4);
  const Jet f = x * x * x * conj(x);
  const Jet df = f.d();
  EXPECT_EQ(df.order(), 3);
  EXPECT_LT(std::abs(df.derivative(1, 1) - f.derivative(2, 1)), 1e-14);
  EXPECT_LT(std::abs(f.dbar().derivative(0, 0) - f.derivative(0, 1)), 1e-14);
}

TEST(JMat, AdjointTraceAndProduct) {
  const Jet x = Jet::variable({0.3, 0.9}, 3);
  JVec u{Jet(1.0), x}, v{x * x, Jet(2.0)};
  const JMat m = JMat::outer(u, v);
  const CMatrix mv = m.value();
  CVector uv(2), vv(2);
  uv << 1.0, x.value();
  vv << x.value() * x.value(), 2.0;
  EXPECT_LT(max_abs(mv - uv * vv.adjoint()), 1e-15);
  EXPECT_LT(max_abs(m.adjoint().value() - mv.adjoint()), 1e-15);
  EXPECT_LT(std::abs(m.trace().value() - mv.trace()), 1e-15);
  EXPECT_LT(max_abs((m * m).value() - mv * mv), 1e-14);
  // derivative of the product obeys Leibniz
  const CMatrix lhs = (m * m).derivative(1, 0);
  const CMatrix rhs = m.derivative(1, 0) * mv + mv * m.derivative(1, 0);
  EXPECT_LT(max_abs(lhs - rhs), 1e-14);
}
