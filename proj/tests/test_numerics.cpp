#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "cpn/numerics.hpp"

using namespace cpn;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto [x, w] = gauss_legendre(5, -1.0, 2.0);
  double s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 9);
  // int_{-1}^{2} x^9 = (2^10 - 1)/10
  EXPECT_NEAR(s, 1023.0 / 10.0, 1e-10);
}

TEST(IntegrateForm, ExactDifferentialIsPathIndependent) {
  // omega = d(F) with F = diag(xi^2 xibar, 0): coefficients (2 xi xibar, xi^2)
  auto omega = [](cplx z) {
    CMatrix a = CMatrix::Zero(1, 1), b = CMatrix::Zero(1, 1);
    a(0, 0) = 2.0 * z * std::conj(z);
    b(0, 0) = z * z;
    return std::make_pair(a, b);
  };
  auto F = [](cplx z) { return z * z * std::conj(z); };
  const cplx a{0.1, 0.2}, b{1.5, -0.7};
  const Path straight = Path::segment(a, b);
  const Path bent({a, cplx{-1.0, 1.0}, cplx{2.0, 2.0}, b});
  const cplx i1 = integrate_form(omega, straight)(0, 0);
  const cplx i2 = integrate_form(omega, bent)(0, 0);
  EXPECT_LT(std::abs(i1 - (F(b) - F(a))), 1e-12);
  EXPECT_LT(std::abs(i2 - (F(b) - F(a))), 1e-12);
}

TEST(IntegrateForm, NonExactLoopGivesArea) {
  // int xibar dxi around the unit square = 2i * area
  auto omega = [](cplx z) {
    CMatrix a(1, 1), b = CMatrix::Zero(1, 1);
    a(0, 0) = std::conj(z);
    return std::make_pair(a, b);
  };
  const Path sq = Path::square({0.0, 0.0}, 1.0);
  EXPECT_TRUE(sq.is_closed());
  EXPECT_LT(std::abs(integrate_form(omega, sq)(0, 0) - cplx(0.0, 2.0)), 1e-12);
}

TEST(SphereQuadrature, FubiniStudyArea) {
  // int dx dy / (1 + |xi|^2)^2 = pi
  const auto r = sphere_quadrature([](cplx z) { return 1.0 / std::pow(1.0 + std::norm(z), 2); });
  EXPECT_NEAR(r.value, M_PI, 1e-10);
  EXPECT_GT(r.radial_nodes, 0);
}

TEST(DiskQuadrature, Moments) {
  EXPECT_NEAR(disk_quadrature([](cplx) { return 1.0; }, 8), M_PI, 1e-13);
  EXPECT_NEAR(disk_quadrature([](cplx z) { return std::norm(z); }, 8), M_PI / 2, 1e-13);
}

TEST(Singularities, DistanceAndSafety) {
  Singularities s;
  s.add_point({1.0, 0.0});
  s.add_denominator(FieldExpr::xi() * FieldExpr::xibar() - 4.0);  // circle |xi| = 2
  EXPECT_NEAR(s.distance({1.0, 0.5}), 0.5, 1e-8);
  EXPECT_NEAR(s.distance({0.0, 1.8}), 0.2, 1e-6);
  EXPECT_FALSE(s.is_safe({1.0, 1e-4}));
  EXPECT_TRUE(s.is_safe({0.0, 0.0}));
  try {
    s.require_safe({2.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::singular_point);
  }
}

TEST(Path, SafetyAndComposition) {
  Singularities s;
  s.add_point({0.5, 0.0});
  EXPECT_FALSE(Path::segment(0.0, 1.0).is_safe(s));
  EXPECT_TRUE(Path::segment({0.0, 1.0}, {1.0, 1.0}).is_safe(s));
  const Path c = Path::circle(0.5, 0.2, 16);
  EXPECT_TRUE(c.is_closed());
  EXPECT_TRUE(c.is_safe(s));
  const Path p = Path::segment(0.0, kI).then(Path::segment(kI, 1.0));
  EXPECT_EQ(p.points().size(), 3u);
  EXPECT_EQ(p.reversed().front(), cplx(1.0));
}

TEST(Parallel, MapKeepsOrderAndRethrows) {
  const auto v = parallel_map(1000, [](int i) { return static_cast<double>(i); });
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(v[i], i);
  EXPECT_NEAR(pairwise_sum(v), 999.0 * 1000.0 / 2.0, 1e-9);
  std::atomic<int> n{0};
  parallel_for(257, [&](int) { ++n; });
  EXPECT_EQ(n.load(), 257);
  EXPECT_THROW(parallel_for(50, [](int i) {
                 if (i == 17) throw Error(Errc::non_convergence, "x");
               }),
               Error);
  EXPECT_GE(worker_count(), 1);
}
