#include <gtest/gtest.h>

#include <random>

#include "cpn/linalg.hpp"

using namespace cpn;

namespace {

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = {g(rng), g(rng)};
  return m;
}

}  // namespace

TEST(SuElement, RejectsHermitian) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = 1.0;
  try {
    SuElement e(h);
    FAIL() << "accepted a Hermitian matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_in_algebra);
  }
}

TEST(SuElement, RejectsTrace) {
  CMatrix m = CMatrix::Identity(3, 3) * kI;
  EXPECT_THROW(SuElement{m}, Error);
}

TEST(SuElement, ProjectIsSkewHermitianTraceless) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const CMatrix p = SuElement::project(random_matrix(n, rng)).mat();
    EXPECT_LT(max_abs(p + p.adjoint()), 1e-14);
    EXPECT_LT(std::abs(p.trace()), 1e-14);
    // projecting twice changes nothing
    EXPECT_LT(max_abs(SuElement::project(p).mat() - p), 1e-14);
  }
}

TEST(SuBasis, SizeAndOrthogonality) {
  for (int n = 2; n <= 5; ++n) {
    SuBasis b(n);
    ASSERT_EQ(b.size(), n * n - 1);
    for (int i = 0; i < b.size(); ++i)
      for (int k = 0; k < b.size(); ++k) {
        // direct trace formula as oracle
        const double ip = -0.5 * (b[i].mat() * b[k].mat()).trace().real();
        EXPECT_NEAR(inner(b[i], b[k]), ip, 1e-14);
        if (i != k) EXPECT_NEAR(ip, 0.0, 1e-14);
        else EXPECT_GT(ip, 0.1);
      }
  }
}

TEST(SuBasis, CoordinatesRoundTrip) {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    SuBasis b(n);
    const SuElement x = SuElement::project(random_matrix(n, rng));
    const RVector c = coords(x, b);
    EXPECT_LT(max_abs(from_coords(c, b).mat() - x.mat()), 1e-13);
    // complexified: m = a + i b
    const SuElement y = SuElement::project(random_matrix(n, rng));
    const CMatrix m = x.mat() + kI * y.mat();
    const CVector cc = coords_complex(m, b);
    EXPECT_LT((cc.real() - c).norm(), 1e-13);
    EXPECT_LT((cc.imag() - coords(y, b)).norm(), 1e-13);
    EXPECT_LT(max_abs(from_coords_complex(cc, b) - m), 1e-13);
  }
}

TEST(SuBasis, Su3BasisIsStandardBasis) {
  const auto s = standard_basis_matrices(3);
  SuBasis b(3);
  ASSERT_EQ(s.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_LT(max_abs(s[i] - b[i].mat()), 1e-15);
}

TEST(Inner, BilinearExtendsReal) {
  std::mt19937_64 rng(11);
  const SuElement x = SuElement::project(random_matrix(3, rng));
  const SuElement y = SuElement::project(random_matrix(3, rng));
  EXPECT_NEAR(inner_bilinear(x.mat(), y.mat()).real(), inner(x, y), 1e-14);
  EXPECT_NEAR(inner_bilinear(x.mat(), y.mat()).imag(), 0.0, 1e-14);
  // complex bilinearity
  const cplx s{0.3, -1.2};
  EXPECT_LT(std::abs(inner_bilinear(s * x.mat(), y.mat()) - s * inner_bilinear(x.mat(), y.mat())), 1e-13);
  // positive on su(n)
  EXPECT_GT(inner(x, x), 0.0);
}

TEST(Inner, KillingIsScaledTrace) {
  std::mt19937_64 rng(5);
  const int n = 3;
  const SuElement x = SuElement::project(random_matrix(n, rng));
  const SuElement y = SuElement::project(random_matrix(n, rng));
  // Killing form of su(n) is 2n tr(xy)
  EXPECT_NEAR(killing(x, y), 2.0 * n * (x.mat() * y.mat()).trace().real(), 1e-12);
}

TEST(ZOf, Shape) {
  CVector v(2);
  v << cplx{1, 2}, cplx{-0.5, 0.25};
  const CMatrix z = z_of(v).mat();
  ASSERT_EQ(z.rows(), 3);
  EXPECT_EQ(z(1, 0), v(0));
  EXPECT_EQ(z(0, 2), -std::conj(v(1)));
  EXPECT_EQ(z(1, 1), cplx{});
}
