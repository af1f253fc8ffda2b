#include <gtest/gtest.h>

#include "cpn/frames.hpp"
#include "cpn/presets.hpp"

using namespace cpn;

namespace {

// d/dxi of the frame rows by central differences, with fixed pivots.
std::vector<CMatrix> frame_rows(const CpnSolution& s, cplx z, const std::vector<int>& piv) {
  const FrameState f = complete_frame(s, z, &piv);
  std::vector<CMatrix> rows{f.dX, f.dbX};
  for (const auto& n : f.normals) rows.push_back(n.mat());
  return rows;
}

}  // namespace

TEST(Frame, OrthonormalNormals) {
  for (const auto& s : {example1(0.8), example2(), example3(), make_preset("cp1-k3")}) {
    const FrameState f = complete_frame(s, {0.6, -0.2});
    EXPECT_EQ(static_cast<int>(f.normals.size()), s.dim() * s.dim() - 3);
    for (size_t j = 0; j < f.normals.size(); ++j) {
      EXPECT_LT(std::abs(inner_bilinear(f.dX, f.normals[j].mat())), 1e-12);
      EXPECT_LT(std::abs(inner_bilinear(f.dbX, f.normals[j].mat())), 1e-12);
      for (size_t k = 0; k < f.normals.size(); ++k)
        EXPECT_NEAR(inner(f.normals[j], f.normals[k]), j == k ? 1.0 : 0.0, 1e-12);
    }
    EXPECT_LT(frame_conditions(f), 1e-12);
  }
}

TEST(Frame, FixedPivotsReproduceFrame) {
  const CpnSolution s = example2();
  const FrameState f = complete_frame(s, {0.5, 0.5});
  const FrameState g = complete_frame(s, {0.5, 0.5}, &f.pivots);
  for (size_t k = 0; k < f.normals.size(); ++k) EXPECT_LT(max_abs(f.normals[k].mat() - g.normals[k].mat()), 1e-15);
}

TEST(GaussWeingarten, RowsReproduceDerivatives) {
  const CpnSolution s = example1(1.2);
  const cplx z{0.4, 0.3};
  const FrameState f = complete_frame(s, z);
  const GWMatrices gw = gauss_weingarten(s, z, f);
  const double h = 1e-5;
  const auto px = frame_rows(s, z + h, f.pivots), mx = frame_rows(s, z - h, f.pivots);
  const auto py = frame_rows(s, z + kI * h, f.pivots), my = frame_rows(s, z - kI * h, f.pivots);
  const auto rows = frame_rows(s, z, f.pivots);
  const int m = static_cast<int>(rows.size());
  ASSERT_EQ(gw.A.rows(), m);
  for (int i = 0; i < m; ++i) {
    const CMatrix dx = (px[i] - mx[i]) / (2 * h), dy = (py[i] - my[i]) / (2 * h);
    const CMatrix d = 0.5 * (dx - kI * dy), db = 0.5 * (dx + kI * dy);
    CMatrix ad = CMatrix::Zero(3, 3), bd = CMatrix::Zero(3, 3);
    for (int k = 0; k < m; ++k) {
      ad += gw.A(i, k) * rows[k];
      bd += gw.B(i, k) * rows[k];
    }
    EXPECT_LT(max_abs(ad - d), 1e-7) << "row " << i;
    EXPECT_LT(max_abs(bd - db), 1e-7) << "row " << i;
  }
  EXPECT_LT(gw_defining_residual(s, z), 1e-6);
}

TEST(GaussWeingarten, CompatibilitySeparatesSolutionsFromControl) {
  EXPECT_LT(gcr_residual(example2(), {0.7, 0.1}), 1e-4);
  EXPECT_LT(gcr_residual(cp1_power(2), {0.7, 0.1}), 1e-4);
  EXPECT_GT(gcr_residual(nonsolution_control(), {0.7, 0.1}), 1e-2);
}

TEST(Cp2Frame, UnitaryWithUnitDeterminant) {
  const Cp2Frame c = cp2_frame(example1(1.0), {0.5, 0.2});
  EXPECT_LT(c.unitarity_defect, 1e-12);
  EXPECT_LT(c.det_defect, 1e-9);
  EXPECT_LT(max_abs(c.Phi.adjoint() * c.Phi - CMatrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(c.tangent_d_residual, 1e-8);
  EXPECT_THROW(cp2_frame(example3(), 0.5), Error);
  EXPECT_THROW(cp2_frame(cp1_power(1), 0.5), Error);
}

TEST(Su3, RandomSpecialUnitary) {
  std::mt19937_64 rng(1);
  for (int dim : {2, 3, 4}) {
    const CMatrix u = random_special_unitary(dim, rng);
    EXPECT_LT(max_abs(u.adjoint() * u - CMatrix::Identity(dim, dim)), 1e-13);
    EXPECT_LT(std::abs(u.determinant() - 1.0), 1e-13);
  }
}

TEST(Su3, DecomposeRecompose) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const CMatrix g = random_special_unitary(3, rng);
    const Su3Factors f = decompose_su3(g);
    EXPECT_LT(max_abs(recompose(f) - g), 1e-12);
    for (const CMatrix* a : {&f.A1, &f.A2}) {
      EXPECT_LT(max_abs(a->adjoint() * *a - CMatrix::Identity(2, 2)), 1e-12);
      EXPECT_LT(std::abs(a->determinant() - 1.0), 1e-12);
    }
    EXPECT_NEAR(std::abs(f.mu), 1.0, 1e-14);
    EXPECT_GE(f.theta, 0.0);
    EXPECT_LE(f.theta, M_PI / 2 + 1e-15);
  }
}

TEST(Su3, DegenerateCornerAndErrors) {
  // g00 of modulus one: block diagonal input
  CMatrix g = CMatrix::Identity(3, 3);
  g(0, 0) = std::polar(1.0, 0.4);
  g(1, 1) = std::polar(1.0, -0.4);
  const Su3Factors f = decompose_su3(g);
  EXPECT_NEAR(f.theta, 0.0, 1e-7);
  EXPECT_LT(max_abs(recompose(f) - g), 1e-12);
  EXPECT_THROW(decompose_su3(2.0 * CMatrix::Identity(3, 3)), Error);
  EXPECT_THROW(decompose_su3(CMatrix::Identity(2, 2)), Error);
}
