#include <gtest/gtest.h>

#include "cpn/presets.hpp"

using namespace cpn;

TEST(Presets, AllNamesConstruct) {
  for (const auto& n : preset_names()) {
    const CpnSolution s = make_preset(n, 1.0);
    EXPECT_FALSE(s.label().empty());
  }
  try {
    make_preset("no-such-model");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config);
  }
}

TEST(Presets, Example1ParameterEntersSecondComponent) {
  const CpnSolution s = example1(0.25);
  const cplx z{0.5, 0.1};
  const CVector v = s.value(z);
  EXPECT_LT(std::abs(v(1) / v(0) - 0.25 * z), 1e-14);
  EXPECT_LT(std::abs(v(2) / v(0) - z * z), 1e-14);
}

TEST(Presets, Example3Components) {
  const cplx z{0.3, 0.7}, zb = std::conj(z);
  const CVector v = example3().value(z);
  EXPECT_LT(std::abs(v(0) - (1.0 - z * zb)), 1e-14);
  EXPECT_LT(std::abs(v(1) - (z + zb)), 1e-14);
  EXPECT_LT(std::abs(v(2) - (zb - z)), 1e-14);
}

TEST(Presets, ReferenceFormulasSelfConsistent) {
  // the decimal constants agree with the closed-form formulas to their stated precision
  EXPECT_NEAR(reference::example3_K(2.0), reference::kExample3K2, 1e-3);
  EXPECT_NEAR(reference::example3_H(2.0), reference::kExample3H2, 1e-4);
  // profile derivatives against central differences
  const double r = 1.3, h = 1e-5;
  const Profile p = reference::example3_profile(r);
  const Profile a = reference::example3_profile(r + h), b = reference::example3_profile(r - h);
  EXPECT_NEAR(p.drho, (a.rho - b.rho) / (2 * h), 1e-8);
  EXPECT_NEAR(p.dz, (a.z - b.z) / (2 * h), 1e-8);
  EXPECT_NEAR(p.d2rho, (a.drho - b.drho) / (2 * h), 1e-8);
  EXPECT_NEAR(p.d2z, (a.dz - b.dz) / (2 * h), 1e-8);
}

TEST(Presets, Example1ConformalFactor) {
  // q of the holomorphic CP^2 map equals the reference expression
  const double a = 1.1;
  const cplx z{0.4, -0.6};
  EXPECT_NEAR(j_scalars(example1(a), z).q, reference::example1_q(a, z), 1e-12);
}
