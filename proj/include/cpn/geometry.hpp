#pragma once

#include "cpn/immersion.hpp"

namespace cpn {

inline constexpr double kDegenerateDet = 1e-14;
inline constexpr double kConformalJ = 1e-10;

struct MetricSample {
  cplx pt;
  cplx g_xx;         // 2 (dX, dX) under the bilinear product
  double g_xbx = 0;  // 2 (dX, dbarX)
  cplx g_bxbx;       // conj(g_xx)
  double q_scalar = 0;  // q of j_scalars; equals g_xbx only when dbar f = 0
  double g11 = 0, g12 = 0, g22 = 0;  // from the real tangents under -1/2 Re tr
  double det_g = 0;                  // |J|^2 - q^2
  bool degenerate = false;
};

struct CurvatureSample {
  cplx pt;
  double K = 0.0;
  CMatrix H_vec;
  double H_norm = 0.0;
};

/// Normal parts of the second derivatives of X: coefficients of dxi^2, dxi dxibar, dxibar^2.
struct SecondForm {
  CMatrix xx, xbx, bxbx;
};

MetricSample metric(const CpnSolution& sol, cplx pt);

/// Conformal formula when |J| < 1e-10, Brioschi otherwise.
double gaussian_curvature(const CpnSolution& sol, cplx pt);
/// Always Brioschi on (g11, g12, g22); used as a cross-check.
double gaussian_curvature_brioschi(const CpnSolution& sol, cplx pt);

SecondForm second_fundamental_form(const CpnSolution& sol, cplx pt);
CurvatureSample mean_curvature(const CpnSolution& sol, cplx pt);

/// Integral of |H|^2 dA over the sphere (both charts).
QuadratureResult willmore(const CpnSolution& sol, const SphereOptions& opts = {});
QuadratureResult topological_charge(const CpnSolution& sol, const SphereOptions& opts = {});

/// First and second fundamental forms in polar coordinates xi = r e^{i phi}, measured
/// in the real coordinates y = L c (c the basis coordinates of X) with the Euclidean
/// product. II is taken along the unit normal in the direction of the mean curvature.
struct PolarForms {
  double I_rr = 0, I_rphi = 0, I_phiphi = 0;
  double II_rr = 0, II_rphi = 0, II_phiphi = 0;
  double K = 0, H = 0;  // from the scalar forms; meaningful when the surface spans a 3-space
};
PolarForms polar_forms(const CpnSolution& sol, double r, double phi, const Eigen::MatrixXd& L);

/// The same quantities for a surface of revolution with profile (rho(r), z(r)),
/// given the profile and its first two derivatives.
struct Profile {
  double rho, drho, d2rho, z, dz, d2z;
};
PolarForms revolution_forms(const Profile& p);

}  // namespace cpn
