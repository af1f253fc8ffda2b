#pragma once

#include <string>
#include <vector>

#include "cpn/geometry.hpp"

namespace cpn {

/// Names accepted by make_preset: cp1-sphere, cp1-k2, cp1-k3, ex1, ex2, ex3.
const std::vector<std::string>& preset_names();
/// `a` is only read by ex1. Unknown names throw Errc::config.
CpnSolution make_preset(const std::string& name, double a = 1.0);

CpnSolution cp1_power(int k);
CpnSolution example1(double a);  // W1 = a xi, W2 = xi^2
CpnSolution example2();          // Wronskian construction from 1, xi, xi^2
CpnSolution example3();          // f = (1 - |xi|^2, xi + xibar, xibar - xi)
/// W = xi + 0.2 xibar; not a solution, used as a negative control.
CpnSolution nonsolution_control();

/// Reference formulas for the examples.
namespace reference {

double example1_q(double a, cplx xi);
double example1_K(double a, cplx xi);

struct Example3Forms {
  double I_rr, I_phiphi, II_rr, II_phiphi;
};
Example3Forms example3_forms(double r);
double example3_K(double r);
double example3_H(double r);
/// Reference decimal values at r = 2.
inline constexpr double kExample3K2 = 5.6862;
inline constexpr double kExample3H2 = 0.62980;
/// Reference curvature claim for the CP^1 sphere.
inline constexpr double kSphereK = 1.0;

/// Profile (rho, z) of the closed-form surface of revolution and its r-derivatives.
Profile example3_profile(double r);

}  // namespace reference

}  // namespace cpn
