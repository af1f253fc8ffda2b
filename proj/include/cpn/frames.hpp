#pragma once

#include <random>

#include "cpn/geometry.hpp"

namespace cpn {

struct FrameState {
  cplx pt;
  CMatrix dX, dbX;
  std::vector<SuElement> normals;
  std::vector<int> pivots;  // basis indices kept by Gram-Schmidt, in order
};

/// Modified Gram-Schmidt of the fixed basis against the real tangent span.
/// With `pivots` the same basis indices are used (frame_discontinuity if one collapses).
FrameState complete_frame(const CpnSolution& sol, cplx pt, const std::vector<int>* pivots = nullptr);

/// max of |(dX, eta_k)|, |(dbarX, eta_k)|, |(eta_j, eta_k) - delta_jk|.
double frame_conditions(const FrameState& frame);

struct GWMatrices {
  CMatrix A, B;  // d eta = A eta, dbar eta = B eta, eta = (dX, dbarX, eta_3, ...)
};

GWMatrices gauss_weingarten(const CpnSolution& sol, cplx pt, const FrameState& frame);

/// Max relative row defect of d eta = A eta and dbar eta = B eta against
/// central differences of the frame (step h).
double gw_defining_residual(const CpnSolution& sol, cplx pt, double h = 1e-5);

/// max|dbar A - d B + [A, B]| with fourth-order central differences of step h; zero for constant maps.
double gcr_residual(const CpnSolution& sol, cplx pt, double h = 1e-4);

struct Cp2Frame {
  CMatrix Phi;          // unitary form used for the frame
  CMatrix Phi_reference;  // reference entries, (1,0) unconjugated (gauge phi = 0)
  FrameState frame;     // tangents i K^dagger, i K; normals Phi^dagger S_{i+2} Phi, unit-normalized
  double unitarity_defect = 0;
  double det_defect = 0;
  double reference_unitarity_defect = 0;
  double tangent_d_residual = 0;     // |dX - e^{u/2} Phi^-1 Y_- Phi|, e^{u/2} = -sqrt(q)
  double tangent_dbar_residual = 0;  // |dbarX - e^{ubar/2} Phi^-1 Y_+ Phi|
  double normal_conditions = 0;      // frame_conditions of the normals above
};

Cp2Frame cp2_frame(const CpnSolution& sol, cplx pt);

struct Su3Factors {
  CMatrix A1, A2;  // 2x2 special unitary
  cplx mu;         // lambda, |lambda| = 1, Arg in (-pi/2, pi/2]
  double theta = 0;  // alpha in [0, pi/2]
};

Su3Factors decompose_su3(const CMatrix& g);
/// diag(1, A1) * [[mu^2 cos, -sin, 0], [sin, mu^-2 cos, 0], [0, 0, 1]] * diag(1, A2)
CMatrix recompose(const Su3Factors& f);

/// Haar-like special unitary sample: QR of a complex Gaussian matrix, phases fixed, det scaled to 1.
CMatrix random_special_unitary(int dim, std::mt19937_64& rng);

}  // namespace cpn
