#pragma once

#include <string>
#include <vector>

#include "cpn/numerics.hpp"

namespace cpn {

enum class SolutionKind { holomorphic, antiholomorphic, mixed, general };

const char* kind_name(SolutionKind k);

/// A CP^N field in homogeneous coordinates f = (f_0, ..., f_N).
/// Kinds other than `general` are validated against the field equations.
class CpnSolution {
 public:
  CpnSolution(int n, std::vector<FieldExpr> f, SolutionKind kind, std::string label = {});

  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  const std::vector<FieldExpr>& f() const { return f_; }
  SolutionKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const Singularities& singularities() const { return sing_; }

  /// Jets of the components about pt.
  JVec jet(cplx pt, int order) const;
  CVector value(cplx pt) const;

  bool is_safe(cplx pt) const;
  /// Throws singular_point for registered singularities or |f(pt)| <= 1e-10.
  void require_safe(cplx pt) const;

  /// The same field in the coordinate w = 1/xi.
  CpnSolution inverted() const;
  /// The same field in the coordinate w with xi = s w.
  CpnSolution rescaled(cplx s) const;
  /// f -> U f for a constant unitary U.
  CpnSolution rotated(const CMatrix& u) const;

 private:
  struct Unchecked {};
  CpnSolution(int n, std::vector<FieldExpr> f, SolutionKind kind, std::string label, Unchecked);
  void validate() const;

  int n_;
  std::vector<FieldExpr> f_;
  SolutionKind kind_;
  std::string label_;
  Singularities sing_;
};

/// Affine components R_i = num_i/den_i; denominators are cleared and a common
/// polynomial factor removed.
CpnSolution make_holomorphic(int n, const std::vector<RationalFn>& components, std::string label = {});
/// Conjugate of the holomorphic construction.
CpnSolution make_antiholomorphic(int n, const std::vector<RationalFn>& components, std::string label = {});
/// Wronskian construction from three holomorphic generators.
CpnSolution make_mixed_cp2(const std::vector<RationalFn>& g, std::string label = {});
/// Arbitrary field, not checked against the field equations.
CpnSolution make_field(int n, std::vector<FieldExpr> f, std::string label = {});

struct ProjectorSample {
  cplx pt;
  CMatrix P;
};

struct KSample {
  cplx pt;
  CMatrix K;
  double commutator_gap = 0.0;  // |explicit - [dbar P, P]|
};

struct JScalars {
  cplx J;
  cplx Jbar;
  double q = 0.0;
  double q_imag = 0.0;  // imaginary part discarded from q (diagnostic)
};

ProjectorSample projector(const CpnSolution& sol, cplx pt);
KSample k_matrix(const CpnSolution& sol, cplx pt);
/// Closed-form K for n = 2 in affine coordinates W_i = f_i/f_0.
CMatrix k_matrix_cp2_closed(const CpnSolution& sol, cplx pt);

double el_residual(const CpnSolution& sol, cplx pt);
/// Residual of the affine form of the equations with W = f/f_k, k the largest component.
double el_residual_affine(const CpnSolution& sol, cplx pt);
/// max(|dK - dbar K^dagger|, |dK - (dK)^dagger|).
double conservation_residual(const CpnSolution& sol, cplx pt);
JScalars j_scalars(const CpnSolution& sol, cplx pt);
/// dbar J at pt (zero on solutions).
cplx dbar_j(const CpnSolution& sol, cplx pt);
double action_density(const CpnSolution& sol, cplx pt);
/// Integrand of the charge with respect to dx dy.
double charge_density(const CpnSolution& sol, cplx pt);

/// Total action with dxi dxibar read as 8 dx dy.
QuadratureResult total_action(const CpnSolution& sol, const SphereOptions& opts = {});

/// Deterministic safe points in the annulus rmin <= |xi| <= rmax.
std::vector<cplx> random_safe_points(const CpnSolution& sol, int count, unsigned seed, double rmin = 0.05,
                                     double rmax = 2.5);

/// Jet-level building blocks shared by the geometry modules.
namespace detail {

Jet dot(const JVec& a, const JVec& b);  // a^dagger b
JMat k_jet(const JVec& f);
JMat projector_jet(const JVec& f);
/// (1/f^dagger f) a^dagger P b through the Lagrange identity.
Jet projected_pairing(const JVec& f, const JVec& a, const JVec& b);
JVec d(const JVec& v);
JVec dbar(const JVec& v);
/// No exclusion-radius check: the density is invariant under rescaling f, so removable
/// poles of the inverted chart (leaves in 1/w) are harmless off the exact point.
double charge_density_unchecked(const CpnSolution& sol, cplx pt);

}  // namespace detail

}  // namespace cpn
