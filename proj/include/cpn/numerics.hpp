#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cpn/field.hpp"

namespace cpn {

inline constexpr double kExclusionRadius = 1e-3;

/// Registered singular loci: isolated points (poles of rational leaves) and
/// zero sets of division denominators.
class Singularities {
 public:
  Singularities() = default;
  /// Collects poles and division denominators of every expression.
  static Singularities of(const std::vector<FieldExpr>& exprs);

  void add_point(cplx p) { points_.push_back(p); }
  void add_denominator(const FieldExpr& d) { denominators_.push_back(d); }
  void merge(const Singularities& o);

  const std::vector<cplx>& points() const { return points_; }
  const std::vector<FieldExpr>& denominators() const { return denominators_; }

  /// Distance from pt to the nearest registered singularity (infinity if none).
  double distance(cplx pt) const;
  bool is_safe(cplx pt, double radius = kExclusionRadius) const;
  void require_safe(cplx pt, double radius = kExclusionRadius) const;

 private:
  std::vector<cplx> points_;
  std::vector<FieldExpr> denominators_;
};

/// Distance from pt to the zero set of a real-analytic scalar field, by
/// Gauss-Newton on (Re d, Im d) started at pt. Returns infinity when no zero
/// is found nearby.
double zero_set_distance(const FieldExpr& d, cplx pt);

/// Max relative deviation of exact d/dbar from central differences at pt.
double fd_check(const FieldExpr& expr, cplx pt);

/// Central-difference Wirtinger derivatives of a scalar function.
std::pair<cplx, cplx> fd_wirtinger(const std::function<cplx(cplx)>& fn, cplx pt, double h);

class Path {
 public:
  explicit Path(std::vector<cplx> points);
  static Path segment(cplx a, cplx b) { return Path({a, b}); }
  /// Closed axis-aligned square loop with the given corner and side.
  static Path square(cplx corner, double side);
  /// Closed polygonal circle approximation with m sides.
  static Path circle(cplx center, double radius, int m);

  const std::vector<cplx>& points() const { return pts_; }
  cplx front() const { return pts_.front(); }
  cplx back() const { return pts_.back(); }
  bool is_closed() const { return pts_.front() == pts_.back(); }

  Path reversed() const;
  Path then(const Path& next) const;

  /// Throws singular_point if any point of the polyline comes within radius
  /// of a registered singularity (segments are sampled at spacing radius/2).
  void require_safe(const Singularities& sing, double radius = kExclusionRadius) const;
  bool is_safe(const Singularities& sing, double radius = kExclusionRadius) const;

 private:
  std::vector<cplx> pts_;
};

/// omega(xi) returns the coefficient matrices of dxi and dxibar.
using MatrixForm = std::function<std::pair<CMatrix, CMatrix>(cplx)>;

struct IntegrationOptions {
  double tol = 1e-10;
  int max_levels = 20;
};

/// Adaptive Gauss-Kronrod 7/15 integral of a matrix 1-form along a polyline.
CMatrix integrate_form(const MatrixForm& omega, const Path& path, const IntegrationOptions& opts = {});

/// Gauss-Legendre nodes and weights on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // |last - previous refinement|
  int radial_nodes = 0;
};

struct SphereOptions {
  double rel_tol = 1e-6;
  int initial_nodes = 16;
  int max_nodes = 1024;
};

/// Integral over the plane of density (w.r.t. dx dy) split into the unit disk
/// and its complement mapped by xi = 1/w (Jacobian |w|^-4).
QuadratureResult sphere_quadrature(const std::function<double(cplx)>& density, const SphereOptions& opts = {});

/// Same splitting, with the outer chart supplied directly: outer(w) is the
/// density in the w coordinate, already including the Jacobian.
QuadratureResult sphere_quadrature(const std::function<double(cplx)>& inner,
                                   const std::function<double(cplx)>& outer,
                                   const SphereOptions& opts = {});

/// Integral of density over the unit disk on an n-by-2n polar Gauss-Legendre grid.
double disk_quadrature(const std::function<double(cplx)>& density, int n);

/// Worker count: CPN_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) across worker threads; the first exception is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Evaluates fn(i) for i in [0, n) across worker threads; results keep index order.
std::vector<double> parallel_map(int n, const std::function<double(int)>& fn);

/// Pairwise (cascade) summation for order-independent rounding.
double pairwise_sum(const std::vector<double>& v);

}  // namespace cpn
