#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cpn/error.hpp"

namespace cpn {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Traceless skew-Hermitian matrix. Membership is checked on construction.
class SuElement {
 public:
  static constexpr double kTolerance = 1e-12;

  SuElement() = default;
  explicit SuElement(CMatrix mat, double rel_tol = kTolerance);

  static SuElement zero(int dim);
  /// Skew-Hermitian traceless part of an arbitrary square matrix.
  static SuElement project(const CMatrix& m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& mat() const { return mat_; }

  SuElement operator+(const SuElement& o) const;
  SuElement operator-(const SuElement& o) const;
  SuElement operator*(double s) const;

 private:
  struct Unchecked {};
  SuElement(CMatrix mat, Unchecked) : mat_(std::move(mat)) {}
  CMatrix mat_;
};

/// Ordered orthogonal (not necessarily orthonormal) basis of su(n).
class SuBasis {
 public:
  explicit SuBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const SuElement& operator[](int i) const { return elements_[i]; }
  const std::vector<SuElement>& elements() const { return elements_; }
  const Eigen::MatrixXd& gram() const { return gram_; }

 private:
  int dim_;
  std::vector<SuElement> elements_;
  Eigen::MatrixXd gram_;
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt_;

  friend RVector coords(const SuElement&, const SuBasis&);
  friend CVector coords_complex(const CMatrix&, const SuBasis&);
};

/// -1/2 Re tr(xy)
double inner(const SuElement& x, const SuElement& y);
double inner(const CMatrix& x, const CMatrix& y);
/// -1/2 tr(xy), complex bilinear extension
cplx inner_bilinear(const CMatrix& x, const CMatrix& y);

/// 2(N+1) Re tr(xy)
double killing(const SuElement& x, const SuElement& y);

RVector coords(const SuElement& x, const SuBasis& basis);
/// Coordinates of a complexified element m = a + i b, a, b in su(n).
CVector coords_complex(const CMatrix& m, const SuBasis& basis);
SuElement from_coords(const RVector& c, const SuBasis& basis);
CMatrix from_coords_complex(const CVector& c, const SuBasis& basis);

/// First column (0, x), first row (0, -conj(x)).
SuElement z_of(const CVector& x);

/// Pauli-type basis for n = 2, the S1..S8 basis for n = 3, generalized Gell-Mann otherwise.
std::vector<CMatrix> standard_basis_matrices(int dim);

double max_abs(const CMatrix& m);

}  // namespace cpn
