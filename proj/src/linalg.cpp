#include "cpn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cpn {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_in_algebra: return "not_in_algebra";
    case Errc::invalid_input: return "invalid_input";
    case Errc::singular_point: return "singular_point";
    case Errc::degenerate_metric: return "degenerate_metric";
    case Errc::rank_deficient: return "rank_deficient";
    case Errc::frame_discontinuity: return "frame_discontinuity";
    case Errc::non_convergence: return "non_convergence";
    case Errc::io_failure: return "io_failure";
    case Errc::config: return "config";
  }
  return "unknown";
}

double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) r = std::max(r, std::abs(m.data()[i]));
  return r;
}

SuElement::SuElement(CMatrix mat, double rel_tol) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw Error(Errc::dimension_mismatch, "su element must be a non-empty square matrix");
  }
  const double scale = std::max(max_abs(mat_), 1e-300);
  const double skew = max_abs(mat_ + mat_.adjoint());
  const double tr = std::abs(mat_.trace());
  if (skew > rel_tol * scale || tr > rel_tol * scale) {
    std::ostringstream os;
    os << "matrix is not in su(" << mat_.rows() << "): |m + m^H| = " << skew
       << ", |tr m| = " << tr << ", scale " << scale;
    throw Error(Errc::not_in_algebra, os.str());
  }
}

SuElement SuElement::zero(int dim) { return SuElement(CMatrix::Zero(dim, dim), Unchecked{}); }

SuElement SuElement::project(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "projection needs a square matrix");
  CMatrix s = 0.5 * (m - m.adjoint());
  const cplx t = s.trace() / static_cast<double>(m.rows());
  s.diagonal().array() -= t;
  return SuElement(std::move(s), Unchecked{});
}

SuElement SuElement::operator+(const SuElement& o) const {
  if (dim() != o.dim()) throw Error(Errc::dimension_mismatch, "su element sum");
  return SuElement(mat_ + o.mat_, Unchecked{});
}

SuElement SuElement::operator-(const SuElement& o) const {
  if (dim() != o.dim()) throw Error(Errc::dimension_mismatch, "su element difference");
  return SuElement(mat_ - o.mat_, Unchecked{});
}

SuElement SuElement::operator*(double s) const { return SuElement(mat_ * s, Unchecked{}); }

std::vector<CMatrix> standard_basis_matrices(int dim) {
  if (dim < 2) throw Error(Errc::dimension_mismatch, "su(n) needs n >= 2");
  std::vector<CMatrix> out;
  if (dim == 2) {
    CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -kI, kI, 0;
    s3 << 1, 0, 0, -1;
    out = {-kI * s1, -kI * s2, -kI * s3};
    return out;
  }
  if (dim == 3) {
    for (const CMatrix& p : standard_basis_matrices(2)) {
      CMatrix m = CMatrix::Zero(3, 3);
      m.block(1, 1, 2, 2) = p;
      out.push_back(m);
    }
    CMatrix s4 = CMatrix::Zero(3, 3);
    s4.diagonal() << -2.0 * kI, kI, kI;
    out.push_back(s4);
    const CVector e1 = (CVector(2) << 1, 0).finished();
    const CVector e2 = (CVector(2) << 0, 1).finished();
    out.push_back(z_of(e1).mat());
    out.push_back(z_of(e2).mat());
    out.push_back(z_of(kI * e1).mat());
    out.push_back(z_of(kI * e2).mat());
    return out;
  }
  // generalized Gell-Mann, times -i
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      CMatrix s = CMatrix::Zero(dim, dim);
      s(j, k) = s(k, j) = -kI;
      out.push_back(s);
      CMatrix a = CMatrix::Zero(dim, dim);
      a(j, k) = -1.0;
      a(k, j) = 1.0;
      out.push_back(a);
    }
  }
  for (int l = 1; l < dim; ++l) {
    CMatrix d = CMatrix::Zero(dim, dim);
    for (int j = 0; j < l; ++j) d(j, j) = -kI;
    d(l, l) = kI * static_cast<double>(l);
    out.push_back(d);
  }
  return out;
}

SuBasis::SuBasis(int dim) : dim_(dim) {
  for (const CMatrix& m : standard_basis_matrices(dim)) elements_.emplace_back(m);
  const int n = size();
  gram_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram_(i, j) = inner(elements_[i], elements_[j]);
  gram_ldlt_.compute(gram_);
}

cplx inner_bilinear(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(Errc::dimension_mismatch, "inner product of matrices of different size");
  // tr(xy) without forming the product
  return -0.5 * (x.array() * y.transpose().array()).sum();
}

double inner(const CMatrix& x, const CMatrix& y) { return inner_bilinear(x, y).real(); }

double inner(const SuElement& x, const SuElement& y) { return inner(x.mat(), y.mat()); }

double killing(const SuElement& x, const SuElement& y) {
  if (x.dim() != y.dim()) throw Error(Errc::dimension_mismatch, "killing form of different sizes");
  return -4.0 * x.dim() * inner(x, y);
}

RVector coords(const SuElement& x, const SuBasis& basis) {
  if (x.dim() != basis.dim()) throw Error(Errc::dimension_mismatch, "coords: basis dimension");
  RVector rhs(basis.size());
  for (int i = 0; i < basis.size(); ++i) rhs(i) = inner(basis[i], x);
  return basis.gram_ldlt_.solve(rhs);
}

CVector coords_complex(const CMatrix& m, const SuBasis& basis) {
  if (m.rows() != basis.dim()) throw Error(Errc::dimension_mismatch, "coords: basis dimension");
  CVector rhs(basis.size());
  for (int i = 0; i < basis.size(); ++i) rhs(i) = inner_bilinear(basis[i].mat(), m);
  const RVector re = basis.gram_ldlt_.solve(rhs.real());
  const RVector im = basis.gram_ldlt_.solve(rhs.imag());
  return re.cast<cplx>() + kI * im.cast<cplx>();
}

SuElement from_coords(const RVector& c, const SuBasis& basis) {
  if (c.size() != basis.size()) throw Error(Errc::dimension_mismatch, "from_coords: length");
  CMatrix m = CMatrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.size(); ++i) m += c(i) * basis[i].mat();
  return SuElement::project(m);
}

CMatrix from_coords_complex(const CVector& c, const SuBasis& basis) {
  if (c.size() != basis.size()) throw Error(Errc::dimension_mismatch, "from_coords: length");
  CMatrix m = CMatrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.size(); ++i) m += c(i) * basis[i].mat();
  return m;
}

SuElement z_of(const CVector& x) {
  const int n = static_cast<int>(x.size());
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    m(i + 1, 0) = x(i);
    m(0, i + 1) = -std::conj(x(i));
  }
  return SuElement(m);
}

}  // namespace cpn
