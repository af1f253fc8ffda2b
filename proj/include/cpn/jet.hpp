#pragma once

#include <array>
#include <vector>

#include "cpn/linalg.hpp"

namespace cpn {

/// Truncated Taylor expansion in (dxi, dxibar) of a function of (xi, xibar)
/// about a point. Coefficient (a, b) multiplies dxi^a dxibar^b; entries with
/// a + b > order() are unknown and never read.
class Jet {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  Jet() { c_.fill(cplx{}); }
  Jet(cplx v) : Jet() { c_[0] = v; }  // NOLINT: constants convert implicitly
  Jet(double v) : Jet(cplx{v, 0.0}) {}  // NOLINT

  /// The coordinate xi expanded about z0.
  static Jet variable(cplx z0, int order);

  int order() const { return order_; }
  cplx value() const { return c_[0]; }
  cplx coeff(int a, int b) const { return c_[index(a, b)]; }
  cplx& coeff(int a, int b) { return c_[index(a, b)]; }
  /// d^a dbar^b of the expanded function at the expansion point.
  cplx derivative(int a, int b) const;

  Jet d() const;
  Jet dbar() const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet conj(const Jet& a);
  friend Jet reciprocal(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet log(const Jet& a);

  static constexpr int index(int a, int b) {
    const int t = a + b;
    return t * (t + 1) / 2 + b;
  }

 private:
  std::array<cplx, kSize> c_;
  int order_ = kMaxOrder;
};

Jet real_part(const Jet& a);
double norm_value(const Jet& a);

/// Real derivative d^nx/dx^nx d^ny/dy^ny at the expansion point.
cplx xy_derivative(const Jet& j, int nx, int ny);

using JVec = std::vector<Jet>;

/// Dense square matrix of jets.
class JMat {
 public:
  JMat() = default;
  explicit JMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, Jet(0.0)) {}
  static JMat identity(int n);
  static JMat constant(const CMatrix& m);
  static JMat outer(const JVec& u, const JVec& v);  // u v^H

  int n() const { return n_; }
  Jet& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Jet& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  JMat adjoint() const;
  JMat d() const;
  JMat dbar() const;
  Jet trace() const;
  CMatrix value() const;
  CMatrix derivative(int a, int b) const;

  JMat& operator+=(const JMat& o);
  JMat& operator-=(const JMat& o);
  friend JMat operator+(JMat a, const JMat& b) { return a += b; }
  friend JMat operator-(JMat a, const JMat& b) { return a -= b; }
  friend JMat operator*(const JMat& a, const JMat& b);
  friend JMat operator*(const Jet& s, JMat a);

 private:
  int n_ = 0;
  std::vector<Jet> a_;
};

/// -1/2 tr(xy) as a jet.
Jet inner_bilinear(const JMat& x, const JMat& y);
/// -1/2 Re tr(xy) as a jet.
Jet inner(const JMat& x, const JMat& y);

}  // namespace cpn
