#include "cpn/jet.hpp"

#include <algorithm>
#include <cmath>

namespace cpn {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Evaluates sum_k coeffs[k] u^k for a nilpotent jet u (zero constant term).
Jet nilpotent_series(const Jet& u, const std::vector<cplx>& coeffs) {
  Jet p(coeffs.back());
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) p = Jet(coeffs[k]) + u * p;
  return p.truncated(u.order());
}

}  // namespace

Jet Jet::variable(cplx z0, int order) {
  Jet j(z0);
  j.order_ = std::clamp(order, 0, kMaxOrder);
  if (j.order_ >= 1) j.c_[index(1, 0)] = 1.0;
  return j;
}

cplx Jet::derivative(int a, int b) const {
  if (a + b > order_) throw Error(Errc::invalid_input, "jet derivative beyond truncation order");
  return factorial(a) * factorial(b) * c_[index(a, b)];
}

Jet Jet::d() const {
  Jet r;
  r.order_ = std::max(order_ - 1, 0);
  if (order_ == 0) {
    r.order_ = 0;
    r.c_[0] = cplx{std::nan(""), std::nan("")};
    return r;
  }
  for (int t = 0; t <= r.order_; ++t)
    for (int b = 0; b <= t; ++b) r.c_[index(t - b, b)] = static_cast<double>(t - b + 1) * c_[index(t - b + 1, b)];
  return r;
}

Jet Jet::dbar() const {
  Jet r;
  r.order_ = std::max(order_ - 1, 0);
  if (order_ == 0) {
    r.c_[0] = cplx{std::nan(""), std::nan("")};
    return r;
  }
  for (int t = 0; t <= r.order_; ++t)
    for (int b = 0; b <= t; ++b) r.c_[index(t - b, b)] = static_cast<double>(b + 1) * c_[index(t - b, b + 1)];
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r = *this;
  r.order_ = std::min(order_, std::max(order, 0));
  for (int i = index(r.order_ + 1, 0); i < kSize; ++i) r.c_[i] = 0.0;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet operator*(const Jet& x, const Jet& y) {
  Jet r;
  const int o = std::min(x.order_, y.order_);
  r.order_ = o;
  for (int t = 0; t <= o; ++t) {
    for (int b = 0; b <= t; ++b) {
      const int a = t - b;
      cplx s{};
      for (int a1 = 0; a1 <= a; ++a1)
        for (int b1 = 0; b1 <= b; ++b1) s += x.c_[Jet::index(a1, b1)] * y.c_[Jet::index(a - a1, b - b1)];
      r.c_[Jet::index(a, b)] = s;
    }
  }
  return r;
}

Jet conj(const Jet& x) {
  Jet r;
  r.order_ = x.order_;
  for (int t = 0; t <= x.order_; ++t)
    for (int b = 0; b <= t; ++b) r.c_[Jet::index(t - b, b)] = std::conj(x.c_[Jet::index(b, t - b)]);
  return r;
}

Jet reciprocal(const Jet& x) {
  const cplx c0 = x.c_[0];
  Jet u = x;
  u.c_[0] = 0.0;
  u = u * Jet(1.0 / c0);
  std::vector<cplx> coeffs(static_cast<size_t>(x.order_) + 1);
  for (int k = 0; k <= x.order_; ++k) coeffs[k] = (k % 2 == 0 ? 1.0 : -1.0);
  return nilpotent_series(u, coeffs) * Jet(1.0 / c0);
}

Jet sqrt(const Jet& x) {
  const cplx c0 = x.c_[0];
  Jet u = x;
  u.c_[0] = 0.0;
  u = u * Jet(1.0 / c0);
  std::vector<cplx> coeffs(static_cast<size_t>(x.order_) + 1);
  double b = 1.0;
  for (int k = 0; k <= x.order_; ++k) {
    coeffs[k] = b;
    b *= (0.5 - k) / (k + 1);
  }
  return nilpotent_series(u, coeffs) * Jet(std::sqrt(c0));
}

Jet log(const Jet& x) {
  const cplx c0 = x.c_[0];
  Jet u = x;
  u.c_[0] = 0.0;
  u = u * Jet(1.0 / c0);
  std::vector<cplx> coeffs(static_cast<size_t>(x.order_) + 1);
  coeffs[0] = 0.0;
  for (int k = 1; k <= x.order_; ++k) coeffs[k] = (k % 2 == 1 ? 1.0 : -1.0) / k;
  Jet r = nilpotent_series(u, coeffs);
  r.c_[0] = std::log(c0);
  return r;
}

Jet real_part(const Jet& a) { return (a + conj(a)) * Jet(0.5); }

double norm_value(const Jet& a) { return std::abs(a.value()); }

cplx xy_derivative(const Jet& j, int nx, int ny) {
  cplx s{};
  cplx iy{1.0, 0.0};
  for (int k = 0; k < ny; ++k) iy *= kI;
  for (int p = 0; p <= nx; ++p) {
    for (int q = 0; q <= ny; ++q) {
      const double sign = ((ny - q) % 2 == 0) ? 1.0 : -1.0;
      s += binomial(nx, p) * binomial(ny, q) * sign * j.derivative(p + q, nx - p + ny - q);
    }
  }
  return iy * s;
}

JMat JMat::identity(int n) {
  JMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0);
  return m;
}

JMat JMat::constant(const CMatrix& c) {
  JMat m(static_cast<int>(c.rows()));
  for (int i = 0; i < m.n_; ++i)
    for (int j = 0; j < m.n_; ++j) m(i, j) = Jet(c(i, j));
  return m;
}

JMat JMat::outer(const JVec& u, const JVec& v) {
  JMat m(static_cast<int>(u.size()));
  for (int i = 0; i < m.n_; ++i)
    for (int j = 0; j < m.n_; ++j) m(i, j) = u[i] * conj(v[j]);
  return m;
}

JMat JMat::adjoint() const {
  JMat m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = conj((*this)(j, i));
  return m;
}

JMat JMat::d() const {
  JMat m(n_);
  for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].d();
  return m;
}

JMat JMat::dbar() const {
  JMat m(n_);
  for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].dbar();
  return m;
}

Jet JMat::trace() const {
  Jet t(0.0);
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix JMat::value() const {
  CMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

CMatrix JMat::derivative(int a, int b) const {
  CMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).derivative(a, b);
  return m;
}

JMat& JMat::operator+=(const JMat& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

JMat& JMat::operator-=(const JMat& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

JMat operator*(const JMat& x, const JMat& y) {
  JMat m(x.n_);
  for (int i = 0; i < x.n_; ++i)
    for (int j = 0; j < x.n_; ++j) {
      Jet s(0.0);
      for (int k = 0; k < x.n_; ++k) s += x(i, k) * y(k, j);
      m(i, j) = s;
    }
  return m;
}

JMat operator*(const Jet& s, JMat a) {
  for (auto& v : a.a_) v = s * v;
  return a;
}

Jet inner_bilinear(const JMat& x, const JMat& y) {
  Jet s(0.0);
  for (int i = 0; i < x.n(); ++i)
    for (int k = 0; k < x.n(); ++k) s += x(i, k) * y(k, i);
  return s * Jet(-0.5);
}

Jet inner(const JMat& x, const JMat& y) { return real_part(inner_bilinear(x, y)); }

}  // namespace cpn
