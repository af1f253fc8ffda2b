#include "cpn/rational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cpn {

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, cplx c) {
  std::vector<cplx> v(static_cast<size_t>(k) + 1, cplx{});
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim(double tol) {
  const double scale = max_abs_coeff();
  while (!c_.empty() && std::abs(c_.back()) <= tol * scale) c_.pop_back();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& c : c_) m = std::max(m, std::abs(c));
  return m;
}

cplx Poly::operator()(cplx z) const {
  cplx r{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
  return r;
}

Jet Poly::operator()(const Jet& z) const {
  Jet r(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + Jet(*it);
  return r.truncated(z.order());
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<cplx> v(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(v));
}

Poly Poly::reversed(int k) const {
  if (k < degree()) throw Error(Errc::invalid_input, "polynomial reversal below degree");
  std::vector<cplx> v(static_cast<size_t>(k) + 1, cplx{});
  for (int j = 0; j <= degree(); ++j) v[k - j] = c_[j];
  return Poly(std::move(v));
}

Poly Poly::scaled_argument(cplx s) const {
  std::vector<cplx> v = c_;
  cplx p{1.0, 0.0};
  for (auto& c : v) {
    c *= p;
    p *= s;
  }
  return Poly(std::move(v));
}

std::vector<cplx> Poly::roots() const {
  const int n = degree();
  if (n < 1) return {};
  CMatrix comp = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c_[i] / c_[n];
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> v(std::max(a.c_.size(), b.c_.size()), cplx{});
  for (size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + cplx{-1.0, 0.0} * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<cplx> v(a.c_.size() + b.c_.size() - 1, cplx{});
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(cplx s, const Poly& a) {
  std::vector<cplx> v = a.c_;
  for (auto& c : v) c *= s;
  return Poly(std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, double tol) {
  if (b.is_zero()) throw Error(Errc::invalid_input, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<cplx> r = a.c_;
  std::vector<cplx> q(static_cast<size_t>(a.degree() - b.degree()) + 1, cplx{});
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    const cplx f = r[k + db] / b.c_[db];
    q[k] = f;
    for (int j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
    r[k + db] = 0.0;
  }
  r.resize(static_cast<size_t>(db));
  Poly rem;
  rem.c_ = std::move(r);
  const double scale = a.max_abs_coeff();
  while (!rem.c_.empty() && std::abs(rem.c_.back()) <= tol * scale) rem.c_.pop_back();
  return {Poly(std::move(q)), rem};
}

Poly gcd(Poly a, Poly b, double rel_tol) {
  if (a.is_zero()) return b.is_zero() ? Poly::constant(1.0) : (1.0 / b.leading()) * b;
  while (!b.is_zero()) {
    b = (1.0 / b.leading()) * b;
    auto [q, r] = divmod(a, b, rel_tol);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return (1.0 / a.leading()) * a;
}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(Errc::invalid_input, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(1.0);
    return;
  }
  if (den_.degree() > 0) {
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g, 1e-10).first;
      den_ = divmod(den_, g, 1e-10).first;
    }
  }
  const cplx lead = den_.leading();
  num_ = (1.0 / lead) * num_;
  den_ = (1.0 / lead) * den_;
}

Jet RationalFn::operator()(const Jet& z) const {
  if (is_polynomial()) return num_(z) * Jet(1.0 / den_.leading());
  return num_(z) / den_(z);
}

RationalFn RationalFn::derivative() const {
  return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFn RationalFn::inverted_argument() const {
  const int k = std::max(num_.degree(), den_.degree());
  return RationalFn(num_.reversed(k), den_.reversed(k));
}

RationalFn RationalFn::scaled_argument(cplx s) const {
  return RationalFn(num_.scaled_argument(s), den_.scaled_argument(s));
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

}  // namespace cpn
