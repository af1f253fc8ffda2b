#pragma once

#include <vector>

#include "cpn/jet.hpp"

namespace cpn {

/// Polynomial in one complex variable, coefficients in ascending powers.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<cplx> coeffs);  // NOLINT
  static Poly constant(cplx c) { return Poly(std::vector<cplx>{c}); }
  static Poly monomial(int k, cplx c = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }

  cplx operator()(cplx z) const;
  Jet operator()(const Jet& z) const;

  Poly derivative() const;
  /// p(1/w) w^k
  Poly reversed(int k) const;
  /// p(s z)
  Poly scaled_argument(cplx s) const;
  std::vector<cplx> roots() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& a);
  /// Quotient and remainder; coefficients of the remainder below
  /// tol * |a| are dropped.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, double tol);

  double max_abs_coeff() const;

 private:
  void trim(double tol = 0.0);
  std::vector<cplx> c_;
};

Poly gcd(Poly a, Poly b, double rel_tol = 1e-10);

/// Reduced quotient of polynomials with monic denominator.
class RationalFn {
 public:
  RationalFn() : num_(Poly()), den_(Poly::constant(1.0)) {}
  RationalFn(Poly num, Poly den = Poly::constant(1.0));
  static RationalFn constant(cplx c) { return RationalFn(Poly::constant(c)); }
  static RationalFn identity() { return RationalFn(Poly::monomial(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  cplx operator()(cplx z) const { return num_(z) / den_(z); }
  Jet operator()(const Jet& z) const;

  RationalFn derivative() const;
  /// R(1/w) as a rational function of w.
  RationalFn inverted_argument() const;
  RationalFn scaled_argument(cplx s) const;
  std::vector<cplx> poles() const { return den_.roots(); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);

 private:
  Poly num_;
  Poly den_;
};

}  // namespace cpn
