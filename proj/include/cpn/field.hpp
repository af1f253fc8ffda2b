#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cpn/rational.hpp"

namespace cpn {

/// Immutable expression tree for a complex scalar field of (xi, xibar),
/// built from rational functions of xi, their conjugates, and field
/// arithmetic. Derivatives are exact and produce new trees.
class FieldExpr {
 public:
  enum class Kind { constant, holo, antiholo, add, sub, mul, div, neg, conj };

  FieldExpr() : FieldExpr(constant(0.0)) {}
  FieldExpr(cplx c) : FieldExpr(constant(c)) {}  // NOLINT
  FieldExpr(double c) : FieldExpr(constant(c)) {}  // NOLINT

  static FieldExpr constant(cplx c);
  /// R(xi)
  static FieldExpr holo(RationalFn r);
  /// conj(R(xi))
  static FieldExpr antiholo(RationalFn r);
  static FieldExpr xi() { return holo(RationalFn::identity()); }
  static FieldExpr xibar() { return antiholo(RationalFn::identity()); }

  Kind kind() const;
  bool is_zero() const;
  bool is_constant() const;

  FieldExpr d() const;
  FieldExpr dbar() const;

  cplx operator()(cplx xi) const;
  Jet jet(cplx xi, int order) const;
  /// Evaluation with a prescribed jet for the coordinate; a holomorphic
  /// reparametrization xi(w) passed here yields w-derivatives.
  Jet jet_at(const Jet& coordinate) const;

  /// Replaces every rational leaf R by map(R); conjugated leaves get map(R) too.
  FieldExpr map_leaves(const std::function<RationalFn(const RationalFn&)>& map) const;

  /// Poles of rational leaves.
  void collect_poles(std::vector<cplx>& out) const;
  /// Denominator expressions of every division node.
  void collect_denominators(std::vector<FieldExpr>& out) const;

  std::string to_string() const;

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator/(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator-(const FieldExpr& a);
  friend FieldExpr conj(const FieldExpr& a);

  struct Node;

 private:
  explicit FieldExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace cpn
