#include "cpn/field.hpp"

#include <sstream>

namespace cpn {

struct FieldExpr::Node {
  Kind kind = Kind::constant;
  cplx value{};
  RationalFn fn;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const FieldExpr::Node>;

NodePtr make_node(FieldExpr::Kind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<FieldExpr::Node>();
  n->kind = k;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_const(const NodePtr& n) { return n->kind == FieldExpr::Kind::constant; }
bool is_const_value(const NodePtr& n, cplx v) { return is_const(n) && n->value == v; }

}  // namespace

FieldExpr FieldExpr::constant(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return FieldExpr(std::shared_ptr<const Node>(std::move(n)));
}

FieldExpr FieldExpr::holo(RationalFn r) {
  if (r.is_zero()) return constant(0.0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::holo;
  n->fn = std::move(r);
  return FieldExpr(std::shared_ptr<const Node>(std::move(n)));
}

FieldExpr FieldExpr::antiholo(RationalFn r) {
  if (r.is_zero()) return constant(0.0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::antiholo;
  n->fn = std::move(r);
  return FieldExpr(std::shared_ptr<const Node>(std::move(n)));
}

FieldExpr::Kind FieldExpr::kind() const { return node_->kind; }
bool FieldExpr::is_zero() const { return is_const_value(node_, 0.0); }
bool FieldExpr::is_constant() const { return is_const(node_); }

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return FieldExpr::constant(a.node_->value + b.node_->value);
  return FieldExpr(make_node(FieldExpr::Kind::add, a.node_, b.node_));
}

FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_constant() && b.is_constant()) return FieldExpr::constant(a.node_->value - b.node_->value);
  return FieldExpr(make_node(FieldExpr::Kind::sub, a.node_, b.node_));
}

FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_zero() || b.is_zero()) return FieldExpr::constant(0.0);
  if (is_const_value(a.node_, 1.0)) return b;
  if (is_const_value(b.node_, 1.0)) return a;
  if (a.is_constant() && b.is_constant()) return FieldExpr::constant(a.node_->value * b.node_->value);
  return FieldExpr(make_node(FieldExpr::Kind::mul, a.node_, b.node_));
}

FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
  if (b.is_zero()) throw Error(Errc::invalid_input, "field division by the zero expression");
  if (a.is_zero()) return FieldExpr::constant(0.0);
  if (is_const_value(b.node_, 1.0)) return a;
  if (a.is_constant() && b.is_constant()) return FieldExpr::constant(a.node_->value / b.node_->value);
  return FieldExpr(make_node(FieldExpr::Kind::div, a.node_, b.node_));
}

FieldExpr operator-(const FieldExpr& a) {
  if (a.is_constant()) return FieldExpr::constant(-a.node_->value);
  if (a.kind() == FieldExpr::Kind::neg) return FieldExpr(a.node_->lhs);
  return FieldExpr(make_node(FieldExpr::Kind::neg, a.node_));
}

FieldExpr conj(const FieldExpr& a) {
  switch (a.kind()) {
    case FieldExpr::Kind::constant: return FieldExpr::constant(std::conj(a.node_->value));
    case FieldExpr::Kind::holo: return FieldExpr::antiholo(a.node_->fn);
    case FieldExpr::Kind::antiholo: return FieldExpr::holo(a.node_->fn);
    case FieldExpr::Kind::conj: return FieldExpr(a.node_->lhs);
    default: return FieldExpr(make_node(FieldExpr::Kind::conj, a.node_));
  }
}

FieldExpr FieldExpr::d() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return constant(0.0);
    case Kind::holo: return holo(n.fn.derivative());
    case Kind::antiholo: return constant(0.0);
    case Kind::add: return FieldExpr(n.lhs).d() + FieldExpr(n.rhs).d();
    case Kind::sub: return FieldExpr(n.lhs).d() - FieldExpr(n.rhs).d();
    case Kind::neg: return -FieldExpr(n.lhs).d();
    case Kind::mul: {
      const FieldExpr a(n.lhs), b(n.rhs);
      return a.d() * b + a * b.d();
    }
    case Kind::div: {
      const FieldExpr a(n.lhs), b(n.rhs);
      return (a.d() * b - a * b.d()) / (b * b);
    }
    case Kind::conj: return conj(FieldExpr(n.lhs).dbar());
  }
  return constant(0.0);
}

FieldExpr FieldExpr::dbar() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return constant(0.0);
    case Kind::holo: return constant(0.0);
    case Kind::antiholo: return antiholo(n.fn.derivative());
    case Kind::add: return FieldExpr(n.lhs).dbar() + FieldExpr(n.rhs).dbar();
    case Kind::sub: return FieldExpr(n.lhs).dbar() - FieldExpr(n.rhs).dbar();
    case Kind::neg: return -FieldExpr(n.lhs).dbar();
    case Kind::mul: {
      const FieldExpr a(n.lhs), b(n.rhs);
      return a.dbar() * b + a * b.dbar();
    }
    case Kind::div: {
      const FieldExpr a(n.lhs), b(n.rhs);
      return (a.dbar() * b - a * b.dbar()) / (b * b);
    }
    case Kind::conj: return conj(FieldExpr(n.lhs).d());
  }
  return constant(0.0);
}

cplx FieldExpr::operator()(cplx xi) const { return jet(xi, 0).value(); }

Jet FieldExpr::jet(cplx xi, int order) const { return jet_at(Jet::variable(xi, order)); }

Jet FieldExpr::jet_at(const Jet& z) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return Jet(n.value).truncated(z.order());
    case Kind::holo: return n.fn(z);
    case Kind::antiholo: return conj(n.fn(z));
    case Kind::add: return FieldExpr(n.lhs).jet_at(z) + FieldExpr(n.rhs).jet_at(z);
    case Kind::sub: return FieldExpr(n.lhs).jet_at(z) - FieldExpr(n.rhs).jet_at(z);
    case Kind::neg: return -FieldExpr(n.lhs).jet_at(z);
    case Kind::mul: return FieldExpr(n.lhs).jet_at(z) * FieldExpr(n.rhs).jet_at(z);
    case Kind::div: return FieldExpr(n.lhs).jet_at(z) / FieldExpr(n.rhs).jet_at(z);
    case Kind::conj: return conj(FieldExpr(n.lhs).jet_at(z));
  }
  return Jet(0.0);
}

FieldExpr FieldExpr::map_leaves(const std::function<RationalFn(const RationalFn&)>& map) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return *this;
    case Kind::holo: return holo(map(n.fn));
    case Kind::antiholo: return antiholo(map(n.fn));
    case Kind::add: return FieldExpr(n.lhs).map_leaves(map) + FieldExpr(n.rhs).map_leaves(map);
    case Kind::sub: return FieldExpr(n.lhs).map_leaves(map) - FieldExpr(n.rhs).map_leaves(map);
    case Kind::neg: return -FieldExpr(n.lhs).map_leaves(map);
    case Kind::mul: return FieldExpr(n.lhs).map_leaves(map) * FieldExpr(n.rhs).map_leaves(map);
    case Kind::div: return FieldExpr(n.lhs).map_leaves(map) / FieldExpr(n.rhs).map_leaves(map);
    case Kind::conj: return conj(FieldExpr(n.lhs).map_leaves(map));
  }
  return *this;
}

void FieldExpr::collect_poles(std::vector<cplx>& out) const {
  const Node& n = *node_;
  if (n.kind == Kind::holo) {
    for (cplx p : n.fn.poles()) out.push_back(p);
  } else if (n.kind == Kind::antiholo) {
    for (cplx p : n.fn.poles()) out.push_back(p);
  }
  if (n.lhs) FieldExpr(n.lhs).collect_poles(out);
  if (n.rhs) FieldExpr(n.rhs).collect_poles(out);
}

void FieldExpr::collect_denominators(std::vector<FieldExpr>& out) const {
  const Node& n = *node_;
  if (n.kind == Kind::div) out.push_back(FieldExpr(n.rhs));
  if (n.lhs) FieldExpr(n.lhs).collect_denominators(out);
  if (n.rhs) FieldExpr(n.rhs).collect_denominators(out);
}

namespace {

std::string poly_string(const Poly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const cplx c = p.coeffs()[k];
    if (c == cplx{}) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

}  // namespace

std::string FieldExpr::to_string() const {
  const Node& n = *node_;
  std::ostringstream os;
  switch (n.kind) {
    case Kind::constant: os << "(" << n.value.real() << (n.value.imag() < 0 ? "-" : "+") << std::abs(n.value.imag()) << "i)"; break;
    case Kind::holo:
    case Kind::antiholo: {
      const char* v = n.kind == Kind::holo ? "z" : "zbar";
      // coefficients of the conjugated leaf are shown conjugated
      const RationalFn& f = n.fn;
      auto shown = [&](const Poly& p) {
        if (n.kind == Kind::holo) return p;
        std::vector<cplx> c = p.coeffs();
        for (auto& x : c) x = std::conj(x);
        return Poly(std::move(c));
      };
      os << "[" << poly_string(shown(f.num()), v);
      if (!f.is_polynomial()) os << "]/[" << poly_string(shown(f.den()), v);
      os << "]";
      break;
    }
    case Kind::add: os << "(" << FieldExpr(n.lhs).to_string() << " + " << FieldExpr(n.rhs).to_string() << ")"; break;
    case Kind::sub: os << "(" << FieldExpr(n.lhs).to_string() << " - " << FieldExpr(n.rhs).to_string() << ")"; break;
    case Kind::mul: os << FieldExpr(n.lhs).to_string() << "*" << FieldExpr(n.rhs).to_string(); break;
    case Kind::div: os << FieldExpr(n.lhs).to_string() << "/" << FieldExpr(n.rhs).to_string(); break;
    case Kind::neg: os << "-" << FieldExpr(n.lhs).to_string(); break;
    case Kind::conj: os << "conj(" << FieldExpr(n.lhs).to_string() << ")"; break;
  }
  return os.str();
}

}  // namespace cpn
