#include "job_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cpn::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::config, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

Poly parse_poly(const json& j) {
  if (!j.is_array()) bad("polynomial must be an array of coefficients");
  std::vector<cplx> c;
  for (const auto& x : j) c.push_back(parse_complex(x));
  return Poly(c);
}

FieldExpr parse_term(const json& t) {
  if (!t.is_object()) bad("general term must be an object");
  FieldExpr e(t.contains("coeff") ? parse_complex(t.at("coeff")) : cplx{1.0, 0.0});
  if (t.contains("holo")) e = e * FieldExpr::holo(parse_rational(t.at("holo")));
  if (t.contains("antiholo")) e = e * FieldExpr::antiholo(parse_rational(t.at("antiholo")));
  return e;
}

cplx parse_point(const json& j) { return parse_complex(j); }

}  // namespace

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  bad("coefficient must be a number or [re, im]");
}

RationalFn parse_rational(const json& j) {
  if (j.is_array()) return RationalFn(parse_poly(j));
  if (!j.is_object() || !j.contains("num")) bad("rational function must be a coefficient array or {\"num\", \"den\"}");
  const Poly den = j.contains("den") ? parse_poly(j.at("den")) : Poly::constant(1.0);
  if (den.is_zero()) bad("zero denominator");
  return RationalFn(parse_poly(j.at("num")), den);
}

CpnSolution parse_model(const json& j) {
  if (!j.is_object()) bad("model must be a JSON object");
  if (j.contains("preset")) {
    const double a = j.contains("a") ? j.at("a").get<double>() : 1.0;
    return make_preset(j.at("preset").get<std::string>(), a);
  }
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "holomorphic";
  const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "custom";
  if (kind == "mixed") {
    std::vector<RationalFn> g;
    for (const auto& x : field(j, "generators")) g.push_back(parse_rational(x));
    if (g.size() != 3) bad("mixed construction takes three generators");
    return make_mixed_cp2(g, label);
  }
  const json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<int>() < 1) bad("\"n\" must be a positive integer");
  const int n = nj.get<int>();
  const json& comps = field(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n + 1) bad("\"components\" must hold n+1 entries");
  if (kind == "holomorphic" || kind == "antiholomorphic") {
    std::vector<RationalFn> r;
    for (const auto& x : comps) r.push_back(parse_rational(x));
    return kind == "holomorphic" ? make_holomorphic(n, r, label) : make_antiholomorphic(n, r, label);
  }
  if (kind == "general") {
    std::vector<FieldExpr> f;
    for (const auto& c : comps) {
      if (!c.is_array()) bad("general component must be an array of terms");
      FieldExpr s(0.0);
      for (const auto& t : c) s = s + parse_term(t);
      f.push_back(s);
    }
    return make_field(n, f, label);
  }
  bad("unknown kind \"" + kind + "\"");
}

Chart parse_chart(const std::string& s) {
  if (s == "polar") return Chart::polar;
  if (s == "disk") return Chart::disk;
  if (s == "both") return Chart::both;
  bad("chart must be disk, polar or both");
}

Projection parse_projection(const std::string& s) {
  if (s == "first3") return Projection::first3;
  if (s == "pca") return Projection::pca;
  bad("projection must be first3 or pca");
}

JobConfig parse_job(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  JobConfig c;
  try {
    c.sol = parse_model(j.contains("model") ? j.at("model") : j);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      if (g.contains("chart")) c.grid.chart = parse_chart(g.at("chart").get<std::string>());
      if (g.contains("n_radial")) c.grid.n_radial = g.at("n_radial").get<int>();
      if (g.contains("n_angular")) c.grid.n_angular = g.at("n_angular").get<int>();
      if (g.contains("r_min")) c.grid.r_min = g.at("r_min").get<double>();
      if (g.contains("r_max")) c.grid.r_max = g.at("r_max").get<double>();
    }
    if (j.contains("base_point")) c.base_point = parse_point(j.at("base_point"));
    if (j.contains("point")) c.point = parse_point(j.at("point"));
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("project")) c.projection = parse_projection(j.at("project").get<std::string>());
  } catch (const json::exception& e) {
    bad(std::string("config: ") + e.what());
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const RVector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

namespace {

void emit(std::ostream& os, const json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        emit(os, it.value(), depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case json::value_t::array: {
      // short numeric arrays stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& x : j) {
        if (!first) os << (flat ? ", " : ",");
        if (!flat) os << '\n' << pad;
        first = false;
        emit(os, x, depth + 1);
      }
      if (!flat && !j.empty()) os << '\n' << close;
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        os << fmt(v);
      } else {
        os << "null";
      }
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const json& j) {
  emit(os, j, 0);
  os << '\n';
}

}  // namespace cpn::cli
