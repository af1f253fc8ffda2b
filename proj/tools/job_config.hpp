#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cpn/frames.hpp"
#include "cpn/presets.hpp"

namespace cpn::cli {

using nlohmann::json;

struct JobConfig {
  std::optional<CpnSolution> sol;
  GridSpec grid;
  std::optional<cplx> base_point;
  cplx point{0.5, 0.25};
  double tol = 1e-8;
  Projection projection = Projection::first3;
};

/// Coefficient: a number or [re, im].
cplx parse_complex(const json& j);
/// [c0, c1, ...] (polynomial) or {"num": [...], "den": [...]}; ascending powers.
RationalFn parse_rational(const json& j);

/// Model section: {"n", "kind", "components"} or {"kind": "mixed", "generators"} or {"preset", "a"}.
/// Schema violations throw Errc::config.
CpnSolution parse_model(const json& j);
JobConfig parse_job(const json& j);
json read_json_file(const std::string& path);

Chart parse_chart(const std::string& s);
Projection parse_projection(const std::string& s);

json to_json(cplx z);
json to_json(const CMatrix& m);
json to_json(const RVector& v);

/// Pretty JSON with every floating value written with 17 significant digits.
void write_json(std::ostream& os, const json& j);

}  // namespace cpn::cli
