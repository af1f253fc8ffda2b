#include <gtest/gtest.h>

#include <sstream>

#include "job_config.hpp"

using namespace cpn;
using cli::json;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::io_failure;
}

}  // namespace

TEST(JobConfig, ParsesHolomorphicModel) {
  const json j = json::parse(R"({"model": {"n": 2, "components": [[1], [0, [0, 2]], {"num": [1], "den": [1, 1]}]},
                                  "grid": {"chart": "disk", "n_radial": 4}, "point": [0.1, 0.2], "tol": 1e-6})");
  const cli::JobConfig c = cli::parse_job(j);
  ASSERT_TRUE(c.sol.has_value());
  EXPECT_EQ(c.sol->n(), 2);
  EXPECT_EQ(c.grid.chart, Chart::disk);
  EXPECT_EQ(c.grid.n_radial, 4);
  EXPECT_EQ(c.point, cplx(0.1, 0.2));
  EXPECT_EQ(c.tol, 1e-6);
  // W1 = 2i xi, W2 = 1/(1 + xi)
  const cplx z{0.3, 0.1};
  const CVector v = c.sol->value(z);
  EXPECT_LT(std::abs(v(1) / v(0) - cplx(0, 2) * z), 1e-13);
  EXPECT_LT(std::abs(v(2) / v(0) - 1.0 / (1.0 + z)), 1e-13);
}

TEST(JobConfig, ParsesGeneralAndMixed) {
  const json g = json::parse(
      R"({"n": 1, "kind": "general", "components": [[{"coeff": 1}], [{"holo": [0, 1]}, {"coeff": 0.2, "antiholo": [0, 1]}]]})");
  const CpnSolution s = cli::parse_model(g);
  EXPECT_EQ(s.kind(), SolutionKind::general);
  const cplx z{0.5, 0.5};
  EXPECT_LT(std::abs(s.value(z)(1) - (z + 0.2 * std::conj(z))), 1e-14);
  const json m = json::parse(R"({"kind": "mixed", "generators": [[1], [0, 1], [0, 0, 1]]})");
  EXPECT_EQ(cli::parse_model(m).kind(), SolutionKind::mixed);
  EXPECT_EQ(cli::parse_model(json::parse(R"({"preset": "ex1", "a": 2})")).label().empty(), false);
}

TEST(JobConfig, SchemaErrorsAreConfigErrors) {
  const char* bad[] = {
      R"({"kind": "holomorphic", "components": [[1], [0, 1]]})",
      R"({"n": 1, "components": [[1]]})",
      R"({"n": 1, "components": [[1], ["x"]]})",
      R"({"n": 1, "kind": "weird", "components": [[1], [0, 1]]})",
      R"({"n": 1, "components": [[1], {"num": [1], "den": []}]})",
      R"({"kind": "mixed", "generators": [[1], [0, 1]]})",
      R"({"preset": "nope"})",
      R"({"n": 1.5, "components": [[1], [0, 1]]})",
      R"({"model": {"n": 1, "components": [[1], [0, 1]]}, "grid": {"n_radial": "many"}})",
      R"([1, 2])",
  };
  for (const char* b : bad) EXPECT_EQ(code_of([&] { cli::parse_job(json::parse(b)); }), Errc::config) << b;
}

TEST(JobConfig, MissingFileIsIoFailure) {
  EXPECT_EQ(code_of([] { cli::read_json_file("/nonexistent/job.json"); }), Errc::io_failure);
}

TEST(WriteJson, FullPrecisionAndSortedKeys) {
  std::ostringstream os;
  cli::write_json(os, {{"b", 0.1}, {"a", json::array({1.0 / 3.0, 2})}});
  const std::string s = os.str();
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
  EXPECT_NE(s.find("0.33333333333333331"), std::string::npos);
  EXPECT_EQ(json::parse(s).at("b").get<double>(), 0.1);
}
