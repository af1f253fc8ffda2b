#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpn/presets.hpp"

using namespace cpn;

namespace {

RVector X_at(const Immersion& im, cplx z) { return immerse(im, z).coords; }

}  // namespace

TEST(Immersion, BaseValueAndAlgebra) {
  const Immersion im(example1(1.0));
  EXPECT_EQ(im.base_point, cplx(0.0));
  EXPECT_LT(immerse(im, 0.0).coords.norm(), 1e-15);
  const ImmersionSample s = immerse(im, {0.8, -0.3});
  EXPECT_LT(max_abs(s.X.mat() + s.X.mat().adjoint()), 1e-12);
  EXPECT_LT(std::abs(s.X.mat().trace()), 1e-12);
  EXPECT_LT((coords(s.X, im.basis) - s.coords).norm(), 1e-13);
}

TEST(Immersion, TangentsMatchFiniteDifferencesOfX) {
  // dX/dxi from central differences of the integrated immersion
  for (const auto& sol : {cp1_power(2), example1(0.5), example2(), example3()}) {
    const Immersion im(sol);
    const cplx z{0.55, 0.35};
    const double h = 1e-4;
    const CMatrix xp = immerse(im, z + h).X.mat(), xm = immerse(im, z - h).X.mat();
    const CMatrix yp = immerse(im, z + kI * h).X.mat(), ym = immerse(im, z - kI * h).X.mat();
    const CMatrix dx = (xp - xm) / (2 * h), dy = (yp - ym) / (2 * h);
    const auto [d, db] = tangents(sol, z);
    EXPECT_LT(max_abs(0.5 * (dx - kI * dy) - d), 1e-7) << sol.label();
    EXPECT_LT(max_abs(0.5 * (dx + kI * dy) - db), 1e-7) << sol.label();
    // X real: dbar X = (d X)^dagger up to the sign of su
    EXPECT_LT(max_abs(db + d.adjoint()), 1e-13);
  }
}

TEST(Immersion, PathIndependenceAroundLoops) {
  const Immersion im(example2());
  EXPECT_LT(closedness_residual(im, Path::circle({0.7, 0.3}, 0.4, 24)), 1e-10);
  EXPECT_LT(closedness_residual(im, Path::square({-0.5, -0.5}, 1.0)), 1e-10);
  const cplx z{1.1, 0.4};
  const Path bent({im.base_point, cplx{0.0, 1.5}, cplx{1.8, 1.0}, z});
  EXPECT_LT((immerse(im, z, bent).coords - immerse(im, z).coords).norm(), 1e-10);
}

TEST(Immersion, DetoursAroundSingularities) {
  // general field with a pole at 0.5 on the straight line from the base point
  const std::vector<FieldExpr> f{
      FieldExpr(1.0), FieldExpr::holo(RationalFn(Poly({1.0}), Poly({-0.5, 1.0})))};
  const Immersion im(make_holomorphic(1, {RationalFn::constant(1.0), RationalFn(Poly({1.0}), Poly({-0.5, 1.0}))}));
  const Immersion img(make_field(1, f), 0.0);
  const Path p = default_path(img, 1.0);
  EXPECT_TRUE(p.is_safe(img.sol.singularities()));
  EXPECT_GT(p.points().size(), 2u);
  EXPECT_EQ(p.back(), cplx(1.0));
  // the holomorphic version clears the pole, the straight path is used
  EXPECT_EQ(default_path(im, 1.0).points().size(), 2u);
  EXPECT_THROW(immerse(img, 0.5), Error);
}

TEST(ClosedForm, Cp1DiffersByConstant) {
  const RationalFn w(Poly({0.0, 0.0, 1.0}));
  const Immersion im(cp1_power(2));
  const cplx a{0.3, 0.2}, b{-1.1, 0.9};
  const RVector da = cp1_from_coords(X_at(im, a)) - closed_form_cp1(w, a);
  const RVector db = cp1_from_coords(X_at(im, b)) - closed_form_cp1(w, b);
  EXPECT_LT((da - db).norm(), 1e-10);
}

TEST(ClosedForm, Cp2HolomorphicDiffersByConstant) {
  const double a = 0.8;
  const RationalFn w1(Poly({0.0, a})), w2(Poly({0.0, 0.0, 1.0}));
  const Immersion im(example1(a));
  const cplx p{0.3, 0.2}, q{-0.9, 1.3};
  const RVector dp = example1_from_coords(X_at(im, p)) - closed_form_cp2_holo(w1, w2, p);
  const RVector dq = example1_from_coords(X_at(im, q)) - closed_form_cp2_holo(w1, w2, q);
  EXPECT_LT((dp - dq).norm(), 1e-10);
}

TEST(ClosedForm, Example3SurfaceProfile) {
  for (double r : {0.5, 1.0, 2.0}) {
    const double phi = 0.3;
    const RVector x = closed_form_example3(r, phi);
    const double rho = (r * r - 1) / (r * (r * r + 1));
    EXPECT_NEAR(x(1), rho * std::sin(phi), 1e-14);
    EXPECT_NEAR(x(7), rho * std::cos(phi), 1e-14);
    EXPECT_NEAR(x(6), 2.0 / (1 + r * r), 1e-14);
  }
  EXPECT_THROW(closed_form_example3(0.0, 0.0), Error);
}

TEST(Forms, CorrectedAssignmentReproducesImmersion) {
  const CpnSolution s = example1(1.0);
  for (cplx z : {cplx{0.4, 0.1}, cplx{-0.7, 0.6}}) {
    const FormsAssembly f = assemble_forms_cp2(s, z);
    EXPECT_LT(f.corrected_residual, 1e-12);
  }
}

TEST(Forms, LabelMapsAreLinear) {
  RVector c = RVector::Zero(8);
  c(6) = 1.0;  // c7
  const RVector p = reference_labels_from_coords(c);
  EXPECT_EQ(p(0), 2.0);
  c.setZero();
  c(0) = 1.0;  // c1
  EXPECT_EQ(reference_labels_from_coords(c)(6), -2.0);
  EXPECT_EQ(cp1_from_coords(RVector::Unit(3, 2))(2), -2.0);
}

TEST(Mesh, PolarGridAndExport) {
  const Immersion im(example1(1.0));
  GridSpec g;
  g.n_radial = 6;
  g.n_angular = 8;
  const Mesh m = build_mesh(im, g);
  EXPECT_EQ(m.vertices.size(), 48u);
  EXPECT_EQ(m.dim, 8);
  // each vertex agrees with a direct immersion
  EXPECT_LT((m.vertices[13].coords - X_at(im, m.vertices[13].xi)).norm(), 1e-9);
  const MeshSummary s = summarize(m);
  EXPECT_EQ(s.vertices, 48);
  EXPECT_GT(s.faces, 0);

  const auto dir = std::filesystem::temp_directory_path() / "cpn_mesh_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "m").string();
  const MeshSummary e = export_mesh(im, g, prefix, Projection::pca);
  EXPECT_EQ(e.vertices, 48);
  std::ifstream obj(prefix + ".obj");
  int v = 0, f = 0;
  for (std::string line; std::getline(obj, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 48);
  EXPECT_EQ(f, e.faces);
  EXPECT_TRUE(std::filesystem::exists(prefix + ".ply"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
  try {
    export_mesh(im, g, "/nonexistent_dir/x/m");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::io_failure);
  }
}

TEST(Mesh, BothChartsCoverTheSphere) {
  const Immersion im(cp1_power(1));
  GridSpec g;
  g.chart = Chart::both;
  g.n_radial = 5;
  g.n_angular = 6;
  const Mesh m = build_mesh(im, g);
  EXPECT_GT(m.vertices.size(), 30u);
  double far = 0;
  for (const auto& v : m.vertices) far = std::max(far, std::abs(v.xi));
  EXPECT_GT(far, 1.5);
}

TEST(Mesh, ProjectionFirst3) {
  const Immersion im(cp1_power(1));
  GridSpec g;
  g.n_radial = 3;
  g.n_angular = 4;
  const Mesh m = build_mesh(im, g);
  const auto p = project3(m, Projection::first3);
  ASSERT_EQ(p.size(), m.vertices.size());
  EXPECT_EQ(p[5][2], m.vertices[5].coords(2));
  std::ostringstream csv;
  write_csv(csv, m);
  EXPECT_NE(csv.str().find('\n'), std::string::npos);
}

TEST(Fmt, SeventeenDigits) {
  EXPECT_EQ(std::stod(fmt(0.1)), 0.1);
  EXPECT_EQ(std::stod(fmt(M_PI)), M_PI);
}
