#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "cpn/model.hpp"

namespace cpn {

struct Immersion {
  Immersion(CpnSolution s, std::optional<cplx> base = std::nullopt, std::optional<SuElement> value = std::nullopt);

  CpnSolution sol;
  cplx base_point;
  SuElement base_value;
  SuBasis basis;
};

struct ImmersionSample {
  cplx pt;
  SuElement X;
  RVector coords;
  CMatrix dX;     // i K^dagger
  CMatrix dbarX;  // i K
};

/// Base point 0 when safe, else the first safe point of rho_k = 0.05*1.3^k, theta_k = 0.7k.
cplx default_base_point(const CpnSolution& sol);

/// Tangents i K^dagger and i K at pt.
std::pair<CMatrix, CMatrix> tangents(const CpnSolution& sol, cplx pt);

/// Straight segment when safe, otherwise a two-leg detour around registered singularities.
Path default_path(const Immersion& im, cplx pt);

ImmersionSample immerse(const Immersion& im, cplx pt, const Path& path, const IntegrationOptions& opts = {});
ImmersionSample immerse(const Immersion& im, cplx pt, const IntegrationOptions& opts = {});

/// max-norm of the loop integral of i(K^dagger dxi + K dxibar).
double closedness_residual(const Immersion& im, const Path& loop, const IntegrationOptions& opts = {});

RVector closed_form_cp1(const RationalFn& w, cplx pt);
RVector closed_form_cp2_holo(const RationalFn& w1, const RationalFn& w2, cplx pt);
RVector closed_form_example3(double r, double phi);

/// Coefficients (dxi, dxibar) of the eight real one-forms in reference form for CP^2.
using Cp2Forms = std::array<std::pair<cplx, cplx>, 8>;
Cp2Forms weierstrass_forms_cp2(const CpnSolution& sol, cplx pt);

struct FormsAssembly {
  double literal_residual = 0.0;    // reference assignment of forms to S_i
  double corrected_residual = 0.0;  // assignment X1=2c7, X2=2c5, X3=2(c4-c3), X4=2(c3+c4), X5=2c6, X6=2c2, X7=-2c1, X8=2c8
};
FormsAssembly assemble_forms_cp2(const CpnSolution& sol, cplx pt);

/// S-basis coordinates c of a su(3) element mapped to the reference one-form labels.
RVector reference_labels_from_coords(const RVector& c);
/// Closed-form holomorphic CP^2 coordinates from immersion coordinates (up to a constant).
RVector example1_from_coords(const RVector& c);
/// Closed-form CP^1 coordinates from immersion coordinates (up to a constant).
RVector cp1_from_coords(const RVector& c);

enum class Chart { polar, disk, both };
enum class Projection { first3, pca };

struct GridSpec {
  Chart chart = Chart::polar;
  int n_radial = 32;
  int n_angular = 32;
  double r_min = 0.05;
  double r_max = 3.0;
};

struct MeshVertex {
  cplx xi;
  RVector coords;
};

struct Mesh {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<int, 4>> quads;
  int dim = 0;
};

struct MeshSummary {
  int vertices = 0;
  int faces = 0;
  RVector bbox_min;
  RVector bbox_max;
};

/// Samples the immersion on the grid. Points that are unsafe are skipped and
/// faces touching them are dropped.
Mesh build_mesh(const Immersion& im, const GridSpec& grid, const IntegrationOptions& opts = {});
MeshSummary summarize(const Mesh& mesh);

/// 3D positions: first three coordinates or projection onto the top principal axes.
std::vector<std::array<double, 3>> project3(const Mesh& mesh, Projection proj);

void write_obj(std::ostream& os, const Mesh& mesh, Projection proj);
void write_ply(std::ostream& os, const Mesh& mesh, Projection proj);
void write_csv(std::ostream& os, const Mesh& mesh);

/// Builds the mesh and writes <prefix>.obj, <prefix>.ply and <prefix>.csv.
/// Throws io_failure when a file cannot be written and invalid_input for an empty grid.
MeshSummary export_mesh(const Immersion& im, const GridSpec& grid, const std::string& prefix,
                        Projection proj = Projection::first3, const IntegrationOptions& opts = {});

/// 17 significant digits.
std::string fmt(double v);

}  // namespace cpn
