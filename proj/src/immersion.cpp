#include "cpn/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <Eigen/Eigenvalues>

namespace cpn {

namespace {

SuElement checked_su(const CMatrix& m) {
  const double scale = std::max(1.0, max_abs(m));
  const double defect = std::max(max_abs(m + m.adjoint()), std::abs(m.trace()));
  if (defect > 1e-8 * scale) throw Error(Errc::not_in_algebra, "integrated immersion left su(N+1)");
  return SuElement::project(m);
}

}  // namespace

Immersion::Immersion(CpnSolution s, std::optional<cplx> base, std::optional<SuElement> value)
    : sol(std::move(s)),
      base_point(base ? *base : default_base_point(sol)),
      base_value(value ? *value : SuElement::zero(sol.dim())),
      basis(sol.dim()) {
  sol.require_safe(base_point);
  if (base_value.dim() != sol.dim()) throw Error(Errc::dimension_mismatch, "base value size");
}

cplx default_base_point(const CpnSolution& sol) {
  if (sol.is_safe(0.0)) return 0.0;
  for (int k = 0; k < 200; ++k) {
    const cplx p = std::polar(0.05 * std::pow(1.3, k), 0.7 * k);
    if (sol.is_safe(p)) return p;
  }
  throw Error(Errc::singular_point, "no safe base point on the search spiral");
}

std::pair<CMatrix, CMatrix> tangents(const CpnSolution& sol, cplx pt) {
  const CMatrix k = k_matrix(sol, pt).K;
  return {kI * k.adjoint(), kI * k};
}

Path default_path(const Immersion& im, cplx pt) {
  const auto& sing = im.sol.singularities();
  const Path direct = Path::segment(im.base_point, pt);
  if (direct.is_safe(sing)) return direct;
  const cplx mid = 0.5 * (im.base_point + pt);
  const cplx dir = pt - im.base_point;
  const cplx perp = dir == cplx{} ? cplx{1.0, 0.0} : kI * dir / std::abs(dir);
  for (int k = 1; k <= 40; ++k) {
    for (double sgn : {1.0, -1.0}) {
      const double off = 0.05 * k * (1.0 + std::abs(dir));
      Path p({im.base_point, mid + sgn * off * perp, pt});
      if (p.is_safe(sing)) return p;
    }
  }
  throw Error(Errc::singular_point, "no safe path from the base point found");
}

ImmersionSample immerse(const Immersion& im, cplx pt, const Path& path, const IntegrationOptions& opts) {
  if (std::abs(path.front() - im.base_point) > 1e-14 || std::abs(path.back() - pt) > 1e-14)
    throw Error(Errc::invalid_input, "path must run from the base point to the target");
  path.require_safe(im.sol.singularities());
  im.sol.require_safe(pt);
  const CpnSolution& sol = im.sol;
  const CMatrix integral = integrate_form([&](cplx z) { return tangents(sol, z); }, path, opts);
  ImmersionSample s;
  s.pt = pt;
  s.X = checked_su(im.base_value.mat() + integral);
  s.coords = coords(s.X, im.basis);
  std::tie(s.dX, s.dbarX) = tangents(sol, pt);
  return s;
}

ImmersionSample immerse(const Immersion& im, cplx pt, const IntegrationOptions& opts) {
  return immerse(im, pt, default_path(im, pt), opts);
}

double closedness_residual(const Immersion& im, const Path& loop, const IntegrationOptions& opts) {
  if (!loop.is_closed()) throw Error(Errc::invalid_input, "loop is not closed");
  loop.require_safe(im.sol.singularities());
  const CpnSolution& sol = im.sol;
  return max_abs(integrate_form([&](cplx z) { return tangents(sol, z); }, loop, opts));
}

RVector closed_form_cp1(const RationalFn& w, cplx pt) {
  const cplx W = w(pt);
  const double a1 = 1.0 + std::norm(W);
  RVector x(3);
  x << 2.0 * W.real() / a1, (kI * (std::conj(W) - W)).real() / a1, 2.0 * std::norm(W) / a1;
  return x;
}

RVector closed_form_cp2_holo(const RationalFn& w1, const RationalFn& w2, cplx pt) {
  const cplx W1 = w1(pt), W2 = w2(pt);
  const cplx C1 = std::conj(W1), C2 = std::conj(W2);
  const double a = 1.0 + std::norm(W1) + std::norm(W2);
  RVector x(8);
  x << ((W1 + C1) / a).real(), (-kI * (W1 - C1) / a).real(), 2.0 * std::norm(W1) / a, 2.0 * std::norm(W2) / a,
      (-kI * (W2 - C2) / a).real(), (-kI * (C1 * W2 - C2 * W1) / a).real(), ((C1 * W2 + C2 * W1) / a).real(),
      ((W2 + C2) / a).real();
  return x;
}

RVector closed_form_example3(double r, double phi) {
  if (!(r > 0.0)) throw Error(Errc::invalid_input, "radius must be positive");
  const double th = std::log(r);
  RVector x = RVector::Zero(8);
  x(1) = std::exp(-th) * std::tanh(th) * std::sin(phi);
  x(7) = std::exp(-th) * std::tanh(th) * std::cos(phi);
  x(6) = std::exp(-th) / std::cosh(th);
  return x;
}

Cp2Forms weierstrass_forms_cp2(const CpnSolution& sol, cplx pt) {
  if (sol.n() != 2) throw Error(Errc::invalid_input, "CP^2 one-forms need n = 2");
  sol.require_safe(pt);
  const JVec f = sol.jet(pt, 1);
  if (std::abs(f[0].value()) < 1e-12) throw Error(Errc::singular_point, "f_0 vanishes; affine chart undefined");
  const Jet inv = reciprocal(f[0]);
  const Jet w1 = f[1] * inv, w2 = f[2] * inv, c1 = conj(w1), c2 = conj(w2);
  const cplx W1 = w1.value(), W2 = w2.value(), C1 = c1.value(), C2 = c2.value();
  const cplx dW1 = w1.derivative(1, 0), dW2 = w2.derivative(1, 0), dC1 = c1.derivative(1, 0), dC2 = c2.derivative(1, 0);
  const cplx bW1 = w1.derivative(0, 1), bW2 = w2.derivative(0, 1), bC1 = c1.derivative(0, 1), bC2 = c2.derivative(0, 1);
  const double A = 1.0 + std::norm(W1) + std::norm(W2);
  const cplx rho = C1 * dW1 - W1 * dC1 + C2 * dW2 - W2 * dC2;
  const cplx rhob = std::conj(rho);
  const double A2 = A * A;
  Cp2Forms x;
  x[0] = {(dC1 - dW1) / A + rho / A2 * (C1 + W1), (bW1 - bC1) / A + rhob / A2 * (C1 + W1)};
  x[1] = {-kI * ((dW1 + dC1) / A + rho / A2 * (C1 - W1)), -kI * (-(bC1 + bW1) / A + rhob / A2 * (C1 - W1))};
  x[2] = {2.0 * ((W1 * dC1 - C1 * dW1) / A + rho / A2 * std::norm(W1)),
          2.0 * ((C1 * bW1 - W1 * bC1) / A + rhob / A2 * std::norm(W1))};
  x[3] = {2.0 * ((W2 * dC2 - C2 * dW2) / A + rho / A2 * std::norm(W2)),
          2.0 * ((C2 * bW2 - W2 * bC2) / A + rhob / A2 * std::norm(W2))};
  x[4] = {-kI * ((dW2 + dC2) / A + rho / A2 * (C2 - W2)), -kI * (-(bC2 + bW2) / A + rhob / A2 * (C2 - W2))};
  x[5] = {-kI * ((W1 * dC2 - C2 * dW1 - W2 * dC1 + C1 * dW2) / A + rho / A2 * (W1 * C2 - C1 * W2)),
          -kI * ((C2 * bW1 - W1 * bC2 - C1 * bW2 + W2 * bC1) / A + rhob / A2 * (W1 * C2 - C1 * W2))};
  x[6] = {(W1 * dC2 - C2 * dW1 + W2 * dC1 - C1 * dW2) / A + rho / A2 * (W1 * C2 + C1 * W2),
          (C2 * bW1 - W1 * bC2 + C1 * bW2 - W2 * bC1) / A + rhob / A2 * (W1 * C2 + C1 * W2)};
  x[7] = {(dC2 - dW2) / A + rho / A2 * (C2 + W2), (bW2 - bC2) / A + rhob / A2 * (C2 + W2)};
  return x;
}

namespace {

template <class V>
V labels_from_coords(const V& c) {
  V x(8);
  x << 2.0 * c(6), 2.0 * c(4), 2.0 * (c(3) - c(2)), 2.0 * (c(2) + c(3)), 2.0 * c(5), 2.0 * c(1), -2.0 * c(0),
      2.0 * c(7);
  return x;
}

template <class V>
V coords_from_labels(const V& x) {
  V c(8);
  c << -0.5 * x(6), 0.5 * x(5), 0.25 * (x(3) - x(2)), 0.25 * (x(2) + x(3)), 0.5 * x(1), 0.5 * x(4), 0.5 * x(0),
      0.5 * x(7);
  return c;
}

}  // namespace

RVector reference_labels_from_coords(const RVector& c) { return labels_from_coords(c); }

RVector example1_from_coords(const RVector& c) {
  RVector x(8);
  x << -2.0 * c(6), 2.0 * c(4), 2.0 * (c(2) - c(3)), -2.0 * (c(2) + c(3)), 2.0 * c(5), 2.0 * c(1), 2.0 * c(0),
      -2.0 * c(7);
  return x;
}

RVector cp1_from_coords(const RVector& c) {
  RVector x(3);
  x << 2.0 * c(0), 2.0 * c(1), -2.0 * c(2);
  return x;
}

FormsAssembly assemble_forms_cp2(const CpnSolution& sol, cplx pt) {
  const Cp2Forms forms = weierstrass_forms_cp2(sol, pt);
  const auto [dX, dbX] = tangents(sol, pt);
  const SuBasis basis(3);
  FormsAssembly out;
  for (int part = 0; part < 2; ++part) {
    CVector x(8);
    for (int k = 0; k < 8; ++k) x(k) = part == 0 ? forms[k].first : forms[k].second;
    const CMatrix& target = part == 0 ? dX : dbX;
    // dX^1 = X2 S2 + X5 S5 + X6 S6, dX^2 = i(X1 S1 + X3 S3 + X4 S4 + X7 S7 + X8 S8), dX = dX^1 + i dX^2
    const auto& s = basis.elements();
    CMatrix lit = x(1) * s[1].mat() + x(4) * s[4].mat() + x(5) * s[5].mat();
    lit -= x(0) * s[0].mat() + x(2) * s[2].mat() + x(3) * s[3].mat() + x(6) * s[6].mat() + x(7) * s[7].mat();
    out.literal_residual = std::max(out.literal_residual, max_abs(lit - target));
    const CMatrix corr = from_coords_complex(coords_from_labels(x), basis);
    out.corrected_residual = std::max(out.corrected_residual, max_abs(corr - target));
  }
  return out;
}

Mesh build_mesh(const Immersion& im, const GridSpec& grid, const IntegrationOptions& opts) {
  if (grid.n_radial < 1 || grid.n_angular < 1) throw Error(Errc::invalid_input, "empty grid");
  struct Patch {
    bool inverted;
    double r0, r1;
  };
  std::vector<Patch> patches;
  switch (grid.chart) {
    case Chart::polar: patches.push_back({false, grid.r_min, grid.r_max}); break;
    case Chart::disk: patches.push_back({false, grid.r_min, 1.0}); break;
    case Chart::both:
      patches.push_back({false, grid.r_min, 1.0});
      patches.push_back({true, grid.r_min, 1.0});
      break;
  }
  Mesh mesh;
  mesh.dim = im.sol.dim() * im.sol.dim() - 1;
  const int nr = grid.n_radial, nt = grid.n_angular;
  for (const Patch& patch : patches) {
    std::vector<std::optional<RVector>> rows(static_cast<size_t>(nr) * nt);
    std::vector<cplx> xis(rows.size());
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nt; ++j) {
        const double r = nr == 1 ? patch.r0 : patch.r0 + (patch.r1 - patch.r0) * i / (nr - 1);
        const cplx w = std::polar(r, 2.0 * M_PI * j / nt);
        xis[static_cast<size_t>(i) * nt + j] = patch.inverted ? 1.0 / w : w;
      }
    // each ray is integrated incrementally from its innermost safe point
    parallel_for(nt, [&](int j) {
      std::optional<SuElement> prev;
      cplx prev_pt{};
      for (int i = 0; i < nr; ++i) {
        const size_t idx = static_cast<size_t>(i) * nt + j;
        const cplx z = xis[idx];
        if (!im.sol.is_safe(z)) {
          prev.reset();
          continue;
        }
        try {
          if (prev && Path::segment(prev_pt, z).is_safe(im.sol.singularities())) {
            const CMatrix inc = integrate_form([&](cplx u) { return tangents(im.sol, u); }, Path::segment(prev_pt, z), opts);
            prev = checked_su(prev->mat() + inc);
          } else {
            prev = immerse(im, z, opts).X;
          }
          prev_pt = z;
          rows[idx] = coords(*prev, im.basis);
        } catch (const Error&) {
          prev.reset();
        }
      }
    });
    const int offset = static_cast<int>(mesh.vertices.size());
    std::vector<int> index(rows.size(), -1);
    for (size_t k = 0; k < rows.size(); ++k)
      if (rows[k]) {
        index[k] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({xis[k], *rows[k]});
      }
    (void)offset;
    for (int i = 0; i + 1 < nr; ++i)
      for (int j = 0; j < nt; ++j) {
        const int jn = (j + 1) % nt;
        if (nt == 1) break;
        const int a = index[static_cast<size_t>(i) * nt + j], b = index[static_cast<size_t>(i + 1) * nt + j],
                  c = index[static_cast<size_t>(i + 1) * nt + jn], d = index[static_cast<size_t>(i) * nt + jn];
        if (a >= 0 && b >= 0 && c >= 0 && d >= 0) mesh.quads.push_back({a, b, c, d});
      }
  }
  if (mesh.vertices.empty()) throw Error(Errc::invalid_input, "grid contains no safe points");
  return mesh;
}

MeshSummary summarize(const Mesh& mesh) {
  MeshSummary s;
  s.vertices = static_cast<int>(mesh.vertices.size());
  s.faces = static_cast<int>(mesh.quads.size());
  if (mesh.vertices.empty()) return s;
  s.bbox_min = mesh.vertices.front().coords;
  s.bbox_max = mesh.vertices.front().coords;
  for (const auto& v : mesh.vertices) {
    s.bbox_min = s.bbox_min.cwiseMin(v.coords);
    s.bbox_max = s.bbox_max.cwiseMax(v.coords);
  }
  return s;
}

std::vector<std::array<double, 3>> project3(const Mesh& mesh, Projection proj) {
  std::vector<std::array<double, 3>> out;
  out.reserve(mesh.vertices.size());
  if (proj == Projection::first3 || mesh.dim <= 3) {
    for (const auto& v : mesh.vertices) {
      std::array<double, 3> p{0.0, 0.0, 0.0};
      for (int k = 0; k < std::min<int>(3, static_cast<int>(v.coords.size())); ++k) p[k] = v.coords(k);
      out.push_back(p);
    }
    return out;
  }
  const int d = mesh.dim;
  RVector mean = RVector::Zero(d);
  for (const auto& v : mesh.vertices) mean += v.coords;
  mean /= static_cast<double>(mesh.vertices.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& v : mesh.vertices) {
    const RVector c = v.coords - mean;
    cov += c * c.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::MatrixXd axes(d, 3);
  for (int k = 0; k < 3; ++k) {
    RVector e = es.eigenvectors().col(d - 1 - k);
    int arg = 0;
    e.cwiseAbs().maxCoeff(&arg);
    if (e(arg) < 0) e = -e;
    axes.col(k) = e;
  }
  for (const auto& v : mesh.vertices) {
    const RVector p = axes.transpose() * (v.coords - mean);
    out.push_back({p(0), p(1), p(2)});
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_obj(std::ostream& os, const Mesh& mesh, Projection proj) {
  for (const auto& p : project3(mesh, proj)) os << "v " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';
  for (const auto& q : mesh.quads) os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_ply(std::ostream& os, const Mesh& mesh, Projection proj) {
  const auto pts = project3(mesh, proj);
  os << "ply\nformat ascii 1.0\nelement vertex " << pts.size()
     << "\nproperty double x\nproperty double y\nproperty double z\nelement face " << mesh.quads.size()
     << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const auto& p : pts) os << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';
  for (const auto& q : mesh.quads) os << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
}

void write_csv(std::ostream& os, const Mesh& mesh) {
  os << "re_xi,im_xi";
  for (int k = 1; k <= mesh.dim; ++k) os << ",x" << k;
  os << '\n';
  for (const auto& v : mesh.vertices) {
    os << fmt(v.xi.real()) << ',' << fmt(v.xi.imag());
    for (int k = 0; k < v.coords.size(); ++k) os << ',' << fmt(v.coords(k));
    os << '\n';
  }
}

MeshSummary export_mesh(const Immersion& im, const GridSpec& grid, const std::string& prefix, Projection proj,
                        const IntegrationOptions& opts) {
  const Mesh mesh = build_mesh(im, grid, opts);
  auto open = [](const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::io_failure, "cannot write " + path);
    return os;
  };
  {
    auto os = open(prefix + ".obj");
    write_obj(os, mesh, proj);
  }
  {
    auto os = open(prefix + ".ply");
    write_ply(os, mesh, proj);
  }
  {
    auto os = open(prefix + ".csv");
    write_csv(os, mesh);
    if (!os) throw Error(Errc::io_failure, "write failed for " + prefix + ".csv");
  }
  return summarize(mesh);
}

}  // namespace cpn
