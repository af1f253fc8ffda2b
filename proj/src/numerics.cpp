#include "cpn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace cpn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// 1 - 0.999 rounds to slightly above 1e-3; the slack keeps such points unsafe.
constexpr double kRadiusSlack = 1.0 + 1e-9;

double segment_point_distance(cplx a, cplx b, cplx p) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

Singularities Singularities::of(const std::vector<FieldExpr>& exprs) {
  Singularities s;
  for (const auto& e : exprs) {
    e.collect_poles(s.points_);
    e.collect_denominators(s.denominators_);
  }
  return s;
}

void Singularities::merge(const Singularities& o) {
  points_.insert(points_.end(), o.points_.begin(), o.points_.end());
  denominators_.insert(denominators_.end(), o.denominators_.begin(), o.denominators_.end());
}

double zero_set_distance(const FieldExpr& d, cplx pt) {
  cplx z = pt;
  for (int it = 0; it < 60; ++it) {
    const Jet j = d.jet(z, 1);
    const cplx v = j.value();
    const cplx dz = j.derivative(1, 0), dzb = j.derivative(0, 1);
    const cplx dx = dz + dzb, dy = kI * (dz - dzb);
    const double scale = std::abs(dx) + std::abs(dy);
    if (std::abs(v) <= 1e-14 * std::max(1.0, scale)) return std::abs(z - pt);
    if (scale == 0.0) return kInf;
    Eigen::Matrix2d jac;
    jac << dx.real(), dy.real(), dx.imag(), dy.imag();
    const Eigen::Vector2d rhs(-v.real(), -v.imag());
    const Eigen::Vector2d step = jac.completeOrthogonalDecomposition().solve(rhs);
    if (!step.allFinite()) return kInf;
    z += cplx{step(0), step(1)};
    if (std::abs(z - pt) > 1e6 * (1.0 + std::abs(pt))) return kInf;
  }
  return kInf;
}

double Singularities::distance(cplx pt) const {
  double best = kInf;
  for (cplx p : points_) best = std::min(best, std::abs(pt - p));
  for (const auto& d : denominators_) best = std::min(best, zero_set_distance(d, pt));
  return best;
}

bool Singularities::is_safe(cplx pt, double radius) const {
  const double r = radius * kRadiusSlack;
  for (cplx p : points_)
    if (std::abs(pt - p) <= r) return false;
  for (const auto& d : denominators_) {
    // first-order distance estimate screens out far-away zero sets cheaply
    const Jet j = d.jet(pt, 1);
    const double grad = std::abs(j.derivative(1, 0)) + std::abs(j.derivative(0, 1));
    if (grad > 0.0 && std::abs(j.value()) / grad > 20.0 * r) continue;
    if (grad == 0.0 && std::abs(j.value()) > 0.0) {
      if (zero_set_distance(d, pt) <= r) return false;
      continue;
    }
    if (zero_set_distance(d, pt) <= r) return false;
  }
  return true;
}

void Singularities::require_safe(cplx pt, double radius) const {
  if (!is_safe(pt, radius)) {
    std::ostringstream os;
    os << "point (" << pt.real() << ", " << pt.imag() << ") lies within " << radius
       << " of a singularity";
    throw Error(Errc::singular_point, os.str());
  }
}

std::pair<cplx, cplx> fd_wirtinger(const std::function<cplx(cplx)>& fn, cplx pt, double h) {
  const cplx fx = (fn(pt + h) - fn(pt - h)) / (2.0 * h);
  const cplx fy = (fn(pt + kI * h) - fn(pt - kI * h)) / (2.0 * h);
  return {0.5 * (fx - kI * fy), 0.5 * (fx + kI * fy)};
}

double fd_check(const FieldExpr& expr, cplx pt) {
  Singularities::of({expr}).require_safe(pt);
  const double h = 1e-5 * std::max(1.0, std::abs(pt));
  const cplx d = expr.d()(pt), db = expr.dbar()(pt);
  const auto [fd, fdb] = fd_wirtinger([&](cplx z) { return expr(z); }, pt, h);
  const double scale = std::max({std::abs(d), std::abs(db), std::abs(expr(pt)), 1e-300});
  return std::max(std::abs(d - fd), std::abs(db - fdb)) / scale;
}

Path::Path(std::vector<cplx> points) : pts_(std::move(points)) {
  if (pts_.size() < 2) throw Error(Errc::invalid_input, "path needs at least two points");
}

Path Path::square(cplx corner, double side) {
  return Path({corner, corner + side, corner + cplx{side, side}, corner + kI * side, corner});
}

Path Path::circle(cplx center, double radius, int m) {
  std::vector<cplx> v;
  for (int k = 0; k < m; ++k) v.push_back(center + std::polar(radius, 2.0 * M_PI * k / m));
  v.push_back(v.front());
  return Path(std::move(v));
}

Path Path::reversed() const {
  std::vector<cplx> v(pts_.rbegin(), pts_.rend());
  return Path(std::move(v));
}

Path Path::then(const Path& next) const {
  std::vector<cplx> v = pts_;
  v.insert(v.end(), next.pts_.begin() + (next.front() == back() ? 1 : 0), next.pts_.end());
  if (v.size() < 2) v.push_back(v.back());
  return Path(std::move(v));
}

bool Path::is_safe(const Singularities& sing, double radius) const {
  const double r = radius * kRadiusSlack;
  for (size_t k = 0; k + 1 < pts_.size(); ++k) {
    const cplx a = pts_[k], b = pts_[k + 1];
    for (cplx p : sing.points())
      if (segment_point_distance(a, b, p) <= r) return false;
    if (sing.denominators().empty()) continue;
    const int m = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / (0.5 * radius))));
    for (int j = 0; j <= m; ++j) {
      Singularities only_den;
      for (const auto& d : sing.denominators()) only_den.add_denominator(d);
      if (!only_den.is_safe(a + (b - a) * (static_cast<double>(j) / m), radius)) return false;
    }
  }
  return true;
}

void Path::require_safe(const Singularities& sing, double radius) const {
  if (!is_safe(sing, radius)) throw Error(Errc::singular_point, "path passes within the exclusion radius of a singularity");
}

namespace {

// Gauss-Kronrod 7/15 on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double t0, t1;
  int level;
};

}  // namespace

CMatrix integrate_form(const MatrixForm& omega, const Path& path, const IntegrationOptions& opts) {
  CMatrix total;
  bool init = false;
  const auto& pts = path.points();
  for (size_t s = 0; s + 1 < pts.size(); ++s) {
    const cplx a = pts[s], b = pts[s + 1];
    const cplx delta = b - a;
    auto integrand = [&](double t) {
      const auto [f, g] = omega(a + t * delta);
      CMatrix m = f * delta + g * std::conj(delta);
      return m;
    };
    if (!init) {
      total = CMatrix::Zero(omega(a).first.rows(), omega(a).first.cols());
      init = true;
    }
    if (delta == cplx{}) continue;
    std::vector<Piece> stack{{0.0, 1.0, 0}};
    while (!stack.empty()) {
      const Piece p = stack.back();
      stack.pop_back();
      const double c = 0.5 * (p.t0 + p.t1), hw = 0.5 * (p.t1 - p.t0);
      const CMatrix fc = integrand(c);
      CMatrix k15 = fc * kWgk[7];
      CMatrix g7 = fc * kWg[3];
      for (int j = 0; j < 7; ++j) {
        const CMatrix f1 = integrand(c - hw * kXgk[j]);
        const CMatrix f2 = integrand(c + hw * kXgk[j]);
        k15 += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) g7 += (f1 + f2) * kWg[j / 2];
      }
      k15 *= hw;
      g7 *= hw;
      const double err = max_abs(k15 - g7);
      // the target scales with the whole-path magnitude, a stable proxy being this piece
      const double target = opts.tol * (1.0 + max_abs(total + k15)) * (p.t1 - p.t0);
      if (err <= target || err < 1e-15) {
        total += k15;
        continue;
      }
      if (p.level >= opts.max_levels) {
        std::ostringstream os;
        os << "path integral did not converge; worst segment (" << (a + p.t0 * delta) << " -> "
           << (a + p.t1 * delta) << "), error estimate " << err;
        throw Error(Errc::non_convergence, os.str());
      }
      stack.push_back({c, p.t1, p.level + 1});
      stack.push_back({p.t0, c, p.level + 1});
    }
  }
  return total;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = wi;
  }
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (b - a) * x[i] + 0.5 * (b + a);
    w[i] *= 0.5 * (b - a);
  }
  return {x, w};
}

int worker_count() {
  if (const char* env = std::getenv("CPN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> parallel_map(int n, const std::function<double(int)>& fn) {
  std::vector<double> out(static_cast<size_t>(std::max(n, 0)));
  parallel_for(n, [&](int i) { out[i] = fn(i); });
  return out;
}

double pairwise_sum(const std::vector<double>& v) {
  std::function<double(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0.0;
      for (size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return rec(0, v.size());
}

double disk_quadrature(const std::function<double(cplx)>& density, int n) {
  const auto [rx, rw] = gauss_legendre(n, 0.0, 1.0);
  const auto [tx, tw] = gauss_legendre(2 * n, 0.0, 2.0 * M_PI);
  const std::vector<double> rows = parallel_map(n, [&](int i) {
    std::vector<double> terms(tx.size());
    for (size_t j = 0; j < tx.size(); ++j) terms[j] = tw[j] * density(std::polar(rx[i], tx[j]));
    return rw[i] * rx[i] * pairwise_sum(terms);
  });
  return pairwise_sum(rows);
}

QuadratureResult sphere_quadrature(const std::function<double(cplx)>& inner,
                                   const std::function<double(cplx)>& outer, const SphereOptions& opts) {
  auto eval = [&](int n) { return disk_quadrature(inner, n) + disk_quadrature(outer, n); };
  int n = opts.initial_nodes;
  double prev = eval(n);
  while (true) {
    const int next = 2 * n;
    if (next > opts.max_nodes) {
      std::ostringstream os;
      os << "sphere quadrature did not reach relative tolerance " << opts.rel_tol << " with " << n
         << " radial nodes (last value " << prev << ")";
      throw Error(Errc::non_convergence, os.str());
    }
    const double cur = eval(next);
    const double diff = std::abs(cur - prev);
    if (diff <= opts.rel_tol * std::abs(cur) || diff < 1e-14) return {cur, diff, next};
    prev = cur;
    n = next;
  }
}

QuadratureResult sphere_quadrature(const std::function<double(cplx)>& density, const SphereOptions& opts) {
  auto outer = [&](cplx w) {
    const double r2 = std::norm(w);
    return density(1.0 / w) / (r2 * r2);
  };
  return sphere_quadrature(density, outer, opts);
}

}  // namespace cpn
