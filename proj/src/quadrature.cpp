#include "eos/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "eos/errors.hpp"
#include "eos/units.hpp"

namespace eos {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the first eigenvector components.
Rule golub_welsch(int n, double mu0, const std::function<double(int)>& beta) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    J(k, k - 1) = J(k - 1, k) = beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  // symmetrize: both rules are even, and exact symmetry keeps folded sums clean
  for (int i = 0; i < n / 2; ++i) {
    double xm = 0.5 * (r.x[n - 1 - i] - r.x[i]);
    double wm = 0.5 * (r.w[n - 1 - i] + r.w[i]);
    r.x[i] = -xm;
    r.x[n - 1 - i] = xm;
    r.w[i] = r.w[n - 1 - i] = wm;
  }
  if (n % 2) r.x[n / 2] = 0.0;
  return r;
}

template <class Make>
const Rule& cached(std::map<int, Rule>& cache, std::mutex& m, int n, Make make) {
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make()).first;
  return it->second;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  static std::mutex m;
  return cached(cache, m, n, [n] {
    return golub_welsch(n, 2.0, [](int k) { return k / std::sqrt(4.0 * k * k - 1.0); });
  });
}

const Rule& gauss_hermite(int n) {
  static std::map<int, Rule> cache;
  static std::mutex m;
  return cached(cache, m, n, [n] {
    return golub_welsch(n, std::sqrt(pi), [](int k) { return std::sqrt(0.5 * k); });
  });
}

std::vector<double> interior_breaks(double a, double b, std::vector<double> breaks) {
  std::vector<double> out;
  double eps = 1e-13 * (std::abs(a) + std::abs(b) + 1.0);
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks) {
    if (!(x > a + eps && x < b - eps)) continue;
    if (!out.empty() && x - out.back() < eps) continue;
    out.push_back(x);
  }
  return out;
}

Rule composite_legendre(double a, double b, std::vector<double> breaks, int n, int panels) {
  auto pts = interior_breaks(a, b, std::move(breaks));
  pts.insert(pts.begin(), a);
  pts.push_back(b);
  const Rule& g = gauss_legendre(n);
  Rule r;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double h = (pts[k + 1] - pts[k]) / panels;
    for (int p = 0; p < panels; ++p) {
      double lo = pts[k] + p * h;
      for (std::size_t i = 0; i < g.size(); ++i) {
        r.x.push_back(lo + 0.5 * h * (g.x[i] + 1.0));
        r.w.push_back(0.5 * h * g.w[i]);
      }
    }
  }
  return r;
}

namespace {

struct Piece {
  double value = 0.0, err = 0.0, l1 = 0.0;
};

Piece gk(const Fn& f, double a, double b, double tol) {
  Piece p;
  if (b <= a) return p;
  // depth 10 is ample between breaks; deeper splits only sum up rounding
  // noise of integrands built from cancelling geometry
  p.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 10, tol, &p.err,
                                                                          &p.l1);
  if (!std::isfinite(p.value)) throw NumericError("quadrature produced a non-finite value");
  return p;
}

Piece gk_split(const Fn& f, double a, double b, double tol, std::vector<double> breaks) {
  auto pts = interior_breaks(a, b, std::move(breaks));
  pts.insert(pts.begin(), a);
  pts.push_back(b);
  Piece sum;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    Piece p = gk(f, pts[k], pts[k + 1], tol);
    sum.value += p.value;
    sum.err += p.err;
    sum.l1 += p.l1;
  }
  return sum;
}

// the error budget applies to the whole integral, so a sliver next to a
// kink may miss its own relative target without failing the call
struct Budget {
  double err = 0.0, l1 = 0.0, value = 0.0;
  double lo, hi;
  void add(const Piece& p) {
    value += p.value;
    err += p.err;
    l1 += p.l1;
  }
  double check(double tol, double abs_floor) const {
    if (err > 1e4 * tol * l1 && err > abs_floor && err > 1e-300) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "adaptive quadrature missed tolerance on [%.6g, %.6g] (error %.3g, |f| %.3g)",
                    lo, hi, err, l1);
      throw NumericError(msg);
    }
    return value;
  }
};

}  // namespace

double integrate(const Fn& f, double a, double b, double tol, std::vector<double> breaks,
                 double abs_floor) {
  if (b <= a) return 0.0;
  auto pts = interior_breaks(a, b, std::move(breaks));
  pts.insert(pts.begin(), a);
  pts.push_back(b);
  Budget s{.lo = a, .hi = b};
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) s.add(gk(f, pts[k], pts[k + 1], tol));
  return s.check(tol, abs_floor);
}

double pv_integrate(const Fn& f, double a, double b, std::vector<double> poles, double tol,
                    std::vector<double> breaks, double abs_floor) {
  if (b <= a) return 0.0;
  double scale = std::abs(a) + std::abs(b) + (b - a);
  // poles closer than this are treated as one
  double merge = 1e-12 * scale;
  std::sort(poles.begin(), poles.end());
  // geometric breaks toward each pole, including poles just outside [a, b],
  // so near-singular stretches next to a window or an end are resolved
  for (double p : poles) {
    double d;
    if (p <= a) d = a - p;
    else if (p >= b) d = p - b;
    else d = 0.5 * std::min(p - a, b - p);
    if (!(d > 0.0)) continue;
    for (double r = d; r < b - a; r *= 2.0) {
      breaks.push_back(p - r);
      breaks.push_back(p + r);
    }
  }
  std::vector<double> centers;
  for (double p : poles) {
    if (!(p > a && p < b)) continue;
    if (!centers.empty() && p - centers.back() < merge) continue;
    centers.push_back(p);
  }
  auto br = interior_breaks(a, b, breaks);
  // windows are limited by the other poles and the ends only; breaks that
  // fall inside a window become breaks of the folded integrand
  std::vector<double> special = centers;
  special.push_back(a);
  special.push_back(b);

  Budget s{.lo = a, .hi = b};
  std::vector<std::pair<double, double>> windows;
  for (double p : centers) {
    double gap = b - a;
    for (double q : special) {
      if (q == p) continue;
      gap = std::min(gap, std::abs(q - p));
    }
    double h = 0.5 * gap;
    if (!(h > 0.0)) continue;
    windows.emplace_back(p - h, p + h);
    std::vector<double> fb;
    // a break hugging the pole would only expose the cancellation noise of
    // the folded sum; the kink it marks is negligible at that distance
    for (double q : br)
      if (std::abs(q - p) < h && std::abs(q - p) > 1e-3 * h) fb.push_back(std::abs(q - p));
    s.add(gk_split([&](double t) { return f(p + t) + f(p - t); }, 0.0, h, tol, fb));
  }
  // breaks swallowed by a window are already handled inside it
  std::vector<double> cuts;
  for (double q : br) {
    bool inside = false;
    for (auto [wl, wh] : windows) inside = inside || (q > wl && q < wh);
    if (!inside) cuts.push_back(q);
  }
  for (auto [lo, hi] : windows) {
    cuts.push_back(lo);
    cuts.push_back(hi);
  }
  auto pts = interior_breaks(a, b, cuts);
  pts.insert(pts.begin(), a);
  pts.push_back(b);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double lo = pts[k], hi = pts[k + 1];
    bool inside = false;
    for (auto [wl, wh] : windows) {
      if (lo >= wl - merge && hi <= wh + merge) inside = true;
    }
    if (!inside) s.add(gk(f, lo, hi, tol));
  }
  return s.check(tol, abs_floor);
}

}  // namespace eos
