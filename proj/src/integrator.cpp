#include "eos/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "eos/errors.hpp"
#include "eos/quadrature.hpp"
#include "eos/special.hpp"
#include "eos/units.hpp"

namespace eos {

using cd = std::complex<double>;

double assemble_signal(const WavePlateCoeffs& c, double i_c, double i_r_prime,
                       double i_r_dprime) {
  return c.p_vac * i_c - 0.5 * hbar * (c.p_s_prime * i_r_prime + c.p_s_dprime * i_r_dprime);
}

namespace {

constexpr double kappa_r = mu0 / (4.0 * pi);
constexpr double kappa_c = mu0 * hbar / (8.0 * pi * pi);

bool centered(const Profile1D& f) {
  if (f.gaussian) return f.mu == 0.0;
  return f.c.front() == -f.c.back();
}

// Nodes/weights for int f(x) g(x) dx with the profile f folded into the weights.
Rule profile_rule(const Profile1D& f, const IntegratorOptions& o, bool fold) {
  Rule r;
  if (f.gaussian) {
    const Rule& gh = gauss_hermite(o.n_transverse);
    for (std::size_t i = 0; i < gh.size(); ++i) {
      if (fold && gh.x[i] < 0.0) continue;
      r.x.push_back(f.mu + std::sqrt(2.0) * f.sigma * gh.x[i]);
      r.w.push_back(gh.w[i] / std::sqrt(pi) * (fold && gh.x[i] > 0.0 ? 2.0 : 1.0));
    }
    return r;
  }
  double lo = fold ? 0.0 : f.c.front();
  r = composite_legendre(lo, f.c.back(), f.c, o.gl_order, o.rect_panels);
  for (std::size_t i = 0; i < r.size(); ++i) r.w[i] *= f.value(r.x[i]) * (fold ? 2.0 : 1.0);
  return r;
}

}  // namespace

SpatialNodes spatial_nodes(const OverlapKernel& k, const IntegratorOptions& o, bool fold_z) {
  SpatialNodes n;
  bool fold_y = centered(k.y);
  Rule rx = profile_rule(k.x, o, false);
  Rule ry = profile_rule(k.y, o, fold_y);
  double L = k.length;
  int zp = std::max(1, o.z_panels / 2);
  Rule rz = fold_z ? composite_legendre(0.0, L, {}, o.gl_order, zp)
                   : composite_legendre(-L, L, {0.0}, o.gl_order, zp);
  for (std::size_t i = 0; i < rz.size(); ++i) rz.w[i] *= k.z.value(rz.x[i]) * (fold_z ? 2.0 : 1.0);

  // ball around rho = 0 where the kernels are singular
  double sx = k.x.gaussian ? k.x.sigma : 0.5 * (k.x.c.back() - k.x.c.front());
  double sy = k.y.gaussian ? k.y.sigma : 0.5 * (k.y.c.back() - k.y.c.front());
  double rb = k.x.gaussian ? 3.0 * std::max(sx, sy) : std::max(sx, sy);
  rb = std::max(rb, 4.0 * o.rho_cutoff);
  auto [xlo, xhi] = k.x.support(9.0);
  auto [ylo, yhi] = k.y.support(9.0);
  double gapx = std::max({0.0, xlo, -xhi}), gapy = std::max({0.0, ylo, -yhi});
  bool ball = std::hypot(gapx, gapy) < rb;
  auto eta = [rb](double r) { return 1.0 - smooth_step((r - 0.5 * rb) / (0.5 * rb)); };

  double wmax = 0.0;
  std::vector<double> wx(rx.w), wy(ry.w);
  for (double a : wx)
    for (double b : wy)
      for (double c : rz.w) wmax = std::max(wmax, std::abs(a * b * c));
  double prune = 1e-18 * wmax;

  for (std::size_t i = 0; i < rx.size(); ++i)
    for (std::size_t j = 0; j < ry.size(); ++j) {
      double wxy = rx.w[i] * ry.w[j];
      for (std::size_t l = 0; l < rz.size(); ++l) {
        double w = wxy * rz.w[l];
        if (std::abs(w) <= prune) continue;
        double r = std::sqrt(rx.x[i] * rx.x[i] + ry.x[j] * ry.x[j] + rz.x[l] * rz.x[l]);
        if (ball) w *= 1.0 - eta(r);
        else if (r < o.rho_cutoff) w = 0.0;
        if (w == 0.0) continue;
        n.x.push_back(rx.x[i]);
        n.y.push_back(ry.x[j]);
        n.z.push_back(rz.x[l]);
        n.w.push_back(w);
      }
    }
  if (!ball) return n;

  // spherical coordinates with polar axis along x
  int per = std::max(1, o.ball_radial / (2 * o.gl_order));
  Rule rr = composite_legendre(o.rho_cutoff, rb, {0.5 * rb}, o.gl_order, per);
  Rule rt = composite_legendre(0.0, pi, {0.5 * pi}, o.gl_order, std::max(1, o.ball_polar / (2 * o.gl_order)));
  double phi_hi = fold_z ? pi : 2.0 * pi;
  std::vector<double> phi_breaks = {0.5 * pi, pi, 1.5 * pi};
  int quarters = fold_z ? 2 : 4;
  Rule rp = composite_legendre(0.0, phi_hi, phi_breaks, o.gl_order,
                               std::max(1, o.ball_azimuth / (quarters * o.gl_order)));
  for (std::size_t a = 0; a < rr.size(); ++a) {
    double r = rr.x[a];
    double wr = rr.w[a] * r * r * eta(r);
    for (std::size_t t = 0; t < rt.size(); ++t) {
      double st = std::sin(rt.x[t]), ct = std::cos(rt.x[t]);
      double wt = wr * rt.w[t] * st;
      for (std::size_t p = 0; p < rp.size(); ++p) {
        double x = r * ct, y = r * st * std::cos(rp.x[p]), z = r * st * std::sin(rp.x[p]);
        double w = wt * rp.w[p] * k.x.value(x) * k.y.value(y) * k.z.value(z) * (fold_z ? 2.0 : 1.0);
        if (w == 0.0) continue;
        n.x.push_back(x);
        n.y.push_back(y);
        n.z.push_back(z);
        n.w.push_back(w);
      }
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// spectral path

namespace {

template <bool Parallel>
std::vector<cd> moments_impl(const SpatialNodes& n, const KernelSet& ks, double b,
                             const std::vector<double>& omega) {
  const std::size_t nn = n.size();
  std::vector<double> rho(nn), q(nn), s2(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    rho[i] = std::sqrt(n.x[i] * n.x[i] + n.y[i] * n.y[i] + n.z[i] * n.z[i]);
    double c2 = n.x[i] * n.x[i] / (rho[i] * rho[i]);
    q[i] = 3.0 * c2 - 1.0;
    s2[i] = 1.0 - c2;
  }
  std::vector<cd> m(omega.size());
  const long nw = static_cast<long>(omega.size());
#pragma omp parallel for schedule(dynamic, 4) if (Parallel)
  for (long j = 0; j < nw; ++j) {
    double w = omega[j];
    if (w == 0.0) {
      cd eps = permittivity(ks.medium, 0.0);
      double s = 0.0;
      for (std::size_t i = 0; i < nn; ++i) s += n.w[i] * q[i] / (rho[i] * rho[i] * rho[i]);
      m[j] = mu0 * c_light * c_light / (4.0 * pi * eps) * s;
      continue;
    }
    cd k = refractive_index(ks.medium, w) * w / c_light;
    double kr = k.real(), ki = k.imag();
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      double r = rho[i];
      double mag = std::exp(-ki * r) / (4.0 * pi * r);
      double ph = kr * r;
      double e_re = mag * std::cos(ph), e_im = mag * std::sin(ph);
      // 1 / (k r)
      double a = kr * r, bb = ki * r, den = a * a + bb * bb;
      double inv_re = a / den, inv_im = -bb / den;
      // bracket = s2 + q (inv^2 - i inv)
      double i2_re = inv_re * inv_re - inv_im * inv_im, i2_im = 2.0 * inv_re * inv_im;
      double br_re = s2[i] + q[i] * (i2_re + inv_im);
      double br_im = q[i] * (i2_im - inv_re);
      double wz = n.w[i] * std::cos(w * b * n.z[i]);
      sr += wz * (e_re * br_re - e_im * br_im);
      si += wz * (e_re * br_im + e_im * br_re);
    }
    m[j] = mu0 * w * w * cd(sr, si);
  }
  return m;
}

}  // namespace

std::vector<cd> spectral_moments_parallel(const SpatialNodes& n, const KernelSet& ks, double b,
                                          const std::vector<double>& omega) {
  return moments_impl<true>(n, ks, b, omega);
}

std::vector<cd> spectral_moments_serial(const SpatialNodes& n, const KernelSet& ks, double b,
                                        const std::vector<double>& omega) {
  return moments_impl<false>(n, ks, b, omega);
}

SpectralMoments::SpectralMoments(const OverlapKernel& k, const KernelSet& ks,
                                 const IntegratorOptions& o) {
  if (ks.n_omega < 2 || !(ks.omega_max > 0.0))
    throw ValidationError("spectral path needs omega_max > 0 and n_omega >= 2");
  auto band = valid_band(ks.medium);
  double h = ks.omega_max / (ks.n_omega - 1);
  for (int j = 0; j < ks.n_omega; ++j) {
    double w = j * h;
    double trap = (j == 0 || j == ks.n_omega - 1) ? 0.5 : 1.0;
    double at = k.t.fourier(w).real();
    double wt = trap * h * ks.window(w) * at / pi;
    // outside the validated band the medium is undefined: drop the sample
    if (w < band.first || w > band.second) continue;
    if (std::abs(wt) < 1e-300 || std::abs(at) < 1e-30) continue;
    omega_.push_back(w);
    weight_.push_back(wt);
  }
  auto nodes = spatial_nodes(k, o, true);
  nodes_ = nodes.size();
  m_ = o.parallel ? spectral_moments_parallel(nodes, ks, k.b, omega_)
                  : spectral_moments_serial(nodes, ks, k.b, omega_);
}

Integrals SpectralMoments::at(double dt) const {
  Integrals r;
  for (std::size_t j = 0; j < omega_.size(); ++j) {
    double c = std::cos(omega_[j] * dt), s = std::sin(omega_[j] * dt);
    r.i_c += weight_[j] * c * hbar * m_[j].imag();
    r.i_r_prime += weight_[j] * c * m_[j].real();
    r.i_r_dprime += weight_[j] * s * m_[j].imag();
  }
  return r;
}

// ---------------------------------------------------------------------------
// rect profiles, dispersionless: delta collapse and PV, reduced to (P, z)

namespace {

class RectPath {
 public:
  RectPath(const OverlapKernel& k, const KernelSet& ks, double tol) : k_(k), tol_(tol) {
    cn_ = ks.c_n();
    a_ = 1.0 / cn_;
    b_ = k.b;
    D_ = b_ * b_ - a_ * a_;
    if (!(D_ > 0.0))
      throw ValidationError("exact rect path needs n_g > n (probe slower than the THz cone)");
    L_ = k.length;
  }

  double response(double dt) const {
    return kappa_r * (polar(dt, [&](double P) { return t1(P, dt); }) + t2(dt));
  }

  double vacuum(double dt) const {
    return kappa_c * (-polar(dt, [&](double P) { return g1(P, dt); }) + u2(dt));
  }

 private:
  // root in z of a sqrt(P^2 + z^2) = sigma + beta z, unique when b > a
  double root(double sigma, double beta, double P) const {
    double Q = std::sqrt(sigma * sigma + D_ * P * P);
    double sb = beta > 0.0 ? 1.0 : -1.0;
    if (sigma > 0.0) return (sigma * sigma - a_ * a_ * P * P) / (-sigma * beta - sb * a_ * Q);
    return (-sigma * beta + sb * a_ * Q) / D_;
  }
  double phi_root(double s, double P) const { return root(s, b_, P); }
  double psi_root(double s, double P) const { return root(-s, -b_, P); }
  double phi(double P, double z) const { return a_ * std::sqrt(P * P + z * z) - b_ * z; }
  double psi(double P, double z) const { return -a_ * std::sqrt(P * P + z * z) - b_ * z; }

  std::vector<double> shifts(double dt) const {
    std::vector<double> s;
    for (double c : k_.t.c) s.push_back(dt + c);
    return s;
  }

  // radii where a root reaches z = 0 or z = +-L
  std::vector<double> p_kinks(double dt) const {
    std::vector<double> out;
    auto add_sq = [&](double rho_a) {  // a sqrt(P^2 + L^2) = rho_a
      double r = rho_a / a_;
      if (rho_a > 0.0 && r > L_) out.push_back(std::sqrt(r * r - L_ * L_));
    };
    for (double s : shifts(dt)) {
      if (s > 0.0) out.push_back(s / a_);
      if (s < 0.0) out.push_back(-s / a_);
      add_sq(s + b_ * L_);
      add_sq(s - b_ * L_);
      add_sq(-s - b_ * L_);
      add_sq(-s + b_ * L_);
    }
    return out;
  }

  static double peak(const Profile1D& f) {
    double m = 0.0;
    for (double c : f.c) m = std::max(m, f.value(c));
    return m;
  }

  // circular average of X(rho_x) Y(rho_y) at radius P
  double ring(double P) const {
    if (P == 0.0) return 2.0 * pi * k_.x.value(0.0) * k_.y.value(0.0);
    std::vector<double> br;
    auto wrap = [](double t) { return t < 0.0 ? t + 2.0 * pi : t; };
    for (double g : k_.x.c)
      if (std::abs(g) < P) {
        double t = std::atan2(std::sqrt((P - g) * (P + g)), g);
        br.push_back(t);
        br.push_back(2.0 * pi - t);
      }
    for (double h : k_.y.c)
      if (std::abs(h) < P) {
        double t = std::atan2(h, std::sqrt((P - h) * (P + h)));
        br.push_back(wrap(t));
        br.push_back(pi - t);
      }
    br.push_back(0.5 * pi);
    br.push_back(pi);
    br.push_back(1.5 * pi);
    // judged against the full ring 2 pi max X max Y, not the sliver that
    // survives near the edge of the support
    double scale = 2.0 * pi * peak(k_.x) * peak(k_.y);
    return integrate(
        [&](double t) { return k_.x.value(P * std::cos(t)) * k_.y.value(P * std::sin(t)); }, 0.0,
        2.0 * pi, 0.1 * tol_, br, tol_ * scale);
  }

  template <class G>
  double polar(double dt, G g) const {
    double x0 = k_.x.c.front(), x1 = k_.x.c.back(), y0 = k_.y.c.front(), y1 = k_.y.c.back();
    double nx = std::max({0.0, x0, -x1}), ny = std::max({0.0, y0, -y1});
    double plo = std::hypot(nx, ny);
    double phi_ = std::hypot(std::max(std::abs(x0), std::abs(x1)), std::max(std::abs(y0), std::abs(y1)));
    std::vector<double> br = p_kinks(dt);
    for (double gx : k_.x.c) {
      br.push_back(std::abs(gx));
      for (double hy : k_.y.c) br.push_back(std::hypot(gx, hy));
    }
    for (double hy : k_.y.c) br.push_back(std::abs(hy));
    return integrate(
        [&](double P) {
          double w = ring(P);
          return w == 0.0 ? 0.0 : P * w * g(P);
        },
        plo, phi_, tol_, br);
  }

  // -sum_j d_j Lz(z*) / (rho* |phi'(z*)|)
  double t1(double P, double dt) const {
    double s = 0.0;
    for (std::size_t j = 0; j < k_.t.c.size(); ++j) {
      double z = phi_root(dt + k_.t.c[j], P);
      double lz = k_.z.value(z);
      if (lz == 0.0) continue;
      double r = std::sqrt(P * P + z * z);
      s += k_.t.d[j] * lz / (r * (b_ - a_ * z / r));
    }
    return -s;
  }

  // PV over z of Lz / rho * [F''(phi - dt) - F''(psi - dt)]. Both phi and psi
  // fall monotonically in z, so each term is integrated in x = phi(z) (or
  // psi(z)), where the poles of F'' sit exactly at x = dt + c_j.
  double g1(double P, double dt) const {
    std::vector<double> poles = shifts(dt);
    auto part = [&](bool minus) {
      auto map = [&](double z) { return minus ? psi(P, z) : phi(P, z); };
      auto inv = [&](double x) { return minus ? psi_root(x, P) : phi_root(x, P); };
      double xa = map(L_), xb = map(-L_);
      auto f = [&](double x) {
        double z = inv(x);
        double lz = k_.z.value(z);
        if (lz == 0.0) return 0.0;
        double r = std::sqrt(P * P + z * z);
        double jac = b_ + (minus ? 1.0 : -1.0) * a_ * z / r;  // |d map / dz|
        double h = 0.0;
        for (std::size_t j = 0; j < poles.size(); ++j) h += k_.t.d[j] / (x - poles[j]);
        return lz / (r * jac) * h;
      };
      return pv_integrate(f, xa, xb, poles, 0.1 * tol_, {map(0.0)});
    };
    return part(false) - part(true);
  }

  // c_n^2 sum_i e_i int dy Y(y) int dz Lz(z) h(rho, z) / rho at rho_x = g_i
  template <class H>
  double collapsed_x(double dt, H h, bool with_psi) const {
    double total = 0.0;
    for (std::size_t i = 0; i < k_.x.c.size(); ++i) {
      double gx = k_.x.c[i];
      std::vector<double> ybr = k_.y.c;
      for (double pk : p_kinks(dt))
        if (pk > std::abs(gx)) {
          double yk = std::sqrt(pk * pk - gx * gx);
          ybr.push_back(yk);
          ybr.push_back(-yk);
        }
      auto inner = [&](double y) {
        double wy = k_.y.value(y);
        if (wy == 0.0) return 0.0;
        double P = std::hypot(gx, y);
        std::vector<double> zb = {0.0};
        for (double s : shifts(dt)) {
          zb.push_back(phi_root(s, P));
          if (with_psi) zb.push_back(psi_root(s, P));
        }
        auto f = [&](double z) {
          double lz = k_.z.value(z);
          if (lz == 0.0) return 0.0;
          double r = std::sqrt(P * P + z * z);
          return lz / r * h(P, z);
        };
        return wy * integrate(f, -L_, L_, 0.1 * tol_, zb);
      };
      total += k_.x.d[i] * integrate(inner, k_.y.c.front(), k_.y.c.back(), tol_, ybr);
    }
    return cn_ * cn_ * total;
  }

  double t2(double dt) const {
    return collapsed_x(dt, [&](double P, double z) { return k_.t.value(phi(P, z) - dt); }, false);
  }

  double u2(double dt) const {
    return collapsed_x(
        dt,
        [&](double P, double z) {
          return k_.t.pv_conv(phi(P, z) - dt) - k_.t.pv_conv(psi(P, z) - dt);
        },
        true);
  }

  const OverlapKernel& k_;
  double tol_, cn_, a_, b_, D_, L_;
};

// ---------------------------------------------------------------------------
// Gaussian profiles, dispersionless: derivatives moved onto K, tau collapsed

class GaussPath {
 public:
  GaussPath(const OverlapKernel& k, const KernelSet& ks, const IntegratorOptions& o)
      : k_(k), nodes_(spatial_nodes(k, o, false)) {
    cn_ = ks.c_n();
    a_ = 1.0 / cn_;
    rho_.resize(nodes_.size());
    xr_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      rho_[i] = std::sqrt(nodes_.x[i] * nodes_.x[i] + nodes_.y[i] * nodes_.y[i] +
                          nodes_.z[i] * nodes_.z[i]);
      double u = (nodes_.x[i] - k.x.mu) / k.x.sigma;
      xr_[i] = (u * u - 1.0) / (k.x.sigma * k.x.sigma);  // X'' / X
    }
  }

  double response(double dt) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rho_.size(); ++i) {
      double xp = a_ * rho_[i] - dt - k_.b * nodes_.z[i];
      s += nodes_.w[i] / rho_[i] * (-k_.t.d2(xp) + cn_ * cn_ * xr_[i] * k_.t.value(xp));
    }
    return kappa_r * s;
  }

  double vacuum(double dt) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rho_.size(); ++i) {
      double base = -dt - k_.b * nodes_.z[i];
      double xp = a_ * rho_[i] + base, xm = -a_ * rho_[i] + base;
      double h2 = k_.t.pv_conv_d2(xp) - k_.t.pv_conv_d2(xm);
      double h0 = k_.t.pv_conv(xp) - k_.t.pv_conv(xm);
      s += nodes_.w[i] / rho_[i] * (-h2 + cn_ * cn_ * xr_[i] * h0);
    }
    return kappa_c * s;
  }

 private:
  const OverlapKernel& k_;
  SpatialNodes nodes_;
  std::vector<double> rho_, xr_;
  double cn_, a_;
};

Rule tau_rule(const Profile1D& t, const IntegratorOptions& o) {
  IntegratorOptions oo = o;
  oo.n_transverse = std::max(o.n_transverse, 32);
  return profile_rule(t, oo, false);
}

}  // namespace

double integrate_smooth(const OverlapKernel& k, const SmoothKernel& f,
                        const IntegratorOptions& o) {
  if (!f) return 0.0;
  IntegratorOptions oo = o;
  oo.rho_cutoff = 0.0;
  // smooth integrands need no ball: disable it by a cutoff of zero and no exclusion
  SpatialNodes n;
  {
    Rule rx = profile_rule(k.x, oo, false), ry = profile_rule(k.y, oo, false);
    int zp = std::max(1, o.z_panels / 2);
    Rule rz = composite_legendre(-k.length, k.length, {0.0}, o.gl_order, zp);
    for (std::size_t i = 0; i < rx.size(); ++i)
      for (std::size_t j = 0; j < ry.size(); ++j)
        for (std::size_t l = 0; l < rz.size(); ++l) {
          double w = rx.w[i] * ry.w[j] * rz.w[l] * k.z.value(rz.x[l]);
          if (w == 0.0) continue;
          n.x.push_back(rx.x[i]);
          n.y.push_back(ry.x[j]);
          n.z.push_back(rz.x[l]);
          n.w.push_back(w);
        }
  }
  Rule rt = tau_rule(k.t, o);
  double s = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    double inner = 0.0;
    for (std::size_t u = 0; u < rt.size(); ++u)
      inner += rt.w[u] * f(n.x[i], n.y[i], n.z[i], rt.x[u] + k.dt + k.b * n.z[i]);
    s += n.w[i] * inner;
  }
  return s;
}

double integrate_vacuum(const OverlapKernel& k, const KernelSet& ks, const IntegratorOptions& o) {
  switch (ks.mode) {
    case KernelMode::Custom: return integrate_smooth(k, ks.custom_c, o);
    case KernelMode::DispersiveSpectral: return SpectralMoments(k, ks, o).at(k.dt).i_c;
    default:
      if (k.shape == Shape::Rect) return RectPath(k, ks, o.tol).vacuum(k.dt);
      return GaussPath(k, ks, o).vacuum(k.dt);
  }
}

double integrate_response(const OverlapKernel& k, const KernelSet& ks,
                          const IntegratorOptions& o) {
  switch (ks.mode) {
    case KernelMode::Custom: return integrate_smooth(k, ks.custom_r, o);
    case KernelMode::DispersiveSpectral: {
      auto r = SpectralMoments(k, ks, o).at(k.dt);
      return r.i_r_prime + r.i_r_dprime;
    }
    default:
      if (k.shape == Shape::Rect) return RectPath(k, ks, o.tol).response(k.dt);
      return GaussPath(k, ks, o).response(k.dt);
  }
}

std::pair<double, double> integrate_source(const OverlapKernel& k, const KernelSet& ks,
                                           const IntegratorOptions& o) {
  auto r = integrate_all(k, ks, o);
  return {r.i_r_prime, r.i_r_dprime};
}

Integrals integrate_all(const OverlapKernel& k, const KernelSet& ks, const IntegratorOptions& o) {
  if (ks.mode == KernelMode::DispersiveSpectral) return SpectralMoments(k, ks, o).at(k.dt);
  Integrals r;
  double plus, minus;
  if (ks.mode == KernelMode::Custom) {
    r.i_c = integrate_smooth(k, ks.custom_c, o);
    auto rev = [&ks](double x, double y, double z, double t) { return ks.custom_r(x, y, z, -t); };
    plus = integrate_smooth(k, ks.custom_r, o);
    minus = ks.custom_r ? integrate_smooth(k, rev, o) : 0.0;
  } else if (k.shape == Shape::Rect) {
    RectPath p(k, ks, o.tol);
    r.i_c = p.vacuum(k.dt);
    plus = p.response(k.dt);
    minus = p.response(-k.dt);
  } else {
    GaussPath p(k, ks, o);
    r.i_c = p.vacuum(k.dt);
    plus = p.response(k.dt);
    minus = p.response(-k.dt);
  }
  r.i_r_prime = 0.5 * (plus + minus);
  r.i_r_dprime = 0.5 * (plus - minus);
  return r;
}

}  // namespace eos
