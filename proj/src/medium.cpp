#include "eos/medium.hpp"

#include <math.h>  // pchip.hpp calls unqualified isnan
#include <boost/math/interpolators/pchip.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "eos/errors.hpp"
#include "eos/quadrature.hpp"
#include "eos/units.hpp"

namespace eos {

using pchip = boost::math::interpolators::pchip<std::vector<double>>;

struct TableInterp {
  pchip re, im;
};

Lorentz gap_like_lorentz() {
  Lorentz l;
  l.eps_inf = 9.09;
  l.omega_to = thz_to_rad_per_fs(10.98);
  l.omega_lo = thz_to_rad_per_fs(12.06);
  l.gamma = thz_to_rad_per_fs(0.02);
  l.n_g = 3.556;
  return l;
}

TablePermittivity make_table(std::vector<double> omega, std::vector<double> re,
                             std::vector<double> im, double n_g) {
  if (omega.size() < 8) throw ValidationError("permittivity table needs at least 8 samples");
  if (re.size() != omega.size() || im.size() != omega.size())
    throw ValidationError("permittivity table columns differ in length");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (i > 0 && !(omega[i] > omega[i - 1]))
      throw ValidationError("permittivity table: omega not strictly increasing at sample " +
                            std::to_string(i + 1));
    if (im[i] < 0.0)
      throw ValidationError("permittivity table: Im eps < 0 (not passive) at sample " +
                            std::to_string(i + 1));
  }
  TablePermittivity t;
  t.omega = omega;
  t.re = re;
  t.im = im;
  t.n_g = n_g;
  auto o2 = omega;
  t.interp = std::make_shared<TableInterp>(
      TableInterp{pchip(std::move(omega), std::move(re)), pchip(std::move(o2), std::move(im))});
  return t;
}

namespace {

std::complex<double> eps_positive(const Medium& m, double w) {
  struct V {
    double w;
    std::complex<double> operator()(const Dispersionless& d) const { return d.n * d.n; }
    std::complex<double> operator()(const Lorentz& l) const {
      std::complex<double> iw{0.0, l.gamma * w};
      return l.eps_inf * (l.omega_lo * l.omega_lo - w * w - iw) /
             (l.omega_to * l.omega_to - w * w - iw);
    }
    std::complex<double> operator()(const TablePermittivity& t) const {
      if (w < t.omega.front() || w > t.omega.back())
        throw DomainError("frequency " + std::to_string(w) +
                          " rad/fs outside the tabulated permittivity band");
      // pchip returns the samples exactly at nodes; max() keeps passivity
      return {t.interp->re(w), std::max(0.0, t.interp->im(w))};
    }
  };
  return std::visit(V{w}, m);
}

}  // namespace

std::complex<double> permittivity(const Medium& m, double omega) {
  if (omega < 0.0) return std::conj(eps_positive(m, -omega));
  return eps_positive(m, omega);
}

std::complex<double> refractive_index(const Medium& m, double omega) {
  if (auto d = std::get_if<Dispersionless>(&m)) return d->n;
  auto n = std::sqrt(permittivity(m, omega));
  if (n.imag() < 0.0) n = -n;
  return n;
}

double group_index(const Medium& m) {
  return std::visit([](const auto& v) { return v.n_g; }, m);
}

bool is_dispersionless(const Medium& m) { return std::holds_alternative<Dispersionless>(m); }

std::pair<double, double> valid_band(const Medium& m) {
  if (auto t = std::get_if<TablePermittivity>(&m)) return {t->omega.front(), t->omega.back()};
  return {0.0, std::numeric_limits<double>::infinity()};
}

double cone_index(const Medium& m) {
  if (auto d = std::get_if<Dispersionless>(&m)) return d->n;
  return refractive_index(m, valid_band(m).first).real();
}

double kramers_kronig_residual(const Medium& m, const std::vector<double>& grid) {
  if (is_dispersionless(m) || grid.empty()) return 0.0;
  double lo, hi;
  std::vector<double> breaks;
  double eps_inf = 0.0;
  bool fit_offset = false;
  if (auto l = std::get_if<Lorentz>(&m)) {
    lo = 0.0;
    double top = l->omega_lo;
    for (double w : grid) top = std::max(top, w);
    hi = 4.0 * top;
    for (double k : {-100.0, -30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0, 100.0})
      breaks.push_back(l->omega_to + k * l->gamma);
    eps_inf = l->eps_inf;
  } else {
    const auto& t = std::get<TablePermittivity>(m);
    lo = t.omega.front();
    hi = t.omega.back();
    breaks = t.omega;
    fit_offset = true;
  }
  auto im_eps = [&](double w) { return permittivity(m, w).imag(); };
  std::vector<double> kk(grid.size()), re(grid.size()), mag(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double w = grid[k];
    auto f = [&](double W) { return im_eps(W) * 0.5 * (1.0 / (W - w) + 1.0 / (W + w)); };
    kk[k] = (2.0 / pi) * pv_integrate(f, lo, hi, {w}, 1e-10, breaks);
    auto e = permittivity(m, w);
    re[k] = e.real();
    mag[k] = std::abs(e);
  }
  if (fit_offset) {
    double s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) s += re[k] - kk[k];
    eps_inf = s / grid.size();
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    worst = std::max(worst, std::abs(re[k] - eps_inf - kk[k]) / mag[k]);
  return worst;
}

TablePermittivity load_permittivity_table(const std::string& path, double n_g) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open permittivity table: " + path);
  std::string line;
  int lineno = 0;
  std::vector<double> om, re, im;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "omega_THz,re_eps,im_eps")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header omega_THz,re_eps,im_eps");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    double v[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ss, cell, ','))
        throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 columns");
      try {
        std::size_t used = 0;
        v[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    if (std::getline(ss, cell, ','))
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 columns");
    if (!om.empty() && !(thz_to_rad_per_fs(v[0]) > om.back()))
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": omega not strictly increasing (duplicate or unsorted row)");
    if (v[2] < 0.0)
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": Im eps < 0 violates passivity");
    om.push_back(thz_to_rad_per_fs(v[0]));
    re.push_back(v[1]);
    im.push_back(v[2]);
  }
  if (!header) throw ParseError(path + ": empty permittivity table");
  return make_table(std::move(om), std::move(re), std::move(im), n_g);
}

}  // namespace eos
