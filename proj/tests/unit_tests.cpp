#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "eos/config.hpp"
#include "eos/errors.hpp"
#include "eos/fdt.hpp"
#include "eos/integrator.hpp"
#include "eos/io.hpp"
#include "eos/kernels.hpp"
#include "eos/medium.hpp"
#include "eos/pulses.hpp"
#include "eos/quadrature.hpp"
#include "eos/regions.hpp"
#include "eos/scan.hpp"
#include "eos/special.hpp"
#include "eos/units.hpp"
#include "eos/waveplate.hpp"

using namespace eos;
using doctest::Approx;

namespace {

const char* fig2_doc = R"(
[experiment]
delta_r_um = 200
delta_t_fs = 0

[crystal]
model = "dispersionless"
n = 3.33
n_g = 3.556
L_um = 100

[pulses]
shape = "rect"
waist_um = 10
duration_fs = 185
)";

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() /
           ("eos_ut_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << body;
  return p.string();
}

template <class E, class F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal figure document parses with defaults filled") {
    auto c = load_config(fig2_doc);
    CHECK(c.delta_r_um == 200.0);
    CHECK(c.length_um == 100.0);
    CHECK(c.pulses.shape == "rect");
    CHECK(c.medium.n == 3.33);
    CHECK(c.numerics.omega_max_thz == 15.0);
    CHECK(c.numerics.n_omega == 2048);
    CHECK(c.numerics.tolerance == 1e-8);
    CHECK(validate_config(c).empty());
  }

  TEST_CASE("zero crystal length is rejected") {
    std::string doc = fig2_doc;
    doc.replace(doc.find("L_um = 100"), 10, "L_um = 0");
    auto msg = message_of<ValidationError>([&] { load_config(doc); });
    CHECK(contains(msg, "crystal.L_um"));
  }

  TEST_CASE("diagnostics name the key and the violated constraint") {
    auto c = load_config(fig2_doc);
    c.angles = std::make_pair(0.1, pi);
    c.pulses.shape = "gauss";
    c.pulses.waist_um = -10;
    auto d = validate_config(c);
    bool theta = false, waist = false;
    for (auto& x : d) {
      theta |= x.key == "angles.theta1_rad" && contains(x.constraint, "theta_1 outside");
      waist |= x.key == "pulses.waist_um" && contains(x.constraint, "waist > 0");
    }
    CHECK(theta);
    CHECK(waist);
  }

  TEST_CASE("SI and internal spellings give identical bits") {
    CHECK(parse_scaled("2e-4", 6) == parse_scaled("200", 0));
    CHECK(parse_scaled("1.85e-13", 15) == 185.0);
    std::string si = fig2_doc;
    si.replace(si.find("delta_r_um = 200"), 16, "delta_r_m = 2e-4");
    auto a = load_config(fig2_doc), b = load_config(si);
    CHECK(a == b);
    CHECK(config_hash(a) == config_hash(b));
  }

  TEST_CASE("unknown keys and sections are validation errors") {
    CHECK_THROWS_AS(load_config(std::string(fig2_doc) + "[bogus]\nx = 1\n"), ValidationError);
    std::string typo = fig2_doc;
    typo.replace(typo.find("waist_um"), 8, "wiast_um");
    auto msg = message_of<ValidationError>([&] { load_config(typo); });
    CHECK(contains(msg, "wiast_um"));
  }

  TEST_CASE("syntax errors carry the line number") {
    auto msg = message_of<ParseError>([] { load_config("[experiment]\ndelta_r_um = = 3\n"); });
    CHECK(contains(msg, "2"));
    CHECK_THROWS_AS(load_config("[experiment]\ndelta_r_um = 1\ndelta_r_um = 2\n"), ParseError);
  }

  TEST_CASE("overrides replace the key and its unit aliases") {
    std::string si = fig2_doc;
    si.replace(si.find("delta_r_um = 200"), 16, "delta_r_m = 2e-4");
    auto c = load_config(si, {"experiment.delta_r_um=50"});
    CHECK(c.delta_r_um == 50.0);
    auto s = load_config(fig2_doc, {"experiment.delta_t_scan={start=0,stop=100,step=50}",
                                    "experiment.delta_t_fs=0"});
    CHECK_FALSE(s.delta_t.scan);
    auto t = load_config(fig2_doc, {"numerics.n_omega=512"});
    CHECK(t.numerics.n_omega == 512);
  }

  TEST_CASE("hash ignores the output location only") {
    auto a = load_config(fig2_doc);
    auto b = a;
    b.output_path = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    b.delta_r_um = 201;
    CHECK(config_hash(a) != config_hash(b));
  }

  TEST_CASE("missing file is an io error naming the path") {
    auto msg = message_of<IoError>([] { load_config_file("/nonexistent/x.toml"); });
    CHECK(contains(msg, "/nonexistent/x.toml"));
  }

  TEST_CASE("scan delays are inclusive of stop") {
    DelaySpec d;
    d.scan = true;
    d.start = 0;
    d.stop = 5000;
    d.step = 50;
    auto v = d.values();
    REQUIRE(v.size() == 101);
    CHECK(v.back() == 5000.0);
  }

  TEST_CASE("numbers print in round-trip form") {
    CHECK(std::stod(fmt(0.1)) == 0.1);
    CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
  }
}

TEST_SUITE("waveplate") {
  TEST_CASE("factor at the table angles") {
    auto a = waveplate_factor(pi / 2);
    CHECK(a.real() == Approx(0.0));
    CHECK(a.imag() == Approx(1.0));
    auto b = waveplate_factor(pi);
    CHECK(b.real() == Approx(1.0));
    CHECK(std::abs(b.imag()) < 1e-15);
    auto c = waveplate_factor(2 * pi / 3);
    CHECK(c.real() == Approx(1 / std::sqrt(2.0)));
    CHECK(c.imag() == Approx(1 / std::sqrt(2.0)));
  }

  TEST_CASE("coefficients") {
    auto c = coefficients(2 * pi / 3, 2 * pi / 3);
    CHECK(c.p_vac == Approx(0.5));
    CHECK(c.p_s_prime == Approx(1.0));
    CHECK(std::abs(c.p_s_dprime) < 1e-15);
  }

  TEST_CASE("swapping the angles conjugates") {
    for (double t1 : {pi / 2, 2.2, pi, 4.0})
      for (double t2 : {pi / 2, 2.9, 3.7}) {
        auto a = coefficients(t1, t2), b = coefficients(t2, t1);
        CHECK(a.p_vac == Approx(b.p_vac));
        CHECK(a.p_s_prime == Approx(b.p_s_prime));
        CHECK(a.p_s_dprime == Approx(-b.p_s_dprime));
      }
  }

  TEST_CASE("angles with cos > 0 are outside the domain") {
    CHECK_THROWS_AS(waveplate_factor(0.1), DomainError);
    CHECK_FALSE(angle_in_domain(0.1));
    CHECK(angle_in_domain(pi / 2 + 2 * pi));
  }

  TEST_CASE("assembled signal") {
    CHECK(assemble_signal(coefficients(pi / 2, pi / 2), 3.0, 5.0, 7.0) == Approx(3.0));
    auto d = assemble_signal(coefficients(pi / 2, pi), 3.0, 5.0, 7.0) -
             assemble_signal(coefficients(pi, pi / 2), 3.0, 5.0, 7.0);
    CHECK(d == Approx(-hbar * 7.0));
    CHECK(assemble_signal(WavePlateCoeffs{}, 3.0, 5.0, 7.0) == 0.0);
    // every contribution is linear in the integrals, so a common lambda^2
    // scale of both normalizations leaves ratios fixed
    double l2 = 2.5 * 2.5;
    auto c = coefficients(2.1, 3.3);
    CHECK(assemble_signal(c, l2 * 3, l2 * 5, l2 * 7) == Approx(l2 * assemble_signal(c, 3, 5, 7)));
  }

  TEST_CASE("decomposition closes for arbitrary angles") {
    for (double t1 : {pi / 2, 2.4, 3.9})
      for (double t2 : {pi, 2.0, 4.5}) {
        auto c = coefficients(t1, t2);
        double ic = 1.3, irp = -0.4, ird = 2.2;
        double parts = c.p_vac * ic - 0.5 * hbar * c.p_s_prime * irp - 0.5 * hbar * c.p_s_dprime * ird;
        CHECK(assemble_signal(c, ic, irp, ird) == Approx(parts).epsilon(1e-15));
      }
  }
}

TEST_SUITE("special") {
  TEST_CASE("dawson reference values") {
    CHECK(dawson(0.0) == 0.0);
    CHECK(dawson(0.5) == Approx(0.4244363835020223).epsilon(1e-13));
    CHECK(dawson(1.0) == Approx(0.5380795069127684).epsilon(1e-13));
    CHECK(dawson(3.0) == Approx(0.1782710306105582).epsilon(1e-13));
    CHECK(dawson(-2.0) == Approx(-0.3013403889237920).epsilon(1e-13));
    CHECK(dawson(50.0) == Approx(0.01000200120084).epsilon(1e-10));
  }

  TEST_CASE("second derivative matches the defining ODE") {
    for (double x : {0.1, 0.7, 2.0, 5.0, 30.0}) {
      double d = dawson(x);
      double ref = (4 * x * x - 2) * d - 2 * x;
      CHECK(dawson_d2(x) == Approx(ref).epsilon(x > 10 ? 1e-6 : 1e-11));
    }
  }

  TEST_CASE("smooth step") {
    CHECK(smooth_step(-1) == 0.0);
    CHECK(smooth_step(2) == 1.0);
    CHECK(smooth_step(0.5) == Approx(0.5));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("adaptive and principal value integrals") {
    CHECK(integrate([](double x) { return std::exp(x); }, 0, 1, 1e-12) == Approx(std::exp(1.0) - 1));
    // PV int_{-1}^{2} 1/x dx = ln 2
    CHECK(pv_integrate([](double x) { return 1.0 / x; }, -1, 2, {0.0}, 1e-12) ==
          Approx(std::log(2.0)).epsilon(1e-11));
    // PV int_0^3 cos(x)/(x - 1) dx, checked against the subtracted form
    auto ref = integrate([](double x) { return (std::cos(x) - std::cos(1.0)) / (x - 1); }, 0, 3,
                         1e-13, {1.0}) +
               std::cos(1.0) * std::log(2.0);
    CHECK(pv_integrate([](double x) { return std::cos(x) / (x - 1); }, 0, 3, {1.0}, 1e-12) ==
          Approx(ref).epsilon(1e-10));
  }

  TEST_CASE("gauss rules") {
    auto& gh = gauss_hermite(16);
    double s = 0;
    for (std::size_t i = 0; i < gh.size(); ++i) s += gh.w[i] * gh.x[i] * gh.x[i];
    CHECK(s == Approx(std::sqrt(pi) / 2));
    auto r = composite_legendre(0, 3, {1.0}, 8, 2);
    double t = 0;
    for (std::size_t i = 0; i < r.size(); ++i) t += r.w[i] * std::abs(r.x[i] - 1.0);
    CHECK(t == Approx(0.5 + 2.0));
  }
}

TEST_SUITE("medium") {
  TEST_CASE("dispersionless permittivity and index") {
    Medium m = Dispersionless{3.33, 3.556};
    CHECK(permittivity(m, 0.05).real() == Approx(11.0889));
    CHECK(permittivity(m, 0.05).imag() == 0.0);
    CHECK(refractive_index(m, 0.1).real() == Approx(3.33));
    CHECK(kramers_kronig_residual(m, {0.01, 0.02}) == 0.0);
  }

  TEST_CASE("lorentz model") {
    Medium m = gap_like_lorentz();
    auto e0 = permittivity(m, 1e-9);
    CHECK(e0.real() == Approx(10.97).epsilon(2e-3));
    CHECK(refractive_index(m, 1e-9).real() == Approx(3.31).epsilon(2e-3));
    auto l = std::get<Lorentz>(m);
    auto et = permittivity(m, l.omega_to);
    CHECK(et.imag() > 100.0);
    for (double w : {0.01, 0.05, 0.069, 0.075, 0.2})
      CHECK(refractive_index(m, w).imag() >= 0.0);
    CHECK(std::conj(permittivity(m, 0.03)) == permittivity(m, -0.03));
  }

  TEST_CASE("kramers-kronig residual") {
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i) grid.push_back(thz_to_rad_per_fs(0.25 * i));
    CHECK(kramers_kronig_residual(gap_like_lorentz(), grid) < 0.05);
    // a resonant real part with its imaginary part removed is inconsistent
    Medium m = gap_like_lorentz();
    std::vector<double> om, re, im;
    for (int i = 0; i <= 400; ++i) {
      double w = thz_to_rad_per_fs(0.05 * i);
      om.push_back(w);
      re.push_back(permittivity(m, w == 0 ? 1e-9 : w).real());
      im.push_back(0.0);
    }
    auto t = make_table(om, re, im, 3.556);
    CHECK(kramers_kronig_residual(t, grid) > 0.3);
  }

  TEST_CASE("table parsing") {
    auto ok = temp_file("ok.csv",
                        "omega_THz,re_eps,im_eps\n"
                        "0.5,10.9,0.001\n1,10.95,0.002\n1.5,11.0,0.003\n2,11.1,0.004\n"
                        "2.5,11.2,0.005\n3,11.3,0.006\n3.5,11.4,0.007\n4,11.5,0.008\n");
    auto t = load_permittivity_table(ok, 3.556);
    CHECK(t.omega.size() == 8);
    CHECK(permittivity(Medium{t}, thz_to_rad_per_fs(1.0)).real() == Approx(10.95));
    CHECK_THROWS_AS(permittivity(Medium{t}, thz_to_rad_per_fs(9.0)), DomainError);

    auto neg = temp_file("neg.csv", "omega_THz,re_eps,im_eps\n0.5,10,0.1\n1,10,-0.2\n");
    auto msg = message_of<ValidationError>([&] { load_permittivity_table(neg, 3.556); });
    CHECK(contains(msg, ":3:"));
    CHECK(contains(msg, "passivity"));

    auto dup = temp_file("dup.csv", "omega_THz,re_eps,im_eps\n0.5,10,0.1\n0.5,10,0.2\n");
    msg = message_of<ValidationError>([&] { load_permittivity_table(dup, 3.556); });
    CHECK(contains(msg, "strictly increasing"));
    std::filesystem::remove(ok);
    std::filesystem::remove(neg);
    std::filesystem::remove(dup);
  }
}

TEST_SUITE("pulses") {
  TEST_CASE("envelope normalization and support") {
    PulseEnvelope p;
    double v = envelope_value(p, 0, 0, 0, 0.5 * p.length * p.n_g / c_light);
    CHECK(v == Approx(1.0 / (p.waist * p.waist * p.duration * p.length)));
    CHECK(envelope_value(p, 0, 0, 0.6 * p.length, 0.0) == 0.0);
  }

  TEST_CASE("gaussian half value at half a FWHM off axis") {
    PulseEnvelope p;
    p.shape = Shape::Gauss;
    double t = 0.5 * p.length * p.n_g / c_light;
    CHECK(envelope_value(p, 0.5 * p.waist, 0, 0, t) ==
          Approx(0.5 * envelope_value(p, 0, 0, 0, t)));
  }

  TEST_CASE("overlap kernel of identical co-located rect pulses") {
    PulseEnvelope p;
    auto k = overlap_kernel(p, p);
    double k0 = k.value(0, 0, 0, 0);
    for (double rz : {-20.0, 5.0, 30.0})
      for (double tau : {-50.0, 0.0, 80.0}) {
        CHECK(k.value(3, -2, rz, tau) == Approx(k.value(-3, 2, -rz, -tau)));
        CHECK(k.value(3, -2, rz, tau + k.b * rz) <= k0);
      }
  }

  TEST_CASE("separated pulses put the transverse support around dr") {
    PulseEnvelope p1, p2;
    p1.x0 = 200;
    auto k = overlap_kernel(p1, p2);
    auto [lo, hi] = k.x.support();
    CHECK(lo == Approx(190));
    CHECK(hi == Approx(210));
    CHECK(k.x.value(200) > 0);
    CHECK(k.x.value(189.9) == 0.0);
  }

  TEST_CASE("translation covariance") {
    PulseEnvelope p1, p2;
    p1.x0 = 40;
    p1.t0 = 300;
    auto k = overlap_kernel(p1, p2);
    p1.x0 += 17;
    p2.x0 += 17;
    p1.t0 += 90;
    p2.t0 += 90;
    auto s = overlap_kernel(p1, p2);
    CHECK(k.value(38, 1, 3, 320) == s.value(38, 1, 3, 320));
  }

  TEST_CASE("triangle second derivative has three point masses") {
    auto f = Profile1D::box_correlation(10, 10, 0);
    auto m = second_derivative_masses(f);
    REQUIRE(m.at.size() == 3);
    CHECK(m.weight[0] == Approx(0.01));
    CHECK(m.weight[1] == Approx(-0.02));
    CHECK(m.weight[2] == Approx(0.01));
  }

  TEST_CASE("FFT overlap grid agrees with the closed form") {
    PulseEnvelope p1, p2;
    p1.shape = p2.shape = Shape::Gauss;
    p1.x0 = 20;
    p1.t0 = 100;
    auto k = overlap_kernel(p1, p2);
    OverlapGrid g(p1, p2, 0.5, 5.0);
    CHECK(g.integral() == Approx(1.0).epsilon(1e-3));
    double rz = 10, tau = 100 + k.b * rz + 30;
    CHECK(g.value(20, 0, rz, tau) == Approx(k.value(20, 0, rz, tau)).epsilon(1e-2));
  }
}

TEST_SUITE("kernels") {
  auto ks = dispersionless_kernels(3.33, 3.556);

  TEST_CASE("response vanishes off the cone and before zero") {
    double tc = 30.0 / ks.c_n();
    DistValue on = response_time(ks, 30, 0, 0, tc);
    CHECK(on.w0 != 0.0);
    for (double tau : {0.5 * tc, 1.1 * tc, -tc, -5.0}) {
      DistValue d = response_time(ks, 30, 0, 0, tau);
      CHECK(d.w0 == 0.0);
      CHECK(d.w1 == 0.0);
      CHECK(d.w2 == 0.0);
      CHECK(d.regular == 0.0);
    }
  }

  TEST_CASE("correlation is finite off the cone and symmetric") {
    double tau = 40.0;
    double rho = 2 * ks.c_n() * tau;
    double c = correlation_time(ks, rho, 0, 0, tau);
    CHECK(std::isfinite(c));
    CHECK(c != 0.0);
    CHECK(correlation_time(ks, rho, 0, 0, -tau) == Approx(c));
    CHECK(correlation_time(ks, -rho, 0, 0, tau) == Approx(c));
    CHECK_THROWS_AS(correlation_time(ks, rho, 0, 0, rho / ks.c_n()), DomainError);
  }

  TEST_CASE("split response halves of the retarded kernel") {
    auto s = split_response(ks);
    double tc = 25.0 / ks.c_n();
    auto full = response_on_cone(ks, 15, 20, 0);
    auto ep = s.even(15, 20, 0, tc), op = s.odd(15, 20, 0, tc);
    CHECK(ep.w0 + op.w0 == Approx(full.w0));
    CHECK(ep.w2 + op.w2 == Approx(full.w2));
    auto em = s.even(15, 20, 0, -tc), om = s.odd(15, 20, 0, -tc);
    CHECK(em.w0 + om.w0 == Approx(0.0));  // R(tau < 0) = 0
    CHECK(em.w1 + om.w1 == Approx(0.0));
  }

  TEST_CASE("spectral sign identity") {
    auto sk = spectral_kernels(gap_like_lorentz(), thz_to_rad_per_fs(8), 256);
    for (double w : {-0.04, -0.001, 0.002, 0.03, 0.0689}) {
      double c = correlation_spectral(sk, 12, -5, 40, w);
      double r = (w > 0 ? 1 : -1) * response_spectral(sk, 12, -5, 40, w).imag();
      CHECK(std::abs(c - r) <= 1e-12 * std::abs(response_spectral(sk, 12, -5, 40, w)));
    }
  }

  TEST_CASE("absorbing medium decays with distance") {
    auto sk = spectral_kernels(gap_like_lorentz(), thz_to_rad_per_fs(15), 256);
    double w = thz_to_rad_per_fs(11.5);
    auto n = refractive_index(sk.medium, w);
    CHECK(n.imag() > 0);
    CHECK(std::abs(std::exp(std::complex<double>(0, 1) * w * n * 50.0 / c_light)) < 1.0);
  }

  TEST_CASE("lorentz kernels approach the constant-index limit at low frequency") {
    Lorentz l = gap_like_lorentz();
    l.gamma = 0.0;
    double n0 = std::sqrt(permittivity(Medium{l}, 1e-9).real());
    auto lk = spectral_kernels(l, thz_to_rad_per_fs(8), 256);
    auto dk = spectral_kernels(Dispersionless{n0, 3.556}, thz_to_rad_per_fs(8), 256);
    for (double w : {0.1 * l.omega_to, 0.05 * l.omega_to}) {
      auto a = response_spectral(lk, 30, 10, 5, w), b = response_spectral(dk, 30, 10, 5, w);
      CHECK(std::abs(a - b) / std::abs(b) < 1e-2);
    }
  }

  TEST_CASE("band-limited response converges on a test function off the cone") {
    // exact pairing of the delta weights with phi against the windowed inverse
    double rx = 30, tc = 30 * 3.33 / c_light, t0 = tc + 250, sg = 60;
    auto phi = [&](double t, int k) {
      double u = (t - t0) / sg, g = std::exp(-0.5 * u * u);
      if (k == 0) return g;
      if (k == 1) return -u / sg * g;
      return (u * u - 1) / (sg * sg) * g;
    };
    auto exact_k = dispersionless_kernels(3.33, 3.556);
    auto cone = response_on_cone(exact_k, rx, 0, 0);
    double exact = cone.w0 * phi(tc, 0) - cone.w1 * phi(tc, 1) + cone.w2 * phi(tc, 2);
    double prev = 1e300;
    for (double fmax : {4.0, 8.0, 16.0}) {
      auto sk = spectral_kernels(Dispersionless{3.33, 3.556}, thz_to_rad_per_fs(fmax), 512);
      auto rule = composite_legendre(t0 - 8 * sg, t0 + 8 * sg, {}, 16, 12);
      double s = 0;
      for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.w[i] * response_time(sk, rx, 0, 0, rule.x[i]).regular * phi(rule.x[i], 0);
      double err = std::abs(s - exact) / std::abs(cone.w0 * phi(t0, 0));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-5);
  }
}

TEST_SUITE("hilbert") {
  TEST_CASE("cos maps to sin") {
    double w0 = 2 * pi / 16.0;  // 16 samples per period
    int n = 16 * 24;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::cos(w0 * i);
    auto h = hilbert_transform(f, 1.0);
    double worst = 0;
    for (int i = n / 5; i < 4 * n / 5; ++i) worst = std::max(worst, std::abs(h[i] - std::sin(w0 * i)));
    CHECK(worst < 0.02);
  }

  TEST_CASE("applying twice negates") {
    int n = 1024;
    double h = 0.05;
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
      double t = (i - n / 2) * h;
      f[i] = 1.0 / (1 + t * t);
    }
    auto once = hilbert_transform(f, h, true);
    auto twice = hilbert_transform(once, h, true);
    double worst = 0, peak = 0;
    for (int i = n / 5; i < 4 * n / 5; ++i) {
      double t = (i - n / 2) * h;
      worst = std::max(worst, std::abs(once[i] - t / (1 + t * t)));
      peak = std::max(peak, std::abs(f[i]));
    }
    CHECK(worst < 0.01);
    worst = 0;
    for (int i = n / 5; i < 4 * n / 5; ++i) worst = std::max(worst, std::abs(twice[i] + f[i]));
    CHECK(worst / peak < 0.05);
  }

  TEST_CASE("zero in, zero out; parity swaps") {
    std::vector<double> z(128, 0.0);
    for (double v : hilbert_transform(z, 1.0, true)) CHECK(v == 0.0);
    int n = 257;
    std::vector<double> even(n);
    for (int i = 0; i < n; ++i) even[i] = std::exp(-0.001 * (i - 128) * (i - 128));
    auto o = hilbert_transform(even, 1.0);
    for (int i = 0; i < n; ++i) CHECK(o[i] == Approx(-o[n - 1 - i]).epsilon(1e-9).scale(1.0));
  }

  TEST_CASE("short or irregular input is refused") {
    CHECK_THROWS_AS(hilbert_transform(std::vector<double>(10, 1.0), 1.0), ValidationError);
    std::vector<SignalRecord> s(80);
    for (int i = 0; i < 80; ++i) s[i].delta_t = i * i;
    CHECK_THROWS_AS(verify_fdt_signal(s), ValidationError);
  }
}

TEST_SUITE("regions") {
  BoundaryParams bp;

  TEST_CASE("analytic boundaries") {
    CHECK(bp.c_n() == Approx(0.0900277).epsilon(1e-6));
    CHECK(boundary_I_II(0.0, bp) == Approx(82.4).epsilon(2e-3));
    CHECK(boundary_I_II(1013.0, bp) == Approx(200.0).epsilon(2e-3));
    CHECK(boundary_II_III(3954.0, bp) == Approx(200.0).epsilon(2e-3));
    CHECK_THROWS_AS(boundary_II_III(bp.tau_p, bp), DomainError);
  }

  TEST_CASE("classification at the figure geometries") {
    auto c = load_config(fig2_doc);
    auto m = make_medium(c);
    auto label = [&](double dr, double dt) {
      c.delta_r_um = dr;
      auto [p1, p2] = make_pulses(c, dt);
      return classify_numeric(p1, p2, m).label;
    };
    CHECK(label(200, 0) == Region::I);
    CHECK(label(200, 2000) == Region::II);
    CHECK(label(0, 8000) == Region::III);
  }

  TEST_CASE("exchange invariance") {
    auto c = load_config(fig2_doc);
    auto m = make_medium(c);
    for (double dr : {0.0, 90.0, 200.0, 350.0})
      for (double dt : {0.0, 700.0, 2500.0, 4800.0}) {
        c.delta_r_um = dr;
        auto [p1, p2] = make_pulses(c, dt);
        auto a = classify_numeric(p1, p2, m), b = classify_numeric(p2, p1, m);
        CHECK(a.label == b.label);
        CHECK(a.margin == Approx(b.margin));
      }
  }

  TEST_CASE("numeric boundary close to the analytic curve") {
    auto c = load_config(fig2_doc);
    auto m = make_medium(c);
    auto [p1, p2] = make_pulses(c, 0.0);
    auto b = numeric_boundary(p1, p2, m, 0.0, true, 400.0);
    REQUIRE(b);
    CHECK(*b == Approx(boundary_I_II(0.0, bp)).epsilon(1e-6));
  }

  TEST_CASE("serial and parallel maps are identical") {
    auto c = load_config(fig2_doc);
    auto m = make_medium(c);
    auto [p1, p2] = make_pulses(c, 0.0);
    std::vector<double> drs, dts;
    for (int i = 0; i < 30; ++i) {
      drs.push_back(13.0 * i);
      dts.push_back(170.0 * i);
    }
    auto a = region_map(p1, p2, m, drs, dts), b = region_map_serial(p1, p2, m, drs, dts);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      same &= a[i].label.label == b[i].label.label && a[i].label.margin == b[i].label.margin;
    CHECK(same);
  }
}

TEST_SUITE("signal") {
  TEST_CASE("serial and parallel spectral moments are identical") {
    PulseEnvelope p;
    p.shape = Shape::Gauss;
    PulseEnvelope q = p;
    p.x0 = 100;
    auto k = overlap_kernel(p, q);
    IntegratorOptions o;
    o.n_transverse = 8;
    o.z_panels = 6;
    auto n = spatial_nodes(k, o, true);
    auto ks = spectral_kernels(gap_like_lorentz(), thz_to_rad_per_fs(8), 64);
    std::vector<double> om;
    for (int j = 0; j < 64; ++j) om.push_back(j * ks.omega_max / 63);
    auto a = spectral_moments_parallel(n, ks, k.b, om);
    auto b = spectral_moments_serial(n, ks, k.b, om);
    CHECK(a == b);
  }

  TEST_CASE("rect geometry in region I has a structurally zero source term") {
    auto c = load_config(fig2_doc);
    auto [p1, p2] = make_pulses(c, 0.0);
    auto in = integrate_all(overlap_kernel(p1, p2), make_kernels(c), make_options(c));
    CHECK(in.i_r_prime == 0.0);
    CHECK(in.i_r_dprime == 0.0);
    CHECK(in.i_c != 0.0);
  }

  TEST_CASE("null kernel gives zero") {
    PulseEnvelope p;
    KernelSet ks;
    ks.mode = KernelMode::Custom;
    ks.custom_c = [](double, double, double, double) { return 0.0; };
    CHECK(integrate_vacuum(overlap_kernel(p, p), ks) == 0.0);
  }

  TEST_CASE("pulse exchange: I_C even, I_R'' odd, I_R' even") {
    std::string doc = fig2_doc;
    doc.replace(doc.find("\"rect\""), 6, "\"gauss\"");
    auto c = load_config(doc, {"numerics.n_transverse=16", "numerics.z_panels=20"});
    auto ks = make_kernels(c);
    auto o = make_options(c);
    o.parallel = false;
    c.delta_r_um = 150;
    auto [p1, p2] = make_pulses(c, 2200.0);
    auto a = integrate_all(overlap_kernel(p1, p2), ks, o);
    auto b = integrate_all(overlap_kernel(p2, p1), ks, o);
    CHECK(a.i_c == Approx(b.i_c).epsilon(1e-6));
    CHECK(a.i_r_dprime == Approx(-b.i_r_dprime).epsilon(1e-6));
    CHECK(a.i_r_prime == Approx(b.i_r_prime).epsilon(1e-6));
    CHECK(a.i_r_dprime != 0.0);
  }

  TEST_CASE("serial and parallel scans agree") {
    std::string doc = fig2_doc;
    doc.replace(doc.find("\"rect\""), 6, "\"gauss\"");
    auto c = load_config(doc, {"numerics.n_transverse=16", "numerics.z_panels=20"});
    std::vector<double> dts = {0, 1500, 3000};
    auto a = scan_delays(c, dts, true), b = scan_delays(c, dts, false);
    for (int i = 0; i < 3; ++i) {
      CHECK(a[i].g_vac == b[i].g_vac);
      CHECK(a[i].g_s == b[i].g_s);
      CHECK(a[i].status == "ok");
    }
  }
}
