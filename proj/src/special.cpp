#include "eos/special.hpp"

#include <array>
#include <cmath>

namespace eos {

namespace {

constexpr double kH = 0.2;
constexpr int kTerms = 18;

// Rybicki's sampling-theorem sum; aliasing error ~ exp(-(pi / 2H)^2).
double dawson_rybicki(double x) {
  static const std::array<double, kTerms> c = [] {
    std::array<double, kTerms> a{};
    for (int i = 0; i < kTerms; ++i) {
      double t = (2.0 * i + 1.0) * kH;
      a[i] = std::exp(-t * t);
    }
    return a;
  }();
  double ax = std::abs(x);
  double n0 = 2.0 * std::round(0.5 * ax / kH);
  double xp = ax - n0 * kH;
  double e1 = std::exp(2.0 * xp * kH);
  double e2 = e1 * e1;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < kTerms; ++i, d1 += 2.0, d2 -= 2.0, e1 *= e2) {
    sum += c[i] * (e1 / d1 + 1.0 / (d2 * e1));
  }
  return std::copysign(0.5641895835477563 * std::exp(-xp * xp) * sum, x);
}

// Taylor series sum_k (-2)^k x^(2k+1) / (2k+1)!!
double dawson_series(double x) {
  double x2 = x * x;
  double term = x, sum = x;
  for (int k = 1; k < 30; ++k) {
    term *= -2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Asymptotic series D(x) ~ sum_k (2k-1)!! / (2^(k+1) x^(2k+1)) and, if `d2`,
// its term-by-term second derivative.
double dawson_asymptotic(double x, bool d2) {
  double inv2 = 1.0 / (x * x);
  double coef = 0.5;  // (2k-1)!! / 2^(k+1) at k = 0
  double pw = 1.0 / x;
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    double p = 2.0 * k + 1.0;
    double term = d2 ? coef * p * (p + 1.0) * pw * inv2 : coef * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    coef *= (2.0 * k + 1.0) / 2.0;
    pw *= inv2;
  }
  return sum;
}

}  // namespace

double dawson(double x) {
  double ax = std::abs(x);
  if (ax < 0.5) return dawson_series(x);
  if (ax > 12.0) return std::copysign(dawson_asymptotic(ax, false), x);
  return dawson_rybicki(x);
}

double dawson_d2(double x) {
  double ax = std::abs(x);
  if (ax > 8.0) return std::copysign(dawson_asymptotic(ax, true), x);
  return (4.0 * x * x - 2.0) * dawson(x) - 2.0 * x;
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace eos
