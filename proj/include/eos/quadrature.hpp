#pragma once
#include <functional>
#include <vector>

namespace eos {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre on [-1, 1].
const Rule& gauss_legendre(int n);
// Gauss-Hermite for the weight exp(-x^2) on the real line.
const Rule& gauss_hermite(int n);

// Composite Gauss-Legendre on [a, b]: every gap between sorted breakpoints is
// cut into `panels` equal pieces, each carrying an n-point rule.
Rule composite_legendre(double a, double b, std::vector<double> breaks, int n, int panels = 1);

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod over [a, b], split at the interior breakpoints.
// Throws NumericError when the error estimate stays far above tol (relative)
// and above abs_floor.
double integrate(const Fn& f, double a, double b, double tol, std::vector<double> breaks = {},
                 double abs_floor = 0.0);

// Principal value over [a, b] of an integrand with simple poles at `poles`.
// Each pole gets a symmetric window that is folded, f(p+t) + f(p-t), so the
// singular parts cancel before they reach the quadrature.
double pv_integrate(const Fn& f, double a, double b, std::vector<double> poles, double tol,
                    std::vector<double> breaks = {}, double abs_floor = 0.0);

// Sorted, deduplicated copy of the breakpoints strictly inside (a, b).
std::vector<double> interior_breaks(double a, double b, std::vector<double> breaks);

}  // namespace eos
