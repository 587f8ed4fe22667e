#pragma once

namespace eos {

// Dawson function D(x) = exp(-x^2) * integral_0^x exp(t^2) dt.
double dawson(double x);
// D''(x), evaluated without the cancellation of (4x^2 - 2) D - 2x at large x.
double dawson_d2(double x);

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

}  // namespace eos
