#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "qdm/errors.hpp"
#include "qdm/types.hpp"

namespace qdm::ode {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 picks one from the derivative scale
  double min_step = 1e-14;    // relative to the span, below this the step has collapsed
  long max_steps = 50'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and elementary step control, integrating
/// dy/dt = f(t, y) and recording y exactly at each requested output time.
/// Output times must be ascending and start at or after t0. Throws
/// StiffnessError (time reached, in the units of t) when the step collapses.
template <typename Scalar, typename F>
std::vector<VectorX<Scalar>> dopri5(F&& f, double t0, VectorX<Scalar> y, const std::vector<double>& outputs,
                                    const Options& opt = {}, Stats* stats = nullptr) {
  using Vec = VectorX<Scalar>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats local;
  Stats& st = stats ? *stats : local;
  std::vector<Vec> result;
  result.reserve(outputs.size());
  if (outputs.empty()) return result;

  const double t_end = outputs.back();
  const double span = std::max(t_end - t0, std::numeric_limits<double>::min());
  double t = t0;
  Vec k1 = f(t, y);
  ++st.evaluations;

  auto error_norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
    double worst = 0.0;
    for (Index i = 0; i < err.size(); ++i) {
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
      worst = std::max(worst, std::abs(err(i)) / scale);
    }
    return worst;
  };

  double h = opt.initial_step;
  if (h <= 0) {
    const double dy = k1.cwiseAbs().maxCoeff();
    const double ys = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
    h = dy > 0 ? 0.01 * ys / dy : span;
    h = std::min(h, span);
  }

  Vec k2, k3, k4, k5, k6, k7, y1, err;
  std::size_t next = 0;
  while (next < outputs.size() && outputs[next] <= t) result.push_back(y), ++next;

  while (next < outputs.size()) {
    const double target = outputs[next];
    bool hit = false;
    double step = h;
    if (t + step >= target || t + 1.01 * step >= target) {
      step = target - t;
      hit = true;
    }
    if (step < opt.min_step * span)
      throw StiffnessError("step size collapsed", t);
    if (st.accepted + st.rejected > opt.max_steps) throw StiffnessError("step budget exhausted", t);

    k2 = f(t + c2 * step, Vec(y + step * (a21 * k1)));
    k3 = f(t + c3 * step, Vec(y + step * (a31 * k1 + a32 * k2)));
    k4 = f(t + c4 * step, Vec(y + step * (a41 * k1 + a42 * k2 + a43 * k3)));
    k5 = f(t + c5 * step, Vec(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    k6 = f(t + step, Vec(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    y1 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(t + step, y1);
    st.evaluations += 6;
    err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double norm = error_norm(err, y, y1);
    if (!std::isfinite(norm)) throw StiffnessError("non-finite error estimate", t);
    const double factor = norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    if (norm <= 1.0) {
      ++st.accepted;
      t = hit ? target : t + step;
      y.swap(y1);
      k1.swap(k7);
      // Keep the pre-clip step when landing on an output point.
      h = hit ? std::max(h, step * factor) : step * factor;
      while (next < outputs.size() && outputs[next] <= t) result.push_back(y), ++next;
    } else {
      ++st.rejected;
      h = step * std::max(factor, 0.2);
    }
  }
  return result;
}

}  // namespace qdm::ode
