#pragma once
// Mean-field SIR baseline: ds/dt = -lambda*s*i, di/dt = lambda*s*i - mu*i,
// dr/dt = mu*i, integrated with classical fourth-order Runge-Kutta.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace liqnet {

struct SIRParams {
  double lambda = 0.0;  // infection rate
  double mu = 0.0;      // removal rate
  double s0 = 0.0, i0 = 0.0, r0 = 0.0;
};

struct SIRPoint {
  double t = 0.0;
  double s = 0.0, i = 0.0, r = 0.0;
};

inline std::vector<SIRPoint> sir_meanfield(const SIRParams& p, double t_end, double dt) {
  if (p.lambda < 0.0 || p.mu < 0.0) throw std::invalid_argument("sir: rates must be nonnegative");
  if (p.s0 < 0.0 || p.i0 < 0.0 || p.r0 < 0.0)
    throw std::invalid_argument("sir: initial densities must be nonnegative");
  if (std::fabs(p.s0 + p.i0 + p.r0 - 1.0) > 1e-9)
    throw std::invalid_argument("sir: initial densities must sum to 1");
  if (!(dt > 0.0)) throw std::invalid_argument("sir: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("sir: t_end must be nonnegative");

  auto deriv = [&](double s, double i, double& ds, double& di, double& dr) {
    const double si = p.lambda * s * i;
    ds = -si;
    di = si - p.mu * i;
    dr = p.mu * i;
  };

  std::vector<SIRPoint> traj;
  double t = 0.0, s = p.s0, i = p.i0, r = p.r0;
  traj.push_back({t, s, i, r});
  while (t < t_end - 1e-15) {
    const double h = std::min(dt, t_end - t);
    double k1s, k1i, k1r, k2s, k2i, k2r, k3s, k3i, k3r, k4s, k4i, k4r;
    deriv(s, i, k1s, k1i, k1r);
    deriv(s + 0.5 * h * k1s, i + 0.5 * h * k1i, k2s, k2i, k2r);
    deriv(s + 0.5 * h * k2s, i + 0.5 * h * k2i, k3s, k3i, k3r);
    deriv(s + h * k3s, i + h * k3i, k4s, k4i, k4r);
    s += h / 6.0 * (k1s + 2 * k2s + 2 * k3s + k4s);
    i += h / 6.0 * (k1i + 2 * k2i + 2 * k3i + k4i);
    r += h / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
    t += h;
    traj.push_back({t, s, i, r});
  }
  return traj;
}

}  // namespace liqnet
