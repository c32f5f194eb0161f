#include "nls/coeff_solver.hpp"

#include <cmath>

namespace nls {

using cd = std::complex<double>;

cd zero_mode_solution(cd phi0, int p, double t) {
  if (p < 2) throw std::invalid_argument("zero_mode_solution: p must be >= 2");
  if (phi0 == cd{}) return {};
  const cd kappa = static_cast<double>(p - 1) * std::pow(phi0, p - 1);
  // 1 + i kappa s = 0 at s = i / kappa, real only for purely imaginary kappa.
  if (std::fabs(kappa.real()) <= 1e-15 * std::abs(kappa)) {
    const double s = 1.0 / kappa.imag();
    if ((t >= 0.0 && s > 0.0 && s <= t) || (t <= 0.0 && s < 0.0 && s >= t)) throw SingularityError(s);
  }
  // The path 1 + i kappa s, s in [0, t], stays off the negative real axis
  // unless it passes through 0, so the principal branch is the continued one.
  const cd w = 1.0 + cd(0.0, 1.0) * kappa * t;
  return phi0 * std::exp(-std::log(w) / static_cast<double>(p - 1));
}

std::vector<double> TimeGrid::times() const {
  if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw std::invalid_argument("TimeGrid: non-finite endpoint");
  std::vector<double> t(steps + 1);
  const double h = (t1 - t0) / steps;
  for (int k = 0; k <= steps; ++k) t[k] = t0 + h * k;
  t[steps] = t1;
  return t;
}

namespace {

// Cumulative integral of samples g on a uniform grid of spacing h.
std::vector<cd> cumulative_simpson(const std::vector<cd>& g, double h) {
  const std::size_t M = g.size();
  std::vector<cd> I(M);
  if (M < 2) return I;
  if (M == 2) {
    I[1] = 0.5 * h * (g[0] + g[1]);
    return I;
  }
  I[1] = h / 12.0 * (5.0 * g[0] + 8.0 * g[1] - g[2]);
  for (std::size_t k = 2; k < M; ++k) I[k] = I[k - 2] + h / 3.0 * (g[k - 2] + 4.0 * g[k - 1] + g[k]);
  return I;
}

}  // namespace

CoefficientTrajectory solve_quadrature(const ProblemConfig<cd>& cfg, int N, const TimeGrid& grid) {
  if (cfg.dim() != 1) throw std::invalid_argument("solve_quadrature: only d = 1 is supported");
  detail::check_config(cfg.p, 1, cfg.phi.dim(), N);
  const int p = cfg.p;
  const double om2 = cfg.omega[0] * cfg.omega[0];
  CoefficientTrajectory traj;
  traj.times = grid.times();
  const std::size_t M = traj.times.size();
  const double h = (grid.t1 - grid.t0) / grid.steps;

  const cd phi0 = cfg.phi.get(MultiIndex{0});
  // a[k][n] is mode n at sample k; pw[k][q][n] is (a^q)_n with modes > current zeroed.
  std::vector<std::vector<cd>> a(M, std::vector<cd>(N + 1));
  std::vector<std::vector<std::vector<cd>>> pw(M, std::vector<std::vector<cd>>(p + 1, std::vector<cd>(N + 1)));
  // factor[k] = (a0/phi0)^p, the zero-mode part of the integrating factor.
  std::vector<cd> factor(M, 1.0);
  for (std::size_t k = 0; k < M; ++k) {
    const double tau = traj.times[k] - grid.t0;
    a[k][0] = zero_mode_solution(phi0, p, tau);
    if (phi0 != cd{}) factor[k] = std::pow(a[k][0] / phi0, p);
    for (int q = 1; q <= p; ++q) pw[k][q][0] = std::pow(a[k][0], q);
  }
  std::vector<cd> g(M);
  for (int n = 1; n <= N; ++n) {
    const double nn = static_cast<double>(n) * n;
    for (std::size_t k = 0; k < M; ++k) {
      auto& P = pw[k];
      // (a~^q)_n for q >= 2 from lower powers; a_n itself is still zero here.
      for (int q = 2; q <= p; ++q) {
        cd s{};
        for (int m = 0; m <= n; ++m) s += a[k][m] * P[q - 1][n - m];
        P[q][n] = s;
      }
      const double tau = traj.times[k] - grid.t0;
      const cd E = std::exp(cd(0.0, om2 * nn * tau)) * factor[k];
      const cd Q = cd(0.0, -1.0) * P[p][n];
      g[k] = Q / E;
    }
    const auto I = cumulative_simpson(g, h);
    const cd phin = cfg.phi.get(MultiIndex{n});
    for (std::size_t k = 0; k < M; ++k) {
      const double tau = traj.times[k] - grid.t0;
      const cd E = std::exp(cd(0.0, om2 * nn * tau)) * factor[k];
      const cd an = E * (phin + I[k]);
      a[k][n] = an;
      // fold the terms carrying a_n into the power rows: q a0^{q-1} a_n
      auto& P = pw[k];
      P[1][n] = an;
      for (int q = 2; q <= p; ++q) P[q][n] += static_cast<double>(q) * P[q - 1][0] * an;
    }
  }
  for (int n = 0; n <= N; ++n) {
    std::vector<cd> col(M);
    for (std::size_t k = 0; k < M; ++k) col[k] = a[k][n];
    traj.values.emplace(MultiIndex{n}, std::move(col));
  }
  return traj;
}

}  // namespace nls
