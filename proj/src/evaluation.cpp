#include "nls/evaluation.hpp"

#include <cmath>

namespace nls {

using cd = std::complex<double>;

void GridSpec::validate() const {
  if (nt < 2 || nx < 2) throw std::invalid_argument("GridSpec: counts must be >= 2");
  if (!(t_max > t_min) || !(x_max > x_min)) throw std::invalid_argument("GridSpec: ranges must be non-degenerate");
}

std::vector<GridRow> emit_grid(const SpaceTimeSequence<cd>& c, const GridSpec& grid) {
  grid.validate();
  if (c.dim() != 1) throw std::invalid_argument("emit_grid: the CSV layout needs d = 1");
  const int M = static_cast<int>(c.max_level());
  const double w = c.omega()[0];
  std::vector<GridRow> rows(static_cast<std::size_t>(grid.nt) * grid.nx);
  const double ht = (grid.t_max - grid.t_min) / (grid.nt - 1);
  const double hx = (grid.x_max - grid.x_min) / (grid.nx - 1);
#pragma omp parallel for schedule(static)
  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.t_min + ht * it;
    const auto a = mode_values(c, M, t);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x_min + hx * ix;
      cd u{};
      for (int n = 0; n <= M; ++n)
        if (a[n] != cd{}) u += a[n] * std::polar(1.0, w * n * x);
      rows[static_cast<std::size_t>(it) * grid.nx + ix] = {t, x, u.real(), u.imag(), std::abs(u)};
    }
  }
  return rows;
}

namespace {

// i w2 n^2 a_n - i (a^p)_n on dense vectors, truncated at the vector length.
void rhs_dense(const std::vector<cd>& a, double w2, int p, std::vector<cd>& out, std::vector<cd>& pw,
               std::vector<cd>& tmp) {
  const std::size_t L = a.size();
  pw = a;
  for (int q = 2; q <= p; ++q) {
    tmp.assign(L, cd{});
    for (std::size_t i = 0; i < L; ++i) {
      if (a[i] == cd{}) continue;
      for (std::size_t k = 0; i + k < L; ++k) tmp[i + k] += a[i] * pw[k];
    }
    pw.swap(tmp);
  }
  out.resize(L);
  for (std::size_t n = 0; n < L; ++n) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    out[n] = cd(0.0, w2 * nn) * a[n] - cd(0.0, 1.0) * pw[n];
  }
}

}  // namespace

ModeSequence<cd> galerkin_rhs(const ModeSequence<cd>& a, double omega, int p, int N) {
  if (a.dim() != 1) throw std::invalid_argument("galerkin_rhs: requires d = 1");
  if (p < 2 || N < 0) throw std::invalid_argument("galerkin_rhs: need p >= 2 and N >= 0");
  std::vector<cd> dense(N + 1);
  for (const auto& [n, v] : a.entries()) {
    if (n[0] > N) throw std::invalid_argument("galerkin_rhs: a has modes beyond N");
    dense[n[0]] = v;
  }
  std::vector<cd> out, pw, tmp;
  rhs_dense(dense, omega * omega, p, out, pw, tmp);
  ModeSequence<cd> r(1, a.weight());
  for (int n = 0; n <= N; ++n) r.set(MultiIndex{n}, out[n]);
  return r;
}

CoefficientTrajectory integrate_galerkin(const ModeSequence<cd>& phi, double omega, int p, int N, double t_end,
                                         double dt) {
  if (phi.dim() != 1) throw std::invalid_argument("integrate_galerkin: requires d = 1");
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("integrate_galerkin: need dt > 0, t_end >= 0");
  if (p < 2 || N < 0) throw std::invalid_argument("integrate_galerkin: need p >= 2 and N >= 0");
  const double w2 = omega * omega;
  const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
  const double h = t_end / steps;
  std::vector<cd> a(N + 1);
  for (const auto& [n, v] : phi.entries())
    if (n[0] <= N) a[n[0]] = v;

  CoefficientTrajectory traj;
  traj.times.reserve(steps + 1);
  std::vector<std::vector<cd>> hist;
  hist.reserve(steps + 1);
  traj.times.push_back(0.0);
  hist.push_back(a);
  std::vector<cd> k1, k2, k3, k4, y(N + 1), pw, tmp;
  for (int s = 0; s < steps; ++s) {
    rhs_dense(a, w2, p, k1, pw, tmp);
    for (int n = 0; n <= N; ++n) y[n] = a[n] + 0.5 * h * k1[n];
    rhs_dense(y, w2, p, k2, pw, tmp);
    for (int n = 0; n <= N; ++n) y[n] = a[n] + 0.5 * h * k2[n];
    rhs_dense(y, w2, p, k3, pw, tmp);
    for (int n = 0; n <= N; ++n) y[n] = a[n] + h * k3[n];
    rhs_dense(y, w2, p, k4, pw, tmp);
    for (int n = 0; n <= N; ++n) {
      a[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
      if (!std::isfinite(a[n].real()) || !std::isfinite(a[n].imag())) throw DivergenceError(traj.times.back());
    }
    traj.times.push_back(s + 1 == steps ? t_end : h * (s + 1));
    hist.push_back(a);
  }
  for (int n = 0; n <= N; ++n) {
    std::vector<cd> col(hist.size());
    for (std::size_t k = 0; k < hist.size(); ++k) col[k] = hist[k][n];
    traj.values.emplace(MultiIndex{n}, std::move(col));
  }
  return traj;
}

double conserved_V(cd z, int p) {
  if (z == cd{}) throw std::invalid_argument("conserved_V: z must be nonzero");
  if (p < 2) throw std::invalid_argument("conserved_V: p must be >= 2");
  return 2.0 * std::pow(z, -(p - 1)).real();
}

}  // namespace nls
