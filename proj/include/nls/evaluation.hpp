#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "nls/coeff_solver.hpp"
#include "nls/sequence.hpp"

namespace nls {

/// sum c_{n,j} e^{i omega^2 j t} e^{i omega n x} over stored entries.
template <class T>
std::complex<double> eval_solution(const SpaceTimeSequence<T>& c, double t, const std::vector<double>& x) {
  require_same_dim(c.dim(), x.size(), "eval_solution");
  const auto& om = c.omega();
  std::complex<double> u{};
  for (const auto& [k, v] : c.entries()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      phase += om[i] * om[i] * static_cast<double>(k.j[i]) * t + om[i] * static_cast<double>(k.n[i]) * x[i];
    u += ScalarTraits<T>::to_complex(v) * std::polar(1.0, phase);
  }
  return u;
}

/// a_n(t) = sum_j c_{n,j} e^{i omega^2 j t} for d = 1, n = 0..M.
template <class T>
std::vector<std::complex<double>> mode_values(const SpaceTimeSequence<T>& c, int M, double t) {
  if (c.dim() != 1) throw std::invalid_argument("mode_values: requires d = 1");
  const double w2 = c.omega()[0] * c.omega()[0];
  std::vector<std::complex<double>> a(M + 1);
  for (const auto& [k, v] : c.entries()) {
    if (k.n[0] > M) continue;
    a[k.n[0]] += ScalarTraits<T>::to_complex(v) * std::polar(1.0, w2 * static_cast<double>(k.j[0]) * t);
  }
  return a;
}

struct GridSpec {
  double t_min = 0.0, t_max = 1.0;
  int nt = 2;
  double x_min = 0.0, x_max = 1.0;
  int nx = 2;
  void validate() const;
};

struct GridRow {
  double t, x, re, im, abs;
};

/// Rows (t, x, Re u, Im u, |u|), t outer and x inner (d = 1).
std::vector<GridRow> emit_grid(const SpaceTimeSequence<std::complex<double>>& c, const GridSpec& grid);

/// i omega^2 n^2 a_n - i (a^p)_n for 0 <= n <= N (d = 1).
ModeSequence<std::complex<double>> galerkin_rhs(const ModeSequence<std::complex<double>>& a, double omega, int p,
                                                int N);

/// The Galerkin state went non-finite; last_time is the last finite sample.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(double t)
      : std::runtime_error("Galerkin integration diverged after t = " + std::to_string(t)), last_time_(t) {}
  double last_time() const { return last_time_; }

 private:
  double last_time_;
};

/// Classical RK4 on modes 0..N with ceil(t_end/dt) equal steps; every step is recorded.
CoefficientTrajectory integrate_galerkin(const ModeSequence<std::complex<double>>& phi, double omega, int p, int N,
                                         double t_end, double dt);

/// V(z) = 2 Re z^{-(p-1)}
double conserved_V(std::complex<double> z, int p);

/// sum_{n <= M} |a_n(t)|^2 (d = 1).
template <class T>
double partial_l2(const SpaceTimeSequence<T>& c, int M, double t) {
  double s = 0.0;
  for (const auto& a : mode_values(c, M, t)) s += std::norm(a);
  return s;
}

/// Time average of partial_l2 over one period: sum_{n <= M} sum_j |c_{n,j}|^2.
template <class T>
double averaged_l2(const SpaceTimeSequence<T>& c, int M) {
  double s = 0.0;
  for (const auto& [k, v] : c.entries())
    if (k.n.max_entry() <= M) s += std::norm(ScalarTraits<T>::to_complex(v));
  return s;
}

}  // namespace nls
