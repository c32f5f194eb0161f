#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "nls/kernels.hpp"
#include "nls/lattice.hpp"
#include "nls/scalar.hpp"
#include "nls/sequence.hpp"

namespace nls {

template <class T>
struct ProblemConfig {
  int p = 2;
  FrequencyVector omega{1.0};
  ModeSequence<T> phi;

  std::size_t dim() const { return omega.dim(); }
};

/// The zero mode hits its singularity inside the requested time range.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(double t)
      : std::runtime_error("zero-mode singularity at t = " + std::to_string(t)), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// a_0(t) = phi0 (1 + i(p-1) phi0^{p-1} t)^{-1/(p-1)}, continued from 1 at t = 0.
/// Throws SingularityError when the base vanishes on the segment [0, t].
std::complex<double> zero_mode_solution(std::complex<double> phi0, int p, double t);

/// Uniform grid t0 + k (t1 - t0)/steps, k = 0..steps.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1;
  std::vector<double> times() const;
};

struct CoefficientTrajectory {
  std::vector<double> times;
  std::map<MultiIndex, std::vector<std::complex<double>>> values;
};

/// Modes 0..N by integrating factors and cumulative Simpson quadrature (d = 1).
CoefficientTrajectory solve_quadrature(const ProblemConfig<std::complex<double>>& cfg, int N,
                                       const TimeGrid& grid);

namespace detail {

inline void check_config(int p, std::size_t d, std::size_t phi_dim, int N) {
  if (p < 2) throw std::invalid_argument("nonlinearity power p must be >= 2");
  if (N < 1) throw std::invalid_argument("truncation order N must be >= 1");
  require_same_dim(d, phi_dim, "ProblemConfig (phi vs omega)");
}

/// Number of parity-compressed slots i = (j - n)/2 of row n of c^k (k >= 1).
inline std::size_t power_row_len(std::int64_t n, int k) {
  if (n < k) return 0;
  const std::int64_t jmax = n * n - static_cast<std::int64_t>(k - 1) * (2 * n - k);
  return static_cast<std::size_t>((jmax - n) / 2 + 1);
}

}  // namespace detail

/// Dense d = 1 coefficient table. Row n stores c_{n, n + 2i} at index i: every
/// d = 1 solution has c_{n,j} = 0 unless j = n mod 2, so nothing is lost.
template <class T>
struct ShellTable {
  FrequencyVector omega{1.0};
  std::vector<std::vector<T>> rows;  // rows[0] unused

  int order() const { return static_cast<int>(rows.size()) - 1; }
  static std::size_t row_len(std::int64_t n) { return detail::power_row_len(n, 1); }

  SpaceTimeSequence<T> to_sequence() const {
    SpaceTimeSequence<T> out(omega);
    for (std::size_t n = 1; n < rows.size(); ++n)
      for (std::size_t i = 0; i < rows[n].size(); ++i) {
        const auto nn = static_cast<std::int64_t>(n);
        out.set(MultiIndex{nn}, MultiIndex{nn + 2 * static_cast<std::int64_t>(i)}, rows[n][i]);
      }
    return out;
  }
};

/// Convolution terms for row n of c^k from rows of c and of c^{k-1}. For k = 2
/// the mirrored pairs are merged with weight 2.
template <class T>
std::vector<kernels::ConvTerm<T>> power_terms(const std::vector<std::vector<T>>& c,
                                              const std::vector<std::vector<T>>& prev, std::int64_t n,
                                              int k) {
  std::vector<kernels::ConvTerm<T>> terms;
  if (k == 2) {
    for (std::int64_t m = 1; 2 * m <= n; ++m) {
      const auto& a = c[m];
      const auto& b = c[n - m];
      terms.push_back({a, b, 2 * m == n ? 1 : 2});
    }
  } else {
    for (std::int64_t m = 1; n - m >= k - 1; ++m) terms.push_back({c[m], prev[n - m], 1});
  }
  return terms;
}

/// Space-time recursion for d = 1, shells 1..N, in the scalar field T.
/// phi_rows[n] holds phi_n (index 0 ignored, phi_0 must be zero).
template <class T>
ShellTable<T> solve_shells(int p, double omega, const std::vector<T>& phi_by_n, int N, bool parallel = true) {
  using Tr = ScalarTraits<T>;
  detail::check_config(p, 1, 1, N);
  ShellTable<T> tab;
  tab.omega = FrequencyVector{omega};
  tab.rows.assign(N + 1, {});
  const auto w = Tr::real(omega);
  const auto om2 = w * w;
  // pw[k][t] is row t of c^k; pw[1] aliases the coefficient rows.
  std::vector<std::vector<std::vector<T>>> pw(p + 1);
  for (int k = 2; k <= p; ++k) pw[k].assign(N + 1, {});
  auto& c = tab.rows;
  for (std::int64_t n = 1; n <= N; ++n) {
    for (int k = 2; k <= p; ++k) {
      auto& out = pw[k][n];
      out.assign(detail::power_row_len(n, k), Tr::zero());
      if (out.empty()) continue;
      const auto terms = power_terms(c, k == 2 ? c : pw[k - 1], n, k);
      if (parallel) {
        kernels::shell_conv<T>(terms, out);
      } else {
        kernels::shell_conv_reference<T>(terms, out);
      }
    }
    const auto& src = pw[p][n];
    auto& row = c[n];
    row.assign(ShellTable<T>::row_len(n), Tr::zero());
    const std::int64_t n2 = n * n;
    T closing = static_cast<std::size_t>(n) < phi_by_n.size() ? phi_by_n[n] : Tr::zero();
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::int64_t j = n + 2 * static_cast<std::int64_t>(i);
      if (Tr::is_zero(src[i])) continue;
      row[i] = Tr::div(src[i], om2 * Tr::real_int(n2 - j));
    }
    for (std::size_t i = 0; i + 1 < row.size(); ++i) closing = closing - row[i];
    row.back() = closing;
  }
  return tab;
}

/// Space-time recursion on an arbitrary dimension with sparse rows, over the
/// box 1 <= n <= N (componentwise), processed in increasing |n|.
template <class T>
SpaceTimeSequence<T> solve_spacetime_sparse(const ProblemConfig<T>& cfg, int N) {
  using Tr = ScalarTraits<T>;
  using Row = std::map<MultiIndex, T>;
  const std::size_t d = cfg.dim();
  detail::check_config(cfg.p, d, cfg.phi.dim(), N);
  SpaceTimeSequence<T> out(cfg.omega, cfg.phi.weight());
  const auto one = MultiIndex::constant(d, 1);
  for (const auto& [n, v] : cfg.phi.entries())
    if (!le(one, n)) throw std::invalid_argument("phi has a nonzero entry at n = " + n.str() + " (needs n >= 1)");
  if (cfg.phi.empty()) return out;

  std::map<MultiIndex, Row> c;
  std::vector<std::map<MultiIndex, Row>> pw(cfg.p + 1);
  auto conv_into = [](Row& acc, const Row& a, const Row& b) {
    for (const auto& [j1, v1] : a)
      for (const auto& [j2, v2] : b) {
        auto [it, fresh] = acc.try_emplace(j1 + j2, v1 * v2);
        if (!fresh) it->second += v1 * v2;
      }
  };
  for (const auto& n : box_by_level(one, MultiIndex::constant(d, N))) {
    for (int k = 2; k <= cfg.p; ++k) {
      const auto& prev = k == 2 ? c : pw[k - 1];
      Row acc;
      for (const auto& [m, crow] : c) {
        if (!le(m, n) || m == n) continue;
        auto it = prev.find(n - m);
        if (it != prev.end()) conv_into(acc, crow, it->second);
      }
      if (!acc.empty()) pw[k][n] = std::move(acc);
    }
    const auto n2 = elementwise_square(n);
    Row row;
    T closing = cfg.phi.get(n);
    if (auto it = pw[cfg.p].find(n); it != pw[cfg.p].end()) {
      for (const auto& [j, v] : it->second) {
        if (Tr::is_zero(v)) continue;
        T q = Tr::div(v, omega_weight<T>(cfg.omega, n2 - j));
        closing = closing - q;
        row.emplace(j, std::move(q));
      }
    }
    row.insert_or_assign(n2, closing);
    for (const auto& [j, v] : row) out.set(n, j, v);
    c.emplace(n, std::move(row));
  }
  return out;
}

/// Exact space-time coefficients of the solution for shells up to N (the box
/// 1 <= n <= N componentwise when d >= 2).
template <class T>
SpaceTimeSequence<T> solve_spacetime(const ProblemConfig<T>& cfg, int N) {
  if (cfg.dim() != 1) return solve_spacetime_sparse(cfg, N);
  detail::check_config(cfg.p, 1, cfg.phi.dim(), N);
  std::vector<T> phi(N + 1, ScalarTraits<T>::zero());
  for (const auto& [n, v] : cfg.phi.entries()) {
    if (n[0] < 1) throw std::invalid_argument("phi has a nonzero entry at n = " + n.str() + " (needs n >= 1)");
    if (n[0] <= N) phi[n[0]] = v;
  }
  if (cfg.phi.empty()) return SpaceTimeSequence<T>(cfg.omega, cfg.phi.weight());
  auto seq = solve_shells<T>(cfg.p, cfg.omega[0], phi, N).to_sequence();
  SpaceTimeSequence<T> out(cfg.omega, cfg.phi.weight());
  for (const auto& [k, v] : seq.entries()) out.set(k.n, k.j, v);
  return out;
}

namespace detail {

// omega^{-e} in the real field, e = 2/(p-1) when that is an integer.
template <class T>
typename ScalarTraits<T>::Real omega_step(double omega, int p) {
  using Tr = ScalarTraits<T>;
  if (!(omega > 0.0)) throw std::invalid_argument("rescale: omega must be positive");
  if (2 % (p - 1) == 0) {
    auto w = Tr::real(omega);
    auto r = w;
    for (int e = 1; e < 2 / (p - 1); ++e) r = r * w;
    return r;
  }
  if (omega == 1.0) return Tr::real(1.0);
  if constexpr (std::is_same_v<T, std::complex<double>>) {
    return std::pow(omega, 2.0 / (p - 1));
  } else {
    throw std::invalid_argument("rescale: omega^{2/(p-1)} is not exact for this scalar field");
  }
}

}  // namespace detail

/// c_{n,j} -> A^n / omega^{2(n-1)/(p-1)} c_{n,j} applied to c~ = c(1,1) (d = 1).
template <class T>
SpaceTimeSequence<T> rescale(const SpaceTimeSequence<T>& ctilde, std::complex<double> A, double omega, int p) {
  using Tr = ScalarTraits<T>;
  if (ctilde.dim() != 1) throw std::invalid_argument("rescale: requires d = 1");
  if (p < 2) throw std::invalid_argument("rescale: p must be >= 2");
  const auto step = detail::omega_step<T>(omega, p);
  const T a = Tr::from_complex(A);
  SpaceTimeSequence<T> out(FrequencyVector{omega}, ctilde.weight());
  std::int64_t have = 1;
  T factor = a;  // A^n / omega^{e(n-1)} at n = have
  for (const auto& [k, v] : ctilde.entries()) {
    while (have < k.n[0]) {
      factor = Tr::div(factor * a, step);
      ++have;
    }
    out.set(k.n, k.j, factor * v);
  }
  return out;
}

/// c(A, omega) for monochromatic data A e^{i omega x}, via c~ and rescale.
template <class T>
SpaceTimeSequence<T> monochromatic_coeffs(std::complex<double> A, double omega, int p, int N) {
  if (!(omega > 0.0)) throw std::invalid_argument("monochromatic_coeffs: omega must be positive");
  ProblemConfig<T> cfg{p, FrequencyVector{1.0}, ModeSequence<T>(1)};
  cfg.phi.set(MultiIndex{1}, ScalarTraits<T>::from_complex(1.0));
  return rescale(solve_spacetime(cfg, N), A, omega, p);
}

}  // namespace nls
