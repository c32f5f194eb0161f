#pragma once

#include <stdexcept>

#include "nls/lattice.hpp"
#include "nls/scalar.hpp"
#include "nls/sequence.hpp"

namespace nls {

struct OperatorContext {
  int p = 2;
  FrequencyVector omega{1.0};
  int N = 1;

  void validate() const {
    if (p < 2) throw std::invalid_argument("OperatorContext: p must be >= 2");
    if (N < 1) throw std::invalid_argument("OperatorContext: N must be >= 1");
  }
};

/// p 1 <= n and n <= j <= n^2 - (p-1)(2n-p) componentwise: where c^p can live.
inline bool in_power_band(const MultiIndex& n, const MultiIndex& j, int p) {
  for (std::size_t k = 0; k < n.dim(); ++k) {
    const std::int64_t nk = n[k];
    if (nk < p || j[k] < nk || j[k] > nk * nk - static_cast<std::int64_t>(p - 1) * (2 * nk - p)) return false;
  }
  return true;
}

/// (Kc)_{n,j} = c_{n,j} / (omega^2 (n^2 - j)) on the power band, zero elsewhere.
template <class T>
SpaceTimeSequence<T> apply_K(const OperatorContext& ctx, const SpaceTimeSequence<T>& c) {
  ctx.validate();
  require_same_dim(ctx.omega.dim(), c.dim(), "apply_K");
  SpaceTimeSequence<T> out(c.omega(), c.weight());
  for (const auto& [k, v] : c.entries()) {
    if (!in_power_band(k.n, k.j, ctx.p)) continue;
    out.set(k.n, k.j, ScalarTraits<T>::div(v, omega_weight<T>(ctx.omega, elementwise_square(k.n) - k.j)));
  }
  return out;
}

/// (Lc)_{n,n^2} = sum_{n <= k < n^2} c_{n,k}; the sum is empty at n = 1.
template <class T>
SpaceTimeSequence<T> apply_L(const SpaceTimeSequence<T>& c) {
  SpaceTimeSequence<T> out(c.omega(), c.weight());
  const MultiIndex* cur = nullptr;
  T acc = ScalarTraits<T>::zero();
  auto flush = [&] {
    if (cur) out.set(*cur, elementwise_square(*cur), acc);
    acc = ScalarTraits<T>::zero();
  };
  // entries are ordered by n, then ascending j
  for (const auto& [k, v] : c.entries()) {
    if (!cur || !(*cur == k.n)) {
      flush();
      cur = &k.n;
    }
    if (!(k.j == elementwise_square(k.n))) acc += v;
  }
  flush();
  return out;
}

/// (iota phi)_{n,n^2} = phi_n.
template <class T>
SpaceTimeSequence<T> embed_iota(const ModeSequence<T>& phi, const FrequencyVector& omega) {
  require_same_dim(phi.dim(), omega.dim(), "embed_iota");
  SpaceTimeSequence<T> out(omega, phi.weight());
  const auto one = MultiIndex::constant(phi.dim(), 1);
  for (const auto& [n, v] : phi.entries()) {
    if (!le(one, n)) throw std::invalid_argument("embed_iota: phi has a nonzero entry at n = " + n.str());
    out.set(n, elementwise_square(n), v);
  }
  return out;
}

/// T(c) = iota phi + (I - L) K c^p
template <class T>
SpaceTimeSequence<T> apply_T(const OperatorContext& ctx, const ModeSequence<T>& phi, const SpaceTimeSequence<T>& c) {
  auto out = embed_iota(phi, ctx.omega);
  if (c.empty()) return out;
  const auto kc = apply_K(ctx, st_power(c, ctx.p));
  return st_add(out, st_sub(kc, apply_L(kc)));
}

enum class Part { head, tail };

/// head keeps shells with every component of n at most N; tail keeps the rest.
template <class T>
SpaceTimeSequence<T> project(const OperatorContext& ctx, const SpaceTimeSequence<T>& c, Part part) {
  SpaceTimeSequence<T> out(c.omega(), c.weight());
  for (const auto& [k, v] : c.entries()) {
    const bool head = k.n.max_entry() <= ctx.N;
    if (head == (part == Part::head)) out.set(k.n, k.j, v);
  }
  return out;
}

/// ||pi_N (T(c) - c)||
template <class T>
double residual(const OperatorContext& ctx, const ModeSequence<T>& phi, const SpaceTimeSequence<T>& c) {
  return st_norm(project(ctx, st_sub(apply_T(ctx, phi, c), c), Part::head));
}

}  // namespace nls
