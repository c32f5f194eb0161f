#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "nls/lattice.hpp"
#include "nls/scalar.hpp"

namespace nls {

/// Finitely supported element of the weighted l^1 space on N^d (spatial
/// Fourier data). Exact zeros are never stored.
template <class T>
class ModeSequence {
 public:
  using Tr = ScalarTraits<T>;
  using Map = std::map<MultiIndex, T>;

  ModeSequence() = default;
  explicit ModeSequence(std::size_t d, double s = 0.0) : d_(d), s_(s) {
    if (d == 0) throw std::invalid_argument("ModeSequence: dimension must be >= 1");
    if (!(s >= 0.0)) throw std::invalid_argument("ModeSequence: weight s must be >= 0");
  }

  std::size_t dim() const { return d_; }
  double weight() const { return s_; }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  void set(const MultiIndex& n, T v) {
    require_same_dim(d_, n.dim(), "ModeSequence::set");
    if (Tr::is_zero(v)) {
      entries_.erase(n);
    } else {
      entries_.insert_or_assign(n, std::move(v));
    }
  }
  void add(const MultiIndex& n, const T& v) { set(n, get(n) + v); }

  T get(const MultiIndex& n) const {
    auto it = entries_.find(n);
    return it == entries_.end() ? Tr::zero() : it->second;
  }

  bool operator==(const ModeSequence& o) const { return d_ == o.d_ && entries_ == o.entries_; }

 private:
  std::size_t d_ = 1;
  double s_ = 0.0;
  Map entries_;
};

struct StKey {
  MultiIndex n;
  MultiIndex j;
  auto operator<=>(const StKey&) const = default;
  bool operator==(const StKey&) const = default;
};

/// true iff 1 <= n and n <= j <= n^2 componentwise.
inline bool in_spacetime_support(const MultiIndex& n, const MultiIndex& j) {
  if (n.dim() != j.dim()) return false;
  for (std::size_t k = 0; k < n.dim(); ++k) {
    if (n[k] < 1 || j[k] < n[k] || j[k] > n[k] * n[k]) return false;
  }
  return true;
}

/// Space-time coefficients c_{n,j} of sum c_{n,j} e^{i omega^2 j t} e^{i omega n x}.
template <class T>
class SpaceTimeSequence {
 public:
  using Tr = ScalarTraits<T>;
  using Map = std::map<StKey, T>;

  SpaceTimeSequence() = default;
  explicit SpaceTimeSequence(FrequencyVector omega, double s = 0.0) : omega_(std::move(omega)), s_(s) {
    if (omega_.dim() == 0) throw std::invalid_argument("SpaceTimeSequence: empty omega");
    if (!(s >= 0.0)) throw std::invalid_argument("SpaceTimeSequence: weight s must be >= 0");
  }

  std::size_t dim() const { return omega_.dim(); }
  double weight() const { return s_; }
  const FrequencyVector& omega() const { return omega_; }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  void set(const MultiIndex& n, const MultiIndex& j, T v) {
    require_same_dim(dim(), n.dim(), "SpaceTimeSequence::set");
    if (!in_spacetime_support(n, j)) {
      throw std::invalid_argument("SpaceTimeSequence: entry (" + n.str() + "," + j.str() +
                                  ") violates 1 <= n, n <= j <= n^2");
    }
    StKey key{n, j};
    if (Tr::is_zero(v)) {
      entries_.erase(key);
    } else {
      entries_.insert_or_assign(std::move(key), std::move(v));
    }
  }
  void add(const MultiIndex& n, const MultiIndex& j, const T& v) { set(n, j, get(n, j) + v); }

  T get(const MultiIndex& n, const MultiIndex& j) const {
    auto it = entries_.find(StKey{n, j});
    return it == entries_.end() ? Tr::zero() : it->second;
  }

  /// Largest |n| among stored entries (0 when empty).
  std::int64_t max_level() const {
    std::int64_t m = 0;
    for (const auto& [k, v] : entries_) m = std::max(m, k.n.l1());
    return m;
  }

  bool operator==(const SpaceTimeSequence& o) const {
    return omega_ == o.omega_ && entries_ == o.entries_;
  }

 private:
  FrequencyVector omega_{1.0};
  double s_ = 0.0;
  Map entries_;
};

inline double norm_weight(const MultiIndex& n, double s) {
  return s == 0.0 ? 1.0 : std::pow(1.0 + static_cast<double>(n.l1()), s);
}

template <class T>
double mode_norm(const ModeSequence<T>& a) {
  double acc = 0.0;
  for (const auto& [n, v] : a.entries()) acc += norm_weight(n, a.weight()) * ScalarTraits<T>::abs_upper(v);
  return acc;
}

template <class T>
double st_norm(const SpaceTimeSequence<T>& c) {
  double acc = 0.0;
  for (const auto& [k, v] : c.entries()) acc += norm_weight(k.n, c.weight()) * ScalarTraits<T>::abs_upper(v);
  return acc;
}

/// Cauchy product on N^d.
template <class T>
ModeSequence<T> mode_product(const ModeSequence<T>& a, const ModeSequence<T>& b) {
  require_same_dim(a.dim(), b.dim(), "mode_product");
  std::map<MultiIndex, T> acc;
  for (const auto& [n1, v1] : a.entries())
    for (const auto& [n2, v2] : b.entries()) {
      auto [it, fresh] = acc.try_emplace(n1 + n2, v1 * v2);
      if (!fresh) it->second += v1 * v2;
    }
  ModeSequence<T> out(a.dim(), a.weight());
  for (auto& [n, v] : acc) out.set(n, std::move(v));
  return out;
}

/// Double convolution over (n, j). Each output is summed in ascending (n1, j1)
/// order, so interval results are reproducible.
template <class T>
SpaceTimeSequence<T> st_product(const SpaceTimeSequence<T>& a, const SpaceTimeSequence<T>& b) {
  require_same_dim(a.dim(), b.dim(), "st_product");
  if (!(a.omega() == b.omega())) throw std::invalid_argument("st_product: omega mismatch");
  std::map<StKey, T> acc;
  for (const auto& [k1, v1] : a.entries())
    for (const auto& [k2, v2] : b.entries()) {
      auto [it, fresh] = acc.try_emplace(StKey{k1.n + k2.n, k1.j + k2.j}, v1 * v2);
      if (!fresh) it->second += v1 * v2;
    }
  SpaceTimeSequence<T> out(a.omega(), a.weight());
  for (auto& [k, v] : acc) out.set(k.n, k.j, std::move(v));
  return out;
}

template <class T>
SpaceTimeSequence<T> st_power(const SpaceTimeSequence<T>& c, int p) {
  if (p < 2) throw std::invalid_argument("st_power: p must be >= 2");
  SpaceTimeSequence<T> r = st_product(c, c);
  for (int k = 3; k <= p; ++k) r = st_product(r, c);
  return r;
}

template <class T>
SpaceTimeSequence<T> st_sub(const SpaceTimeSequence<T>& a, const SpaceTimeSequence<T>& b) {
  SpaceTimeSequence<T> out = a;
  for (const auto& [k, v] : b.entries()) out.set(k.n, k.j, out.get(k.n, k.j) - v);
  return out;
}

template <class T>
SpaceTimeSequence<T> st_add(const SpaceTimeSequence<T>& a, const SpaceTimeSequence<T>& b) {
  SpaceTimeSequence<T> out = a;
  for (const auto& [k, v] : b.entries()) out.add(k.n, k.j, v);
  return out;
}

}  // namespace nls
