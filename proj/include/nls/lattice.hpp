#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nls {

/// Element of N^d. Entries are validated non-negative; the dimension is a
/// runtime property so one build serves every d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::int64_t> entries);
  MultiIndex(std::initializer_list<std::int64_t> entries);

  /// r * 1_{N^d}
  static MultiIndex constant(std::size_t d, std::int64_t r);

  std::size_t dim() const { return entries_.size(); }
  std::int64_t operator[](std::size_t k) const { return entries_[k]; }
  std::span<const std::int64_t> entries() const { return entries_; }

  /// |n| = n_1 + ... + n_d
  std::int64_t l1() const;
  std::int64_t max_entry() const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Requires o <= *this.
  MultiIndex operator-(const MultiIndex& o) const;
  /// Elementwise product.
  MultiIndex operator*(const MultiIndex& o) const;
  MultiIndex operator+(std::int64_t r) const;
  MultiIndex operator*(std::int64_t r) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  std::string str() const;

 private:
  std::vector<std::int64_t> entries_;
};

/// Componentwise partial order m <= n.
bool le(const MultiIndex& m, const MultiIndex& n);
/// Componentwise strict order m < n.
bool lt(const MultiIndex& m, const MultiIndex& n);
MultiIndex elementwise_square(const MultiIndex& n);

/// Per-coordinate frequencies of the torus; every entry strictly positive.
class FrequencyVector {
 public:
  FrequencyVector() = default;
  explicit FrequencyVector(std::vector<double> omega);
  FrequencyVector(std::initializer_list<double> omega);

  std::size_t dim() const { return omega_.size(); }
  double operator[](std::size_t k) const { return omega_[k]; }
  std::span<const double> values() const { return omega_; }
  /// ||omega||^2 = sum omega_i^2
  double norm_sq() const;

  bool operator==(const FrequencyVector&) const = default;

 private:
  std::vector<double> omega_;
};

/// omega^2 j = sum_i omega_i^2 j_i
double weighted_dot(const FrequencyVector& omega, const MultiIndex& j);

/// All multi-indices in the box [lo, hi] ordered by |n| then lexicographically.
std::vector<MultiIndex> box_by_level(const MultiIndex& lo, const MultiIndex& hi);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace nls
