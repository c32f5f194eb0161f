#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <type_traits>

#include "nls/interval.hpp"
#include "nls/lattice.hpp"

namespace nls {

/// Exact complex rational.
struct QComplex {
  mpq_class re;
  mpq_class im;

  QComplex() = default;
  QComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  QComplex operator-() const { return {-re, -im}; }
  bool operator==(const QComplex& o) const { return re == o.re && im == o.im; }
};

inline QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
inline QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
inline QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }

/// Exact rational from a decimal literal ("0.1", "-2.5e-3", "7/144", "3").
mpq_class parse_rational(std::string_view text);
std::string to_string(const QComplex& z);
/// Tightest double interval around q (zero width when q is a double).
Interval rational_enclosure(const mpq_class& q);

/// Arithmetic contract shared by the three scalar fields. `Real` is the
/// matching real field used for denominators like omega^2 (n^2 - j).
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
  using T = std::complex<double>;
  using Real = double;
  static constexpr std::string_view kind = "f64";

  static T zero() { return {}; }
  static bool is_zero(const T& x) { return x == T{}; }
  static T from_complex(std::complex<double> z) { return z; }
  static T from_real(const Real& r) { return {r, 0.0}; }
  static Real real(double v) { return v; }
  static Real real_int(long long v) { return static_cast<double>(v); }
  static T div(const T& x, const Real& r) { return x / r; }
  static T mul(const T& x, const Real& r) { return x * r; }
  static double abs_upper(const T& x) { return std::abs(x); }
  static std::complex<double> to_complex(const T& x) { return x; }
};

/// Real doubles: c~ is real, so the A* estimator runs on this field.
template <>
struct ScalarTraits<double> {
  using T = double;
  using Real = double;
  static constexpr std::string_view kind = "f64-real";

  static T zero() { return 0.0; }
  static bool is_zero(const T& x) { return x == 0.0; }
  static T from_complex(std::complex<double> z) { return z.real(); }
  static T from_real(const Real& r) { return r; }
  static Real real(double v) { return v; }
  static Real real_int(long long v) { return static_cast<double>(v); }
  static T div(const T& x, const Real& r) { return x / r; }
  static T mul(const T& x, const Real& r) { return x * r; }
  static double abs_upper(const T& x) { return std::fabs(x); }
  static std::complex<double> to_complex(const T& x) { return {x, 0.0}; }
};

template <>
struct ScalarTraits<QComplex> {
  using T = QComplex;
  using Real = mpq_class;
  static constexpr std::string_view kind = "rational";

  static T zero() { return {}; }
  static bool is_zero(const T& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
  /// Exact: every finite double is a dyadic rational.
  static T from_complex(std::complex<double> z) { return {mpq_class(z.real()), mpq_class(z.imag())}; }
  static T from_real(const Real& r) { return {r, 0}; }
  static Real real(double v) { return mpq_class(v); }
  static Real real_int(long long v) { return mpq_class(static_cast<long>(v)); }
  static T div(const T& x, const Real& r) { return {x.re / r, x.im / r}; }
  static T mul(const T& x, const Real& r) { return {x.re * r, x.im * r}; }
  static double abs_upper(const T& x) { return std::hypot(x.re.get_d(), x.im.get_d()); }
  static std::complex<double> to_complex(const T& x) { return {x.re.get_d(), x.im.get_d()}; }
};

template <>
struct ScalarTraits<ComplexInterval> {
  using T = ComplexInterval;
  using Real = Interval;
  static constexpr std::string_view kind = "interval";

  static T zero() { return {}; }
  static bool is_zero(const T& x) { return x.is_zero(); }
  static T from_complex(std::complex<double> z) { return T::point(z); }
  static T from_real(const Real& r) { return {r, Interval(0.0)}; }
  static Real real(double v) { return Interval(v); }
  static Real real_int(long long v) { return Interval::from_int(v); }
  static T div(const T& x, const Real& r) { return civ_div(x, r); }
  static T mul(const T& x, const Real& r) { return civ_scale(x, r); }
  static double abs_upper(const T& x) { return civ_abs_upper(x); }
  static std::complex<double> to_complex(const T& x) { return x.mid(); }
};

/// Exact user input carried into a scalar field (nearest double, itself, or an enclosure).
template <class T>
T from_rational(const QComplex& z) {
  if constexpr (std::is_same_v<T, QComplex>) {
    return z;
  } else if constexpr (std::is_same_v<T, ComplexInterval>) {
    return {rational_enclosure(z.re), rational_enclosure(z.im)};
  } else if constexpr (std::is_same_v<T, double>) {
    return z.re.get_d();
  } else {
    return {z.re.get_d(), z.im.get_d()};
  }
}

/// omega^2 k = sum_i omega_i^2 k_i evaluated in the scalar's real field.
template <class T>
typename ScalarTraits<T>::Real omega_weight(const FrequencyVector& omega, const MultiIndex& k) {
  using Tr = ScalarTraits<T>;
  require_same_dim(omega.dim(), k.dim(), "omega_weight");
  typename Tr::Real acc = Tr::real(0.0);
  for (std::size_t i = 0; i < k.dim(); ++i) {
    if (k[i] == 0) continue;
    const auto w = Tr::real(omega[i]);
    acc = acc + w * w * Tr::real_int(k[i]);
  }
  return acc;
}

}  // namespace nls
