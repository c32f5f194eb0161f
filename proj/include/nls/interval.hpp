#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nls {

/// Raised when an enclosure would need an infinite endpoint. Certification
/// treats this as failure, never as a silently infinite bound.
class IntervalOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directed rounding without touching the floating-point environment. Each
// result is the round-to-nearest value, stepped one ulp outward only when an
// error-free transformation shows the nearest value lies on the wrong side.
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
}  // namespace rounding

/// Closed real interval [lo, hi] with finite double endpoints.
class Interval {
 public:
  constexpr Interval() = default;
  /// Degenerate interval [v, v].
  Interval(double v);  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi);

  /// Smallest interval containing the integer v (exact when |v| <= 2^53).
  static Interval from_int(long long v);
  /// Hull of the two endpoints, order-insensitive.
  static Interval hull(double a, double b);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  /// Upper bound on the radius about mid().
  double rad() const;
  double width() const { return hi_ - lo_; }
  /// Upper bound on max |x| over the interval.
  double mag() const;
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
  bool is_point() const { return lo_ == hi_; }

  Interval operator-() const { return {-hi_, -lo_}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  bool operator==(const Interval&) const = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
/// Throws std::domain_error when 0 is in b.
Interval iv_div(const Interval& a, const Interval& b);
Interval iv_sqr(const Interval& a);
/// Enclosure of sqrt over a; requires a.lo() >= 0.
Interval iv_sqrt(const Interval& a);
/// Enclosure of {|x| : x in a}.
Interval iv_abs(const Interval& a);
Interval iv_hull(const Interval& a, const Interval& b);

inline Interval operator+(Interval a, const Interval& b) { return a += b; }
inline Interval operator-(Interval a, const Interval& b) { return a -= b; }
inline Interval operator*(Interval a, const Interval& b) { return a *= b; }
inline Interval operator/(Interval a, const Interval& b) { return a /= b; }

/// Rectangle re x im in the complex plane.
class ComplexInterval {
 public:
  ComplexInterval() = default;
  ComplexInterval(Interval re, Interval im = Interval(0.0)) : re_(re), im_(im) {}  // NOLINT
  static ComplexInterval point(std::complex<double> z) { return {Interval(z.real()), Interval(z.imag())}; }

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  std::complex<double> mid() const { return {re_.mid(), im_.mid()}; }
  bool contains(std::complex<double> z) const { return re_.contains(z.real()) && im_.contains(z.imag()); }
  bool subset_of(const ComplexInterval& o) const { return re_.subset_of(o.re_) && im_.subset_of(o.im_); }
  bool is_zero() const { return re_ == Interval(0.0) && im_ == Interval(0.0); }

  ComplexInterval operator-() const { return {-re_, -im_}; }
  ComplexInterval& operator+=(const ComplexInterval& o);
  ComplexInterval& operator-=(const ComplexInterval& o);
  ComplexInterval& operator*=(const ComplexInterval& o);

  bool operator==(const ComplexInterval&) const = default;

 private:
  Interval re_;
  Interval im_;
};

ComplexInterval civ_add(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval civ_sub(const ComplexInterval& a, const ComplexInterval& b);
/// Rectangular enclosure of the product set from the four real products.
ComplexInterval civ_mul(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval civ_scale(const ComplexInterval& a, const Interval& r);
/// Division by a real interval not containing zero.
ComplexInterval civ_div(const ComplexInterval& a, const Interval& r);
/// Upper bound on sup{|z| : z in a}, rounded up.
double civ_abs_upper(const ComplexInterval& a);
/// Enclosure of {|z| : z in a}.
Interval civ_abs(const ComplexInterval& a);

inline ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
inline ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
inline ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }

std::string to_string(const Interval& x);

}  // namespace nls
