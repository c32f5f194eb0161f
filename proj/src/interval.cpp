#include "nls/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude the fma-based error terms may themselves underflow,
// so we step outward unconditionally.
const double kTiny = std::ldexp(1.0, -969);

double up(double x) { return std::nextafter(x, kInf); }
double down(double x) { return std::nextafter(x, -kInf); }

// Sign of (a + b) - fl(a + b), exact by TwoSum.
int add_error_sign(double a, double b, double s) {
  const double bp = s - a;
  const double ap = s - bp;
  const double e = (a - ap) + (b - bp);
  return (e > 0) - (e < 0);
}

// Sign of a*b - fl(a*b); 2 means "unknown" (underflow range).
int mul_error_sign(double a, double b, double p) {
  if (std::fabs(p) < kTiny) return 2;
  const double e = std::fma(a, b, -p);
  return (e > 0) - (e < 0);
}

int div_error_sign(double a, double b, double q) {
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return 2;
  const double r = std::fma(-q, b, a);
  const int rs = (r > 0) - (r < 0);
  return b > 0 ? rs : -rs;
}

}  // namespace

namespace rounding {

double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return add_error_sign(a, b, s) < 0 ? down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return add_error_sign(a, b, s) > 0 ? up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  const int e = mul_error_sign(a, b, p);
  return (e < 0 || e == 2) ? down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  const int e = mul_error_sign(a, b, p);
  return (e > 0 || e == 2) ? up(p) : p;
}

double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  const int e = div_error_sign(a, b, q);
  return (e < 0 || e == 2) ? down(q) : q;
}

double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  const int e = div_error_sign(a, b, q);
  return (e > 0 || e == 2) ? up(q) : q;
}

double sqrt_down(double a) {
  if (a == 0.0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return down(s);
  return std::fma(-s, s, a) < 0 ? down(s) : s;
}

double sqrt_up(double a) {
  if (a == 0.0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return up(s);
  return std::fma(-s, s, a) > 0 ? up(s) : s;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double v) : Interval(v, v) {}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isinf(lo) || std::isinf(hi)) throw IntervalOverflow("interval endpoint overflow");
  if (!(lo <= hi)) throw std::invalid_argument("Interval: requires lo <= hi and no NaN");
  if (lo_ == 0.0) lo_ = 0.0;  // normalise -0
  if (hi_ == 0.0) hi_ = 0.0;
}

Interval Interval::from_int(long long v) {
  const double d = static_cast<double>(v);
  if (static_cast<long long>(d) == v) return Interval(d);
  return Interval(down(d), up(d));
}

Interval Interval::hull(double a, double b) { return Interval(std::min(a, b), std::max(a, b)); }

double Interval::mid() const {
  if (lo_ == hi_) return lo_;
  const double m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

double Interval::rad() const {
  const double m = mid();
  return std::max(sub_up(hi_, m), sub_up(m, lo_));
}

double Interval::mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

Interval& Interval::operator+=(const Interval& o) { return *this = iv_add(*this, o); }
Interval& Interval::operator-=(const Interval& o) { return *this = iv_sub(*this, o); }
Interval& Interval::operator*=(const Interval& o) { return *this = iv_mul(*this, o); }
Interval& Interval::operator/=(const Interval& o) { return *this = iv_div(*this, o); }

Interval iv_add(const Interval& a, const Interval& b) {
  return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval iv_sub(const Interval& a, const Interval& b) {
  return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval iv_mul(const Interval& a, const Interval& b) {
  if (a.is_point() && b.is_point()) {
    return {mul_down(a.lo(), b.lo()), mul_up(a.lo(), b.lo())};
  }
  const double l[4] = {mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()), mul_down(a.hi(), b.lo()),
                       mul_down(a.hi(), b.hi())};
  const double h[4] = {mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()), mul_up(a.hi(), b.lo()),
                       mul_up(a.hi(), b.hi())};
  return {*std::min_element(l, l + 4), *std::max_element(h, h + 4)};
}

Interval iv_div(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("iv_div: divisor interval contains zero");
  const double l[4] = {div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi()), div_down(a.hi(), b.lo()),
                       div_down(a.hi(), b.hi())};
  const double h[4] = {div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi()), div_up(a.hi(), b.lo()),
                       div_up(a.hi(), b.hi())};
  return {*std::min_element(l, l + 4), *std::max_element(h, h + 4)};
}

Interval iv_sqr(const Interval& a) {
  if (a.lo() >= 0.0) return {mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi())};
  if (a.hi() <= 0.0) return {mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo())};
  return {0.0, std::max(mul_up(a.lo(), a.lo()), mul_up(a.hi(), a.hi()))};
}

Interval iv_sqrt(const Interval& a) {
  if (a.lo() < 0.0) throw std::domain_error("iv_sqrt: negative argument");
  return {sqrt_down(a.lo()), sqrt_up(a.hi())};
}

Interval iv_abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return -a;
  return {0.0, std::max(-a.lo(), a.hi())};
}

Interval iv_hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) { return *this = civ_add(*this, o); }
ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& o) { return *this = civ_sub(*this, o); }
ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& o) { return *this = civ_mul(*this, o); }

ComplexInterval civ_add(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re() + b.re(), a.im() + b.im()};
}

ComplexInterval civ_sub(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re() - b.re(), a.im() - b.im()};
}

ComplexInterval civ_mul(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

ComplexInterval civ_scale(const ComplexInterval& a, const Interval& r) { return {a.re() * r, a.im() * r}; }

ComplexInterval civ_div(const ComplexInterval& a, const Interval& r) { return {a.re() / r, a.im() / r}; }

Interval civ_abs(const ComplexInterval& a) {
  return iv_sqrt(iv_sqr(iv_abs(a.re())) + iv_sqr(iv_abs(a.im())));
}

double civ_abs_upper(const ComplexInterval& a) {
  const double x = a.re().mag();
  const double y = a.im().mag();
  return sqrt_up(add_up(mul_up(x, x), mul_up(y, y)));
}

std::string to_string(const Interval& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", x.lo(), x.hi());
  return buf;
}

}  // namespace nls
