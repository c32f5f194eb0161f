#include "nls/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nls {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational literal: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (sgn(q.get_den()) == 0) throw bad();
    q.canonicalize();
    return q;
  }
  // decimal: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long long scale = 0;
  bool seen_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw bad();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(s.substr(i), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used == 0) throw bad();
    i += used;
    scale += e;
  }
  if (i != s.size()) throw bad();
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpq_class q(num);
  if (scale != 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale < 0) {
      q = mpq_class(num, p);
    } else {
      q = mpq_class(num * p);
    }
    q.canonicalize();
  }
  return neg ? mpq_class(-q) : q;
}

Interval rational_enclosure(const mpq_class& q) {
  const double d = q.get_d();  // truncates toward zero
  if (!std::isfinite(d)) throw IntervalOverflow("rational out of double range");
  const int c = cmp(mpq_class(d), q);
  if (c == 0) return Interval(d);
  constexpr double inf = std::numeric_limits<double>::infinity();
  return c < 0 ? Interval(d, std::nextafter(d, inf)) : Interval(std::nextafter(d, -inf), d);
}

std::string to_string(const QComplex& z) {
  return z.re.get_str() + (sgn(z.im) < 0 ? "" : "+") + z.im.get_str() + "i";
}

}  // namespace nls
