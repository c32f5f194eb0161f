#include "nls/verifier.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <memory>
#include <stdexcept>

namespace nls {

using namespace rounding;

namespace {

constexpr double kUnit = 0x1p-53;
// Products of two magnitudes at least this large cannot underflow.
constexpr double kSafeMagnitude = 0x1p-510;
constexpr double kEta = std::numeric_limits<double>::denorm_min();

// gamma_k = k u / (1 - k u), rounded up
double gamma_up(double k) {
  const double ku = mul_up(k, kUnit);
  if (ku >= 1.0) throw IntervalOverflow("summation too long for the floating-point error bound");
  return div_up(ku, sub_down(1.0, ku));
}

Interval midrad_to_interval(double mid, double rad) { return {sub_down(mid, rad), add_up(mid, rad)}; }

bool is_tiny(double x) { return x != 0.0 && std::fabs(x) < kSafeMagnitude; }

}  // namespace

std::vector<kernels::MidRadRow> enclose_ctilde(int N, bool parallel) {
  if (N < 1) throw std::invalid_argument("enclose_ctilde: N must be >= 1");
  std::vector<kernels::MidRadRow> rows(N + 1);
  rows[1].mid = {1.0};
  rows[1].rad = {0.0};
  bool tiny = false;  // some stored nonzero magnitude may underflow in a product
  kernels::MidRadSums sums;
  for (std::int64_t n = 2; n <= N; ++n) {
    std::vector<kernels::MidRadTerm> terms;
    double K = 0.0;  // bound on the number of products feeding one output
    for (std::int64_t m = 1; 2 * m <= n; ++m) {
      terms.push_back({&rows[m], &rows[n - m], 2 * m == n ? 1 : 2});
      K += static_cast<double>(std::min(rows[m].size(), rows[n - m].size()));
    }
    const std::size_t len_sq = detail::power_row_len(n, 2);
    sums.resize(len_sq);
    if (parallel) {
      kernels::midrad_conv(terms, sums);
    } else {
      kernels::midrad_conv_reference(terms, sums);
    }
    const double gK = gamma_up(K);
    const double gK3 = gamma_up(K + 3.0);
    const double mid_scale = div_up(gK, sub_down(1.0, gK));
    const double rad_scale = div_up(1.0, sub_down(1.0, gK3));
    const double mid_floor = tiny ? mul_up(2.0 * K, kEta) : 0.0;
    const double rad_floor = tiny ? mul_up(4.0 * K, kEta) : 0.0;

    auto& row = rows[n];
    const std::size_t L = ShellTable<double>::row_len(n);
    row.mid.assign(L, 0.0);
    row.rad.assign(L, 0.0);
    Interval closing(0.0);
    const std::int64_t n2 = n * n;
    for (std::size_t i = 0; i < len_sq; ++i) {
      const double rho = add_up(add_up(mul_up(mid_scale, sums.mag[i]), mid_floor),
                                add_up(mul_up(rad_scale, sums.rad[i]), rad_floor));
      const std::int64_t j = n + 2 * static_cast<std::int64_t>(i);
      const Interval c = midrad_to_interval(sums.mid[i], rho) / Interval::from_int(n2 - j);
      closing -= c;
      row.mid[i] = c.mid();
      row.rad[i] = c.rad();
    }
    row.mid[L - 1] = closing.mid();
    row.rad[L - 1] = closing.rad();
    for (std::size_t i = 0; i < L; ++i) tiny = tiny || is_tiny(row.mid[i]) || is_tiny(row.rad[i]);
  }
  return rows;
}

ShellTable<ComplexInterval> enclose_rows(std::complex<double> A, double omega, int N, bool parallel) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive and finite");
  const auto ct = enclose_ctilde(N, parallel);
  ShellTable<ComplexInterval> tab;
  tab.omega = FrequencyVector{omega};
  tab.rows.assign(N + 1, {});
  const auto a = ComplexInterval::point(A);
  const Interval om2 = Interval(omega) * Interval(omega);
  ComplexInterval factor = a;  // A^n / omega^{2(n-1)}
  for (int n = 1; n <= N; ++n) {
    if (n > 1) factor = civ_div(factor * a, om2);
    auto& row = tab.rows[n];
    row.resize(ct[n].size());
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = civ_scale(factor, midrad_to_interval(ct[n].mid[i], ct[n].rad[i]));
  }
  return tab;
}

SpaceTimeSequence<ComplexInterval> enclose_truncation(std::complex<double> A, double omega, int N) {
  return enclose_rows(A, omega, N).to_sequence();
}

namespace {

Interval y0_from_rowsums(const std::vector<Interval>& b, double omega, int N) {
  Interval y(0.0);
  for (int n = N + 1; n <= 2 * N; ++n) {
    Interval s(0.0);
    for (int m = n - N; m <= N; ++m) s += b[m] * b[n - m];
    y += s / Interval::from_int(n - 1);
  }
  const Interval w(omega);
  return y / (w * w);
}

Interval z1_finish(const Interval& sum, double omega) {
  const Interval w(omega);
  return Interval(4.0) * sum / (w * w);
}

Interval z1_term(const ComplexInterval& v, std::int64_t n, std::int64_t j, int N) {
  return civ_abs(v) / Interval::from_int(n * n + 2 * n * (N + 1) - j);
}

void check_head(std::int64_t n, int N) {
  if (n > N) throw std::invalid_argument("bound: enclosure has entries beyond shell N");
}

}  // namespace

Interval compute_Y0(const SpaceTimeSequence<ComplexInterval>& chat, double omega, int N) {
  if (chat.dim() != 1) throw std::invalid_argument("compute_Y0: requires d = 1");
  std::vector<Interval> b(N + 1, Interval(0.0));
  for (const auto& [k, v] : chat.entries()) {
    check_head(k.n[0], N);
    b[k.n[0]] += civ_abs(v);
  }
  return y0_from_rowsums(b, omega, N);
}

Interval compute_Y0(const ShellTable<ComplexInterval>& chat, int N) {
  std::vector<Interval> b(N + 1, Interval(0.0));
  for (int n = 1; n <= std::min(N, chat.order()); ++n)
    for (const auto& v : chat.rows[n]) b[n] += civ_abs(v);
  return y0_from_rowsums(b, chat.omega[0], N);
}

Interval compute_Z1(const SpaceTimeSequence<ComplexInterval>& chat, double omega, int N) {
  if (chat.dim() != 1) throw std::invalid_argument("compute_Z1: requires d = 1");
  Interval s(0.0);
  for (const auto& [k, v] : chat.entries()) {
    check_head(k.n[0], N);
    s += z1_term(v, k.n[0], k.j[0], N);
  }
  return z1_finish(s, omega);
}

Interval compute_Z1(const ShellTable<ComplexInterval>& chat, int N) {
  Interval s(0.0);
  for (std::int64_t n = 1; n <= std::min(N, chat.order()); ++n)
    for (std::size_t i = 0; i < chat.rows[n].size(); ++i)
      if (!chat.rows[n][i].is_zero()) s += z1_term(chat.rows[n][i], n, n + 2 * static_cast<std::int64_t>(i), N);
  return z1_finish(s, chat.omega[0]);
}

Interval compute_Z2(double omega, int N) {
  if (!(omega > 0.0)) throw std::invalid_argument("compute_Z2: omega must be positive");
  if (N < 1) throw std::invalid_argument("compute_Z2: N must be >= 1");
  const Interval w(omega);
  const auto n1 = static_cast<long long>(N) + 1;
  return Interval(2.0) / (w * w * Interval::from_int(n1 * n1));
}

RadiiCheck radii_check(const Interval& Y0, const Interval& Z1, const Interval& Z2, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("radii_check: r must be finite and >= 0");
  const Interval R(r);
  RadiiCheck out;
  out.Pr = Z2 * R * R - (Interval(1.0) - Z1) * R + Y0;
  out.certified = r > 0.0 && Z1.hi() < 1.0 && out.Pr.hi() < 0.0;
  return out;
}

std::optional<double> auto_radius(const Interval& Y0, const Interval& Z1, const Interval& Z2) {
  if (!(Z1.hi() < 1.0) || !(Z2.lo() > 0.0)) return std::nullopt;
  const Interval slope = Interval(1.0) - Z1;
  const Interval disc = slope * slope - Interval(4.0) * Z2 * Y0;
  if (!(disc.hi() > 0.0)) return std::nullopt;
  const double r = (slope / (Interval(2.0) * Z2)).mid();
  if (!(r > 0.0)) return std::nullopt;
  return r;
}

std::string enclosure_digest(const ShellTable<ComplexInterval>& chat) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  auto feed = [&](const void* p, std::size_t len) { EVP_DigestUpdate(ctx.get(), p, len); };
  for (std::int64_t n = 1; n <= chat.order(); ++n)
    for (std::size_t i = 0; i < chat.rows[n].size(); ++i) {
      const auto& v = chat.rows[n][i];
      if (v.is_zero()) continue;
      const std::int64_t j = n + 2 * static_cast<std::int64_t>(i);
      const double ends[4] = {v.re().lo(), v.re().hi(), v.im().lo(), v.im().hi()};
      feed(&n, sizeof n);
      feed(&j, sizeof j);
      feed(ends, sizeof ends);
    }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", md[k]);
    hex += buf;
  }
  return hex;
}

RadiiReport prove_periodic(std::complex<double> A, double omega, int N, std::optional<double> r) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("prove_periodic: omega must be positive");
  if (N < 1) throw std::invalid_argument("prove_periodic: N must be >= 1");
  if (r && (!(*r >= 0.0) || !std::isfinite(*r))) throw std::invalid_argument("prove_periodic: r must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  RadiiReport rep;
  rep.A = A;
  rep.omega = omega;
  rep.N = N;
  try {
    const auto chat = enclose_rows(A, omega, N);
    rep.chat_digest = enclosure_digest(chat);
    rep.Y0 = compute_Y0(chat, N);
    rep.Z1 = compute_Z1(chat, N);
    rep.Z2 = compute_Z2(omega, N);
    if (r) {
      rep.r = *r;
    } else if (auto ar = auto_radius(rep.Y0, rep.Z1, rep.Z2)) {
      rep.r = *ar;
    } else {
      rep.r = 0.0;
      rep.note = "no admissible radius: Z1 >= 1 or the radii polynomial has no positive dip";
    }
    const auto chk = radii_check(rep.Y0, rep.Z1, rep.Z2, rep.r);
    rep.Pr = chk.Pr;
    rep.certified = chk.certified;
  } catch (const IntervalOverflow& e) {
    rep.certified = false;
    rep.note = std::string("interval overflow: ") + e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

RadiiReport recheck(const RadiiReport& stored) {
  RadiiReport rep = stored;
  const auto chk = radii_check(stored.Y0, stored.Z1, stored.Z2, stored.r);
  rep.Pr = chk.Pr;
  rep.certified = chk.certified;
  return rep;
}

}  // namespace nls
