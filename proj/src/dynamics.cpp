#include "nls/dynamics.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nls/coeff_solver.hpp"

namespace nls {

std::vector<mpq_class> diagonal_sequence(int N) {
  if (N < 1) throw std::invalid_argument("diagonal_sequence: N must be >= 1");
  std::vector<mpq_class> c(N + 1);
  c[1] = 1;
  mpq_class s, t;
  for (int n = 2; n <= N; ++n) {
    s = 0;
    for (int k = 1; 2 * k < n; ++k) {
      mpq_mul(t.get_mpq_t(), c[k].get_mpq_t(), c[n - k].get_mpq_t());
      s += t;
    }
    s *= 2;
    if (n % 2 == 0) s += c[n / 2] * c[n / 2];
    c[n] = s / (static_cast<long>(n) * (n - 1));
  }
  return c;
}

DiagonalBound diagonal_bound(int N) {
  const auto c = diagonal_sequence(N);
  DiagonalBound out;
  mpz_class six_n = 1;
  for (int n = 1; n <= N; ++n) {
    six_n *= 6;
    // c_n >= 6n / 6^n  <=>  c_n 6^n >= 6n
    const int cmpv = cmp(c[n] * six_n, mpq_class(6L * n));
    if (cmpv == 0) out.equality_at.push_back(n);
    if (cmpv < 0 && out.holds) {
      out.holds = false;
      out.first_violation = n;
    }
  }
  return out;
}

bool blowup_bound_check(int N) { return diagonal_bound(N).holds; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::certified_periodic: return "certified_periodic";
    case Regime::certified_blowup: return "certified_blowup";
    case Regime::undetermined: return "undetermined";
  }
  return "undetermined";
}

ClassificationResult classify_monochromatic(std::complex<double> A, double omega, std::optional<int> escalate_N) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("classify: omega must be positive");
  const Interval re(A.real()), im(A.imag()), w(omega);
  const Interval abs2 = iv_sqr(re) + iv_sqr(im);
  const Interval w2 = w * w;
  const Interval w4 = w2 * w2;
  const double period = 2.0 * std::numbers::pi / (omega * omega);
  ClassificationResult out;
  if (abs2.lo() >= (Interval(36.0) * w4).hi()) {
    out.regime = Regime::certified_blowup;
    out.threshold_used = 6.0 * omega * omega;
    out.blowup_time_bound = period;
    return out;
  }
  if (abs2.hi() <= (Interval(9.0) * w4).lo()) {
    out.regime = Regime::certified_periodic;
    out.threshold_used = 3.0 * omega * omega;
    out.period = period;
    out.small_data = abs2.hi() <= (w4 / Interval(16.0)).lo();
    return out;
  }
  out.regime = Regime::undetermined;
  out.threshold_used = 6.0 * omega * omega;
  if (escalate_N) {
    out.escalation = prove_periodic(A, omega, *escalate_N);
    if (out.escalation->certified) {
      out.regime = Regime::certified_periodic;
      out.threshold_used = std::abs(A);
      out.period = period;
    }
  }
  return out;
}

QuasiperiodicBound quasiperiodic_bound(int p, const FrequencyVector& omega) {
  if (p < 2) throw std::invalid_argument("quasiperiodic_bound: p must be >= 2");
  const double base = omega.norm_sq() * (p - 1) / 2.0;
  QuasiperiodicBound out;
  out.r0 = p == 2 ? base : std::pow(base, 1.0 / (p - 1));
  out.threshold = (p - 1) * out.r0 / p;
  return out;
}

namespace {

// Rows of 4^n c~ keep magnitudes near 1 out to n ~ 300.
constexpr double kRowScale = 4.0;

std::vector<std::vector<double>> scaled_rows_direct(int n_max) {
  std::vector<double> phi = {0.0, kRowScale};
  return solve_shells<double>(2, 1.0, phi, n_max).rows;
}

struct FftPlans {
  int size = 0;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  double* real_buf = nullptr;
  fftw_complex* spec_buf = nullptr;

  void reset(int F) {
    release();
    size = F;
    real_buf = fftw_alloc_real(F);
    spec_buf = fftw_alloc_complex(F / 2 + 1);
    fwd = fftw_plan_dft_r2c_1d(F, real_buf, spec_buf, FFTW_ESTIMATE | FFTW_UNALIGNED);
    inv = fftw_plan_dft_c2r_1d(F, spec_buf, real_buf, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  void release() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (real_buf) fftw_free(real_buf);
    if (spec_buf) fftw_free(spec_buf);
    fwd = inv = nullptr;
    real_buf = nullptr;
    spec_buf = nullptr;
  }
  ~FftPlans() { release(); }
};

std::vector<std::vector<double>> scaled_rows_fft(int n_max) {
  using cd = std::complex<double>;
  std::vector<std::vector<double>> rows(n_max + 1);
  rows[1] = {kRowScale};
  FftPlans plans;
  std::vector<std::vector<cd>> spectra(n_max + 1);
  std::vector<cd> acc;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::size_t len_sq = detail::power_row_len(n, 2);
    int F = 16;
    while (static_cast<std::size_t>(F) < len_sq) F *= 2;
    if (F != plans.size) {
      plans.reset(F);
      for (auto& s : spectra) s.clear();
    }
    const std::size_t H = F / 2 + 1;
    for (std::int64_t m = 1; m < n; ++m) {
      if (!spectra[m].empty()) continue;
      std::fill(plans.real_buf, plans.real_buf + F, 0.0);
      std::copy(rows[m].begin(), rows[m].end(), plans.real_buf);
      fftw_execute_dft_r2c(plans.fwd, plans.real_buf, plans.spec_buf);
      spectra[m].resize(H);
      for (std::size_t k = 0; k < H; ++k) spectra[m][k] = {plans.spec_buf[k][0], plans.spec_buf[k][1]};
    }
    acc.assign(H, cd{});
    for (std::int64_t m = 1; 2 * m <= n; ++m) {
      const double w = 2 * m == n ? 1.0 : 2.0;
      const auto& x = spectra[m];
      const auto& y = spectra[n - m];
      for (std::size_t k = 0; k < H; ++k) acc[k] += w * (x[k] * y[k]);
    }
    for (std::size_t k = 0; k < H; ++k) {
      plans.spec_buf[k][0] = acc[k].real();
      plans.spec_buf[k][1] = acc[k].imag();
    }
    fftw_execute_dft_c2r(plans.inv, plans.spec_buf, plans.real_buf);
    auto& row = rows[n];
    row.assign(ShellTable<double>::row_len(n), 0.0);
    const std::int64_t n2 = n * n;
    double closing = 0.0;
    for (std::size_t i = 0; i < len_sq; ++i) {
      const std::int64_t j = n + 2 * static_cast<std::int64_t>(i);
      row[i] = plans.real_buf[i] / F / static_cast<double>(n2 - j);
      closing -= row[i];
    }
    row.back() = closing;
  }
  return rows;
}

}  // namespace

std::vector<double> log_row_sums(int n_max, ConvMethod method) {
  if (n_max < 1) throw std::invalid_argument("log_row_sums: n_max must be >= 1");
  const auto rows = method == ConvMethod::fft ? scaled_rows_fft(n_max) : scaled_rows_direct(n_max);
  std::vector<double> out(n_max + 1, 0.0);
  const double ln_scale = std::log(kRowScale);
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (double v : rows[n]) s += std::fabs(v);
    out[n] = std::log(s) - n * ln_scale;
  }
  return out;
}

AStarEstimate fit_Astar(const std::vector<double>& log_sums, int n_min, int n_max) {
  if (n_min < 2 || n_min >= n_max) throw std::invalid_argument("estimate_Astar: need 2 <= n_min < n_max");
  if (static_cast<std::size_t>(n_max) >= log_sums.size()) throw std::invalid_argument("estimate_Astar: rows missing");
  const int m = n_max - n_min + 1;
  double sx = 0.0, sy = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    if (!std::isfinite(log_sums[n])) throw std::runtime_error("estimate_Astar: row sum is zero or not finite");
    sx += n;
    sy += log_sums[n];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    const double dx = n - mx, dy = log_sums[n] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  AStarEstimate out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss_res = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    const double e = log_sums[n] - (out.intercept + out.slope * n);
    ss_res += e * e;
  }
  out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  out.astar = std::exp(-out.slope);
  return out;
}

AStarEstimate estimate_Astar(int n_min, int n_max, ConvMethod method) {
  if (n_min < 2 || n_min >= n_max) throw std::invalid_argument("estimate_Astar: need 2 <= n_min < n_max");
  return fit_Astar(log_row_sums(n_max, method), n_min, n_max);
}

}  // namespace nls
