#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nls/lattice.hpp"
#include "nls/verifier.hpp"

namespace nls {

/// c~_{n,n} for n = 1..N, exact. Index 0 is unused (zero).
std::vector<mpq_class> diagonal_sequence(int N);

struct DiagonalBound {
  bool holds = true;
  int first_violation = 0;       // 0 when none
  std::vector<int> equality_at;  // n with c~_{n,n} = 6n/6^n exactly
};

/// Exact comparison c~_{n,n} >= 6n/6^n for 1 <= n <= N.
DiagonalBound diagonal_bound(int N);
bool blowup_bound_check(int N);

enum class Regime { certified_periodic, certified_blowup, undetermined };
std::string to_string(Regime r);

struct ClassificationResult {
  Regime regime = Regime::undetermined;
  double threshold_used = 0.0;
  std::optional<double> blowup_time_bound;  // 2 pi / omega^2 when blow-up is certified
  std::optional<double> period;             // 2 pi / omega^2 when periodicity is certified
  bool small_data = false;                  // sufficient small-data condition |A| <= omega^2/4 too
  std::optional<RadiiReport> escalation;
};

/// Thresholds |A| >= 6 omega^2 (blow-up) and |A| <= 3 omega^2 (periodic) for
/// A e^{i omega x}, p = 2. Comparisons are made in interval arithmetic, so a
/// verdict is only issued when it holds for the exact |A|^2. In the gap an
/// optional prove_periodic run at order escalate_N may upgrade the verdict.
/// The blow-up verdict also covers data whose first mode is A e^{i omega x} and
/// which carries further non-negative modes.
ClassificationResult classify_monochromatic(std::complex<double> A, double omega,
                                            std::optional<int> escalate_N = std::nullopt);

struct QuasiperiodicBound {
  double threshold = 0.0;
  double r0 = 0.0;
};

/// r0 = (|omega|^2 (p-1)/2)^{1/(p-1)}, threshold = (p-1)/p r0.
QuasiperiodicBound quasiperiodic_bound(int p, const FrequencyVector& omega);

enum class ConvMethod { direct, fft };

/// ln S_n for n = 1..n_max, S_n = sum_j |c~_{n,j}| (index 0 unused).
std::vector<double> log_row_sums(int n_max, ConvMethod method);

struct AStarEstimate {
  double astar = 0.0;
  double r_squared = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares fit of ln S_n against n on [n_min, n_max]; A* = e^{-slope}.
AStarEstimate estimate_Astar(int n_min, int n_max, ConvMethod method);
/// Same fit on precomputed ln S_n values.
AStarEstimate fit_Astar(const std::vector<double>& log_sums, int n_min, int n_max);

}  // namespace nls
