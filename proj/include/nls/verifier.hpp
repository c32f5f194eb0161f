#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nls/coeff_solver.hpp"
#include "nls/interval.hpp"
#include "nls/kernels.hpp"
#include "nls/sequence.hpp"

namespace nls {

/// Rigorous enclosure of c~ = c(1,1) for p = 2, d = 1 in midpoint-radius form,
/// rows parity-compressed as in ShellTable. Every true coefficient lies in
/// [mid - rad, mid + rad].
std::vector<kernels::MidRadRow> enclose_ctilde(int N, bool parallel = true);

/// Enclosure of pi_N c(A, omega) as dense rows (p = 2, d = 1).
ShellTable<ComplexInterval> enclose_rows(std::complex<double> A, double omega, int N, bool parallel = true);

/// Same enclosure as a sparse sequence.
SpaceTimeSequence<ComplexInterval> enclose_truncation(std::complex<double> A, double omega, int N);

/// (1/omega^2) sum_{N < n <= 2N} (b*b)_n / (n - 1) with b_n = sum_j |c_{n,j}|.
Interval compute_Y0(const SpaceTimeSequence<ComplexInterval>& chat, double omega, int N);
Interval compute_Y0(const ShellTable<ComplexInterval>& chat, int N);
/// (4/omega^2) sum_{n <= N} sum_j |c_{n,j}| / (n^2 + 2n(N+1) - j).
Interval compute_Z1(const SpaceTimeSequence<ComplexInterval>& chat, double omega, int N);
Interval compute_Z1(const ShellTable<ComplexInterval>& chat, int N);
/// 2 / (omega^2 (N+1)^2)
Interval compute_Z2(double omega, int N);

struct RadiiCheck {
  bool certified = false;
  Interval Pr;
};

/// P(r) = Z2 r^2 - (1 - Z1) r + Y0; certified iff Z1 < 1 and P(r) < 0 rigorously.
RadiiCheck radii_check(const Interval& Y0, const Interval& Z1, const Interval& Z2, double r);

/// The vertex (1 - Z1)/(2 Z2) of P when Z1 < 1 and the discriminant can be
/// positive; nullopt otherwise.
std::optional<double> auto_radius(const Interval& Y0, const Interval& Z1, const Interval& Z2);

struct RadiiReport {
  std::complex<double> A;
  double omega = 1.0;
  int p = 2;
  int N = 1;
  Interval Y0, Z1, Z2;
  double r = 0.0;
  Interval Pr;
  bool certified = false;
  std::string note;
  double seconds = 0.0;
  std::string chat_digest;

  std::string verdict() const { return certified ? "certified" : "inconclusive"; }
};

/// SHA-256 over the endpoints of every stored enclosure, hex encoded.
std::string enclosure_digest(const ShellTable<ComplexInterval>& chat);

/// enclose -> Y0, Z1, Z2 -> radii check. With no r, the vertex of P is tried.
RadiiReport prove_periodic(std::complex<double> A, double omega, int N, std::optional<double> r = std::nullopt);

/// Re-evaluates P(r) from stored bounds without rebuilding the enclosure.
RadiiReport recheck(const RadiiReport& stored);

}  // namespace nls
