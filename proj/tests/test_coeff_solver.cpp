#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "gen.hpp"
#include "nls/coeff_solver.hpp"
#include "nls/evaluation.hpp"

using namespace nls;
using gen::q;
using gen::rat;
using cd = std::complex<double>;

namespace {

template <class T>
ProblemConfig<T> mono(int p, double omega, const T& a) {
  ProblemConfig<T> cfg{p, FrequencyVector{omega}, ModeSequence<T>(1)};
  cfg.phi.set(MultiIndex{1}, a);
  return cfg;
}

}  // namespace

TEST_CASE("zero mode closed form") {
  CHECK(std::abs(zero_mode_solution(1.0, 2, 0.0) - cd{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(zero_mode_solution(1.0, 2, 1.0) - cd{0.5, -0.5}) < 1e-15);

  // i a0' = a0^3 by a five-point difference; phi0 = 1 + i is singular at t = 1/4
  const cd phi0{1.0, 1.0};
  for (double t : {-0.5, 0.02, 0.05, 0.1}) {
    const double h = 1e-4;
    auto a0 = [&](double s) { return zero_mode_solution(phi0, 3, s); };
    const cd d = (a0(t - 2 * h) - 8.0 * a0(t - h) + 8.0 * a0(t + h) - a0(t + 2 * h)) / (12 * h);
    const cd a = zero_mode_solution(phi0, 3, t);
    CHECK(std::abs(cd{0.0, 1.0} * d - a * a * a) < 1e-10);
  }

  // 1 + i t vanishes at t = 1 for phi0 = i
  try {
    (void)zero_mode_solution(cd{0.0, 1.0}, 2, 2.0);
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.time() == doctest::Approx(1.0));
  }
  CHECK_NOTHROW(zero_mode_solution(cd{0.0, 1.0}, 2, 0.5));
}

TEST_CASE("zero mode conserves V") {
  for (double t = 0.0; t <= 10.0; t += 0.25) CHECK(conserved_V(zero_mode_solution(1.0, 2, t), 2) == doctest::Approx(2.0).epsilon(1e-12));
  const cd phi0{0.3, -0.2};
  const double v0 = conserved_V(phi0, 3);
  for (double t = 0.0; t <= 2.0; t += 0.1) CHECK(std::abs(conserved_V(zero_mode_solution(phi0, 3, t), 3) - v0) < 1e-10);
}

TEST_CASE("exact fixtures through shell 5") {
  const auto c = solve_spacetime(mono<QComplex>(2, 1.0, q(1)), 5);
  CHECK(c.size() == example_shells().size());
  for (const auto& [n, j, a, b] : example_shells()) {
    INFO("n=" << n << " j=" << j);
    CHECK(c.get(MultiIndex{n}, MultiIndex{j}) == q(a, b));
  }
  const auto mc = monochromatic_coeffs<QComplex>(1.0, 1.0, 2, 5);
  CHECK(mc == c);
}

TEST_CASE("solver examples and preconditions") {
  ProblemConfig<QComplex> empty{3, FrequencyVector{1.0}, ModeSequence<QComplex>(1)};
  CHECK(solve_spacetime(empty, 6).empty());

  auto bad = mono<QComplex>(2, 1.0, q(1));
  bad.phi.set(MultiIndex{0}, q(1));
  CHECK_THROWS_AS(solve_spacetime(bad, 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_spacetime(mono<QComplex>(1, 1.0, q(1)), 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_spacetime(mono<QComplex>(2, 1.0, q(1)), 0), std::invalid_argument);
}

TEST_CASE("band and storage on solver output") {
  auto cfg = mono<cd>(3, 1.3, cd{0.4, -0.2});
  cfg.phi.set(MultiIndex{2}, cd{0.1, 0.3});
  const auto c = solve_spacetime(cfg, 9);
  for (const auto& [k, v] : c.entries()) {
    CHECK(k.n[0] <= k.j[0]);
    CHECK(k.j[0] <= k.n[0] * k.n[0]);
  }
}

TEST_CASE("dense and sparse paths agree") {
  for (int p : {2, 3}) {
    auto cfg = mono<QComplex>(p, 1.0, QComplex{rat(2, 3), rat(-1, 5)});
    cfg.phi.set(MultiIndex{2}, q(1, 7));
    cfg.phi.set(MultiIndex{4}, QComplex{0, rat(3)});
    CHECK(solve_spacetime(cfg, 8) == solve_spacetime_sparse(cfg, 8));
  }
  auto cfg = mono<QComplex>(2, 0.5, q(3));
  CHECK(solve_spacetime(cfg, 7) == solve_spacetime_sparse(cfg, 7));
}

TEST_CASE("serial and parallel shells agree bitwise") {
  std::vector<cd> phi(31, cd{});
  phi[1] = {0.9, 0.1};
  phi[3] = {-0.2, 0.4};
  const auto a = solve_shells<cd>(2, 1.0, phi, 30, false);
  const auto b = solve_shells<cd>(2, 1.0, phi, 30, true);
  CHECK(a.rows == b.rows);
  const auto a3 = solve_shells<cd>(3, 1.7, phi, 20, false);
  const auto b3 = solve_shells<cd>(3, 1.7, phi, 20, true);
  CHECK(a3.rows == b3.rows);
}

TEST_CASE("two-dimensional recursion") {
  ProblemConfig<QComplex> cfg{2, FrequencyVector{1.0, 2.0}, ModeSequence<QComplex>(2)};
  cfg.phi.set(MultiIndex{1, 1}, q(1));
  const auto c = solve_spacetime(cfg, 2);
  CHECK(c.get(MultiIndex{1, 1}, MultiIndex{1, 1}) == q(1));
  // omega^2 (n^2 - j) for n = j = (2,2): 1*(4-2) + 4*(4-2) = 10
  CHECK(c.get(MultiIndex{2, 2}, MultiIndex{2, 2}) == q(1, 10));
  CHECK(c.get(MultiIndex{2, 2}, MultiIndex{4, 4}) == q(-1, 10));
  for (const auto& [k, v] : c.entries()) CHECK(in_spacetime_support(k.n, k.j));
  // initial data recovery for every shell
  std::map<MultiIndex, QComplex> sums;
  for (const auto& [k, v] : c.entries()) sums[k.n] += v;
  for (const auto& [n, s] : sums) CHECK(s == cfg.phi.get(n));
}

TEST_CASE("monochromatic rescaling") {
  for (double omega : {1.0, 2.0, 0.5}) {
    const auto c = monochromatic_coeffs<QComplex>(cd{3.0, 0.0}, omega, 2, 3);
    // A^2 / (2 omega^2)
    CHECK(c.get(MultiIndex{2}, MultiIndex{2}).re == mpq_class(9) / (2 * mpq_class(omega) * mpq_class(omega)));
  }
  const auto ctilde = solve_spacetime(mono<cd>(2, 1.0, 1.0), 5);
  CHECK(rescale(ctilde, 1.0, 1.0, 2) == ctilde);
  CHECK(std::abs(rescale(ctilde, 3.0, 1.0, 2).get(MultiIndex{2}, MultiIndex{2}) - 4.5) < 1e-15);
  CHECK(std::abs(rescale(ctilde, 1.0, 2.0, 2).get(MultiIndex{2}, MultiIndex{2}) - 0.125) < 1e-15);
  CHECK_THROWS_AS(rescale(ctilde, 1.0, 0.0, 2), std::invalid_argument);

  const auto direct = solve_spacetime(mono<cd>(2, 1.0, 2.0), 5);
  const auto scaled = monochromatic_coeffs<cd>(2.0, 1.0, 2, 5);
  REQUIRE(direct.size() == scaled.size());
  for (const auto& [k, v] : direct.entries())
    CHECK(std::abs(scaled.get(k.n, k.j) - v) <= 1e-13 * std::abs(v));
}

TEST_CASE("quadrature: constant data") {
  ProblemConfig<cd> cfg{2, FrequencyVector{1.0}, ModeSequence<cd>(1)};
  cfg.phi.set(MultiIndex{0}, cd{0.7, 0.2});
  const auto tr = solve_quadrature(cfg, 4, TimeGrid{0.0, 3.0, 300});
  const auto& a0 = tr.values.at(MultiIndex{0});
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    CHECK(std::abs(a0[k] - zero_mode_solution(cd{0.7, 0.2}, 2, tr.times[k])) < 1e-14);
  for (int n = 1; n <= 4; ++n)
    for (const auto& v : tr.values.at(MultiIndex{n})) CHECK(v == cd{});

  ProblemConfig<cd> sing{2, FrequencyVector{1.0}, ModeSequence<cd>(1)};
  sing.phi.set(MultiIndex{0}, cd{0.0, 1.0});
  CHECK_THROWS_AS(solve_quadrature(sing, 2, TimeGrid{0.0, 2.0, 100}), SingularityError);
}

TEST_CASE("quadrature matches the recursion") {
  const auto cfg = mono<cd>(2, 1.0, 1.0);
  const int N = 3;
  const auto tr = solve_quadrature(cfg, N, TimeGrid{0.0, 2 * std::numbers::pi, 2000});
  const auto c = solve_spacetime(cfg, N);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const auto a = mode_values(c, N, tr.times[k]);
    for (int n = 1; n <= N; ++n) worst = std::max(worst, std::abs(tr.values.at(MultiIndex{n})[k] - a[n]));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("quadrature with a zero mode matches RK4") {
  ProblemConfig<cd> cfg{2, FrequencyVector{1.0}, ModeSequence<cd>(1)};
  cfg.phi.set(MultiIndex{0}, 0.1);
  cfg.phi.set(MultiIndex{1}, 0.2);
  const int N = 12;
  const auto tr = solve_quadrature(cfg, N, TimeGrid{0.0, 1.0, 1000});
  const auto rk = integrate_galerkin(cfg.phi, 1.0, 2, N, 1.0, 1e-3);
  REQUIRE(rk.times.size() == tr.times.size());
  double worst = 0.0;
  for (int n = 0; n <= N; ++n)
    for (std::size_t k = 0; k < tr.times.size(); ++k)
      worst = std::max(worst, std::abs(tr.values.at(MultiIndex{n})[k] - rk.values.at(MultiIndex{n})[k]));
  CHECK(worst <= 1e-6);
}
