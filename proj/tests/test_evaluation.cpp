#include <doctest.h>

#include <numbers>

#include "gen.hpp"
#include "nls/coeff_solver.hpp"
#include "nls/evaluation.hpp"

using namespace nls;
using cd = std::complex<double>;
constexpr double kTwoPi = 2 * std::numbers::pi;

namespace {

SpaceTimeSequence<cd> c11(int N, double A = 1.0) { return monochromatic_coeffs<cd>(A, 1.0, 2, N); }

ModeSequence<cd> modes(std::initializer_list<std::pair<int, cd>> items) {
  ModeSequence<cd> a(1);
  for (const auto& [n, v] : items) a.set(MultiIndex{n}, v);
  return a;
}

}  // namespace

TEST_CASE("pointwise evaluation") {
  SpaceTimeSequence<cd> one(FrequencyVector{1.0});
  one.set(MultiIndex{1}, MultiIndex{1}, 1.0);
  CHECK(std::abs(eval_solution(one, 0.0, {0.0}) - 1.0) < 1e-15);
  CHECK(std::abs(eval_solution(one, kTwoPi, {0.0}) - 1.0) < 1e-12);
  CHECK_THROWS_AS(eval_solution(one, 0.0, {0.0, 1.0}), std::invalid_argument);

  const auto c = c11(40);
  for (double x : {0.0, 0.3, 1.7, 4.0}) CHECK(std::abs(eval_solution(c, 0.0, {x}) - std::polar(1.0, x)) < 1e-12);
}

TEST_CASE("periodicity in t and x") {
  const auto c = c11(15, 0.8);
  gen::Gen g(5);
  for (int k = 0; k < 50; ++k) {
    const double t = g.real(0, 7), x = g.real(0, 7);
    const cd u = eval_solution(c, t, {x});
    CHECK(std::abs(eval_solution(c, t + kTwoPi, {x}) - u) < 1e-12);
    CHECK(std::abs(eval_solution(c, t, {x + kTwoPi}) - u) < 1e-12);
  }
  const auto c2 = monochromatic_coeffs<cd>(1.0, 2.0, 2, 10);
  CHECK(std::abs(eval_solution(c2, 0.4 + kTwoPi / 4, {0.1}) - eval_solution(c2, 0.4, {0.1})) < 1e-12);
}

TEST_CASE("grid layout") {
  SpaceTimeSequence<cd> one(FrequencyVector{1.0});
  one.set(MultiIndex{1}, MultiIndex{1}, 1.0);
  const auto rows = emit_grid(one, GridSpec{0.0, 1.0, 2, 0.0, 2.0, 2});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].t == rows[1].t);
  CHECK(rows[0].x != rows[1].x);
  CHECK(rows[2].t == 1.0);
  for (const auto& r : rows) CHECK(r.abs == doctest::Approx(1.0));
  CHECK_THROWS_AS(emit_grid(one, GridSpec{0.0, 1.0, 1, 0.0, 1.0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(emit_grid(one, GridSpec{1.0, 1.0, 2, 0.0, 1.0, 2}), std::invalid_argument);
}

TEST_CASE("Galerkin right-hand side") {
  const auto r = galerkin_rhs(modes({{1, 1.0}}), 1.0, 2, 4);
  CHECK(r.size() == 2);
  CHECK(r.get(MultiIndex{1}) == cd{0.0, 1.0});
  CHECK(r.get(MultiIndex{2}) == cd{0.0, -1.0});
  CHECK(galerkin_rhs(modes({}), 1.0, 2, 4).empty());
  const cd z{0.3, 0.4};
  CHECK(std::abs(galerkin_rhs(modes({{0, z}}), 1.0, 3, 4).get(MultiIndex{0}) - cd{0.0, -1.0} * z * z * z) < 1e-15);
  // truncation drops modes above N
  CHECK(galerkin_rhs(modes({{3, 1.0}}), 1.0, 2, 4).get(MultiIndex{6}) == cd{});
}

TEST_CASE("RK4 oracle") {
  const auto zero = integrate_galerkin(modes({{0, 1.0}}), 1.0, 2, 4, 3.0, 1e-3);
  const auto& a0 = zero.values.at(MultiIndex{0});
  for (std::size_t k = 0; k < zero.times.size(); k += 100)
    CHECK(std::abs(a0[k] - zero_mode_solution(1.0, 2, zero.times[k])) < 1e-8);

  const auto none = integrate_galerkin(modes({}), 1.0, 2, 4, 1.0, 1e-2);
  for (const auto& [n, col] : none.values)
    for (const auto& v : col) CHECK(v == cd{});

  CHECK_THROWS_AS(integrate_galerkin(modes({{1, 1.0}}), 1.0, 2, 4, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_galerkin(modes({{0, 20.0}, {1, 5.0}}), 1.0, 3, 6, 5.0, 0.05), DivergenceError);
}

TEST_CASE("RK4 step halving converges at fourth order") {
  const auto phi = modes({{1, 0.5}, {2, cd{0.0, 0.1}}});
  auto endpoint = [&](double dt) { return integrate_galerkin(phi, 1.0, 2, 10, 1.0, dt).values.at(MultiIndex{1}).back(); };
  const cd a = endpoint(0.02), b = endpoint(0.01), c = endpoint(0.005);
  const double ratio = std::abs(a - b) / std::abs(b - c);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("series and RK4 agree for small data") {
  const auto phi = modes({{1, cd{0.15, 0.05}}, {2, cd{-0.05, 0.02}}, {3, 0.02}});
  ProblemConfig<cd> cfg{2, FrequencyVector{1.0}, phi};
  const int N = 20;
  const auto c = solve_spacetime(cfg, N);
  const auto tr = integrate_galerkin(phi, 1.0, 2, N, 2 * std::numbers::pi, 2 * std::numbers::pi / 6400);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); k += 64) {
    const auto a = mode_values(c, N, tr.times[k]);
    for (int n = 1; n <= N; ++n) worst = std::max(worst, std::abs(a[n] - tr.values.at(MultiIndex{n})[k]));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("conserved functional") {
  CHECK(conserved_V(1.0, 2) == 2.0);
  CHECK(std::abs(conserved_V(cd{0.0, 1.0}, 2)) < 1e-15);
  CHECK_THROWS_AS(conserved_V(0.0, 2), std::invalid_argument);
}

TEST_CASE("Parseval diagnostics") {
  for (double A : {0.5, 2.0, 3.0}) {
    const auto c = c11(12, A);
    for (int M : {1, 5, 12}) CHECK(partial_l2(c, M, 0.0) == doctest::Approx(A * A));
  }
  // A = 6: averaged partial sums dominate sum 36 n^2 and keep growing
  const auto big = c11(30, 6.0);
  double prev = 0.0, lower = 0.0;
  for (int M = 1; M <= 30; ++M) {
    lower += 36.0 * M * M;
    const double s = averaged_l2(big, M);
    CHECK(s >= lower * (1 - 1e-12));
    CHECK(s > prev);
    prev = s;
  }
  // A = 1: saturated long before shell 200
  const auto small = c11(120);
  CHECK(averaged_l2(small, 120) - averaged_l2(small, 60) < 1e-40);
}
