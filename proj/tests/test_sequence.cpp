#include <doctest.h>

#include "gen.hpp"
#include "nls/coeff_solver.hpp"
#include "nls/sequence.hpp"

using namespace nls;
using gen::q;
using gen::rat;
using cd = std::complex<double>;

namespace {

SpaceTimeSequence<QComplex> st(std::initializer_list<std::tuple<int, int, QComplex>> items) {
  SpaceTimeSequence<QComplex> c(FrequencyVector{1.0});
  for (const auto& [n, j, v] : items) c.set(MultiIndex{n}, MultiIndex{j}, v);
  return c;
}

}  // namespace

TEST_CASE("mode norm") {
  ModeSequence<cd> a(1, 1.0);
  a.set(MultiIndex{0}, 1.0);
  a.set(MultiIndex{1}, 2.0);
  CHECK(mode_norm(a) == doctest::Approx(5.0));
  CHECK(mode_norm(ModeSequence<cd>(1)) == 0.0);
  ModeSequence<cd> b(1);
  b.set(MultiIndex{1}, cd{0.0, 3.0});
  CHECK(mode_norm(b) == 3.0);
}

TEST_CASE("mode product") {
  ModeSequence<QComplex> d1(1);
  d1.set(MultiIndex{1}, q(1));
  auto sq = mode_product(d1, d1);
  CHECK(sq.size() == 1);
  CHECK(sq.get(MultiIndex{2}) == q(1));

  CHECK(mode_product(d1, ModeSequence<QComplex>(1)).empty());

  ModeSequence<QComplex> a(1);
  a.set(MultiIndex{1}, q(1));
  a.set(MultiIndex{2}, q(1));
  auto ab = mode_product(a, d1);
  CHECK(ab.size() == 2);
  CHECK(ab.get(MultiIndex{2}) == q(1));
  CHECK(ab.get(MultiIndex{3}) == q(1));

  CHECK_THROWS_AS(mode_product(a, ModeSequence<QComplex>(2)), std::invalid_argument);
}

TEST_CASE("space-time norm") {
  SpaceTimeSequence<cd> c(FrequencyVector{1.0});
  c.set(MultiIndex{1}, MultiIndex{1}, cd{3.0, 4.0});
  CHECK(st_norm(c) == doctest::Approx(5.0));
  CHECK(st_norm(SpaceTimeSequence<cd>(FrequencyVector{1.0})) == 0.0);

  ProblemConfig<QComplex> cfg{2, FrequencyVector{1.0}, ModeSequence<QComplex>(1)};
  cfg.phi.set(MultiIndex{1}, q(1));
  CHECK(st_norm(solve_spacetime(cfg, 2)) == doctest::Approx(2.0));
}

TEST_CASE("space-time products and powers") {
  const auto one = st({{1, 1, q(1)}});
  const auto sq = st_power(one, 2);
  CHECK(sq == st({{2, 2, q(1)}}));
  CHECK(st_power(one, 3) == st({{3, 3, q(1)}}));

  const auto c2 = st({{2, 2, q(1, 2)}, {2, 4, q(-1, 2)}});
  CHECK(st_product(one, c2) == st({{3, 3, q(1, 2)}, {3, 5, q(-1, 2)}}));

  CHECK_THROWS_AS(st_power(one, 1), std::invalid_argument);

  // c(1,1) restricted to N = 1, squared
  ProblemConfig<QComplex> cfg{2, FrequencyVector{1.0}, ModeSequence<QComplex>(1)};
  cfg.phi.set(MultiIndex{1}, q(1));
  CHECK(st_power(solve_spacetime(cfg, 1), 2) == st({{2, 2, q(1)}}));
}

TEST_CASE("support of squares stays in the p = 2 band") {
  ProblemConfig<QComplex> cfg{2, FrequencyVector{1.0}, ModeSequence<QComplex>(1)};
  cfg.phi.set(MultiIndex{1}, q(1));
  cfg.phi.set(MultiIndex{2}, q(1, 3));
  const auto sq = st_power(solve_spacetime(cfg, 4), 2);
  for (const auto& [k, v] : sq.entries()) {
    const auto n = k.n[0];
    CHECK(k.j[0] <= n * n - (2 * n - 2));
  }
}

TEST_CASE("storage rules") {
  SpaceTimeSequence<QComplex> c(FrequencyVector{1.0});
  CHECK_THROWS_AS(c.set(MultiIndex{2}, MultiIndex{5}, q(1)), std::invalid_argument);
  CHECK_THROWS_AS(c.set(MultiIndex{2}, MultiIndex{1}, q(1)), std::invalid_argument);
  CHECK_THROWS_AS(c.set(MultiIndex{0}, MultiIndex{0}, q(1)), std::invalid_argument);
  c.set(MultiIndex{2}, MultiIndex{3}, q(1));
  c.add(MultiIndex{2}, MultiIndex{3}, q(-1));
  CHECK(c.empty());
  CHECK_THROWS_AS(ModeSequence<cd>(1, -1.0), std::invalid_argument);

  SpaceTimeSequence<QComplex> d2(FrequencyVector{1.0, 2.0});
  d2.set(MultiIndex{1, 2}, MultiIndex{1, 3}, q(2));
  CHECK(d2.max_level() == 3);
  CHECK_THROWS_AS(d2.set(MultiIndex{1, 2}, MultiIndex{1, 5}, q(1)), std::invalid_argument);
}

TEST_CASE("weighted norms use 1 + |n|") {
  SpaceTimeSequence<cd> c(FrequencyVector{1.0, 1.0}, 2.0);
  c.set(MultiIndex{1, 2}, MultiIndex{1, 4}, 1.0);
  CHECK(st_norm(c) == doctest::Approx(16.0));
}
