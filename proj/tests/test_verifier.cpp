#include <doctest.h>

#include "gen.hpp"
#include "nls/coeff_solver.hpp"
#include "nls/kernels.hpp"
#include "nls/operators.hpp"
#include "nls/verifier.hpp"

using namespace nls;
using gen::q;
using gen::rat;
using cd = std::complex<double>;

namespace {

bool encloses(const Interval& x, const mpq_class& v) { return mpq_class(x.lo()) <= v && v <= mpq_class(x.hi()); }
bool encloses(const ComplexInterval& z, const QComplex& v) { return encloses(z.re(), v.re) && encloses(z.im(), v.im); }

SpaceTimeSequence<ComplexInterval> single(double omega, const cd& a) {
  SpaceTimeSequence<ComplexInterval> c(FrequencyVector{omega});
  c.set(MultiIndex{1}, MultiIndex{1}, ComplexInterval::point(a));
  return c;
}

}  // namespace

TEST_CASE("enclosure examples") {
  const auto c = enclose_truncation(1.0, 1.0, 3);
  const auto e = c.get(MultiIndex{3}, MultiIndex{9});
  CHECK(encloses(e, q(1, 12)));
  CHECK(e.re().width() <= 1e-14);

  const auto c3 = enclose_truncation(3.0, 1.0, 2);
  CHECK(encloses(c3.get(MultiIndex{2}, MultiIndex{2}), q(9, 2)));
  CHECK(encloses(c3.get(MultiIndex{2}, MultiIndex{4}), q(-9, 2)));

  const auto zero = enclose_truncation(0.0, 1.0, 4);
  for (const auto& [k, v] : zero.entries()) CHECK(v.contains(cd{}));
}

TEST_CASE("interval rows contain the exact rationals") {
  for (const cd A : {cd{1.0, 0.0}, cd{0.75, 0.5}, cd{-2.5, 1.25}}) {
    for (double omega : {1.0, 2.0, 0.5}) {
      const int N = 9;
      const auto exact = monochromatic_coeffs<QComplex>(A, omega, 2, N);
      const auto rows = enclose_truncation(A, omega, N);
      const auto generic = monochromatic_coeffs<ComplexInterval>(A, omega, 2, N);
      for (const auto& [k, v] : exact.entries()) {
        INFO("A=" << A << " omega=" << omega << " n=" << k.n[0] << " j=" << k.j[0]);
        CHECK(encloses(rows.get(k.n, k.j), v));
        CHECK(encloses(generic.get(k.n, k.j), v));
      }
    }
  }
}

TEST_CASE("Y0, Z1, Z2 examples") {
  CHECK(compute_Y0(single(1.0, 0.75), 1.0, 1).contains(0.5625));
  CHECK(compute_Y0(single(2.0, 2.0), 2.0, 1).contains(1.0));
  CHECK(compute_Y0(SpaceTimeSequence<ComplexInterval>(FrequencyVector{1.0}), 1.0, 3) == Interval(0.0));
  CHECK(compute_Z1(single(1.0, 0.375), 1.0, 1).contains(0.375));
  CHECK(compute_Z1(SpaceTimeSequence<ComplexInterval>(FrequencyVector{1.0}), 1.0, 3) == Interval(0.0));
  CHECK(compute_Z2(1.0, 1).contains(0.5));
  CHECK(encloses(compute_Z2(1.0, 110), mpq_class(2, 12321)));
  CHECK(compute_Z2(2.0, 1).contains(0.125));

  // Z1 shrinks as N grows with the enclosure fixed
  const auto chat = enclose_truncation(1.0, 1.0, 5);
  double prev = INFINITY;
  for (int N = 5; N <= 40; N += 5) {
    const double z = compute_Z1(chat, 1.0, N).hi();
    CHECK(z < prev);
    prev = z;
  }
  CHECK_THROWS_AS(compute_Y0(chat, 1.0, 4), std::invalid_argument);
}

TEST_CASE("sequence and table forms agree") {
  const int N = 12;
  const auto tab = enclose_rows(2.0, 1.0, N);
  const auto seq = enclose_truncation(2.0, 1.0, N);
  const auto y_tab = compute_Y0(tab, N), y_seq = compute_Y0(seq, 1.0, N);
  const auto z_tab = compute_Z1(tab, N), z_seq = compute_Z1(seq, 1.0, N);
  CHECK(y_tab.hi() == doctest::Approx(y_seq.hi()).epsilon(1e-12));
  CHECK(z_tab.hi() == doctest::Approx(z_seq.hi()).epsilon(1e-12));
}

TEST_CASE("radii check examples") {
  const auto chk = radii_check(Interval::hull(1.0 / 64, 1.0 / 64), Interval(0.125), Interval(0.5), 0.02);
  CHECK(chk.certified);
  CHECK(chk.Pr.contains(0.5 * 0.0004 - 0.875 * 0.02 + 1.0 / 64));
  CHECK(chk.Pr.hi() < -0.00168 + 1e-5);
  CHECK_FALSE(radii_check(Interval(1.0), Interval(2.0), Interval(0.1), 0.5).certified);
  CHECK_FALSE(radii_check(Interval(0.25), Interval(0.1), Interval(0.1), 0.0).certified);
  CHECK_FALSE(radii_check(Interval(0.0), Interval(0.1), Interval(0.1), 0.0).certified);

  const auto r = auto_radius(Interval(1.0 / 64), Interval(0.125), Interval(0.5));
  REQUIRE(r);
  CHECK(radii_check(Interval(1.0 / 64), Interval(0.125), Interval(0.5), *r).certified);
  CHECK_FALSE(auto_radius(Interval(1.0), Interval(0.5), Interval(1.0)));
}

TEST_CASE("pipeline: certified, inconclusive, recheck") {
  const auto ok = prove_periodic(2.0, 1.0, 40);
  CHECK(ok.certified);
  CHECK(ok.Pr.hi() < 0.0);
  CHECK(ok.Z1.hi() < 1.0);
  CHECK(ok.chat_digest.size() == 64);
  const auto again = recheck(ok);
  CHECK(again.certified);
  CHECK(again.Pr == ok.Pr);

  for (double r : {1e-3, 1e-1, 1.0, 10.0, 100.0, 1e4}) CHECK_FALSE(prove_periodic(6.0, 1.0, 40, r).certified);
  CHECK_FALSE(prove_periodic(6.0, 1.0, 40).certified);

  auto forged = ok;
  forged.Y0 = Interval(1e6);
  CHECK_FALSE(recheck(forged).certified);
}

TEST_CASE("certificates do not depend on the thread count") {
  kernels::set_threads(1);
  const auto a = prove_periodic(2.5, 1.0, 30, 5.0);
  kernels::set_threads(3);
  const auto b = prove_periodic(2.5, 1.0, 30, 5.0);
  kernels::set_threads(0);
  CHECK(a.chat_digest == b.chat_digest);
  CHECK(a.Y0 == b.Y0);
  CHECK(a.Z1 == b.Z1);
  CHECK(a.Pr == b.Pr);
}

TEST_CASE("scaling consistency at omega = 2") {
  // c(A, w) = w^2 c(A / w^2, 1), so the ball radius scales by w^2 as well
  const double w = 2.0;
  for (double A : {2.0, 4.0, 8.0, 10.0, 12.0, 16.0}) {
    for (double r : {0.05, 0.5, 2.0, 8.0, 40.0}) {
      const auto a = prove_periodic(A, w, 25, r);
      const auto b = prove_periodic(A / (w * w), 1.0, 25, r / (w * w));
      INFO("A=" << A << " r=" << r);
      CHECK(a.certified == b.certified);
    }
  }
}

TEST_CASE("certified balls contain the computable tail") {
  const int N = 30;
  const auto rep = prove_periodic(2.0, 1.0, N);
  REQUIRE(rep.certified);
  const auto c = monochromatic_coeffs<cd>(2.0, 1.0, 2, N + 20);
  const auto chat = enclose_truncation(2.0, 1.0, N);
  double chat_norm = 0.0;
  for (const auto& [k, v] : chat.entries()) chat_norm += civ_abs_upper(v);
  double tail = 0.0;
  for (const auto& [k, v] : c.entries())
    if (k.n[0] > N) tail += std::abs(v);
  CHECK(tail <= chat_norm + rep.r);
  CHECK(tail <= rep.r);
}

TEST_CASE("Y0 dominates the exact tail of T") {
  gen::Gen g(4242);
  for (int t = 0; t < 60; ++t) {
    const int N = g.integer(1, 5);
    SpaceTimeSequence<QComplex> c(FrequencyVector{1.0});
    for (int n = 1; n <= N; ++n)
      for (int j = n; j <= n * n; j += g.integer(1, 3))
        if (g.coin()) c.set(MultiIndex{n}, MultiIndex{j}, g.qcomplex());
    const OperatorContext ctx{2, FrequencyVector{1.0}, N};
    const auto tail = project(ctx, apply_T(ctx, ModeSequence<QComplex>(1), c), Part::tail);
    double tail_norm = 0.0;
    for (const auto& [k, v] : tail.entries()) tail_norm += std::hypot(v.re.get_d(), v.im.get_d());
    SpaceTimeSequence<ComplexInterval> ci(FrequencyVector{1.0});
    for (const auto& [k, v] : c.entries()) ci.set(k.n, k.j, from_rational<ComplexInterval>(v));
    const double y0 = compute_Y0(ci, 1.0, N).hi();
    CHECK(y0 >= tail_norm * (1 - 1e-12));
  }
}
