#include "nls/kernels.hpp"

#include <omp.h>

#include <cmath>

namespace nls::kernels {

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int threads() { return omp_get_max_threads(); }

namespace {

inline void midrad_acc(MidRadSums& out, std::size_t i, double ma, double ra, double mb, double rb, double w) {
  const double p = w * (ma * mb);
  out.mid[i] += p;
  out.mag[i] += std::fabs(p);
  out.rad[i] += w * ((std::fabs(ma) + ra) * rb + ra * std::fabs(mb));
}

void midrad_block(const MidRadTerm& t, MidRadSums& out, std::size_t lo, std::size_t hi) {
  const std::size_t la = t.a->size(), lb = t.b->size();
  if (la == 0 || lb == 0) return;
  const double w = t.weight;
  const double* am = t.a->mid.data();
  const double* ar = t.a->rad.data();
  const double* bm = t.b->mid.data();
  const double* br = t.b->rad.data();
  const std::size_t i1_lo = lo >= lb ? lo - (lb - 1) : 0;
  const std::size_t i1_hi = std::min(la, hi);
  for (std::size_t i1 = i1_lo; i1 < i1_hi; ++i1) {
    const std::size_t i2_lo = lo > i1 ? lo - i1 : 0;
    const std::size_t i2_hi = std::min(lb, hi - i1);
    for (std::size_t i2 = i2_lo; i2 < i2_hi; ++i2) midrad_acc(out, i1 + i2, am[i1], ar[i1], bm[i2], br[i2], w);
  }
}

}  // namespace

void midrad_conv_reference(std::span<const MidRadTerm> terms, MidRadSums& out) {
  for (const auto& t : terms)
    for (std::size_t i1 = 0; i1 < t.a->size(); ++i1)
      for (std::size_t i2 = 0; i2 < t.b->size() && i1 + i2 < out.size(); ++i2)
        midrad_acc(out, i1 + i2, t.a->mid[i1], t.a->rad[i1], t.b->mid[i2], t.b->rad[i2], t.weight);
}

void midrad_conv(std::span<const MidRadTerm> terms, MidRadSums& out) {
  const std::size_t n = out.size();
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel
  for (const auto& t : terms) {
#pragma omp for schedule(static, 1) nowait
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      midrad_block(t, out, lo, std::min(n, lo + kBlock));
    }
  }
}

}  // namespace nls::kernels
