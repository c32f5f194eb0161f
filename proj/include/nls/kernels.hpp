#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nls::kernels {

/// Worker threads used by the parallel kernels (0 leaves the OpenMP default).
void set_threads(int n);
int threads();

/// Outputs handled by one OpenMP task in the blocked kernels.
inline constexpr std::size_t kBlock = 256;

/// One summand a (*) b of a shell convolution. weight 2 stands for the
/// mirrored pair (m, n-m) and (n-m, m); the product is doubled exactly.
template <class T>
struct ConvTerm {
  std::span<const T> a;
  std::span<const T> b;
  int weight = 1;
};

namespace detail {

template <class T>
inline void accumulate(T& acc, const T& x, const T& y, int weight) {
  T prod = x * y;
  if (weight == 2) prod = prod + prod;
  acc += prod;
}

// Textbook product without the library's inf/nan recovery branch, which blocks
// inlining in the blocked loop. Same roundings as x * y for finite inputs.
inline void accumulate(std::complex<double>& acc, const std::complex<double>& x,
                       const std::complex<double>& y, int weight) {
  double re = x.real() * y.real() - x.imag() * y.imag();
  double im = x.real() * y.imag() + x.imag() * y.real();
  if (weight == 2) {
    re = re + re;
    im = im + im;
  }
  acc = {acc.real() + re, acc.imag() + im};
}

// Contributions of one term to outputs [lo, hi), each output receiving its
// products in ascending index into `a`.
template <class T>
void conv_block(const ConvTerm<T>& t, std::span<T> out, std::size_t lo, std::size_t hi) {
  const std::size_t la = t.a.size(), lb = t.b.size();
  if (la == 0 || lb == 0) return;
  const std::size_t i1_lo = lo >= lb ? lo - (lb - 1) : 0;
  const std::size_t i1_hi = std::min(la, hi);
  const int w = t.weight;
  const T* b = t.b.data();
  T* o = out.data();
  for (std::size_t i1 = i1_lo; i1 < i1_hi; ++i1) {
    const std::size_t i2_lo = lo > i1 ? lo - i1 : 0;
    const std::size_t i2_hi = std::min(lb, hi - i1);
    const T x = t.a[i1];
    T* oi = o + i1;
    for (std::size_t i2 = i2_lo; i2 < i2_hi; ++i2) accumulate(oi[i2], x, b[i2], w);
  }
}

}  // namespace detail

/// Serial scatter form: out[i1 + i2] += w a[i1] b[i2] for every term in order.
/// Outputs beyond out.size() are discarded.
template <class T>
void shell_conv_reference(std::span<const ConvTerm<T>> terms, std::span<T> out) {
  for (const auto& t : terms)
    for (std::size_t i1 = 0; i1 < t.a.size(); ++i1)
      for (std::size_t i2 = 0; i2 < t.b.size() && i1 + i2 < out.size(); ++i2)
        detail::accumulate(out[i1 + i2], t.a[i1], t.b[i2], t.weight);
}

/// OpenMP form over output blocks. Terms run in order and a block belongs to
/// the same thread for every term (static schedule, identical bounds), so the
/// per-output summation order matches shell_conv_reference and results agree
/// bit for bit at any thread count.
template <class T>
void shell_conv(std::span<const ConvTerm<T>> terms, std::span<T> out) {
  const std::size_t n = out.size();
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel
  for (const auto& t : terms) {
#pragma omp for schedule(static, 1) nowait
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      detail::conv_block(t, out, lo, std::min(n, lo + kBlock));
    }
  }
}

/// Midpoint-radius row of a real interval vector.
struct MidRadRow {
  std::vector<double> mid;
  std::vector<double> rad;
  std::size_t size() const { return mid.size(); }
};

struct MidRadTerm {
  const MidRadRow* a;
  const MidRadRow* b;
  int weight = 1;
};

/// Floating-point sums per output index i:
///   mid = sum w ma mb,  mag = sum |w ma mb|,  rad = sum w((|ma| + ra) rb + ra |mb|),
/// all in round-to-nearest. Turning them into rigorous bounds is the caller's job.
struct MidRadSums {
  std::vector<double> mid;
  std::vector<double> mag;
  std::vector<double> rad;
  void resize(std::size_t n) {
    mid.assign(n, 0.0);
    mag.assign(n, 0.0);
    rad.assign(n, 0.0);
  }
  std::size_t size() const { return mid.size(); }
};

void midrad_conv_reference(std::span<const MidRadTerm> terms, MidRadSums& out);
void midrad_conv(std::span<const MidRadTerm> terms, MidRadSums& out);

}  // namespace nls::kernels
