#include "nls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nls {

namespace {

// n^2 and n^2 - j stay exactly representable (in int64 and in double) up to here.
constexpr std::int64_t kMaxMode = std::int64_t{1} << 20;

void validate(const std::vector<std::int64_t>& e) {
  if (e.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  for (auto v : e) {
    if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
    if (v > kMaxMode * kMaxMode) throw std::invalid_argument("MultiIndex: entry out of range");
  }
}

}  // namespace

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

MultiIndex::MultiIndex(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  validate(entries_);
}

MultiIndex::MultiIndex(std::initializer_list<std::int64_t> entries) : entries_(entries) {
  validate(entries_);
}

MultiIndex MultiIndex::constant(std::size_t d, std::int64_t r) {
  return MultiIndex(std::vector<std::int64_t>(d, r));
}

std::int64_t MultiIndex::l1() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
}

std::int64_t MultiIndex::max_entry() const {
  return *std::max_element(entries_.begin(), entries_.end());
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  require_same_dim(dim(), o.dim(), "MultiIndex::operator+");
  std::vector<std::int64_t> r(dim());
  for (std::size_t k = 0; k < dim(); ++k) r[k] = entries_[k] + o.entries_[k];
  return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  require_same_dim(dim(), o.dim(), "MultiIndex::operator-");
  if (!le(o, *this)) throw std::invalid_argument("MultiIndex::operator-: result leaves N^d");
  std::vector<std::int64_t> r(dim());
  for (std::size_t k = 0; k < dim(); ++k) r[k] = entries_[k] - o.entries_[k];
  return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator*(const MultiIndex& o) const {
  require_same_dim(dim(), o.dim(), "MultiIndex::operator*");
  std::vector<std::int64_t> r(dim());
  for (std::size_t k = 0; k < dim(); ++k) r[k] = entries_[k] * o.entries_[k];
  return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator+(std::int64_t r) const {
  std::vector<std::int64_t> out(entries_);
  for (auto& v : out) v += r;
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::operator*(std::int64_t r) const {
  std::vector<std::int64_t> out(entries_);
  for (auto& v : out) v *= r;
  return MultiIndex(std::move(out));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < entries_.size(); ++k) os << (k ? "," : "") << entries_[k];
  os << ')';
  return os.str();
}

bool le(const MultiIndex& m, const MultiIndex& n) {
  require_same_dim(m.dim(), n.dim(), "le");
  for (std::size_t k = 0; k < m.dim(); ++k)
    if (m[k] > n[k]) return false;
  return true;
}

bool lt(const MultiIndex& m, const MultiIndex& n) {
  require_same_dim(m.dim(), n.dim(), "lt");
  for (std::size_t k = 0; k < m.dim(); ++k)
    if (m[k] >= n[k]) return false;
  return true;
}

MultiIndex elementwise_square(const MultiIndex& n) { return n * n; }

FrequencyVector::FrequencyVector(std::vector<double> omega) : omega_(std::move(omega)) {
  if (omega_.empty()) throw std::invalid_argument("FrequencyVector: empty");
  for (double w : omega_)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("FrequencyVector: every omega_i must be positive and finite");
}

FrequencyVector::FrequencyVector(std::initializer_list<double> omega)
    : FrequencyVector(std::vector<double>(omega)) {}

double FrequencyVector::norm_sq() const {
  double s = 0.0;
  for (double w : omega_) s += w * w;
  return s;
}

double weighted_dot(const FrequencyVector& omega, const MultiIndex& j) {
  require_same_dim(omega.dim(), j.dim(), "weighted_dot");
  double s = 0.0;
  for (std::size_t k = 0; k < j.dim(); ++k) s += omega[k] * omega[k] * static_cast<double>(j[k]);
  return s;
}

std::vector<MultiIndex> box_by_level(const MultiIndex& lo, const MultiIndex& hi) {
  require_same_dim(lo.dim(), hi.dim(), "box_by_level");
  std::vector<MultiIndex> out;
  if (!le(lo, hi)) return out;
  const std::size_t d = lo.dim();
  std::vector<std::int64_t> cur(lo.entries().begin(), lo.entries().end());
  while (true) {
    out.emplace_back(cur);
    bool advanced = false;
    for (std::size_t k = d; k-- > 0;) {
      if (cur[k] < hi[k]) {
        ++cur[k];
        advanced = true;
        break;
      }
      cur[k] = lo[k];
    }
    if (!advanced) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    auto la = a.l1(), lb = b.l1();
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

}  // namespace nls
