#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "nls/interval.hpp"
#include "nls/scalar.hpp"
#include "nls/sequence.hpp"
#include "nls/verifier.hpp"

namespace nls {

using json = nlohmann::json;

json to_json(const Interval& x);
Interval interval_from_json(const json& j);

/// Scalar fields of one entry: numbers for f64, numbers plus exact strings for
/// rationals, [lo, hi] pairs for intervals.
void put_scalar(json& e, const std::complex<double>& v);
void put_scalar(json& e, const QComplex& v);
void put_scalar(json& e, const ComplexInterval& v);

template <class T>
json sequence_to_json(const SpaceTimeSequence<T>& c) {
  json out;
  out["d"] = c.dim();
  out["s"] = c.weight();
  out["omega"] = std::vector<double>(c.omega().values().begin(), c.omega().values().end());
  out["scalar"] = std::string(ScalarTraits<T>::kind);
  json entries = json::array();
  for (const auto& [k, v] : c.entries()) {
    json e;
    e["n"] = std::vector<std::int64_t>(k.n.entries().begin(), k.n.entries().end());
    e["j"] = std::vector<std::int64_t>(k.j.entries().begin(), k.j.entries().end());
    put_scalar(e, v);
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

/// Reads any of the three encodings back as doubles (interval midpoints,
/// nearest doubles of exact rationals).
SpaceTimeSequence<std::complex<double>> sequence_from_json(const json& j);

/// "re,im" or a bare real, both exact.
QComplex parse_qcomplex(const std::string& text);
std::complex<double> parse_complex(const std::string& text);

/// Initial data: inline "n:re,im;n:re,im" (d = 1), JSON text, or a path to a
/// JSON file holding {"entries": [{"n": [..], "re": .., "im": ..}]}.
/// Numbers given as strings are read exactly.
ModeSequence<QComplex> parse_phi(const std::string& spec, std::size_t d);

template <class T>
ModeSequence<T> convert_phi(const ModeSequence<QComplex>& phi) {
  ModeSequence<T> out(phi.dim(), phi.weight());
  for (const auto& [n, v] : phi.entries()) out.set(n, from_rational<T>(v));
  return out;
}

json report_to_json(const RadiiReport& r, bool with_timing);
RadiiReport report_from_json(const json& j);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace nls
