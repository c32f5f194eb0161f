#include "nls/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nls {

json to_json(const Interval& x) { return json::array({x.lo(), x.hi()}); }

Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

void put_scalar(json& e, const std::complex<double>& v) {
  e["re"] = v.real();
  e["im"] = v.imag();
}

void put_scalar(json& e, const QComplex& v) {
  e["re"] = v.re.get_d();
  e["im"] = v.im.get_d();
  e["re_exact"] = v.re.get_str();
  e["im_exact"] = v.im.get_str();
}

void put_scalar(json& e, const ComplexInterval& v) {
  e["re"] = to_json(v.re());
  e["im"] = to_json(v.im());
}

namespace {

mpq_class exact_number(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return mpq_class(v.get<double>());
  throw std::invalid_argument("expected a number or a numeric string");
}

double read_part(const json& e, const char* key, const char* exact_key) {
  if (e.contains(exact_key)) return parse_rational(e[exact_key].get<std::string>()).get_d();
  if (!e.contains(key)) return 0.0;
  const auto& v = e[key];
  if (v.is_array()) return interval_from_json(v).mid();
  return exact_number(v).get_d();
}

MultiIndex index_from_json(const json& v) {
  if (v.is_number_integer()) return MultiIndex{v.get<std::int64_t>()};
  return MultiIndex(v.get<std::vector<std::int64_t>>());
}

}  // namespace

SpaceTimeSequence<std::complex<double>> sequence_from_json(const json& j) {
  const json& body = j.contains("sequence") ? j["sequence"] : j;
  if (!body.contains("omega") || !body.contains("entries"))
    throw std::invalid_argument("coefficient JSON needs omega and entries");
  FrequencyVector omega(body["omega"].get<std::vector<double>>());
  const double s = body.value("s", 0.0);
  SpaceTimeSequence<std::complex<double>> out(omega, s);
  for (const auto& e : body["entries"]) {
    const auto n = index_from_json(e.at("n"));
    const auto jj = index_from_json(e.at("j"));
    out.set(n, jj, {read_part(e, "re", "re_exact"), read_part(e, "im", "im_exact")});
  }
  return out;
}

QComplex parse_qcomplex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_rational(text), 0};
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::complex<double> parse_complex(const std::string& text) {
  const auto q = parse_qcomplex(text);
  return {q.re.get_d(), q.im.get_d()};
}

namespace {

ModeSequence<QComplex> phi_from_json(const json& j, std::size_t d) {
  const json& entries = j.is_array() ? j : j.at("entries");
  if (j.is_object() && j.contains("d") && j["d"].get<std::size_t>() != d)
    throw std::invalid_argument("phi JSON dimension does not match --d");
  ModeSequence<QComplex> phi(d);
  for (const auto& e : entries) {
    const auto n = index_from_json(e.at("n"));
    require_same_dim(d, n.dim(), "phi entry");
    QComplex v{e.contains("re") ? exact_number(e["re"]) : mpq_class(0),
               e.contains("im") ? exact_number(e["im"]) : mpq_class(0)};
    phi.set(n, phi.get(n) + v);
  }
  return phi;
}

}  // namespace

ModeSequence<QComplex> parse_phi(const std::string& spec, std::size_t d) {
  if (spec.empty()) throw std::invalid_argument("phi: empty specification");
  try {
    if (spec.front() == '{' || spec.front() == '[') return phi_from_json(json::parse(spec), d);
    if (spec.find(':') == std::string::npos && std::filesystem::exists(spec)) {
      std::ifstream in(spec);
      return phi_from_json(json::parse(in), d);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("phi: malformed JSON: ") + e.what());
  }
  if (d != 1) throw std::invalid_argument("phi: the inline form is for d = 1; use JSON for d >= 2");
  ModeSequence<QComplex> phi(1);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("phi: expected n:re,im in '" + item + "'");
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(item.substr(0, colon), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("phi: bad mode number in '" + item + "'");
    }
    if (used != colon || n < 0) throw std::invalid_argument("phi: bad mode number in '" + item + "'");
    const MultiIndex key{n};
    phi.set(key, phi.get(key) + parse_qcomplex(item.substr(colon + 1)));
  }
  return phi;
}

json report_to_json(const RadiiReport& r, bool with_timing) {
  json out;
  out["A"] = json::array({r.A.real(), r.A.imag()});
  out["omega"] = r.omega;
  out["p"] = r.p;
  out["N"] = r.N;
  out["Y0"] = to_json(r.Y0);
  out["Z1"] = to_json(r.Z1);
  out["Z2"] = to_json(r.Z2);
  out["r"] = r.r;
  out["Pr"] = to_json(r.Pr);
  out["verdict"] = r.verdict();
  out["chat_digest"] = r.chat_digest;
  if (!r.note.empty()) out["note"] = r.note;
  if (with_timing) out["seconds"] = r.seconds;
  return out;
}

RadiiReport report_from_json(const json& j) {
  const json& b = j.contains("report") ? j["report"] : j;
  RadiiReport r;
  const auto A = b.at("A");
  r.A = {A.at(0).get<double>(), A.at(1).get<double>()};
  r.omega = b.at("omega").get<double>();
  r.p = b.value("p", 2);
  r.N = b.at("N").get<int>();
  r.Y0 = interval_from_json(b.at("Y0"));
  r.Z1 = interval_from_json(b.at("Z1"));
  r.Z2 = interval_from_json(b.at("Z2"));
  r.r = b.at("r").get<double>();
  r.Pr = interval_from_json(b.at("Pr"));
  r.certified = b.at("verdict").get<std::string>() == "certified";
  r.chat_digest = b.value("chat_digest", "");
  r.note = b.value("note", "");
  r.seconds = b.value("seconds", 0.0);
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nls
