#include "nls/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "nls/coeff_solver.hpp"
#include "nls/dynamics.hpp"
#include "nls/evaluation.hpp"
#include "nls/json_io.hpp"
#include "nls/kernels.hpp"
#include "nls/verifier.hpp"

namespace nls::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(trim(item)).get_d());
  return v;
}

int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("NLS_THREADS")) n = std::atoi(env);
  }
  kernels::set_threads(n);
  return kernels::threads();
}

// Every option of the subcommand with its effective value, defaults included.
json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t k = 0; k < res.size(); ++k) value += (k ? "," : "") + res[k];
    } else {
      value = opt->get_default_str();
    }
    cfg[name] = value;
  }
  return cfg;
}

struct Common {
  int threads = 0;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "Worker threads (0: NLS_THREADS or the OpenMP default)")
      ->capture_default_str();
  sub->add_option("--out", c.out, "Output path ('-' for stdout)")->capture_default_str();
}

// ---- coeffs -------------------------------------------------------------

struct CoeffsOpts {
  int p = 2;
  int d = 1;
  std::string omega = "1";
  std::string phi;
  int N = 1;
  std::string scalar = "f64";
  double s = 0.0;
};

template <class T>
json run_coeffs_as(const CoeffsOpts& o, const FrequencyVector& omega, const ModeSequence<QComplex>& phi) {
  ProblemConfig<T> cfg{o.p, omega, convert_phi<T>(phi)};
  ModeSequence<T> weighted(phi.dim(), o.s);
  for (const auto& [n, v] : cfg.phi.entries()) weighted.set(n, v);
  cfg.phi = weighted;
  return sequence_to_json(solve_spacetime(cfg, o.N));
}

int run_coeffs(const CoeffsOpts& o, const Common& c, json base, std::ostream& out) {
  const FrequencyVector omega(parse_list(o.omega));
  if (static_cast<int>(omega.dim()) != o.d) throw std::invalid_argument("--omega must have --d entries");
  const auto phi = parse_phi(o.phi, o.d);
  json seq;
  if (o.scalar == "f64") {
    seq = run_coeffs_as<std::complex<double>>(o, omega, phi);
  } else if (o.scalar == "rational") {
    seq = run_coeffs_as<QComplex>(o, omega, phi);
  } else {
    seq = run_coeffs_as<ComplexInterval>(o, omega, phi);
  }
  base["sequence"] = std::move(seq);
  write_text(c.out, dump(base), out);
  return kExitOk;
}

// ---- quadrature / integrate ----------------------------------------------

struct QuadOpts {
  int p = 2;
  double omega = 1.0;
  std::string phi;
  int N = 1;
  double t_end = 1.0;
  int steps = 1000;
};

std::string trajectory_csv(const CoefficientTrajectory& tr, int every) {
  std::string s = "t,n,re,im\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    if (k % every != 0 && k + 1 != tr.times.size()) continue;
    for (const auto& [n, col] : tr.values)
      s += fmt(tr.times[k]) + "," + std::to_string(n[0]) + "," + fmt(col[k].real()) + "," + fmt(col[k].imag()) + "\n";
  }
  return s;
}

void emit_csv(const Common& c, const std::string& csv, const json& base, std::ostream& out, std::ostream& err) {
  if (c.out.empty() || c.out == "-") {
    out << csv;
    err << dump(base);
  } else {
    write_text(c.out, csv, out);
    out << dump(base);
  }
}

int run_quadrature(const QuadOpts& o, const Common& c, const json& base, std::ostream& out, std::ostream& err) {
  ProblemConfig<std::complex<double>> cfg{o.p, FrequencyVector{o.omega},
                                          convert_phi<std::complex<double>>(parse_phi(o.phi, 1))};
  const auto tr = solve_quadrature(cfg, o.N, TimeGrid{0.0, o.t_end, o.steps});
  emit_csv(c, trajectory_csv(tr, 1), base, out, err);
  return kExitOk;
}

struct IntegrateOpts {
  int p = 2;
  double omega = 1.0;
  std::string phi;
  int N = 20;
  double t_end = 1.0;
  double dt = 1e-3;
  int every = 1;
};

int run_integrate(const IntegrateOpts& o, const Common& c, const json& base, std::ostream& out, std::ostream& err) {
  const auto phi = convert_phi<std::complex<double>>(parse_phi(o.phi, 1));
  if (o.every < 1) throw std::invalid_argument("--every must be >= 1");
  const auto tr = integrate_galerkin(phi, o.omega, o.p, o.N, o.t_end, o.dt);
  emit_csv(c, trajectory_csv(tr, o.every), base, out, err);
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOpts {
  std::string A = "3";
  double omega = 1.0;
  int N = 110;
  std::optional<double> r;
  std::string r_grid;
  std::string recheck;
  bool record_timing = false;
};

int run_verify(const VerifyOpts& o, const Common& c, json base, std::ostream& out) {
  if (!o.recheck.empty()) {
    std::ifstream in(o.recheck);
    if (!in) throw std::runtime_error("cannot read '" + o.recheck + "'");
    const auto stored = report_from_json(json::parse(in));
    const auto fresh = recheck(stored);
    base["report"] = report_to_json(fresh, o.record_timing);
    base["stored_verdict"] = stored.verdict();
    write_text(c.out, dump(base), out);
    return fresh.certified ? kExitOk : kExitInconclusive;
  }
  const auto A = parse_complex(o.A);
  RadiiReport rep;
  if (!o.r_grid.empty()) {
    std::string spec = o.r_grid;
    std::replace(spec.begin(), spec.end(), ':', ',');
    const auto g = parse_list(spec);
    if (g.size() != 3 || !(g[0] > 0.0) || !(g[1] >= g[0]) || g[2] < 1)
      throw std::invalid_argument("--r-grid expects lo:hi:count with 0 < lo <= hi");
    const int count = static_cast<int>(g[2]);
    rep = prove_periodic(A, o.omega, o.N);
    json sweep = json::array();
    std::optional<RadiiCheck> hit;
    double hit_r = 0.0;
    for (int k = 0; k < count; ++k) {
      const double r = count == 1 ? g[0] : g[0] * std::pow(g[1] / g[0], static_cast<double>(k) / (count - 1));
      const auto chk = radii_check(rep.Y0, rep.Z1, rep.Z2, r);
      sweep.push_back({{"r", r}, {"Pr", to_json(chk.Pr)}, {"verdict", chk.certified ? "certified" : "inconclusive"}});
      if (chk.certified && !hit) {
        hit = chk;
        hit_r = r;
      }
    }
    base["sweep"] = std::move(sweep);
    if (hit) {
      rep.r = hit_r;
      rep.Pr = hit->Pr;
      rep.certified = true;
    } else {
      rep.certified = false;
    }
  } else {
    rep = prove_periodic(A, o.omega, o.N, o.r);
  }
  base["report"] = report_to_json(rep, o.record_timing);
  write_text(c.out, dump(base), out);
  return rep.certified ? kExitOk : kExitInconclusive;
}

// ---- classify / estimate-astar / evaluate ----------------------------------

int run_classify(const std::string& A, double omega, std::optional<int> escalate, const Common& c, json base,
                 std::ostream& out) {
  const auto res = classify_monochromatic(parse_complex(A), omega, escalate);
  base["regime"] = to_string(res.regime);
  base["threshold_used"] = res.threshold_used;
  base["small_data"] = res.small_data;
  if (res.blowup_time_bound) base["blowup_time_bound"] = *res.blowup_time_bound;
  if (res.period) base["period"] = *res.period;
  if (res.escalation) base["escalation"] = report_to_json(*res.escalation, false);
  write_text(c.out, dump(base), out);
  return res.regime == Regime::undetermined ? kExitInconclusive : kExitOk;
}

int run_astar(int n_min, int n_max, int N, bool fft, const Common& c, json base, std::ostream& out) {
  if (N != 0 && N < n_max) throw std::invalid_argument("--N must be at least --n-max");
  const auto method = fft ? ConvMethod::fft : ConvMethod::direct;
  const auto logs = log_row_sums(N == 0 ? n_max : N, method);
  const auto est = fit_Astar(logs, n_min, n_max);
  base["astar"] = est.astar;
  base["r_squared"] = est.r_squared;
  base["slope"] = est.slope;
  base["intercept"] = est.intercept;
  base["method"] = fft ? "fft" : "direct";
  write_text(c.out, dump(base), out);
  return kExitOk;
}

int run_evaluate(const std::string& coeffs, const GridSpec& grid, const Common& c, const json& base,
                 std::ostream& out, std::ostream& err) {
  std::ifstream in(coeffs);
  if (!in) throw std::runtime_error("cannot read '" + coeffs + "'");
  const auto seq = sequence_from_json(json::parse(in));
  std::string csv = "t,x,re,im,abs\n";
  for (const auto& r : emit_grid(seq, grid))
    csv += fmt(r.t) + "," + fmt(r.x) + "," + fmt(r.re) + "," + fmt(r.im) + "," + fmt(r.abs) + "\n";
  emit_csv(c, csv, base, out, err);
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string merge_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[k + 1];
      args.erase(args.begin() + k, args.begin() + k + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + k);
      break;
    }
  }
  if (path.empty()) return path;
  for (const auto& [key, value] : read_config_file(path)) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value != "false") {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return path;
}

int parse_and_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  std::string config_path;
  try {
    config_path = merge_config(args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  CLI::App app{"Space-time Fourier coefficients, certification and diagnostics for i u_t = Lap u + u^p", "nls"};
  app.require_subcommand(1);
  Common common;

  CoeffsOpts co;
  auto* coeffs = app.add_subcommand("coeffs", "Exact space-time coefficients c_{n,j} as JSON");
  coeffs->add_option("--p", co.p, "Nonlinearity power")->capture_default_str();
  coeffs->add_option("--d", co.d, "Dimension")->capture_default_str();
  coeffs->add_option("--omega", co.omega, "Frequencies, comma separated")->capture_default_str();
  coeffs->add_option("--phi", co.phi, "Initial data: n:re,im;... (d = 1), JSON text or JSON file")->required();
  coeffs->add_option("--N", co.N, "Truncation order")->required();
  coeffs->add_option("--scalar", co.scalar, "Scalar field")
      ->check(CLI::IsMember({"f64", "rational", "interval"}))
      ->capture_default_str();
  coeffs->add_option("--s", co.s, "Norm weight exponent recorded in the output")->capture_default_str();
  add_common(coeffs, common);

  QuadOpts qo;
  auto* quad = app.add_subcommand("quadrature", "Mode trajectories a_n(t) by quadrature as CSV (d = 1)");
  quad->add_option("--p", qo.p, "Nonlinearity power")->capture_default_str();
  quad->add_option("--omega", qo.omega, "Frequency")->capture_default_str();
  quad->add_option("--phi", qo.phi, "Initial data n:re,im;... (mode 0 allowed)")->required();
  quad->add_option("--N", qo.N, "Highest mode")->required();
  quad->add_option("--t-end", qo.t_end, "End time")->capture_default_str();
  quad->add_option("--steps", qo.steps, "Grid intervals")->capture_default_str();
  add_common(quad, common);

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Radii-polynomial certification of the periodic orbit (p = 2, d = 1)");
  verify->add_option("--A", vo.A, "Amplitude, re or re,im")->capture_default_str();
  verify->add_option("--omega", vo.omega, "Frequency")->capture_default_str();
  verify->add_option("--N", vo.N, "Truncation order")->capture_default_str();
  auto* r_opt = verify->add_option("--r", vo.r, "Ball radius (default: vertex of the radii polynomial)");
  verify->add_option("--r-grid", vo.r_grid, "Log sweep lo:hi:count of radii")->excludes(r_opt);
  verify->add_option("--recheck", vo.recheck, "Re-evaluate P(r) from a stored report.json");
  verify->add_flag("--record-timing", vo.record_timing, "Include wall time in the report");
  add_common(verify, common);

  std::string cA = "3";
  double c_omega = 1.0;
  std::optional<int> escalate;
  auto* classify = app.add_subcommand("classify", "Blow-up / periodicity thresholds for A e^{i omega x}");
  classify->add_option("--A", cA, "Amplitude, re or re,im")->capture_default_str();
  classify->add_option("--omega", c_omega, "Frequency")->capture_default_str();
  classify->add_option("--escalate-N", escalate, "Run verify at this order inside the gap");
  add_common(classify, common);

  int n_min = 100, n_max = 300, astar_N = 0;
  bool use_fft = false;
  auto* astar = app.add_subcommand("estimate-astar", "Regression estimate of the critical amplitude A*");
  astar->add_option("--n-min", n_min, "First shell of the fit")->capture_default_str();
  astar->add_option("--n-max", n_max, "Last shell of the fit")->capture_default_str();
  astar->add_option("--N", astar_N, "Shells to compute (0: n-max)")->capture_default_str();
  astar->add_flag("--fft", use_fft, "FFT convolution instead of the direct kernel");
  add_common(astar, common);

  std::string coeffs_path;
  GridSpec grid{0.0, 2.0 * std::numbers::pi, 101, 0.0, 2.0 * std::numbers::pi, 101};
  auto* evaluate = app.add_subcommand("evaluate", "Sample u(t, x) from coeffs.json on a grid as CSV");
  evaluate->add_option("--coeffs", coeffs_path, "JSON written by 'coeffs'")->required();
  evaluate->add_option("--t0", grid.t_min, "First time")->capture_default_str();
  evaluate->add_option("--t1", grid.t_max, "Last time")->capture_default_str();
  evaluate->add_option("--nt", grid.nt, "Time samples")->capture_default_str();
  evaluate->add_option("--x0", grid.x_min, "First x")->capture_default_str();
  evaluate->add_option("--x1", grid.x_max, "Last x")->capture_default_str();
  evaluate->add_option("--nx", grid.nx, "x samples")->capture_default_str();
  add_common(evaluate, common);

  IntegrateOpts io;
  auto* integrate = app.add_subcommand("integrate", "RK4 Galerkin trajectory as CSV (d = 1)");
  integrate->add_option("--p", io.p, "Nonlinearity power")->capture_default_str();
  integrate->add_option("--omega", io.omega, "Frequency")->capture_default_str();
  integrate->add_option("--phi", io.phi, "Initial data n:re,im;...")->required();
  integrate->add_option("--N", io.N, "Highest mode")->capture_default_str();
  integrate->add_option("--t-end", io.t_end, "End time")->capture_default_str();
  integrate->add_option("--dt", io.dt, "Largest step")->capture_default_str();
  integrate->add_option("--every", io.every, "Write every k-th step")->capture_default_str();
  add_common(integrate, common);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    json base;
    base["command"] = sub->get_name();
    base["config"] = resolved_config(sub);
    base["config"]["config_file"] = config_path;
    base["threads"] = resolve_threads(common.threads);
    if (sub == coeffs) {
      base["scalar"] = co.scalar;
      return run_coeffs(co, common, std::move(base), out);
    }
    if (sub == quad) return run_quadrature(qo, common, base, out, err);
    if (sub == verify) {
      base["scalar"] = "interval";
      return run_verify(vo, common, std::move(base), out);
    }
    if (sub == classify) return run_classify(cA, c_omega, escalate, common, std::move(base), out);
    if (sub == astar) return run_astar(n_min, n_max, astar_N, use_fft, common, std::move(base), out);
    if (sub == evaluate) return run_evaluate(coeffs_path, grid, common, base, out, err);
    if (sub == integrate) return run_integrate(io, common, base, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

int parse_and_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parse_and_dispatch(std::move(args), std::cout, std::cerr);
}

}  // namespace nls::cli
