#include "sl2c/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli_internal.hpp"
#include "sl2c/kernels.hpp"

namespace sl2c::cli {

using detail::json;

namespace {

constexpr double kMbTol = 1e-8;
constexpr double kQuadTol = 1e-3;

ContourSpec default_contour(const std::string& quantity) {
  ContourSpec c;
  if (quantity == "mb-propagator") {
    c.n_max = 160;
    c.nu_max = 240.0;
  }
  return c;
}

struct Outcome {
  json record;
  bool converged = true;
};

void require_count(const Params& p, std::size_t count) {
  if (p.m.size() != count || p.sigma.size() != count) {
    fail(ErrorKind::InvalidArgument,
         "expected " + std::to_string(count) + " values for both --m and --sigma");
  }
}

std::vector<SpinLabel> labels(const Params& p, std::size_t count) {
  require_count(p, count);
  std::vector<SpinLabel> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({p.m[i], p.sigma[i]});
  return out;
}

std::vector<SpinLabel> sextuple(const Params& p, Convention convention) {
  std::vector<SpinLabel> s = labels(p, 6);
  if (convention == Convention::Ismagilov) s[5] = s[5].negated();
  return s;
}

const RawExponent& first_alpha(const Params& p) {
  if (p.alpha.empty()) fail(ErrorKind::InvalidArgument, "--alpha is required");
  return p.alpha.front();
}

cplx point(const Params& p, std::size_t i) {
  if (p.z.size() <= i) fail(ErrorKind::InvalidArgument, "not enough --z points");
  return p.z[i];
}

json params_to_json(const std::string& quantity, const Params& p, const RunConfig& config) {
  json j;
  j["quantity"] = quantity;
  j["m"] = p.m;
  j["sigma"] = p.sigma;
  j["alpha"] = json::array();
  for (const RawExponent& a : p.alpha) {
    j["alpha"].push_back({{"hol", {a.hol.real(), a.hol.imag()}}, {"anti", {a.anti.real(), a.anti.imag()}}});
  }
  j["z"] = json::array();
  for (cplx z : p.z) j["z"].push_back({z.real(), z.imag()});
  auto opt = [&](const char* key, const std::optional<cplx>& v) {
    j[key] = v ? json({v->real(), v->imag()}) : json(nullptr);
  };
  opt("zbar", p.zbar);
  opt("y", p.y);
  opt("z1", p.z1);
  j["method"] = p.method;
  j["reading"] = p.reading;
  j["config"] = detail::config_to_json(config);
  return j;
}

cplx cplx_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Params params_from_json(const json& j) {
  Params p;
  p.m = j.value("m", std::vector<int>{});
  p.sigma = j.value("sigma", std::vector<double>{});
  for (const json& a : j.value("alpha", json::array())) {
    p.alpha.push_back({cplx_from_json(a.at("hol")), cplx_from_json(a.at("anti"))});
  }
  for (const json& z : j.value("z", json::array())) p.z.push_back(cplx_from_json(z));
  auto opt = [&](const char* key) -> std::optional<cplx> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return cplx_from_json(j.at(key));
  };
  p.zbar = opt("zbar");
  p.y = opt("y");
  p.z1 = opt("z1");
  p.method = j.value("method", std::string());
  p.reading = j.value("reading", std::string());
  return p;
}

json mb_json(const MbResult& r) {
  return {{"value", detail::to_json(r.value)},
          {"converged", r.converged},
          {"diagnostics", detail::to_json(r.diagnostics)}};
}

Outcome exact(cplx value, const std::string& method) {
  Outcome o;
  o.record["value"] = detail::to_json(value);
  o.record["abs_err"] = 0.0;
  o.record["converged"] = true;
  o.record["diagnostics"] = json::object();
  o.record["method"] = method;
  return o;
}

Outcome from_mb(const MbResult& r, const ContourSpec& spec) {
  Outcome o;
  o.converged = r.converged;
  o.record["value"] = detail::to_json(r.value);
  o.record["abs_err"] = r.diagnostics.tail_estimate;
  o.record["converged"] = r.converged;
  json d = detail::to_json(r.diagnostics);
  d["contour"] = detail::to_json(spec);
  o.record["diagnostics"] = d;
  return o;
}

Outcome from_quad(const QuadratureResult& q) {
  Outcome o;
  o.converged = q.converged;
  o.record["value"] = detail::to_json(q.value);
  o.record["abs_err"] = q.abs_err;
  o.record["converged"] = q.converged;
  o.record["diagnostics"] = detail::to_json(q);
  o.record["method"] = "plane-quadrature";
  return o;
}

Outcome compute_racah(const Params& p, const RunConfig& config, const ContourSpec& spec,
                      double tol) {
  const std::vector<SpinLabel> s = sextuple(p, config.convention);
  const std::string method = p.method.empty() ? "both" : p.method;
  if (method == "mb1" || method == "mb2") {
    const MbResult r = method == "mb1" ? racah_mb1(s[0], s[1], s[2], s[3], s[4], s[5], spec, tol)
                                       : racah_mb2(s[0], s[1], s[2], s[3], s[4], s[5], spec, tol);
    Outcome o = from_mb(r, spec);
    o.record["method"] = method;
    return o;
  }
  if (method != "both") fail(ErrorKind::InvalidArgument, "racah method must be both, mb1 or mb2");
  const MbResult r1 = racah_mb1(s[0], s[1], s[2], s[3], s[4], s[5], spec, tol);
  const MbResult r2 = racah_mb2(s[0], s[1], s[2], s[3], s[4], s[5], spec, tol);
  Outcome o = from_mb(r1, spec);
  const double discrepancy = std::abs(r1.value - r2.value) / std::abs(r1.value);
  o.converged = r1.converged && r2.converged;
  o.record["converged"] = o.converged;
  o.record["abs_err"] = std::max({r1.diagnostics.tail_estimate, r2.diagnostics.tail_estimate,
                                  std::abs(r1.value - r2.value)});
  o.record["diagnostics"] = {{"mb1", mb_json(r1)},
                             {"mb2", mb_json(r2)},
                             {"discrepancy", discrepancy},
                             {"contour", detail::to_json(spec)}};
  o.record["method"] = "both";
  return o;
}

Outcome compute_phi(bool first, const Params& p, const RunConfig& config,
                    const ContourSpec& spec) {
  const std::vector<SpinLabel> s = sextuple(p, config.convention);
  const PointPair z = PointPair::at(point(p, 0));
  const std::string method = p.method.empty() ? "mb" : p.method;
  const double mb_tol = config.tolerance.value_or(kMbTol);
  const double quad_tol = config.tolerance.value_or(kQuadTol);
  Phi2Reading reading = Phi2Reading::Vertex;
  if (!first && p.reading == "detached") {
    reading = Phi2Reading::Detached;
    if (!p.z1) fail(ErrorKind::InvalidArgument, "the detached reading needs --z1");
  } else if (!p.reading.empty() && p.reading != "vertex") {
    fail(ErrorKind::InvalidArgument, "reading must be vertex or detached");
  }
  auto direct = [&] {
    return first ? phi1_direct(s[0], s[1], s[2], s[3], s[5], z, quad_tol, config.budget)
                 : phi2_direct(s[0], s[1], s[2], s[3], s[4], z, quad_tol, config.budget, reading,
                               p.z1.value_or(0.0));
  };
  auto mb = [&] {
    return first ? phi1_mb(s[0], s[1], s[2], s[3], s[5], z, spec, mb_tol)
                 : phi2_mb(s[0], s[1], s[2], s[3], s[4], z, spec, mb_tol);
  };
  if (method == "direct") return from_quad(direct());
  if (reading == Phi2Reading::Detached) {
    fail(ErrorKind::InvalidArgument, "the detached reading is only available with --method direct");
  }
  if (method == "mb") {
    Outcome o = from_mb(mb(), spec);
    o.record["method"] = "mellin-barnes";
    return o;
  }
  if (method != "both") fail(ErrorKind::InvalidArgument, "phi method must be mb, direct or both");
  const MbResult r = mb();
  const QuadratureResult q = direct();
  Outcome o = from_mb(r, spec);
  o.converged = r.converged && q.converged;
  o.record["converged"] = o.converged;
  o.record["abs_err"] = std::max(r.diagnostics.tail_estimate, q.abs_err);
  o.record["diagnostics"] = {{"mellin_barnes", mb_json(r)},
                             {"quadrature", detail::to_json(q)},
                             {"quadrature_value", detail::to_json(q.value)},
                             {"discrepancy", std::abs(r.value - q.value) / std::abs(r.value)},
                             {"contour", detail::to_json(spec)}};
  o.record["method"] = "both";
  return o;
}

Outcome compute_outcome(const std::string& quantity, const Params& p, const RunConfig& config) {
  const ContourSpec spec = config.contour.resolve(default_contour(quantity));
  const double mb_tol = config.tolerance.value_or(kMbTol);
  if (quantity == "a-func") return exact(a_func(first_alpha(p).value()), "log-gamma");
  if (quantity == "bracket") {
    const cplx z = point(p, 0);
    const PointPair pp = p.zbar ? PointPair::independent(z, *p.zbar) : PointPair::at(z);
    return exact(bracket_pow(pp, first_alpha(p).value()), "closed-form");
  }
  if (quantity == "w-kernel") {
    const std::vector<SpinLabel> a = labels(p, 3);
    return exact(w_kernel(a[0], a[1], a[2], PointPair::at(point(p, 0)), PointPair::at(point(p, 1)),
                          PointPair::at(point(p, 2))),
                 "closed-form");
  }
  if (quantity == "coeff-a" || quantity == "coeff-b") {
    const std::vector<SpinLabel> a = labels(p, 3);
    return exact(quantity == "coeff-a" ? coefficient_A(a[0], a[1], a[2])
                                       : coefficient_B(a[0], a[1], a[2]),
                 "closed-form");
  }
  if (quantity == "rho") return exact(weight_rho(labels(p, 1)[0]), "closed-form");
  if (quantity == "racah") return compute_racah(p, config, spec, mb_tol);
  if (quantity == "phi1" || quantity == "phi2") return compute_phi(quantity == "phi1", p, config, spec);
  if (quantity == "mb-propagator") {
    if (!p.y) fail(ErrorKind::InvalidArgument, "--y is required");
    Outcome o = from_mb(mb_propagator(PointPair::at(point(p, 0)), PointPair::at(*p.y),
                                      first_alpha(p).value(), spec, mb_tol),
                        spec);
    o.record["method"] = "mellin-barnes";
    return o;
  }
  fail(ErrorKind::InvalidArgument, "unknown quantity '" + quantity + "'");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void emit_compute(std::ostream& out, const json& record, OutputFormat format, bool header) {
  if (format == OutputFormat::Json) {
    out << record.dump() << "\n";
    return;
  }
  if (header) out << "quantity,value_re,value_im,abs_err,converged,method\n";
  out << csv_escape(record["inputs"]["quantity"].get<std::string>()) << ','
      << fmt(record["value"]["re"].get<double>()) << ',' << fmt(record["value"]["im"].get<double>())
      << ',' << fmt(record["abs_err"].get<double>()) << ','
      << (record["converged"].get<bool>() ? "true" : "false") << ','
      << csv_escape(record["method"].get<std::string>()) << "\n";
}

}  // namespace

ContourSpec ContourOverrides::resolve(ContourSpec base) const {
  if (eta) base.eta = *eta;
  if (nu_max) base.nu_max = *nu_max;
  if (n_max) base.n_max = *n_max;
  if (nodes_per_unit) base.nodes_per_unit = *nodes_per_unit;
  if (pole_clearance) base.pole_clearance = *pole_clearance;
  return base;
}

const std::vector<std::string>& compute_quantities() {
  static const std::vector<std::string> q = {"a-func", "bracket", "w-kernel", "coeff-a",
                                             "coeff-b", "rho", "racah", "phi1", "phi2",
                                             "mb-propagator"};
  return q;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"a-identities", "chain", "star", "covariance",
                                             "completeness", "mb-propagator", "mb-consistency",
                                             "phi-oracle", "all"};
  return s;
}

int cmd_compute(const std::string& quantity, const Params& params, const RunConfig& config,
                std::ostream& out, std::ostream& err) {
  try {
    detail::validate_config(config);
    config.contour.resolve(default_contour(quantity)).validate();
    Outcome o = compute_outcome(quantity, params, config);
    o.record["inputs"] = params_to_json(quantity, params, config);
    emit_compute(out, o.record, config.output, true);
    if (!o.converged) {
      err << "TruncationNotConverged: error estimate exceeds the requested tolerance\n";
      return kExitNotConverged;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e);
  }
}

int cmd_scan(const ScanGrid& grid, const Params& params, const RunConfig& config,
             std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> names = {"a1", "a2", "a3", "l", "c", "cprime"};
  const auto it = std::find(names.begin(), names.end(), grid.param);
  try {
    detail::validate_config(config);
    if (it == names.end()) fail(ErrorKind::InvalidArgument, "scan parameter must be one of a1 a2 a3 l c cprime");
    if (!std::isfinite(grid.from) || !std::isfinite(grid.to) || !(grid.step > 0.0) ||
        !std::isfinite(grid.step)) {
      fail(ErrorKind::InvalidArgument, "grid bounds must be finite and the step positive");
    }
    require_count(params, 6);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e);
  }
  const std::size_t index = static_cast<std::size_t>(it - names.begin());
  const long count =
      grid.from > grid.to ? 0 : static_cast<long>(std::floor((grid.to - grid.from) / grid.step + 1e-9)) + 1;
  if (config.output == OutputFormat::Csv) out << "param,value,value_re,value_im,abs_err,converged,error\n";
  for (long k = 0; k < count; ++k) {
    Params p = params;
    p.method = "mb1";
    p.sigma[index] = grid.from + static_cast<double>(k) * grid.step;
    json record;
    std::string error;
    try {
      Outcome o = compute_outcome("racah", p, config);
      record = o.record;
    } catch (const Error& e) {
      record["error"] = {{"kind", std::string(kind_name(e.kind()))}, {"message", e.what()}};
      error = std::string(kind_name(e.kind()));
      err << "grid point " << k << ": " << e.what() << "\n";
    }
    record["inputs"] = params_to_json("racah", p, config);
    record["scan"] = {{"param", grid.param}, {"value", p.sigma[index]}, {"index", k}};
    if (config.output == OutputFormat::Json) {
      out << record.dump() << "\n";
    } else {
      out << grid.param << ',' << fmt(p.sigma[index]) << ',';
      if (error.empty()) {
        out << fmt(record["value"]["re"].get<double>()) << ','
            << fmt(record["value"]["im"].get<double>()) << ','
            << fmt(record["abs_err"].get<double>()) << ','
            << (record["converged"].get<bool>() ? "true" : "false") << ",\n";
      } else {
        out << ",,,," << error << "\n";
      }
    }
    out.flush();
  }
  return kExitOk;
}

int cmd_replay(const std::string& record_json, std::ostream& out, std::ostream& err) {
  json record;
  try {
    record = json::parse(record_json);
  } catch (const std::exception& e) {
    err << "InvalidArgument: record is not valid JSON: " << e.what() << "\n";
    return kExitPrecondition;
  }
  if (!record.contains("inputs")) {
    err << "InvalidArgument: record has no inputs field\n";
    return kExitPrecondition;
  }
  const json& in = record["inputs"];
  try {
    const RunConfig config = detail::config_from_json(in.at("config"));
    if (in.contains("suite")) return cmd_verify(in.at("suite").get<std::string>(), config, out, err);
    return cmd_compute(in.at("quantity").get<std::string>(), params_from_json(in), config, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return detail::exit_code_for(e);
  } catch (const std::exception& e) {
    err << "InvalidArgument: malformed inputs: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

namespace {

cplx parse_complex(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    parts.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw std::invalid_argument("expected 're' or 're,im', got '" + text + "'");
}

RawExponent parse_exponent(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(std::stod(item));
  if (parts.size() != 4) {
    throw std::invalid_argument("exponent must be 'hol_re,hol_im,anti_re,anti_im', got '" + text + "'");
  }
  return {{parts[0], parts[1]}, {parts[2], parts[3]}};
}

struct CommonFlags {
  std::optional<double> tol;
  std::int64_t budget = kDefaultBudget;
  std::optional<double> eta, nu_max, clearance;
  std::optional<int> n_max, nodes;
  std::uint64_t seed = RunConfig{}.seed;
  std::string convention = "paper";
  std::string output = "json";

  void attach(CLI::App* app) {
    app->add_option("--tol", tol, "Tolerance (MB engines default 1e-8, quadrature 1e-3)");
    app->add_option("--budget", budget, "Plane quadrature evaluation budget");
    app->add_option("--eta", eta, "Imaginary offset of the nu-line, in (-1, 0)");
    app->add_option("--nu-max", nu_max, "nu truncation");
    app->add_option("--n-max", n_max, "n truncation");
    app->add_option("--nodes-per-unit", nodes, "Gauss-Legendre nodes per unit of nu");
    app->add_option("--pole-clearance", clearance, "Minimum pole distance from the contour");
    app->add_option("--seed", seed, "Seed for randomized suites");
    app->add_option("--convention", convention, "paper or ismagilov")
        ->check(CLI::IsMember({"paper", "ismagilov"}));
    app->add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  RunConfig config() const {
    RunConfig c;
    c.tolerance = tol;
    c.budget = budget;
    c.contour = {eta, nu_max, n_max, nodes, clearance};
    c.seed = seed;
    c.convention = convention == "ismagilov" ? Convention::Ismagilov : Convention::Paper;
    c.output = output == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return c;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SL(2,C) 6j-symbols via Mellin-Barnes representations", "sl2c6j"};
  app.require_subcommand(1);

  CommonFlags compute_flags, verify_flags, scan_flags;
  std::string quantity, suite;
  std::vector<int> m;
  std::vector<double> sigma;
  std::vector<std::string> alpha_text, z_text;
  std::string zbar_text, y_text, z1_text, method, reading;
  ScanGrid grid;
  std::string replay_file;

  CLI::App* compute = app.add_subcommand("compute", "Evaluate one quantity");
  compute->add_option("quantity", quantity, "Quantity to compute")
      ->required()
      ->check(CLI::IsMember(compute_quantities()));
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--m", m, "Integer labels m, order a1 a2 a3 l c cprime");
    sub->add_option("--sigma", sigma, "Real labels sigma, same order as --m");
  };
  add_inputs(compute);
  compute->add_option("--alpha", alpha_text, "Exponent 'hol_re,hol_im,anti_re,anti_im'");
  compute->add_option("--z", z_text, "Point 're,im' (repeat for several points)");
  compute->add_option("--zbar", zbar_text, "Independent zbar for bracket");
  compute->add_option("--y", y_text, "Second point for mb-propagator");
  compute->add_option("--z1", z1_text, "External point for the detached phi2 reading");
  compute->add_option("--method", method, "racah: both|mb1|mb2; phi1/phi2: mb|direct|both");
  compute->add_option("--reading", reading, "phi2 reading: vertex|detached");
  compute_flags.attach(compute);

  CLI::App* verify = app.add_subcommand("verify", "Run an identity suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));
  verify_flags.attach(verify);

  CLI::App* scan = app.add_subcommand("scan", "Racah values (MB1) over a sigma grid");
  scan->add_option("--param", grid.param, "a1|a2|a3|l|c|cprime")->required();
  scan->add_option("--from", grid.from, "First grid value")->required();
  scan->add_option("--to", grid.to, "Last grid value")->required();
  scan->add_option("--step", grid.step, "Grid step")->required();
  add_inputs(scan);
  scan_flags.attach(scan);

  CLI::App* replay = app.add_subcommand("replay", "Recompute records read from a file or stdin");
  replay->add_option("--file", replay_file, "File with one JSON record per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "InvalidArgument: " << e.what() << "\n";
    return kExitPrecondition;
  }

  if (compute->parsed()) {
    Params p;
    p.m = m;
    p.sigma = sigma;
    p.method = method;
    p.reading = reading;
    try {
      for (const auto& a : alpha_text) p.alpha.push_back(parse_exponent(a));
      for (const auto& z : z_text) p.z.push_back(parse_complex(z));
      if (!zbar_text.empty()) p.zbar = parse_complex(zbar_text);
      if (!y_text.empty()) p.y = parse_complex(y_text);
      if (!z1_text.empty()) p.z1 = parse_complex(z1_text);
    } catch (const std::exception& e) {
      err << "InvalidArgument: " << e.what() << "\n";
      return kExitPrecondition;
    }
    return cmd_compute(quantity, p, compute_flags.config(), out, err);
  }
  if (verify->parsed()) return cmd_verify(suite, verify_flags.config(), out, err);
  if (scan->parsed()) {
    Params p;
    p.m = m;
    p.sigma = sigma;
    return cmd_scan(grid, p, scan_flags.config(), out, err);
  }
  std::stringstream text;
  if (replay_file.empty()) {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(replay_file);
    if (!in) {
      err << "InvalidArgument: cannot open " << replay_file << "\n";
      return kExitPrecondition;
    }
    text << in.rdbuf();
  }
  int code = kExitOk;
  std::string line;
  while (std::getline(text, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    code = std::max(code, cmd_replay(line, out, err));
  }
  return code;
}

}  // namespace sl2c::cli
