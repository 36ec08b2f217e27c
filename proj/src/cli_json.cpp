#include "cli_internal.hpp"

namespace sl2c::cli::detail {

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const ContourSpec& c) {
  return {{"eta", c.eta},
          {"nu_max", c.nu_max},
          {"n_max", c.n_max},
          {"nodes_per_unit", c.nodes_per_unit},
          {"pole_clearance", c.pole_clearance}};
}

json to_json(const MbDiagnostics& d) {
  json per_n = json::array();
  for (const auto& [n, mag] : d.per_n_magnitudes) per_n.push_back({n, mag});
  return {{"per_n_magnitudes", per_n},
          {"tail_estimate", d.tail_estimate},
          {"min_pole_distance", d.min_pole_distance},
          {"separated", d.separated},
          {"summation", d.method},
          {"evaluations", d.evaluations}};
}

json to_json(const QuadratureResult& q) {
  return {{"abs_err", q.abs_err}, {"evaluations", q.evaluations}, {"converged", q.converged}};
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json config_to_json(const RunConfig& config) {
  const ContourOverrides& c = config.contour;
  return {{"tolerance", opt(config.tolerance)},
          {"budget", config.budget},
          {"contour",
           {{"eta", opt(c.eta)},
            {"nu_max", opt(c.nu_max)},
            {"n_max", opt(c.n_max)},
            {"nodes_per_unit", opt(c.nodes_per_unit)},
            {"pole_clearance", opt(c.pole_clearance)}}},
          {"seed", config.seed},
          {"convention", config.convention == Convention::Ismagilov ? "ismagilov" : "paper"},
          {"output", config.output == OutputFormat::Csv ? "csv" : "json"}};
}

RunConfig config_from_json(const json& j) {
  RunConfig config;
  config.tolerance = opt_from<double>(j, "tolerance");
  config.budget = j.value("budget", config.budget);
  if (j.contains("contour")) {
    const json& c = j.at("contour");
    config.contour.eta = opt_from<double>(c, "eta");
    config.contour.nu_max = opt_from<double>(c, "nu_max");
    config.contour.n_max = opt_from<int>(c, "n_max");
    config.contour.nodes_per_unit = opt_from<int>(c, "nodes_per_unit");
    config.contour.pole_clearance = opt_from<double>(c, "pole_clearance");
  }
  config.seed = j.value("seed", config.seed);
  config.convention =
      j.value("convention", std::string("paper")) == "ismagilov" ? Convention::Ismagilov : Convention::Paper;
  config.output = j.value("output", std::string("json")) == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  return config;
}

void validate_config(const RunConfig& config) {
  if (config.tolerance && !(*config.tolerance > 0.0)) {
    fail(ErrorKind::InvalidArgument, "tolerance must be positive");
  }
  if (config.budget <= 0) fail(ErrorKind::InvalidArgument, "budget must be positive");
  config.contour.resolve(ContourSpec{}).validate();
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::TruncationNotConverged ? kExitNotConverged : kExitPrecondition;
}

}  // namespace sl2c::cli::detail
