#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sl2c/exponents.hpp"
#include "sl2c/mellin_barnes.hpp"
#include "sl2c/quad2d.hpp"

namespace sl2c::cli {

enum class Convention { Paper, Ismagilov };
enum class OutputFormat { Json, Csv };

// Contour flags left unset fall back to per-quantity defaults.
struct ContourOverrides {
  std::optional<double> eta;
  std::optional<double> nu_max;
  std::optional<int> n_max;
  std::optional<int> nodes_per_unit;
  std::optional<double> pole_clearance;

  ContourSpec resolve(ContourSpec base) const;
};

struct RunConfig {
  std::optional<double> tolerance;
  std::int64_t budget = kDefaultBudget;
  ContourOverrides contour;
  std::uint64_t seed = 20240611;
  Convention convention = Convention::Paper;
  OutputFormat output = OutputFormat::Json;
};

// Exponent exactly as typed: hol and anti before snapping.
struct RawExponent {
  cplx hol;
  cplx anti;
  BalancedExponent value() const { return BalancedExponent(hol, anti); }
};

struct Params {
  std::vector<int> m;
  std::vector<double> sigma;
  std::vector<RawExponent> alpha;
  std::vector<cplx> z;
  std::optional<cplx> zbar;
  std::optional<cplx> y;
  std::optional<cplx> z1;
  std::string method;   // racah: both|mb1|mb2; phi: mb|direct|both
  std::string reading;  // phi2: vertex|detached
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitNotConverged = 3;

const std::vector<std::string>& compute_quantities();
const std::vector<std::string>& verify_suites();

// Each command writes records to out and human-readable messages to err, and
// returns the process exit code.
int cmd_compute(const std::string& quantity, const Params& params, const RunConfig& config,
                std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, const RunConfig& config, std::ostream& out,
               std::ostream& err);

struct ScanGrid {
  std::string param;  // a1|a2|a3|l|c|cprime
  double from = 0.0;
  double to = 0.0;
  double step = 0.1;
};
int cmd_scan(const ScanGrid& grid, const Params& params, const RunConfig& config,
             std::ostream& out, std::ostream& err);

// Re-runs the computation echoed in a record's "inputs" field.
int cmd_replay(const std::string& record_json, std::ostream& out, std::ostream& err);

// Full command line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sl2c::cli
