#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfp/propagator.hpp"

namespace kfp::cli {

enum class Scale { Linear, Log };

struct SweepSpec {
  double a = 1.0;
  double b = 1.0;
  double t_min = 0.0;
  double t_max = 10.0;
  int steps = 200;
  Scale scale = Scale::Linear;

  // t_max == t_min is allowed and yields a constant grid.
  void validate() const;
  std::vector<double> grid() const;
};

struct OutputRecord {
  double t;
  double norm;
  double log_norm;
  std::optional<double> envelope_low;
  std::optional<double> envelope_high;
  NormSource source;
};

struct SweepOptions {
  bool rate_compensated = false;  // multiply by e^{t (1 - c1)/2}
  bool long_time_envelope = false;
  double envelope_c = 1.0;
  int threads = 1;
};

std::vector<OutputRecord> norm_sweep(const SweepSpec& spec, const SweepOptions& opts = {});

void write_csv(std::ostream& os, const std::vector<OutputRecord>& rows);
void write_json(std::ostream& os, const std::vector<OutputRecord>& rows);
void write_svg(std::ostream& os, const std::vector<OutputRecord>& rows, const std::string& title);

// Fixed 7-decimal table: b | abscissa | a/b^2 | eigenvalues.
std::string spectrum_report(double a, std::span<const double> bs);

struct SuiteResult {
  std::string name;
  int cases;
  double worst;
  double tol;

  bool pass() const { return worst <= tol; }
};

/// Randomized closed form vs oracle suites. A set tolerance overrides every
/// suite's default.
std::vector<SuiteResult> run_validation(std::uint64_t seed, int cases, std::optional<double> tol = std::nullopt);

struct RegimeRow {
  std::string regime;
  double b;
  std::string quantity;
  double value;
};

enum class Regime { SmallT, LargeB, LongT, All };

struct RegimeOptions {
  Regime which = Regime::All;
  double large_b_t_max = 50.0;
  double long_t = 30.0;
  double small_t_w_lo = 1e-6;
  double small_t_w_hi = 1e-3;
};

std::vector<RegimeRow> regimes(double a, std::span<const double> bs, const RegimeOptions& opts = {});

/// flag > KFP_TOL > fallback
std::optional<double> resolve_tol(std::optional<double> flag);

/// Entry point behind the kfp binary. Exit codes: 0 ok, 1 validation
/// failure, 2 usage or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kfp::cli
