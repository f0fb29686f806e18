#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kfp/asymptotics.hpp"
#include "kfp/cli.hpp"
#include "kfp/oracle.hpp"

namespace kfp::cli {
namespace {

enum class Format { Csv, Json };

const std::map<std::string, Format> kFormats{{"csv", Format::Csv}, {"json", Format::Json}};
const std::map<std::string, Scale> kScales{{"linear", Scale::Linear}, {"log", Scale::Log}};
const std::map<std::string, Regime> kRegimes{
    {"small-t", Regime::SmallT}, {"large-b", Regime::LargeB}, {"long-t", Regime::LongT}, {"all", Regime::All}};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_regimes(std::ostream& os, const std::vector<RegimeRow>& rows, Format f) {
  if (f == Format::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back({{"regime", r.regime}, {"b", r.b}, {"quantity", r.quantity}, {"value", r.value}});
    os << arr.dump(2) << '\n';
    return;
  }
  os << "regime,b,quantity,value\n";
  for (const auto& r : rows) os << r.regime << ',' << fmt17(r.b) << ',' << r.quantity << ',' << fmt17(r.value) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form spectrum and propagator norm of the 4x4 magnetic KFP matrix"};
  app.require_subcommand(1);

  // spectrum
  double sp_a = 14.0;
  std::vector<double> sp_b;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues and spectral abscissa");
  sp->add_option("--a", sp_a, "electric parameter a > 0");
  sp->add_option("--b", sp_b, "magnetic parameter(s), comma separated")->delimiter(',')->required();

  // norm-sweep
  SweepSpec spec;
  SweepOptions sw;
  Format sw_format = Format::Csv;
  std::string sw_svg;
  std::string envelope;
  auto* ns = app.add_subcommand("norm-sweep", "||e^{-tM}|| over a time grid");
  ns->add_option("--a", spec.a)->required();
  ns->add_option("--b", spec.b)->required();
  ns->add_option("--t-min", spec.t_min);
  ns->add_option("--t-max", spec.t_max);
  ns->add_option("--steps", spec.steps);
  ns->add_option("--scale", spec.scale)->transform(CLI::CheckedTransformer(kScales, CLI::ignore_case));
  ns->add_option("--format", sw_format)->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  ns->add_option("--svg", sw_svg, "also write an SVG plot of log_norm");
  ns->add_option("--envelope", envelope, "long-time: add sqrt(R1)(1 -/+ C E(t)) columns")
      ->check(CLI::IsMember({"long-time"}));
  ns->add_option("--envelope-c", sw.envelope_c);
  ns->add_flag("--rate-compensated", sw.rate_compensated, "multiply by e^{t(1-c1)/2}");
  ns->add_option("--threads", sw.threads)->check(CLI::Range(1, 64));

  // validate
  std::uint64_t seed = 1;
  int cases = 200;
  std::optional<double> va_tol;
  auto* va = app.add_subcommand("validate", "randomized closed form vs oracle suites");
  va->add_option("--seed", seed);
  va->add_option("--cases", cases)->check(CLI::NonNegativeNumber);
  va->add_option("--tol", va_tol, "overrides KFP_TOL and suite defaults");

  // regimes
  double rg_a = 8.0;
  std::vector<double> rg_b;
  Format rg_format = Format::Csv;
  RegimeOptions rg;
  auto* rgc = app.add_subcommand("regimes", "small-t, large-b and long-t diagnostics");
  rgc->add_option("--a", rg_a);
  rgc->add_option("--b", rg_b)->delimiter(',')->required();
  rgc->add_option("--regime", rg.which)->transform(CLI::CheckedTransformer(kRegimes, CLI::ignore_case));
  rgc->add_option("--format", rg_format)->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  rgc->add_option("--t-max", rg.large_b_t_max, "large-b sup window");
  rgc->add_option("--t-long", rg.long_t, "long-t evaluation time");

  // periodicity
  double pe_a = 24.0;
  auto* pe = app.add_subcommand("periodicity", "zero-field period and oracle return residual");
  pe->add_option("--a", pe_a);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sp) {
      out << spectrum_report(sp_a, sp_b);
    } else if (*ns) {
      sw.long_time_envelope = envelope == "long-time";
      const auto rows = norm_sweep(spec, sw);
      if (sw_format == Format::Json)
        write_json(out, rows);
      else
        write_csv(out, rows);
      if (!sw_svg.empty()) {
        std::ofstream f(sw_svg);
        if (!f) {
          err << "error: cannot write " << sw_svg << '\n';
          return 2;
        }
        char title[96];
        std::snprintf(title, sizeof title, "log norm, a = %g, b = %g", spec.a, spec.b);
        write_svg(f, rows, title);
      }
    } else if (*va) {
      if (cases == 0) err << "warning: 0 cases, every suite passes vacuously\n";
      bool ok = true;
      for (const auto& s : run_validation(seed, cases, resolve_tol(va_tol))) {
        char line[160];
        std::snprintf(line, sizeof line, "%-14s cases=%d worst=%.3e tol=%.1e %s\n", s.name.c_str(), s.cases, s.worst,
                      s.tol, s.pass() ? "PASS" : "FAIL");
        out << line;
        ok = ok && s.pass();
      }
      return ok ? 0 : 1;
    } else if (*rgc) {
      write_regimes(out, regimes(rg_a, rg_b, rg), rg_format);
    } else if (*pe) {
      const double period = periodicity_period(pe_a);
      const Matrix4 f = std::exp(period / 2) * oracle::expm(-period * build_matrix(Params(pe_a, 0.0)));
      out << "a,period,return_residual\n" << fmt17(pe_a) << ',' << fmt17(period) << ','
          << fmt17(oracle::operator_norm(f - Matrix4::identity())) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace kfp::cli
