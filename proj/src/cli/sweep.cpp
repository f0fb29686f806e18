#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "kfp/asymptotics.hpp"
#include "kfp/cli.hpp"
#include "kfp/spectrum.hpp"

namespace kfp::cli {
namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

OutputRecord evaluate_point(const Params& p, double t, const SweepOptions& opts, double rate,
                            const std::optional<LongTimeEstimate>& lt) {
  const NormEvaluation ev = evaluate_norm(p, t);
  OutputRecord r{t, ev.norm, ev.log_norm, std::nullopt, std::nullopt, ev.source};
  if (opts.rate_compensated) {
    r.log_norm += rate * t;
    r.norm = std::exp(r.log_norm);
  }
  if (lt) {
    const double width = opts.envelope_c * long_time_envelope(p, t);
    const double undo = opts.rate_compensated ? 1.0 : std::exp(-rate * t);
    r.envelope_low = lt->sqrt_r1 * (1.0 - width) * undo;
    r.envelope_high = lt->sqrt_r1 * (1.0 + width) * undo;
  }
  return r;
}

}  // namespace

void SweepSpec::validate() const {
  Params(a, b);
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) throw DomainError("sweep bounds must be finite");
  if (t_min < 0.0) throw DomainError("t_min must be >= 0");
  if (t_max < t_min) throw DomainError("t_max must be >= t_min");
  if (steps < 2) throw DomainError("steps must be >= 2");
  if (scale == Scale::Log && t_min <= 0.0) throw DomainError("log scale needs t_min > 0");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) / (steps - 1);
    g[i] = scale == Scale::Linear ? t_min + s * (t_max - t_min) : t_min * std::pow(t_max / t_min, s);
  }
  g.back() = t_max;
  return g;
}

std::vector<OutputRecord> norm_sweep(const SweepSpec& spec, const SweepOptions& opts) {
  const std::vector<double> g = spec.grid();
  const Params p(spec.a, spec.b);
  const double rate = spectral_abscissa(p);
  std::optional<LongTimeEstimate> lt;
  if (opts.long_time_envelope) lt = long_time_estimate(p);

  std::vector<OutputRecord> rows(g.size());
  const int nthreads = std::clamp(opts.threads, 1, 64);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < g.size(); i += stride) rows[i] = evaluate_point(p, g[i], opts, rate, lt);
  };
  if (nthreads == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k)
      pool.emplace_back([&, k] {
        try {
          work(k, nthreads);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<OutputRecord>& rows) {
  os << "t,norm,log_norm,envelope_low,envelope_high,source\n";
  for (const auto& r : rows) {
    os << fmt17(r.t) << ',' << fmt17(r.norm) << ',' << fmt17(r.log_norm) << ','
       << (r.envelope_low ? fmt17(*r.envelope_low) : "") << ',' << (r.envelope_high ? fmt17(*r.envelope_high) : "")
       << ',' << source_name(r.source) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<OutputRecord>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["t"] = r.t;
    o["norm"] = r.norm;
    o["log_norm"] = r.log_norm;
    o["envelope_low"] = r.envelope_low ? nlohmann::json(*r.envelope_low) : nlohmann::json(nullptr);
    o["envelope_high"] = r.envelope_high ? nlohmann::json(*r.envelope_high) : nlohmann::json(nullptr);
    o["source"] = std::string(source_name(r.source));
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

// log_norm against t, plus the log of each envelope column when present.
void write_svg(std::ostream& os, const std::vector<OutputRecord>& rows, const std::string& title) {
  constexpr double W = 800, H = 500, L = 70, R = 20, T = 40, B = 50;
  struct Series {
    const char* color;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series{{"#1f77b4", {}}, {"#d62728", {}}, {"#d62728", {}}};
  for (const auto& r : rows) {
    series[0].pts.emplace_back(r.t, r.log_norm);
    if (r.envelope_low && *r.envelope_low > 0) series[1].pts.emplace_back(r.t, std::log(*r.envelope_low));
    if (r.envelope_high && *r.envelope_high > 0) series[2].pts.emplace_back(r.t, std::log(*r.envelope_high));
  }

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (auto [x, y] : s.pts) {
      if (!std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  std::snprintf(buf, sizeof buf, "<path d=\"M%g %g H%g M%g %g V%g\" stroke=\"black\" fill=\"none\"/>\n", L, H - B,
                W - R, L, H - B, T);
  os << buf;
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"black\"/>"
                  "<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\" font-size=\"11\">%.4g</text>\n",
                  px(xv), H - B, px(xv), H - B + 5, px(xv), H - B + 18, xv);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"black\"/>"
                  "<text x=\"%g\" y=\"%.2f\" text-anchor=\"end\" font-size=\"11\">%.4g</text>\n",
                  L - 5, py(yv), L, py(yv), L - 8, py(yv) + 4, yv);
    os << buf;
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"13\">t</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\">log norm</text>\n";
  for (const auto& s : series) {
    if (s.pts.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.pts) {
      if (!std::isfinite(y)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace kfp::cli
