#include "pxp/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "pxp/errors.hpp"
#include "pxp/output.hpp"
#include "pxp/parallel.hpp"
#include "pxp/states.hpp"

namespace pxp {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Accumulates what a command produced besides its files.
struct Outcome {
  Json metrics = Json::object();
  Json failures = Json::array();
  int status = kExitOk;

  void fail(const std::exception& e, Json where) {
    where["error"] = e.what();
    failures.push_back(std::move(where));
    if (status == kExitOk) status = exit_status_for(e);
  }
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double require_scalar(const std::optional<ValueRange>& r, const char* what) {
  if (!r) throw UsageError(std::string("missing required parameter ") + what);
  if (!r->is_scalar()) throw UsageError(std::string(what) + " must be a single value here");
  return r->start;
}

const ValueRange& require_range(const std::optional<ValueRange>& r, const char* what) {
  if (!r) throw UsageError(std::string("missing required parameter ") + what);
  return *r;
}

/// |U(steps) - U(steps/2)|_max / 3, the Richardson estimate of the
/// discretization error of a second-order scheme.
double step_halving_estimate(const DrivenChain& chain, const DriveParams& params, int steps,
                             const PropagatorMatrix& u) {
  if (steps / 2 < 16) return kNaN;
  const auto coarse = one_period_propagator(chain, params, steps / 2);
  return (u.matrix - coarse.matrix).cwiseAbs().maxCoeff() / 3.0;
}

void run_basis(const RunConfig& c, OutputWriter& out, Outcome& o) {
  const auto basis = enumerate_basis(c.sites);
  std::ostringstream dump;
  write_basis_dump(dump, basis);
  out.write("basis.txt", dump.str());
  o.metrics["size"] = basis.size();
}

void run_spectrum(const RunConfig& c, OutputWriter& out, Outcome& o) {
  const auto hs = require_range(c.h, "h").values();
  const auto ws = c.omega_d.values();
  const auto basis = make_basis(c.sites);
  const DrivenChain chain(basis);
  const StateVector psi0 = make_state(basis, c.state);

  std::vector<SpectrumEntry> entries(hs.size() * ws.size());
  std::vector<double> unitarity(entries.size(), kNaN);
  std::vector<std::optional<std::string>> errors(entries.size());
  std::vector<int> codes(entries.size(), kExitOk);
  for (std::size_t wi = 0; wi < ws.size(); ++wi) {
    const PeriodPropagator builder(chain, ws[wi], c.steps);
    parallel_for(hs.size(), c.workers, [&](std::size_t hi) {
      const std::size_t k = wi * hs.size() + hi;
      entries[k] = {ws[wi], hs[hi], {}};
      try {
        const auto u = builder.build(hs[hi]);
        unitarity[k] = u.unitarity_error();
        entries[k].profile = overlaps(decompose(u), psi0, c.state);
      } catch (const Error& e) {
        errors[k] = e.what();
        codes[k] = exit_status_for(e);
      }
    });
  }

  Json bandwidths = Json::array();
  double worst = 0.0;
  std::vector<SpectrumEntry> ok;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (errors[k]) {
      o.failures.push_back({{"omega_d", entries[k].omega_d}, {"h", entries[k].h}, {"error", *errors[k]}});
      if (o.status == kExitOk) o.status = codes[k];
      continue;
    }
    worst = std::max(worst, unitarity[k]);
    const auto& q = entries[k].profile.quasi_energies;
    bandwidths.push_back({{"omega_d", entries[k].omega_d},
                          {"h", entries[k].h},
                          {"bandwidth", q.maxCoeff() - q.minCoeff()}});
    ok.push_back(std::move(entries[k]));
  }
  out.write("spectrum.csv", spectrum_csv(c.sites, ok));
  o.metrics["max_unitarity_error"] = worst;
  o.metrics["step_halving_error"] = number(step_halving_estimate(
      chain, DriveParams(hs.front(), ws.front()), c.steps,
      one_period_propagator(chain, DriveParams(hs.front(), ws.front()), c.steps)));
  o.metrics["bandwidth"] = std::move(bandwidths);
}

SweepResult sweep_for(const RunConfig& c) {
  SweepGrid grid;
  grid.h_values = require_range(c.h, "h").values();
  grid.omega_d_values = c.omega_d.values();
  grid.sites = c.sites;
  grid.state = c.state;
  grid.n_values = effective_n_values(c);
  grid.steps_per_period = c.steps;
  return fidelity_sweep(grid, c.workers);
}

void record_sweep(const SweepResult& sweep, Outcome& o) {
  for (const auto& cell : sweep.cells) {
    if (!cell.ok) {
      o.failures.push_back({{"omega_d", cell.omega_d}, {"h", cell.h}, {"error", cell.error}});
      if (o.status == kExitOk) o.status = kExitIntegration;
    }
  }
  o.metrics["cells"] = sweep.cells.size();
  o.metrics["failed_cells"] = sweep.failed_cells();
  o.metrics["max_unitarity_error"] = sweep.max_unitarity_error();
}

void run_fidelity_sweep(const RunConfig& c, OutputWriter& out, Outcome& o) {
  const auto sweep = sweep_for(c);
  out.write("sweep.csv", sweep_csv(sweep));
  record_sweep(sweep, o);
}

void run_peaks(const RunConfig& c, OutputWriter& out, Outcome& o) {
  const auto sweep = sweep_for(c);
  record_sweep(sweep, o);
  std::vector<PeakSeries> series;
  for (double w : sweep.grid.omega_d_values) {
    for (int n : sweep.grid.n_values) {
      const auto f = sweep.slice(w, n);
      // A failed cell leaves NaN in the slice; crests are not defined there.
      if (std::any_of(f.begin(), f.end(), [](double v) { return std::isnan(v); })) continue;
      series.push_back({w, n, track_peaks(sweep.grid.h_values, f, c.min_height, c.min_separation)});
    }
  }
  out.write("sweep.csv", sweep_csv(sweep));
  out.write("peaks.csv", peaks_csv(c.sites, c.state, series));
}

void run_nrev_fit(const RunConfig& c, OutputWriter& out, Outcome& o) {
  std::vector<NrevSeries> series;
  Json fits = Json::array();
  for (double w : c.omega_d.values()) {
    const auto hs = c.h ? c.h->values()
                        : linear_grid(c.fit_window.h_min, c.fit_window.ratio_max * w, 0.1);
    auto profile = nrev_profile(hs, w, c.sites, c.eta, c.state, c.steps, c.workers);
    const auto pts = revival_points(profile);
    o.metrics["points_without_arc"][format_number(w)] =
        std::count_if(profile.begin(), profile.end(), [](const RevivalEstimate& e) { return !e.ok; });
    for (FitModel model : {FitModel::with_offset, FitModel::proportional}) {
      try {
        const FitResult fit = fit_nrev(pts, w, model, c.fit_window);
        fits.push_back({{"omega_d", w},
                        {"model", to_string(model)},
                        {"gamma", fit.gamma},
                        {"gamma_err", number(fit.gamma_err)},
                        {"alpha", fit.alpha},
                        {"alpha_err", number(fit.alpha_err)},
                        {"residual_norm", fit.residual_norm},
                        {"points", fit.points},
                        {"window", {{"h_min", fit.window.h_min},
                                    {"h_max", fit.window.ratio_max * w}}},
                        {"eta", c.eta},
                        {"min_revival_index", min_revival_index(fit, w)}});
      } catch (const FitError& e) {
        o.fail(e, {{"omega_d", w}, {"model", to_string(model)}});
      }
    }
    series.push_back({w, std::move(profile)});
  }
  out.write("nrev.csv", nrev_csv(c.sites, c.state, series));
  Json report{{"L", c.sites}, {"state", c.state}, {"eta", c.eta}, {"fits", std::move(fits)}};
  out.write("fit.json", report.dump(2) + "\n");
}

void run_thermalize(const RunConfig& c, OutputWriter& out, Outcome& o) {
  if (c.n_values) throw UsageError("thermalize takes --n-max, not --n");
  if (!c.omega_d.is_scalar()) throw UsageError("omega_d must be a single value here");
  const double h = require_scalar(c.h, "h");
  const int n_max = c.n_max.value_or(800);
  const auto basis = make_basis(c.sites);
  const DrivenChain chain(basis);
  const StateVector psi0 = make_state(basis, c.state);
  const DriveParams params(h, c.omega_d.start);
  const auto u = one_period_propagator(chain, params, c.steps);
  const auto trace = thermalization_trace(u, psi0, n_max);
  out.write("thermalization.csv", thermalization_csv(trace));

  o.metrics["max_unitarity_error"] = u.unitarity_error();
  o.metrics["step_halving_error"] = number(step_halving_estimate(chain, params, c.steps, u));
  o.metrics["records"] = trace.records.size();
  o.metrics["z_erg_chain"] = ergodic_z_chain(c.sites);
  if (n_max >= 1) {
    std::vector<double> zs, xs;
    double z_mean = 0.0;
    for (std::size_t k = 1; k < trace.records.size(); ++k) {
      zs.push_back(trace.records[k].chain.z);
      xs.push_back(trace.records[k].chain.x);
      z_mean += trace.records[k].chain.z;
    }
    o.metrics["z_time_average"] = z_mean / static_cast<double>(zs.size());
    o.metrics["chain_d_avg"] = time_averaged_distance(trace, 0, n_max);
    o.metrics["sigma_x"] = signal_std(xs);
    o.metrics["sigma_z"] = signal_std(zs);
  }
}

}  // namespace

int exit_status_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const IntegrationError*>(&e)) return kExitIntegration;
  if (dynamic_cast<const FitError*>(&e)) return kExitFit;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const DecompositionError*>(&e) || dynamic_cast<const NoArcError*>(&e) ||
      dynamic_cast<const DomainError*>(&e)) {
    return kExitAnalysis;
  }
  if (dynamic_cast<const InvalidStateError*>(&e) || dynamic_cast<const SizeError*>(&e)) {
    return kExitUsage;
  }
  return kExitFailure;
}

int run_command(const RunConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<OutputWriter> out;
  Outcome o;
  try {
    out.emplace(config.output);
    if (config.command == "basis") {
      run_basis(config, *out, o);
    } else if (config.command == "spectrum") {
      run_spectrum(config, *out, o);
    } else if (config.command == "fidelity-sweep") {
      run_fidelity_sweep(config, *out, o);
    } else if (config.command == "nrev-fit") {
      run_nrev_fit(config, *out, o);
    } else if (config.command == "thermalize") {
      run_thermalize(config, *out, o);
    } else if (config.command == "peaks") {
      run_peaks(config, *out, o);
    } else {
      throw UsageError("no command given");
    }
    if (config.plot_script) out->write("plot.gp", gnuplot_script(config.command, out->files()));
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    o.fail(e, Json::object());
    if (!out) return o.status;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest;
  manifest["command"] = config.command;
  manifest["version"] = PXP_FLOQUET_VERSION;
  manifest["config"] = Json::object();
  for (const auto& [k, v] : config_key_values(config)) manifest["config"][k] = v;
  manifest["wall_time_s"] = wall;
  manifest["metrics"] = o.metrics;
  manifest["outputs"] = Json::array();
  for (const auto& f : out->files()) {
    manifest["outputs"].push_back({{"path", f.name}, {"fnv1a64", hex64(f.hash)}, {"bytes", f.bytes}});
  }
  manifest["partial"] = !o.failures.empty();
  manifest["failures"] = o.failures;
  manifest["exit_status"] = o.status;
  try {
    out->write("manifest.json", manifest.dump(2) + "\n");
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitIo;
  }
  for (const auto& f : o.failures) log << "failure: " << f.dump() << "\n";
  return o.status;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_command(config, err);
}

}  // namespace pxp
