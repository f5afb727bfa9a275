// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never loosened at runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pxp/basis.hpp"
#include "pxp/fit.hpp"
#include "pxp/floquet.hpp"
#include "pxp/peaks.hpp"
#include "pxp/states.hpp"
#include "pxp/sweep.hpp"
#include "pxp/thermal.hpp"

using namespace pxp;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1 --------------------------------------------------------------------

Verdict basis_dimension() {
  for (int L = 1; L <= 20; ++L) {
    std::size_t brute = 0;
    for (std::uint32_t s = 0; s < (1u << L); ++s) brute += oracle::blockaded(s, L);
    const auto size = enumerate_basis(L).size();
    if (size != brute || size != fibonacci(L + 2)) {
      return {false, fmt("L=%d: enumerated %zu, brute force %zu", L, size, brute)};
    }
  }
  return {true, fmt("F(L+2) for L=1..20, F(22)=%llu", static_cast<unsigned long long>(fibonacci(22)))};
}

// ---- 2 --------------------------------------------------------------------

Verdict ergodic_formula() {
  constexpr double tol = 1e-12;
  double worst = 0.0;
  for (int L = 1; L <= 14; ++L) {
    const auto states = oracle::brute_force_basis(L);
    for (int j = 1; j <= L; ++j) {
      double sum = 0.0;
      for (auto s : states) sum += oracle::excited(s, j) ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(ergodic_z(j, L) - sum / static_cast<double>(states.size())));
    }
  }
  return {worst < tol, fmt("max deviation %.2e (tol %.0e)", worst, tol)};
}

// ---- 3 --------------------------------------------------------------------

Verdict propagator_correctness() {
  constexpr double static_tol = 1e-8, unitary_tol = 1e-8;
  constexpr double order_lo = 1.8, order_hi = 2.2;

  double static_err = 0.0;
  for (int L = 1; L <= 12; ++L) {
    const DrivenChain chain(make_basis(L));
    for (double w : {2.0, 5.0}) {
      const DriveParams p(0.0, w);
      const auto u = one_period_propagator(chain, p);
      const auto ref = oracle::spectral_exp(oracle::subspace_pxp(L), p.period());
      static_err = std::max(static_err, oracle::max_abs(u.matrix - ref));
    }
  }

  double unitary = 0.0;
  for (int L : {8, 12}) {
    const DrivenChain chain(make_basis(L));
    for (double w : {5.0, 7.0}) {
      const PeriodPropagator builder(chain, w, kDefaultStepsPerPeriod);
      for (double h : {0.0, 0.1, 1.0, 2.4, 5.7, 9.14, 2.4048 * w}) {
        unitary = std::max(unitary, builder.build(h).unitarity_error());
      }
    }
  }

  const DrivenChain chain8(make_basis(8));
  const DriveParams p(5.0, 5.0);
  std::vector<Eigen::MatrixXcd> us;
  for (int steps : {64, 128, 256, 512}) us.push_back(one_period_propagator(chain8, p, steps).matrix);
  std::vector<double> orders;
  for (std::size_t k = 0; k + 2 < us.size(); ++k) {
    const double e1 = oracle::max_abs(us[k] - us[k + 1]);
    const double e2 = oracle::max_abs(us[k + 1] - us[k + 2]);
    orders.push_back(std::log2(e1 / e2));
  }
  const bool order_ok = std::all_of(orders.begin(), orders.end(),
                                    [&](double o) { return o >= order_lo && o <= order_hi; });
  return {static_err < static_tol && unitary < unitary_tol && order_ok,
          fmt("static %.1e (tol %.0e), unitarity %.1e (tol %.0e), orders %.3f %.3f (in [%.1f, %.1f])",
              static_err, static_tol, unitary, unitary_tol, orders[0], orders[1], order_lo, order_hi)};
}

// ---- 4 --------------------------------------------------------------------

Verdict floquet_consistency() {
  constexpr double tol = 1e-8;
  const auto basis = make_basis(12);
  const DrivenChain chain(basis);
  const auto psi = neel(basis);
  double worst = 0.0;
  for (double h : {2.4, 9.14}) {
    const auto u = one_period_propagator(chain, DriveParams(h, 5.0));
    const auto profile = overlaps(decompose(u), psi);
    for_each_stroboscopic(u, psi, 200, [&](int n, const Eigen::VectorXcd& v) {
      const double direct = std::norm(v.dot(psi.amplitudes()));
      worst = std::max(worst, std::abs(direct - spectral_fidelity(profile, u.params.period(), n)));
    });
  }
  return {worst < tol, fmt("max |F_iter - F_spectral| %.2e over n<=200 (tol %.0e)", worst, tol)};
}

// ---- 5 --------------------------------------------------------------------

Verdict fsn_narrowing() {
  constexpr double ratio_max = 0.2;
  const DrivenChain chain(make_basis(8));
  const PeriodPropagator builder(chain, 5.0, kDefaultStepsPerPeriod);
  const double at_zero = bandwidth(decompose(builder.build(12.024)));
  const double weak = bandwidth(decompose(builder.build(0.1)));
  return {at_zero < ratio_max * weak,
          fmt("bandwidth %.4f at h=12.024 vs %.4f at h=0.1, ratio %.4f (< %.1f)", at_zero, weak,
              at_zero / weak, ratio_max)};
}

// ---- 6 --------------------------------------------------------------------

Verdict revival_indices() {
  const auto prof = nrev_profile({2.4, 5.7, 9.14}, 5.0, 12);
  const double expected[] = {8, 11, 25};
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < 3; ++k) {
    const double n = prof[k].n_rev;
    ok = ok && prof[k].ok && std::abs(std::round(n) - expected[k]) <= 1.0;
    detail += fmt("%sh=%.2f: %.3f (want %.0f +/- 1)", k ? ", " : "", prof[k].h, n, expected[k]);
  }
  return {ok, detail};
}

// ---- 7 and 8 --------------------------------------------------------------

struct TableFits {
  FitResult w5, w7;
};

TableFits table_fits() {
  TableFits out;
  for (double w : {5.0, 7.0}) {
    const FitWindow window;
    const auto hs = linear_grid(window.h_min, window.ratio_max * w, 0.1);
    const auto prof = nrev_profile(hs, w, 10);
    (w == 5.0 ? out.w5 : out.w7) = fit_nrev(revival_points(prof), w, FitModel::with_offset, window);
  }
  return out;
}

Verdict table_reproduction(const TableFits& f) {
  constexpr double gamma_tol = 0.02, alpha_tol = 0.3;
  const double g5 = 0.57121, a5 = -1.53336, g7 = 0.611822, a7 = -1.10751;
  const bool within = std::abs(f.w5.gamma - g5) <= gamma_tol && std::abs(f.w5.alpha - a5) <= alpha_tol &&
                      std::abs(f.w7.gamma - g7) <= gamma_tol && std::abs(f.w7.alpha - a7) <= alpha_tol;
  const bool improves = f.w7.gamma_err < f.w5.gamma_err && f.w7.alpha_err < f.w5.alpha_err;
  return {within && improves,
          fmt("w=5: gamma %.4f+/-%.4f alpha %.3f+/-%.3f; w=7: gamma %.4f+/-%.4f alpha %.3f+/-%.3f; "
              "errors shrink: %s",
              f.w5.gamma, f.w5.gamma_err, f.w5.alpha, f.w5.alpha_err, f.w7.gamma, f.w7.gamma_err,
              f.w7.alpha, f.w7.alpha_err, improves ? "yes" : "no")};
}

Verdict minimal_revival(const TableFits& f) {
  constexpr double tol = 0.5, ref = 10.3325;
  const double n = min_revival_index(f.w7, 7.0);
  return {std::abs(n - ref) <= tol, fmt("n_rev_min %.4f (want %.4f +/- %.1f)", n, ref, tol)};
}

// ---- 9 and 11 -------------------------------------------------------------

SweepResult l12_sweep(const std::string& state, std::vector<int> ns) {
  SweepGrid g;
  g.h_values = linear_grid(0.0, 11.9, 0.1);  // step 0.1, all h < 12
  g.omega_d_values = {5.0};
  g.sites = 12;
  g.state = state;
  g.n_values = std::move(ns);
  return fidelity_sweep(g);
}

// The crest of a slice is its highest tracked peak.
std::optional<Peak> crest(const SweepResult& r, int n) {
  const auto peaks = track_peaks(r.grid.h_values, r.slice(5.0, n));
  if (peaks.empty()) return std::nullopt;
  return *std::max_element(peaks.begin(), peaks.end(),
                           [](const Peak& a, const Peak& b) { return a.height < b.height; });
}

Verdict crest_drift() {
  const auto r = l12_sweep("neel", {9, 10, 11, 12, 13, 14});
  if (r.failed_cells()) return {false, "sweep cells failed"};
  bool ok = true;
  std::string detail;
  std::optional<Peak> prev;
  for (int n = 9; n <= 14; ++n) {
    const auto c = crest(r, n);
    if (!c) return {false, fmt("no crest at n=%d", n)};
    if (prev) ok = ok && c->h >= prev->h && c->width <= prev->width;
    detail += fmt("%sn=%d h=%.1f w=%.3f", n > 9 ? ", " : "", n, c->h, c->width);
    prev = c;
  }
  return {ok, detail};
}

Verdict theta_interpolation() {
  const auto basis = make_basis(12);
  const bool exact = theta_plus(basis, 0.0).amplitudes() == polarized(basis).amplitudes() &&
                     theta_plus(basis, std::numbers::pi / 2).amplitudes() == neel(basis).amplitudes();

  std::vector<int> ns;
  for (int n = 10; n <= 30; ++n) ns.push_back(n);
  const auto r = l12_sweep("theta:" + fmt("%.17g", std::numbers::pi / 4), ns);
  if (r.failed_cells()) return {false, "sweep cells failed"};
  std::vector<double> heights;
  std::vector<double> positions;
  for (int n : ns) {
    const auto c = crest(r, n);
    heights.push_back(c ? c->height : 0.0);
    positions.push_back(c ? c->h : std::nan(""));
  }
  const auto top = static_cast<std::size_t>(std::max_element(heights.begin(), heights.end()) - heights.begin());
  bool grows = top > 0;
  for (std::size_t k = 1; k <= top; ++k) grows = grows && heights[k] >= heights[k - 1];
  return {exact && grows,
          fmt("endpoints exact: %s; crest n=10 h=%.1f height %.3f -> max at n=%d h=%.1f height %.3f, "
              "nondecreasing: %s",
              exact ? "yes" : "no", positions[0], heights[0], ns[top], positions[top], heights[top],
              grows ? "yes" : "no")};
}

// ---- 10 -------------------------------------------------------------------

Verdict thermalization_contrast() {
  constexpr double pol_tol = 0.05, neel_min = 0.1;
  const int L = 12, periods = 800;
  const auto basis = make_basis(L);
  const DrivenChain chain(basis);
  const auto u = one_period_propagator(chain, DriveParams(2.4, 5.0));
  const double z_erg = ergodic_z_chain(L);
  auto mean_z = [&](const StateVector& psi) {
    const auto trace = thermalization_trace(u, psi, periods);
    double sum = 0.0;
    for (int n = 1; n <= periods; ++n) sum += trace.records[static_cast<std::size_t>(n)].chain.z;
    return sum / periods;
  };
  const double pol = mean_z(polarized(basis)) - z_erg;
  const double neel_dev = mean_z(neel(basis)) - z_erg;
  return {std::abs(pol) <= pol_tol && std::abs(neel_dev) > neel_min,
          fmt("Z_erg %.4f; polarized deviation %+.4f (|.| <= %.2f), Neel deviation %+.4f (|.| > %.1f)",
              z_erg, pol, pol_tol, neel_dev, neel_min)};
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const char* name, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
    std::fflush(stdout);
  };

  run(1, "basis dimension", basis_dimension);
  run(2, "ergodic formula", ergodic_formula);
  run(3, "propagator correctness", propagator_correctness);
  run(4, "Floquet consistency", floquet_consistency);
  run(5, "FSN narrowing", fsn_narrowing);
  run(6, "revival indices", revival_indices);
  std::optional<TableFits> fits;
  run(7, "fit table at L=10", [&] {
    fits = table_fits();
    return table_reproduction(*fits);
  });
  run(8, "minimal revival index", [&] {
    if (!fits) fits = table_fits();
    return minimal_revival(*fits);
  });
  run(9, "crest drift", crest_drift);
  run(10, "thermalization contrast", thermalization_contrast);
  run(11, "theta interpolation", theta_interpolation);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
