#include "pxp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pxp/errors.hpp"
#include "pxp/special.hpp"
#include "pxp/states.hpp"

namespace pxp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void SweepGrid::validate() const {
  if (h_values.empty() || omega_d_values.empty()) throw DomainError("sweep grid is empty");
  if (n_values.empty()) throw DomainError("sweep grid has no stroboscopic steps");
  for (double h : h_values) {
    if (!(h >= 0.0)) throw DomainError("sweep amplitudes must be >= 0");
  }
  for (double w : omega_d_values) {
    if (!(w > 0.0)) throw DomainError("sweep frequencies must be > 0");
  }
  if (!std::is_sorted(h_values.begin(), h_values.end()) ||
      !std::is_sorted(omega_d_values.begin(), omega_d_values.end())) {
    throw DomainError("sweep axes must be ascending");
  }
  for (int n : n_values) {
    if (n < 0) throw DomainError("stroboscopic steps must be >= 0");
  }
  if (steps_per_period < 16) throw DomainError("steps per period must be >= 16");
  validate_state_spec(state);
}

std::size_t SweepResult::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.ok; }));
}

double SweepResult::max_unitarity_error() const {
  double worst = 0.0;
  for (const auto& c : cells) {
    if (c.ok) worst = std::max(worst, c.unitarity_error);
  }
  return worst;
}

std::vector<double> SweepResult::slice(double omega_d, int n) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.omega_d == omega_d && r.n == n) out.push_back(r.fidelity);
  }
  return out;
}

SweepResult fidelity_sweep(const SweepGrid& grid, int workers) {
  grid.validate();
  const auto basis = make_basis(grid.sites);
  const DrivenChain chain(basis);
  const StateVector psi0 = make_state(basis, grid.state);
  const int n_max = *std::max_element(grid.n_values.begin(), grid.n_values.end());

  const std::size_t nh = grid.h_values.size();
  const std::size_t nn = grid.n_values.size();
  SweepResult result;
  result.grid = grid;
  result.cells.resize(grid.omega_d_values.size() * nh);
  result.rows.resize(result.cells.size() * nn);

  for (std::size_t wi = 0; wi < grid.omega_d_values.size(); ++wi) {
    const double omega_d = grid.omega_d_values[wi];
    const PeriodPropagator builder(chain, omega_d, grid.steps_per_period);
    parallel_for(nh, workers, [&](std::size_t hi) {
      const double h = grid.h_values[hi];
      const std::size_t cell_index = wi * nh + hi;
      SweepCell& cell = result.cells[cell_index];
      cell.omega_d = omega_d;
      cell.h = h;
      std::vector<double> by_step(static_cast<std::size_t>(n_max) + 1, kNaN);
      try {
        const PropagatorMatrix u = builder.build(h);
        cell.unitarity_error = u.unitarity_error();
        const Eigen::VectorXcd& ref = psi0.amplitudes();
        for_each_stroboscopic(u, psi0, n_max, [&](int n, const Eigen::VectorXcd& psi) {
          by_step[static_cast<std::size_t>(n)] = std::norm(psi.dot(ref));
        });
      } catch (const IntegrationError& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      for (std::size_t ni = 0; ni < nn; ++ni) {
        const int n = grid.n_values[ni];
        result.rows[cell_index * nn + ni] = {omega_d, h, n, by_step[static_cast<std::size_t>(n)]};
      }
    });
  }
  return result;
}

std::vector<RevivalEstimate> nrev_profile(const std::vector<double>& h_values, double omega_d,
                                          int sites, double eta, const std::string& state,
                                          int steps, int workers) {
  for (double h : h_values) {
    if (!(h >= 0.0 && h < kBesselJ0FirstZero * omega_d)) {
      throw DomainError("nrev_profile: h = " + std::to_string(h) +
                        " is not below the first J0 zero (h < 2.4048 omega_d)");
    }
  }
  const auto basis = make_basis(sites);
  const DrivenChain chain(basis);
  const StateVector psi0 = make_state(basis, state);
  const PeriodPropagator builder(chain, omega_d, steps);

  std::vector<RevivalEstimate> out(h_values.size());
  parallel_for(h_values.size(), workers, [&](std::size_t i) {
    const double h = h_values[i];
    RevivalEstimate est{h, kNaN, kNaN, true, {}};
    try {
      const auto decomp = decompose(builder.build(h));
      const auto profile = overlaps(decomp, psi0, state);
      est.delta_eps = dominant_spacing(profile, eta);
      est.n_rev = revival_index(est.delta_eps, omega_d);
    } catch (const NoArcError& e) {
      est.ok = false;
      est.error = e.what();
    }
    out[i] = std::move(est);
  });
  return out;
}

std::vector<RevivalPoint> revival_points(const std::vector<RevivalEstimate>& profile) {
  std::vector<RevivalPoint> pts;
  for (const auto& e : profile) {
    if (e.ok && std::isfinite(e.n_rev)) pts.push_back({e.h, e.n_rev});
  }
  return pts;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (stop < start) throw DomainError("grid stop precedes start");
  if (stop == start) return {start};
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  const auto count = static_cast<std::size_t>(std::ceil((stop - start) / step + 0.5));
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

}  // namespace pxp
