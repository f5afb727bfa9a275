#pragma once

#include <string>
#include <vector>

#include "pxp/fit.hpp"
#include "pxp/floquet.hpp"
#include "pxp/parallel.hpp"
#include "pxp/propagation.hpp"

namespace pxp {

struct SweepGrid {
  std::vector<double> h_values;        // ascending, >= 0
  std::vector<double> omega_d_values;  // ascending, > 0
  int sites = 0;
  std::string state = "neel";
  std::vector<int> n_values;  // stroboscopic steps to record
  int steps_per_period = kDefaultStepsPerPeriod;

  /// Throws DomainError if an invariant is violated.
  void validate() const;
};

struct SweepRow {
  double omega_d;
  double h;
  int n;
  double fidelity;  // NaN when the cell failed
};

struct SweepCell {
  double omega_d;
  double h;
  bool ok = true;
  std::string error;
  double unitarity_error = 0.0;
};

/// Rows are ordered by (omega_d, h, n) following the grid, regardless of the
/// number of workers.
struct SweepResult {
  SweepGrid grid;
  std::vector<SweepRow> rows;
  std::vector<SweepCell> cells;

  std::size_t failed_cells() const;
  double max_unitarity_error() const;
  /// Fidelities at fixed (omega_d, n) along the h grid.
  std::vector<double> slice(double omega_d, int n) const;
};

/// Builds U(T) for every (omega_d, h) cell and records F(nT) = |<psi(nT)|psi(0)>|^2
/// for each requested n. A cell whose propagator fails is flagged and the
/// sweep continues.
SweepResult fidelity_sweep(const SweepGrid& grid, int workers = default_workers());

struct RevivalEstimate {
  double h;
  double delta_eps;  // NaN when no arc was found
  double n_rev;      // NaN when no arc was found
  bool ok = true;
  std::string error;
};

/// Dominant spacing and revival index along h at fixed omega_d. Every h must
/// lie below the first zero of J0(h/omega_d). A point without an arc is
/// reported with ok = false rather than aborting the profile.
std::vector<RevivalEstimate> nrev_profile(const std::vector<double>& h_values, double omega_d,
                                          int sites, double eta = kDefaultEta,
                                          const std::string& state = "neel",
                                          int steps = kDefaultStepsPerPeriod,
                                          int workers = default_workers());

std::vector<RevivalPoint> revival_points(const std::vector<RevivalEstimate>& profile);

/// start, start + step, ... keeping points closer than half a step beyond stop.
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace pxp
