#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pxp/propagation.hpp"

namespace pxp {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
  bool operator==(const BlochVector&) const = default;
};

/// Precomputed flip tables for fast single-site expectations on one basis.
class SiteObservables {
 public:
  explicit SiteObservables(const BlockadedBasis& basis);

  int sites() const { return static_cast<int>(flips_.size()); }
  /// (<X_j>, <Y_j>, <Z_j>) for the 1-based site j.
  BlochVector bloch(const Eigen::VectorXcd& amplitudes, int site) const;

 private:
  std::vector<std::vector<std::ptrdiff_t>> flips_;
  std::vector<Pattern> states_;
};

/// Single-site Bloch vector of `state` at the 1-based `site`.
BlochVector bloch_vector(const BlockadedBasis& basis, const StateVector& state, int site);

/// Site magnetization of the uniform mixture over the blockaded basis,
/// (F_j F_{L-j+1} - F_{j+1} F_{L-j+2}) / F_{L+2}.
double ergodic_z(int site, int sites);

/// (0, 0, ergodic_z(site, L)).
BlochVector ergodic_bloch(int site, int sites);

/// Mean of ergodic_z over the chain.
double ergodic_z_chain(int sites);

/// Trace distance between single-site states, half the Bloch distance.
double instantaneous_distance(const BlochVector& r, const BlochVector& r_erg);

/// One stroboscopic sample of the single-site diagnostics.
struct ThermalizationRecord {
  int n = 0;
  double t = 0.0;
  std::vector<BlochVector> sites;  // site j at index j-1
  BlochVector chain;               // (X, Y, Z) averaged over sites
  std::vector<double> d_inst;
  /// Distance of the running mean over samples 1..n (NaN at n = 0).
  std::vector<double> d_avg;
  double chain_d_inst = 0.0;
  double chain_d_avg = 0.0;
};

struct ThermalizationTrace {
  int sites = 0;
  double period = 0.0;
  std::vector<ThermalizationRecord> records;  // n = 0..n_max
};

/// Runs the stroboscopic orbit of psi0 and records the diagnostics at every
/// period, n = 0..n_max.
ThermalizationTrace thermalization_trace(const PropagatorMatrix& U, const StateVector& psi0,
                                         int n_max);

/// Distance of the mean Bloch vector over samples 1..n from the ergodic one.
/// Time averages are discrete means over stroboscopic samples.
/// site = 0 selects the chain average. Throws DomainError for n = 0 or n
/// beyond the trace.
double time_averaged_distance(const ThermalizationTrace& trace, int site, int n);

/// Population standard deviation.
double signal_std(std::span<const double> values);

/// Single-site density matrix in the (|1>, |0>) ordering,
/// (1 + x X + y Y + z Z) / 2.
Eigen::Matrix2cd reduced_single_site(const BlockadedBasis& basis, const StateVector& state,
                                     int site);

}  // namespace pxp
