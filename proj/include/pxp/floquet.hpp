#pragma once

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pxp/propagation.hpp"

namespace pxp {

/// Spectral decomposition of a one-period propagator.
///
/// Quasi-energies are folded into (-omega_d/2, omega_d/2] and sorted
/// ascending; eigenvector columns follow the same order.
struct FloquetDecomposition {
  Eigen::VectorXd quasi_energies;
  Eigen::MatrixXcd eigenvectors;
  Eigen::VectorXcd eigenvalues;
  double period = 0.0;
  double omega_d = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(quasi_energies.size()); }
};

/// |c_m|^2 = |<psi0|eps_m>|^2 paired with the quasi-energies.
struct OverlapProfile {
  Eigen::VectorXd quasi_energies;
  Eigen::VectorXd weights;
  std::string label;
};

/// Quasi-energy level after merging numerically degenerate eigenvectors.
struct QuasiLevel {
  double quasi_energy;
  double weight;
  int multiplicity;
};

/// Gap below which Floquet states are treated as one degenerate level.
inline constexpr double kDegeneracyTolerance = 1e-8;
/// Default dominant-set threshold, as a fraction of the largest level weight.
inline constexpr double kDefaultEta = 0.25;

/// Reduces a raw quasi-energy into (-omega_d/2, omega_d/2]. Values already in
/// the zone are returned unchanged.
double fold_quasi_energy(double epsilon, double omega_d);

/// Complex Schur decomposition of U (diagonal for a unitary matrix), so the
/// eigenvectors are orthonormal even inside degenerate clusters.
/// Throws DecompositionError if V diag(lambda) V^dagger misses U by > 1e-7.
FloquetDecomposition decompose(const PropagatorMatrix& U);

/// max eps - min eps.
double bandwidth(const FloquetDecomposition& decomp);

OverlapProfile overlaps(const FloquetDecomposition& decomp, const StateVector& psi0,
                        std::string label = {});

/// Sorted levels with weights summed over clusters closer than `tolerance`.
std::vector<QuasiLevel> merge_degenerate(const OverlapProfile& profile,
                                         double tolerance = kDegeneracyTolerance);

/// Quasi-energy gap between the dominant level closest to zero and its
/// nearest dominant neighbour. A level is dominant when its (degeneracy
/// merged) weight is at least eta times the largest level weight.
/// Throws NoArcError when fewer than two levels are dominant.
double dominant_spacing(const OverlapProfile& profile, double eta = kDefaultEta);

/// omega_d / delta_eps; +infinity for a vanishing spacing.
double revival_index(double delta_eps, double omega_d);

/// |sum_m |c_m|^2 exp(-i eps_m n T)|^2, the stroboscopic fidelity
/// reconstructed from the Floquet expansion of the initial state.
double spectral_fidelity(const OverlapProfile& profile, double period, int n);

}  // namespace pxp
