#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pxp/basis.hpp"
#include "pxp/operators.hpp"

namespace pxp {

/// Normalized amplitude vector over a blockaded basis.
class StateVector {
 public:
  /// Throws InvalidStateError if the size does not match the basis or the
  /// norm differs from one by more than 1e-9.
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const BasisPtr& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

  bool same_space(const StateVector& other) const;

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

/// The static part of the driven chain: H_PXP, its spectral decomposition and
/// the number operator diagonal. Immutable and shareable across workers.
class DrivenChain {
 public:
  explicit DrivenChain(BasisPtr basis, double omega_rabi = 1.0);

  const BasisPtr& basis() const { return basis_; }
  std::size_t dim() const { return basis_->size(); }
  double omega_rabi() const { return omega_rabi_; }
  const Eigen::MatrixXd& hamiltonian() const { return hamiltonian_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  const Eigen::VectorXd& number() const { return number_; }

  /// exp(-i H_PXP dt) via the spectral decomposition.
  Eigen::MatrixXcd static_exponential(double dt) const;

 private:
  BasisPtr basis_;
  double omega_rabi_;
  Eigen::MatrixXd hamiltonian_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd number_;
};

/// One-period Floquet propagator U(T, 0).
struct PropagatorMatrix {
  Eigen::MatrixXcd matrix;
  DriveParams params;
  int steps_per_period;
  BasisPtr basis;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  /// max |(U^dagger U - 1)_ij|
  double unitarity_error() const;
};

inline constexpr int kDefaultStepsPerPeriod = 512;

/// Second-order Strang evolution of `state` from t0 to t1 with `steps`
/// uniform substeps. Each substep applies the exactly integrated drive phase
/// over its first half, the static kernel, then the drive phase over its
/// second half. Throws IntegrationError if the norm drifts by more than 1e-6.
StateVector propagate(const DrivenChain& chain, const StateVector& state, double t0, double t1,
                      const DriveParams& params, int steps);

/// Builds U(T,0) for many drive amplitudes at fixed (L, omega_d, steps).
/// The static kernel is computed once and shared by every build() call.
class PeriodPropagator {
 public:
  /// The chain must outlive the builder.
  PeriodPropagator(const DrivenChain& chain, double omega_d, int steps);

  /// Throws IntegrationError if max |U^dagger U - 1| exceeds 1e-6.
  PropagatorMatrix build(double h) const;

  int steps() const { return steps_; }
  double omega_d() const { return omega_d_; }

 private:
  Eigen::MatrixXcd product(double h, int first, int last) const;

  const DrivenChain* chain_;
  double omega_d_;
  int steps_;
  Eigen::MatrixXcd kernel_;
};

/// U(T,0); steps must be at least 16.
PropagatorMatrix one_period_propagator(const DrivenChain& chain, const DriveParams& params,
                                       int steps = kDefaultStepsPerPeriod);

/// psi0, U psi0, ..., U^n_max psi0 by repeated application.
std::vector<StateVector> stroboscopic_orbit(const PropagatorMatrix& U, const StateVector& psi0,
                                            int n_max);

/// Streaming variant of stroboscopic_orbit: calls visit(n, amplitudes) for
/// n = 0..n_max without storing the orbit.
void for_each_stroboscopic(const PropagatorMatrix& U, const StateVector& psi0, int n_max,
                           const std::function<void(int, const Eigen::VectorXcd&)>& visit);

}  // namespace pxp
