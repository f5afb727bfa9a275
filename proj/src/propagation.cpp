#include "pxp/propagation.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kDriftFailure = 1e-6;

/// exp(+i n_k (h/w)(cos w t_a - cos w t_b)): the drive term -h sin(w t) N
/// integrated exactly over [t_a, t_b].
Eigen::VectorXcd drive_phase(const Eigen::VectorXd& number, double h, double omega_d, double ta,
                             double tb) {
  const double angle = (h / omega_d) * (std::cos(omega_d * ta) - std::cos(omega_d * tb));
  Eigen::VectorXcd out(number.size());
  for (Eigen::Index k = 0; k < number.size(); ++k) out(k) = std::polar(1.0, number(k) * angle);
  return out;
}

void check_rabi(const DrivenChain& chain, const DriveParams& params) {
  if (params.omega_rabi() != chain.omega_rabi()) {
    throw DomainError("drive parameters and chain disagree on the Rabi frequency");
  }
}

}  // namespace

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw InvalidStateError("state vector without a basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw InvalidStateError("state vector length " + std::to_string(amplitudes_.size()) +
                            " does not match basis size " + std::to_string(basis_->size()));
  }
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw InvalidStateError("state vector is not normalized (norm " + std::to_string(norm) + ")");
  }
}

bool StateVector::same_space(const StateVector& other) const {
  return basis_ == other.basis_ ||
         (basis_->sites() == other.basis_->sites() && basis_->size() == other.basis_->size());
}

DrivenChain::DrivenChain(BasisPtr basis, double omega_rabi)
    : basis_(std::move(basis)), omega_rabi_(omega_rabi) {
  hamiltonian_ = build_pxp(*basis_, omega_rabi_).to_dense().real();
  number_ = build_number_diagonal(*basis_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian_);
  if (solver.info() != Eigen::Success) throw DecompositionError("PXP diagonalization failed");
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd DrivenChain::static_exponential(double dt) const {
  Eigen::VectorXcd phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::polar(1.0, -energies_(k) * dt);
  const Eigen::MatrixXcd v = eigenvectors_.cast<Complex>();
  Eigen::MatrixXcd k = v * phases.asDiagonal() * v.transpose();
  // Real symmetric H gives a complex symmetric kernel; remove rounding asymmetry.
  Eigen::MatrixXcd sym = 0.5 * (k + k.transpose());
  return sym;
}

double PropagatorMatrix::unitarity_error() const {
  const auto n = matrix.rows();
  return (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

StateVector propagate(const DrivenChain& chain, const StateVector& state, double t0, double t1,
                      const DriveParams& params, int steps) {
  if (steps < 1) throw DomainError("propagate: steps must be >= 1");
  if (!(t1 >= t0)) throw DomainError("propagate: t1 must not precede t0");
  if (state.size() != chain.dim()) throw InvalidStateError("propagate: state/chain size mismatch");
  check_rabi(chain, params);

  const double dt = (t1 - t0) / steps;
  const Eigen::MatrixXcd kernel = chain.static_exponential(dt);
  const double h = params.h();
  const double w = params.omega_d();

  Eigen::VectorXcd psi = state.amplitudes();
  Eigen::VectorXcd tmp(psi.size());
  for (int k = 0; k < steps; ++k) {
    const double ta = t0 + k * dt;
    const double tm = t0 + (k + 0.5) * dt;
    const double tb = t0 + (k + 1) * dt;
    psi = psi.cwiseProduct(drive_phase(chain.number(), h, w, ta, tm));
    tmp.noalias() = kernel * psi;
    psi = tmp.cwiseProduct(drive_phase(chain.number(), h, w, tm, tb));
  }
  const double drift = std::abs(psi.norm() - 1.0);
  if (drift > kDriftFailure) {
    throw IntegrationError("propagate: norm drift " + std::to_string(drift) +
                           " (time step too coarse?)");
  }
  return StateVector(state.basis(), std::move(psi));
}

PeriodPropagator::PeriodPropagator(const DrivenChain& chain, double omega_d, int steps)
    : chain_(&chain), omega_d_(omega_d), steps_(steps) {
  if (steps < 16) throw DomainError("one-period propagator needs at least 16 steps");
  if (!(omega_d > 0.0)) throw DomainError("drive frequency must be positive");
  const double period = DriveParams(0.0, omega_d, chain.omega_rabi()).period();
  kernel_ = chain.static_exponential(period / steps);
}

Eigen::MatrixXcd PeriodPropagator::product(double h, int first, int last) const {
  const double period = DriveParams(h, omega_d_, chain_->omega_rabi()).period();
  const double dt = period / steps_;
  const Eigen::VectorXd& number = chain_->number();
  const auto t = [dt](double k) { return k * dt; };

  const auto n = static_cast<Eigen::Index>(chain_->dim());
  Eigen::MatrixXcd m = drive_phase(number, h, omega_d_, t(first), t(first + 0.5)).asDiagonal() *
                       Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd tmp(n, n);
  for (int k = first; k < last; ++k) {
    tmp.noalias() = kernel_ * m;
    // Closing half of substep k merged with the opening half of substep k+1.
    Eigen::VectorXcd p = drive_phase(number, h, omega_d_, t(k + 0.5), t(k + 1));
    if (k + 1 < last) p = p.cwiseProduct(drive_phase(number, h, omega_d_, t(k + 1), t(k + 1.5)));
    m.noalias() = p.asDiagonal() * tmp;
  }
  return m;
}

PropagatorMatrix PeriodPropagator::build(double h) const {
  const DriveParams params(h, omega_d_, chain_->omega_rabi());
  Eigen::MatrixXcd u;
  if (steps_ % 4 == 0) {
    // Exact symmetries of the discretized drive:
    //  * H(T/2 - t) = H(t) with H real makes the second quarter the transpose
    //    of the first, so U(T/2) = A^T A.
    //  * H(t + T/2) = -C H(t) C with C = prod Z_j gives U(T, T/2) = C conj(U(T/2)) C.
    const Eigen::MatrixXcd a = product(h, 0, steps_ / 4);
    const Eigen::MatrixXcd half = a.transpose() * a;
    Eigen::VectorXd sign(chain_->dim());
    for (Eigen::Index k = 0; k < sign.size(); ++k) {
      sign(k) = (static_cast<long>(chain_->number()(k)) % 2 == 0) ? 1.0 : -1.0;
    }
    const Eigen::MatrixXcd second = sign.asDiagonal() * half.conjugate() * sign.asDiagonal();
    u = second * half;
  } else {
    u = product(h, 0, steps_);
  }
  PropagatorMatrix out{std::move(u), params, steps_, chain_->basis()};
  const double err = out.unitarity_error();
  if (err > kDriftFailure) {
    throw IntegrationError("one-period propagator lost unitarity (" + std::to_string(err) + ")");
  }
  return out;
}

PropagatorMatrix one_period_propagator(const DrivenChain& chain, const DriveParams& params,
                                       int steps) {
  check_rabi(chain, params);
  return PeriodPropagator(chain, params.omega_d(), steps).build(params.h());
}

void for_each_stroboscopic(const PropagatorMatrix& U, const StateVector& psi0, int n_max,
                           const std::function<void(int, const Eigen::VectorXcd&)>& visit) {
  if (psi0.size() != U.dim()) throw InvalidStateError("orbit: state/propagator size mismatch");
  if (n_max < 0) throw DomainError("orbit: n_max must be >= 0");
  Eigen::VectorXcd psi = psi0.amplitudes();
  Eigen::VectorXcd next(psi.size());
  visit(0, psi);
  for (int n = 1; n <= n_max; ++n) {
    next.noalias() = U.matrix * psi;
    psi.swap(next);
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > kDriftFailure) {
      throw IntegrationError("orbit: norm drift " + std::to_string(drift) + " at n = " +
                             std::to_string(n));
    }
    visit(n, psi);
  }
}

std::vector<StateVector> stroboscopic_orbit(const PropagatorMatrix& U, const StateVector& psi0,
                                            int n_max) {
  std::vector<StateVector> orbit;
  orbit.reserve(static_cast<std::size_t>(n_max) + 1);
  for_each_stroboscopic(U, psi0, n_max, [&](int, const Eigen::VectorXcd& psi) {
    orbit.emplace_back(psi0.basis(), psi);
  });
  return orbit;
}

}  // namespace pxp
