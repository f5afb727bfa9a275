#include "pxp/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

constexpr double kReconstructionTolerance = 1e-7;
constexpr double kClusterGap = 1e-10;

// Modified Gram-Schmidt over the columns [first, last).
void orthonormalize(Eigen::MatrixXcd& v, Eigen::Index first, Eigen::Index last) {
  for (Eigen::Index j = first; j < last; ++j) {
    for (Eigen::Index i = first; i < j; ++i) {
      const Complex proj = v.col(i).dot(v.col(j));
      v.col(j) -= proj * v.col(i);
    }
    v.col(j).normalize();
  }
}

}  // namespace

double fold_quasi_energy(double epsilon, double omega_d) {
  const double half = omega_d / 2.0;
  if (epsilon > -half && epsilon <= half) return epsilon;
  double r = std::fmod(epsilon + half, omega_d);
  if (r <= 0.0) r += omega_d;
  return r - half;
}

FloquetDecomposition decompose(const PropagatorMatrix& U) {
  const double period = U.params.period();
  const double omega_d = U.params.omega_d();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U.matrix, true);
  if (schur.info() != Eigen::Success) throw DecompositionError("Schur decomposition failed");

  const Eigen::VectorXcd lambda = schur.matrixT().diagonal();
  const auto n = lambda.size();
  Eigen::VectorXd eps(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    double phase = std::arg(lambda(m));
    if (phase >= std::numbers::pi) phase = -std::numbers::pi;
    eps(m) = fold_quasi_energy(-phase / period, omega_d);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return eps(a) < eps(b); });

  FloquetDecomposition out;
  out.period = period;
  out.omega_d = omega_d;
  out.quasi_energies.resize(n);
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.quasi_energies(k) = eps(src);
    out.eigenvalues(k) = lambda(src);
    out.eigenvectors.col(k) = schur.matrixU().col(src);
  }

  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.quasi_energies(stop) - out.quasi_energies(stop - 1) < kClusterGap) ++stop;
    if (stop - start > 1) orthonormalize(out.eigenvectors, start, stop);
    start = stop;
  }

  for (Eigen::Index m = 0; m < n; ++m) {
    if (std::abs(std::abs(out.eigenvalues(m)) - 1.0) > 1e-8) {
      throw DecompositionError("Floquet eigenvalue off the unit circle");
    }
  }
  const Eigen::MatrixXcd rebuilt =
      out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.adjoint();
  const double err = (rebuilt - U.matrix).cwiseAbs().maxCoeff();
  if (err > kReconstructionTolerance) {
    throw DecompositionError("Floquet reconstruction error " + std::to_string(err));
  }
  return out;
}

double bandwidth(const FloquetDecomposition& decomp) {
  if (decomp.size() == 0) return 0.0;
  return decomp.quasi_energies.maxCoeff() - decomp.quasi_energies.minCoeff();
}

OverlapProfile overlaps(const FloquetDecomposition& decomp, const StateVector& psi0,
                        std::string label) {
  if (psi0.size() != decomp.size()) throw InvalidStateError("overlaps: dimension mismatch");
  const Eigen::VectorXcd c = decomp.eigenvectors.adjoint() * psi0.amplitudes();
  return OverlapProfile{decomp.quasi_energies, c.cwiseAbs2(), std::move(label)};
}

std::vector<QuasiLevel> merge_degenerate(const OverlapProfile& profile, double tolerance) {
  const auto n = profile.quasi_energies.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return profile.quasi_energies(a) < profile.quasi_energies(b);
  });

  std::vector<QuasiLevel> levels;
  double last = 0.0;
  for (auto m : order) {
    const double e = profile.quasi_energies(m);
    if (!levels.empty() && e - last < tolerance) {
      auto& lv = levels.back();
      lv.quasi_energy = (lv.quasi_energy * lv.multiplicity + e) / (lv.multiplicity + 1);
      lv.weight += profile.weights(m);
      ++lv.multiplicity;
    } else {
      levels.push_back({e, profile.weights(m), 1});
    }
    last = e;
  }
  return levels;
}

double dominant_spacing(const OverlapProfile& profile, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("dominant_spacing: eta must lie in (0, 1)");
  const auto levels = merge_degenerate(profile);
  double top = 0.0;
  for (const auto& lv : levels) top = std::max(top, lv.weight);

  std::vector<double> dominant;
  for (const auto& lv : levels) {
    if (lv.weight >= eta * top) dominant.push_back(lv.quasi_energy);
  }
  if (dominant.size() < 2) {
    throw NoArcError("only " + std::to_string(dominant.size()) +
                     " dominant quasi-energy level(s) at eta = " + std::to_string(eta));
  }
  const auto centre = std::min_element(dominant.begin(), dominant.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
  double gap = std::numeric_limits<double>::infinity();
  for (auto it = dominant.begin(); it != dominant.end(); ++it) {
    if (it != centre) gap = std::min(gap, std::abs(*it - *centre));
  }
  return gap;
}

double revival_index(double delta_eps, double omega_d) {
  if (delta_eps < 0.0) throw DomainError("revival_index: negative spacing");
  if (delta_eps == 0.0) return std::numeric_limits<double>::infinity();
  return omega_d / delta_eps;
}

double spectral_fidelity(const OverlapProfile& profile, double period, int n) {
  Complex acc{0.0, 0.0};
  for (Eigen::Index m = 0; m < profile.weights.size(); ++m) {
    acc += profile.weights(m) * std::polar(1.0, -profile.quasi_energies(m) * n * period);
  }
  return std::norm(acc);
}

}  // namespace pxp
