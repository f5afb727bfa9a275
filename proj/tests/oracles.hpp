#pragma once

// Independent reference implementations used only by the tests. They work in
// the full 2^L space or by brute force and share no code with the library
// beyond plain types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

inline bool blockaded(std::uint32_t s, int sites) {
  for (int j = 0; j + 1 < sites; ++j) {
    if (((s >> j) & 1u) && ((s >> (j + 1)) & 1u)) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> brute_force_basis(int sites) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << sites); ++s) {
    if (blockaded(s, sites)) out.push_back(s);
  }
  return out;
}

inline bool excited(std::uint32_t s, int site) { return (s >> (site - 1)) & 1u; }

/// Full-space single-site operator; |1> is excited, Z|1> = +|1>,
/// <1|Y|0> = +i.
inline Eigen::MatrixXcd full_site(int sites, int site, char which) {
  const int dim = 1 << sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    const bool up = excited(static_cast<std::uint32_t>(s), site);
    const int t = s ^ (1 << (site - 1));
    switch (which) {
      case 'X': m(t, s) = 1.0; break;
      case 'Y': m(t, s) = up ? Complex(0, -1) : Complex(0, 1); break;
      case 'Z': m(s, s) = up ? 1.0 : -1.0; break;
      case 'N': m(s, s) = up ? 1.0 : 0.0; break;
      case 'P': m(s, s) = up ? 0.0 : 1.0; break;
    }
  }
  return m;
}

/// Sum over sites of P_{j-1} X_j P_{j+1} (open chain) times omega/2, built
/// from full-space matrix products.
inline Eigen::MatrixXcd full_pxp(int sites, double omega = 1.0) {
  const int dim = 1 << sites;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 1; j <= sites; ++j) {
    Eigen::MatrixXcd term = full_site(sites, j, 'X');
    if (j > 1) term = full_site(sites, j - 1, 'P') * term;
    if (j < sites) term = term * full_site(sites, j + 1, 'P');
    h += term;
  }
  return 0.5 * omega * h;
}

/// Isometry from the blockaded subspace (ascending patterns) into 2^L.
inline Eigen::MatrixXcd embedding(int sites) {
  const auto states = brute_force_basis(sites);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(1 << sites, static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) e(states[k], static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

/// P O P expressed in subspace coordinates.
inline Eigen::MatrixXcd restrict(const Eigen::MatrixXcd& full, int sites) {
  const Eigen::MatrixXcd e = embedding(sites);
  return e.adjoint() * full * e;
}

/// PXP directly in subspace coordinates by flipping every site whose
/// neighbours are down; the full-space route above is too costly past L = 8.
inline Eigen::MatrixXcd subspace_pxp(int sites, double omega = 1.0) {
  const auto states = brute_force_basis(sites);
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::uint32_t s = states[static_cast<std::size_t>(k)];
    for (int j = 1; j <= sites; ++j) {
      if (j > 1 && excited(s, j - 1)) continue;
      if (j < sites && excited(s, j + 1)) continue;
      const std::uint32_t t = s ^ (1u << (j - 1));
      const auto it = std::lower_bound(states.begin(), states.end(), t);
      h(it - states.begin(), k) += 0.5 * omega;
    }
  }
  return h;
}

/// 2x2 reduced state of one site by explicit partial trace, ordering (|1>, |0>).
inline Eigen::Matrix2cd partial_trace(const Eigen::VectorXcd& psi, int sites, int site) {
  const auto states = brute_force_basis(sites);
  const int dim = 1 << sites;
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
  for (std::size_t k = 0; k < states.size(); ++k) full[states[k]] = psi[static_cast<Eigen::Index>(k)];
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const int bit = 1 << (site - 1);
  for (int rest = 0; rest < dim; ++rest) {
    if (rest & bit) continue;
    const Complex up = full[rest | bit];
    const Complex down = full[rest];
    rho(0, 0) += up * std::conj(up);
    rho(0, 1) += up * std::conj(down);
    rho(1, 0) += down * std::conj(up);
    rho(1, 1) += down * std::conj(down);
  }
  return rho;
}

/// Classical fourth-order Runge-Kutta for i d/dt psi = H(t) psi with
/// H(t) = H0 - h sin(w t) diag(n); reference for the splitting scheme.
inline Eigen::MatrixXcd rk4_propagator(const Eigen::MatrixXcd& h0, const Eigen::VectorXd& number,
                                       double h, double w, double t1, int steps) {
  const Eigen::Index dim = h0.rows();
  auto rhs = [&](double t, const Eigen::MatrixXcd& y) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd out = h0 * y;
    const double v = h * std::sin(w * t);
    for (Eigen::Index r = 0; r < dim; ++r) out.row(r) -= v * number[r] * y.row(r);
    return Complex(0, -1) * out;
  };
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Identity(dim, dim);
  const double dt = t1 / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Eigen::MatrixXcd k1 = rhs(t, y);
    const Eigen::MatrixXcd k2 = rhs(t + dt / 2, y + dt / 2 * k1);
    const Eigen::MatrixXcd k3 = rhs(t + dt / 2, y + dt / 2 * k2);
    const Eigen::MatrixXcd k4 = rhs(t + dt, y + dt * k3);
    y += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

/// exp(-i H t) for Hermitian H by dense diagonalization.
inline Eigen::MatrixXcd spectral_exp(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0, -t)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline std::uint64_t fib(int n) {
  std::uint64_t a = 1, b = 1;
  for (int k = 2; k < n; ++k) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return n <= 2 ? 1 : b;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
