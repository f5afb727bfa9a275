#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pxp/basis.hpp"

namespace pxp {

using Complex = std::complex<double>;

/// Sparse matrix in coordinate form, entries sorted row-major.
struct SparseOperator {
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
    bool operator==(const Entry&) const = default;
  };

  std::size_t dim = 0;
  std::vector<Entry> entries;
  bool hermitian = false;

  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  /// <v|O|v> (real part only when the operator is Hermitian).
  Complex expectation(const Eigen::VectorXcd& v) const;
  /// Exact check of the Hermitian closure (row,col,v) <-> (col,row,conj v).
  bool is_hermitian_closed() const;
};

enum class Pauli { X, Y, Z, N };

/// Drive parameters of H(t) = H_PXP - h sin(omega_d t) N, energies in units
/// of the Rabi frequency.
class DriveParams {
 public:
  DriveParams(double h, double omega_d, double omega_rabi = 1.0);

  double h() const { return h_; }
  double omega_d() const { return omega_d_; }
  double omega_rabi() const { return omega_rabi_; }
  double period() const { return period_; }

 private:
  double h_;
  double omega_d_;
  double omega_rabi_;
  double period_;
};

/// Static PXP Hamiltonian with open boundaries, (Omega/2) on every legal
/// single-site flip.
SparseOperator build_pxp(const BlockadedBasis& basis, double omega_rabi = 1.0);

/// Total excitation number of each basis pattern.
Eigen::VectorXd build_number_diagonal(const BlockadedBasis& basis);

/// Single-site operator restricted to the blockaded subspace. Sites are
/// 1-based. Flips that leave the subspace are dropped. Y carries +i when the
/// flip excites the site and -i when it de-excites it.
SparseOperator build_site_operator(const BlockadedBasis& basis, int site, Pauli which);

/// For each ordinal k, the ordinal of k with `site` flipped, or -1 when the
/// flip leaves the subspace.
std::vector<std::ptrdiff_t> flip_table(const BlockadedBasis& basis, int site);

}  // namespace pxp
