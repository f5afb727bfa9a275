#include "pxp/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

void check_site(const BlockadedBasis& basis, int site) {
  if (site < 1 || site > basis.sites()) {
    throw DomainError("site " + std::to_string(site) + " outside [1, " +
                      std::to_string(basis.sites()) + "]");
  }
}

void sort_row_major(SparseOperator& op) {
  std::sort(op.entries.begin(), op.entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

}  // namespace

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (const auto& e : entries) out(e.row) += e.value * v(e.col);
  return out;
}

Complex SparseOperator::expectation(const Eigen::VectorXcd& v) const {
  Complex acc{0.0, 0.0};
  for (const auto& e : entries) acc += std::conj(v(e.row)) * e.value * v(e.col);
  return hermitian ? Complex{acc.real(), 0.0} : acc;
}

bool SparseOperator::is_hermitian_closed() const {
  const auto row_major = [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  };
  for (const auto& e : entries) {
    const Entry probe{e.col, e.row, {}};
    auto it = std::lower_bound(entries.begin(), entries.end(), probe, row_major);
    if (it == entries.end() || it->row != e.col || it->col != e.row) return false;
    if (it->value != std::conj(e.value)) return false;
  }
  return true;
}

DriveParams::DriveParams(double h, double omega_d, double omega_rabi)
    : h_(h), omega_d_(omega_d), omega_rabi_(omega_rabi) {
  if (!(omega_d > 0.0) || !std::isfinite(omega_d)) {
    throw DomainError("drive frequency must be positive and finite");
  }
  if (!std::isfinite(h)) throw DomainError("drive amplitude must be finite");
  period_ = 2.0 * std::numbers::pi / omega_d_;
}

std::vector<std::ptrdiff_t> flip_table(const BlockadedBasis& basis, int site) {
  check_site(basis, site);
  const Pattern bit = Pattern{1} << (site - 1);
  std::vector<std::ptrdiff_t> table(basis.size(), -1);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (auto t = basis.find(basis.state(k) ^ bit)) table[k] = static_cast<std::ptrdiff_t>(*t);
  }
  return table;
}

SparseOperator build_pxp(const BlockadedBasis& basis, double omega_rabi) {
  SparseOperator op;
  op.dim = basis.size();
  op.hermitian = true;
  const Complex amp{omega_rabi / 2.0, 0.0};
  // P X P only permits flips whose neighbours are empty, which is exactly the
  // set of flips that keep the pattern blockaded.
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Pattern s = basis.state(k);
    for (int b = 0; b < basis.sites(); ++b) {
      if (auto t = basis.find(s ^ (Pattern{1} << b))) op.entries.push_back({*t, k, amp});
    }
  }
  sort_row_major(op);
  return op;
}

Eigen::VectorXd build_number_diagonal(const BlockadedBasis& basis) {
  Eigen::VectorXd d(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) d(k) = std::popcount(basis.state(k));
  return d;
}

SparseOperator build_site_operator(const BlockadedBasis& basis, int site, Pauli which) {
  check_site(basis, site);
  SparseOperator op;
  op.dim = basis.size();
  op.hermitian = true;
  const Pattern bit = Pattern{1} << (site - 1);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Pattern s = basis.state(k);
    const bool excited = (s & bit) != 0;
    switch (which) {
      case Pauli::Z:
        op.entries.push_back({k, k, Complex{excited ? 1.0 : -1.0, 0.0}});
        break;
      case Pauli::N:
        if (excited) op.entries.push_back({k, k, Complex{1.0, 0.0}});
        break;
      case Pauli::X:
      case Pauli::Y: {
        auto t = basis.find(s ^ bit);
        if (!t) break;
        Complex v{1.0, 0.0};
        if (which == Pauli::Y) v = excited ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        op.entries.push_back({*t, k, v});
        break;
      }
    }
  }
  sort_row_major(op);
  return op;
}

}  // namespace pxp
