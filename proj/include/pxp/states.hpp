#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pxp/propagation.hpp"

namespace pxp {

/// Per-site qubit amplitudes (alpha_j on |0>, beta_j on |1>), site 1 first.
struct ProductStateSpec {
  std::vector<std::pair<Complex, Complex>> sites;
};

/// |00...0>.
StateVector polarized(const BasisPtr& basis);

/// |1010...>, sites 1, 3, 5, ... excited.
StateVector neel(const BasisPtr& basis);

/// |theta+> (x) |0> (x) |theta+> (x) |0> ... with |theta+> = cos(theta)|0> + sin(theta)|1>
/// on the odd sites. Its support lies inside the blockaded space, so the
/// state is normalized without projection. theta = 0 and theta = pi/2 give
/// the polarized and Neel states exactly. Throws DomainError outside [0, pi/2].
StateVector theta_plus(const BasisPtr& basis, double theta);

/// Projects a general product state onto the blockaded subspace and
/// renormalizes. Throws InvalidStateError if less than 1e-12 of the squared
/// norm survives, DomainError if a site is not normalized.
StateVector product_state(const BasisPtr& basis, const ProductStateSpec& spec);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Parses "polarized" | "neel" | "theta:<radians>".
StateVector make_state(const BasisPtr& basis, std::string_view spec);

/// Throws UsageError if `spec` is not a recognised state label.
void validate_state_spec(std::string_view spec);

}  // namespace pxp
