#include "pxp/states.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

constexpr double kAngleSlack = 1e-9;

Eigen::VectorXcd unit_vector(std::size_t dim, std::size_t k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

Pattern odd_sites_mask(int sites) {
  Pattern mask = 0;
  for (int b = 0; b < sites; b += 2) mask |= Pattern{1} << b;
  return mask;
}

double parse_angle(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw UsageError("malformed angle in state spec: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

StateVector polarized(const BasisPtr& basis) {
  return StateVector(basis, unit_vector(basis->size(), index_of(*basis, 0)));
}

StateVector neel(const BasisPtr& basis) {
  return StateVector(basis, unit_vector(basis->size(), index_of(*basis, odd_sites_mask(basis->sites()))));
}

StateVector theta_plus(const BasisPtr& basis, double theta) {
  const double quarter = std::numbers::pi / 2.0;
  if (!(theta >= -kAngleSlack && theta <= quarter + kAngleSlack)) {
    throw DomainError("theta must lie in [0, pi/2], got " + std::to_string(theta));
  }
  // Snap the interval ends so the limiting states come out exactly.
  double c = std::cos(theta), s = std::sin(theta);
  if (theta <= 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (theta >= quarter) {
    c = 0.0;
    s = 1.0;
  }
  const Pattern odd = odd_sites_mask(basis->sites());
  const int odd_count = (basis->sites() + 1) / 2;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const Pattern p = basis->state(k);
    if ((p & ~odd) != 0) continue;
    const int up = std::popcount(p);
    amps(static_cast<Eigen::Index>(k)) = std::pow(s, up) * std::pow(c, odd_count - up);
  }
  return StateVector(basis, std::move(amps));
}

StateVector product_state(const BasisPtr& basis, const ProductStateSpec& spec) {
  const int L = basis->sites();
  if (static_cast<int>(spec.sites.size()) != L) {
    throw DomainError("product state needs one qubit per site");
  }
  for (const auto& [a, b] : spec.sites) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) {
      throw DomainError("product state site amplitudes are not normalized");
    }
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const Pattern p = basis->state(k);
    Complex amp{1.0, 0.0};
    for (int j = 0; j < L; ++j) {
      const auto& [a, b] = spec.sites[static_cast<std::size_t>(j)];
      amp *= ((p >> j) & 1u) ? b : a;
    }
    amps(static_cast<Eigen::Index>(k)) = amp;
  }
  const double surviving = amps.squaredNorm();
  if (surviving < 1e-12) {
    throw InvalidStateError("product state has (almost) no weight in the blockaded subspace");
  }
  amps /= std::sqrt(surviving);
  return StateVector(basis, std::move(amps));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!a.same_space(b)) throw InvalidStateError("fidelity: states live in different spaces");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

void validate_state_spec(std::string_view spec) {
  if (spec == "polarized" || spec == "neel") return;
  if (spec.starts_with("theta:")) {
    const double theta = parse_angle(spec.substr(6));
    if (!(theta >= -kAngleSlack && theta <= std::numbers::pi / 2.0 + kAngleSlack)) {
      throw UsageError("theta must lie in [0, pi/2]");
    }
    return;
  }
  throw UsageError("unknown state '" + std::string(spec) +
                   "' (expected polarized, neel or theta:<radians>)");
}

StateVector make_state(const BasisPtr& basis, std::string_view spec) {
  validate_state_spec(spec);
  if (spec == "polarized") return polarized(basis);
  if (spec == "neel") return neel(basis);
  return theta_plus(basis, parse_angle(spec.substr(6)));
}

}  // namespace pxp
