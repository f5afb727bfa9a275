#include "pxp/basis.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <string>

#include "pxp/errors.hpp"

namespace pxp {

BlockadedBasis::BlockadedBasis(int sites, std::vector<Pattern> states)
    : sites_(sites), states_(std::move(states)) {}

std::optional<std::size_t> BlockadedBasis::find(Pattern pattern) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), pattern);
  if (it == states_.end() || *it != pattern) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::uint64_t fibonacci(int n) {
  if (n < 1) throw SizeError("fibonacci: index must be >= 1");
  if (n > 93) throw SizeError("fibonacci: F(" + std::to_string(n) + ") overflows 64 bits");
  std::uint64_t prev = 0, cur = 1;
  for (int k = 1; k < n; ++k) {
    std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

BlockadedBasis enumerate_basis(int sites) {
  if (sites < 1 || sites > kMaxSites) {
    throw SizeError("enumerate_basis: L must lie in [1, " + std::to_string(kMaxSites) +
                    "], got " + std::to_string(sites));
  }
  const std::uint64_t limit = std::uint64_t{1} << sites;
  std::vector<Pattern> states;
  states.reserve(static_cast<std::size_t>(fibonacci(sites + 2)));

  // Walk the integers in order, jumping over every run that shares an
  // adjacent pair of set bits with the current candidate.
  std::uint64_t s = 0;
  while (s < limit) {
    std::uint64_t clash = s & (s >> 1);
    if (clash == 0) {
      states.push_back(static_cast<Pattern>(s));
      ++s;
      continue;
    }
    const int low = std::countr_zero(clash);
    s = (s | ((std::uint64_t{1} << low) - 1)) + 1;
  }
  return BlockadedBasis(sites, std::move(states));
}

BasisPtr make_basis(int sites) {
  return std::make_shared<const BlockadedBasis>(enumerate_basis(sites));
}

std::size_t index_of(const BlockadedBasis& basis, Pattern pattern) {
  if (basis.sites() < 32 && (pattern >> basis.sites()) != 0) {
    throw InvalidStateError("index_of: pattern has bits beyond site " +
                            std::to_string(basis.sites()));
  }
  if (!is_blockaded(pattern)) {
    throw InvalidStateError("index_of: pattern has adjacent excitations");
  }
  auto idx = basis.find(pattern);
  if (!idx) throw InvalidStateError("index_of: pattern not in basis");
  return *idx;
}

void write_basis_dump(std::ostream& out, const BlockadedBasis& basis) {
  const int L = basis.sites();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::string bits(static_cast<std::size_t>(L), '0');
    const Pattern s = basis.state(k);
    for (int b = 0; b < L; ++b) {
      if ((s >> b) & 1u) bits[static_cast<std::size_t>(L - 1 - b)] = '1';
    }
    out << k << ',' << bits << '\n';
  }
}

}  // namespace pxp
