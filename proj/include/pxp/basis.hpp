#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace pxp {

/// Bit pattern of a chain configuration. Site j (1-based) is bit j-1.
using Pattern = std::uint32_t;

/// Largest chain length accepted by enumerate_basis.
inline constexpr int kMaxSites = 30;

/// True when no two adjacent sites of the pattern are excited.
constexpr bool is_blockaded(Pattern s) { return (s & (s >> 1)) == 0; }

/// The Rydberg-blockaded subspace of an open chain of L sites.
///
/// States are stored in ascending integer order; the ordinal of a pattern is
/// its position in that list. Lookup of a pattern outside the subspace gives
/// an empty optional, which operator construction relies on when probing
/// flips that leave the subspace.
class BlockadedBasis {
 public:
  BlockadedBasis(int sites, std::vector<Pattern> states);

  int sites() const { return sites_; }
  std::size_t size() const { return states_.size(); }
  Pattern state(std::size_t ordinal) const { return states_[ordinal]; }
  const std::vector<Pattern>& states() const { return states_; }

  std::optional<std::size_t> find(Pattern pattern) const;

 private:
  int sites_;
  std::vector<Pattern> states_;
};

using BasisPtr = std::shared_ptr<const BlockadedBasis>;

/// n-th Fibonacci number with F(1) = F(2) = 1. Throws SizeError for n < 1 or
/// when the value does not fit in 64 bits (n > 93).
std::uint64_t fibonacci(int n);

/// All length-L patterns without adjacent excitations, ascending.
/// Throws SizeError unless 1 <= L <= kMaxSites.
BlockadedBasis enumerate_basis(int sites);

/// Shared, immutable basis for use across states, operators and workers.
BasisPtr make_basis(int sites);

/// Ordinal of `pattern`; throws InvalidStateError if it violates the
/// blockade or uses bits beyond the chain.
std::size_t index_of(const BlockadedBasis& basis, Pattern pattern);

/// Debug dump, one "ordinal,binary" line per state (binary is MSB first,
/// L digits, so site 1 is the rightmost digit).
void write_basis_dump(std::ostream& out, const BlockadedBasis& basis);

}  // namespace pxp
