#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pgcl/abelian.h"
#include "pgcl/group.h"

namespace pgcl {

class MultiplierOracle;

inline constexpr std::size_t kIsomorphismBudget = 64;

// Cheap isomorphism invariants. multiplier_order is 0 when not computed.
struct Fingerprint {
  std::size_t order = 0;
  std::map<std::uint64_t, std::size_t> order_profile;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  std::uint64_t exponent = 0;
  AbelianInvariants center;
  AbelianInvariants abelianization;
  std::uint64_t multiplier_order = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const Group& g, const MultiplierOracle* oracle = nullptr);

struct IsomorphismResult {
  bool isomorphic = false;
  // Set when the groups exceeded the exact budget and only fingerprints were
  // compared.
  bool fingerprint_only = false;
  // a element -> b element, present for exact positive answers.
  std::optional<std::vector<Elem>> witness;
};

// Exact test by backtracking over generator images. Throws SizeExceeded when
// the order is above `budget`.
IsomorphismResult is_isomorphic(const Group& a, const Group& b, std::size_t budget = kIsomorphismBudget);

// Exact up to `budget`, fingerprint comparison above it.
IsomorphismResult compare_groups(const Group& a, const Group& b, const MultiplierOracle* oracle = nullptr,
                                 std::size_t budget = kIsomorphismBudget);

// True iff `map` is a bijective homomorphism a -> b.
bool is_isomorphism(const Group& a, const Group& b, const std::vector<Elem>& map);

}  // namespace pgcl
