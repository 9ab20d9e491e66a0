#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pgcl/group.h"
#include "pgcl/multiplier.h"

namespace pgcl {

// Order data of M(G) -> M(G/N) -> N cap G' -> 1 for one normal N.
//   ker_alpha = m_g * n_cap_derived / (m_q * n_comm)
// n_comm = |[N, G]| is 1 for central N; only strict mode sees other values.
struct HopfSequenceOrders {
  std::uint64_t m_g = 0;
  std::uint64_t m_q = 0;
  std::uint64_t n_cap_derived = 0;
  std::uint64_t n_comm = 1;
  std::uint64_t ker_alpha = 0;
};

struct CapabilityOptions {
  // Every element is tested through its normal closure N and the five-term
  // sequence. Membership still needs [N, G] = 1: Z*(G) is an intersection of
  // images of centres, so it lies in Z(G).
  bool strict = false;
};

struct EpicenterEvidence {
  Elem element = 0;
  std::string label;
  std::size_t n_order = 0;
  HopfSequenceOrders orders;
  bool in_epicenter = false;
};

struct EpicenterTest {
  bool in_epicenter = false;
  // False when x was rejected without homology work (non-central, default
  // mode); orders are then all zero.
  bool tested = false;
  HopfSequenceOrders orders;
};

// x in Z*(G) iff N = <x> is central and M(G) -> M(G/N) is injective (N is
// the normal closure in strict mode). Throws SizeExceeded via the oracle.
EpicenterTest epicenter_contains(const Group& g, Elem x, const MultiplierOracle& oracle,
                                 const CapabilityOptions& opts = {});

// Throws NotASubgroup if the member set is not closed.
Subgroup epicenter(const Group& g, const MultiplierOracle& oracle, const CapabilityOptions& opts = {},
                   std::vector<EpicenterEvidence>* evidence = nullptr);

struct CapabilityReport {
  std::string expr;
  Subgroup epicenter;
  bool capable = false;
  bool strict = false;
  std::vector<EpicenterEvidence> evidence;
};

CapabilityReport is_capable(const Group& g, const MultiplierOracle& oracle, const CapabilityOptions& opts = {});

// {expr, capable, epicenter_order, evidence: [{element_label, m_g, m_q,
// n_cap_derived, ker_alpha, in_epicenter}]}
nlohmann::json to_json(const CapabilityReport& r);

struct EpicenterLemmaResult {
  bool hypothesis = false;  // |M(G/N)| = p |M(G)|
  bool conclusion = false;  // N <= Z*(G)
  bool confirmed() const { return !hypothesis || conclusion; }
  HopfSequenceOrders orders;
};

// If |M(G/N)| = p |M(G)| then N <= Z*(G); checks that on one instance.
// Requires a p-group g and N <= Z(G) cap G' of order p; throws
// PreconditionViolated otherwise.
EpicenterLemmaResult epicenter_lemma_check(const Group& g, const Subgroup& n, const MultiplierOracle& oracle);

}  // namespace pgcl
