#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgcl/capability.h"
#include "pgcl/group.h"
#include "pgcl/multiplier.h"

namespace pgcl {

// |G| = p^n, |G'| = p and G/G' elementary abelian.
bool in_class(const Group& g);

enum class CaseKind { Case1, Case2, CyclicCenter };
const char* case_name(CaseKind k);

// G = H . Z(G) with H extraspecial of order p^(2m+1).
//   Case1:        Z(G) = G' + K, G = H x K
//   Case2:        Z(G) = C_{p^(t+1)} + K with G' inside the cyclic part
//   CyclicCenter: Z(G) = C_{p^(t+1)}
struct Decomposition {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned m = 0;
  Sign sign = Sign::Plus;
  std::vector<Elem> h;  // elements of H in G
  std::vector<Elem> symplectic_basis;  // lifts e1, f1, ..., em, fm
  Elem gprime_generator = 0;
  CaseKind kind = CaseKind::Case1;
  AbelianInvariants center;
  AbelianInvariants k;
  unsigned t = 0;
  Elem cyclic_generator = 0;  // generator of the cyclic part (Case2, CyclicCenter)
  std::vector<Elem> k_generators;
  bool gprime_is_summand = false;
  // Exhaustive complement search, run when |Z(G)| <= 64.
  std::optional<bool> summand_exhaustive;
};

// Symplectic-basis decomposition. Throws PreconditionViolated outside the
// class and DecompositionFailed when validation fails.
Decomposition decompose(const Group& g);

// For an abelian parent A and N <= A of prime order p: A = N + C for some C.
// Decided by whether a generator of N lies outside pA. Throws NotAbelian and
// WrongOrder.
bool is_direct_summand(const Subgroup& n);
// Same question by exhaustive complement search.
bool is_direct_summand_exhaustive(const Subgroup& n);

// Capable extraspecial groups: order p^3 exponent p (p odd) and D8.
bool extraspecial_capable(std::uint64_t p, unsigned m, Sign sign);

// H capable and G' a direct summand of Z(G).
bool predict_capable(const Decomposition& d);

// p^((n-1)(n-2)/2 - 1); requires n >= 3.
std::uint64_t cyclic_center_formula_order(std::uint64_t p, unsigned n);

struct Discrepancy {
  std::string tag;
  std::string detail;
  bool fatal = false;
};

struct Reconstruction {
  std::string reading;  // "p^(t+1)"
  std::string expr;
  bool reconstructs = false;
  bool fingerprint_only = false;
  // Case2 only: the reading with the central factor of order p^t.
  std::optional<std::string> printed_expr;
  std::optional<bool> printed_reconstructs;
};

struct VerifyOptions {
  bool run_oracle = true;
  bool reconstruct = true;
  bool audits = true;  // epicenter lemma and the Frattini bound
  CapabilityOptions capability;
};

struct ClassificationReport {
  std::string expr;
  std::uint64_t p = 0;
  unsigned n = 0;
  Decomposition decomposition;
  bool predicted_capable = false;
  std::optional<bool> oracle_capable;
  std::optional<std::uint64_t> epicenter_order;
  std::optional<AbelianInvariants> multiplier;
  std::optional<std::uint64_t> center_formula;
  std::optional<Reconstruction> reconstruction;
  std::optional<CapabilityReport> capability;
  std::optional<EpicenterLemmaResult> epicenter_lemma;
  std::optional<FrattiniBound> frattini;
  std::vector<Discrepancy> discrepancies;

  bool has_tag(const std::string& tag) const;
  bool fatal() const;
};

// The oracle arm runs only when |g| fits the oracle's homology bound.
ClassificationReport verify(const Group& g, const MultiplierOracle& oracle, const VerifyOptions& opts = {});

nlohmann::json to_json(const ClassificationReport& r);

// Expression name of the extraspecial group: "D8", "Q8" or "ES(p,m,+)".
std::string extraspecial_name(std::uint64_t p, unsigned m, Sign sign);

}  // namespace pgcl
