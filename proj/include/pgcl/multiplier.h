#pragma once

#include <cstddef>
#include <cstdint>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "pgcl/abelian.h"
#include "pgcl/group.h"
#include "pgcl/smith.h"
#include "pgcl/sparse_matrix.h"

namespace pgcl {

inline constexpr std::size_t kDefaultHomologyBound = 64;
inline constexpr std::size_t kMaxHomologyBound = 128;

enum class MultiplierMethod { Brute, Ganea, ExtraspecialFormula, AbelianFormula };
const char* method_name(MultiplierMethod m);

struct MultiplierResult {
  std::string expr;
  AbelianInvariants invariants;
  MultiplierMethod method = MultiplierMethod::Brute;
  double elapsed_ms = 0.0;

  std::uint64_t order() const { return invariants.order(); }
};

// {expr, invariants, order, method[, elapsed_ms]}. Timing is opt-in so that
// reports stay byte-identical between runs.
nlohmann::json to_json(const MultiplierResult& r, bool include_timing = false);

// Normalized bar complex of a finite group with trivial integer
// coefficients in degrees 1..3. Cells are tuples of non-identity elements;
// tuples containing the identity are zero.
//   d2[g|h]   = [h] - [gh] + [g]
//   d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]
class BarComplex {
 public:
  explicit BarComplex(Group g);

  const Group& group() const { return g_; }
  std::size_t cells(unsigned degree) const;
  const ColumnSource& d2() const { return d2_; }
  const ColumnSource& d3() const { return d3_; }

  // Materialized copies; only sensible for small groups.
  SparseIntMatrix d2_matrix() const;
  SparseIntMatrix d3_matrix() const;

  // Elimination plan for d3. Picks an element t of maximal order and pairs
  // each 2-cell [g|c t^j] (j >= 1, c a coset representative of <t>) with the
  // 3-cell [g|c t^(j-1)|t], whose boundary has that 2-cell as its unit
  // leading term. Those columns are processed first and form a
  // unitriangular block; the remaining rows are ordered before them.
  //
  // With `prune`, only 3-cells whose last entry is t or a coset
  // representative are listed: the same pairing one degree up
  // ([g|h|c t^j] with the 4-cell [g|h|c t^(j-1)|t]) and d3 d4 = 0 express
  // every other column as an integer combination of those.
  ReductionPlan d3_plan(bool prune = true) const;

  // Index of a non-identity element, or -1 for the identity.
  std::int64_t index_of(Elem x) const { return index_[x]; }

 private:
  class Boundary final : public ColumnSource {
   public:
    Boundary(const BarComplex* owner, unsigned degree) : owner_(owner), degree_(degree) {}
    std::size_t rows() const override;
    std::size_t cols() const override;
    bool column64(std::size_t j, std::vector<Entry64>& out) const override;
    void column_big(std::size_t j, std::vector<EntryBig>& out) const override;

   private:
    const BarComplex* owner_;
    unsigned degree_;
  };

  Group g_;
  std::size_t k_;  // number of non-identity elements
  std::vector<std::int64_t> index_;
  std::vector<Elem> element_;
  Boundary d2_{this, 2};
  Boundary d3_{this, 3};
};

struct BruteStats {
  ReductionStats d3;
  double elapsed_ms = 0.0;
};

// H_2(G; Z) as ker d2 / im d3 of the normalized bar complex. Throws
// SizeExceeded above `homology_bound` (at most kMaxHomologyBound) and
// HomologyInconsistent if H_2 has positive free rank.
MultiplierResult schur_multiplier_brute(const Group& g, std::size_t homology_bound = kDefaultHomologyBound,
                                        BruteStats* stats = nullptr, bool prune = true);

// Memoized brute-force multipliers keyed by the multiplication table. Safe
// for concurrent use; the cache never changes a result.
class MultiplierOracle {
 public:
  explicit MultiplierOracle(std::size_t homology_bound = kDefaultHomologyBound);

  std::size_t homology_bound() const { return bound_; }
  AbelianInvariants multiplier(const Group& g) const;
  std::size_t cache_size() const;

 private:
  std::size_t bound_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, AbelianInvariants> cache_;
};

// M(A x B) = M(A) + M(B) + A/A' (x) B/B'.
MultiplierResult multiplier_ganea(const Group& a, const Group& b, const MultiplierOracle& oracle);

// Sum over i < j of C_gcd(di, dj).
MultiplierResult multiplier_abelian(const AbelianInvariants& inv);

// p^2 for (m = 1, +) with p odd, 2 for D8, 1 for (m = 1, -), and
// p^(2m^2 - m - 1) for m > 1.
std::uint64_t multiplier_extraspecial_order(std::uint64_t p, unsigned m, Sign sign);

struct FrattiniBound {
  std::uint64_t lhs = 0;  // |M(G / Phi(G))|
  std::uint64_t rhs = 0;  // |M(G)| * |Phi(G) cap G'|
  bool holds = false;
};

// Throws NotPGroup for groups that are not of prime-power order.
FrattiniBound check_frattini_bound(const Group& g, const MultiplierOracle& oracle);

}  // namespace pgcl
