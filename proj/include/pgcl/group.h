#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pgcl/abelian.h"

namespace pgcl {

using Elem = std::uint32_t;

// Constructions default to this bound; the hard ceiling for any table
// (including the extended mode) is kExtendedMaxOrder.
inline constexpr std::size_t kDefaultMaxOrder = 128;
inline constexpr std::size_t kExtendedMaxOrder = 256;

enum class Sign { Plus, Minus };
char sign_char(Sign s);

// A finite group given by its full multiplication table. Immutable; copies
// share the underlying table.
class Group {
 public:
  // Validates the Latin-square property, the identity, and associativity
  // (exhaustively). Throws InvalidGroup or SizeExceeded.
  static Group from_table(std::size_t order, std::vector<Elem> table,
                          std::vector<std::string> labels = {}, std::string construction = {});

  std::size_t order() const { return d_->order; }
  Elem identity() const { return d_->identity; }
  Elem mul(Elem a, Elem b) const { return d_->table[std::size_t{a} * d_->order + b]; }
  Elem inv(Elem a) const { return d_->inverse[a]; }
  std::span<const Elem> table() const { return d_->table; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::string label(Elem x) const;
  const std::string& construction() const { return d_->construction; }
  bool is_abelian() const { return d_->abelian; }

  // Same table, new provenance string.
  Group with_construction(std::string construction) const;

  // Byte string of (order, identity, table); two groups share a key iff
  // their tables are identical. Used as a memo key.
  const std::string& table_key() const { return d_->key; }

 private:
  struct Data {
    std::size_t order = 0;
    Elem identity = 0;
    std::vector<Elem> table;
    std::vector<Elem> inverse;
    std::vector<std::string> labels;
    std::string construction;
    std::string key;
    bool abelian = false;
  };
  explicit Group(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class Subgroup {
 public:
  // Throws NotASubgroup if `elements` is not closed or misses the identity.
  Subgroup(Group parent, std::vector<Elem> elements, std::vector<Elem> generators = {});

  const Group& parent() const { return parent_; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool is_trivial() const { return elements_.size() == 1; }
  bool contains(Elem x) const { return x < member_.size() && member_[x]; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  Group parent_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
  std::vector<bool> member_;
};

struct Quotient {
  Group group;
  std::vector<Elem> projection;  // parent element -> coset index
};

// ---- constructions -------------------------------------------------------

Group trivial_group();
Group cyclic(std::uint64_t q, std::size_t max_order = kDefaultMaxOrder);
Group elementary_abelian(std::uint64_t p, unsigned k, std::size_t max_order = kDefaultMaxOrder);
Group abelian_from_invariants(const AbelianInvariants& inv, std::size_t max_order = kDefaultMaxOrder);
Group dihedral8();
Group quaternion8();
Group extraspecial(std::uint64_t p, unsigned m, Sign sign, std::size_t max_order = kDefaultMaxOrder);
Group direct_product(const Group& a, const Group& b, std::size_t max_order = kDefaultMaxOrder);

// Quotient of a x b by {(x, ident(x)^-1)}, where `ident` pairs generators of
// a central subgroup A <= Z(a) with generators of a central B <= Z(b) and
// must extend to an isomorphism A -> B.
Group central_product(const Group& a, const Group& b,
                      const std::vector<std::pair<Elem, Elem>>& ident,
                      std::size_t max_order = kDefaultMaxOrder);

// Canonical identification: a' (of prime order p) onto the unique order-p
// subgroup of the cyclic p-group b.
Group central_product_canonical(const Group& a, const Group& b,
                                std::size_t max_order = kDefaultMaxOrder);

// ---- subgroups and structure ----------------------------------------------

Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);
Subgroup subgroup_generated(const Group& g, const std::vector<Elem>& gens);
Subgroup center(const Group& g);
Subgroup derived_subgroup(const Group& g);
// <commutators, p-th powers>; throws NotPGroup unless |g| is a prime power.
Subgroup frattini(const Group& g);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
// Subgroup generated by all [x, y] with x in a, y in b.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);

bool is_normal(const Group& g, const Subgroup& s);
bool is_central(const Group& g, const Subgroup& s);
bool is_central_element(const Group& g, Elem x);

// Throws NotNormal.
Quotient quotient(const Group& g, const Subgroup& n);

// The subgroup as a standalone group; element i of the result is
// s.elements()[i].
Group subgroup_as_group(const Subgroup& s);

Elem power(const Group& g, Elem x, std::uint64_t k);
Elem commutator(const Group& g, Elem a, Elem b);
std::uint64_t element_order(const Group& g, Elem x);
std::uint64_t exponent(const Group& g);

// 0 unless |g| = p^n with n >= 1.
std::uint64_t group_prime(const Group& g);

// Throws NotAbelian.
AbelianInvariants abelian_invariants(const Group& g);
AbelianInvariants abelianization_invariants(const Group& g);

// For an abelian group: extends the independent elements `prefix` by
// generators whose orders are the elementary divisors of g/<prefix>, so that
// prefix + result is a basis (g is the internal direct sum of the cyclic
// subgroups). Exhaustive backtracking; nullopt iff <prefix> has no complement
// or prefix is not independent.
std::optional<std::vector<Elem>> complete_abelian_basis(const Group& g, const std::vector<Elem>& prefix);

// Element order -> count.
std::map<std::uint64_t, std::size_t> order_profile(const Group& g);

}  // namespace pgcl
