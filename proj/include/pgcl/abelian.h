#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pgcl {

// Invariant-factor description d1 | d2 | ... | dk of a finite abelian group.
// Every factor is >= 2; the empty list is the trivial group.
class AbelianInvariants {
 public:
  AbelianInvariants() = default;

  // Takes an arbitrary list of cyclic orders (1s allowed) and normalizes it
  // into the invariant-factor chain of their direct sum.
  static AbelianInvariants from_cyclic_orders(const std::vector<std::uint64_t>& orders);

  // Throws InvalidArgument unless `factors` already is a valid chain.
  static AbelianInvariants from_chain(std::vector<std::uint64_t> factors);

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_trivial() const { return factors_.empty(); }
  std::uint64_t order() const;
  std::uint64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  // Elementary divisors (prime powers), sorted ascending.
  std::vector<std::uint64_t> elementary_divisors() const;

  // "(2,4)"; the trivial group prints as "()".
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

 private:
  explicit AbelianInvariants(std::vector<std::uint64_t> f) : factors_(std::move(f)) {}
  std::vector<std::uint64_t> factors_;
};

AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

// A (x) B for finite abelian groups: sum over factor pairs of C_gcd(di, ej).
AbelianInvariants tensor_product(const AbelianInvariants& a, const AbelianInvariants& b);

// Prime factorization helpers for small integers.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
// If n = p^k with k >= 1, returns p; otherwise 0. n = 1 returns 0.
std::uint64_t prime_of_prime_power(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace pgcl
