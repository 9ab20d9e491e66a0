#include "pgcl/abelian.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "pgcl/errors.h"

namespace pgcl {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t prime_of_prime_power(std::uint64_t n) {
  auto f = factorize(n);
  return f.size() == 1 ? f.front().first : 0;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(const std::vector<std::uint64_t>& orders) {
  // prime -> exponents of the elementary divisors
  std::map<std::uint64_t, std::vector<unsigned>> primary;
  for (std::uint64_t d : orders) {
    if (d == 0) throw InvalidArgument("cyclic order 0 is not finite");
    for (auto [p, e] : factorize(d)) primary[p].push_back(e);
  }
  std::size_t k = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    k = std::max(k, exps.size());
  }
  // The i-th largest invariant factor collects the i-th largest power of each prime.
  std::vector<std::uint64_t> factors(k, 1);
  for (const auto& [p, exps] : primary)
    for (std::size_t i = 0; i < exps.size(); ++i) factors[k - 1 - i] *= ipow(p, exps[i]);
  return AbelianInvariants(std::move(factors));
}

AbelianInvariants AbelianInvariants::from_chain(std::vector<std::uint64_t> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw InvalidArgument("invariant factors must be >= 2");
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      throw InvalidArgument("invariant factors must form a divisibility chain");
  }
  return AbelianInvariants(std::move(factors));
}

std::uint64_t AbelianInvariants::order() const {
  std::uint64_t r = 1;
  for (auto d : factors_) r *= d;
  return r;
}

std::vector<std::uint64_t> AbelianInvariants::elementary_divisors() const {
  std::vector<std::uint64_t> out;
  for (auto d : factors_)
    for (auto [p, e] : factorize(d)) out.push_back(ipow(p, e));
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianInvariants::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(factors_[i]);
  }
  return s + ")";
}

AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b) {
  std::vector<std::uint64_t> all = a.factors();
  all.insert(all.end(), b.factors().begin(), b.factors().end());
  return AbelianInvariants::from_cyclic_orders(all);
}

AbelianInvariants tensor_product(const AbelianInvariants& a, const AbelianInvariants& b) {
  std::vector<std::uint64_t> all;
  for (auto d : a.factors())
    for (auto e : b.factors()) all.push_back(std::gcd(d, e));
  return AbelianInvariants::from_cyclic_orders(all);
}

}  // namespace pgcl
