#include "pgcl/isomorphism.h"

#include <algorithm>
#include <limits>

#include "pgcl/errors.h"
#include "pgcl/multiplier.h"

namespace pgcl {

Fingerprint fingerprint(const Group& g, const MultiplierOracle* oracle) {
  Fingerprint f;
  f.order = g.order();
  f.order_profile = order_profile(g);
  const Subgroup z = center(g);
  f.center_order = z.order();
  f.derived_order = derived_subgroup(g).order();
  f.exponent = exponent(g);
  f.center = abelian_invariants(subgroup_as_group(z));
  f.abelianization = abelianization_invariants(g);
  if (oracle) f.multiplier_order = oracle->multiplier(g).order();
  return f;
}

bool is_isomorphism(const Group& a, const Group& b, const std::vector<Elem>& map) {
  if (a.order() != b.order() || map.size() != a.order()) return false;
  std::vector<bool> hit(b.order(), false);
  for (Elem x : map) {
    if (x >= b.order() || hit[x]) return false;
    hit[x] = true;
  }
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
  return true;
}

namespace {

constexpr Elem kUnset = std::numeric_limits<Elem>::max();

struct Search {
  const Group& a;
  const Group& b;
  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> candidates;
  std::vector<Elem> images;
  std::vector<Elem> phi;
  std::vector<bool> used;

  // Extends phi over <gens[0..k]> along the Cayley graph; fails on any
  // inconsistency or collision.
  bool close(std::size_t k) {
    std::fill(phi.begin(), phi.end(), kUnset);
    std::fill(used.begin(), used.end(), false);
    phi[a.identity()] = b.identity();
    used[b.identity()] = true;
    std::vector<Elem> queue{a.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Elem x = queue[head];
      for (std::size_t j = 0; j <= k; ++j) {
        const Elem z = a.mul(x, gens[j]);
        const Elem w = b.mul(phi[x], images[j]);
        if (phi[z] == kUnset) {
          if (used[w]) return false;
          phi[z] = w;
          used[w] = true;
          queue.push_back(z);
        } else if (phi[z] != w) {
          return false;
        }
      }
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == gens.size()) return true;
    for (Elem y : candidates[k]) {
      images[k] = y;
      if (close(k) && run(k + 1)) return true;
    }
    return false;
  }
};

std::uint64_t centralizer_size(const Group& g, Elem x) {
  std::uint64_t c = 0;
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) ++c;
  return c;
}

}  // namespace

IsomorphismResult is_isomorphic(const Group& a, const Group& b, std::size_t budget) {
  IsomorphismResult r;
  if (a.order() != b.order()) return r;
  if (a.order() > budget)
    throw SizeExceeded("isomorphism test at order " + std::to_string(a.order()) + " exceeds budget " +
                       std::to_string(budget));
  if (fingerprint(a) != fingerprint(b)) return r;

  Search s{a, b, {}, {}, {}, std::vector<Elem>(a.order(), kUnset), std::vector<bool>(b.order(), false)};

  // Generators by decreasing order; each one enlarges the span.
  std::vector<Elem> by_order(a.order());
  for (Elem x = 0; x < a.order(); ++x) by_order[x] = x;
  std::vector<std::uint64_t> ord(a.order());
  for (Elem x = 0; x < a.order(); ++x) ord[x] = element_order(a, x);
  std::stable_sort(by_order.begin(), by_order.end(), [&](Elem x, Elem y) { return ord[x] > ord[y]; });
  std::vector<Elem> span{a.identity()};
  for (Elem x : by_order) {
    if (std::find(span.begin(), span.end(), x) != span.end()) continue;
    s.gens.push_back(x);
    span = subgroup_generated(a, s.gens).elements();
    if (span.size() == a.order()) break;
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> inv_b(b.order());
  for (Elem y = 0; y < b.order(); ++y) inv_b[y] = {element_order(b, y), centralizer_size(b, y)};
  for (Elem x : s.gens) {
    const std::pair<std::uint64_t, std::uint64_t> key{ord[x], centralizer_size(a, x)};
    std::vector<Elem> c;
    for (Elem y = 0; y < b.order(); ++y)
      if (inv_b[y] == key) c.push_back(y);
    s.candidates.push_back(std::move(c));
  }
  s.images.assign(s.gens.size(), b.identity());

  if (s.gens.empty()) {
    r.isomorphic = true;
    r.witness = std::vector<Elem>{b.identity()};
    return r;
  }
  if (!s.run(0)) return r;
  if (!is_isomorphism(a, b, s.phi)) throw InternalError("isomorphism search produced an invalid witness");
  r.isomorphic = true;
  r.witness = s.phi;
  return r;
}

IsomorphismResult compare_groups(const Group& a, const Group& b, const MultiplierOracle* oracle,
                                 std::size_t budget) {
  if (a.order() <= budget) return is_isomorphic(a, b, budget);
  IsomorphismResult r;
  r.fingerprint_only = true;
  r.isomorphic = a.order() == b.order() && fingerprint(a, oracle) == fingerprint(b, oracle);
  return r;
}

}  // namespace pgcl
