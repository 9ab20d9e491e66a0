#include "pgcl/group.h"

#include <algorithm>
#include <deque>
#include <numeric>

#include "pgcl/errors.h"

namespace pgcl {

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

// ---- Group ----------------------------------------------------------------

Group Group::from_table(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels,
                        std::string construction) {
  if (order == 0) throw InvalidGroup("group order must be positive");
  if (order > kExtendedMaxOrder)
    throw SizeExceeded("group order " + std::to_string(order) + " exceeds the hard bound " +
                       std::to_string(kExtendedMaxOrder));
  if (table.size() != order * order) throw InvalidGroup("table must have order*order entries");
  if (!labels.empty() && labels.size() != order) throw InvalidGroup("labels must be empty or one per element");

  const std::size_t n = order;
  std::vector<char> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      Elem v = table[r * n + c];
      if (v >= n || seen[v]) throw InvalidGroup("table is not a Latin square (row " + std::to_string(r) + ")");
      seen[v] = 1;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      Elem v = table[r * n + c];
      if (seen[v]) throw InvalidGroup("table is not a Latin square (column " + std::to_string(c) + ")");
      seen[v] = 1;
    }
  }

  std::optional<Elem> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e * n + x] == x && table[x * n + e] == x;
    if (ok) identity = static_cast<Elem>(e);
  }
  if (!identity) throw InvalidGroup("table has no two-sided identity");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab * n + c] != table[a * n + table[b * n + c]])
          throw InvalidGroup("table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")");
    }

  auto d = std::make_shared<Data>();
  d->order = n;
  d->identity = *identity;
  d->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a * n + b] == *identity) d->inverse[a] = static_cast<Elem>(b);
  d->abelian = true;
  for (std::size_t a = 0; a < n && d->abelian; ++a)
    for (std::size_t b = a + 1; b < n && d->abelian; ++b) d->abelian = table[a * n + b] == table[b * n + a];

  d->key.reserve(8 + table.size() * 2);
  auto put = [&](std::uint32_t v) {
    d->key.push_back(static_cast<char>(v & 0xff));
    d->key.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  put(static_cast<std::uint32_t>(n));
  put(*identity);
  for (Elem v : table) put(v);

  d->table = std::move(table);
  d->labels = std::move(labels);
  d->construction = std::move(construction);
  return Group(std::move(d));
}

std::string Group::label(Elem x) const {
  if (x < d_->labels.size()) return d_->labels[x];
  return std::to_string(x);
}

Group Group::with_construction(std::string construction) const {
  auto d = std::make_shared<Data>(*d_);
  d->construction = std::move(construction);
  return Group(std::move(d));
}

// ---- Subgroup -------------------------------------------------------------

Subgroup::Subgroup(Group parent, std::vector<Elem> elements, std::vector<Elem> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(parent_.order(), false);
  for (Elem x : elements_) {
    if (x >= parent_.order()) throw IndexOutOfRange("subgroup element out of range");
    member_[x] = true;
  }
  if (!contains(parent_.identity())) throw NotASubgroup("subset does not contain the identity");
  for (Elem a : elements_) {
    if (!contains(parent_.inv(a))) throw NotASubgroup("subset is not closed under inverses");
    for (Elem b : elements_)
      if (!contains(parent_.mul(a, b))) throw NotASubgroup("subset is not closed under multiplication");
  }
  if (parent_.order() % elements_.size() != 0) throw NotASubgroup("subgroup order does not divide group order");
}

// ---- constructions ----------------------------------------------------------

namespace {

void check_bound(std::uint64_t order, std::size_t max_order) {
  const std::size_t bound = std::min(max_order, kExtendedMaxOrder);
  if (order > bound)
    throw SizeExceeded("order " + std::to_string(order) + " exceeds the configured bound " + std::to_string(bound));
}

template <class Mul>
Group table_from(std::size_t n, Mul mul, std::vector<std::string> labels, std::string construction) {
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>(mul(a, b));
  return Group::from_table(n, std::move(table), std::move(labels), std::move(construction));
}

std::string power_label(const std::string& base, std::size_t k) {
  if (k == 0) return "1";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

std::vector<Elem> closure(const Group& g, const std::vector<Elem>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> out{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem s : gens) {
      Elem y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

Elem smallest_nonidentity(const Subgroup& s) {
  for (Elem x : s.elements())
    if (x != s.parent().identity()) return x;
  return s.parent().identity();
}

}  // namespace

Group trivial_group() { return cyclic(1); }

Group cyclic(std::uint64_t q, std::size_t max_order) {
  if (q == 0) throw InvalidArgument("cyclic order must be positive");
  check_bound(q, max_order);
  std::vector<std::string> labels(q);
  for (std::size_t k = 0; k < q; ++k) labels[k] = power_label("a", k);
  return table_from(q, [q](std::size_t a, std::size_t b) { return (a + b) % q; }, std::move(labels),
                    "Cyc(" + std::to_string(q) + ")");
}

Group elementary_abelian(std::uint64_t p, unsigned k, std::size_t max_order) {
  if (!is_prime(p)) throw InvalidArgument("ElemAb requires a prime");
  check_bound(ipow(p, k), max_order);
  Group g = trivial_group();
  for (unsigned i = 0; i < k; ++i) g = i == 0 ? cyclic(p, max_order) : direct_product(g, cyclic(p, max_order), max_order);
  return g.with_construction("ElemAb(" + std::to_string(p) + "," + std::to_string(k) + ")");
}

Group abelian_from_invariants(const AbelianInvariants& inv, std::size_t max_order) {
  check_bound(inv.order(), max_order);
  Group g = trivial_group();
  std::string name;
  for (auto d : inv.factors()) {
    g = g.order() == 1 ? cyclic(d, max_order) : direct_product(g, cyclic(d, max_order), max_order);
    name += (name.empty() ? "" : " x ") + std::string("Cyc(") + std::to_string(d) + ")";
  }
  return g.with_construction(name.empty() ? "Cyc(1)" : name);
}

Group dihedral8() {
  // r^i s^j with s r s = r^-1.
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 4; ++i) {
      std::string l = i == 0 ? "" : power_label("r", i);
      if (j) l += "s";
      labels.push_back(l.empty() ? "1" : l);
    }
  return table_from(
      8,
      [](std::size_t a, std::size_t b) {
        std::size_t i = a % 4, j = a / 4, i2 = b % 4, j2 = b / 4;
        std::size_t ni = (j == 0 ? i + i2 : i + 4 - i2) % 4;
        return ((j + j2) % 2) * 4 + ni;
      },
      std::move(labels), "D8");
}

Group quaternion8() {
  // a^i b^j with b a b^-1 = a^-1 and b^2 = a^2.
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 4; ++i) {
      std::string l = i == 0 ? "" : power_label("a", i);
      if (j) l += "b";
      labels.push_back(l.empty() ? "1" : l);
    }
  return table_from(
      8,
      [](std::size_t a, std::size_t b) {
        std::size_t i = a % 4, j = a / 4, i2 = b % 4, j2 = b / 4;
        if (j == 0) return j2 * 4 + (i + i2) % 4;
        return ((1 + j2) % 2) * 4 + (i + 4 - i2 + 2 * j2) % 4;
      },
      std::move(labels), "Q8");
}

namespace {

Group heisenberg(std::uint64_t p) {
  const std::size_t n = p * p * p;
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x)
    labels[x] = "(" + std::to_string(x / (p * p)) + "," + std::to_string((x / p) % p) + "," + std::to_string(x % p) + ")";
  return table_from(
      n,
      [p](std::size_t x, std::size_t y) {
        std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
        std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
        return ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
      },
      std::move(labels), "ES(" + std::to_string(p) + ",1,+)");
}

Group metacyclic_minus(std::uint64_t p) {
  // (i mod p^2, j mod p) with (i,j)(i',j') = (i + i'(1+p)^j, j + j').
  const std::size_t q = p * p, n = q * p;
  std::vector<std::size_t> twist(p);
  twist[0] = 1;
  for (std::size_t j = 1; j < p; ++j) twist[j] = twist[j - 1] * (1 + p) % q;
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x)
    labels[x] = "(" + std::to_string(x % q) + "," + std::to_string(x / q) + ")";
  return table_from(
      n,
      [=](std::size_t x, std::size_t y) {
        std::size_t i = x % q, j = x / q, i2 = y % q, j2 = y / q;
        return ((j + j2) % p) * q + (i + i2 * twist[j]) % q;
      },
      std::move(labels), "ES(" + std::to_string(p) + ",1,-)");
}

Group center_identified_product(const Group& a, const Group& b, std::size_t max_order) {
  Subgroup za = center(a), zb = center(b);
  return central_product(a, b, {{smallest_nonidentity(za), smallest_nonidentity(zb)}}, max_order);
}

}  // namespace

Group extraspecial(std::uint64_t p, unsigned m, Sign sign, std::size_t max_order) {
  if (!is_prime(p)) throw InvalidArgument("extraspecial requires a prime p");
  if (m == 0) throw InvalidArgument("extraspecial requires m >= 1");
  check_bound(ipow(p, 2 * m + 1), max_order);
  const std::string name = "ES(" + std::to_string(p) + "," + std::to_string(m) + "," + sign_char(sign) + ")";
  Group plus1 = p == 2 ? dihedral8() : heisenberg(p);
  Group g = sign == Sign::Plus ? plus1 : (p == 2 ? quaternion8() : metacyclic_minus(p));
  for (unsigned i = 1; i < m; ++i) g = center_identified_product(g, plus1, max_order);
  return g.with_construction(name);
}

Group direct_product(const Group& a, const Group& b, std::size_t max_order) {
  check_bound(a.order() * b.order(), max_order);
  const std::size_t nb = b.order(), n = a.order() * nb;
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x)
    labels[x] = "(" + a.label(static_cast<Elem>(x / nb)) + "," + b.label(static_cast<Elem>(x % nb)) + ")";
  return table_from(
      n,
      [&](std::size_t x, std::size_t y) {
        return std::size_t{a.mul(x / nb, y / nb)} * nb + b.mul(x % nb, y % nb);
      },
      std::move(labels), "(" + a.construction() + ") x (" + b.construction() + ")");
}

Group central_product(const Group& a, const Group& b, const std::vector<std::pair<Elem, Elem>>& ident,
                      std::size_t max_order) {
  for (auto [x, y] : ident) {
    if (x >= a.order() || y >= b.order()) throw IndexOutOfRange("identification element out of range");
    if (!is_central_element(a, x) || !is_central_element(b, y))
      throw IdentNotCentral("identified elements must be central");
  }
  // Extend x_i -> y_i to a map on A = <x_i>; it must be a well-defined bijection onto B.
  std::vector<std::optional<Elem>> phi(a.order());
  phi[a.identity()] = b.identity();
  std::vector<Elem> queue{a.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem u = queue[i];
    for (auto [x, y] : ident) {
      Elem w = a.mul(u, x);
      Elem img = b.mul(*phi[u], y);
      if (!phi[w]) {
        phi[w] = img;
        queue.push_back(w);
      } else if (*phi[w] != img) {
        throw IdentNotIsomorphism("identification does not extend to a homomorphism");
      }
    }
  }
  std::vector<Elem> images;
  for (Elem u : queue) images.push_back(*phi[u]);
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end())
    throw IdentNotIsomorphism("identification is not injective");

  const std::size_t nb = b.order();
  const std::uint64_t result_order = a.order() * nb / queue.size();
  check_bound(result_order, max_order);
  // Cosets of {(u, phi(u)^-1)} in a x b, numbered by their smallest pair index;
  // the product table itself is never built.
  const std::size_t pairs = a.order() * nb;
  std::vector<Elem> projection(pairs, static_cast<Elem>(-1));
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < pairs; ++x) {
    if (projection[x] != static_cast<Elem>(-1)) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    const Elem xa = static_cast<Elem>(x / nb), xb = static_cast<Elem>(x % nb);
    for (Elem u : queue) projection[std::size_t{a.mul(xa, u)} * nb + b.mul(xb, b.inv(*phi[u]))] = id;
  }
  std::vector<std::string> labels(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    labels[i] = "(" + a.label(static_cast<Elem>(reps[i] / nb)) + "," + b.label(static_cast<Elem>(reps[i] % nb)) + ")";
  return table_from(
      reps.size(),
      [&](std::size_t x, std::size_t y) {
        const std::size_t u = reps[x], v = reps[y];
        return projection[std::size_t{a.mul(u / nb, v / nb)} * nb + b.mul(u % nb, v % nb)];
      },
      std::move(labels), "(" + a.construction() + ") . (" + b.construction() + ")");
}

Group central_product_canonical(const Group& a, const Group& b, std::size_t max_order) {
  Subgroup da = derived_subgroup(a);
  const std::uint64_t p = da.order();
  if (!is_prime(p)) throw InvalidArgument("canonical central product needs |a'| prime");
  if (!is_central(a, da)) throw IdentNotCentral("a' is not central in a");
  if (prime_of_prime_power(b.order()) != p || !b.is_abelian() || exponent(b) != b.order())
    throw InvalidArgument("canonical central product needs a cyclic p-group on the right");
  Elem gen = b.identity();
  for (Elem x = 0; x < b.order(); ++x)
    if (element_order(b, x) == b.order()) {
      gen = x;
      break;
    }
  Elem target = power(b, gen, b.order() / p);
  return central_product(a, b, {{smallest_nonidentity(da), target}}, max_order);
}

// ---- subgroups --------------------------------------------------------------

Subgroup trivial_subgroup(const Group& g) { return Subgroup(g, {g.identity()}, {}); }

Subgroup whole_group(const Group& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(g, std::move(all), {});
}

Subgroup subgroup_generated(const Group& g, const std::vector<Elem>& gens) {
  for (Elem x : gens)
    if (x >= g.order()) throw IndexOutOfRange("generator index out of range");
  return Subgroup(g, closure(g, gens), gens);
}

bool is_central_element(const Group& g, Elem x) {
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

Subgroup center(const Group& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g.order(); ++x)
    if (is_central_element(g, x)) z.push_back(x);
  return Subgroup(g, z, z);
}

Elem commutator(const Group& g, Elem a, Elem b) { return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)); }

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const Group& g = a.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> gens;
  for (Elem x : a.elements())
    for (Elem y : b.elements()) {
      Elem c = commutator(g, x, y);
      if (!seen[c]) {
        seen[c] = true;
        gens.push_back(c);
      }
    }
  return subgroup_generated(g, gens);
}

Subgroup derived_subgroup(const Group& g) { return commutator_subgroup(whole_group(g), whole_group(g)); }

std::uint64_t group_prime(const Group& g) { return prime_of_prime_power(g.order()); }

Subgroup frattini(const Group& g) {
  if (g.order() == 1) return trivial_subgroup(g);
  const std::uint64_t p = group_prime(g);
  if (p == 0) throw NotPGroup("Frattini subgroup is only implemented for p-groups");
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> gens;
  auto add = [&](Elem c) {
    if (!seen[c]) {
      seen[c] = true;
      gens.push_back(c);
    }
  };
  for (Elem x = 0; x < g.order(); ++x) {
    add(power(g, x, p));
    for (Elem y = 0; y < g.order(); ++y) add(commutator(g, x, y));
  }
  return subgroup_generated(g, gens);
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  for (Elem x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return Subgroup(a.parent(), std::move(out));
}

bool is_normal(const Group& g, const Subgroup& s) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem n : s.elements())
      if (!s.contains(g.mul(g.mul(g.inv(x), n), x))) return false;
  return true;
}

bool is_central(const Group& g, const Subgroup& s) {
  for (Elem n : s.elements())
    if (!is_central_element(g, n)) return false;
  return true;
}

Quotient quotient(const Group& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw NotNormal("subgroup is not normal");
  const std::size_t order = g.order();
  std::vector<Elem> projection(order, static_cast<Elem>(-1));
  std::vector<Elem> reps;
  for (Elem x = 0; x < order; ++x) {
    if (projection[x] != static_cast<Elem>(-1)) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem y : n.elements()) projection[g.mul(x, y)] = id;
  }
  const std::size_t k = reps.size();
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = g.label(reps[i]);
  Group q = table_from(
      k, [&](std::size_t a, std::size_t b) { return projection[g.mul(reps[a], reps[b])]; }, std::move(labels),
      "(" + g.construction() + ")/N" + std::to_string(n.order()));
  return {std::move(q), std::move(projection)};
}

Group subgroup_as_group(const Subgroup& s) {
  const Group& g = s.parent();
  const auto& el = s.elements();
  std::vector<Elem> index(g.order(), 0);
  for (std::size_t i = 0; i < el.size(); ++i) index[el[i]] = static_cast<Elem>(i);
  std::vector<std::string> labels(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) labels[i] = g.label(el[i]);
  return table_from(
      el.size(), [&](std::size_t a, std::size_t b) { return index[g.mul(el[a], el[b])]; }, std::move(labels),
      "sub(" + g.construction() + ")");
}

// ---- element arithmetic -----------------------------------------------------

Elem power(const Group& g, Elem x, std::uint64_t k) {
  Elem r = g.identity();
  Elem base = x;
  while (k > 0) {
    if (k & 1) r = g.mul(r, base);
    base = g.mul(base, base);
    k >>= 1;
  }
  return r;
}

std::uint64_t element_order(const Group& g, Elem x) {
  if (x >= g.order()) throw IndexOutOfRange("element index out of range");
  std::uint64_t k = 1;
  for (Elem y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

std::uint64_t exponent(const Group& g) {
  std::uint64_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, element_order(g, x));
  return e;
}

std::map<std::uint64_t, std::size_t> order_profile(const Group& g) {
  std::map<std::uint64_t, std::size_t> out;
  for (Elem x = 0; x < g.order(); ++x) ++out[element_order(g, x)];
  return out;
}

AbelianInvariants abelian_invariants(const Group& g) {
  if (!g.is_abelian()) throw NotAbelian("abelian_invariants requires an abelian group");
  // For each prime p, |{x : x^(p^k) = 1}| = p^(sum_i min(e_i, k)) determines
  // the exponents e_i of the p-primary cyclic factors.
  std::vector<std::uint64_t> divisors;
  for (auto [p, total] : factorize(g.order())) {
    std::vector<unsigned> log_omega{0};
    for (unsigned k = 1; log_omega.back() < total; ++k) {
      const std::uint64_t pk = ipow(p, k);
      std::size_t count = 0;
      for (Elem x = 0; x < g.order(); ++x)
        if (power(g, x, pk) == g.identity()) ++count;
      unsigned l = 0;
      for (std::size_t c = count; c > 1; c /= p) ++l;
      log_omega.push_back(l);
    }
    // factors with exponent >= k: log_omega[k] - log_omega[k-1]
    for (std::size_t k = 1; k < log_omega.size(); ++k) {
      const unsigned at_least_k = log_omega[k] - log_omega[k - 1];
      const unsigned at_least_next = k + 1 < log_omega.size() ? log_omega[k + 1] - log_omega[k] : 0;
      for (unsigned i = 0; i < at_least_k - at_least_next; ++i) divisors.push_back(ipow(p, k));
    }
  }
  return AbelianInvariants::from_cyclic_orders(divisors);
}

AbelianInvariants abelianization_invariants(const Group& g) {
  return abelian_invariants(quotient(g, derived_subgroup(g)).group);
}

namespace {

struct BasisSearch {
  const Group& g;
  std::vector<std::uint64_t> targets;
  std::vector<std::uint64_t> orders;
  std::vector<Elem> chosen;

  bool extend(const std::vector<bool>& span, std::size_t k) {
    if (k == targets.size()) return true;
    for (Elem z = 0; z < g.order(); ++z) {
      if (orders[z] != targets[k]) continue;
      bool independent = true;
      Elem y = z;
      for (std::uint64_t i = 1; i < targets[k] && independent; ++i, y = g.mul(y, z)) independent = !span[y];
      if (!independent) continue;
      std::vector<bool> next(span.size(), false);
      for (Elem s = 0; s < g.order(); ++s)
        if (span[s]) {
          Elem t = s;
          for (std::uint64_t i = 0; i < targets[k]; ++i, t = g.mul(t, z)) next[t] = true;
        }
      chosen.push_back(z);
      if (extend(next, k + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Elem>> complete_abelian_basis(const Group& g, const std::vector<Elem>& prefix) {
  if (!g.is_abelian()) throw NotAbelian("complete_abelian_basis requires an abelian group");
  Subgroup s = subgroup_generated(g, prefix);
  std::uint64_t product = 1;
  for (Elem x : prefix) product *= element_order(g, x);
  if (product != s.order()) return std::nullopt;

  BasisSearch search{g, {}, {}, {}};
  auto divisors = abelian_invariants(quotient(g, s).group).elementary_divisors();
  search.targets.assign(divisors.rbegin(), divisors.rend());
  search.orders.resize(g.order());
  for (Elem x = 0; x < g.order(); ++x) search.orders[x] = element_order(g, x);
  std::vector<bool> span(g.order(), false);
  for (Elem x : s.elements()) span[x] = true;
  if (!search.extend(span, 0)) return std::nullopt;
  return search.chosen;
}

}  // namespace pgcl
