#include "pgcl/multiplier.h"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <mutex>
#include <numeric>
#include <tuple>

#include "pgcl/errors.h"

namespace pgcl {

const char* method_name(MultiplierMethod m) {
  switch (m) {
    case MultiplierMethod::Brute: return "brute";
    case MultiplierMethod::Ganea: return "ganea";
    case MultiplierMethod::ExtraspecialFormula: return "extraspecial-formula";
    case MultiplierMethod::AbelianFormula: return "abelian-formula";
  }
  return "unknown";
}

nlohmann::json to_json(const MultiplierResult& r, bool include_timing) {
  nlohmann::json j = {{"expr", r.expr},
                      {"invariants", r.invariants.factors()},
                      {"order", r.order()},
                      {"method", method_name(r.method)}};
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

// ---- bar complex ------------------------------------------------------------

BarComplex::BarComplex(Group g) : g_(std::move(g)), k_(g_.order() - 1), index_(g_.order(), -1) {
  for (Elem x = 0; x < g_.order(); ++x) {
    if (x == g_.identity()) continue;
    index_[x] = static_cast<std::int64_t>(element_.size());
    element_.push_back(x);
  }
}

std::size_t BarComplex::cells(unsigned degree) const {
  std::size_t c = 1;
  for (unsigned i = 0; i < degree; ++i) c *= k_;
  return c;
}

std::size_t BarComplex::Boundary::rows() const { return owner_->cells(degree_ - 1); }
std::size_t BarComplex::Boundary::cols() const { return owner_->cells(degree_); }

namespace {

// Adds (row, v) into a short list, merging duplicates and dropping zeros.
void accumulate(std::vector<Entry64>& out, std::uint32_t row, std::int64_t v) {
  for (auto it = out.begin(); it != out.end(); ++it)
    if (it->row == row) {
      it->value += v;
      if (it->value == 0) out.erase(it);
      return;
    }
  out.push_back({row, v});
}

}  // namespace

bool BarComplex::Boundary::column64(std::size_t j, std::vector<Entry64>& out) const {
  out.clear();
  const BarComplex& bc = *owner_;
  const Group& g = bc.g_;
  const std::size_t k = bc.k_;
  if (degree_ == 2) {
    const std::size_t a = j / k, b = j % k;
    const Elem x = bc.element_[a], y = bc.element_[b];
    accumulate(out, static_cast<std::uint32_t>(b), 1);
    const std::int64_t xy = bc.index_[g.mul(x, y)];
    if (xy >= 0) accumulate(out, static_cast<std::uint32_t>(xy), -1);
    accumulate(out, static_cast<std::uint32_t>(a), 1);
  } else {
    const std::size_t a = j / (k * k), b = (j / k) % k, c = j % k;
    const Elem x = bc.element_[a], y = bc.element_[b], z = bc.element_[c];
    accumulate(out, static_cast<std::uint32_t>(b * k + c), 1);
    const std::int64_t xy = bc.index_[g.mul(x, y)];
    if (xy >= 0) accumulate(out, static_cast<std::uint32_t>(xy * k + c), -1);
    const std::int64_t yz = bc.index_[g.mul(y, z)];
    if (yz >= 0) accumulate(out, static_cast<std::uint32_t>(a * k + yz), 1);
    accumulate(out, static_cast<std::uint32_t>(a * k + b), -1);
  }
  return true;
}

void BarComplex::Boundary::column_big(std::size_t j, std::vector<EntryBig>& out) const {
  std::vector<Entry64> small;
  column64(j, small);
  out.clear();
  for (const auto& e : small) out.push_back({e.row, BigInt(e.value)});
}

SparseIntMatrix BarComplex::d2_matrix() const {
  std::vector<Triplet> t;
  std::vector<Entry64> col;
  for (std::size_t j = 0; j < d2_.cols(); ++j) {
    d2_.column64(j, col);
    for (const auto& e : col) t.push_back({e.row, static_cast<std::uint32_t>(j), BigInt(e.value)});
  }
  return SparseIntMatrix(d2_.rows(), d2_.cols(), std::move(t));
}

SparseIntMatrix BarComplex::d3_matrix() const {
  std::vector<Triplet> t;
  std::vector<Entry64> col;
  for (std::size_t j = 0; j < d3_.cols(); ++j) {
    d3_.column64(j, col);
    for (const auto& e : col) t.push_back({e.row, static_cast<std::uint32_t>(j), BigInt(e.value)});
  }
  return SparseIntMatrix(d3_.rows(), d3_.cols(), std::move(t));
}

ReductionPlan BarComplex::d3_plan(bool prune) const {
  ReductionPlan plan;
  const std::size_t k = k_;
  if (k == 0) return plan;
  const Group& g = g_;

  Elem t = element_.front();
  std::uint64_t m = 0;
  for (Elem x : element_) {
    const std::uint64_t o = element_order(g, x);
    if (o > m) {
      m = o;
      t = x;
    }
  }

  // y = rep(y) * t^step(y); the coset <t> itself is represented by 1.
  std::vector<Elem> rep(g.order());
  std::vector<std::uint64_t> step(g.order());
  std::vector<bool> done(g.order(), false);
  for (Elem y0 = 0; y0 < g.order(); ++y0) {
    if (done[y0]) continue;
    std::vector<Elem> coset;
    Elem y = y0;
    for (std::uint64_t i = 0; i < m; ++i, y = g.mul(y, t)) coset.push_back(y);
    Elem r = *std::min_element(coset.begin(), coset.end());
    if (std::find(coset.begin(), coset.end(), g.identity()) != coset.end()) r = g.identity();
    Elem w = r;
    for (std::uint64_t i = 0; i < m; ++i, w = g.mul(w, t)) {
      rep[w] = r;
      step[w] = i;
      done[w] = true;
    }
  }

  auto matched = [&](Elem y) { return step[y] != 0 && y != t; };
  const std::size_t rows = k * k;
  std::vector<std::uint32_t> order(rows);
  std::iota(order.begin(), order.end(), 0u);
  auto key = [&](std::uint32_t row) {
    const std::size_t a = row / k, b = row % k;
    const Elem y = element_[b];
    if (!matched(y)) return std::tuple<int, std::size_t, std::size_t, std::uint64_t>(0, b, a, 0);
    return std::tuple<int, std::size_t, std::size_t, std::uint64_t>(1, a, rep[y], step[y]);
  };
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });
  plan.row_priority.assign(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) plan.row_priority[order[i]] = static_cast<std::uint32_t>(i);

  const std::size_t ti = static_cast<std::size_t>(index_[t]);
  const Elem t_inv = g.inv(t);
  std::vector<bool> is_pivot(k * k * k, false);
  plan.column_order.reserve(k * k * k);
  for (std::uint32_t row : order) {
    const std::size_t a = row / k, b = row % k;
    const Elem y = element_[b];
    if (!matched(y)) continue;
    const std::size_t u = static_cast<std::size_t>(index_[g.mul(y, t_inv)]);
    const std::size_t col = (a * k + u) * k + ti;
    is_pivot[col] = true;
    plan.column_order.push_back(col);
  }
  for (std::size_t col = 0; col < k * k * k; ++col)
    if (!is_pivot[col] && !(prune && matched(element_[col % k]))) plan.column_order.push_back(col);
  plan.columns_span_image = prune;
  return plan;
}

// ---- brute force ------------------------------------------------------------

MultiplierResult schur_multiplier_brute(const Group& g, std::size_t homology_bound, BruteStats* stats, bool prune) {
  if (homology_bound > kMaxHomologyBound)
    throw InvalidArgument("homology bound may not exceed " + std::to_string(kMaxHomologyBound));
  if (g.order() > homology_bound)
    throw SizeExceeded("order " + std::to_string(g.order()) + " exceeds the homology bound " +
                       std::to_string(homology_bound));
  if (g.order() > kDefaultHomologyBound)
    std::cerr << "warning: brute-force homology at order " << g.order() << " (" << g.construction()
              << ") runs beyond the default bound and may take minutes\n";

  const auto start = std::chrono::steady_clock::now();
  MultiplierResult r;
  r.expr = g.construction();
  r.method = MultiplierMethod::Brute;
  BruteStats local;
  if (g.order() > 1) {
    BarComplex bar(g);
    HomologyGroup h2 = homology_at(bar.d3(), bar.d2(), bar.d3_plan(prune), {}, &local.d3);
    if (h2.free_rank != 0)
      throw HomologyInconsistent("H2 of a finite group has free rank " + std::to_string(h2.free_rank));
    r.invariants = h2.torsion;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  local.elapsed_ms = r.elapsed_ms;
  if (stats) *stats = local;
  return r;
}

MultiplierOracle::MultiplierOracle(std::size_t homology_bound) : bound_(homology_bound) {
  if (bound_ > kMaxHomologyBound)
    throw InvalidArgument("homology bound may not exceed " + std::to_string(kMaxHomologyBound));
}

AbelianInvariants MultiplierOracle::multiplier(const Group& g) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(g.table_key());
    if (it != cache_.end()) return it->second;
  }
  AbelianInvariants m = schur_multiplier_brute(g, bound_).invariants;
  std::unique_lock lock(mutex_);
  cache_.emplace(g.table_key(), m);
  return m;
}

std::size_t MultiplierOracle::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

// ---- formulas ---------------------------------------------------------------

MultiplierResult multiplier_ganea(const Group& a, const Group& b, const MultiplierOracle& oracle) {
  const auto start = std::chrono::steady_clock::now();
  MultiplierResult r;
  r.expr = "(" + a.construction() + ") x (" + b.construction() + ")";
  r.method = MultiplierMethod::Ganea;
  r.invariants = direct_sum(direct_sum(oracle.multiplier(a), oracle.multiplier(b)),
                            tensor_product(abelianization_invariants(a), abelianization_invariants(b)));
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

MultiplierResult multiplier_abelian(const AbelianInvariants& inv) {
  std::vector<std::uint64_t> parts;
  const auto& d = inv.factors();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) parts.push_back(std::gcd(d[i], d[j]));
  MultiplierResult r;
  r.expr = "abelian" + inv.to_string();
  r.method = MultiplierMethod::AbelianFormula;
  r.invariants = AbelianInvariants::from_cyclic_orders(parts);
  return r;
}

std::uint64_t multiplier_extraspecial_order(std::uint64_t p, unsigned m, Sign sign) {
  if (!is_prime(p)) throw InvalidArgument("extraspecial formula requires a prime p");
  if (m == 0) throw InvalidArgument("extraspecial formula requires m >= 1");
  if (m == 1) {
    if (sign == Sign::Minus) return 1;
    return p == 2 ? 2 : p * p;
  }
  return ipow(p, 2 * m * m - m - 1);
}

FrattiniBound check_frattini_bound(const Group& g, const MultiplierOracle& oracle) {
  const Subgroup phi = frattini(g);
  const Subgroup gd = derived_subgroup(g);
  FrattiniBound b;
  b.lhs = oracle.multiplier(quotient(g, phi).group).order();
  b.rhs = oracle.multiplier(g).order() * intersection(phi, gd).order();
  b.holds = b.lhs <= b.rhs;
  return b;
}

}  // namespace pgcl
