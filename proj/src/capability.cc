#include "pgcl/capability.h"

#include <map>

#include "pgcl/errors.h"

namespace pgcl {

namespace {

Subgroup normal_closure(const Group& g, Elem x) {
  std::vector<Elem> conj;
  for (Elem y = 0; y < g.order(); ++y) conj.push_back(g.mul(g.mul(g.inv(y), x), y));
  return subgroup_generated(g, conj);
}

HopfSequenceOrders hopf_orders(const Group& g, const Subgroup& n, const MultiplierOracle& oracle) {
  HopfSequenceOrders h;
  h.m_g = oracle.multiplier(g).order();
  h.m_q = oracle.multiplier(quotient(g, n).group).order();
  h.n_cap_derived = intersection(n, derived_subgroup(g)).order();
  h.n_comm = commutator_subgroup(n, whole_group(g)).order();
  const std::uint64_t num = h.m_g * h.n_cap_derived;
  const std::uint64_t den = h.m_q * h.n_comm;
  if (den == 0 || num % den != 0)
    throw HomologyInconsistent("kernel order " + std::to_string(num) + "/" + std::to_string(den) +
                               " is not an integer");
  h.ker_alpha = num / den;
  return h;
}

}  // namespace

EpicenterTest epicenter_contains(const Group& g, Elem x, const MultiplierOracle& oracle,
                                 const CapabilityOptions& opts) {
  if (x >= g.order()) throw IndexOutOfRange("element index out of range");
  EpicenterTest r;
  if (!opts.strict && !is_central_element(g, x)) return r;
  const Subgroup n = opts.strict ? normal_closure(g, x) : subgroup_generated(g, {x});
  r.tested = true;
  r.orders = hopf_orders(g, n, oracle);
  // Injectivity decides membership only for central N: with M(G) = 1 it
  // holds for every N.
  r.in_epicenter = r.orders.ker_alpha == 1 && r.orders.n_comm == 1;
  return r;
}

Subgroup epicenter(const Group& g, const MultiplierOracle& oracle, const CapabilityOptions& opts,
                   std::vector<EpicenterEvidence>* evidence) {
  // Elements generating the same N share one quotient computation.
  std::map<std::vector<Elem>, EpicenterTest> seen;
  std::vector<Elem> members;
  if (evidence) evidence->clear();
  for (Elem x = 0; x < g.order(); ++x) {
    if (!opts.strict && !is_central_element(g, x)) continue;
    const Subgroup n = opts.strict ? normal_closure(g, x) : subgroup_generated(g, {x});
    auto it = seen.find(n.elements());
    if (it == seen.end()) it = seen.emplace(n.elements(), epicenter_contains(g, x, oracle, opts)).first;
    const EpicenterTest& t = it->second;
    if (t.in_epicenter) members.push_back(x);
    if (evidence) evidence->push_back({x, g.label(x), n.order(), t.orders, t.in_epicenter});
  }
  try {
    return Subgroup(g, members);
  } catch (const NotASubgroup&) {
    throw NotASubgroup("epicenter members are not closed under the group operation");
  }
}

CapabilityReport is_capable(const Group& g, const MultiplierOracle& oracle, const CapabilityOptions& opts) {
  std::vector<EpicenterEvidence> ev;
  Subgroup z = epicenter(g, oracle, opts, &ev);
  const bool capable = z.is_trivial();
  return CapabilityReport{g.construction(), std::move(z), capable, opts.strict, std::move(ev)};
}

nlohmann::json to_json(const CapabilityReport& r) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.evidence) {
    nlohmann::json row = {{"element_label", e.label},
                          {"m_g", e.orders.m_g},
                          {"m_q", e.orders.m_q},
                          {"n_cap_derived", e.orders.n_cap_derived},
                          {"ker_alpha", e.orders.ker_alpha},
                          {"in_epicenter", e.in_epicenter}};
    if (r.strict) row["n_comm"] = e.orders.n_comm;
    ev.push_back(std::move(row));
  }
  nlohmann::json j = {{"expr", r.expr},
                      {"capable", r.capable},
                      {"epicenter_order", r.epicenter.order()},
                      {"evidence", ev}};
  if (r.strict) j["strict"] = true;
  return j;
}

EpicenterLemmaResult epicenter_lemma_check(const Group& g, const Subgroup& n, const MultiplierOracle& oracle) {
  const std::uint64_t p = group_prime(g);
  if (p == 0) throw PreconditionViolated("lemma check requires a p-group");
  if (n.order() != p) throw PreconditionViolated("N must have order p");
  if (n.parent().table_key() != g.table_key()) throw PreconditionViolated("N is not a subgroup of G");
  const Subgroup zd = intersection(center(g), derived_subgroup(g));
  for (Elem x : n.elements())
    if (!zd.contains(x)) throw PreconditionViolated("N must lie in Z(G) cap G'");
  EpicenterLemmaResult r;
  r.orders = hopf_orders(g, n, oracle);
  r.hypothesis = r.orders.m_q == p * r.orders.m_g;
  r.conclusion = r.orders.ker_alpha == 1;
  return r;
}

}  // namespace pgcl
