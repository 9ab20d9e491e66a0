#include "pgcl/classifier.h"

#include <algorithm>

#include "pgcl/errors.h"
#include "pgcl/expr.h"
#include "pgcl/isomorphism.h"

namespace pgcl {

namespace {

unsigned log_p(std::uint64_t p, std::uint64_t n) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

Elem first_nontrivial(const Subgroup& s) {
  for (Elem x : s.elements())
    if (x != s.parent().identity()) return x;
  return s.parent().identity();
}

// Index of x inside subgroup_as_group(s).
Elem local_index(const Subgroup& s, Elem x) {
  auto it = std::lower_bound(s.elements().begin(), s.elements().end(), x);
  return static_cast<Elem>(it - s.elements().begin());
}

}  // namespace

bool in_class(const Group& g) {
  const std::uint64_t p = group_prime(g);
  if (p == 0) return false;
  const Subgroup d = derived_subgroup(g);
  if (d.order() != p) return false;
  const AbelianInvariants q = abelian_invariants(quotient(g, d).group);
  return q.exponent() == p || q.is_trivial();
}

const char* case_name(CaseKind k) {
  switch (k) {
    case CaseKind::Case1: return "case1";
    case CaseKind::Case2: return "case2";
    case CaseKind::CyclicCenter: return "cyclic-center";
  }
  return "unknown";
}

bool is_direct_summand(const Subgroup& n) {
  const Group& a = n.parent();
  if (!a.is_abelian()) throw NotAbelian("direct summand test needs an abelian group");
  if (!is_prime(n.order())) throw WrongOrder("direct summand test needs a subgroup of prime order");
  const std::uint64_t p = n.order();
  const Elem x = first_nontrivial(n);
  for (Elem y = 0; y < a.order(); ++y)
    if (power(a, y, p) == x) return false;
  return true;
}

bool is_direct_summand_exhaustive(const Subgroup& n) {
  const Group& a = n.parent();
  if (!a.is_abelian()) throw NotAbelian("direct summand test needs an abelian group");
  if (!is_prime(n.order())) throw WrongOrder("direct summand test needs a subgroup of prime order");
  return complete_abelian_basis(a, {first_nontrivial(n)}).has_value();
}

bool extraspecial_capable(std::uint64_t p, unsigned m, Sign sign) {
  (void)p;
  return m == 1 && sign == Sign::Plus;
}

bool predict_capable(const Decomposition& d) {
  return extraspecial_capable(d.p, d.m, d.sign) && d.gprime_is_summand;
}

std::uint64_t cyclic_center_formula_order(std::uint64_t p, unsigned n) {
  if (n < 3) throw InvalidArgument("formula needs n >= 3");
  return ipow(p, (n - 1) * (n - 2) / 2 - 1);
}

std::string extraspecial_name(std::uint64_t p, unsigned m, Sign sign) {
  return to_string(*make_es(p, m, sign));
}

Decomposition decompose(const Group& g) {
  if (!in_class(g)) throw PreconditionViolated(g.construction() + " is not in the class |G'| = p, G/G' elementary");
  Decomposition d;
  d.p = group_prime(g);
  d.n = log_p(d.p, g.order());
  const std::uint64_t p = d.p;
  const Subgroup z = center(g);
  const Subgroup gd = derived_subgroup(g);
  const Elem c = first_nontrivial(gd);
  d.gprime_generator = c;

  std::vector<std::uint64_t> dlog(g.order(), p);
  {
    Elem y = g.identity();
    for (std::uint64_t k = 0; k < p; ++k, y = g.mul(y, c)) dlog[y] = k;
  }
  auto form = [&](Elem x, Elem y) {
    const std::uint64_t v = dlog[commutator(g, x, y)];
    if (v == p) throw DecompositionFailed("commutator outside G'");
    return v;
  };
  auto inv_mod = [&](std::uint64_t a) {
    for (std::uint64_t s = 1; s < p; ++s)
      if (a * s % p == 1) return s;
    throw DecompositionFailed("no inverse mod p");
  };

  // Lifts of a basis of G/Z(G).
  std::vector<Elem> w;
  {
    std::vector<Elem> gens = z.elements();
    Subgroup span = z;
    for (Elem x = 0; x < g.order(); ++x) {
      if (span.contains(x)) continue;
      w.push_back(x);
      gens.push_back(x);
      span = subgroup_generated(g, gens);
    }
  }
  if (w.size() % 2 != 0) throw DecompositionFailed("G/Z(G) has odd rank");

  while (!w.empty()) {
    const Elem e = w.front();
    auto it = std::find_if(w.begin() + 1, w.end(), [&](Elem y) { return form(e, y) != 0; });
    if (it == w.end()) throw DecompositionFailed("commutator form is degenerate");
    Elem f = power(g, *it, inv_mod(form(e, *it)));
    std::vector<Elem> rest;
    for (auto jt = w.begin() + 1; jt != w.end(); ++jt) {
      if (jt == it) continue;
      const std::uint64_t a = (p - form(*jt, f)) % p;
      const std::uint64_t b = form(*jt, e);
      rest.push_back(g.mul(g.mul(*jt, power(g, e, a)), power(g, f, b)));
    }
    d.symplectic_basis.push_back(e);
    d.symplectic_basis.push_back(f);
    w = std::move(rest);
  }
  d.m = static_cast<unsigned>(d.symplectic_basis.size() / 2);
  for (std::size_t i = 0; i + 1 < d.symplectic_basis.size(); i += 2)
    for (std::size_t j = 0; j < d.symplectic_basis.size(); ++j) {
      const std::uint64_t want = (j == i + 1) ? 1 : 0;
      if (form(d.symplectic_basis[i], d.symplectic_basis[j]) != want)
        throw DecompositionFailed("basis is not symplectic");
    }

  std::vector<Elem> hgens = d.symplectic_basis;
  hgens.push_back(c);
  const Subgroup h = subgroup_generated(g, hgens);
  d.h = h.elements();
  const Group hg = subgroup_as_group(h);
  if (h.order() != ipow(p, 2 * d.m + 1)) throw DecompositionFailed("H has the wrong order");
  if (center(hg).order() != p || derived_subgroup(hg).order() != p) throw DecompositionFailed("H is not extraspecial");
  if (intersection(h, z) != gd) throw DecompositionFailed("H cap Z(G) differs from G'");
  if (h.order() * z.order() / p != g.order()) throw DecompositionFailed("H Z(G) is not G");

  if (p != 2) {
    d.sign = exponent(hg) == p ? Sign::Plus : Sign::Minus;
  } else {
    const auto prof = order_profile(hg);
    const bool plus = order_profile(extraspecial(2, d.m, Sign::Plus, kExtendedMaxOrder)) == prof;
    const bool minus = order_profile(extraspecial(2, d.m, Sign::Minus, kExtendedMaxOrder)) == prof;
    if (plus == minus) throw DecompositionFailed("cannot determine the type of H");
    d.sign = plus ? Sign::Plus : Sign::Minus;
  }

  const Group zg = subgroup_as_group(z);
  d.center = abelian_invariants(zg);
  const Elem cz = local_index(z, c);
  const Subgroup gd_in_z = subgroup_generated(zg, {cz});
  auto lift = [&](const std::vector<Elem>& local) {
    std::vector<Elem> out;
    for (Elem x : local) out.push_back(z.elements()[x]);
    return out;
  };

  if (d.center.rank() <= 1) {
    d.kind = CaseKind::CyclicCenter;
    d.t = log_p(p, z.order()) - 1;
    for (Elem x = 0; x < zg.order(); ++x)
      if (element_order(zg, x) == zg.order()) {
        d.cyclic_generator = z.elements()[x];
        break;
      }
    d.gprime_is_summand = d.t == 0;
    return d;
  }

  d.gprime_is_summand = is_direct_summand(gd_in_z);
  if (zg.order() <= 64) d.summand_exhaustive = is_direct_summand_exhaustive(gd_in_z);
  if (d.gprime_is_summand) {
    d.kind = CaseKind::Case1;
    auto basis = complete_abelian_basis(zg, {cz});
    if (!basis) throw DecompositionFailed("G' has no complement in Z(G)");
    d.k_generators = lift(*basis);
    d.k = abelian_invariants(quotient(zg, gd_in_z).group);
    return d;
  }

  d.kind = CaseKind::Case2;
  std::vector<Elem> cand;
  for (Elem x = 0; x < zg.order(); ++x)
    if (subgroup_generated(zg, {x}).contains(cz)) cand.push_back(x);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](Elem x, Elem y) { return element_order(zg, x) > element_order(zg, y); });
  for (Elem x : cand) {
    auto basis = complete_abelian_basis(zg, {x});
    if (!basis) continue;
    d.cyclic_generator = z.elements()[x];
    d.t = log_p(p, element_order(zg, x)) - 1;
    d.k_generators = lift(*basis);
    d.k = abelian_invariants(quotient(zg, subgroup_generated(zg, {x})).group);
    return d;
  }
  throw DecompositionFailed("no cyclic direct summand of Z(G) contains G'");
}

// ---- verification -------------------------------------------------------------

bool ClassificationReport::has_tag(const std::string& tag) const {
  return std::any_of(discrepancies.begin(), discrepancies.end(), [&](const Discrepancy& d) { return d.tag == tag; });
}

bool ClassificationReport::fatal() const {
  return std::any_of(discrepancies.begin(), discrepancies.end(), [](const Discrepancy& d) { return d.fatal; });
}

namespace {

ExprPtr k_expr(std::uint64_t p, const AbelianInvariants& k) {
  ExprPtr e;
  std::size_t i = 0;
  const auto& f = k.factors();
  // Runs of order-p factors collapse to ElemAb.
  while (i < f.size()) {
    ExprPtr part;
    if (f[i] == p) {
      std::size_t j = i;
      while (j < f.size() && f[j] == p) ++j;
      part = j - i == 1 ? make_cyc(p) : make_elemab(p, static_cast<unsigned>(j - i));
      i = j;
    } else {
      part = make_cyc(f[i++]);
    }
    e = e ? make_dir(e, part) : part;
  }
  return e;
}

ExprPtr with_k(ExprPtr base, const ExprPtr& k) { return k ? make_dir(std::move(base), k) : base; }

}  // namespace

ClassificationReport verify(const Group& g, const MultiplierOracle& oracle, const VerifyOptions& opts) {
  ClassificationReport r;
  r.expr = g.construction();
  r.decomposition = decompose(g);
  const Decomposition& d = r.decomposition;
  r.p = d.p;
  r.n = d.n;
  r.predicted_capable = predict_capable(d);
  const bool affordable = opts.run_oracle && g.order() <= oracle.homology_bound();
  const std::uint64_t p = d.p;

  if (d.summand_exhaustive && *d.summand_exhaustive != d.gprime_is_summand)
    r.discrepancies.push_back({"summand-crosscheck-failed", "pA criterion and complement search disagree", true});

  if (d.kind == CaseKind::CyclicCenter) r.center_formula = cyclic_center_formula_order(p, d.n);

  if (affordable) {
    r.multiplier = oracle.multiplier(g);
    r.capability = is_capable(g, oracle, opts.capability);
    r.oracle_capable = r.capability->capable;
    r.epicenter_order = r.capability->epicenter.order();

    if (*r.oracle_capable != r.predicted_capable)
      r.discrepancies.push_back({"capability-mismatch",
                                 std::string("predicted ") + (r.predicted_capable ? "capable" : "not capable") +
                                     ", oracle " + (*r.oracle_capable ? "capable" : "not capable"),
                                 true});

    if (d.kind == CaseKind::CyclicCenter) {
      const std::uint64_t m = r.multiplier->order();
      const bool formula_ok = m == *r.center_formula;
      const std::string numbers =
          "|M(G)| = " + std::to_string(m) + ", formula " + std::to_string(*r.center_formula);
      if (d.t >= 1) {
        if (!formula_ok) r.discrepancies.push_back({"cyclic-center-formula-mismatch", numbers, false});
        if (*r.oracle_capable)
          r.discrepancies.push_back({"cyclic-center-capable", "cyclic center with |Z| >= p^2 yet capable", false});
      } else {
        if (!formula_ok) r.discrepancies.push_back({"cyclic-center-scope-exception", numbers + " (G = H)", false});
        if (*r.oracle_capable)
          r.discrepancies.push_back({"cyclic-center-scope-exception", "cyclic center yet capable (G = H)", false});
      }
    }

    if (d.kind == CaseKind::Case1) {
      const bool gprime_in_epi = r.capability->epicenter.contains(d.gprime_generator);
      if (gprime_in_epi == extraspecial_capable(p, d.m, d.sign))
        r.discrepancies.push_back({"case1-branch-mismatch", "G' in Z*(G) does not match the capability of H", true});
    }

    if (opts.audits) {
      r.epicenter_lemma = epicenter_lemma_check(g, subgroup_generated(g, {d.gprime_generator}), oracle);
      if (!r.epicenter_lemma->confirmed())
        r.discrepancies.push_back({"epicenter-lemma-violation", "hypothesis holds but G' is not in Z*(G)", true});
      for (const auto& e : r.capability->evidence)
        if (e.orders.ker_alpha < 1)
          r.discrepancies.push_back({"kernel-order-violation", "kernel order below 1 at " + e.label, true});
      r.frattini = check_frattini_bound(g, oracle);
      if (!r.frattini->holds)
        r.discrepancies.push_back({"frattini-bound-violation",
                                   std::to_string(r.frattini->lhs) + " > " + std::to_string(r.frattini->rhs), true});
    }
  }

  if (opts.reconstruct) {
    const ExprPtr h = make_es(p, d.m, d.sign);
    const ExprPtr k = k_expr(p, d.k);
    const MultiplierOracle* fp_oracle = affordable ? &oracle : nullptr;
    Reconstruction rec;
    rec.reading = "p^(t+1)";
    ExprPtr consistent;
    if (d.kind == CaseKind::Case1)
      consistent = with_k(h, k);
    else if (d.t == 0)
      consistent = h;
    else
      consistent = with_k(make_cprod(h, make_cyc(ipow(p, d.t + 1))), k);
    rec.expr = to_string(*consistent);
    const auto res = compare_groups(build(*consistent, kExtendedMaxOrder), g, fp_oracle);
    rec.reconstructs = res.isomorphic;
    rec.fingerprint_only = res.fingerprint_only;
    if (d.kind == CaseKind::Case2) {
      const ExprPtr printed = with_k(make_cprod(h, make_cyc(ipow(p, d.t))), k);
      rec.printed_expr = to_string(*printed);
      const Group pg = build(*printed, kExtendedMaxOrder);
      rec.printed_reconstructs = pg.order() == g.order() && compare_groups(pg, g, fp_oracle).isomorphic;
    }
    if (!rec.reconstructs)
      r.discrepancies.push_back({"reconstruction-failed", rec.expr + " does not rebuild G", true});
    r.reconstruction = rec;
  }
  return r;
}

nlohmann::json to_json(const ClassificationReport& r) {
  const Decomposition& d = r.decomposition;
  nlohmann::json j = {{"schema", "pgcl/1"},
                      {"kind", "classification"},
                      {"expr", r.expr},
                      {"p", r.p},
                      {"n", r.n},
                      {"case", case_name(d.kind)},
                      {"t", d.t},
                      {"h", {{"p", d.p}, {"m", d.m}, {"sign", std::string(1, sign_char(d.sign))},
                             {"name", extraspecial_name(d.p, d.m, d.sign)}}},
                      {"center", d.center.factors()},
                      {"k", d.k.factors()},
                      {"gprime_is_summand", d.gprime_is_summand},
                      {"predicted_capable", r.predicted_capable}};
  auto opt = [](const auto& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  j["oracle_capable"] = opt(r.oracle_capable);
  j["epicenter_order"] = opt(r.epicenter_order);
  j["multiplier"] = r.multiplier ? nlohmann::json(r.multiplier->factors()) : nlohmann::json(nullptr);
  j["multiplier_order"] = r.multiplier ? nlohmann::json(r.multiplier->order()) : nlohmann::json(nullptr);
  j["center_formula"] = opt(r.center_formula);
  if (d.summand_exhaustive) j["summand_exhaustive"] = *d.summand_exhaustive;
  if (r.reconstruction) {
    const auto& rec = *r.reconstruction;
    nlohmann::json rj = {{"reading", rec.reading},
                         {"expr", rec.expr},
                         {"reconstructs", rec.reconstructs},
                         {"fingerprint_only", rec.fingerprint_only}};
    if (rec.printed_expr) {
      rj["printed_expr"] = *rec.printed_expr;
      rj["printed_reconstructs"] = *rec.printed_reconstructs;
    }
    j["reconstruction"] = rj;
  }
  if (r.epicenter_lemma)
    j["epicenter_lemma"] = {{"hypothesis", r.epicenter_lemma->hypothesis}, {"conclusion", r.epicenter_lemma->conclusion},
                     {"confirmed", r.epicenter_lemma->confirmed()}};
  if (r.frattini) j["frattini_bound"] = {{"lhs", r.frattini->lhs}, {"rhs", r.frattini->rhs}, {"holds", r.frattini->holds}};
  if (r.capability) j["capability"] = to_json(*r.capability);
  nlohmann::json disc = nlohmann::json::array();
  for (const auto& x : r.discrepancies) disc.push_back({{"tag", x.tag}, {"detail", x.detail}, {"fatal", x.fatal}});
  j["discrepancies"] = disc;
  return j;
}

}  // namespace pgcl
