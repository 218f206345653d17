#include "amal/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace amal {

namespace {

std::string members_str(const RingPtr& r, const std::vector<Elem>& mem) {
  std::string out = "{";
  for (size_t i = 0; i < mem.size(); ++i) {
    if (i) out += ",";
    out += r->label(mem[i]);
  }
  return out + "}";
}

std::vector<Elem> scaled_members(const RingPtr& r, Elem c,
                                 const std::vector<Elem>& mem) {
  std::vector<Elem> out;
  out.reserve(mem.size());
  for (Elem x : mem) out.push_back(r->mul(c, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Instance make_instance(AmalgamInstance am) {
  Instance inst{am.is_duplication ? Instance::Kind::Duplication
                                  : Instance::Kind::Amalgam,
                std::move(am),
                nullptr,
                nullptr,
                ""};
  std::string kind = inst.kind == Instance::Kind::Duplication ? "dup" : "amalgam";
  inst.digest = kind + " R=" + inst.am.R->name() + " S=" + inst.am.S->name() +
                " J=" + members_str(inst.am.S, inst.am.J.members);
  return inst;
}

Instance make_trivext_instance(RingPtr r, const ModulePtr& m) {
  auto te = trivial_extension(r, m);
  Instance inst{Instance::Kind::TrivialExtension, std::move(te.inst), m,
                te.ring, ""};
  inst.digest = "trivext R=" + r->name() + " M=" + m->name() + " |M|=" +
                std::to_string(m->size());
  return inst;
}

std::string ClaimReport::status_str() const {
  switch (status) {
    case Status::Verified: return "verified";
    case Status::HypothesisNotMet: return "hypothesis-not-met";
    case Status::Falsified: return "falsified";
    case Status::Delegated: return "delegated: symbolic";
  }
  return "?";
}

std::string ClaimReport::str() const {
  std::string out = claim + " [" + status_str() + "] " + instance_digest;
  for (const auto& h : hypotheses) {
    out += "; " + h.name + "=" + (h.holds ? "yes" : "no");
    if (!h.holds && !h.witness.empty()) out += " (" + h.witness + ")";
  }
  out += "; conclusion=" + std::string(conclusion_holds ? "holds" : "fails");
  if (!conclusion_witness.empty()) out += " (" + conclusion_witness + ")";
  return out;
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "L-zd-inc",   "L-zd-eq1",   "L-zd-eq2",    "L-zd-eq3",   "L-zd-eq4",
      "R-trivext",  "L-loc-reg",  "L-rto-fast",  "R-spec",     "R-max",
      "R-loc-a",    "R-loc-b",    "R-loc-c",     "T-main-1",   "T-main-2",
      "C-local-1",  "C-local-2",  "C-dup-1",     "C-dup-2",    "C-dup-local",
      "C-trivext-1","C-trivext-2","C-domain-ext","P-tqr-1",    "P-tqr-2",
      "T-gauss-fwd","T-gauss-bwd","C-gauss-loc", "T-chain-fwd","T-chain-bwd",
      "C-chain-sq0","C-chain-fR", "C-dup-chain", "C-arith-1",  "C-arith-2"};
  return ids;
}

bool claim_accepts(const std::string& claim, Instance::Kind kind) {
  if (claim.rfind("C-dup", 0) == 0)
    return kind == Instance::Kind::Duplication;
  if (claim == "R-trivext" || claim.rfind("C-trivext", 0) == 0 ||
      claim == "C-domain-ext")
    return kind == Instance::Kind::TrivialExtension;
  return true;
}

namespace {

/// Lazily computed, memoized facts about one instance. One Analysis is
/// shared by all claims evaluated on the same instance.
struct Analysis {
  const Instance& in;
  std::map<std::string, bool> memo;

  explicit Analysis(const Instance& i) : in(i) {}

  bool get(const std::string& key, const std::function<bool()>& f) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = f();
    memo.emplace(key, v);
    return v;
  }

  const AmalgamInstance& am() const { return in.am; }

  bool prufer_A() { return get("prufer_A", [&] { return is_prufer(am().A); }); }
  bool prufer_R() { return get("prufer_R", [&] { return is_prufer(am().R); }); }
  bool tqr_A() { return get("tqr_A", [&] { return is_total_quotient_ring(am().A); }); }
  bool tqr_R() { return get("tqr_R", [&] { return is_total_quotient_ring(am().R); }); }
  bool gauss_A() { return get("gauss_A", [&] { return is_gaussian(am().A); }); }
  bool gauss_R() { return get("gauss_R", [&] { return is_gaussian(am().R); }); }
  bool chain_A() { return get("chain_A", [&] { return is_chain_ring(am().A); }); }
  bool chain_R() { return get("chain_R", [&] { return is_chain_ring(am().R); }); }
  bool arith_A() { return get("arith_A", [&] { return is_arithmetical(am().A); }); }
  bool arith_R() { return get("arith_R", [&] { return is_arithmetical(am().R); }); }
  bool valdom_R() { return get("valdom_R", [&] { return is_valuation_domain(am().R); }); }
  bool star() { return get("star", [&] { return has_condition_star(am()); }); }
  bool r_local() { return get("r_local", [&] { return is_local(am().R); }); }
  bool j_nonzero() { return am().J.size() > 1; }

  bool j_sq_zero() {
    return get("j_sq_zero", [&] {
      for (Elem x : am().J.members)
        for (Elem y : am().J.members)
          if (am().S->mul(x, y) != am().S->zero()) return false;
      return true;
    });
  }

  bool j_in_fR() {
    return get("j_in_fR", [&] {
      std::vector<char> im(am().S->size(), 0);
      for (Elem x : am().f.image()) im[x] = 1;
      for (Elem j : am().J.members)
        if (!im[j]) return false;
      return true;
    });
  }

  bool j_in_jacS() {
    return get("j_in_jacS", [&] {
      return am().J.subset_of(jacobson(am().S));
    });
  }

  bool f_reg_preserved() {
    return get("f_reg_preserved", [&] {
      auto reg_s = regular_elements(am().S);
      std::vector<char> in_reg(am().S->size(), 0);
      for (Elem x : reg_s) in_reg[x] = 1;
      for (Elem r : regular_elements(am().R))
        if (!in_reg[am().f(r)]) return false;
      return true;
    });
  }

  bool za_in_jacA() {
    return get("za_in_jacA", [&] {
      auto jac = jacobson(am().A);
      for (Elem z : zero_divisors(am().A))
        if (!jac.contains(z)) return false;
      return true;
    });
  }

  bool zr_in_jacR() {
    return get("zr_in_jacR", [&] {
      auto jac = jacobson(am().R);
      for (Elem z : zero_divisors(am().R))
        if (!jac.contains(z)) return false;
      return true;
    });
  }

  /// J_{T_m} = f(r) J_{T_m} for every maximal m of R and regular r of R.
  bool j_tm_scaling(std::string* witness) {
    auto it = memo.find("j_tm_scaling");
    if (it == memo.end()) {
      bool ok = true;
      for (const Ideal& m : max_spec(am().R)) {
        if (!ideal_preimage(am().f, am().J).subset_of(m))
          continue;  // 0 lies in T_m, so J_{T_m} = 0 and the equality is trivial
        auto t = mult_set_T(am(), m);
        auto [st, pis] = localize_ring(am().S, t);
        std::vector<Elem> jmem;
        for (Elem j : am().J.members) jmem.push_back(pis(j));
        std::sort(jmem.begin(), jmem.end());
        jmem.erase(std::unique(jmem.begin(), jmem.end()), jmem.end());
        for (Elem r : regular_elements(am().R)) {
          if (scaled_members(st, pis(am().f(r)), jmem) != jmem) {
            ok = false;
            scaling_witness_ = "J_{T_m} != f(" + am().R->label(r) +
                               ")J_{T_m} at m=" + m.str();
            break;
          }
        }
        if (!ok) break;
      }
      memo.emplace("j_tm_scaling", ok);
    }
    if (witness && !memo["j_tm_scaling"]) *witness = scaling_witness_;
    return memo["j_tm_scaling"];
  }

  std::string scaling_witness_;
};

void hyp(ClaimReport& rep, std::string name, bool holds, std::string wit = "") {
  rep.hypotheses.push_back({std::move(name), holds, std::move(wit)});
}

bool hyps_met(const ClaimReport& rep) {
  for (const auto& h : rep.hypotheses)
    if (!h.holds) return false;
  return true;
}

void conclude(ClaimReport& rep, bool holds, std::string witness = "") {
  rep.conclusion_holds = holds;
  rep.conclusion_witness = std::move(witness);
  rep.status = !hyps_met(rep) ? ClaimReport::Status::HypothesisNotMet
               : holds        ? ClaimReport::Status::Verified
                              : ClaimReport::Status::Falsified;
}

/// Implication with short-circuit: vacuously true when the antecedent fails.
void conclude_implies(ClaimReport& rep, const std::function<bool()>& lhs,
                      const std::function<bool()>& rhs,
                      const std::string& on_fail) {
  if (!lhs()) {
    conclude(rep, true, "vacuous: antecedent fails");
    return;
  }
  bool ok = rhs();
  conclude(rep, ok, ok ? "" : on_fail);
}

void conclude_iff(ClaimReport& rep, bool lhs, bool rhs,
                  const std::string& on_fail) {
  bool ok = lhs == rhs;
  conclude(rep, ok, ok ? "" : on_fail);
}

std::vector<Elem> star_union(const AmalgamInstance& am) {
  auto [s1, s2] = star_sets(am);
  std::vector<Elem> un;
  std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(),
                 std::back_inserter(un));
  return un;
}

bool ideal_sets_equal(std::vector<Ideal> a, std::vector<Ideal> b) {
  auto key = [](const Ideal& i) { return i.members; };
  std::vector<std::vector<Elem>> ka, kb;
  for (auto& i : a) ka.push_back(key(i));
  for (auto& i : b) kb.push_back(key(i));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// J = (f(a)+j)J in S for every nonzero a and (optionally) every j.
bool j_global_scaling(const AmalgamInstance& am, bool with_j,
                      std::string* witness) {
  const auto& jm = am.J.members;
  std::vector<Elem> jset = jm;  // sorted already
  std::vector<Elem> offsets = with_j ? jm : std::vector<Elem>{am.S->zero()};
  for (Elem a = 0; a < am.R->size(); ++a) {
    if (a == am.R->zero()) continue;
    for (Elem j : offsets) {
      Elem c = am.S->add(am.f(a), j);
      if (scaled_members(am.S, c, jset) != jset) {
        if (witness)
          *witness = "J != (f(" + am.R->label(a) + ")+" + am.S->label(j) + ")J";
        return false;
      }
    }
  }
  return true;
}

ClaimReport eval_claim(const std::string& c, Analysis& a) {
  ClaimReport rep;
  rep.claim = c;
  rep.instance_digest = a.in.digest;
  const AmalgamInstance& am = a.am();
  const RingPtr& R = am.R;
  const RingPtr& S = am.S;
  const RingPtr& A = am.A;

  if (c == "L-zd-inc") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    auto [s1, s2] = star_sets(am);
    auto un = star_union(am);
    auto za = zero_divisors(A);
    bool fwd = std::includes(un.begin(), un.end(), za.begin(), za.end());
    bool s2_in = std::includes(za.begin(), za.end(), s2.begin(), s2.end());
    bool ok = fwd && s2_in;
    conclude(rep, ok,
             ok ? ""
                : (fwd ? "an element of S2 is not a zero-divisor"
                       : "a zero-divisor of A escapes S1 and S2"));
  } else if (c == "L-zd-eq1" || c == "L-zd-eq2" || c == "L-zd-eq3" ||
             c == "L-zd-eq4") {
    auto lc = lemma_conditions(am);
    if (c == "L-zd-eq1")
      hyp(rep, "f(Z(R)) in J and f^-1(J) != 0", lc.c1);
    else if (c == "L-zd-eq2")
      hyp(rep, "f(Z(R))J = 0 and f^-1(J) != 0", lc.c2);
    else if (c == "L-zd-eq3")
      hyp(rep, "J in f(R)", lc.c3);
    else
      hyp(rep, "J is a torsion R-module", lc.c4);
    bool ok = zero_divisors(A) == star_union(am);
    conclude(rep, ok, ok ? "" : "Z(A) differs from S1 union S2");
  } else if (c == "R-trivext") {
    auto zr = zero_divisors(R);
    auto zm = zero_divisors_on(a.in.module);
    std::vector<char> bad(R->size(), 0);
    for (Elem x : zr) bad[x] = 1;
    for (Elem x : zm) bad[x] = 1;
    const int ms = a.in.module->size();
    std::vector<Elem> expected;
    for (Elem r = 0; r < R->size(); ++r)
      if (bad[r])
        for (MElem m = 0; m < ms; ++m) expected.push_back(r * ms + m);
    bool formula = zero_divisors(a.in.trivext_ring) == expected;
    bool ok = formula && a.star();
    conclude(rep, ok,
             ok ? "" : (formula ? "condition star fails" : "Z formula differs"));
  } else if (c == "L-loc-reg") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    bool ok = true;
    std::string wit;
    std::vector<MultiplicativeSet> family;
    for (const Ideal& p : spec(A)) family.push_back(complement_of_prime(p));
    family.push_back(make_mult_set(A, units(A)));
    auto za = zero_divisors(A);
    std::vector<char> in_za(A->size(), 0);
    for (Elem z : za) in_za[z] = 1;
    for (const auto& u : family) {
      auto [loc, pi] = localize_ring(A, u);
      auto zl = zero_divisors(loc);
      std::vector<char> in_zl(loc->size(), 0);
      for (Elem z : zl) in_zl[z] = 1;
      bool u_avoids_z = true;
      for (Elem x : u.members)
        if (in_za[x]) u_avoids_z = false;
      for (Elem r = 0; r < A->size() && ok; ++r) {
        bool reg = !in_za[r], reg_loc = !in_zl[pi(r)];
        if (reg && !reg_loc) {
          ok = false;
          wit = "regular " + A->label(r) + " localizes to a zero-divisor";
        }
        if (u_avoids_z && reg_loc && !reg) {
          ok = false;
          wit = "converse fails for " + A->label(r) + " though U avoids Z(A)";
        }
      }
      if (!ok) break;
    }
    conclude(rep, ok, wit);
  } else if (c == "L-rto-fast") {
    hyp(rep, "Z(A) in Jac(A)", a.za_in_jacA());
    bool ok = true;
    std::string wit;
    if (hyps_met(rep)) {
      for (const Ideal& m : max_spec(A))
        if (regular_total_order_fast(A, m) != regular_total_order(A, m)) {
          ok = false;
          wit = "fast and definition-level checks disagree at " + m.str();
          break;
        }
    }
    conclude(rep, ok, wit);
  } else if (c == "R-spec" || c == "R-max") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    bool is_max = c == "R-max";
    bool ok = ideal_sets_equal(
        is_max ? amalgam_max_spec_expected(am) : amalgam_spec_expected(am),
        is_max ? max_spec(A) : spec(A));
    conclude(rep, ok, ok ? "" : "enumerated primes differ from the lifts");
  } else if (c == "R-loc-a" || c == "R-loc-b" || c == "R-loc-c") {
    Ideal fij = ideal_preimage(am.f, am.J);
    std::vector<PrimeLift> lifts;
    if (c == "R-loc-a") {
      for (const Ideal& q : spec(S))
        if (!am.J.subset_of(q)) lifts.push_back(prime_lift_q(am, q));
      hyp(rep, "some prime of S avoids V(J)", !lifts.empty());
    } else if (c == "R-loc-b") {
      for (const Ideal& p : spec(R))
        if (!fij.subset_of(p)) lifts.push_back(prime_lift_p(am, p));
      hyp(rep, "some prime of R avoids V(f^-1(J))", !lifts.empty());
    } else {
      hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
      for (const Ideal& p : spec(R))
        if (fij.subset_of(p)) lifts.push_back(prime_lift_p(am, p));
    }
    bool ok = true;
    std::string wit;
    for (const auto& lift : lifts) {
      try {
        localization_iso(am, lift);  // self-verifying construction
      } catch (const invariant_error& e) {
        ok = false;
        wit = std::string("isomorphism failed at ") + lift.source.str() + ": " +
              e.what();
        break;
      }
    }
    conclude(rep, ok, wit);
  } else if (c == "T-main-1") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    hyp(rep, "f(Reg(R)) in Reg(S)", a.f_reg_preserved());
    std::string wit;
    conclude_implies(
        rep, [&] { return a.prufer_A(); },
        [&] { return a.prufer_R() && a.j_tm_scaling(&wit); },
        wit.empty() ? "R is not Prufer" : wit);
  } else if (c == "T-main-2") {
    hyp(rep, "f(Reg(R)) in Reg(S)", a.f_reg_preserved());
    hyp(rep, "condition star", a.star());
    hyp(rep, "Z(A) in Jac(A)", a.za_in_jacA());
    conclude_implies(
        rep, [&] { return a.prufer_R() && a.j_tm_scaling(nullptr); },
        [&] { return a.prufer_A(); }, "A is not Prufer");
  } else if (c == "C-local-1" || c == "C-local-2") {
    hyp(rep, "R is local", a.r_local());
    hyp(rep, "J in Jac(S)", a.j_in_jacS());
    hyp(rep, "f(Reg(R)) in Reg(S)", a.f_reg_preserved());
    if (c == "C-local-2") hyp(rep, "condition star", a.star());
    auto rhs = [&] {
      if (!a.prufer_R()) return false;
      for (Elem r : regular_elements(R))
        if (scaled_members(S, am.f(r), am.J.members) != am.J.members)
          return false;
      return true;
    };
    if (c == "C-local-1")
      conclude_implies(rep, [&] { return a.prufer_A(); }, rhs,
                       "R not Prufer or J != f(r)J for some regular r");
    else
      conclude_implies(rep, rhs, [&] { return a.prufer_A(); },
                       "A is not Prufer");
  } else if (c == "C-dup-1" || c == "C-dup-2" || c == "C-dup-local") {
    if (c == "C-dup-2") {
      hyp(rep, "Z(R) in Jac(R)", a.zr_in_jacR());
      hyp(rep, "I in Jac(R)", am.J.subset_of(jacobson(R)));
    }
    if (c == "C-dup-local") hyp(rep, "R is local", a.r_local());
    auto rhs = [&] {
      if (!a.prufer_R()) return false;
      if (c == "C-dup-local") {
        for (Elem r : regular_elements(R))
          if (scaled_members(R, r, am.J.members) != am.J.members) return false;
        return true;
      }
      for (const Ideal& m : max_spec(R)) {
        auto [loc, pi] = localize_at_prime(R, m);
        std::vector<Elem> im;
        for (Elem x : am.J.members) im.push_back(pi(x));
        std::sort(im.begin(), im.end());
        im.erase(std::unique(im.begin(), im.end()), im.end());
        for (Elem r : regular_elements(R))
          if (scaled_members(loc, pi(r), im) != im) return false;
      }
      return true;
    };
    if (c == "C-dup-1")
      conclude_implies(rep, [&] { return a.prufer_A(); }, rhs,
                       "R not Prufer or I_m != rI_m somewhere");
    else if (c == "C-dup-2")
      conclude_implies(rep, rhs, [&] { return a.prufer_A(); },
                       "A is not Prufer");
    else
      conclude_iff(rep, a.prufer_A(), rhs(),
                   "local duplication criterion disagrees");
  } else if (c == "C-trivext-1" || c == "C-trivext-2") {
    auto zr = zero_divisors(R);
    std::vector<char> in_zr(R->size(), 0);
    for (Elem z : zr) in_zr[z] = 1;
    bool zm_in_zr = true;
    for (Elem z : zero_divisors_on(a.in.module))
      if (!in_zr[z]) zm_in_zr = false;
    hyp(rep, "Z(M) in Z(R)", zm_in_zr);
    if (c == "C-trivext-2") hyp(rep, "Z(R) in Jac(R)", a.zr_in_jacR());
    auto rhs = [&] {
      if (!a.prufer_R()) return false;
      for (const Ideal& m : max_spec(R)) {
        auto lm = localize_module(a.in.module, complement_of_prime(m));
        std::vector<MElem> all(lm.module->size());
        for (MElem x = 0; x < lm.module->size(); ++x) all[x] = x;
        for (Elem r : regular_elements(R)) {
          std::vector<MElem> scaled;
          for (MElem x : all) scaled.push_back(lm.module->act(lm.ring_map(r), x));
          std::sort(scaled.begin(), scaled.end());
          scaled.erase(std::unique(scaled.begin(), scaled.end()), scaled.end());
          if (scaled != all) return false;
        }
      }
      return true;
    };
    if (c == "C-trivext-1")
      conclude_implies(rep, [&] { return a.prufer_A(); }, rhs,
                       "R not Prufer or M_m != rM_m somewhere");
    else
      conclude_implies(rep, rhs, [&] { return a.prufer_A(); },
                       "A is not Prufer");
  } else if (c == "C-domain-ext") {
    // A |x B for domain extensions needs infinite quotient fields; routed to
    // the symbolic knowledge base.
    rep.conclusion_holds = false;
    rep.conclusion_witness = "requires infinite domains";
    rep.status = ClaimReport::Status::Delegated;
  } else if (c == "P-tqr-1") {
    hyp(rep, "J in Jac(S)", a.j_in_jacS());
    hyp(rep, "condition star", a.star());
    conclude_implies(rep, [&] { return a.tqr_R(); }, [&] { return a.tqr_A(); },
                     "A is not a total quotient ring");
  } else if (c == "P-tqr-2") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    hyp(rep, "f(Reg(R)) in Reg(S)", a.f_reg_preserved());
    conclude_implies(rep, [&] { return a.tqr_A(); }, [&] { return a.tqr_R(); },
                     "R is not a total quotient ring");
  } else if (c == "T-gauss-fwd" || c == "T-gauss-bwd") {
    hyp(rep, "R is local", a.r_local());
    hyp(rep, "J in f(R)", a.j_in_fR());
    hyp(rep, "J in Jac(S)", a.j_in_jacS());
    auto rhs = [&] {
      if (!a.gauss_R() || !a.j_sq_zero()) return false;
      Ideal m = a.r_local() ? max_spec(R)[0] : jacobson(R);
      for (Elem r : m.members) {
        Elem fr = am.f(r);
        if (scaled_members(S, fr, am.J.members) !=
            scaled_members(S, S->mul(fr, fr), am.J.members))
          return false;
      }
      return true;
    };
    if (c == "T-gauss-fwd")
      conclude_implies(rep, [&] { return a.gauss_A(); }, rhs,
                       "R not Gaussian, J^2 != 0, or f(r)J != f(r)^2J");
    else
      conclude_implies(rep, rhs, [&] { return a.gauss_A(); },
                       "A is not Gaussian");
  } else if (c == "C-gauss-loc") {
    hyp(rep, "J in f(R)", a.j_in_fR());
    hyp(rep, "J in Jac(S)", a.j_in_jacS());
    auto rhs = [&] {
      if (!a.gauss_R()) return false;
      Ideal fij = ideal_preimage(am.f, am.J);
      for (const Ideal& m : max_spec(R)) {
        if (!fij.subset_of(m)) continue;
        auto t = mult_set_T(am, m);
        auto [st, pis] = localize_ring(S, t);
        std::vector<Elem> jm;
        for (Elem j : am.J.members) jm.push_back(pis(j));
        std::sort(jm.begin(), jm.end());
        jm.erase(std::unique(jm.begin(), jm.end()), jm.end());
        for (Elem x : jm)
          for (Elem y : jm)
            if (st->mul(x, y) != st->zero()) return false;
        for (Elem r : m.members) {
          Elem fr = pis(am.f(r));
          if (scaled_members(st, fr, jm) !=
              scaled_members(st, st->mul(fr, fr), jm))
            return false;
        }
      }
      return true;
    };
    conclude_iff(rep, a.gauss_A(), rhs(),
                 "localized Gaussian criterion disagrees");
  } else if (c == "T-chain-fwd") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    std::string wit;
    conclude_implies(
        rep, [&] { return a.chain_A(); },
        [&] { return a.valdom_R() && j_global_scaling(am, true, &wit); },
        wit.empty() ? "R is not a valuation domain" : wit);
  } else if (c == "T-chain-bwd") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    hyp(rep, "J is a uniserial R-module", is_uniserial(j_as_r_module(am)));
    conclude_implies(
        rep,
        [&] { return a.valdom_R() && j_global_scaling(am, true, nullptr); },
        [&] { return a.chain_A(); }, "A is not a chain ring");
  } else if (c == "C-chain-sq0") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    hyp(rep, "J^2 = 0", a.j_sq_zero());
    bool rhs = a.valdom_R() && is_uniserial(j_as_r_module(am)) &&
               j_global_scaling(am, false, nullptr);
    conclude_iff(rep, a.chain_A(), rhs, "square-zero chain criterion disagrees");
  } else if (c == "C-chain-fR") {
    hyp(rep, "J in f(R)", a.j_in_fR());
    conclude_iff(rep, a.chain_A(), a.chain_R() && !a.j_nonzero(),
                 "chain criterion for J in f(R) disagrees");
  } else if (c == "C-dup-chain") {
    conclude_iff(rep, a.chain_A(), a.chain_R() && !a.j_nonzero(),
                 "duplication chain criterion disagrees");
  } else if (c == "C-arith-1") {
    hyp(rep, "J != 0", a.j_nonzero(), "J is the zero ideal");
    hyp(rep, "J^2 = 0", a.j_sq_zero());
    auto rhs = [&] {
      if (!a.arith_R()) return false;
      auto jmod = j_as_r_module(am);
      for (const Ideal& p : support(jmod)) {
        auto [loc, pi] = localize_at_prime(R, p);
        if (!zero_divisors(loc).empty() &&
            zero_divisors(loc) != std::vector<Elem>{loc->zero()})
          return false;
      }
      return is_locally_divisible(jmod) && has_distributive_lattice(jmod);
    };
    conclude_iff(rep, a.arith_A(), rhs(),
                 "square-zero arithmetical criterion disagrees");
  } else if (c == "C-arith-2") {
    hyp(rep, "J in f(R)", a.j_in_fR());
    auto rhs = [&] {
      if (!a.arith_R()) return false;
      auto jmod = j_as_r_module(am);
      Ideal fij = ideal_preimage(am.f, am.J);
      for (const Ideal& m : max_spec(R)) {
        if (!fij.subset_of(m)) continue;
        if (localize_module(jmod, complement_of_prime(m)).module->size() != 1)
          return false;
      }
      for (const Ideal& q : max_spec(S)) {
        if (am.J.subset_of(q)) continue;
        auto [loc, pi] = localize_at_prime(S, q);
        if (!is_chain_ring(loc)) return false;
      }
      return true;
    };
    conclude_iff(rep, a.arith_A(), rhs(),
                 "arithmetical criterion for J in f(R) disagrees");
  } else {
    throw input_error("unknown claim id: " + c);
  }
  return rep;
}

ClaimReport timed_eval(const std::string& claim, Analysis& a) {
  auto t0 = std::chrono::steady_clock::now();
  ClaimReport rep = eval_claim(claim, a);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return rep;
}

}  // namespace

ClaimReport verify(const std::string& claim, const Instance& inst) {
  if (std::find(claim_ids().begin(), claim_ids().end(), claim) ==
      claim_ids().end())
    throw input_error("unknown claim id: " + claim);
  if (!claim_accepts(claim, inst.kind))
    throw input_error("claim " + claim + " does not apply to this instance shape");
  Analysis a(inst);
  return timed_eval(claim, a);
}

SuiteSummary run_suite(const std::vector<Instance>& corpus,
                       std::vector<std::string> claims, int jobs) {
  (void)jobs;  // evaluation order is deterministic; one instance at a time
  if (claims.empty()) claims = claim_ids();
  for (const auto& c : claims)
    if (std::find(claim_ids().begin(), claim_ids().end(), c) ==
        claim_ids().end())
      throw input_error("unknown claim id: " + c);
  SuiteSummary sum;
  for (const Instance& inst : corpus) {
    Analysis a(inst);
    for (const auto& c : claims) {
      ClaimReport rep;
      if (!claim_accepts(c, inst.kind)) {
        rep.claim = c;
        rep.instance_digest = inst.digest;
        hyp(rep, "instance shape matches the claim", false, inst.digest);
        rep.status = ClaimReport::Status::HypothesisNotMet;
      } else {
        rep = timed_eval(c, a);
      }
      switch (rep.status) {
        case ClaimReport::Status::Verified: ++sum.verified; break;
        case ClaimReport::Status::HypothesisNotMet: ++sum.hypothesis_not_met; break;
        case ClaimReport::Status::Falsified: ++sum.falsified; break;
        case ClaimReport::Status::Delegated: ++sum.delegated; break;
      }
      sum.coverage[c].push_back(rep.status);
      sum.reports.push_back(std::move(rep));
    }
  }
  std::stable_sort(sum.reports.begin(), sum.reports.end(),
                   [](const ClaimReport& x, const ClaimReport& y) {
                     if (x.claim != y.claim) return x.claim < y.claim;
                     return x.instance_digest < y.instance_digest;
                   });
  return sum;
}

std::vector<Instance> generate_corpus(const CorpusBounds& bounds) {
  if (bounds.zmod_max > limits().ring_size_cap ||
      bounds.poly_max > limits().ring_size_cap)
    throw resource_cap_error("corpus bounds exceed the ring size cap");
  std::vector<Instance> out;
  auto add_amalgam = [&](AmalgamInstance am) {
    if (am.A->size() > bounds.amalgam_size_max) return;
    out.push_back(make_instance(std::move(am)));
  };

  // Z/n with canonical surjections onto Z/d for every divisor d >= 2 and
  // every proper ideal (e) of Z/d; d = n gives the duplications.
  for (int n = 2; n <= bounds.zmod_max; ++n) {
    auto r = make_zmod(n);
    for (int d = 2; d <= n; ++d) {
      if (n % d != 0) continue;
      if (d == n) {
        for (int e = 2; e <= d; ++e) {
          if (d % e != 0) continue;
          add_amalgam(duplication(r, ideal_generated(r, {e % d})));
        }
        continue;
      }
      auto s = make_zmod(d);
      std::vector<Elem> map(n);
      for (Elem x = 0; x < n; ++x) map[x] = x % d;
      Hom f = make_hom(r, s, std::move(map));
      for (int e = 2; e <= d; ++e) {
        if (d % e != 0) continue;
        add_amalgam(amalgamation(f, ideal_generated(s, {e % d})));
      }
    }
  }

  // F_p[X]/(X^k) with truncation surjections onto F_p[X]/(X^l) and ideals
  // (X^t); l = k gives the duplications.
  for (int p : {2, 3, 5, 7, 11, 13}) {
    long pk = p;
    for (int k = 1; pk <= bounds.poly_max; ++k, pk *= p) {
      auto base = make_zmod(p);
      std::vector<Elem> mod(k + 1, 0);
      mod[k] = 1;
      auto r = make_poly_quotient(base, make_polynomial(base, mod));
      for (int l = 1; l <= k; ++l) {
        std::vector<Elem> modl(l + 1, 0);
        modl[l] = 1;
        auto xpow = [&](int t) {  // index of X^t in the base-p digit encoding
          Elem g = 1;
          for (int i = 0; i < t; ++i) g *= p;
          return g;
        };
        if (l == k) {
          for (int t = 1; t <= l; ++t)
            add_amalgam(duplication(
                r, ideal_generated(r, {t < k ? xpow(t) : r->zero()})));
          continue;
        }
        auto s = make_poly_quotient(base, make_polynomial(base, modl));
        std::vector<Elem> map(r->size());
        for (Elem x = 0; x < r->size(); ++x) map[x] = x % s->size();
        Hom f = make_hom(r, s, std::move(map));
        for (int t = 1; t <= l; ++t)
          add_amalgam(amalgamation(
              f, ideal_generated(s, {t < l ? xpow(t) : s->zero()})));
      }
    }
  }

  // Remaining prime fields up to the polynomial bound, as duplications
  // along their only proper ideal.
  for (int p = 17; p <= bounds.poly_max; ++p) {
    bool prime = p >= 2;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    auto r = make_zmod(p);
    add_amalgam(duplication(r, zero_ideal(r)));
  }

  // Trivial extensions over small modules.
  auto add_te = [&](RingPtr r, const ModulePtr& m) {
    if (r->size() * m->size() <= bounds.amalgam_size_max)
      out.push_back(make_trivext_instance(r, m));
  };
  for (int n : {2, 3, 4, 6, 8, 9, 12}) {
    auto r = make_zmod(n);
    add_te(r, ring_as_module(r));
    for (const Ideal& m : max_spec(r)) add_te(r, module_quotient(r, m));
  }
  {
    auto f2 = make_zmod(2);
    add_te(f2, module_product(ring_as_module(f2), ring_as_module(f2)));
    auto z4 = make_zmod(4);
    add_te(z4, module_from_ideal(z4, ideal_generated(z4, {2})));
    auto base = make_zmod(2);
    auto r = make_poly_quotient(base, make_polynomial(base, {0, 0, 1}));
    add_te(r, ring_as_module(r));
  }
  return out;
}

Profile parse_profile(const std::string& text) {
  Profile p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    bool want = true;
    if (tok[0] == '!') {
      want = false;
      tok = tok.substr(1);
    }
    const auto& vocab = profile_vocabulary();
    if (std::find(vocab.begin(), vocab.end(), tok) == vocab.end())
      throw input_error("unknown predicate in profile: " + tok);
    p.wants.emplace_back(tok, want);
  }
  return p;
}

const std::vector<std::string>& profile_vocabulary() {
  static const std::vector<std::string> v = {
      "prufer", "gaussian", "arithmetical", "chain", "total-quotient",
      "star",   "local",    "valuation-domain"};
  return v;
}

std::vector<Instance> search(const Profile& profile,
                             const std::vector<Instance>& corpus) {
  std::vector<Instance> hits;
  for (const Instance& inst : corpus) {
    bool match = true;
    for (const auto& [name, want] : profile.wants) {
      bool val;
      if (name == "prufer") val = is_prufer(inst.am.A);
      else if (name == "gaussian") val = is_gaussian(inst.am.A);
      else if (name == "arithmetical") val = is_arithmetical(inst.am.A);
      else if (name == "chain") val = is_chain_ring(inst.am.A);
      else if (name == "total-quotient") val = is_total_quotient_ring(inst.am.A);
      else if (name == "star") val = has_condition_star(inst.am);
      else if (name == "local") val = is_local(inst.am.A);
      else val = is_valuation_domain(inst.am.A);
      if (val != want) {
        match = false;
        break;
      }
    }
    if (match) hits.push_back(inst);
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Instance& x, const Instance& y) {
                     if (x.am.A->size() != y.am.A->size())
                       return x.am.A->size() < y.am.A->size();
                     return x.digest < y.digest;
                   });
  return hits;
}

std::string report_json(const ClaimReport& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["claim"] = report.claim;
  j["instance"] = report.instance_digest;
  auto hs = nlohmann::ordered_json::array();
  for (const auto& h : report.hypotheses) {
    nlohmann::ordered_json hj;
    hj["name"] = h.name;
    hj["holds"] = h.holds;
    if (!h.witness.empty()) hj["witness"] = h.witness;
    hs.push_back(std::move(hj));
  }
  j["hypotheses"] = std::move(hs);
  j["conclusion"]["holds"] = report.conclusion_holds;
  if (!report.conclusion_witness.empty())
    j["conclusion"]["witness"] = report.conclusion_witness;
  j["status"] = report.status_str();
  if (include_timing) j["timing_ms"] = report.elapsed_ms;
  return j.dump();
}

}  // namespace amal
