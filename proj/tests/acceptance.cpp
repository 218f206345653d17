// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "amal/infer.hpp"
#include "amal/verifier.hpp"

using namespace amal;

namespace {

int failures = 0;

void criterion(int n, const std::string& what,
               const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  std::printf("%s  %d  %s  (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", n,
              what.c_str(), secs, detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!ok) ++failures;
}

RingPtr fpx(int p, int k) {
  auto base = make_zmod(p);
  std::vector<Elem> mod(k + 1, 0);
  mod[k] = 1;
  return make_poly_quotient(base, make_polynomial(base, mod));
}

Hom mod_surjection(const RingPtr& r, const RingPtr& s) {
  std::vector<Elem> map(r->size());
  for (Elem x = 0; x < r->size(); ++x) map[x] = x % s->size();
  return make_hom(r, s, std::move(map));
}

std::vector<Elem> scaled(const RingPtr& r, Elem c, const std::vector<Elem>& m) {
  std::vector<Elem> out;
  for (Elem x : m) out.push_back(r->mul(c, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ideal_sets_equal(std::vector<Ideal> a, std::vector<Ideal> b) {
  std::vector<std::vector<Elem>> ka, kb;
  for (auto& i : a) ka.push_back(i.members);
  for (auto& i : b) kb.push_back(i.members);
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> c = generate_corpus();
  return c;
}

}  // namespace

int main() {
  criterion(
      1,
      "1024-element truncation amalgamation: Prufer total-quotient "
      "non-Gaussian with re-checkable witness and XJ != X^2 J",
      [](std::string& detail) {
        auto r = fpx(2, 8), s = fpx(2, 4);
        auto inst = amalgamation(mod_surjection(r, s), ideal_generated(s, {4}));
        if (inst.A->size() != 1024) return false;
        if (!is_prufer(inst.A)) { detail = "not Prufer"; return false; }
        if (!is_total_quotient_ring(inst.A)) { detail = "not tqr"; return false; }
        if (is_gaussian(inst.A)) { detail = "Gaussian"; return false; }
        auto w = gaussian_witness(inst.A);
        if (!w || !w->recheck()) { detail = "no witness"; return false; }
        Elem x = 2;  // X in S
        auto xj = scaled(s, x, inst.J.members);
        auto x2j = scaled(s, s->mul(x, x), inst.J.members);
        if (xj == x2j) { detail = "XJ = X^2 J"; return false; }
        return true;
      });

  criterion(
      2,
      "192-element mod-48 amalgamation: Prufer non-Gaussian with nonzero "
      "square in the localized ideal witnessed by the class of 12",
      [](std::string& detail) {
        auto r = make_zmod(48), s = make_zmod(24);
        auto inst = amalgamation(mod_surjection(r, s), ideal_generated(s, {6}));
        if (inst.A->size() != 192) return false;
        if (!is_prufer(inst.A)) { detail = "not Prufer"; return false; }
        if (is_gaussian(inst.A)) { detail = "Gaussian"; return false; }
        Ideal m = ideal_generated(r, {2});
        auto t = mult_set_T(inst, m);
        auto [st, pis] = localize_ring(s, t);
        Elem six = pis(6), twelve = pis(12);
        if (st->mul(six, six) != twelve || twelve == st->zero()) {
          detail = "class of 12 is zero in the localized square";
          return false;
        }
        return true;
      });

  criterion(
      3,
      "degree-4 into degree-2 truncation with J = (X): Gaussian, not "
      "arithmetical, J != 0 = XJ",
      [](std::string& detail) {
        auto r = fpx(2, 4), s = fpx(2, 2);
        auto inst = amalgamation(mod_surjection(r, s), ideal_generated(s, {2}));
        if (!is_gaussian(inst.A)) { detail = "not Gaussian"; return false; }
        if (is_arithmetical(inst.A)) { detail = "arithmetical"; return false; }
        if (inst.J.size() <= 1) { detail = "J = 0"; return false; }
        auto xj = scaled(s, 2, inst.J.members);
        if (xj != std::vector<Elem>{s->zero()}) { detail = "XJ != 0"; return false; }
        return true;
      });

  criterion(
      4,
      "zero-divisor suite over the default corpus: Z(A) inside S1 u S2, "
      "equality under the lemma conditions, exact idealization Z-formula",
      [](std::string& detail) {
        if (corpus().size() < 200) {
          detail = "corpus has only " + std::to_string(corpus().size());
          return false;
        }
        int violations = 0;
        for (const Instance& inst : corpus()) {
          auto [s1, s2] = star_sets(inst.am);
          std::set<Elem> un(s1.begin(), s1.end());
          un.insert(s2.begin(), s2.end());
          auto za = ring_zero_divisors(inst.am.A);
          for (Elem z : za)
            if (!un.count(z)) ++violations;
          if (lemma_conditions(inst.am).any() && !has_condition_star(inst.am))
            ++violations;
          if (inst.kind == Instance::Kind::TrivialExtension) {
            auto zr = ring_zero_divisors(inst.am.R);
            auto zm = zero_divisors_on(inst.module);
            std::set<Elem> bad(zr.begin(), zr.end());
            bad.insert(zm.begin(), zm.end());
            std::vector<Elem> expected;
            const int ms = inst.module->size();
            for (Elem rr = 0; rr < inst.am.R->size(); ++rr)
              if (bad.count(rr))
                for (int mm = 0; mm < ms; ++mm)
                  expected.push_back(rr * ms + mm);
            if (ring_zero_divisors(inst.trivext_ring) != expected) ++violations;
          }
        }
        if (violations) detail = std::to_string(violations) + " violations";
        return violations == 0;
      });

  criterion(
      5,
      "spectrum and localization suite: enumerated primes match the lifted "
      "description and all localization isomorphisms verify",
      [](std::string& detail) {
        int violations = 0;
        for (const Instance& inst : corpus()) {
          const auto& am = inst.am;
          if (!ideal_sets_equal(spec(am.A), amalgam_spec_expected(am)))
            ++violations;
          if (!ideal_sets_equal(max_spec(am.A), amalgam_max_spec_expected(am)))
            ++violations;
          try {
            for (const Ideal& p : spec(am.R))
              localization_iso(am, prime_lift_p(am, p));
            for (const Ideal& q : spec(am.S))
              if (!am.J.subset_of(q))
                localization_iso(am, prime_lift_q(am, q));
          } catch (const std::exception& e) {
            ++violations;
            detail = e.what();
          }
        }
        if (violations) detail += " (" + std::to_string(violations) + " violations)";
        return violations == 0;
      });

  criterion(
      6,
      "claim regression over the default corpus: zero falsified, every claim "
      "attains both verified and hypothesis-not-met",
      [](std::string& detail) {
        auto sum = run_suite(corpus());
        if (sum.falsified != 0) {
          for (const auto& rep : sum.reports)
            if (rep.status == ClaimReport::Status::Falsified) {
              detail = rep.str();
              break;
            }
          return false;
        }
        for (const auto& claim : claim_ids()) {
          if (claim == "C-domain-ext") continue;  // always delegated
          const auto& statuses = sum.coverage.at(claim);
          bool v = false, h = false;
          for (auto st : statuses) {
            v |= st == ClaimReport::Status::Verified;
            h |= st == ClaimReport::Status::HypothesisNotMet;
          }
          if (!v || !h) {
            detail = claim + (v ? " never hypothesis-not-met" : " never verified");
            return false;
          }
        }
        return true;
      });

  criterion(
      7,
      "Gaussian cross-validation: the coefficient-ideal check agrees with "
      "the localized predicate on small rings and never contradicts it",
      [](std::string& detail) {
        std::map<std::string, RingPtr> rings;
        for (const Instance& inst : corpus()) {
          auto a = inst.kind == Instance::Kind::TrivialExtension
                       ? inst.trivext_ring
                       : inst.am.A;
          rings.emplace(a->name(), a);
        }
        for (const auto& [name, r] : rings) {
          long budget = r->size() <= 64 ? 20000 : r->size() <= 256 ? 2000 : 200;
          auto w = gaussian_direct_check(r, 3, budget, 1);
          bool g = is_gaussian(r);
          if (w && g) {
            detail = "witness on Gaussian ring " + name;
            return false;
          }
          if (w && !w->recheck()) {
            detail = "witness fails recheck on " + name;
            return false;
          }
          if (r->size() <= 64 && !w && !g) {
            detail = "no witness on non-Gaussian ring " + name;
            return false;
          }
        }
        return true;
      });

  criterion(
      8,
      "implication chain chain => arithmetical => Gaussian => Prufer plus "
      "total-quotient on every corpus ring",
      [](std::string& detail) {
        std::map<std::string, RingPtr> rings;
        for (const Instance& inst : corpus()) {
          auto a = inst.kind == Instance::Kind::TrivialExtension
                       ? inst.trivext_ring
                       : inst.am.A;
          rings.emplace(a->name(), a);
          rings.emplace(inst.am.R->name(), inst.am.R);
        }
        for (const auto& [name, r] : rings) {
          bool ch = is_chain_ring(r), ar = is_arithmetical(r),
               ga = is_gaussian(r), pr = is_prufer(r),
               tq = is_total_quotient_ring(r);
          if ((ch && !ar) || (ar && !ga) || (ga && !pr) || !pr || !tq) {
            detail = "violation on " + name;
            return false;
          }
        }
        return true;
      });

  criterion(
      9,
      "symbolic knowledge base: power-series entries derive the expected "
      "conclusions with blocked rules and no computed contradiction",
      [](std::string& detail) {
        auto kb = apply_rules(shipped_kb());

        const auto& e1 =
            kb.entities.at("p-local-integers-into-rational-power-series");
        if (e1.get("A.is_gaussian") != TriState::True ||
            e1.get("J_square_zero") != TriState::False) {
          detail = "composite extension conclusions";
          return false;
        }
        auto d = explain(kb, e1.entity, "A.is_gaussian");
        if (d.prov.label != "prufer-domain-implies-gaussian" ||
            d.str().empty()) {
          detail = "derivation chain";
          return false;
        }
        for (const char* rule : {"T-gauss-fwd", "T-gauss-bwd"}) {
          auto app = rule_applicability(kb, e1.entity, rule);
          bool blocked = false;
          for (const auto& f : app.failing)
            if (f == "J_subset_fR = true") blocked = true;
          if (app.fired || !blocked) {
            detail = std::string(rule) + " not blocked on J in f(R)";
            return false;
          }
        }

        const auto& e2 = kb.entities.at("integers-into-rational-power-series");
        if (e2.get("A.is_arithmetical") != TriState::True ||
            e2.get("J_locally_divisible") != TriState::False) {
          detail = "integer power-series conclusions";
          return false;
        }

        // Consistency bridge: finite entries versus computed predicates.
        auto r = fpx(2, 4), s = fpx(2, 2);
        auto inst = amalgamation(mod_surjection(r, s), ideal_generated(s, {2}));
        const auto& e3 = kb.entities.at("trunc-deg4-into-deg2-over-f2");
        if ((e3.get("A.is_gaussian") == TriState::True) != is_gaussian(inst.A) ||
            (e3.get("A.is_arithmetical") == TriState::True) !=
                is_arithmetical(inst.A)) {
          detail = "bridge mismatch on the truncation entry";
          return false;
        }
        auto r48 = make_zmod(48), s24 = make_zmod(24);
        auto i48 = amalgamation(mod_surjection(r48, s24),
                                ideal_generated(s24, {6}));
        const auto& e4 = kb.entities.at("mod48-into-mod24-along-six");
        if ((e4.get("A.is_prufer") == TriState::True) != is_prufer(i48.A) ||
            (e4.get("A.is_total_quotient") == TriState::True) !=
                is_total_quotient_ring(i48.A)) {
          detail = "bridge mismatch on the mod-48 entry";
          return false;
        }
        return true;
      });

  std::printf("%s: %d/9 criteria passed\n", failures ? "FAILURE" : "SUCCESS",
              9 - failures);
  return failures;
}
