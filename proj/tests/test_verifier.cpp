#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "amal/verifier.hpp"

using namespace amal;

namespace {

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

Instance z48_instance() {
  auto r = make_zmod(48), s = make_zmod(24);
  return make_instance(amalgamation(mod_surjection(r, s),
                                    ideal_generated(s, {6})));
}

Instance big_poly_instance() {
  auto r = fpx(2, 8), s = fpx(2, 4);
  return make_instance(amalgamation(mod_surjection(r, s),
                                    ideal_generated(s, {4})));  // J = (X^2)
}

const ClaimReport::Status Verified = ClaimReport::Status::Verified;
const ClaimReport::Status HypMiss = ClaimReport::Status::HypothesisNotMet;

}  // namespace

TEST_CASE("claim registry is closed, ordered, and duplicate-free") {
  const auto& ids = claim_ids();
  CHECK(ids.size() == 35);
  std::set<std::string> uniq(ids.begin(), ids.end());
  CHECK(uniq.size() == ids.size());
  CHECK_THROWS_AS(verify("no-such-claim", z48_instance()), input_error);
}

TEST_CASE("claim shapes: duplication and trivial-extension claims are picky") {
  CHECK(claim_accepts("C-dup-1", Instance::Kind::Duplication));
  CHECK_FALSE(claim_accepts("C-dup-1", Instance::Kind::Amalgam));
  CHECK_FALSE(claim_accepts("R-trivext", Instance::Kind::Duplication));
  CHECK(claim_accepts("R-trivext", Instance::Kind::TrivialExtension));
  CHECK(claim_accepts("T-main-1", Instance::Kind::TrivialExtension));
  CHECK_THROWS_AS(verify("C-dup-1", z48_instance()), input_error);
}

TEST_CASE("Prufer transfer is verified on the mod-48 instance") {
  auto inst = z48_instance();
  auto rep = verify("T-main-1", inst);
  CHECK(rep.status == Verified);
  for (const auto& h : rep.hypotheses) CHECK(h.holds);
  CHECK(rep.conclusion_holds);
  // A has two maximal ideals, so Z(A) is not inside Jac(A) and the
  // converse direction reports its missing hypothesis.
  auto rep2 = verify("T-main-2", inst);
  CHECK(rep2.status == HypMiss);
}

TEST_CASE("Gaussian transfer on the 1024-element instance: both sides fail") {
  auto inst = big_poly_instance();
  CHECK(inst.am.A->size() == 1024);
  auto fwd = verify("T-gauss-fwd", inst);
  CHECK(fwd.status == Verified);  // A is not Gaussian, so the implication is vacuous
  CHECK(fwd.conclusion_witness == "vacuous: antecedent fails");
  auto bwd = verify("T-gauss-bwd", inst);
  CHECK(bwd.status == Verified);
}

TEST_CASE("localized Gaussian criterion on the mod-48 instance") {
  auto inst = z48_instance();
  auto rep = verify("C-gauss-loc", inst);
  // A is not Gaussian and J_m^2 != 0 at m = (2): both sides of the
  // biconditional fail, so the claim is verified.
  CHECK(rep.status == Verified);
  CHECK(rep.conclusion_holds);
  CHECK_FALSE(is_gaussian(inst.am.A));
}

TEST_CASE("chain transfer: F2 amalgamated into F2[X]/(X^2) along (X)") {
  auto r = make_zmod(2);
  auto s = fpx(2, 2);
  std::vector<Elem> map = {0, 1};
  auto inst = make_instance(
      amalgamation(make_hom(r, s, std::move(map)), ideal_generated(s, {2})));
  CHECK(inst.am.A->size() == 4);
  CHECK(is_chain_ring(inst.am.A));
  auto bwd = verify("T-chain-bwd", inst);
  CHECK(bwd.status == Verified);
  auto fwd = verify("T-chain-fwd", inst);
  CHECK(fwd.status == Verified);
  auto sq = verify("C-chain-sq0", inst);
  CHECK(sq.status == Verified);
}

TEST_CASE("hypothesis-not-met is reported, not silently skipped") {
  auto r = make_zmod(6);
  auto inst = make_instance(duplication(r, zero_ideal(r)));
  auto rep = verify("T-chain-bwd", inst);
  CHECK(rep.status == HypMiss);
  REQUIRE(!rep.hypotheses.empty());
  CHECK(rep.hypotheses[0].name == "J != 0");
  CHECK_FALSE(rep.hypotheses[0].holds);
  CHECK(rep.status_str() == "hypothesis-not-met");
}

TEST_CASE("domain-extension claim is delegated to the symbolic layer") {
  auto f2 = make_zmod(2);
  auto inst = make_trivext_instance(f2, ring_as_module(f2));
  auto rep = verify("C-domain-ext", inst);
  CHECK(rep.status == ClaimReport::Status::Delegated);
  CHECK(rep.status_str() == "delegated: symbolic");
}

TEST_CASE("trivial extension claims on F2 |x F2^2") {
  auto f2 = make_zmod(2);
  auto m = module_product(ring_as_module(f2), ring_as_module(f2));
  auto inst = make_trivext_instance(f2, m);
  CHECK(verify("R-trivext", inst).status == Verified);
  CHECK(verify("C-trivext-1", inst).status == Verified);
  CHECK(verify("C-trivext-2", inst).status == Verified);
}

TEST_CASE("suite on the empty corpus is trivially green") {
  auto sum = run_suite({});
  CHECK(sum.ok());
  CHECK(sum.verified == 0);
  CHECK(sum.reports.empty());
  CHECK_THROWS_AS(run_suite({}, {"bogus"}), input_error);
}

TEST_CASE("suite over a small corpus: no falsified claims, full bookkeeping") {
  auto corpus = generate_corpus({8, 4, 64});
  CHECK(corpus.size() >= 30);
  auto sum = run_suite(corpus);
  CHECK(sum.ok());
  CHECK(sum.verified > 0);
  CHECK(sum.hypothesis_not_met > 0);
  CHECK(sum.delegated > 0);
  CHECK(sum.falsified == 0);
  CHECK(sum.reports.size() == corpus.size() * claim_ids().size());
  CHECK(std::is_sorted(sum.reports.begin(), sum.reports.end(),
                       [](const ClaimReport& x, const ClaimReport& y) {
                         return std::tie(x.claim, x.instance_digest) <
                                std::tie(y.claim, y.instance_digest);
                       }));
  // Shape-mismatched pairs surface as a failed shape hypothesis.
  bool saw_shape = false;
  for (const auto& rep : sum.reports)
    if (!rep.hypotheses.empty() &&
        rep.hypotheses[0].name == "instance shape matches the claim")
      saw_shape = true;
  CHECK(saw_shape);
  // Every claim has coverage entries for every instance.
  for (const auto& c : claim_ids())
    CHECK(sum.coverage.at(c).size() == corpus.size());
}

TEST_CASE("corpus generation is deterministic and capped") {
  auto a = generate_corpus({8, 4, 64});
  auto b = generate_corpus({8, 4, 64});
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].digest == b[i].digest);
  for (const auto& inst : a) {
    int sz = inst.kind == Instance::Kind::TrivialExtension
                 ? inst.trivext_ring->size()
                 : inst.am.A->size();
    CHECK(sz <= 64);
  }
  bool has_dup = false, has_te = false;
  for (const auto& inst : a) {
    has_dup |= inst.kind == Instance::Kind::Duplication;
    has_te |= inst.kind == Instance::Kind::TrivialExtension;
  }
  CHECK(has_dup);
  CHECK(has_te);
  CHECK_THROWS_AS(generate_corpus({1 << 20, 4, 64}), resource_cap_error);
}

TEST_CASE("profile parsing and search") {
  auto p = parse_profile("prufer, !gaussian");
  REQUIRE(p.wants.size() == 2);
  CHECK(p.wants[0] == std::pair<std::string, bool>{"prufer", true});
  CHECK(p.wants[1] == std::pair<std::string, bool>{"gaussian", false});
  CHECK_THROWS_AS(parse_profile("prufer,!frobnitz"), input_error);

  auto f2 = make_zmod(2);
  std::vector<Instance> corpus;
  corpus.push_back(z48_instance());  // |A| = 192, Prufer, not Gaussian
  auto z4 = make_zmod(4);
  corpus.push_back(make_instance(duplication(z4, ideal_generated(z4, {2}))));
  corpus.push_back(make_trivext_instance(
      f2, module_product(ring_as_module(f2), ring_as_module(f2))));

  auto hits = search(parse_profile("prufer,!gaussian"), corpus);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].am.A->size() == 192);

  // Both 8-element instances are local non-chain Gaussian rings.
  auto hits2 = search(parse_profile("gaussian,!arithmetical"), corpus);
  REQUIRE(hits2.size() == 2);
  CHECK(hits2[0].am.A->size() == 8);

  // Results come smallest ring first.
  auto all = search(parse_profile("prufer"), corpus);
  REQUIRE(all.size() == 3);
  CHECK(all[0].am.A->size() <= all[1].am.A->size());
  CHECK(all[1].am.A->size() <= all[2].am.A->size());
}

TEST_CASE("reports render as stable single-line JSON") {
  auto inst = z48_instance();
  auto rep = verify("T-main-1", inst);
  auto j = report_json(rep);
  CHECK(j.find("\"claim\":\"T-main-1\"") != std::string::npos);
  CHECK(j.find("\"status\":\"verified\"") != std::string::npos);
  CHECK(j.find("timing") == std::string::npos);
  CHECK(j.find('\n') == std::string::npos);
  auto jt = report_json(rep, true);
  CHECK(jt.find("timing_ms") != std::string::npos);
  CHECK(report_json(rep) == report_json(verify("T-main-1", inst)));
  CHECK(rep.str().find("T-main-1 [verified]") == 0);
}
