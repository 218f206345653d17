#include "amal/amalgam.hpp"

#include <algorithm>

namespace amal {

std::vector<Elem> ring_zero_divisors(const RingPtr& r) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r->size(); ++a)
    for (Elem b = 0; b < r->size(); ++b)
      if (b != r->zero() && r->mul(a, b) == r->zero()) {
        out.push_back(a);
        break;
      }
  return out;
}

std::pair<Elem, Elem> AmalgamInstance::parts(Elem a) const {
  return product_parts(ambient, A->subring_info()->to_ambient[a]);
}

Elem AmalgamInstance::make(Elem r, Elem j) const {
  Elem s = S->add(f(r), j);
  Elem amb = product_pair(ambient, r, s);
  Elem a = A->subring_info()->from_ambient[amb];
  if (a < 0) throw invariant_error("pair (r, f(r)+j) escaped the amalgamation");
  return a;
}

AmalgamInstance amalgamation(const Hom& f, const Ideal& j) {
  if (j.ring.get() != f.cod.get())
    throw input_error("J must be an ideal of the hom codomain");
  if (j.is_whole_ring()) throw input_error("J must be a proper ideal");
  RingPtr r = f.dom, s = f.cod;
  auto ambient = make_product(r, s);
  std::vector<Elem> members;
  members.reserve(static_cast<size_t>(r->size()) * j.members.size());
  for (Elem x = 0; x < r->size(); ++x)
    for (Elem jj : j.members)
      members.push_back(product_pair(ambient, x, s->add(f(x), jj)));
  auto a = make_subring(ambient, std::move(members),
                        r->name() + " |><| " + j.str());
  if (a->size() != r->size() * j.size())
    throw invariant_error("|A| != |R| * |J|");

  const auto& from = a->subring_info()->from_ambient;
  std::vector<Elem> embed_map(r->size());
  for (Elem x = 0; x < r->size(); ++x)
    embed_map[x] = from[product_pair(ambient, x, f(x))];
  std::vector<Elem> projr_map(a->size()), projs_map(a->size());
  for (Elem x = 0; x < a->size(); ++x) {
    auto [pr, ps] = product_parts(ambient, a->subring_info()->to_ambient[x]);
    projr_map[x] = pr;
    projs_map[x] = ps;
  }
  AmalgamInstance inst{r,
                       s,
                       f,
                       j,
                       ambient,
                       a,
                       make_hom(r, a, std::move(embed_map)),
                       make_hom(a, r, std::move(projr_map)),
                       make_hom(a, s, std::move(projs_map))};
  return inst;
}

AmalgamInstance duplication(RingPtr r, const Ideal& i) {
  auto inst = amalgamation(identity_hom(r), i);
  inst.is_duplication = true;
  return inst;
}

TrivExt trivial_extension(RingPtr r, const ModulePtr& m) {
  if (m->base().get() != r.get())
    throw input_error("trivial extension requires a module over R");
  RingPtr base = r;
  ModulePtr mod = m;
  const int ms = m->size();
  auto add = [base, mod, ms](Elem a, Elem b) {
    return base->add(a / ms, b / ms) * ms + mod->add(a % ms, b % ms);
  };
  auto mul = [base, mod, ms](Elem a, Elem b) {
    Elem rr = base->mul(a / ms, b / ms);
    MElem mm = mod->add(mod->act(a / ms, b % ms), mod->act(b / ms, a % ms));
    return rr * ms + mm;
  };
  auto neg = [base, mod, ms](Elem a) {
    return base->neg(a / ms) * ms + mod->neg(a % ms);
  };
  auto label = [base, mod, ms](Elem a) {
    return "(" + base->label(a / ms) + "," + mod->label(a % ms) + ")";
  };
  auto t = Ring::create(r->name() + " |x " + m->name(), r->size() * ms,
                        r->zero() * ms + m->zero(), r->one() * ms + m->zero(),
                        add, mul, neg, label);

  // J = 0 |x M
  std::vector<Elem> jm;
  for (MElem x = 0; x < ms; ++x) jm.push_back(r->zero() * ms + x);
  Ideal j = ideal_from_members(t, std::move(jm));

  std::vector<Elem> iota_map(r->size());
  for (Elem x = 0; x < r->size(); ++x) iota_map[x] = x * ms + m->zero();
  Hom iota = make_hom(r, t, std::move(iota_map));

  auto inst = amalgamation(iota, j);
  // (r, iota(r)+(0,m)) |-> (r,m) is exactly the S-coordinate projection
  Hom iso = inst.proj_S;
  if (!iso.is_surjective())
    throw invariant_error("trivial extension isomorphism is not bijective");
  return TrivExt{t, m, std::move(inst), std::move(iso)};
}

std::pair<std::vector<Elem>, std::vector<Elem>> star_sets(const AmalgamInstance& inst) {
  auto zr = ring_zero_divisors(inst.R);
  std::vector<char> in_zr(inst.R->size(), 0);
  for (Elem z : zr) in_zr[z] = 1;
  std::vector<Elem> s1, s2;
  for (Elem a = 0; a < inst.A->size(); ++a) {
    auto [r, s] = inst.parts(a);
    if (in_zr[r]) s1.push_back(a);
    for (Elem jp : inst.J.members) {
      if (jp == inst.S->zero()) continue;
      if (inst.S->mul(jp, s) == inst.S->zero()) {
        s2.push_back(a);
        break;
      }
    }
  }
  return {std::move(s1), std::move(s2)};
}

bool has_condition_star(const AmalgamInstance& inst) {
  auto [s1, s2] = star_sets(inst);
  std::vector<Elem> un;
  std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(),
                 std::back_inserter(un));
  return ring_zero_divisors(inst.A) == un;
}

LemmaConditions lemma_conditions(const AmalgamInstance& inst) {
  const Ring& s = *inst.S;
  auto zr = ring_zero_divisors(inst.R);
  bool preimage_nonzero = false;
  for (Elem x = 0; x < inst.R->size(); ++x)
    if (x != inst.R->zero() && inst.J.contains(inst.f(x))) {
      preimage_nonzero = true;
      break;
    }
  bool fz_in_j = true, fzj_zero = true;
  for (Elem z : zr) {
    if (!inst.J.contains(inst.f(z))) fz_in_j = false;
    for (Elem jj : inst.J.members)
      if (s.mul(inst.f(z), jj) != s.zero()) fzj_zero = false;
  }
  std::vector<char> in_image(s.size(), 0);
  for (Elem im : inst.f.image()) in_image[im] = 1;
  bool j_in_fr = true;
  for (Elem jj : inst.J.members)
    if (!in_image[jj]) j_in_fr = false;
  bool torsion = is_torsion(j_as_r_module(inst));
  return LemmaConditions{fz_in_j && preimage_nonzero,
                         fzj_zero && preimage_nonzero, j_in_fr, torsion};
}

ModulePtr j_as_r_module(const AmalgamInstance& inst) {
  return module_via_hom(inst.f, module_from_ideal(inst.S, inst.J));
}

PrimeLift prime_lift_p(const AmalgamInstance& inst, const Ideal& p) {
  if (p.ring.get() != inst.R.get()) throw input_error("p must be a prime of R");
  if (!is_prime(p)) throw precondition_error("not a prime ideal: " + p.str());
  std::vector<char> in(inst.R->size(), 0);
  for (Elem x : p.members) in[x] = 1;
  std::vector<Elem> members;
  for (Elem a = 0; a < inst.A->size(); ++a)
    if (in[inst.parts(a).first]) members.push_back(a);
  auto lifted = ideal_from_members(inst.A, std::move(members));
  if (!is_prime(lifted))
    throw invariant_error("p-type lift of " + p.str() + " is not prime");
  return PrimeLift{PrimeLift::Kind::PType, p, std::move(lifted)};
}

PrimeLift prime_lift_q(const AmalgamInstance& inst, const Ideal& q) {
  if (q.ring.get() != inst.S.get()) throw input_error("q must be a prime of S");
  if (!is_prime(q)) throw precondition_error("not a prime ideal: " + q.str());
  if (inst.J.subset_of(q))
    throw input_error("q-type lift requires q outside V(J)");
  std::vector<char> in(inst.S->size(), 0);
  for (Elem x : q.members) in[x] = 1;
  std::vector<Elem> members;
  for (Elem a = 0; a < inst.A->size(); ++a)
    if (in[inst.parts(a).second]) members.push_back(a);
  auto lifted = ideal_from_members(inst.A, std::move(members));
  if (!is_prime(lifted))
    throw invariant_error("q-type lift of " + q.str() + " is not prime");
  return PrimeLift{PrimeLift::Kind::QType, q, std::move(lifted)};
}

namespace {

std::vector<Ideal> lifts_over(const AmalgamInstance& inst,
                              const std::vector<Ideal>& r_primes,
                              const std::vector<Ideal>& s_primes) {
  std::vector<Ideal> out;
  for (const Ideal& p : r_primes) out.push_back(prime_lift_p(inst, p).lifted);
  for (const Ideal& q : s_primes) {
    if (inst.J.subset_of(q)) continue;
    out.push_back(prime_lift_q(inst, q).lifted);
  }
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Ideal& a, const Ideal& b) {
                          return a.same_members(b);
                        }),
            out.end());
  return out;
}

}  // namespace

std::vector<Ideal> amalgam_spec_expected(const AmalgamInstance& inst) {
  return lifts_over(inst, spec(inst.R), spec(inst.S));
}

std::vector<Ideal> amalgam_max_spec_expected(const AmalgamInstance& inst) {
  return lifts_over(inst, max_spec(inst.R), max_spec(inst.S));
}

MultiplicativeSet mult_set_T(const AmalgamInstance& inst, const Ideal& p) {
  if (p.ring.get() != inst.R.get()) throw input_error("p must be a prime of R");
  if (!is_prime(p)) throw precondition_error("not a prime ideal: " + p.str());
  std::vector<Elem> seed;
  for (Elem x = 0; x < inst.R->size(); ++x) {
    if (p.contains(x)) continue;
    for (Elem jj : inst.J.members) seed.push_back(inst.S->add(inst.f(x), jj));
  }
  return make_mult_set(inst.S, std::move(seed));
}

LocalizationIso localization_iso(const AmalgamInstance& inst, const PrimeLift& lift) {
  auto [loc, pi] = localize_at_prime(inst.A, lift.lifted);

  LocalizationIso::Kind kind;
  RingPtr target;
  std::function<Elem(Elem)> g;  // elementwise map on A

  if (lift.kind == PrimeLift::Kind::QType) {
    kind = LocalizationIso::Kind::QType;
    auto [sq, pis] = localize_at_prime(inst.S, lift.source);
    target = sq;
    auto map = pis.map;
    auto instc = inst;
    g = [instc, map](Elem a) { return map[instc.parts(a).second]; };
  } else {
    Ideal fij = ideal_preimage(inst.f, inst.J);
    if (!fij.subset_of(lift.source)) {
      kind = LocalizationIso::Kind::PTypeOutside;
      auto [rp, pir] = localize_at_prime(inst.R, lift.source);
      target = rp;
      auto map = pir.map;
      auto instc = inst;
      g = [instc, map](Elem a) { return map[instc.parts(a).first]; };
    } else {
      kind = LocalizationIso::Kind::PTypeInside;
      auto [rp, pir] = localize_at_prime(inst.R, lift.source);
      auto tp = mult_set_T(inst, lift.source);
      auto [stp, pis] = localize_ring(inst.S, tp);
      // induced hom f_p : R_p -> S_{T_p}
      std::vector<Elem> fp_map(rp->size());
      const auto& rreps = rp->quotient_info()->reps;
      for (Elem c = 0; c < rp->size(); ++c) fp_map[c] = pis(inst.f(rreps[c]));
      Hom fp = make_hom(rp, stp, fp_map);
      for (Elem x = 0; x < inst.R->size(); ++x)
        if (fp(pir(x)) != pis(inst.f(x)))
          throw invariant_error("induced hom f_p does not factor through R_p");
      Ideal jtp = ideal_image(pis, inst.J);
      auto sub = amalgamation(fp, jtp);
      target = sub.A;
      const auto& from = sub.A->subring_info()->from_ambient;
      auto amb = sub.ambient;
      auto rmap = pir.map;
      auto smap = pis.map;
      auto instc = inst;
      g = [instc, from, amb, rmap, smap](Elem a) {
        auto [r, s] = instc.parts(a);
        Elem e = from[product_pair(amb, rmap[r], smap[s])];
        if (e < 0)
          throw invariant_error("localized pair escaped R_p |><| J_{T_p}");
        return e;
      };
    }
  }

  // induced map on the localization, defined on representatives
  const auto& areps = loc->quotient_info()->reps;
  std::vector<Elem> iso_map(loc->size());
  for (Elem c = 0; c < loc->size(); ++c) iso_map[c] = g(areps[c]);
  for (Elem a = 0; a < inst.A->size(); ++a)
    if (g(a) != iso_map[pi(a)])
      throw invariant_error("localization map does not factor through the kernel");
  Hom iso = make_hom(loc, target, iso_map);  // throws if not a hom
  if (loc->size() != target->size())
    throw invariant_error("localization isomorphism: size mismatch");
  std::vector<char> hit(target->size(), 0);
  for (Elem v : iso.map) {
    if (hit[v]) throw invariant_error("localization isomorphism not injective");
    hit[v] = 1;
  }
  return LocalizationIso{kind, lift.lifted, loc, target, std::move(iso)};
}

}  // namespace amal
