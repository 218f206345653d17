#pragma once

#include "amal/module.hpp"

namespace amal {

/// The amalgamation of R with S along J with respect to f: the subring
/// {(r, f(r)+j) : r in R, j in J} of R x S, kept with its projections.
struct AmalgamInstance {
  RingPtr R, S;
  Hom f;      // R -> S
  Ideal J;    // proper ideal of S
  RingPtr ambient;  // R x S
  RingPtr A;        // the amalgamation, a subring of ambient
  Hom embed;   // R -> A, r |-> (r, f(r))
  Hom proj_R;  // A -> R, surjective with kernel {(0,j)}
  Hom proj_S;  // A -> S, (r, f(r)+j) |-> f(r)+j

  std::pair<Elem, Elem> parts(Elem a) const;  // (R part, S part)
  Elem make(Elem r, Elem j) const;            // (r, f(r)+j) as an A element
  bool is_duplication = false;
};

AmalgamInstance amalgamation(const Hom& f, const Ideal& j);
AmalgamInstance duplication(RingPtr r, const Ideal& i);

/// R x M with multiplication (r,m)(r',m') = (rr', rm' + r'm), plus its
/// realization as R join^iota (0 x M) and the verified isomorphism between
/// the two presentations.
struct TrivExt {
  RingPtr ring;  // R x M presentation
  ModulePtr module;
  AmalgamInstance inst;
  Hom iso;  // inst.A -> ring, (r, iota(r)+(0,m)) |-> (r,m)
};

TrivExt trivial_extension(RingPtr r, const ModulePtr& m);

/// The two condition-star sets as sorted element sets of A:
/// S1 = {(r,f(r)+j) : r in Z(R)},
/// S2 = {(r,f(r)+j) : j'(f(r)+j) = 0 for some nonzero j' in J}.
std::pair<std::vector<Elem>, std::vector<Elem>> star_sets(const AmalgamInstance& inst);

bool has_condition_star(const AmalgamInstance& inst);

/// The four sufficient conditions of the zero-divisor lemma, evaluated
/// literally: f(Z(R)) in J and f^-1(J) != 0; f(Z(R))J = 0 and f^-1(J) != 0;
/// J in f(R); J torsion as R-module.
struct LemmaConditions {
  bool c1, c2, c3, c4;
  bool any() const { return c1 || c2 || c3 || c4; }
};
LemmaConditions lemma_conditions(const AmalgamInstance& inst);

/// J viewed as an R-module through f.
ModulePtr j_as_r_module(const AmalgamInstance& inst);

struct PrimeLift {
  enum class Kind { PType, QType } kind;
  Ideal source;  // prime of R (p-type) or of S \ V(J) (q-type)
  Ideal lifted;  // prime ideal of A
};

PrimeLift prime_lift_p(const AmalgamInstance& inst, const Ideal& p);
PrimeLift prime_lift_q(const AmalgamInstance& inst, const Ideal& q);

/// All lifts over Spec(R) and Spec(S) \ V(J), deduplicated by member set.
std::vector<Ideal> amalgam_spec_expected(const AmalgamInstance& inst);
std::vector<Ideal> amalgam_max_spec_expected(const AmalgamInstance& inst);

/// T_p = f(R \ p) + J, a multiplicative subset of S.
MultiplicativeSet mult_set_T(const AmalgamInstance& inst, const Ideal& p);

/// One of the three explicit localization isomorphisms, verified on
/// representatives as a bijective hom.
struct LocalizationIso {
  enum class Kind { QType, PTypeOutside, PTypeInside } kind;
  Ideal prime;        // the prime of A that was localized at
  RingPtr localized;  // A localized at that prime
  RingPtr target;     // S_q, R_p, or R_p join J_{T_p}
  Hom iso;            // localized -> target, bijective
};

LocalizationIso localization_iso(const AmalgamInstance& inst, const PrimeLift& lift);

/// Z(A) by exhaustive scan; a convenience shared with the predicates module.
std::vector<Elem> ring_zero_divisors(const RingPtr& r);

}  // namespace amal
