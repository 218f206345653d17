#pragma once

#include "amal/ring.hpp"

#include <vector>

namespace amal {

/// An ideal of a finite ring: generator list plus the full member set.
/// Members are sorted; equality and dedup key on the member set, never on
/// the generators.
struct Ideal {
  RingPtr ring;
  std::vector<Elem> gens;
  std::vector<Elem> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(Elem a) const;
  bool is_zero() const { return size() == 1; }
  bool is_whole_ring() const { return size() == ring->size(); }
  bool same_members(const Ideal& other) const { return members == other.members; }
  bool subset_of(const Ideal& other) const;
  std::string str() const;  // "(g1,g2,...)" over a minimal generating set
};

Ideal ideal_generated(RingPtr r, std::vector<Elem> gens);
Ideal ideal_from_members(RingPtr r, std::vector<Elem> members);  // asserts closure
Ideal zero_ideal(RingPtr r);
Ideal unit_ideal(RingPtr r);
Ideal principal_ideal(RingPtr r, Elem a);

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_intersection(const Ideal& a, const Ideal& b);

/// Every ideal exactly once: closure of the principal ideals under sums,
/// worklist processed breadth-first by ideal size.  Output sorted by
/// (size, members) for deterministic golden tests.
std::vector<Ideal> all_ideals(const RingPtr& r);

bool is_prime(const Ideal& i);
bool is_maximal(const Ideal& i);

std::vector<Ideal> spec(const RingPtr& r);
std::vector<Ideal> max_spec(const RingPtr& r);
Ideal jacobson(const RingPtr& r);
std::vector<Ideal> variety(const Ideal& i);  // primes containing i

bool is_regular_ideal(const Ideal& i);
Ideal annihilator(const RingPtr& r, Elem x);

/// Greedy small generating set, used for printing.
std::vector<Elem> minimal_gens(const Ideal& i);

std::pair<RingPtr, Hom> make_quotient(RingPtr r, const Ideal& i);

/// Image of an ideal under a surjective hom (elementwise; the image of an
/// ideal under a surjection is an ideal).
Ideal ideal_image(const Hom& f, const Ideal& i);

/// Ideal of the codomain generated by the image (any hom).
Ideal extension_ideal(const Hom& f, const Ideal& i);

/// Preimage f^{-1}(J), an ideal of the domain.
Ideal ideal_preimage(const Hom& f, const Ideal& j);

}  // namespace amal
