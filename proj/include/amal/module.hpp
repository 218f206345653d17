#pragma once

#include "amal/ideal.hpp"

#include <memory>

namespace amal {

class Module;
using ModulePtr = std::shared_ptr<const Module>;

/// Module element = index into the module carrier, same convention as rings.
using MElem = int;

/// A finite module over a finite ring.  Immutable; the action and addition
/// are total functions on indices.
class Module {
 public:
  using AddOp = std::function<MElem(MElem, MElem)>;
  using ActOp = std::function<MElem(Elem, MElem)>;
  using LabelFn = std::function<std::string(MElem)>;

  static ModulePtr create(std::string name, RingPtr base, int size, MElem zero,
                          AddOp add, ActOp act, LabelFn label);

  const RingPtr& base() const { return base_; }
  int size() const { return size_; }
  MElem zero() const { return zero_; }
  MElem add(MElem a, MElem b) const { return add_(a, b); }
  MElem act(Elem r, MElem m) const { return act_(r, m); }
  MElem neg(MElem a) const { return neg_[a]; }
  std::string label(MElem a) const { return label_(a); }
  const std::string& name() const { return name_; }

 private:
  Module() = default;
  std::string name_;
  RingPtr base_;
  int size_ = 0;
  MElem zero_ = 0;
  AddOp add_;
  ActOp act_;
  std::vector<MElem> neg_;
  LabelFn label_;
};

/// Exhaustive abelian-group + bilinearity + associativity + unitality check.
/// Returns the first violation, empty if none.
std::optional<std::string> check_module_axioms(const ModulePtr& m,
                                               long op_budget = 50000000);

ModulePtr module_from_ideal(RingPtr r, const Ideal& i);
ModulePtr module_quotient(RingPtr r, const Ideal& i);  // R/I as R-module
ModulePtr module_product(const ModulePtr& m, const ModulePtr& n);
ModulePtr module_via_hom(const Hom& f, const ModulePtr& m);  // restrict scalars
ModulePtr ring_as_module(RingPtr r);
ModulePtr zero_module(RingPtr r);

/// Z(M) = {r in R : r kills some nonzero m}.
std::vector<Elem> zero_divisors_on(const ModulePtr& m);

/// Every element killed by some regular element of the base ring.
bool is_torsion(const ModulePtr& m);

struct Submodule {
  ModulePtr module;
  std::vector<MElem> members;  // sorted

  int size() const { return static_cast<int>(members.size()); }
  bool contains(MElem a) const;
  bool subset_of(const Submodule& other) const;
};

Submodule submodule_generated(const ModulePtr& m, std::vector<MElem> gens);
Submodule submodule_sum(const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const Submodule& a, const Submodule& b);
std::vector<Submodule> submodules(const ModulePtr& m);

bool is_uniserial(const ModulePtr& m);

/// (N+L) cap K = (N cap K) + (L cap K) over all submodule triples.
bool has_distributive_lattice(const ModulePtr& m);

/// Multiplicative subset; closed under multiplication with 1 adjoined at
/// construction.
struct MultiplicativeSet {
  RingPtr ring;
  std::vector<Elem> members;  // sorted

  bool contains(Elem a) const;
};

MultiplicativeSet make_mult_set(RingPtr r, std::vector<Elem> seed);
MultiplicativeSet complement_of_prime(const Ideal& p);  // checks primality

/// Localization of a finite ring as the quotient by
/// K = {r : ur = 0 for some u in U}; images of U are verified to be units.
std::pair<RingPtr, Hom> localize_ring(const RingPtr& r, const MultiplicativeSet& u);
std::pair<RingPtr, Hom> localize_at_prime(const RingPtr& r, const Ideal& p);

struct LocalizedModule {
  ModulePtr module;          // module over the localized ring
  RingPtr localized_ring;
  Hom ring_map;              // R -> localized ring
  std::vector<MElem> proj;   // original module elem -> localized elem
};

LocalizedModule localize_module(const ModulePtr& m, const MultiplicativeSet& u);

std::vector<Ideal> support(const ModulePtr& m);  // primes p with M_p != 0

/// Every nonzero r of the localized ring satisfies r*M_m = M_m, at every
/// maximal ideal in the support.
bool is_locally_divisible(const ModulePtr& m);

}  // namespace amal
