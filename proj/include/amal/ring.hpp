#pragma once

#include "amal/common.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace amal {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ring elements are indices into the owning ring's carrier enumeration.
/// Two elements of the same ring are equal iff their indices are equal;
/// the index order is the canonical enumeration order used everywhere
/// (coset representatives, worklist determinism, labels).
using Elem = int;

/// Dense polynomial over a finite ring.  coeffs[i] is the degree-i
/// coefficient; trailing zeros are trimmed so the leading coefficient of a
/// nonzero polynomial is nonzero.
struct Polynomial {
  RingPtr base;
  std::vector<Elem> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Elem coeff(int i) const;
  bool is_monic() const;
  std::string str() const;
};

Polynomial make_polynomial(RingPtr base, std::vector<Elem> coeffs);
Polynomial poly_add(const Polynomial& f, const Polynomial& g);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);

/// Construction provenance kept on rings so that downstream code (amalgams,
/// canonical homs, printing) can recover structure without re-deriving it.
struct ProductInfo {
  RingPtr left, right;
};

struct QuotientInfo {
  RingPtr base;
  std::vector<Elem> class_of;  // base elem -> quotient elem
  std::vector<Elem> reps;      // quotient elem -> minimal coset representative
};

struct SubringInfo {
  RingPtr ambient;
  std::vector<Elem> to_ambient;    // subring elem -> ambient elem
  std::vector<Elem> from_ambient;  // ambient elem -> subring elem, -1 outside
};

struct PolyQuotInfo {
  RingPtr base;
  std::vector<Elem> modulus;  // monic modulus coefficients, degree = size-1
};

/// A finite commutative ring with identity.  Immutable after construction;
/// operation tables are cached when the carrier is small enough, otherwise
/// operations evaluate on demand through the stored closures.
class Ring {
 public:
  using BinOp = std::function<Elem(Elem, Elem)>;
  using UnOp = std::function<Elem(Elem)>;
  using LabelFn = std::function<std::string(Elem)>;

  static RingPtr create(std::string name, int size, Elem zero, Elem one,
                        BinOp add, BinOp mul, UnOp neg, LabelFn label);

  int size() const { return size_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }

  Elem add(Elem a, Elem b) const {
    return add_table_.empty() ? add_fn_(a, b)
                              : add_table_[static_cast<size_t>(a) * size_ + b];
  }
  Elem mul(Elem a, Elem b) const {
    return mul_table_.empty() ? mul_fn_(a, b)
                              : mul_table_[static_cast<size_t>(a) * size_ + b];
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem a, long k) const;

  bool has_tables() const { return !add_table_.empty(); }

  std::string label(Elem a) const { return label_(a); }
  const std::string& name() const { return name_; }

  const std::optional<ProductInfo>& product_info() const { return product_; }
  const std::optional<QuotientInfo>& quotient_info() const { return quotient_; }
  const std::optional<SubringInfo>& subring_info() const { return subring_; }
  const std::optional<PolyQuotInfo>& polyquot_info() const { return polyquot_; }

 private:
  friend RingPtr make_product(RingPtr, RingPtr);
  friend std::pair<RingPtr, struct Hom> make_quotient_by_members(
      RingPtr, const std::vector<Elem>&, const std::string&);
  friend RingPtr make_subring(RingPtr, std::vector<Elem>, std::string);
  friend RingPtr make_poly_quotient(RingPtr, const Polynomial&);

  Ring() = default;

  std::string name_;
  int size_ = 0;
  Elem zero_ = 0, one_ = 0;
  BinOp add_fn_, mul_fn_;
  std::vector<Elem> neg_;
  std::vector<uint16_t> add_table_, mul_table_;
  LabelFn label_;

  std::optional<ProductInfo> product_;
  std::optional<QuotientInfo> quotient_;
  std::optional<SubringInfo> subring_;
  std::optional<PolyQuotInfo> polyquot_;
};

/// A verified ring homomorphism.  make_hom checks the hom equations on the
/// whole domain and throws validation_error naming a witness pair otherwise.
struct Hom {
  RingPtr dom, cod;
  std::vector<Elem> map;

  Elem operator()(Elem a) const { return map[a]; }
  bool is_surjective() const;
  std::vector<Elem> image() const;  // sorted
};

Hom make_hom(RingPtr dom, RingPtr cod, std::vector<Elem> map);
Hom identity_hom(RingPtr r);
Hom compose(const Hom& g, const Hom& f);  // g after f

// --- constructors ---

RingPtr make_zmod(long n);
RingPtr make_poly_quotient(RingPtr base, const Polynomial& modulus);
RingPtr make_product(RingPtr left, RingPtr right);

/// Quotient by an ideal given as its (sorted) member set.  Representatives
/// are minimal coset members under the carrier enumeration order.  The
/// companion overload taking an Ideal lives in ideal.hpp.
std::pair<RingPtr, Hom> make_quotient_by_members(RingPtr r,
                                                 const std::vector<Elem>& members,
                                                 const std::string& name);

/// Unital subring on an explicit carrier subset; throws invariant_error if
/// the subset is not closed or misses 0/1.
RingPtr make_subring(RingPtr ambient, std::vector<Elem> members, std::string name);

// --- element helpers ---

Elem product_pair(const RingPtr& prod, Elem l, Elem r);
std::pair<Elem, Elem> product_parts(const RingPtr& prod, Elem x);

/// n * 1 in r (n may be negative); interprets integer literals.
Elem nat_embed(const Ring& r, long n);

std::optional<Elem> inverse(const Ring& r, Elem a);
bool is_unit(const Ring& r, Elem a);
std::vector<Elem> units(const RingPtr& r);  // sorted

/// Exhaustive commutative-ring-axiom check (cubic loops); meant for desk
/// scale.  Returns a description of the first violation, empty if none.
std::optional<std::string> check_ring_axioms(const RingPtr& r, int size_cap = 512);

}  // namespace amal
