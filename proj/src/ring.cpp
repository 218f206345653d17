#include "amal/ring.hpp"

#include <algorithm>
#include <sstream>

namespace amal {

Limits& limits() {
  static Limits l;
  return l;
}

// --- Polynomial ---

Elem Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return base->zero();
  return coeffs[i];
}

bool Polynomial::is_monic() const {
  return !is_zero() && coeffs.back() == base->one();
}

std::string Polynomial::str() const {
  if (is_zero()) return base->label(base->zero());
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Elem c = coeffs[i];
    if (c == base->zero()) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0 || c != base->one()) out << base->label(c);
    if (i > 0 && c != base->one()) out << "*";
    if (i == 1) out << "X";
    if (i > 1) out << "X^" << i;
  }
  return out.str();
}

Polynomial make_polynomial(RingPtr base, std::vector<Elem> coeffs) {
  while (!coeffs.empty() && coeffs.back() == base->zero()) coeffs.pop_back();
  for (Elem c : coeffs)
    if (c < 0 || c >= base->size())
      throw input_error("polynomial coefficient out of range");
  return Polynomial{std::move(base), std::move(coeffs)};
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g) {
  const Ring& r = *f.base;
  std::vector<Elem> c(std::max(f.coeffs.size(), g.coeffs.size()), r.zero());
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = r.add(f.coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
  return make_polynomial(f.base, std::move(c));
}

Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
  const Ring& r = *f.base;
  if (f.is_zero() || g.is_zero()) return make_polynomial(f.base, {});
  std::vector<Elem> c(f.coeffs.size() + g.coeffs.size() - 1, r.zero());
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    for (size_t j = 0; j < g.coeffs.size(); ++j)
      c[i + j] = r.add(c[i + j], r.mul(f.coeffs[i], g.coeffs[j]));
  return make_polynomial(f.base, std::move(c));
}

// --- Ring ---

RingPtr Ring::create(std::string name, int size, Elem zero, Elem one,
                     BinOp add, BinOp mul, UnOp neg, LabelFn label) {
  if (size < 1) throw input_error("ring carrier must be nonempty");
  if (size > limits().ring_size_cap)
    throw resource_cap_error("ring size " + std::to_string(size) +
                             " exceeds cap " +
                             std::to_string(limits().ring_size_cap));
  if (zero == one) throw input_error("zero ring rejected (1 = 0)");

  auto r = std::shared_ptr<Ring>(new Ring());
  r->name_ = std::move(name);
  r->size_ = size;
  r->zero_ = zero;
  r->one_ = one;
  r->add_fn_ = std::move(add);
  r->mul_fn_ = std::move(mul);
  r->label_ = std::move(label);

  r->neg_.resize(size);
  for (Elem a = 0; a < size; ++a) r->neg_[a] = neg(a);

  // Cheap sanity pass; the full axiom check is a separate test-time tool.
  for (Elem a = 0; a < size; ++a) {
    if (r->add_fn_(a, zero) != a)
      throw invariant_error(r->name_ + ": a + 0 != a at " + r->label_(a));
    if (r->mul_fn_(a, one) != a)
      throw invariant_error(r->name_ + ": a * 1 != a at " + r->label_(a));
    if (r->add_fn_(a, r->neg_[a]) != zero)
      throw invariant_error(r->name_ + ": a + (-a) != 0 at " + r->label_(a));
  }

  if (size <= limits().table_cache_limit) {
    r->add_table_.resize(static_cast<size_t>(size) * size);
    r->mul_table_.resize(static_cast<size_t>(size) * size);
    for (Elem a = 0; a < size; ++a)
      for (Elem b = 0; b < size; ++b) {
        r->add_table_[static_cast<size_t>(a) * size + b] =
            static_cast<uint16_t>(r->add_fn_(a, b));
        r->mul_table_[static_cast<size_t>(a) * size + b] =
            static_cast<uint16_t>(r->mul_fn_(a, b));
      }
  }
  return r;
}

Elem Ring::pow(Elem a, long k) const {
  Elem acc = one_;
  for (long i = 0; i < k; ++i) acc = mul(acc, a);
  return acc;
}

// --- Hom ---

std::vector<Elem> Hom::image() const {
  std::vector<Elem> im(map);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

bool Hom::is_surjective() const {
  return static_cast<int>(image().size()) == cod->size();
}

Hom make_hom(RingPtr dom, RingPtr cod, std::vector<Elem> map) {
  if (static_cast<int>(map.size()) != dom->size())
    throw input_error("hom map must be total on the domain carrier");
  for (Elem v : map)
    if (v < 0 || v >= cod->size())
      throw input_error("hom map value out of codomain range");
  if (map[dom->one()] != cod->one())
    throw validation_error("not a homomorphism: 1 |-> " +
                           cod->label(map[dom->one()]));
  for (Elem a = 0; a < dom->size(); ++a)
    for (Elem b = a; b < dom->size(); ++b) {
      if (map[dom->add(a, b)] != cod->add(map[a], map[b]))
        throw validation_error("not a homomorphism: additive violation at (" +
                               dom->label(a) + ", " + dom->label(b) + ")");
      if (map[dom->mul(a, b)] != cod->mul(map[a], map[b]))
        throw validation_error(
            "not a homomorphism: multiplicative violation at (" +
            dom->label(a) + ", " + dom->label(b) + ")");
    }
  return Hom{std::move(dom), std::move(cod), std::move(map)};
}

Hom identity_hom(RingPtr r) {
  std::vector<Elem> map(r->size());
  for (Elem a = 0; a < r->size(); ++a) map[a] = a;
  return Hom{r, r, std::move(map)};
}

Hom compose(const Hom& g, const Hom& f) {
  if (f.cod.get() != g.dom.get())
    throw input_error("hom composition: domain/codomain mismatch");
  std::vector<Elem> map(f.dom->size());
  for (Elem a = 0; a < f.dom->size(); ++a) map[a] = g.map[f.map[a]];
  return Hom{f.dom, g.cod, std::move(map)};
}

// --- constructors ---

RingPtr make_zmod(long n) {
  if (n < 2) throw input_error("zmod requires n >= 2");
  if (n > limits().ring_size_cap)
    throw resource_cap_error("zmod size exceeds ring size cap");
  const int m = static_cast<int>(n);
  return Ring::create(
      "Z/" + std::to_string(n), m, 0, 1,
      [m](Elem a, Elem b) { return (a + b) % m; },
      [m](Elem a, Elem b) {
        return static_cast<Elem>((static_cast<long>(a) * b) % m);
      },
      [m](Elem a) { return (m - a) % m; },
      [](Elem a) { return std::to_string(a); });
}

RingPtr make_poly_quotient(RingPtr base, const Polynomial& modulus) {
  if (!modulus.is_monic() || modulus.degree() < 1)
    throw input_error("poly quotient modulus must be monic of degree >= 1");
  const int d = modulus.degree();
  const int bs = base->size();
  double sz = 1;
  for (int i = 0; i < d; ++i) sz *= bs;
  if (sz > limits().ring_size_cap)
    throw resource_cap_error("poly quotient ring exceeds size cap");
  const int n = static_cast<int>(sz);

  auto decode = [base, d, bs](Elem x) {
    std::vector<Elem> c(d);
    for (int i = 0; i < d; ++i) {
      c[i] = x % bs;
      x /= bs;
    }
    return c;
  };
  auto encode = [base, d, bs](const std::vector<Elem>& c) {
    Elem x = 0;
    for (int i = d - 1; i >= 0; --i) x = x * bs + (i < (int)c.size() ? c[i] : base->zero());
    return x;
  };
  // reduce a coefficient vector modulo the monic modulus
  auto reduce = [base, d, &modulus](std::vector<Elem> c) {
    const Ring& r = *base;
    for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
      Elem lead = c[i];
      if (lead == r.zero()) continue;
      // c -= lead * X^(i-d) * modulus
      for (int k = 0; k <= d; ++k) {
        Elem t = r.mul(lead, modulus.coeff(k));
        c[i - d + k] = r.sub(c[i - d + k], t);
      }
    }
    c.resize(d, r.zero());
    return c;
  };
  std::vector<Elem> mod_coeffs = modulus.coeffs;

  auto add = [base, decode, encode, d](Elem a, Elem b) {
    auto ca = decode(a), cb = decode(b);
    for (int i = 0; i < d; ++i) ca[i] = base->add(ca[i], cb[i]);
    return encode(ca);
  };
  auto mul = [base, decode, encode, reduce, d](Elem a, Elem b) {
    auto ca = decode(a), cb = decode(b);
    std::vector<Elem> c(2 * d - 1, base->zero());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c[i + j] = base->add(c[i + j], base->mul(ca[i], cb[j]));
    return encode(reduce(std::move(c)));
  };
  auto negf = [base, decode, encode, d](Elem a) {
    auto c = decode(a);
    for (int i = 0; i < d; ++i) c[i] = base->neg(c[i]);
    return encode(c);
  };
  auto label = [base, decode](Elem a) {
    return make_polynomial(base, decode(a)).str();
  };

  Elem zero = encode(std::vector<Elem>(d, base->zero()));
  std::vector<Elem> onec(d, base->zero());
  onec[0] = base->one();
  Elem one = encode(onec);

  auto r = std::const_pointer_cast<Ring>(
      Ring::create(base->name() + "[X]/(" + modulus.str() + ")", n, zero, one,
                   add, mul, negf, label));
  r->polyquot_ = PolyQuotInfo{base, mod_coeffs};
  return r;
}

RingPtr make_product(RingPtr left, RingPtr right) {
  const long n = static_cast<long>(left->size()) * right->size();
  if (n > limits().ring_size_cap)
    throw resource_cap_error("product ring exceeds size cap");
  const int rs = right->size();
  auto add = [left, right, rs](Elem a, Elem b) {
    return left->add(a / rs, b / rs) * rs + right->add(a % rs, b % rs);
  };
  auto mul = [left, right, rs](Elem a, Elem b) {
    return left->mul(a / rs, b / rs) * rs + right->mul(a % rs, b % rs);
  };
  auto negf = [left, right, rs](Elem a) {
    return left->neg(a / rs) * rs + right->neg(a % rs);
  };
  auto label = [left, right, rs](Elem a) {
    return "(" + left->label(a / rs) + "," + right->label(a % rs) + ")";
  };
  Elem zero = left->zero() * rs + right->zero();
  Elem one = left->one() * rs + right->one();
  auto r = std::const_pointer_cast<Ring>(
      Ring::create(left->name() + " x " + right->name(), static_cast<int>(n),
                   zero, one, add, mul, negf, label));
  r->product_ = ProductInfo{left, right};
  return r;
}

std::pair<RingPtr, Hom> make_quotient_by_members(RingPtr base,
                                                 const std::vector<Elem>& members,
                                                 const std::string& name) {
  if (static_cast<int>(members.size()) == base->size())
    throw input_error("cannot quotient by the whole ring");
  const int n = base->size();
  // minimal coset member under the carrier enumeration order
  std::vector<Elem> rep(n);
  for (Elem a = 0; a < n; ++a) {
    Elem best = a;
    for (Elem i : members) best = std::min(best, base->add(a, i));
    rep[a] = best;
  }
  std::vector<Elem> reps;
  for (Elem a = 0; a < n; ++a)
    if (rep[a] == a) reps.push_back(a);
  std::vector<Elem> class_of(n, -1);
  for (size_t c = 0; c < reps.size(); ++c) class_of[reps[c]] = static_cast<Elem>(c);
  for (Elem a = 0; a < n; ++a) class_of[a] = class_of[rep[a]];

  auto add = [base, reps, class_of, rep](Elem a, Elem b) {
    return class_of[base->add(reps[a], reps[b])];
  };
  auto mul = [base, reps, class_of](Elem a, Elem b) {
    return class_of[base->mul(reps[a], reps[b])];
  };
  auto negf = [base, reps, class_of](Elem a) {
    return class_of[base->neg(reps[a])];
  };
  auto label = [base, reps](Elem a) { return base->label(reps[a]); };

  auto q = std::const_pointer_cast<Ring>(
      Ring::create(name, static_cast<int>(reps.size()), class_of[base->zero()],
                   class_of[base->one()], add, mul, negf, label));
  q->quotient_ = QuotientInfo{base, class_of, reps};
  Hom surj = make_hom(base, q, class_of);
  return {q, std::move(surj)};
}

RingPtr make_subring(RingPtr ambient, std::vector<Elem> members, std::string name) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int n = static_cast<int>(members.size());
  std::vector<Elem> from(ambient->size(), -1);
  for (int i = 0; i < n; ++i) from[members[i]] = i;
  if (from[ambient->zero()] < 0 || from[ambient->one()] < 0)
    throw invariant_error(name + ": subring carrier misses 0 or 1");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (from[ambient->add(members[i], members[j])] < 0 ||
          from[ambient->mul(members[i], members[j])] < 0)
        throw invariant_error(name + ": carrier not closed under operations");
    }
  auto to = members;
  auto add = [ambient, to, from](Elem a, Elem b) {
    return from[ambient->add(to[a], to[b])];
  };
  auto mul = [ambient, to, from](Elem a, Elem b) {
    return from[ambient->mul(to[a], to[b])];
  };
  auto negf = [ambient, to, from](Elem a) { return from[ambient->neg(to[a])]; };
  auto label = [ambient, to](Elem a) { return ambient->label(to[a]); };
  auto r = std::const_pointer_cast<Ring>(
      Ring::create(std::move(name), n, from[ambient->zero()],
                   from[ambient->one()], add, mul, negf, label));
  r->subring_ = SubringInfo{ambient, std::move(members), std::move(from)};
  return r;
}

// --- element helpers ---

Elem product_pair(const RingPtr& prod, Elem l, Elem r) {
  const auto& info = prod->product_info();
  if (!info) throw input_error("not a product ring: " + prod->name());
  return l * info->right->size() + r;
}

std::pair<Elem, Elem> product_parts(const RingPtr& prod, Elem x) {
  const auto& info = prod->product_info();
  if (!info) throw input_error("not a product ring: " + prod->name());
  return {x / info->right->size(), x % info->right->size()};
}

Elem nat_embed(const Ring& r, long n) {
  Elem acc = r.zero();
  long k = n >= 0 ? n : -n;
  for (long i = 0; i < k; ++i) acc = r.add(acc, r.one());
  return n >= 0 ? acc : r.neg(acc);
}

std::optional<Elem> inverse(const Ring& r, Elem a) {
  for (Elem b = 0; b < r.size(); ++b)
    if (r.mul(a, b) == r.one()) return b;
  return std::nullopt;
}

bool is_unit(const Ring& r, Elem a) { return inverse(r, a).has_value(); }

std::vector<Elem> units(const RingPtr& r) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r->size(); ++a)
    if (is_unit(*r, a)) out.push_back(a);
  return out;
}

std::optional<std::string> check_ring_axioms(const RingPtr& rp, int size_cap) {
  const Ring& r = *rp;
  const int n = r.size();
  if (n > size_cap)
    throw resource_cap_error("axiom check cap exceeded for " + r.name());
  auto at = [&](Elem a) { return r.label(a); };
  for (Elem a = 0; a < n; ++a) {
    if (r.add(a, r.zero()) != a) return "additive identity fails at " + at(a);
    if (r.mul(a, r.one()) != a) return "multiplicative identity fails at " + at(a);
    if (r.add(a, r.neg(a)) != r.zero()) return "additive inverse fails at " + at(a);
    for (Elem b = 0; b < n; ++b) {
      if (r.add(a, b) != r.add(b, a)) return "addition not commutative at (" + at(a) + "," + at(b) + ")";
      if (r.mul(a, b) != r.mul(b, a)) return "multiplication not commutative at (" + at(a) + "," + at(b) + ")";
      for (Elem c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          return "addition not associative at (" + at(a) + "," + at(b) + "," + at(c) + ")";
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          return "multiplication not associative at (" + at(a) + "," + at(b) + "," + at(c) + ")";
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          return "distributivity fails at (" + at(a) + "," + at(b) + "," + at(c) + ")";
      }
    }
  }
  return std::nullopt;
}

}  // namespace amal
