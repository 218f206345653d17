#include "amal/predicates.hpp"

#include <algorithm>
#include <random>

namespace amal {

std::vector<Elem> zero_divisors(const RingPtr& r) { return ring_zero_divisors(r); }

std::vector<Elem> regular_elements(const RingPtr& r) {
  auto z = zero_divisors(r);
  std::vector<char> in(r->size(), 0);
  for (Elem x : z) in[x] = 1;
  std::vector<Elem> out;
  for (Elem x = 0; x < r->size(); ++x)
    if (!in[x]) out.push_back(x);
  return out;
}

bool is_total_quotient_ring(const RingPtr& r) {
  for (Elem x : regular_elements(r))
    if (!is_unit(*r, x)) return false;
  return true;
}

bool is_local(const RingPtr& r) { return max_spec(r).size() == 1; }

namespace {

bool comparable(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() <= b.size())
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Elem> image_members(const Hom& h, const std::vector<Elem>& members) {
  std::vector<Elem> out;
  out.reserve(members.size());
  for (Elem x : members) out.push_back(h(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool regular_total_order(const RingPtr& r, const Ideal& m) {
  if (!is_maximal(m)) throw precondition_error("not a maximal ideal: " + m.str());
  // When every regular element is a unit, every regular ideal is the whole
  // ring and its image is everything, so comparability is automatic.
  if (is_total_quotient_ring(r)) return true;
  auto [loc, pi] = localize_at_prime(r, m);
  auto ideals = all_ideals(r);
  std::vector<std::vector<Elem>> images;
  std::vector<char> regular;
  for (const Ideal& i : ideals) {
    images.push_back(image_members(pi, i.members));
    regular.push_back(is_regular_ideal(i) ? 1 : 0);
  }
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t k = 0; k < ideals.size(); ++k) {
      if (!regular[i] && !regular[k]) continue;
      if (!comparable(images[i], images[k])) return false;
    }
  return true;
}

bool regular_total_order_fast(const RingPtr& r, const Ideal& m) {
  if (!is_maximal(m)) throw precondition_error("not a maximal ideal: " + m.str());
  auto jac = jacobson(r);
  for (Elem x : zero_divisors(r))
    if (!jac.contains(x))
      throw precondition_error("fast variant requires Z(R) inside Jac(R)");
  auto [loc, pi] = localize_at_prime(r, m);
  std::vector<std::vector<Elem>> img(r->size());
  for (Elem x = 0; x < r->size(); ++x)
    img[x] = image_members(pi, principal_ideal(r, x).members);
  for (Elem x : regular_elements(r))
    for (Elem y = 0; y < r->size(); ++y)
      if (!comparable(img[x], img[y])) return false;
  return true;
}

bool is_prufer(const RingPtr& r) {
  for (const Ideal& m : max_spec(r))
    if (!regular_total_order(r, m)) return false;
  return true;
}

bool is_chain_ring(const RingPtr& r) {
  // Every ideal is a finite sum of principal ideals, so pairwise
  // comparability of principal ideals decides comparability of all ideals.
  std::vector<std::vector<Elem>> principals;
  for (Elem x = 0; x < r->size(); ++x)
    principals.push_back(principal_ideal(r, x).members);
  std::sort(principals.begin(), principals.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  principals.erase(std::unique(principals.begin(), principals.end()),
                   principals.end());
  for (size_t i = 0; i + 1 < principals.size(); ++i)
    if (!std::includes(principals[i + 1].begin(), principals[i + 1].end(),
                       principals[i].begin(), principals[i].end()))
      return false;
  return true;
}

bool is_arithmetical(const RingPtr& r) {
  for (const Ideal& m : max_spec(r)) {
    auto [loc, pi] = localize_at_prime(r, m);
    if (!is_chain_ring(loc)) return false;
  }
  return true;
}

bool is_valuation_domain(const RingPtr& r) {
  if (!is_chain_ring(r)) return false;
  for (Elem a = 0; a < r->size(); ++a) {
    if (a == r->zero()) continue;
    for (Elem b = 0; b < r->size(); ++b) {
      if (b == r->zero()) continue;
      if (r->mul(a, b) == r->zero()) return false;
    }
  }
  return true;
}

std::string RPoly::str() const {
  std::string out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (!out.empty()) out += " + ";
    out += ring->label(coeffs[i]);
    if (i == 1) out += "*X";
    if (i > 1) out += "*X^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

RPoly rpoly_mul(const RPoly& f, const RPoly& g) {
  if (f.ring.get() != g.ring.get())
    throw input_error("polynomial rings differ");
  const Ring& r = *f.ring;
  if (f.coeffs.empty() || g.coeffs.empty()) return {f.ring, {}};
  std::vector<Elem> out(f.coeffs.size() + g.coeffs.size() - 1, r.zero());
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    for (size_t k = 0; k < g.coeffs.size(); ++k)
      out[i + k] = r.add(out[i + k], r.mul(f.coeffs[i], g.coeffs[k]));
  return {f.ring, std::move(out)};
}

Ideal content(const RPoly& f) { return ideal_generated(f.ring, f.coeffs); }

std::string GaussianWitness::str() const {
  if (kind == Kind::PairViolation)
    return "pair (" + ring->label(a) + ", " + ring->label(b) +
           "): (a,b)^2 = " + sq_pair->str() + ", (a^2) = " + sq_a->str() +
           ", (b^2) = " + sq_b->str();
  return "content: c(fg) = " + c_fg->str() + " but c(f)c(g) = " + c_f_c_g->str() +
         " for f = " + f->str() + ", g = " + g->str();
}

bool GaussianWitness::recheck() const {
  if (kind == Kind::PairViolation) {
    Ideal pair2 = ideal_product(ideal_generated(ring, {a, b}),
                                ideal_generated(ring, {a, b}));
    Ideal a2 = principal_ideal(ring, ring->mul(a, a));
    Ideal b2 = principal_ideal(ring, ring->mul(b, b));
    if (!pair2.same_members(*sq_pair) || !a2.same_members(*sq_a) ||
        !b2.same_members(*sq_b))
      return false;
    bool eq_a = pair2.same_members(a2), eq_b = pair2.same_members(b2);
    if (!eq_a && !eq_b) return true;  // (i) fails
    // must be a (ii) failure: (a,b)^2 = (a^2), ab = 0, b^2 != 0
    return eq_a && ring->mul(a, b) == ring->zero() &&
           ring->mul(b, b) != ring->zero();
  }
  Ideal fg = content(rpoly_mul(*f, *g));
  Ideal prod = ideal_product(content(*f), content(*g));
  return fg.same_members(*c_fg) && prod.same_members(*c_f_c_g) &&
         !fg.same_members(prod);
}

std::optional<GaussianWitness> gaussian_local_test(const RingPtr& r) {
  if (!is_local(r))
    throw precondition_error("Gaussian local test requires a local ring");
  const int n = r->size();
  // membership in each principal ideal, indexed [generator][element]
  std::vector<std::vector<char>> in(n, std::vector<char>(n, 0));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) in[x][r->mul(x, y)] = 1;
  auto fail = [&](Elem a, Elem b) {
    GaussianWitness w{GaussianWitness::Kind::PairViolation, r};
    w.a = a;
    w.b = b;
    Ideal ab = ideal_generated(r, {a, b});
    w.sq_pair = ideal_product(ab, ab);
    w.sq_a = principal_ideal(r, r->mul(a, a));
    w.sq_b = principal_ideal(r, r->mul(b, b));
    return w;
  };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem a2 = r->mul(a, a), b2 = r->mul(b, b), ab = r->mul(a, b);
      // (a,b)^2 = (a^2, ab, b^2); it equals (a^2) iff ab and b^2 lie in (a^2)
      bool eq_a = in[a2][ab] && in[a2][b2];
      bool eq_b = in[b2][ab] && in[b2][a2];
      if (!eq_a && !eq_b) return fail(a, b);
      if (eq_a && ab == r->zero() && b2 != r->zero()) return fail(a, b);
      if (eq_b && ab == r->zero() && a2 != r->zero()) return fail(b, a);
    }
  return std::nullopt;
}

std::optional<GaussianWitness> gaussian_witness(const RingPtr& r) {
  for (const Ideal& m : max_spec(r)) {
    auto [loc, pi] = localize_at_prime(r, m);
    if (auto w = gaussian_local_test(loc)) return w;
  }
  return std::nullopt;
}

bool is_gaussian(const RingPtr& r) { return !gaussian_witness(r).has_value(); }

namespace {

RPoly decode_poly(const RingPtr& r, unsigned long long code, int len) {
  RPoly p{r, std::vector<Elem>(len)};
  for (int i = 0; i < len; ++i) {
    p.coeffs[i] = static_cast<Elem>(code % r->size());
    code /= r->size();
  }
  return p;
}

std::optional<GaussianWitness> content_check_pair(const RPoly& f, const RPoly& g) {
  Ideal fg = content(rpoly_mul(f, g));
  Ideal prod = ideal_product(content(f), content(g));
  if (fg.same_members(prod)) return std::nullopt;
  GaussianWitness w{GaussianWitness::Kind::ContentViolation, f.ring};
  w.f = f;
  w.g = g;
  w.c_fg = std::move(fg);
  w.c_f_c_g = std::move(prod);
  return w;
}

}  // namespace

std::optional<GaussianWitness> gaussian_direct_check(const RingPtr& r,
                                                     int max_degree,
                                                     long long sample_budget,
                                                     unsigned long long seed) {
  if (max_degree < 1) throw precondition_error("max_degree must be at least 1");
  const int len = max_degree + 1;
  long double space = 1;
  for (int i = 0; i < 2 * len; ++i) space *= r->size();
  if (space <= 1e6) {
    unsigned long long one_side = 1;
    for (int i = 0; i < len; ++i) one_side *= r->size();
    for (unsigned long long cf = 0; cf < one_side; ++cf) {
      RPoly f = decode_poly(r, cf, len);
      for (unsigned long long cg = cf; cg < one_side; ++cg) {
        if (auto w = content_check_pair(f, decode_poly(r, cg, len))) return w;
      }
    }
    return std::nullopt;
  }
  // The full pair space is too big.  Violations concentrate in low degrees,
  // and for finite rings the first failure is typically already visible on
  // the square of a linear polynomial, so sweep c((aX+b)^2) vs c(aX+b)^2
  // exhaustively first.
  const long double sq_pairs = static_cast<long double>(r->size()) * r->size();
  if (sq_pairs <= 1e6 && sq_pairs <= 50.0L * sample_budget) {
    for (Elem a = 0; a < r->size(); ++a)
      for (Elem b = 0; b < r->size(); ++b) {
        RPoly f{r, {b, a}};
        if (auto w = content_check_pair(f, f)) return w;
      }
  }
  // Then exhaust the largest degree whose whole pair space fits.
  for (int d = max_degree - 1; d >= 1; --d) {
    long double small = 1;
    for (int i = 0; i < 2 * (d + 1); ++i) small *= r->size();
    if (small > 1e6) continue;
    unsigned long long one_side = 1;
    for (int i = 0; i < d + 1; ++i) one_side *= r->size();
    for (unsigned long long cf = 0; cf < one_side; ++cf) {
      RPoly f = decode_poly(r, cf, d + 1);
      for (unsigned long long cg = cf; cg < one_side; ++cg) {
        if (auto w = content_check_pair(f, decode_poly(r, cg, d + 1))) return w;
      }
    }
    break;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(0, r->size() - 1);
  for (long long t = 0; t < sample_budget; ++t) {
    RPoly f{r, {}}, g{r, {}};
    for (int i = 0; i < len; ++i) {
      f.coeffs.push_back(coeff(rng));
      g.coeffs.push_back(coeff(rng));
    }
    if (auto w = content_check_pair(f, g)) return w;
  }
  return std::nullopt;
}

}  // namespace amal
