#pragma once

#include <optional>

#include "amal/amalgam.hpp"
#include "amal/ideal.hpp"

namespace amal {

std::vector<Elem> zero_divisors(const RingPtr& r);
std::vector<Elem> regular_elements(const RingPtr& r);

/// Every element is a unit or a zero-divisor.
bool is_total_quotient_ring(const RingPtr& r);

bool is_local(const RingPtr& r);

/// Griffin's criterion at a maximal ideal: for every pair of ideals with at
/// least one of them regular, the images in the localization at m are
/// comparable. The fast variant checks only principal pairs x, y with x
/// regular and requires Z(R) inside Jac(R).
bool regular_total_order(const RingPtr& r, const Ideal& m);
bool regular_total_order_fast(const RingPtr& r, const Ideal& m);

/// Regular total order at every maximal ideal.
bool is_prufer(const RingPtr& r);

bool is_chain_ring(const RingPtr& r);
bool is_arithmetical(const RingPtr& r);  // locally a chain ring
bool is_valuation_domain(const RingPtr& r);

/// A polynomial with coefficients in an explicit finite ring, lowest degree
/// first. Used by the content-ideal check.
struct RPoly {
  RingPtr ring;
  std::vector<Elem> coeffs;

  std::string str() const;
};

RPoly rpoly_mul(const RPoly& f, const RPoly& g);
Ideal content(const RPoly& f);

struct GaussianWitness {
  enum class Kind { PairViolation, ContentViolation } kind;
  RingPtr ring;

  // pair-violation: (a,b)^2 differs from both (a^2) and (b^2), or the
  // complementary local condition fails
  Elem a = 0, b = 0;
  std::optional<Ideal> sq_pair, sq_a, sq_b;

  // content-violation: c(fg) != c(f)c(g)
  std::optional<RPoly> f, g;
  std::optional<Ideal> c_fg, c_f_c_g;

  std::string str() const;
  bool recheck() const;  // the recorded data genuinely violates the condition
};

/// Local Gaussian test: for all a, b, (a,b)^2 = (a^2) or (b^2), and if
/// (a,b)^2 = (a^2) with ab = 0 then b^2 = 0. Empty result means Gaussian.
std::optional<GaussianWitness> gaussian_local_test(const RingPtr& r);

/// Gaussian by the local test on every localization at a maximal ideal.
bool is_gaussian(const RingPtr& r);
std::optional<GaussianWitness> gaussian_witness(const RingPtr& r);

/// Independent falsifier: compare c(fg) with c(f)c(g) over polynomial pairs
/// of bounded degree; exhaustive when the pair space is at most 10^6, else
/// deterministic seeded sampling within the budget.
std::optional<GaussianWitness> gaussian_direct_check(const RingPtr& r,
                                                     int max_degree,
                                                     long long sample_budget,
                                                     unsigned long long seed = 0);

}  // namespace amal
