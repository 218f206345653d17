#include "amal/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace amal {

namespace {

void require_same_ring(const Ideal& a, const Ideal& b) {
  if (a.ring.get() != b.ring.get())
    throw input_error("ideal operation across different rings");
}

std::vector<char> member_flags(const Ideal& i) {
  std::vector<char> in(i.ring->size(), 0);
  for (Elem m : i.members) in[m] = 1;
  return in;
}

// Additive closure of a seeded subset already closed under ring multiples.
std::vector<Elem> additive_closure(const Ring& r, std::vector<char>& in,
                                   std::vector<Elem> seed) {
  std::vector<Elem> list = std::move(seed);
  size_t next = 0;
  while (next < list.size()) {
    Elem x = list[next++];
    for (size_t k = 0; k < list.size(); ++k) {
      Elem s = r.add(x, list[k]);
      if (!in[s]) {
        in[s] = 1;
        list.push_back(s);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

}  // namespace

bool Ideal::contains(Elem a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

bool Ideal::subset_of(const Ideal& other) const {
  return std::includes(other.members.begin(), other.members.end(),
                       members.begin(), members.end());
}

std::string Ideal::str() const {
  std::ostringstream out;
  out << "(";
  auto g = minimal_gens(*this);
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) out << ",";
    out << ring->label(g[i]);
  }
  out << ")";
  return out.str();
}

Ideal ideal_generated(RingPtr r, std::vector<Elem> gens) {
  for (Elem g : gens)
    if (g < 0 || g >= r->size()) throw input_error("generator outside carrier");
  std::vector<char> in(r->size(), 0);
  std::vector<Elem> seed;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = 1;
      seed.push_back(x);
    }
  };
  push(r->zero());
  for (Elem g : gens)
    for (Elem x = 0; x < r->size(); ++x) push(r->mul(x, g));
  auto members = additive_closure(*r, in, std::move(seed));
  return Ideal{std::move(r), std::move(gens), std::move(members)};
}

Ideal ideal_from_members(RingPtr r, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<char> in(r->size(), 0);
  for (Elem m : members) in[m] = 1;
  if (!in[r->zero()]) throw invariant_error("member set misses 0");
  for (Elem a : members) {
    for (Elem b : members)
      if (!in[r->add(a, b)]) throw invariant_error("member set not closed under +");
    for (Elem x = 0; x < r->size(); ++x)
      if (!in[r->mul(x, a)])
        throw invariant_error("member set not closed under ring multiples");
  }
  Ideal i{std::move(r), members, members};
  return i;
}

Ideal zero_ideal(RingPtr r) {
  Elem z = r->zero();
  return Ideal{std::move(r), {}, {z}};
}

Ideal unit_ideal(RingPtr r) { return principal_ideal(r, r->one()); }

Ideal principal_ideal(RingPtr r, Elem a) {
  // rx + sx = (r+s)x, so the multiples are already additively closed
  std::vector<Elem> members;
  std::vector<char> in(r->size(), 0);
  for (Elem x = 0; x < r->size(); ++x) {
    Elem m = r->mul(x, a);
    if (!in[m]) {
      in[m] = 1;
      members.push_back(m);
    }
  }
  std::sort(members.begin(), members.end());
  return Ideal{std::move(r), {a}, std::move(members)};
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  const Ring& r = *a.ring;
  std::vector<char> in(r.size(), 0);
  std::vector<Elem> members;
  for (Elem x : a.members)
    for (Elem y : b.members) {
      Elem s = r.add(x, y);
      if (!in[s]) {
        in[s] = 1;
        members.push_back(s);
      }
    }
  std::sort(members.begin(), members.end());
  std::vector<Elem> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return Ideal{a.ring, std::move(gens), std::move(members)};
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  const Ring& r = *a.ring;
  std::vector<Elem> ga = a.gens.empty() ? a.members : a.gens;
  std::vector<Elem> gb = b.gens.empty() ? b.members : b.gens;
  std::vector<Elem> gens;
  for (Elem x : ga)
    for (Elem y : gb) gens.push_back(r.mul(x, y));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return ideal_generated(a.ring, std::move(gens));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<Elem> members;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(members));
  Ideal i{a.ring, members, members};
  return i;
}

// --- ideal lattice cache ---

namespace {

struct LatticeCache {
  RingPtr ring;  // keeps the key alive
  std::shared_ptr<std::vector<Ideal>> ideals;
  std::shared_ptr<std::vector<int>> primes;    // indices into ideals
  std::shared_ptr<std::vector<int>> maximals;  // indices into ideals
};

std::mutex cache_mutex;
std::map<const Ring*, LatticeCache>& cache_map() {
  static std::map<const Ring*, LatticeCache> m;
  return m;
}

struct MembersHash {
  size_t operator()(const std::vector<Elem>& v) const {
    size_t h = v.size();
    for (Elem x : v) h = h * 1000003u + static_cast<size_t>(x) + 1;
    return h;
  }
};

std::vector<Ideal> enumerate_ideals(const RingPtr& r) {
  std::vector<Ideal> found;
  std::unordered_map<std::vector<Elem>, int, MembersHash> seen;
  auto insert = [&](Ideal i) -> int {
    auto it = seen.find(i.members);
    if (it != seen.end()) return -1;
    int id = static_cast<int>(found.size());
    seen.emplace(i.members, id);
    found.push_back(std::move(i));
    if (static_cast<long>(found.size()) > limits().ideal_cap)
      throw resource_cap_error("ideal count cap exceeded for " + r->name());
    return id;
  };

  std::vector<int> principal_ids;
  for (Elem a = 0; a < r->size(); ++a) {
    Ideal p = principal_ideal(r, a);
    auto it = seen.find(p.members);
    if (it == seen.end()) principal_ids.push_back(insert(std::move(p)));
  }

  // worklist, smallest ideal first so chains are discovered in order
  using Key = std::pair<int, int>;  // (size, id)
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> work;
  for (int id = 0; id < static_cast<int>(found.size()); ++id)
    work.push({found[id].size(), id});
  while (!work.empty()) {
    int id = work.top().second;
    work.pop();
    for (int pid : principal_ids) {
      Ideal s = ideal_sum(found[id], found[pid]);
      int nid = insert(std::move(s));
      if (nid >= 0) work.push({found[nid].size(), nid});
    }
  }

  std::sort(found.begin(), found.end(), [](const Ideal& a, const Ideal& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  return found;
}

LatticeCache& cache_for(const RingPtr& r) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& entry = cache_map()[r.get()];
  if (!entry.ring) entry.ring = r;
  return entry;
}

std::shared_ptr<std::vector<Ideal>> cached_ideals(const RingPtr& r) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache_map().find(r.get());
    if (it != cache_map().end() && it->second.ideals) return it->second.ideals;
  }
  auto ideals = std::make_shared<std::vector<Ideal>>(enumerate_ideals(r));
  auto& entry = cache_for(r);
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (!entry.ideals) entry.ideals = ideals;
  return entry.ideals;
}

}  // namespace

std::vector<Ideal> all_ideals(const RingPtr& r) { return *cached_ideals(r); }

// --- primality ---

namespace {

// Transversal of coset representatives of i (first-seen in index order is
// the minimal member of its coset).
std::vector<Elem> coset_reps(const Ideal& i) {
  const Ring& r = *i.ring;
  std::vector<char> visited(r.size(), 0);
  std::vector<Elem> reps;
  for (Elem a = 0; a < r.size(); ++a) {
    if (visited[a]) continue;
    reps.push_back(a);
    for (Elem m : i.members) visited[r.add(a, m)] = 1;
  }
  return reps;
}

}  // namespace

bool is_prime(const Ideal& i) {
  if (i.is_whole_ring()) return false;
  const Ring& r = *i.ring;
  auto in = member_flags(i);
  auto reps = coset_reps(i);
  for (Elem a : reps) {
    if (in[a]) continue;
    for (Elem b : reps) {
      if (in[b]) continue;
      if (in[r.mul(a, b)]) return false;
    }
  }
  return true;
}

bool is_maximal(const Ideal& i) {
  if (i.is_whole_ring()) return false;
  const Ring& r = *i.ring;
  auto in = member_flags(i);
  auto reps = coset_reps(i);
  for (Elem a : reps) {
    if (in[a]) continue;
    bool invertible = false;
    for (Elem b : reps) {
      if (in[r.sub(r.mul(a, b), r.one())]) {
        invertible = true;
        break;
      }
    }
    if (!invertible) return false;
  }
  return true;
}

namespace {

std::pair<std::shared_ptr<std::vector<Ideal>>, std::shared_ptr<std::vector<int>>>
cached_primes(const RingPtr& r, bool maximal) {
  auto ideals = cached_ideals(r);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& entry = cache_map()[r.get()];
    auto& slot = maximal ? entry.maximals : entry.primes;
    if (slot) return {ideals, slot};
  }
  auto idx = std::make_shared<std::vector<int>>();
  for (int k = 0; k < static_cast<int>(ideals->size()); ++k) {
    const Ideal& i = (*ideals)[k];
    if (maximal ? is_maximal(i) : is_prime(i)) idx->push_back(k);
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& entry = cache_map()[r.get()];
  auto& slot = maximal ? entry.maximals : entry.primes;
  if (!slot) slot = idx;
  return {ideals, slot};
}

}  // namespace

std::vector<Ideal> spec(const RingPtr& r) {
  auto [ideals, idx] = cached_primes(r, false);
  std::vector<Ideal> out;
  for (int k : *idx) out.push_back((*ideals)[k]);
  return out;
}

std::vector<Ideal> max_spec(const RingPtr& r) {
  auto [ideals, idx] = cached_primes(r, true);
  std::vector<Ideal> out;
  for (int k : *idx) out.push_back((*ideals)[k]);
  return out;
}

Ideal jacobson(const RingPtr& r) {
  auto ms = max_spec(r);
  if (ms.empty()) throw invariant_error("ring with no maximal ideal");
  Ideal acc = ms.front();
  for (size_t k = 1; k < ms.size(); ++k) acc = ideal_intersection(acc, ms[k]);
  return acc;
}

std::vector<Ideal> variety(const Ideal& i) {
  std::vector<Ideal> out;
  for (const Ideal& p : spec(i.ring))
    if (i.subset_of(p)) out.push_back(p);
  return out;
}

bool is_regular_ideal(const Ideal& i) {
  const Ring& r = *i.ring;
  for (Elem m : i.members) {
    bool zero_divisor = false;
    for (Elem x = 0; x < r.size(); ++x)
      if (x != r.zero() && r.mul(m, x) == r.zero()) {
        zero_divisor = true;
        break;
      }
    if (!zero_divisor) return true;
  }
  return false;
}

Ideal annihilator(const RingPtr& r, Elem x) {
  std::vector<Elem> members;
  for (Elem a = 0; a < r->size(); ++a)
    if (r->mul(a, x) == r->zero()) members.push_back(a);
  Ideal i{r, members, members};
  return i;
}

std::vector<Elem> minimal_gens(const Ideal& i) {
  if (i.is_zero()) return {};
  std::vector<Elem> gens;
  Ideal span = zero_ideal(i.ring);
  while (!span.same_members(i)) {
    Elem pick = -1;
    for (Elem m : i.members)
      if (!span.contains(m)) {
        pick = m;
        break;
      }
    if (pick < 0) throw invariant_error("minimal_gens: span stalled");
    gens.push_back(pick);
    span = ideal_sum(span, principal_ideal(i.ring, pick));
  }
  return gens;
}

std::pair<RingPtr, Hom> make_quotient(RingPtr r, const Ideal& i) {
  if (i.ring.get() != r.get()) throw input_error("ideal belongs to another ring");
  if (i.is_whole_ring()) throw input_error("cannot quotient by the unit ideal");
  return make_quotient_by_members(r, i.members, r->name() + "/" + i.str());
}

Ideal ideal_image(const Hom& f, const Ideal& i) {
  if (i.ring.get() != f.dom.get()) throw input_error("ideal not in hom domain");
  std::vector<Elem> members;
  members.reserve(i.members.size());
  for (Elem m : i.members) members.push_back(f(m));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return ideal_from_members(f.cod, std::move(members));
}

Ideal extension_ideal(const Hom& f, const Ideal& i) {
  if (i.ring.get() != f.dom.get()) throw input_error("ideal not in hom domain");
  std::vector<Elem> gens;
  for (Elem g : (i.gens.empty() ? i.members : i.gens)) gens.push_back(f(g));
  return ideal_generated(f.cod, std::move(gens));
}

Ideal ideal_preimage(const Hom& f, const Ideal& j) {
  if (j.ring.get() != f.cod.get()) throw input_error("ideal not in hom codomain");
  std::vector<Elem> members;
  for (Elem a = 0; a < f.dom->size(); ++a)
    if (j.contains(f(a))) members.push_back(a);
  Ideal i{f.dom, members, members};
  return i;
}

}  // namespace amal
