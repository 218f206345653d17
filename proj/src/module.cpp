#include "amal/module.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace amal {

namespace {

std::vector<Elem> regular_elements_of(const Ring& r) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r.size(); ++a) {
    bool zd = false;
    for (Elem x = 0; x < r.size(); ++x)
      if (x != r.zero() && r.mul(a, x) == r.zero()) {
        zd = true;
        break;
      }
    if (!zd) out.push_back(a);
  }
  return out;
}

}  // namespace

ModulePtr Module::create(std::string name, RingPtr base, int size, MElem zero,
                         AddOp add, ActOp act, LabelFn label) {
  if (size < 1) throw input_error("module carrier must be nonempty");
  auto m = std::shared_ptr<Module>(new Module());
  m->name_ = std::move(name);
  m->base_ = std::move(base);
  m->size_ = size;
  m->zero_ = zero;
  m->add_ = std::move(add);
  m->act_ = std::move(act);
  m->label_ = std::move(label);
  m->neg_.assign(size, -1);
  for (MElem a = 0; a < size; ++a)
    for (MElem b = 0; b < size; ++b)
      if (m->add_(a, b) == zero) {
        m->neg_[a] = b;
        break;
      }
  for (MElem a = 0; a < size; ++a)
    if (m->neg_[a] < 0)
      throw invariant_error(m->name_ + ": no additive inverse for " + m->label_(a));
  return m;
}

std::optional<std::string> check_module_axioms(const ModulePtr& mp, long op_budget) {
  const Module& m = *mp;
  const Ring& r = *m.base();
  const long n = r.size(), s = m.size();
  long cost = s * s * s + 2 * n * s * s + 2 * n * n * s;
  if (cost > op_budget)
    throw resource_cap_error("module axiom check too large for " + m.name());
  for (MElem a = 0; a < s; ++a) {
    if (m.add(a, m.zero()) != a) return "additive identity fails";
    for (MElem b = 0; b < s; ++b) {
      if (m.add(a, b) != m.add(b, a)) return "addition not commutative";
      for (MElem c = 0; c < s; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
          return "addition not associative";
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (MElem a = 0; a < s; ++a) {
      for (MElem b = 0; b < s; ++b)
        if (m.act(x, m.add(a, b)) != m.add(m.act(x, a), m.act(x, b)))
          return "action not additive in the module argument";
      for (Elem y = 0; y < n; ++y) {
        if (m.act(r.add(x, y), a) != m.add(m.act(x, a), m.act(y, a)))
          return "action not additive in the ring argument";
        if (m.act(r.mul(x, y), a) != m.act(x, m.act(y, a)))
          return "action not associative with ring multiplication";
      }
    }
  }
  for (MElem a = 0; a < s; ++a)
    if (m.act(r.one(), a) != a) return "action not unital";
  return std::nullopt;
}

ModulePtr module_from_ideal(RingPtr r, const Ideal& i) {
  if (i.ring.get() != r.get()) throw input_error("ideal belongs to another ring");
  auto carrier = i.members;
  std::vector<int> pos(r->size(), -1);
  for (size_t k = 0; k < carrier.size(); ++k) pos[carrier[k]] = static_cast<int>(k);
  RingPtr ring = r;
  auto add = [ring, carrier, pos](MElem a, MElem b) {
    return pos[ring->add(carrier[a], carrier[b])];
  };
  auto act = [ring, carrier, pos](Elem x, MElem a) {
    return pos[ring->mul(x, carrier[a])];
  };
  auto label = [ring, carrier](MElem a) { return ring->label(carrier[a]); };
  return Module::create(i.str() + " as " + r->name() + "-module", r,
                        static_cast<int>(carrier.size()), pos[r->zero()], add,
                        act, label);
}

ModulePtr module_quotient(RingPtr r, const Ideal& i) {
  if (i.ring.get() != r.get()) throw input_error("ideal belongs to another ring");
  if (i.is_whole_ring()) throw input_error("cannot form R/R as a module");
  auto [q, surj] = make_quotient_by_members(r, i.members, r->name() + "/" + i.str());
  RingPtr base = r, quot = q;
  std::vector<Elem> cls = surj.map;
  auto reps = q->quotient_info()->reps;
  auto add = [quot](MElem a, MElem b) { return quot->add(a, b); };
  auto act = [base, quot, cls, reps](Elem x, MElem a) {
    return cls[base->mul(x, reps[a])];
  };
  auto label = [quot](MElem a) { return quot->label(a); };
  return Module::create(q->name() + " as " + r->name() + "-module", r, q->size(),
                        q->zero(), add, act, label);
}

ModulePtr module_product(const ModulePtr& m, const ModulePtr& n) {
  if (m->base().get() != n->base().get())
    throw input_error("module product requires a common base ring");
  ModulePtr a = m, b = n;
  const int bs = b->size();
  auto add = [a, b, bs](MElem x, MElem y) {
    return a->add(x / bs, y / bs) * bs + b->add(x % bs, y % bs);
  };
  auto act = [a, b, bs](Elem r, MElem x) {
    return a->act(r, x / bs) * bs + b->act(r, x % bs);
  };
  auto label = [a, b, bs](MElem x) {
    return "(" + a->label(x / bs) + "," + b->label(x % bs) + ")";
  };
  return Module::create(a->name() + " x " + b->name(), m->base(),
                        m->size() * bs, m->zero() * bs + n->zero(), add, act,
                        label);
}

ModulePtr module_via_hom(const Hom& f, const ModulePtr& m) {
  if (m->base().get() != f.cod.get())
    throw input_error("module_via_hom: module must live over the hom codomain");
  ModulePtr inner = m;
  std::vector<Elem> fmap = f.map;
  auto add = [inner](MElem a, MElem b) { return inner->add(a, b); };
  auto act = [inner, fmap](Elem r, MElem a) { return inner->act(fmap[r], a); };
  auto label = [inner](MElem a) { return inner->label(a); };
  return Module::create(m->name() + " via " + f.dom->name(), f.dom, m->size(),
                        m->zero(), add, act, label);
}

ModulePtr ring_as_module(RingPtr r) {
  RingPtr ring = r;
  auto add = [ring](MElem a, MElem b) { return ring->add(a, b); };
  auto act = [ring](Elem x, MElem a) { return ring->mul(x, a); };
  auto label = [ring](MElem a) { return ring->label(a); };
  return Module::create(r->name() + " as module", r, r->size(), r->zero(), add,
                        act, label);
}

ModulePtr zero_module(RingPtr r) {
  return Module::create("0", r, 1, 0, [](MElem, MElem) { return 0; },
                        [](Elem, MElem) { return 0; },
                        [](MElem) { return std::string("0"); });
}

std::vector<Elem> zero_divisors_on(const ModulePtr& m) {
  const Ring& r = *m->base();
  std::vector<Elem> out;
  for (Elem x = 0; x < r.size(); ++x) {
    for (MElem a = 0; a < m->size(); ++a)
      if (a != m->zero() && m->act(x, a) == m->zero()) {
        out.push_back(x);
        break;
      }
  }
  return out;
}

bool is_torsion(const ModulePtr& m) {
  auto reg = regular_elements_of(*m->base());
  for (MElem a = 0; a < m->size(); ++a) {
    bool killed = false;
    for (Elem t : reg)
      if (m->act(t, a) == m->zero()) {
        killed = true;
        break;
      }
    if (!killed) return false;
  }
  return true;
}

// --- submodules ---

bool Submodule::contains(MElem a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

bool Submodule::subset_of(const Submodule& other) const {
  return std::includes(other.members.begin(), other.members.end(),
                       members.begin(), members.end());
}

namespace {

std::vector<MElem> additive_closure_m(const Module& m, std::vector<char>& in,
                                      std::vector<MElem> seed) {
  std::vector<MElem> list = std::move(seed);
  size_t next = 0;
  while (next < list.size()) {
    MElem x = list[next++];
    for (size_t k = 0; k < list.size(); ++k) {
      MElem s = m.add(x, list[k]);
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

Submodule submodule_generated(const ModulePtr& m, std::vector<MElem> gens) {
  std::vector<char> in(m->size(), 0);
  std::vector<MElem> seed;
  auto push = [&](MElem x) {
    if (!in[x]) {
      in[x] = 1;
      seed.push_back(x);
    }
  };
  push(m->zero());
  for (MElem g : gens)
    for (Elem r = 0; r < m->base()->size(); ++r) push(m->act(r, g));
  return Submodule{m, additive_closure_m(*m, in, std::move(seed))};
}

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  const Module& m = *a.module;
  std::vector<char> in(m.size(), 0);
  std::vector<MElem> members;
  for (MElem x : a.members)
    for (MElem y : b.members) {
      MElem s = m.add(x, y);
      if (!in[s]) {
        in[s] = 1;
        members.push_back(s);
      }
    }
  std::sort(members.begin(), members.end());
  return Submodule{a.module, std::move(members)};
}

Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  std::vector<MElem> members;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(members));
  return Submodule{a.module, std::move(members)};
}

std::vector<Submodule> submodules(const ModulePtr& m) {
  struct Hash {
    size_t operator()(const std::vector<MElem>& v) const {
      size_t h = v.size();
      for (MElem x : v) h = h * 1000003u + static_cast<size_t>(x) + 1;
      return h;
    }
  };
  std::vector<Submodule> found;
  std::unordered_map<std::vector<MElem>, int, Hash> seen;
  auto insert = [&](Submodule s) -> int {
    auto it = seen.find(s.members);
    if (it != seen.end()) return -1;
    int id = static_cast<int>(found.size());
    seen.emplace(s.members, id);
    found.push_back(std::move(s));
    if (static_cast<long>(found.size()) > limits().submodule_cap)
      throw resource_cap_error("submodule count cap exceeded for " + m->name());
    return id;
  };
  std::vector<int> cyclic_ids;
  for (MElem a = 0; a < m->size(); ++a) {
    Submodule c = submodule_generated(m, {a});
    if (seen.find(c.members) == seen.end()) cyclic_ids.push_back(insert(std::move(c)));
  }
  using Key = std::pair<int, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> work;
  for (int id = 0; id < static_cast<int>(found.size()); ++id)
    work.push({found[id].size(), id});
  while (!work.empty()) {
    int id = work.top().second;
    work.pop();
    for (int cid : cyclic_ids) {
      Submodule s = submodule_sum(found[id], found[cid]);
      int nid = insert(std::move(s));
      if (nid >= 0) work.push({found[nid].size(), nid});
    }
  }
  std::sort(found.begin(), found.end(), [](const Submodule& a, const Submodule& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  return found;
}

bool is_uniserial(const ModulePtr& m) {
  auto subs = submodules(m);
  for (size_t i = 0; i < subs.size(); ++i)
    for (size_t j = i + 1; j < subs.size(); ++j)
      if (!subs[i].subset_of(subs[j]) && !subs[j].subset_of(subs[i])) return false;
  return true;
}

bool has_distributive_lattice(const ModulePtr& m) {
  auto subs = submodules(m);
  for (const Submodule& n : subs)
    for (const Submodule& l : subs)
      for (const Submodule& k : subs) {
        Submodule lhs = submodule_intersection(submodule_sum(n, l), k);
        Submodule rhs = submodule_sum(submodule_intersection(n, k),
                                      submodule_intersection(l, k));
        if (lhs.members != rhs.members) return false;
      }
  return true;
}

// --- localization ---

bool MultiplicativeSet::contains(Elem a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

MultiplicativeSet make_mult_set(RingPtr r, std::vector<Elem> seed) {
  std::vector<char> in(r->size(), 0);
  std::vector<Elem> list;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = 1;
      list.push_back(x);
    }
  };
  push(r->one());
  for (Elem s : seed) push(s);
  size_t next = 0;
  while (next < list.size()) {
    Elem x = list[next++];
    for (size_t k = 0; k < list.size(); ++k) push(r->mul(x, list[k]));
  }
  std::sort(list.begin(), list.end());
  return MultiplicativeSet{std::move(r), std::move(list)};
}

MultiplicativeSet complement_of_prime(const Ideal& p) {
  if (!is_prime(p)) throw precondition_error("not a prime ideal: " + p.str());
  std::vector<Elem> comp;
  for (Elem a = 0; a < p.ring->size(); ++a)
    if (!p.contains(a)) comp.push_back(a);
  return MultiplicativeSet{p.ring, std::move(comp)};
}

std::pair<RingPtr, Hom> localize_ring(const RingPtr& r, const MultiplicativeSet& u) {
  if (u.ring.get() != r.get()) throw input_error("multiplicative set of another ring");
  if (u.contains(r->zero()))
    throw input_error("localization at a set containing 0 is the zero ring");
  std::vector<Elem> kernel;
  for (Elem a = 0; a < r->size(); ++a)
    for (Elem s : u.members)
      if (r->mul(s, a) == r->zero()) {
        kernel.push_back(a);
        break;
      }
  auto [q, map] = make_quotient_by_members(r, kernel, r->name() + "_loc");
  for (Elem s : u.members)
    if (!is_unit(*q, map(s)))
      throw invariant_error("localization image of " + r->label(s) +
                            " is not a unit (bug)");
  return {q, std::move(map)};
}

std::pair<RingPtr, Hom> localize_at_prime(const RingPtr& r, const Ideal& p) {
  if (p.ring.get() != r.get()) throw input_error("prime belongs to another ring");
  return localize_ring(r, complement_of_prime(p));
}

LocalizedModule localize_module(const ModulePtr& m, const MultiplicativeSet& u) {
  auto [lr, rmap] = localize_ring(m->base(), u);
  // K = {x : ux = 0 for some u in U}
  std::vector<char> ink(m->size(), 0);
  std::vector<MElem> kmembers;
  for (MElem x = 0; x < m->size(); ++x)
    for (Elem s : u.members)
      if (m->act(s, x) == m->zero()) {
        ink[x] = 1;
        kmembers.push_back(x);
        break;
      }
  // minimal coset representatives
  const int n = m->size();
  std::vector<int> cls(n, -1);
  std::vector<MElem> reps;
  for (MElem a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(a);
    for (MElem k : kmembers) cls[m->add(a, k)] = c;
    cls[a] = c;
  }
  ModulePtr inner = m;
  RingPtr lring = lr;
  auto lreps = lr->quotient_info()->reps;
  auto add = [inner, cls, reps](MElem a, MElem b) {
    return cls[inner->add(reps[a], reps[b])];
  };
  auto act = [inner, cls, reps, lreps](Elem x, MElem a) {
    return cls[inner->act(lreps[x], reps[a])];
  };
  auto label = [inner, reps](MElem a) { return inner->label(reps[a]); };
  auto lm = Module::create(m->name() + "_loc", lr, static_cast<int>(reps.size()),
                           cls[m->zero()], add, act, label);
  return LocalizedModule{lm, lr, rmap, std::vector<MElem>(cls.begin(), cls.end())};
}

std::vector<Ideal> support(const ModulePtr& m) {
  std::vector<Ideal> out;
  for (const Ideal& p : spec(m->base())) {
    auto lm = localize_module(m, complement_of_prime(p));
    if (lm.module->size() > 1) out.push_back(p);
  }
  return out;
}

bool is_locally_divisible(const ModulePtr& m) {
  for (const Ideal& mm : max_spec(m->base())) {
    auto lm = localize_module(m, complement_of_prime(mm));
    const Module& loc = *lm.module;
    if (loc.size() == 1) continue;  // maximal ideal outside the support
    const Ring& lring = *lm.localized_ring;
    for (Elem r = 0; r < lring.size(); ++r) {
      if (r == lring.zero()) continue;
      std::vector<char> hit(loc.size(), 0);
      int count = 0;
      for (MElem x = 0; x < loc.size(); ++x) {
        MElem y = loc.act(r, x);
        if (!hit[y]) {
          hit[y] = 1;
          ++count;
        }
      }
      if (count != loc.size()) return false;
    }
  }
  return true;
}

}  // namespace amal
