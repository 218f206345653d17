#include "amal/infer.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amal/common.hpp"

namespace amal {

TriState FactRecord::get(const std::string& attr) const {
  auto it = attrs.find(attr);
  return it == attrs.end() ? TriState::Unknown : it->second.value;
}

namespace {

Rule rule(std::string id, std::string statement, std::vector<Premise> pre,
          std::vector<Premise> post) {
  return Rule{std::move(id), std::move(statement), std::move(pre),
              std::move(post)};
}

}  // namespace

const std::vector<Rule>& rule_base() {
  static const std::vector<Rule> rules = {
      rule("tqr-implies-prufer",
           "a total ring of quotients is a Prufer ring",
           {{"A.is_total_quotient", true}}, {{"A.is_prufer", true}}),
      rule("prufer-domain-implies-gaussian",
           "a Prufer domain is a Gaussian ring [g72, Corollary 28.5]",
           {{"A.is_prufer", true}, {"A.is_domain", true}},
           {{"A.is_gaussian", true}}),
      rule("prufer-domain-implies-arithmetical",
           "a Prufer domain is an arithmetical ring",
           {{"A.is_prufer", true}, {"A.is_domain", true}},
           {{"A.is_arithmetical", true}}),
      rule("base-prufer-domain-implies-gaussian",
           "a Prufer domain is a Gaussian ring [g72, Corollary 28.5]",
           {{"R.is_prufer", true}, {"R.is_domain", true}},
           {{"R.is_gaussian", true}}),
      rule("T-main-1",
           "if f carries regular elements to regular elements and the "
           "amalgamation is Prufer, then R is Prufer and J_{T_m} = f(r)J_{T_m} "
           "for every maximal m and regular r",
           {{"f_reg_to_reg", true}, {"A.is_prufer", true}},
           {{"R.is_prufer", true}, {"J_stable_under_regular_scaling", true}}),
      rule("T-main-2",
           "under condition star, Z(A) in Jac(A), and regular-element "
           "preservation, R Prufer with stable J forces the amalgamation to "
           "be Prufer",
           {{"f_reg_to_reg", true},
            {"condition_star", true},
            {"Z_subset_Jac", true},
            {"R.is_prufer", true},
            {"J_stable_under_regular_scaling", true}},
           {{"A.is_prufer", true}}),
      rule("P-tqr-1",
           "if J lies in Jac(S) and condition star holds, a total quotient "
           "ring R gives a total quotient amalgamation",
           {{"J_subset_Jac_S", true},
            {"condition_star", true},
            {"R.is_total_quotient", true}},
           {{"A.is_total_quotient", true}}),
      rule("P-tqr-2",
           "if f carries regular elements to regular elements, a total "
           "quotient amalgamation forces R to be a total quotient ring",
           {{"f_reg_to_reg", true}, {"A.is_total_quotient", true}},
           {{"R.is_total_quotient", true}}),
      rule("T-gauss-fwd",
           "for local R with J in f(R) and J in Jac(S): a Gaussian "
           "amalgamation forces R Gaussian, J^2 = 0, and f(r)J = f(r)^2 J",
           {{"R.is_local", true},
            {"J_subset_fR", true},
            {"J_subset_Jac_S", true},
            {"A.is_gaussian", true}},
           {{"R.is_gaussian", true},
            {"J_square_zero", true},
            {"J_gauss_scaling", true}}),
      rule("T-gauss-bwd",
           "for local R with J in f(R) and J in Jac(S): R Gaussian with "
           "J^2 = 0 and f(r)J = f(r)^2 J gives a Gaussian amalgamation",
           {{"R.is_local", true},
            {"J_subset_fR", true},
            {"J_subset_Jac_S", true},
            {"R.is_gaussian", true},
            {"J_square_zero", true},
            {"J_gauss_scaling", true}},
           {{"A.is_gaussian", true}}),
      rule("C-gauss-loc-bwd",
           "with J in f(R) and J in Jac(S): R Gaussian with J_m^2 = 0 and "
           "f(r)J_m = f(r)^2 J_m at every contraction maximal gives a "
           "Gaussian amalgamation",
           {{"J_subset_fR", true},
            {"J_subset_Jac_S", true},
            {"R.is_gaussian", true},
            {"J_square_zero_locally", true},
            {"J_gauss_scaling_locally", true}},
           {{"A.is_gaussian", true}}),
      rule("C-gauss-loc-fwd",
           "with J in f(R) and J in Jac(S): a Gaussian amalgamation forces "
           "R Gaussian with locally square-zero, locally scaled J",
           {{"J_subset_fR", true},
            {"J_subset_Jac_S", true},
            {"A.is_gaussian", true}},
           {{"R.is_gaussian", true},
            {"J_square_zero_locally", true},
            {"J_gauss_scaling_locally", true}}),
      rule("C-arith-1",
           "for nonzero square-zero J: R arithmetical with locally-domain "
           "support, locally divisible J, and distributive submodule lattice "
           "gives an arithmetical amalgamation",
           {{"J_nonzero", true},
            {"J_square_zero", true},
            {"R.is_arithmetical", true},
            {"support_locally_domain", true},
            {"J_locally_divisible", true},
            {"J_distributive", true}},
           {{"A.is_arithmetical", true}}),
      rule("C-arith-2",
           "with J in f(R): if J fails to vanish at some maximal over "
           "f^-1(J), the amalgamation is not arithmetical",
           {{"J_subset_fR", true}, {"J_locally_zero_on_contraction", false}},
           {{"A.is_arithmetical", false}}),
      rule("C-domain-ext-bwd",
           "for a domain extension A in B idealized by B: a Prufer base "
           "domain whose quotient field lies in B gives a Prufer idealization",
           {{"ext_of_domains", true},
            {"R.is_domain", true},
            {"R.is_prufer", true},
            {"K_subset_B", true}},
           {{"A.is_prufer", true}}),
      rule("C-domain-ext-fwd",
           "for a domain extension A in B idealized by B: a Prufer "
           "idealization forces a Prufer base domain containing its quotient "
           "field in B",
           {{"ext_of_domains", true},
            {"R.is_domain", true},
            {"A.is_prufer", true}},
           {{"R.is_prufer", true}, {"K_subset_B", true}}),
  };
  return rules;
}

namespace {

const Rule& find_rule(const std::string& id) {
  for (const Rule& r : rule_base())
    if (r.id == id) return r;
  throw query_error("unknown rule id: " + id);
}

std::string chain_str(const KnowledgeBase& kb, const std::string& entity,
                      const std::string& attr);

}  // namespace

KnowledgeBase apply_rules(KnowledgeBase kb) {
  bool changed = true;
  int rounds = 0;
  const int max_rounds = 64 * static_cast<int>(kb.entities.size() + 1);
  while (changed) {
    if (++rounds > max_rounds)
      throw invariant_error("rule application failed to reach a fixed point");
    changed = false;
    for (auto& [name, rec] : kb.entities) {
      for (const Rule& r : rule_base()) {
        bool fires = true;
        for (const Premise& p : r.premises) {
          TriState v = rec.get(p.attr);
          if (v == TriState::Unknown ||
              (v == TriState::True) != p.want) {
            fires = false;
            break;
          }
        }
        if (!fires) continue;
        for (const Premise& c : r.consequences) {
          TriState cur = rec.get(c.attr);
          TriState want = c.want ? TriState::True : TriState::False;
          if (cur == want) continue;
          if (cur != TriState::Unknown) {
            throw inconsistency_error(
                "attribute " + c.attr + " of " + name + " derived both ways:\n" +
                chain_str(kb, name, c.attr) + "\nversus rule " + r.id + " (" +
                r.statement + ")");
          }
          rec.attrs[c.attr] = {want, {Provenance::Kind::Derived, r.id}};
          changed = true;
        }
      }
    }
  }
  return kb;
}

Derivation explain(const KnowledgeBase& kb, const std::string& entity,
                   const std::string& attr) {
  auto eit = kb.entities.find(entity);
  if (eit == kb.entities.end()) throw query_error("unknown entity: " + entity);
  auto ait = eit->second.attrs.find(attr);
  if (ait == eit->second.attrs.end() ||
      ait->second.value == TriState::Unknown)
    throw query_error("attribute " + attr + " of " + entity + " is unknown");
  Derivation d;
  d.attr = attr;
  d.value = ait->second.value == TriState::True;
  d.prov = ait->second.prov;
  if (d.prov.kind == Provenance::Kind::Derived)
    for (const Premise& p : find_rule(d.prov.label).premises)
      d.children.push_back(explain(kb, entity, p.attr));
  return d;
}

std::string Derivation::str(int indent) const {
  std::string out(indent * 2, ' ');
  out += attr;
  out += value ? " = true" : " = false";
  out += prov.kind == Provenance::Kind::Axiom ? "  [axiom: " : "  [rule: ";
  out += prov.label + "]\n";
  for (const Derivation& c : children) out += c.str(indent + 1);
  return out;
}

namespace {

std::string chain_str(const KnowledgeBase& kb, const std::string& entity,
                      const std::string& attr) {
  return explain(kb, entity, attr).str();
}

}  // namespace

Applicability rule_applicability(const KnowledgeBase& kb,
                                 const std::string& entity,
                                 const std::string& rule_id) {
  auto eit = kb.entities.find(entity);
  if (eit == kb.entities.end()) throw query_error("unknown entity: " + entity);
  const Rule& r = find_rule(rule_id);
  Applicability app;
  app.rule = rule_id;
  for (const Premise& p : r.premises) {
    TriState v = eit->second.get(p.attr);
    std::string desc = p.attr + (p.want ? " = true" : " = false");
    if (v == TriState::Unknown)
      app.unknown.push_back(desc);
    else if ((v == TriState::True) != p.want)
      app.failing.push_back(desc);
  }
  app.fired = app.unknown.empty() && app.failing.empty();
  return app;
}

std::string Applicability::str() const {
  std::string out = rule;
  if (fired) return out + ": applicable";
  out += ": blocked by";
  for (const auto& f : failing) out += " [fails: " + f + "]";
  for (const auto& u : unknown) out += " [unknown: " + u + "]";
  return out;
}

KnowledgeBase parse_kb(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed knowledge base: ") + e.what());
  }
  KnowledgeBase kb;
  for (const auto& ej : j.at("entities")) {
    FactRecord rec;
    rec.entity = ej.at("entity").get<std::string>();
    rec.note = ej.value("note", "");
    for (const auto& aj : ej.at("attributes")) {
      AttrValue v;
      v.value = aj.at("value").get<bool>() ? TriState::True : TriState::False;
      std::string kind = aj.at("provenance").at("kind").get<std::string>();
      v.prov.kind = kind == "axiom" ? Provenance::Kind::Axiom
                                    : Provenance::Kind::Derived;
      v.prov.label = aj.at("provenance").at("label").get<std::string>();
      rec.attrs[aj.at("name").get<std::string>()] = v;
    }
    if (kb.entities.count(rec.entity))
      throw input_error("duplicate entity: " + rec.entity);
    kb.entities[rec.entity] = std::move(rec);
  }
  return kb;
}

std::string dump_kb(const KnowledgeBase& kb) {
  nlohmann::ordered_json j;
  j["entities"] = nlohmann::ordered_json::array();
  for (const auto& [name, rec] : kb.entities) {
    nlohmann::ordered_json ej;
    ej["entity"] = name;
    if (!rec.note.empty()) ej["note"] = rec.note;
    ej["attributes"] = nlohmann::ordered_json::array();
    for (const auto& [attr, v] : rec.attrs) {
      nlohmann::ordered_json aj;
      aj["name"] = attr;
      aj["value"] = v.value == TriState::True;
      aj["provenance"]["kind"] =
          v.prov.kind == Provenance::Kind::Axiom ? "axiom" : "derived";
      aj["provenance"]["label"] = v.prov.label;
      ej["attributes"].push_back(std::move(aj));
    }
    j["entities"].push_back(std::move(ej));
  }
  return j.dump(2) + "\n";
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open knowledge base file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str());
}

KnowledgeBase shipped_kb() {
#ifdef AMAL_KB_FILE
  return load_kb_file(AMAL_KB_FILE);
#else
  throw input_error("no shipped knowledge base path configured");
#endif
}

}  // namespace amal
