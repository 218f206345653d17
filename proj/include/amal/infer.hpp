#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace amal {

/// Forward-chaining rule engine over declared attributes of (possibly
/// infinite) constructions. Facts use tri-state logic: rules never fire
/// while a premise is unknown, so one-directional results are not
/// over-applied.

enum class TriState { True, False, Unknown };

struct Provenance {
  enum class Kind { Axiom, Derived } kind = Kind::Axiom;
  std::string label;  // citation string for axioms, rule id for derivations
};

struct AttrValue {
  TriState value = TriState::Unknown;
  Provenance prov;
};

/// One named construction (an amalgamation, duplication, or trivial
/// extension, possibly infinite). Attribute names are namespaced by part:
/// "R.is_prufer", "A.is_gaussian", and flat names for data shared by the
/// whole construction ("condition_star", "J_square_zero", ...).
struct FactRecord {
  std::string entity;
  std::string note;  // free-form description of the construction
  std::map<std::string, AttrValue> attrs;

  TriState get(const std::string& attr) const;
};

struct KnowledgeBase {
  std::map<std::string, FactRecord> entities;
};

struct Premise {
  std::string attr;
  bool want = true;
};

struct Rule {
  std::string id;
  std::string statement;  // human-readable transcription
  std::vector<Premise> premises;
  std::vector<Premise> consequences;
};

/// The shipped rule base: transcriptions of the transfer theorems plus the
/// handful of textbook implications they lean on.
const std::vector<Rule>& rule_base();

class inconsistency_error : public std::runtime_error {
 public:
  explicit inconsistency_error(const std::string& what)
      : std::runtime_error(what) {}
};

class query_error : public std::runtime_error {
 public:
  explicit query_error(const std::string& what) : std::runtime_error(what) {}
};

/// Least fixed point of rule application over every entity. Throws
/// inconsistency_error, naming both derivations, if an attribute is forced
/// both ways.
KnowledgeBase apply_rules(KnowledgeBase kb);

/// Derivation tree from axioms up to the queried attribute.
struct Derivation {
  std::string attr;
  bool value = false;
  Provenance prov;
  std::vector<Derivation> children;  // premises, for derived nodes

  std::string str(int indent = 0) const;
};

Derivation explain(const KnowledgeBase& kb, const std::string& entity,
                   const std::string& attr);

/// Why a rule did or did not fire on an entity: every premise with its
/// current state. A rule is blocked if some premise is unknown, and
/// inapplicable if some premise is known to fail.
struct Applicability {
  std::string rule;
  bool fired = false;
  std::vector<std::string> failing;  // premises known to fail
  std::vector<std::string> unknown;  // premises with no information

  std::string str() const;
};

Applicability rule_applicability(const KnowledgeBase& kb,
                                 const std::string& entity,
                                 const std::string& rule_id);

/// Lossless (de)serialization of the KB file format.
KnowledgeBase parse_kb(const std::string& json_text);
std::string dump_kb(const KnowledgeBase& kb);
KnowledgeBase load_kb_file(const std::string& path);

/// The knowledge base shipped with the tool: the two composite
/// power-series constructions, the domain-extension idealization rule's
/// entity, the local-domain idealization counterexample, and a finite
/// bridge entry mirrored in the enumeration corpus.
KnowledgeBase shipped_kb();

}  // namespace amal
