#pragma once

#include <map>

#include "amal/predicates.hpp"

namespace amal {

/// A concrete instance a claim can be evaluated on. Every shape is carried
/// as an amalgamation; duplications and trivial extensions keep their extra
/// structure alongside.
struct Instance {
  enum class Kind { Amalgam, Duplication, TrivialExtension } kind;
  AmalgamInstance am;
  ModulePtr module;       // trivial extensions only
  RingPtr trivext_ring;   // trivial extensions only: the R x M presentation
  std::string digest;
};

Instance make_instance(AmalgamInstance am);
Instance make_trivext_instance(RingPtr r, const ModulePtr& m);

struct Hypothesis {
  std::string name;
  bool holds;
  std::string witness;  // offending data when the hypothesis fails
};

struct ClaimReport {
  enum class Status { Verified, HypothesisNotMet, Falsified, Delegated };

  std::string claim;
  std::string instance_digest;
  std::vector<Hypothesis> hypotheses;
  bool conclusion_holds = false;
  std::string conclusion_witness;
  Status status = Status::Verified;
  double elapsed_ms = 0;

  std::string status_str() const;
  std::string str() const;
};

/// Closed registry of claim identifiers, in report order.
const std::vector<std::string>& claim_ids();

/// Which instance kinds a claim accepts.
bool claim_accepts(const std::string& claim, Instance::Kind kind);

ClaimReport verify(const std::string& claim, const Instance& inst);

struct SuiteSummary {
  int verified = 0, hypothesis_not_met = 0, falsified = 0, delegated = 0,
      skipped = 0;
  std::vector<ClaimReport> reports;  // sorted by (claim, instance digest)
  // statuses attained per claim across the corpus
  std::map<std::string, std::vector<ClaimReport::Status>> coverage;

  bool ok() const { return falsified == 0; }
};

/// Evaluates every applicable (claim, instance) pair. An empty claim list
/// means the full registry. Instances whose shape a claim does not accept
/// are reported as hypothesis-not-met with a shape hypothesis.
SuiteSummary run_suite(const std::vector<Instance>& corpus,
                       std::vector<std::string> claims = {}, int jobs = 0);

struct CorpusBounds {
  int zmod_max = 48;        // Z/n for n up to this
  int poly_max = 256;       // F_p[X]/(X^k) with p^k up to this
  int amalgam_size_max = 1200;  // skip instances with |A| beyond this
};

/// Deterministic enumeration of amalgamations along canonical surjections,
/// duplications, and small trivial extensions.
std::vector<Instance> generate_corpus(const CorpusBounds& bounds = {});

/// Conjunction of signed predicate requirements, e.g. prufer & !gaussian.
struct Profile {
  std::vector<std::pair<std::string, bool>> wants;
};
Profile parse_profile(const std::string& text);  // "prufer,!gaussian"
const std::vector<std::string>& profile_vocabulary();

/// All corpus instances whose amalgamation matches the profile, smallest
/// ring first.
std::vector<Instance> search(const Profile& profile,
                             const std::vector<Instance>& corpus);

/// Stable-key-order JSON rendering of a report (one line).
std::string report_json(const ClaimReport& report, bool include_timing = false);

}  // namespace amal
