#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistmat/group.hpp"
#include "twistmat/random.hpp"

namespace twistmat::groups {

/// Ring-theoretic inputs to the finite generation criterion.
struct RingFacts {
  bool additive_fg = false;   // (R,+) finitely generated
  bool units_fg = false;      // U(R) finitely generated
  bool module_fg = false;     // R finitely generated as a Z[U(R)]-module
  std::string source;         // short justification
};

RingFacts ring_facts(const Ring& r);

struct FinGenResult {
  bool finitely_generated = false;
  std::string condition;  // "(i)", "(ii)" or "no"
  std::string reason;
  RingFacts facts;
  std::optional<int> ng_failure;
};

/// S_n^I(R) is finitely generated iff (i) (R,+) is finitely generated, or
/// (ii) U(R) is finitely generated, R is a finitely generated U(R)-module and
/// I satisfies (NG).
FinGenResult is_finitely_generated(const Ring& r, const IndexSet& ix);

struct RelationResult {
  std::string name;
  std::string statement;
  int samples = 0;
  int failures = 0;
  std::string counterexample;
};

struct RelationReport {
  std::vector<RelationResult> relations;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Checks the diagonal, unipotent and action relations on random instances.
RelationReport verify_relations(const Ring& r, const IndexSet& ix, int samples, Rng& rng);

}  // namespace twistmat::groups
