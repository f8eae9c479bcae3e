#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chq/relations.hpp"

namespace chq {

enum class AxiomStatus { kPass, kFail, kUndetermined, kNotApplicable };
const char* to_string(AxiomStatus s);

struct Witness {
  std::string what;
  std::vector<std::vector<int>> points;  // coordinates of the involved alternatives
};

struct AxiomReport {
  std::string axiom;
  AxiomStatus status = AxiomStatus::kPass;
  std::vector<Witness> witnesses;
  std::uint64_t checked = 0;
  std::uint64_t violated = 0;
  double coverage = 1.0;
  std::string note;
};

struct CheckOptions {
  std::uint64_t budget = 10'000'000;  // max relation lookups before subsampling
  std::uint64_t seed = 0;
  int witness_cap = 10;
  double tol = kTolLin;
  int max_seq_len = 8;  // standard-sequence length cap (A5)
};

// Shared derived state for the checkers. The grid view and marginal orders
// exist only when the preferences determine a complete weak order over the
// full grid; checkers that need them report UNDETERMINED otherwise.
struct AxiomContext {
  ProductModel model;        // owned copies: contexts outlive their inputs
  PreferenceStructure prefs;
  CheckOptions options;

  std::optional<GridView> view;
  std::optional<MarginalOrder> marginal;
  std::vector<MarginalIssue> marginal_issues;
  std::optional<RelationTable> table;
  std::optional<std::vector<PartitionCell>> cells;
};

AxiomContext make_context(const ProductModel& model,
                          const PreferenceStructure& prefs,
                          CheckOptions options = {});

// Build the relation table / cells on demand; false when the input data or
// the budget does not allow it.
bool ensure_table(AxiomContext& ctx);
bool ensure_cells(AxiomContext& ctx);

AxiomReport check_weak_order(AxiomContext& ctx);                       // A1
AxiomReport check_weak_separability(AxiomContext& ctx);                // A2
AxiomReport check_3C_on_cone(AxiomContext& ctx, const ConeSpec& cone);
AxiomReport check_A3(AxiomContext& ctx);
AxiomReport check_acyclicity(AxiomContext& ctx);                       // A3-ACYCL
AxiomReport check_acyclicity(const RelationTable& table, int witness_cap = 10);
AxiomReport check_A4(AxiomContext& ctx);
AxiomReport check_A5(AxiomContext& ctx);
AxiomReport check_A6(AxiomContext& ctx);
AxiomReport check_essentiality(AxiomContext& ctx);                     // A7
AxiomReport check_restricted_solvability(AxiomContext& ctx);           // A8
AxiomReport report_archimedean();                                      // A9
AxiomReport check_pointwise_monotonicity(AxiomContext& ctx);           // MONO

// Structural assumptions (closedness of the E boundary along fibers and the
// existence of two all-pairs-E reference points per interaction clique).
// Informational: PASS when both hold, NOT_APPLICABLE with counts otherwise.
AxiomReport audit_structural_assumptions(AxiomContext& ctx);           // SA

// Dispatch by id ("A1".."A9", "A3-ACYCL", "MONO"); unknown ids throw.
AxiomReport run_axiom(AxiomContext& ctx, const std::string& id);
std::vector<std::string> default_axiom_ids();

}  // namespace chq
