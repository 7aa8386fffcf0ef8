/// @file  space.hpp
/// @brief Symbolic legal space of a model.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctd/bdd.hpp"
#include "ctd/model.hpp"

namespace ctd {

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

/// Lists structural errors, constraint errors, infeasibility, and constraints
/// that eliminate nothing. Never throws for model content.
[[nodiscard]] ValidationReport validate_model(const Model& model);

/// A model with its encoding, manager and legal-space function.
///
/// Owns its BDD manager, so all symbolic work on one instance must stay on one
/// thread at a time.
class CompiledModel {
 public:
  /// Throws ModelError when the model does not validate.
  explicit CompiledModel(Model model);

  [[nodiscard]] const Model& model() const noexcept { return model_; }
  [[nodiscard]] const Encoding& encoding() const noexcept { return encoding_; }
  [[nodiscard]] BddManager& manager() const noexcept { return *manager_; }

  [[nodiscard]] Bdd validity() const noexcept { return validity_; }
  [[nodiscard]] Bdd legal() const noexcept { return legal_; }
  /// validity AND NOT legal.
  [[nodiscard]] Bdd illegal() const;

  [[nodiscard]] Bdd value_equals(Binding b) const { return encoding_.value_equals(*manager_, b); }
  /// Conjunction of the binding equalities (no legal-space factor).
  [[nodiscard]] Bdd bindings(const PartialAssignment& partial) const;

  /// Legal tests consistent with `partial`.
  [[nodiscard]] Bdd project(const PartialAssignment& partial) const;
  /// Resolves `attr -> label` pairs first; throws ModelError on unknown names.
  [[nodiscard]] Bdd project(const std::vector<std::pair<std::string, std::string>>& fixes) const;

  [[nodiscard]] bool is_legal(const Test& test) const;

  /// Number of tests in `space` (a subset of the validity function).
  [[nodiscard]] BigInt count(const Bdd& space) const;
  [[nodiscard]] BigInt legal_count() const { return count(legal_); }

  /// Decoded members of `space` in lexicographic order, up to `limit`.
  [[nodiscard]] std::vector<Test> enumerate(const Bdd& space,
                                            std::optional<std::size_t> limit = {}) const;
  void for_each(const Bdd& space, const std::function<bool(const Test&)>& visit) const;

  /// Variables of every attribute not listed in `keep`.
  [[nodiscard]] std::vector<VarIndex> vars_except(const std::vector<std::uint32_t>& keep) const;

 private:
  Model model_;
  Encoding encoding_;
  std::unique_ptr<BddManager> manager_;
  Bdd validity_;
  Bdd legal_;
};

}  // namespace ctd
