/// @file  coverage.hpp
/// @brief t-way interaction requirements and coverage measurement.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ctd/kernels.hpp"
#include "ctd/model.hpp"
#include "ctd/space.hpp"

namespace ctd {

enum class Feasibility { Unknown, Feasible, Infeasible };

/// A value tuple over a subset of attributes, bindings sorted by attribute.
struct Requirement {
  std::vector<Binding> bindings;
  Feasibility feasible = Feasibility::Unknown;

  [[nodiscard]] bool matches(const Test& test) const;
  friend bool operator==(const Requirement& a, const Requirement& b) {
    return a.bindings == b.bindings;
  }
};

using RequirementSet = std::vector<Requirement>;

/// All value tuples over all t-subsets of attributes, then the model's
/// directives not already present. Subsets come in lexicographic attribute
/// order and tuples in value-index order (last attribute varies fastest).
/// Throws ModelError unless 1 <= t <= attribute count.
[[nodiscard]] RequirementSet generate_requirements(const Model& model, int t);

/// Resolves the model's directives into requirements (sorted bindings).
[[nodiscard]] RequirementSet directive_requirements(const Model& model);

/// Marks every requirement feasible iff its projection on the legal space is
/// nonempty. Returns the same requirements, marked.
[[nodiscard]] RequirementSet filter_feasible(RequirementSet reqs, const CompiledModel& space);

/// The feasible subset of `reqs` (which must be marked).
[[nodiscard]] RequirementSet feasible_only(const RequirementSet& reqs);

/// The C(k, t) requirements a full test covers. Throws ModelError on a
/// partial or out-of-range test.
[[nodiscard]] RequirementSet requirements_of_test(const Model& model, const Test& test, int t);

[[nodiscard]] kernels::RequirementTable to_table(const RequirementSet& reqs);

struct CoverageReport {
  int t = 2;
  std::size_t total = 0;
  std::size_t covered = 0;
  RequirementSet missing;
  /// Zero-based indices of tests outside the legal space (given no credit).
  std::vector<std::size_t> illegal_tests;

  /// covered / total as a percentage; 100 when there is nothing to cover.
  [[nodiscard]] double percent() const noexcept {
    return total == 0 ? 100.0 : 100.0 * static_cast<double>(covered) / static_cast<double>(total);
  }
  [[nodiscard]] bool complete() const noexcept { return covered == total; }
};

/// Coverage of `tests` against the feasible t-way requirements plus
/// directives. Only legal tests earn credit.
[[nodiscard]] CoverageReport coverage_of(const CompiledModel& space, const std::vector<Test>& tests,
                                         int t, kernels::Exec exec = kernels::Exec::Parallel);

/// `name=label, name=label` rendering of a requirement.
[[nodiscard]] std::string describe(const Model& model, const Requirement& req);

/// Number of combinations C(n, k) (small arguments only).
[[nodiscard]] std::size_t binomial(std::size_t n, std::size_t k) noexcept;

/// Calls `visit` with every k-subset of [0, n) in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::uint32_t>&)>& visit);

}  // namespace ctd
