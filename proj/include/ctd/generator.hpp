/// @file  generator.hpp
/// @brief Greedy covering test plan construction.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ctd/coverage.hpp"
#include "ctd/kernels.hpp"
#include "ctd/space.hpp"

namespace ctd {

enum class Provenance { Generated, Imported };

struct TestPlan {
  int t = 2;
  std::vector<Test> tests;
  std::vector<Provenance> provenance;
  /// Feasible requirements covered by `tests` together with any credited
  /// tests the plan was extended from.
  std::size_t covered = 0;
  std::size_t total_feasible = 0;
  /// Set when a budget stopped generation before full coverage.
  bool partial = false;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t size() const noexcept { return tests.size(); }
  [[nodiscard]] double percent() const noexcept {
    return total_feasible == 0
               ? 100.0
               : 100.0 * static_cast<double>(covered) / static_cast<double>(total_feasible);
  }
};

struct GenerateOptions {
  int t = 2;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  /// Break score ties with a seeded random choice instead of the lowest value.
  bool randomized_ties = false;
  kernels::Exec exec = kernels::Exec::Parallel;
};

/// Builds tests one at a time. Each test starts from the earliest uncovered
/// feasible requirement, then fixes the remaining attributes in declaration
/// order, choosing the value that keeps the projection nonempty and completes
/// the most uncovered requirements (ties: lowest value index).
///
/// Throws ModelError when t is out of range.
[[nodiscard]] TestPlan generate_plan(const CompiledModel& space, const GenerateOptions& options);

/// Same as generate_plan, but legal tests in `credited` count as already run:
/// their requirements start covered and only new tests are returned.
[[nodiscard]] TestPlan extend_plan(const CompiledModel& space, const std::vector<Test>& credited,
                                   const GenerateOptions& options);

/// Largest number of feasible value tuples over any single t-subset of
/// attributes; each of those tuples needs a test of its own.
[[nodiscard]] std::size_t lower_bound(const CompiledModel& space, int t);

}  // namespace ctd
