/// @file  cycles.hpp
/// @brief Budget-limited planning across test cycles.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ctd/coverage.hpp"
#include "ctd/generator.hpp"

namespace ctd {

struct AugmentResult {
  /// New tests only, at most the requested budget.
  TestPlan plan;
  std::size_t residual_before = 0;
  std::size_t residual_after = 0;
  /// Zero-based indices into `passed` of tests outside the legal space.
  std::vector<std::size_t> illegal_passed;
};

/// Credits the legal tests in `passed`, then generates at most `n` tests
/// targeting the residual requirements. Throws ModelError if n < 1 or t is
/// out of range.
[[nodiscard]] AugmentResult augment_plan(const CompiledModel& space, int t,
                                         const std::vector<Test>& passed, std::size_t n,
                                         std::uint64_t seed);

struct CycleRecord {
  std::size_t requested = 0;
  std::size_t emitted = 0;
  std::size_t passed = 0;
  std::size_t covered_after = 0;
  double percent_after = 0.0;
};

struct CycleState {
  std::vector<Test> passed;
  RequirementSet residual;
  std::size_t total_feasible = 0;
  std::vector<CycleRecord> history;

  [[nodiscard]] bool complete() const noexcept { return residual.empty(); }
};

/// Decides whether an executed test passed.
using VerdictSource = std::function<bool(const Test&)>;

/// Repeats augment / execute / credit until every feasible requirement is
/// covered by a passed test or `max_cycles` cycles have run. Failed tests earn
/// no credit and may be generated again later.
[[nodiscard]] CycleState run_cycles(const CompiledModel& space, int t, std::size_t n,
                                    const VerdictSource& verdict, std::size_t max_cycles,
                                    std::uint64_t seed = 0);

}  // namespace ctd
