#include "ctd/cycles.hpp"

namespace ctd {

AugmentResult augment_plan(const CompiledModel& space, int t, const std::vector<Test>& passed,
                           std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ModelError("cycle budget n must be at least 1");

  AugmentResult result;
  std::vector<Test> credited;
  for (std::size_t i = 0; i < passed.size(); ++i) {
    if (space.is_legal(passed[i])) {
      credited.push_back(passed[i]);
    } else {
      result.illegal_passed.push_back(i);
    }
  }

  GenerateOptions options;
  options.t = t;
  options.budget = n;
  options.seed = seed;
  result.plan = extend_plan(space, credited, options);

  const CoverageReport before = coverage_of(space, credited, t);
  result.residual_before = before.total - before.covered;
  result.residual_after = result.plan.total_feasible - result.plan.covered;
  return result;
}

CycleState run_cycles(const CompiledModel& space, int t, std::size_t n,
                      const VerdictSource& verdict, std::size_t max_cycles, std::uint64_t seed) {
  if (max_cycles < 1) throw ModelError("max_cycles must be at least 1");

  CycleState state;
  {
    const CoverageReport initial = coverage_of(space, {}, t);
    state.total_feasible = initial.total;
    state.residual = initial.missing;
  }

  for (std::size_t cycle = 0; cycle < max_cycles && !state.complete(); ++cycle) {
    const AugmentResult batch = augment_plan(space, t, state.passed, n, seed + cycle);
    CycleRecord record;
    record.requested = n;
    record.emitted = batch.plan.size();
    for (const Test& test : batch.plan.tests) {
      if (verdict(test)) {
        state.passed.push_back(test);
        ++record.passed;
      }
    }
    const CoverageReport after = coverage_of(space, state.passed, t);
    state.residual = after.missing;
    record.covered_after = after.covered;
    record.percent_after = after.percent();
    state.history.push_back(record);
  }
  return state;
}

}  // namespace ctd
