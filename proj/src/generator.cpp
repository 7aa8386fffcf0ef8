#include "ctd/generator.hpp"

#include <algorithm>
#include <random>

namespace ctd {

TestPlan extend_plan(const CompiledModel& space, const std::vector<Test>& credited,
                     const GenerateOptions& options) {
  const Model& model = space.model();
  const RequirementSet reqs =
      feasible_only(filter_feasible(generate_requirements(model, options.t), space));
  const kernels::RequirementTable table = to_table(reqs);
  const std::size_t width = model.attribute_count();

  std::vector<std::uint8_t> covered(reqs.size(), 0);
  {
    kernels::TestMatrix passed(width);
    for (const Test& test : credited) {
      if (space.is_legal(test)) passed.push_back(test);
    }
    kernels::mark_covered(table, passed, covered, options.exec);
  }
  std::vector<std::uint8_t> uncovered(reqs.size());
  auto refresh_uncovered = [&] {
    std::transform(covered.begin(), covered.end(), uncovered.begin(),
                   [](std::uint8_t c) { return static_cast<std::uint8_t>(!c); });
  };
  refresh_uncovered();

  TestPlan plan;
  plan.t = options.t;
  plan.seed = options.seed;
  plan.total_feasible = reqs.size();

  std::mt19937_64 rng(options.seed);
  std::size_t next_seed = 0;

  for (;;) {
    while (next_seed < reqs.size() && covered[next_seed]) ++next_seed;
    if (next_seed == reqs.size()) break;
    if (options.budget && plan.tests.size() >= *options.budget) {
      plan.partial = true;
      break;
    }

    const Requirement& seed_req = reqs[next_seed];
    Bdd current = space.project(seed_req.bindings);
    std::vector<std::int64_t> partial(width, kernels::kUnbound);
    for (const Binding& b : seed_req.bindings) partial[b.attribute] = b.value;

    for (std::uint32_t a = 0; a < width; ++a) {
      if (partial[a] != kernels::kUnbound) continue;
      std::vector<std::pair<std::uint32_t, Bdd>> best;
      std::size_t best_score = 0;
      for (std::uint32_t v = 0; v < model.attributes[a].size(); ++v) {
        Bdd candidate = current & space.value_equals({a, v});
        if (candidate.is_false()) continue;
        const std::size_t score =
            kernels::count_completed(table, uncovered, partial, {a, v}, options.exec);
        if (best.empty() || score > best_score) {
          best.clear();
          best_score = score;
        }
        if (score == best_score) best.emplace_back(v, candidate);
      }
      // `current` is nonempty, so some value always survives.
      std::size_t pick = 0;
      if (options.randomized_ties && best.size() > 1) {
        pick = std::uniform_int_distribution<std::size_t>(0, best.size() - 1)(rng);
      }
      partial[a] = best[pick].first;
      current = best[pick].second;
    }

    Test test(partial.begin(), partial.end());
    kernels::TestMatrix single(width);
    single.push_back(test);
    kernels::mark_covered(table, single, covered, options.exec);
    refresh_uncovered();
    plan.tests.push_back(std::move(test));
    plan.provenance.push_back(Provenance::Generated);
  }

  plan.covered = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
  return plan;
}

TestPlan generate_plan(const CompiledModel& space, const GenerateOptions& options) {
  return extend_plan(space, {}, options);
}

std::size_t lower_bound(const CompiledModel& space, int t) {
  const Model& model = space.model();
  if (t < 1 || static_cast<std::size_t>(t) > model.attribute_count()) {
    throw ModelError("interaction strength t=" + std::to_string(t) + " out of range");
  }
  BddManager& mgr = space.manager();
  std::size_t best = 0;
  for_each_subset(model.attribute_count(), static_cast<std::size_t>(t),
                  [&](const std::vector<std::uint32_t>& attrs) {
                    const std::vector<VarIndex> others = space.vars_except(attrs);
                    const Bdd projected = mgr.exists(space.legal(), others);
                    const BigInt tuples = space.count(projected) >> others.size();
                    best = std::max(best, tuples.convert_to<std::size_t>());
                  });
  return best;
}

}  // namespace ctd
