#include "ctd/coverage.hpp"

#include <algorithm>
#include <set>

namespace ctd {

namespace {

void check_strength(const Model& model, int t) {
  if (t < 1 || static_cast<std::size_t>(t) > model.attribute_count()) {
    throw ModelError("interaction strength t=" + std::to_string(t) + " must lie in [1, " +
                     std::to_string(model.attribute_count()) + "]");
  }
}

}  // namespace

bool Requirement::matches(const Test& test) const {
  return std::all_of(bindings.begin(), bindings.end(), [&](const Binding& b) {
    return b.attribute < test.size() && test[b.attribute] == b.value;
  });
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::uint32_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RequirementSet directive_requirements(const Model& model) {
  RequirementSet out;
  for (const auto& directive : model.directives) {
    Requirement req;
    for (const auto& entry : directive) req.bindings.push_back(model.bind(entry.attribute, entry.value));
    std::sort(req.bindings.begin(), req.bindings.end());
    out.push_back(std::move(req));
  }
  return out;
}

RequirementSet generate_requirements(const Model& model, int t) {
  check_strength(model, t);
  RequirementSet out;
  for_each_subset(model.attribute_count(), static_cast<std::size_t>(t),
                  [&](const std::vector<std::uint32_t>& attrs) {
                    std::vector<std::uint32_t> values(attrs.size(), 0);
                    for (;;) {
                      Requirement req;
                      for (std::size_t i = 0; i < attrs.size(); ++i) {
                        req.bindings.push_back({attrs[i], values[i]});
                      }
                      out.push_back(std::move(req));
                      std::size_t i = attrs.size();
                      while (i > 0) {
                        --i;
                        if (++values[i] < model.attributes[attrs[i]].size()) break;
                        values[i] = 0;
                        if (i == 0) return;
                      }
                    }
                  });

  std::set<std::vector<Binding>> seen;
  for (const auto& r : out) seen.insert(r.bindings);
  for (auto& r : directive_requirements(model)) {
    if (seen.insert(r.bindings).second) out.push_back(std::move(r));
  }
  return out;
}

RequirementSet filter_feasible(RequirementSet reqs, const CompiledModel& space) {
  for (auto& req : reqs) {
    const bool nonempty = !space.project(req.bindings).is_false();
    req.feasible = nonempty ? Feasibility::Feasible : Feasibility::Infeasible;
  }
  return reqs;
}

RequirementSet feasible_only(const RequirementSet& reqs) {
  RequirementSet out;
  std::copy_if(reqs.begin(), reqs.end(), std::back_inserter(out),
               [](const Requirement& r) { return r.feasible == Feasibility::Feasible; });
  return out;
}

RequirementSet requirements_of_test(const Model& model, const Test& test, int t) {
  check_strength(model, t);
  if (test.size() != model.attribute_count()) {
    throw ModelError("expected a full test over " + std::to_string(model.attribute_count()) +
                     " attributes, got " + std::to_string(test.size()) + " values");
  }
  for (std::size_t a = 0; a < test.size(); ++a) {
    if (test[a] >= model.attributes[a].size()) throw ModelError("value index out of range");
  }
  RequirementSet out;
  for_each_subset(test.size(), static_cast<std::size_t>(t),
                  [&](const std::vector<std::uint32_t>& attrs) {
                    Requirement req;
                    for (auto a : attrs) req.bindings.push_back({a, test[a]});
                    out.push_back(std::move(req));
                  });
  return out;
}

kernels::RequirementTable to_table(const RequirementSet& reqs) {
  kernels::RequirementTable table;
  for (const auto& r : reqs) table.push_back(r.bindings);
  return table;
}

CoverageReport coverage_of(const CompiledModel& space, const std::vector<Test>& tests, int t,
                           kernels::Exec exec) {
  const Model& model = space.model();
  const RequirementSet feasible =
      feasible_only(filter_feasible(generate_requirements(model, t), space));

  CoverageReport report;
  report.t = t;
  report.total = feasible.size();

  kernels::TestMatrix legal_tests(model.attribute_count());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (space.is_legal(tests[i])) {
      legal_tests.push_back(tests[i]);
    } else {
      report.illegal_tests.push_back(i);
    }
  }

  std::vector<std::uint8_t> covered(feasible.size(), 0);
  kernels::mark_covered(to_table(feasible), legal_tests, covered, exec);
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    if (covered[i]) {
      ++report.covered;
    } else {
      report.missing.push_back(feasible[i]);
    }
  }
  return report;
}

std::string describe(const Model& model, const Requirement& req) {
  std::string out;
  for (const auto& b : req.bindings) {
    if (!out.empty()) out += ", ";
    out += model.attributes.at(b.attribute).name + "=" + model.label(b);
  }
  return out;
}

}  // namespace ctd
