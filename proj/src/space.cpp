#include "ctd/space.hpp"

#include <algorithm>
#include <set>

#include "ctd/constraint.hpp"

namespace ctd {

namespace {

std::vector<std::string> structural_errors(const Model& model) {
  std::vector<std::string> errors;
  if (model.attributes.empty()) errors.push_back("model declares no attributes");

  std::set<std::string> names;
  for (const auto& attr : model.attributes) {
    if (attr.name.empty()) errors.push_back("attribute with empty name");
    if (!names.insert(attr.name).second) {
      errors.push_back("duplicate attribute name '" + attr.name + "'");
    }
    if (attr.values.empty()) errors.push_back("attribute '" + attr.name + "' has no values");
    std::set<std::string> labels;
    for (const auto& v : attr.values) {
      if (v.label.empty()) errors.push_back("attribute '" + attr.name + "' has an empty label");
      if (!labels.insert(v.label).second) {
        errors.push_back("duplicate value '" + v.label + "' in attribute '" + attr.name + "'");
      }
      if (v.range && v.range->lo >= v.range->hi) {
        errors.push_back("empty range for value '" + v.label + "' in attribute '" + attr.name +
                         "'");
      }
    }
  }

  for (std::size_t i = 0; i < model.directives.size(); ++i) {
    const auto& directive = model.directives[i];
    const std::string where = "directive " + std::to_string(i + 1);
    if (directive.empty()) errors.push_back(where + " is empty");
    std::set<std::string> seen;
    for (const auto& entry : directive) {
      if (!seen.insert(entry.attribute).second) {
        errors.push_back(where + " binds attribute '" + entry.attribute + "' twice");
      }
      try {
        (void)model.bind(entry.attribute, entry.value);
      } catch (const ModelError& e) {
        errors.push_back(where + ": " + e.what());
      }
    }
  }
  return errors;
}

}  // namespace

ValidationReport validate_model(const Model& model) {
  ValidationReport report;
  report.errors = structural_errors(model);
  // Encoding needs unique, non-empty domains.
  if (!report.ok()) return report;

  const Encoding encoding(model);
  BddManager mgr(encoding.var_count());
  const Bdd validity = encoding.validity(mgr);
  Bdd legal = validity;
  bool constraints_ok = true;

  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const std::string where = "constraint " + std::to_string(i + 1);
    try {
      const Bdd c = constraint::compile_source(model.constraints[i], model, encoding, mgr);
      if ((validity & c) == validity) {
        report.warnings.push_back(where + " eliminates nothing: " + model.constraints[i]);
      }
      legal &= c;
    } catch (const constraint::ConstraintError& e) {
      report.errors.push_back(where + ": " + e.what());
      constraints_ok = false;
    }
  }

  if (constraints_ok && legal.is_false()) {
    report.errors.push_back("model is infeasible: no legal test satisfies all constraints");
  }
  return report;
}

CompiledModel::CompiledModel(Model model)
    : model_(std::move(model)), encoding_(model_) {
  const ValidationReport report = validate_model(model_);
  if (!report.ok()) {
    std::string message = "invalid model:";
    for (const auto& e : report.errors) message += "\n  " + e;
    throw ModelError(message);
  }
  manager_ = std::make_unique<BddManager>(encoding_.var_count());
  validity_ = encoding_.validity(*manager_);
  legal_ = validity_;
  for (const auto& source : model_.constraints) {
    legal_ &= constraint::compile_source(source, model_, encoding_, *manager_);
  }
}

Bdd CompiledModel::illegal() const { return validity_ & !legal_; }

Bdd CompiledModel::bindings(const PartialAssignment& partial) const {
  Bdd acc = manager_->bdd_true();
  for (const auto& b : partial) acc &= value_equals(b);
  return acc;
}

Bdd CompiledModel::project(const PartialAssignment& partial) const {
  return legal_ & bindings(partial);
}

Bdd CompiledModel::project(const std::vector<std::pair<std::string, std::string>>& fixes) const {
  PartialAssignment partial;
  for (const auto& [attr, label] : fixes) partial.push_back(model_.bind(attr, label));
  return project(partial);
}

bool CompiledModel::is_legal(const Test& test) const {
  if (test.size() != model_.attribute_count()) return false;
  for (std::size_t a = 0; a < test.size(); ++a) {
    if (test[a] >= model_.attributes[a].size()) return false;
  }
  return manager_->eval(legal_, encoding_.encode(test));
}

BigInt CompiledModel::count(const Bdd& space) const {
  return manager_->sat_count(space, encoding_.var_count());
}

void CompiledModel::for_each(const Bdd& space,
                             const std::function<bool(const Test&)>& visit) const {
  // Restricting to validity keeps unused codes out of the decode step.
  const Bdd valid_space = space & validity_;
  manager_->for_each_sat(valid_space, encoding_.var_count(),
                         [&](const std::vector<bool>& bits) { return visit(encoding_.decode(bits)); });
}

std::vector<Test> CompiledModel::enumerate(const Bdd& space,
                                           std::optional<std::size_t> limit) const {
  std::vector<Test> out;
  if (limit && *limit == 0) return out;
  for_each(space, [&](const Test& t) {
    out.push_back(t);
    return !limit || out.size() < *limit;
  });
  return out;
}

std::vector<VarIndex> CompiledModel::vars_except(const std::vector<std::uint32_t>& keep) const {
  std::vector<VarIndex> vars;
  for (std::uint32_t a = 0; a < model_.attribute_count(); ++a) {
    if (std::find(keep.begin(), keep.end(), a) != keep.end()) continue;
    for (VarIndex v : encoding_.vars_of(a)) vars.push_back(v);
  }
  return vars;
}

}  // namespace ctd
