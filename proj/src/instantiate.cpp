#include "ctd/instantiate.hpp"

#include <charconv>
#include <limits>
#include <optional>

namespace ctd {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::int64_t draw_in_range(std::mt19937_64& engine, IntRange range) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(range.hi) - static_cast<std::uint64_t>(range.lo);
  if (span == 0) throw ModelError("cannot draw from an empty range");
  // Rejection sampling over the largest multiple of span.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = 0;
  do {
    x = engine();
  } while (x >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(range.lo) + x % span);
}

ConcretePlan instantiate(const Model& model, const std::vector<Test>& tests, std::uint64_t seed) {
  ConcretePlan plan;
  plan.seed = seed;
  for (const auto& attr : model.attributes) plan.columns.push_back(attr.name);

  std::mt19937_64 engine(seed);
  for (const Test& test : tests) {
    if (test.size() != model.attribute_count()) throw ModelError("test width does not match model");
    std::vector<std::string> row;
    for (std::size_t a = 0; a < test.size(); ++a) {
      const Value& value = model.attributes[a].values.at(test[a]);
      row.push_back(value.range ? std::to_string(draw_in_range(engine, *value.range))
                                : value.label);
    }
    plan.rows.push_back(std::move(row));
  }
  return plan;
}

ConcretePlan randomize_free(const Model& model, ConcretePlan plan,
                            const std::vector<FreeAttribute>& free_attrs, std::uint64_t seed) {
  for (const auto& f : free_attrs) {
    if (model.find_attribute(f.name)) {
      throw ModelError("free attribute '" + f.name + "' collides with a model attribute");
    }
    for (const auto& c : plan.columns) {
      if (c == f.name) throw ModelError("free attribute '" + f.name + "' is already a column");
    }
    if (f.range.lo >= f.range.hi) throw ModelError("free attribute '" + f.name + "' has an empty range");
  }
  if (free_attrs.empty()) return plan;

  std::mt19937_64 engine(seed);
  for (const auto& f : free_attrs) plan.columns.push_back(f.name);
  for (auto& row : plan.rows) {
    for (const auto& f : free_attrs) row.push_back(std::to_string(draw_in_range(engine, f.range)));
  }
  return plan;
}

std::vector<std::uint32_t> abstract_values(const Attribute& attr, std::string_view concrete) {
  std::vector<std::uint32_t> out;
  const auto number = parse_int(concrete);
  for (std::uint32_t i = 0; i < attr.values.size(); ++i) {
    const Value& v = attr.values[i];
    if (v.range ? number && v.range->contains(*number) : v.label == concrete) out.push_back(i);
  }
  return out;
}

std::vector<Test> abstract_plan(const Model& model, const ConcretePlan& plan) {
  std::vector<std::uint32_t> column_of;
  for (const auto& attr : model.attributes) {
    std::optional<std::uint32_t> found;
    for (std::uint32_t c = 0; c < plan.columns.size(); ++c) {
      if (plan.columns[c] == attr.name) found = c;
    }
    if (!found) throw ModelError("concrete plan has no column '" + attr.name + "'");
    column_of.push_back(*found);
  }

  std::vector<Test> tests;
  for (const auto& row : plan.rows) {
    Test test;
    for (std::size_t a = 0; a < model.attribute_count(); ++a) {
      const std::string& cell = row.at(column_of[a]);
      const auto matches = abstract_values(model.attributes[a], cell);
      if (matches.size() != 1) {
        throw ModelError("value '" + cell + "' of '" + model.attributes[a].name + "' matches " +
                         std::to_string(matches.size()) + " subdomains");
      }
      test.push_back(matches.front());
    }
    tests.push_back(std::move(test));
  }
  return tests;
}

}  // namespace ctd
