/// @file  instantiate.hpp
/// @brief Abstract-to-concrete value selection for subdomain values.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ctd/model.hpp"

namespace ctd {

/// A plan rendered as strings, ready for execution.
struct ConcretePlan {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::uint64_t seed = 0;
};

/// An input deliberately kept out of the model and drawn at random per test.
struct FreeAttribute {
  std::string name;
  IntRange range;
};

/// Uniform integer in [range.lo, range.hi). Uses only the engine's raw output
/// so the stream is identical across standard libraries.
[[nodiscard]] std::int64_t draw_in_range(std::mt19937_64& engine, IntRange range);

/// Replaces every ranged value with a seeded uniform draw from its range;
/// rangeless labels pass through. Draws run row-major.
[[nodiscard]] ConcretePlan instantiate(const Model& model, const std::vector<Test>& tests,
                                       std::uint64_t seed);

/// Appends one seeded random column per free attribute. Throws ModelError
/// when a name collides with a model attribute or an existing column.
[[nodiscard]] ConcretePlan randomize_free(const Model& model, ConcretePlan plan,
                                          const std::vector<FreeAttribute>& free_attrs,
                                          std::uint64_t seed);

/// Every value of `attr` that `concrete` could stand for: rangeless values by
/// label, ranged values by integer containment. Overlapping subdomains yield
/// several indices.
[[nodiscard]] std::vector<std::uint32_t> abstract_values(const Attribute& attr,
                                                         std::string_view concrete);

/// Maps the model columns of a concrete plan back to abstract tests. Throws
/// ModelError for a cell matching no value or more than one.
[[nodiscard]] std::vector<Test> abstract_plan(const Model& model, const ConcretePlan& plan);

}  // namespace ctd
