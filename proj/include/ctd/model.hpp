/// @file  model.hpp
/// @brief Test-space model: attributes, values, subdomain ranges, constraints.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctd/bdd.hpp"
#include "ctd/big_int.hpp"

namespace ctd {

/// Domain or validation failure (unknown names, infeasible model, bad input).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Half-open integer interval [lo, hi).
struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  [[nodiscard]] bool contains(std::int64_t x) const noexcept { return lo <= x && x < hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct Value {
  std::string label;
  std::optional<IntRange> range;

  friend bool operator==(const Value&, const Value&) = default;
};

struct Attribute {
  std::string name;
  std::vector<Value> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::optional<std::uint32_t> find_value(std::string_view label) const;
};

/// One attribute fixed to one value, both by index.
struct Binding {
  std::uint32_t attribute = 0;
  std::uint32_t value = 0;

  friend auto operator<=>(const Binding&, const Binding&) = default;
};

/// A full test: one value index per attribute, in declaration order.
using Test = std::vector<std::uint32_t>;

/// Partial assignment: bindings over distinct attributes.
using PartialAssignment = std::vector<Binding>;

/// A user-written requirement tuple, kept by name until resolved.
struct DirectiveEntry {
  std::string attribute;
  std::string value;
};
using Directive = std::vector<DirectiveEntry>;

struct Model {
  std::vector<Attribute> attributes;
  std::vector<std::string> constraints;
  std::vector<Directive> directives;

  [[nodiscard]] std::size_t attribute_count() const noexcept { return attributes.size(); }
  [[nodiscard]] std::optional<std::uint32_t> find_attribute(std::string_view name) const;

  /// Resolves `name=label`; throws ModelError naming the offender.
  [[nodiscard]] Binding bind(std::string_view name, std::string_view label) const;

  [[nodiscard]] const std::string& label(Binding b) const {
    return attributes.at(b.attribute).values.at(b.value).label;
  }
  [[nodiscard]] std::vector<std::string> labels(const Test& test) const;

  /// Parses a row of labels in declaration order; throws ModelError.
  [[nodiscard]] Test parse_test(const std::vector<std::string>& labels) const;
};

/// Product of the domain sizes, constraints ignored.
[[nodiscard]] BigInt cartesian_count(const Model& model);

/// Builds a model from its JSON document; rejects unknown fields and
/// malformed ranges with ModelError. Does not run semantic validation.
[[nodiscard]] Model model_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json model_to_json(const Model& model);

/// Reads and parses a model file. I/O failures throw std::ios_base::failure.
[[nodiscard]] Model load_model(const std::filesystem::path& path);

/// Label normalization applied by the loader (surrounding whitespace only).
[[nodiscard]] std::string trim(std::string_view s);

/// Log encoding of attribute values into Boolean variables.
///
/// Attribute blocks are disjoint and follow declaration order; value index i
/// is stored big-endian, so the first variable of a block is the MSB.
class Encoding {
 public:
  struct Block {
    VarIndex first = 0;
    std::uint32_t width = 0;
    std::uint32_t domain = 0;
  };

  explicit Encoding(const Model& model);

  [[nodiscard]] std::size_t var_count() const noexcept { return var_count_; }
  [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const Block& block(std::uint32_t attribute) const { return blocks_.at(attribute); }

  /// Variables of an attribute's block, ascending.
  [[nodiscard]] std::vector<VarIndex> vars_of(std::uint32_t attribute) const;

  /// attribute == value as a function over the block's variables.
  [[nodiscard]] Bdd value_equals(BddManager& mgr, Binding b) const;

  /// True on codes that decode to an existing value in every block.
  [[nodiscard]] Bdd validity(BddManager& mgr) const;

  [[nodiscard]] std::vector<bool> encode(const Test& test) const;
  /// Throws ModelError when a block holds an unused code.
  [[nodiscard]] Test decode(const std::vector<bool>& bits) const;

 private:
  std::vector<Block> blocks_;
  std::size_t var_count_ = 0;
};

/// Bits needed for a domain of `size` values: ceil(log2(size)).
[[nodiscard]] std::uint32_t bits_for(std::size_t size) noexcept;

}  // namespace ctd
