#include "ctd/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ctd {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ModelError("unknown field '" + key + "' in " + where);
    }
  }
}

std::int64_t range_bound(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw ModelError("range bound in " + where +
                     " must be an integer (unbounded ranges are not supported)");
  }
  return v.get<std::int64_t>();
}

Value value_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return {trim(v.get<std::string>()), std::nullopt};
  if (v.is_number_integer()) return {std::to_string(v.get<std::int64_t>()), std::nullopt};
  if (v.is_boolean()) return {v.get<bool>() ? "true" : "false", std::nullopt};
  if (!v.is_object()) throw ModelError("value in " + where + " must be a string or object");

  reject_unknown_fields(v, {"label", "range"}, where);
  if (!v.contains("label") || !v["label"].is_string()) {
    throw ModelError("value object in " + where + " needs a string 'label'");
  }
  Value out{trim(v["label"].get<std::string>()), std::nullopt};
  if (v.contains("range")) {
    const json& r = v["range"];
    if (!r.is_array() || r.size() != 2) {
      throw ModelError("range of '" + out.label + "' in " + where + " must be [lo, hi]");
    }
    IntRange range{range_bound(r[0], where), range_bound(r[1], where)};
    if (range.lo >= range.hi) {
      throw ModelError("range of '" + out.label + "' in " + where + " is empty (lo >= hi)");
    }
    out.range = range;
  }
  return out;
}

}  // namespace

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

std::optional<std::uint32_t> Attribute::find_value(std::string_view label) const {
  const std::string key = trim(label);
  for (std::uint32_t i = 0; i < values.size(); ++i) {
    if (values[i].label == key) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Model::find_attribute(std::string_view name) const {
  const std::string key = trim(name);
  for (std::uint32_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == key) return i;
  }
  return std::nullopt;
}

Binding Model::bind(std::string_view name, std::string_view label) const {
  const auto attr = find_attribute(name);
  if (!attr) throw ModelError("unknown attribute '" + std::string(name) + "'");
  const auto value = attributes[*attr].find_value(label);
  if (!value) {
    throw ModelError("unknown value '" + std::string(label) + "' for attribute '" +
                     std::string(name) + "'");
  }
  return {*attr, *value};
}

std::vector<std::string> Model::labels(const Test& test) const {
  std::vector<std::string> out;
  out.reserve(test.size());
  for (std::uint32_t a = 0; a < test.size(); ++a) out.push_back(label({a, test[a]}));
  return out;
}

Test Model::parse_test(const std::vector<std::string>& labels) const {
  if (labels.size() != attributes.size()) {
    throw ModelError("test has " + std::to_string(labels.size()) + " values, model has " +
                     std::to_string(attributes.size()) + " attributes");
  }
  Test test(labels.size());
  for (std::uint32_t a = 0; a < labels.size(); ++a) {
    test[a] = bind(attributes[a].name, labels[a]).value;
  }
  return test;
}

BigInt cartesian_count(const Model& model) {
  BigInt product = 1;
  for (const auto& attr : model.attributes) product *= attr.size();
  return product;
}

Model model_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelError("model document must be a JSON object");
  reject_unknown_fields(doc, {"name", "description", "attributes", "constraints", "directives"},
                        "model");
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    throw ModelError("model needs an 'attributes' array");
  }

  Model model;
  for (const json& a : doc["attributes"]) {
    if (!a.is_object()) throw ModelError("attribute entries must be objects");
    reject_unknown_fields(a, {"name", "values"}, "attribute");
    if (!a.contains("name") || !a["name"].is_string()) {
      throw ModelError("attribute needs a string 'name'");
    }
    Attribute attr{trim(a["name"].get<std::string>()), {}};
    const std::string where = "attribute '" + attr.name + "'";
    if (!a.contains("values") || !a["values"].is_array()) {
      throw ModelError(where + " needs a 'values' array");
    }
    for (const json& v : a["values"]) attr.values.push_back(value_from_json(v, where));
    model.attributes.push_back(std::move(attr));
  }

  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array()) throw ModelError("'constraints' must be an array");
    for (const json& c : doc["constraints"]) {
      if (!c.is_string()) throw ModelError("constraints must be strings");
      model.constraints.push_back(c.get<std::string>());
    }
  }

  if (doc.contains("directives")) {
    if (!doc["directives"].is_array()) throw ModelError("'directives' must be an array");
    for (const json& d : doc["directives"]) {
      if (!d.is_array()) throw ModelError("each directive must be an array of {attr, value}");
      Directive directive;
      for (const json& e : d) {
        if (!e.is_object()) throw ModelError("directive entries must be objects");
        reject_unknown_fields(e, {"attr", "value"}, "directive entry");
        if (!e.contains("attr") || !e["attr"].is_string() || !e.contains("value")) {
          throw ModelError("directive entry needs 'attr' and 'value'");
        }
        const json& v = e["value"];
        std::string label = v.is_string() ? v.get<std::string>() : v.dump();
        directive.push_back({trim(e["attr"].get<std::string>()), trim(label)});
      }
      model.directives.push_back(std::move(directive));
    }
  }
  return model;
}

json model_to_json(const Model& model) {
  json attrs = json::array();
  for (const auto& attr : model.attributes) {
    json values = json::array();
    for (const auto& v : attr.values) {
      if (v.range) {
        values.push_back({{"label", v.label}, {"range", {v.range->lo, v.range->hi}}});
      } else {
        values.push_back(v.label);
      }
    }
    attrs.push_back({{"name", attr.name}, {"values", values}});
  }
  json directives = json::array();
  for (const auto& d : model.directives) {
    json entries = json::array();
    for (const auto& e : d) entries.push_back({{"attr", e.attribute}, {"value", e.value}});
    directives.push_back(entries);
  }
  return {{"attributes", attrs}, {"constraints", model.constraints}, {"directives", directives}};
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open model file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError("model file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

std::uint32_t bits_for(std::size_t size) noexcept {
  std::uint32_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  return bits;
}

Encoding::Encoding(const Model& model) {
  VarIndex next = 0;
  for (const auto& attr : model.attributes) {
    const std::uint32_t width = bits_for(attr.size());
    blocks_.push_back({next, width, static_cast<std::uint32_t>(attr.size())});
    next += width;
  }
  var_count_ = next;
}

std::vector<VarIndex> Encoding::vars_of(std::uint32_t attribute) const {
  const Block& b = block(attribute);
  std::vector<VarIndex> vars(b.width);
  for (std::uint32_t j = 0; j < b.width; ++j) vars[j] = b.first + j;
  return vars;
}

Bdd Encoding::value_equals(BddManager& mgr, Binding binding) const {
  const Block& b = block(binding.attribute);
  if (binding.value >= b.domain) throw ModelError("value index out of range");
  // Built bottom-up so each conjunction only adds a node above the result.
  Bdd result = mgr.bdd_true();
  for (std::uint32_t j = b.width; j-- > 0;) {
    const bool bit = (binding.value >> (b.width - 1 - j)) & 1u;
    const VarIndex v = b.first + j;
    result = bit ? mgr.var(v) & result : mgr.nvar(v) & result;
  }
  return result;
}

Bdd Encoding::validity(BddManager& mgr) const {
  Bdd result = mgr.bdd_true();
  for (std::uint32_t a = static_cast<std::uint32_t>(blocks_.size()); a-- > 0;) {
    const Block& b = blocks_[a];
    if ((std::size_t{1} << b.width) == b.domain) continue;
    Bdd any = mgr.bdd_false();
    for (std::uint32_t v = 0; v < b.domain; ++v) any |= value_equals(mgr, {a, v});
    result &= any;
  }
  return result;
}

std::vector<bool> Encoding::encode(const Test& test) const {
  if (test.size() != blocks_.size()) throw ModelError("test width does not match encoding");
  std::vector<bool> bits(var_count_, false);
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    const Block& b = blocks_[a];
    if (test[a] >= b.domain) throw ModelError("value index out of range");
    for (std::uint32_t j = 0; j < b.width; ++j) {
      bits[b.first + j] = (test[a] >> (b.width - 1 - j)) & 1u;
    }
  }
  return bits;
}

Test Encoding::decode(const std::vector<bool>& bits) const {
  if (bits.size() < var_count_) throw ModelError("bit vector shorter than encoding");
  Test test(blocks_.size());
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    const Block& b = blocks_[a];
    std::uint32_t code = 0;
    for (std::uint32_t j = 0; j < b.width; ++j) code = (code << 1) | (bits[b.first + j] ? 1u : 0u);
    if (code >= b.domain) throw ModelError("unused code in attribute block");
    test[a] = code;
  }
  return test;
}

}  // namespace ctd
