/// @file  bdd.hpp
/// @brief Reduced ordered binary decision diagrams (no complement edges)

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ctd/big_int.hpp"

namespace ctd {

class BddManager;

/// Position of a Boolean variable in the manager's global order.
using VarIndex = std::uint32_t;

/// Index into the manager's node store.
using NodeId = std::uint32_t;

/// A Boolean function owned by a `BddManager`.
///
/// Handles are cheap values. Two handles from the same manager compare equal
/// iff they denote the same function.
class Bdd {
 public:
  Bdd() = default;

  [[nodiscard]] NodeId id() const noexcept { return id_; }
  [[nodiscard]] BddManager* manager() const noexcept { return manager_; }
  [[nodiscard]] bool valid() const noexcept { return manager_ != nullptr; }

  [[nodiscard]] bool is_false() const noexcept { return id_ == 0; }
  [[nodiscard]] bool is_true() const noexcept { return id_ == 1; }
  [[nodiscard]] bool is_terminal() const noexcept { return id_ <= 1; }

  friend bool operator==(const Bdd&, const Bdd&) = default;

  Bdd operator&(const Bdd& rhs) const;
  Bdd operator|(const Bdd& rhs) const;
  Bdd operator^(const Bdd& rhs) const;
  Bdd operator!() const;
  Bdd& operator&=(const Bdd& rhs) { return *this = *this & rhs; }
  Bdd& operator|=(const Bdd& rhs) { return *this = *this | rhs; }

 private:
  friend class BddManager;
  Bdd(BddManager* manager, NodeId id) noexcept : manager_(manager), id_(id) {}

  BddManager* manager_ = nullptr;
  NodeId id_ = 0;
};

struct BddNode {
  VarIndex var;
  NodeId low;
  NodeId high;
};

/// Owner of a shared, hash-consed node store.
///
/// Node 0 is the false terminal and node 1 the true terminal; both carry
/// `var == var_count()` so that terminals sort after every variable. Nodes are
/// never freed. The operation cache is unbounded for the manager's lifetime.
///
/// Not thread-safe: a manager and its handles must stay on one thread at a
/// time. Distinct managers are independent. The manager is pinned in memory
/// because handles keep a pointer to it.
class BddManager {
 public:
  explicit BddManager(std::size_t var_count);

  BddManager(const BddManager&) = delete;
  BddManager& operator=(const BddManager&) = delete;

  [[nodiscard]] std::size_t var_count() const noexcept { return var_count_; }
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] const BddNode& node(NodeId id) const { return nodes_.at(id); }

  [[nodiscard]] Bdd constant(bool value) noexcept { return {this, value ? 1u : 0u}; }
  [[nodiscard]] Bdd bdd_true() noexcept { return constant(true); }
  [[nodiscard]] Bdd bdd_false() noexcept { return constant(false); }

  /// The projection function onto variable `v`. Throws std::out_of_range.
  [[nodiscard]] Bdd var(VarIndex v);
  /// The negated literal of variable `v`.
  [[nodiscard]] Bdd nvar(VarIndex v);

  /// (f AND g) OR (NOT f AND h)
  [[nodiscard]] Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);

  [[nodiscard]] Bdd apply_and(const Bdd& f, const Bdd& g) { return ite(f, g, bdd_false()); }
  [[nodiscard]] Bdd apply_or(const Bdd& f, const Bdd& g) { return ite(f, bdd_true(), g); }
  [[nodiscard]] Bdd apply_not(const Bdd& f) { return ite(f, bdd_false(), bdd_true()); }
  [[nodiscard]] Bdd apply_xor(const Bdd& f, const Bdd& g) { return ite(f, apply_not(g), g); }
  [[nodiscard]] Bdd implies(const Bdd& f, const Bdd& g) { return ite(f, g, bdd_true()); }
  [[nodiscard]] Bdd iff(const Bdd& f, const Bdd& g) { return ite(f, g, apply_not(g)); }

  /// Cofactor of `f` with variable `v` fixed to `value`.
  [[nodiscard]] Bdd restrict(const Bdd& f, VarIndex v, bool value);

  /// Existential quantification over every variable in `vars`.
  [[nodiscard]] Bdd exists(const Bdd& f, std::span<const VarIndex> vars);

  /// Value of `f` under `assignment`, indexed by variable. Only the variables
  /// on the evaluated path are read; throws std::out_of_range if one of them
  /// lies past the end of `assignment`.
  [[nodiscard]] bool eval(const Bdd& f, const std::vector<bool>& assignment) const;

  /// Number of satisfying assignments over variables [0, n_vars).
  /// Throws std::invalid_argument if `f` depends on a variable >= n_vars.
  [[nodiscard]] BigInt sat_count(const Bdd& f, std::size_t n_vars);
  [[nodiscard]] BigInt sat_count(const Bdd& f) { return sat_count(f, var_count_); }

  /// Visits satisfying assignments over [0, n_vars) in lexicographic order of
  /// the bit vector (variable 0 most significant). The visitor returns false
  /// to stop early.
  void for_each_sat(const Bdd& f, std::size_t n_vars,
                    const std::function<bool(const std::vector<bool>&)>& visit);

  /// All satisfying assignments, lexicographic order.
  [[nodiscard]] std::vector<std::vector<bool>> enumerate_sat(const Bdd& f, std::size_t n_vars);

  /// The lexicographically first satisfying assignment, if any.
  [[nodiscard]] std::optional<std::vector<bool>> pick_sat(const Bdd& f, std::size_t n_vars);
  [[nodiscard]] std::optional<std::vector<bool>> pick_sat(const Bdd& f) {
    return pick_sat(f, var_count_);
  }

  /// Variables `f` depends on, ascending.
  [[nodiscard]] std::vector<VarIndex> support(const Bdd& f) const;

  /// Number of nodes reachable from `f`, terminals included.
  [[nodiscard]] std::size_t dag_size(const Bdd& f) const;

  /// Writes one line per reachable node: `id var low high`, terminals omitted.
  void dump(const Bdd& f, std::ostream& out) const;

  /// Checks reduction, ordering and uniqueness over the whole node store.
  [[nodiscard]] bool check_invariants() const;

 private:
  struct Key3 {
    std::uint32_t a, b, c;
    friend bool operator==(const Key3&, const Key3&) = default;
  };
  struct Key3Hash {
    std::size_t operator()(const Key3& k) const noexcept;
  };

  [[nodiscard]] NodeId make_node(VarIndex var, NodeId low, NodeId high);
  [[nodiscard]] VarIndex level(NodeId id) const noexcept { return nodes_[id].var; }
  void check_owner(const Bdd& f) const;

  NodeId ite_rec(NodeId f, NodeId g, NodeId h);
  NodeId restrict_rec(NodeId f, VarIndex v, bool value);
  NodeId exists_rec(NodeId f, std::span<const VarIndex> vars,
                    std::unordered_map<NodeId, NodeId>& memo);

  std::size_t var_count_;
  std::vector<BddNode> nodes_;
  std::unordered_map<Key3, NodeId, Key3Hash> unique_;
  std::unordered_map<Key3, NodeId, Key3Hash> ite_cache_;
  std::unordered_map<Key3, NodeId, Key3Hash> restrict_cache_;
};

}  // namespace ctd
