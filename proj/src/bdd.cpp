#include "ctd/bdd.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace ctd {

Bdd Bdd::operator&(const Bdd& rhs) const { return manager_->apply_and(*this, rhs); }
Bdd Bdd::operator|(const Bdd& rhs) const { return manager_->apply_or(*this, rhs); }
Bdd Bdd::operator^(const Bdd& rhs) const { return manager_->apply_xor(*this, rhs); }
Bdd Bdd::operator!() const { return manager_->apply_not(*this); }

std::size_t BddManager::Key3Hash::operator()(const Key3& k) const noexcept {
  std::uint64_t h = k.a;
  h = h * 0x9E3779B97F4A7C15ull ^ k.b;
  h = h * 0x9E3779B97F4A7C15ull ^ k.c;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

BddManager::BddManager(std::size_t var_count) : var_count_(var_count) {
  const auto terminal = static_cast<VarIndex>(var_count);
  nodes_.push_back({terminal, 0, 0});
  nodes_.push_back({terminal, 1, 1});
}

void BddManager::check_owner(const Bdd& f) const {
  if (f.manager() != this) {
    throw std::invalid_argument("BDD handle belongs to a different manager");
  }
}

NodeId BddManager::make_node(VarIndex var, NodeId low, NodeId high) {
  if (low == high) return low;
  const Key3 key{var, low, high};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({var, low, high});
  unique_.emplace(key, id);
  return id;
}

Bdd BddManager::var(VarIndex v) {
  if (v >= var_count_) {
    throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
  }
  return {this, make_node(v, 0, 1)};
}

Bdd BddManager::nvar(VarIndex v) {
  if (v >= var_count_) {
    throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
  }
  return {this, make_node(v, 1, 0)};
}

Bdd BddManager::ite(const Bdd& f, const Bdd& g, const Bdd& h) {
  check_owner(f);
  check_owner(g);
  check_owner(h);
  return {this, ite_rec(f.id(), g.id(), h.id())};
}

NodeId BddManager::ite_rec(NodeId f, NodeId g, NodeId h) {
  if (f == 1) return g;
  if (f == 0) return h;
  if (g == h) return g;
  if (g == 1 && h == 0) return f;

  const Key3 key{f, g, h};
  if (auto it = ite_cache_.find(key); it != ite_cache_.end()) return it->second;

  const VarIndex top = std::min({level(f), level(g), level(h)});
  auto cofactor = [&](NodeId n, bool branch) {
    if (level(n) != top) return n;
    return branch ? nodes_[n].high : nodes_[n].low;
  };
  const NodeId low = ite_rec(cofactor(f, false), cofactor(g, false), cofactor(h, false));
  const NodeId high = ite_rec(cofactor(f, true), cofactor(g, true), cofactor(h, true));
  const NodeId result = make_node(top, low, high);
  ite_cache_.emplace(key, result);
  return result;
}

Bdd BddManager::restrict(const Bdd& f, VarIndex v, bool value) {
  check_owner(f);
  if (v >= var_count_) {
    throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
  }
  return {this, restrict_rec(f.id(), v, value)};
}

NodeId BddManager::restrict_rec(NodeId f, VarIndex v, bool value) {
  if (level(f) > v) return f;
  const BddNode n = nodes_[f];
  if (n.var == v) return value ? n.high : n.low;

  const Key3 key{f, v, value ? 1u : 0u};
  if (auto it = restrict_cache_.find(key); it != restrict_cache_.end()) return it->second;
  const NodeId low = restrict_rec(n.low, v, value);
  const NodeId high = restrict_rec(n.high, v, value);
  const NodeId result = make_node(n.var, low, high);
  restrict_cache_.emplace(key, result);
  return result;
}

Bdd BddManager::exists(const Bdd& f, std::span<const VarIndex> vars) {
  check_owner(f);
  std::vector<VarIndex> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!sorted.empty() && sorted.back() >= var_count_) {
    throw std::out_of_range("variable index " + std::to_string(sorted.back()) +
                            " out of range");
  }
  std::unordered_map<NodeId, NodeId> memo;
  return {this, exists_rec(f.id(), sorted, memo)};
}

NodeId BddManager::exists_rec(NodeId f, std::span<const VarIndex> vars,
                              std::unordered_map<NodeId, NodeId>& memo) {
  if (f <= 1) return f;
  const BddNode n = nodes_[f];
  const auto first = std::lower_bound(vars.begin(), vars.end(), n.var);
  if (first == vars.end()) return f;
  if (auto it = memo.find(f); it != memo.end()) return it->second;

  const auto rest = vars.subspan(static_cast<std::size_t>(first - vars.begin()));
  const NodeId low = exists_rec(n.low, rest, memo);
  const NodeId high = exists_rec(n.high, rest, memo);
  const NodeId result = *first == n.var ? ite_rec(low, 1, high) : make_node(n.var, low, high);
  memo.emplace(f, result);
  return result;
}

bool BddManager::eval(const Bdd& f, const std::vector<bool>& assignment) const {
  check_owner(f);
  NodeId cur = f.id();
  while (cur > 1) {
    const BddNode& n = nodes_[cur];
    if (n.var >= assignment.size()) {
      throw std::out_of_range("assignment has no value for variable " + std::to_string(n.var));
    }
    cur = assignment[n.var] ? n.high : n.low;
  }
  return cur == 1;
}

BigInt BddManager::sat_count(const Bdd& f, std::size_t n_vars) {
  check_owner(f);
  std::unordered_map<NodeId, BigInt> memo;
  auto lvl = [&](NodeId id) -> std::size_t { return id <= 1 ? n_vars : nodes_[id].var; };

  std::function<BigInt(NodeId)> count = [&](NodeId id) -> BigInt {
    if (id <= 1) return BigInt(id);
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const BddNode& n = nodes_[id];
    if (n.var >= n_vars) {
      throw std::invalid_argument("function depends on variable " + std::to_string(n.var) +
                                  " beyond n_vars=" + std::to_string(n_vars));
    }
    BigInt lo = count(n.low) << (lvl(n.low) - n.var - 1);
    BigInt hi = count(n.high) << (lvl(n.high) - n.var - 1);
    BigInt total = lo + hi;
    memo.emplace(id, total);
    return total;
  };
  return count(f.id()) << lvl(f.id());
}

void BddManager::for_each_sat(const Bdd& f, std::size_t n_vars,
                              const std::function<bool(const std::vector<bool>&)>& visit) {
  check_owner(f);
  if (f.is_false()) return;
  std::vector<bool> bits(n_vars, false);

  std::function<bool(NodeId, std::size_t)> walk = [&](NodeId id, std::size_t pos) -> bool {
    if (id == 0) return true;
    if (pos == n_vars) {
      if (id != 1) {
        throw std::invalid_argument("function depends on variable " +
                                    std::to_string(nodes_[id].var) + " beyond n_vars");
      }
      return visit(bits);
    }
    const bool decided = id > 1 && nodes_[id].var == pos;
    bits[pos] = false;
    if (!walk(decided ? nodes_[id].low : id, pos + 1)) return false;
    bits[pos] = true;
    const bool keep_going = walk(decided ? nodes_[id].high : id, pos + 1);
    bits[pos] = false;
    return keep_going;
  };
  walk(f.id(), 0);
}

std::vector<std::vector<bool>> BddManager::enumerate_sat(const Bdd& f, std::size_t n_vars) {
  std::vector<std::vector<bool>> out;
  for_each_sat(f, n_vars, [&](const std::vector<bool>& bits) {
    out.push_back(bits);
    return true;
  });
  return out;
}

std::optional<std::vector<bool>> BddManager::pick_sat(const Bdd& f, std::size_t n_vars) {
  check_owner(f);
  if (f.is_false()) return std::nullopt;
  std::vector<bool> bits(n_vars, false);
  NodeId cur = f.id();
  while (cur > 1) {
    const BddNode& n = nodes_[cur];
    if (n.var >= n_vars) {
      throw std::invalid_argument("function depends on variable " + std::to_string(n.var) +
                                  " beyond n_vars");
    }
    // Every non-false node is satisfiable, so the 0-branch wins whenever it
    // is not the false terminal.
    if (n.low != 0) {
      cur = n.low;
    } else {
      bits[n.var] = true;
      cur = n.high;
    }
  }
  return bits;
}

std::vector<VarIndex> BddManager::support(const Bdd& f) const {
  check_owner(f);
  std::set<VarIndex> vars;
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{f.id()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (id <= 1 || !seen.insert(id).second) continue;
    vars.insert(nodes_[id].var);
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  return {vars.begin(), vars.end()};
}

std::size_t BddManager::dag_size(const Bdd& f) const {
  check_owner(f);
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{f.id()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second || id <= 1) continue;
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  return seen.size();
}

void BddManager::dump(const Bdd& f, std::ostream& out) const {
  check_owner(f);
  std::set<NodeId> reachable;
  std::vector<NodeId> stack{f.id()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (id <= 1 || !reachable.insert(id).second) continue;
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  for (NodeId id : reachable) {
    const BddNode& n = nodes_[id];
    out << id << ' ' << n.var << ' ' << n.low << ' ' << n.high << '\n';
  }
}

bool BddManager::check_invariants() const {
  std::unordered_set<Key3, Key3Hash> triples;
  for (std::size_t id = 2; id < nodes_.size(); ++id) {
    const BddNode& n = nodes_[id];
    if (n.low == n.high) return false;
    if (n.var >= var_count_) return false;
    if (nodes_[n.low].var <= n.var || nodes_[n.high].var <= n.var) return false;
    if (!triples.insert({n.var, n.low, n.high}).second) return false;
  }
  return true;
}

}  // namespace ctd
