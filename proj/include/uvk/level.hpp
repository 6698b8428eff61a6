// Universe level constraint graph. Strict mode implements the Luo-style
// consistency check: every accepted constraint set admits a concrete
// assignment of naturals, maintained incrementally as a labeling. Off mode
// records constraints but never rejects them, mirroring a checker whose
// universe verification has been switched off.

#ifndef UVK_LEVEL_HPP
#define UVK_LEVEL_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uvk/term.hpp"

namespace uvk {

enum class LevelRel : uint8_t { Le, Lt };

enum class UniverseMode : uint8_t { Strict, Off };

struct LevelConstraint {
  LevelExpr lhs;
  LevelRel rel = LevelRel::Le;
  LevelExpr rhs;
  std::string provenance;  // human-readable origin, e.g. "ishinh at 14:1"

  std::string show() const {
    return lhs.show() + (rel == LevelRel::Lt ? " < " : " <= ") + rhs.show();
  }
};

struct UniverseError {
  std::vector<LevelExpr> cycle;        // nodes on the offending path
  std::vector<LevelConstraint> edges;  // the constraints traversed
  std::string message;

  std::string show() const {
    std::string s = message.empty() ? "universe inconsistency" : message;
    if (!edges.empty()) s += ": ";
    for (size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ", ";
      s += edges[i].show();
      if (!edges[i].provenance.empty()) s += " [" + edges[i].provenance + "]";
    }
    return s;
  }
};

class LevelGraph {
 public:
  explicit LevelGraph(UniverseMode mode = UniverseMode::Strict) : mode_(mode) {}

  UniverseMode mode() const { return mode_; }
  void set_mode(UniverseMode m) { mode_ = m; }

  LevelExpr fresh() { return LevelExpr::var(next_var_++); }
  uint32_t var_count() const { return next_var_; }

  const std::vector<LevelConstraint>& constraints() const { return edges_; }

  struct Mark {
    size_t edges;
    uint32_t vars;
  };
  Mark mark() const { return {edges_.size(), next_var_}; }
  void rollback(Mark m) {
    if (m.edges < edges_.size()) {
      edges_.resize(m.edges);
      next_var_ = m.vars;
      rebuild();
    }
  }

  // Adds lhs rel rhs. In Off mode this always succeeds. In Strict mode it
  // fails when no assignment of naturals can satisfy the extended set.
  std::optional<UniverseError> add_constraint(LevelExpr lhs, LevelRel rel,
                                              LevelExpr rhs,
                                              std::string provenance = "") {
    LevelConstraint c{lhs, rel, rhs, std::move(provenance)};
    if (lhs.is_concrete() && rhs.is_concrete()) {
      bool ok = rel == LevelRel::Lt ? lhs.value < rhs.value
                                    : lhs.value <= rhs.value;
      if (ok || mode_ == UniverseMode::Off) {
        int from = intern(lhs);
        int to = intern(rhs);
        edges_.push_back(c);
        adjacency_[from].push_back({edges_.size() - 1, to});
        return std::nullopt;
      }
      UniverseError err;
      err.cycle = {lhs, rhs};
      err.edges = {c};
      err.message = "impossible constraint between fixed levels";
      return err;
    }
    int from = intern(lhs);
    int to = intern(rhs);
    edges_.push_back(c);
    adjacency_[from].push_back({edges_.size() - 1, to});
    if (mode_ == UniverseMode::Off) return std::nullopt;

    auto err = propagate(from, to);
    if (err) {
      adjacency_[from].pop_back();
      edges_.pop_back();
    }
    return err;
  }

  // Whole-graph validation, independent of the incremental labels so it
  // also works on graphs that were populated in Off mode.
  std::optional<UniverseError> check_satisfiable() const {
    if (mode_ == UniverseMode::Off) return std::nullopt;
    LevelGraph scratch(UniverseMode::Strict);
    scratch.next_var_ = next_var_;
    for (auto& e : edges_) {
      auto err = scratch.add_constraint(e.lhs, e.rel, e.rhs, e.provenance);
      if (err) return err;
    }
    return std::nullopt;
  }

  // A concrete assignment satisfying every recorded constraint, when one
  // exists. For graphs built in Strict mode this is the live labeling.
  std::map<uint32_t, uint64_t> extract_assignment() const {
    std::map<uint32_t, uint64_t> out;
    if (mode_ == UniverseMode::Strict) {
      for (uint32_t v = 0; v < next_var_; ++v) out[v] = 0;
      for (size_t i = 0; i < nodes_.size(); ++i)
        if (!nodes_[i].is_concrete()) out[nodes_[i].value] = labels_[i];
      return out;
    }
    LevelGraph scratch(UniverseMode::Strict);
    scratch.next_var_ = next_var_;
    for (auto& e : edges_)
      if (scratch.add_constraint(e.lhs, e.rel, e.rhs)) return {};
    return scratch.extract_assignment();
  }

 private:
  struct Adj {
    size_t edge;
    int node;
  };

  UniverseMode mode_;
  uint32_t next_var_ = 0;
  std::vector<LevelConstraint> edges_;
  std::map<uint64_t, int> node_ids_;
  std::vector<LevelExpr> nodes_;
  std::vector<uint64_t> labels_;
  std::vector<std::vector<Adj>> adjacency_;

  static uint64_t key_of(LevelExpr e) {
    return (uint64_t(e.is_concrete() ? 0 : 1) << 32) | e.value;
  }

  int intern(LevelExpr e) {
    auto k = key_of(e);
    auto it = node_ids_.find(k);
    if (it != node_ids_.end()) return it->second;
    int id = int(nodes_.size());
    node_ids_.emplace(k, id);
    nodes_.push_back(e);
    labels_.push_back(e.is_concrete() ? e.value : 0);
    adjacency_.emplace_back();
    return id;
  }

  void rebuild() {
    node_ids_.clear();
    nodes_.clear();
    labels_.clear();
    adjacency_.clear();
    auto saved = std::move(edges_);
    edges_.clear();
    auto saved_mode = mode_;
    mode_ = UniverseMode::Off;  // re-adding known-good edges, skip checks
    for (auto& e : saved) {
      int from = intern(e.lhs);
      int to = intern(e.rhs);
      edges_.push_back(e);
      adjacency_[from].push_back({edges_.size() - 1, to});
    }
    mode_ = saved_mode;
    if (mode_ == UniverseMode::Strict) relabel();
  }

  void relabel() {
    for (size_t i = 0; i < nodes_.size(); ++i)
      labels_[i] = nodes_[i].is_concrete() ? nodes_[i].value : 0;
    bool changed = true;
    size_t rounds = 0, limit = nodes_.size() + 2;
    while (changed && rounds++ <= limit) {
      changed = false;
      for (size_t i = 0; i < edges_.size(); ++i) {
        int u = node_ids_[key_of(edges_[i].lhs)];
        int v = node_ids_[key_of(edges_[i].rhs)];
        uint64_t need = labels_[u] + (edges_[i].rel == LevelRel::Lt ? 1 : 0);
        if (!nodes_[v].is_concrete() && labels_[v] < need) {
          labels_[v] = need;
          changed = true;
        }
      }
    }
  }

  // Incremental relabeling after appending an edge from `from` to `to`.
  // Touched labels are restored on failure.
  std::optional<UniverseError> propagate(int from, int to) {
    uint64_t lt_edges = 0, max_concrete = 0;
    for (auto& e : edges_) {
      if (e.rel == LevelRel::Lt) ++lt_edges;
      if (e.lhs.is_concrete()) max_concrete = std::max<uint64_t>(max_concrete, e.lhs.value);
      if (e.rhs.is_concrete()) max_concrete = std::max<uint64_t>(max_concrete, e.rhs.value);
    }
    uint64_t bound = max_concrete + lt_edges + 1;

    std::map<int, uint64_t> saved;
    std::vector<int> parent_node(nodes_.size(), -1);
    std::vector<int> parent_edge(nodes_.size(), -1);
    std::deque<int> queue;

    auto fail = [&](int at, const char* msg) {
      for (auto& [n, l] : saved) labels_[n] = l;
      UniverseError err;
      err.message = msg;
      // Walk the parent chain; it either loops (a genuine cycle) or ends
      // at the freshly added edge.
      std::vector<int> chain;
      std::vector<int> chain_edges;
      std::map<int, size_t> pos;
      int cur = at;
      while (cur != -1 && !pos.count(cur)) {
        pos[cur] = chain.size();
        chain.push_back(cur);
        chain_edges.push_back(parent_edge[cur]);
        cur = parent_node[cur];
      }
      size_t start = cur == -1 ? 0 : pos[cur];
      // chain runs target -> ... -> source; reverse into path order
      for (size_t i = chain.size(); i-- > start;) {
        err.cycle.push_back(nodes_[chain[i]]);
        if (chain_edges[i] >= 0) err.edges.push_back(edges_[chain_edges[i]]);
      }
      std::reverse(err.edges.begin(), err.edges.end());
      return err;
    };

    size_t new_edge = edges_.size() - 1;
    uint64_t w = edges_[new_edge].rel == LevelRel::Lt ? 1 : 0;
    if (labels_[from] + w <= labels_[to]) return std::nullopt;
    parent_node[to] = from;
    parent_edge[to] = int(new_edge);
    if (nodes_[to].is_concrete())
      return fail(to, "level exceeds a fixed universe");
    saved.emplace(to, labels_[to]);
    labels_[to] = labels_[from] + w;
    if (labels_[to] > bound) return fail(to, "universe inconsistency");
    queue.push_back(to);

    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto& a : adjacency_[v]) {
        uint64_t need =
            labels_[v] + (edges_[a.edge].rel == LevelRel::Lt ? 1 : 0);
        if (labels_[a.node] >= need) continue;
        parent_node[a.node] = v;
        parent_edge[a.node] = int(a.edge);
        if (nodes_[a.node].is_concrete())
          return fail(a.node, "level exceeds a fixed universe");
        saved.emplace(a.node, labels_[a.node]);
        labels_[a.node] = need;
        if (need > bound) return fail(a.node, "universe inconsistency");
        queue.push_back(a.node);
      }
    }
    return std::nullopt;
  }
};

}  // namespace uvk

#endif  // UVK_LEVEL_HPP
