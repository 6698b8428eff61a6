// Global environment: ordered table of definitions and postulates plus the
// session's universe constraint graph. Definitions are registered in
// dependency order; postulates have no body and never reduce.

#ifndef UVK_ENV_HPP
#define UVK_ENV_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uvk/level.hpp"
#include "uvk/term.hpp"

namespace uvk {

struct GlobalDef {
  std::string name;
  TermPtr type;
  TermPtr body;      // null for postulates
  bool opaque = false;
  std::set<std::string> axioms;  // transitive axiom usage
  std::string module;            // module the definition came from

  bool is_postulate() const { return body == nullptr; }
};

class GlobalEnv {
 public:
  explicit GlobalEnv(UniverseMode mode = UniverseMode::Strict)
      : graph_(mode) {}

  LevelGraph& graph() { return graph_; }
  const LevelGraph& graph() const { return graph_; }

  bool contains(const std::string& name) const {
    return index_.count(name) > 0;
  }

  const GlobalDef* find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &defs_[it->second];
  }

  // Inserts a fully checked definition. Axiom usage is the set of axiom
  // nodes reachable through the bodies of referenced constants.
  void insert(GlobalDef def) {
    std::set<std::string> axioms;
    if (def.body) {
      collect_axioms(def.body, axioms);
      std::set<std::string> consts;
      collect_consts(def.body, consts);
      for (auto& c : consts)
        if (const GlobalDef* d = find(c))
          axioms.insert(d->axioms.begin(), d->axioms.end());
    } else {
      axioms.insert(def.name);  // a postulate is its own axiom
    }
    def.axioms = std::move(axioms);
    index_.emplace(def.name, defs_.size());
    defs_.push_back(std::move(def));
  }

  bool set_opaque(const std::string& name, bool opaque = true) {
    auto it = index_.find(name);
    if (it == index_.end()) return false;
    defs_[it->second].opaque = opaque;
    return true;
  }

  const std::vector<GlobalDef>& definitions() const { return defs_; }

  // Module bookkeeping for Require Export handling.
  bool module_loaded(const std::string& dotted) const {
    return modules_.count(dotted) > 0;
  }
  void mark_module_loaded(const std::string& dotted) {
    modules_.insert(dotted);
  }

 private:
  LevelGraph graph_;
  std::vector<GlobalDef> defs_;
  std::map<std::string, size_t> index_;
  std::set<std::string> modules_;
};

}  // namespace uvk

#endif  // UVK_ENV_HPP
