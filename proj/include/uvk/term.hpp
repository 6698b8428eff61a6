// Core term language: de Bruijn syntax tree shared by the parser, the
// kernel and the evaluator. Terms are immutable values held by shared_ptr;
// all operations build fresh nodes.

#ifndef UVK_TERM_HPP
#define UVK_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace uvk {

// -------------------------------------------------------------------------
// Universe level expressions: either a concrete level or a solver variable.

struct LevelExpr {
  enum class Kind : uint8_t { Concrete, Var };
  Kind kind = Kind::Concrete;
  uint32_t value = 0;  // level for Concrete, variable id for Var

  static LevelExpr concrete(uint32_t n) { return LevelExpr{Kind::Concrete, n}; }
  static LevelExpr var(uint32_t id) { return LevelExpr{Kind::Var, id}; }

  bool is_concrete() const { return kind == Kind::Concrete; }
  bool operator==(const LevelExpr& o) const {
    return kind == o.kind && value == o.value;
  }
  bool operator!=(const LevelExpr& o) const { return !(*this == o); }

  std::string show() const {
    if (is_concrete()) return "UU" + std::to_string(value);
    return "?u" + std::to_string(value);
  }
};

// -------------------------------------------------------------------------
// Source positions, attached to commands and surface terms for diagnostics.

struct SrcLoc {
  uint32_t line = 0;
  uint32_t col = 0;
  std::string show() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

// -------------------------------------------------------------------------
// Term tags. The inductive inventory is fixed: unit, empty, bool, nat,
// binary coproducts, dependent sums and identity types, each with its
// standard dependent eliminator.

enum class Tag : uint8_t {
  // core lambda calculus with universes
  Var,       // de Bruijn index
  Universe,  // UU_l
  Pi,        // kids: domain, codomain (binds 1)
  Lam,       // kids: domain, body (binds 1)
  App,       // kids: fn, arg
  Sigma,     // total2; kids: domain, codomain (binds 1)
  Pair,      // tpair; kids: sigma type annotation, fst, snd
  Const,     // reference to a global definition
  AxiomRef,  // reference to a postulate
  Ident,     // unresolved surface identifier (parser output only)
  Hole,      // `_`, filled by bidirectional checking or rejected

  // inductive type formers and constructors
  Unit, Tt,
  Empty,
  Bool, TrueC, FalseC,
  Nat, Zero, Succ,              // Succ kids: predecessor
  Coprod,                       // kids: left type, right type
  InL, InR,                     // kids: left type, right type, payload
  Paths,                        // kids: type, lhs, rhs
  Refl,                         // idpath; kids: type, point

  // dependent eliminators; motive first, then methods, scrutinee last
  ElimUnit,    // kids: motive, method, scrutinee
  ElimEmpty,   // kids: motive, scrutinee
  ElimBool,    // kids: motive, m_true, m_false, scrutinee
  ElimNat,     // kids: motive, m_zero, m_succ, scrutinee
  ElimCoprod,  // kids: motive, m_inl, m_inr, scrutinee
  ElimSigma,   // kids: motive, method, scrutinee
  ElimPaths,   // J; kids: motive, method, scrutinee
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Tag tag;
  uint32_t index = 0;        // Var
  LevelExpr level;           // Universe
  std::string name;          // Const/AxiomRef/Ident; binder hint for Pi/Lam/Sigma
  std::vector<TermPtr> kids;
  SrcLoc loc;

  explicit Term(Tag t) : tag(t) {}
};

// Factory helpers. These are the only way terms are built, which keeps
// arities consistent in one place.
namespace mk {

inline TermPtr node(Tag t, std::vector<TermPtr> kids = {}) {
  auto p = std::make_shared<Term>(t);
  p->kids = std::move(kids);
  return p;
}

inline TermPtr var(uint32_t i) {
  auto p = std::make_shared<Term>(Tag::Var);
  p->index = i;
  return p;
}
inline TermPtr universe(LevelExpr l) {
  auto p = std::make_shared<Term>(Tag::Universe);
  p->level = l;
  return p;
}
inline TermPtr pi(TermPtr dom, TermPtr cod, std::string hint = "") {
  auto p = std::make_shared<Term>(Tag::Pi);
  p->kids = {std::move(dom), std::move(cod)};
  p->name = std::move(hint);
  return p;
}
inline TermPtr lam(TermPtr dom, TermPtr body, std::string hint = "") {
  auto p = std::make_shared<Term>(Tag::Lam);
  p->kids = {std::move(dom), std::move(body)};
  p->name = std::move(hint);
  return p;
}
inline TermPtr app(TermPtr f, TermPtr a) {
  return node(Tag::App, {std::move(f), std::move(a)});
}
inline TermPtr app(TermPtr f, TermPtr a, TermPtr b) {
  return app(app(std::move(f), std::move(a)), std::move(b));
}
inline TermPtr sigma(TermPtr dom, TermPtr cod, std::string hint = "") {
  auto p = std::make_shared<Term>(Tag::Sigma);
  p->kids = {std::move(dom), std::move(cod)};
  p->name = std::move(hint);
  return p;
}
inline TermPtr pair(TermPtr sig, TermPtr fst, TermPtr snd) {
  return node(Tag::Pair, {std::move(sig), std::move(fst), std::move(snd)});
}
inline TermPtr constant(std::string n) {
  auto p = std::make_shared<Term>(Tag::Const);
  p->name = std::move(n);
  return p;
}
inline TermPtr axiom(std::string n) {
  auto p = std::make_shared<Term>(Tag::AxiomRef);
  p->name = std::move(n);
  return p;
}
inline TermPtr ident(std::string n, SrcLoc loc = {}) {
  auto p = std::make_shared<Term>(Tag::Ident);
  p->name = std::move(n);
  p->loc = loc;
  return p;
}
inline TermPtr hole() { return node(Tag::Hole); }

inline TermPtr unit() { return node(Tag::Unit); }
inline TermPtr tt() { return node(Tag::Tt); }
inline TermPtr empty() { return node(Tag::Empty); }
inline TermPtr boolean() { return node(Tag::Bool); }
inline TermPtr true_c() { return node(Tag::TrueC); }
inline TermPtr false_c() { return node(Tag::FalseC); }
inline TermPtr nat() { return node(Tag::Nat); }
inline TermPtr zero() { return node(Tag::Zero); }
inline TermPtr succ(TermPtr n) { return node(Tag::Succ, {std::move(n)}); }
inline TermPtr coprod(TermPtr l, TermPtr r) {
  return node(Tag::Coprod, {std::move(l), std::move(r)});
}
inline TermPtr inl(TermPtr lt, TermPtr rt, TermPtr v) {
  return node(Tag::InL, {std::move(lt), std::move(rt), std::move(v)});
}
inline TermPtr inr(TermPtr lt, TermPtr rt, TermPtr v) {
  return node(Tag::InR, {std::move(lt), std::move(rt), std::move(v)});
}
inline TermPtr paths(TermPtr ty, TermPtr a, TermPtr b) {
  return node(Tag::Paths, {std::move(ty), std::move(a), std::move(b)});
}
inline TermPtr refl(TermPtr ty, TermPtr a) {
  return node(Tag::Refl, {std::move(ty), std::move(a)});
}

inline TermPtr elim_unit(TermPtr mo, TermPtr m, TermPtr s) {
  return node(Tag::ElimUnit, {std::move(mo), std::move(m), std::move(s)});
}
inline TermPtr elim_empty(TermPtr mo, TermPtr s) {
  return node(Tag::ElimEmpty, {std::move(mo), std::move(s)});
}
inline TermPtr elim_bool(TermPtr mo, TermPtr mt, TermPtr mf, TermPtr s) {
  return node(Tag::ElimBool,
              {std::move(mo), std::move(mt), std::move(mf), std::move(s)});
}
inline TermPtr elim_nat(TermPtr mo, TermPtr m0, TermPtr ms, TermPtr s) {
  return node(Tag::ElimNat,
              {std::move(mo), std::move(m0), std::move(ms), std::move(s)});
}
inline TermPtr elim_coprod(TermPtr mo, TermPtr ml, TermPtr mr, TermPtr s) {
  return node(Tag::ElimCoprod,
              {std::move(mo), std::move(ml), std::move(mr), std::move(s)});
}
inline TermPtr elim_sigma(TermPtr mo, TermPtr m, TermPtr s) {
  return node(Tag::ElimSigma, {std::move(mo), std::move(m), std::move(s)});
}
inline TermPtr elim_paths(TermPtr mo, TermPtr m, TermPtr s) {
  return node(Tag::ElimPaths, {std::move(mo), std::move(m), std::move(s)});
}

inline TermPtr numeral(uint64_t n) {
  TermPtr t = zero();
  for (uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}

}  // namespace mk

// Number of variables a child position binds. Pi/Lam/Sigma bind one in
// their second child; everything else binds none.
inline int binds_at(Tag tag, size_t kid) {
  switch (tag) {
    case Tag::Pi:
    case Tag::Lam:
    case Tag::Sigma:
      return kid == 1 ? 1 : 0;
    default:
      return 0;
  }
}

// Structural equality up to level-variable identity; binder hints and
// source locations are ignored.
inline bool struct_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Var:
      if (a->index != b->index) return false;
      break;
    case Tag::Universe:
      if (a->level != b->level) return false;
      break;
    case Tag::Const:
    case Tag::AxiomRef:
    case Tag::Ident:
      if (a->name != b->name) return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!struct_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

// Shift free indices >= cutoff by delta.
inline TermPtr shift(const TermPtr& t, int delta, uint32_t cutoff = 0) {
  if (delta == 0) return t;
  switch (t->tag) {
    case Tag::Var:
      if (t->index >= cutoff) return mk::var(uint32_t(int(t->index) + delta));
      return t;
    default: {
      bool changed = false;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (size_t i = 0; i < t->kids.size(); ++i) {
        auto k = shift(t->kids[i], delta, cutoff + binds_at(t->tag, i));
        changed = changed || k.get() != t->kids[i].get();
        kids.push_back(std::move(k));
      }
      if (!changed) return t;
      auto p = std::make_shared<Term>(*t);
      p->kids = std::move(kids);
      return p;
    }
  }
}

// Substitute `s` for index `which`, lowering the indices above it.
inline TermPtr subst(const TermPtr& t, const TermPtr& s, uint32_t which = 0) {
  switch (t->tag) {
    case Tag::Var:
      if (t->index == which) return shift(s, int(which));
      if (t->index > which) return mk::var(t->index - 1);
      return t;
    default: {
      bool changed = false;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (size_t i = 0; i < t->kids.size(); ++i) {
        auto k = subst(t->kids[i], s, which + binds_at(t->tag, i));
        changed = changed || k.get() != t->kids[i].get();
        kids.push_back(std::move(k));
      }
      if (!changed) return t;
      auto p = std::make_shared<Term>(*t);
      p->kids = std::move(kids);
      return p;
    }
  }
}

// True when every de Bruijn index is bound under `depth` enclosing binders.
inline bool indices_bound(const TermPtr& t, uint32_t depth = 0) {
  if (t->tag == Tag::Var) return t->index < depth;
  for (size_t i = 0; i < t->kids.size(); ++i)
    if (!indices_bound(t->kids[i], depth + binds_at(t->tag, i)))
      return false;
  return true;
}

// Collects axiom references appearing anywhere in the term.
inline void collect_axioms(const TermPtr& t, std::set<std::string>& out) {
  if (t->tag == Tag::AxiomRef) out.insert(t->name);
  for (auto& k : t->kids) collect_axioms(k, out);
}

// Collects referenced global constants.
inline void collect_consts(const TermPtr& t, std::set<std::string>& out) {
  if (t->tag == Tag::Const) out.insert(t->name);
  for (auto& k : t->kids) collect_consts(k, out);
}

// Classification of a normal form: numerals and boolean values for the
// ground types, Canonical for other constructor- or binder-headed forms,
// Stuck when an axiom or free variable blocks reduction.
struct Classification {
  enum class Kind : uint8_t { Numeral, BoolVal, Canonical, Stuck };
  Kind kind = Kind::Canonical;
  uint64_t numeral = 0;
  bool boolval = false;
  std::set<std::string> blockers;  // axiom names and/or free variable markers

  static Classification make_numeral(uint64_t n) {
    Classification c;
    c.kind = Kind::Numeral;
    c.numeral = n;
    return c;
  }
  static Classification make_bool(bool b) {
    Classification c;
    c.kind = Kind::BoolVal;
    c.boolval = b;
    return c;
  }
  static Classification canonical() { return {}; }
  static Classification stuck(std::set<std::string> names) {
    Classification c;
    c.kind = Kind::Stuck;
    c.blockers = std::move(names);
    return c;
  }

  bool operator==(const Classification& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Numeral: return numeral == o.numeral;
      case Kind::BoolVal: return boolval == o.boolval;
      case Kind::Canonical: return true;
      case Kind::Stuck: return blockers == o.blockers;
    }
    return false;
  }

  std::string show() const {
    switch (kind) {
      case Kind::Numeral: return "numeral " + std::to_string(numeral);
      case Kind::BoolVal: return std::string("boolval ") + (boolval ? "true" : "false");
      case Kind::Canonical: return "canonical";
      case Kind::Stuck: {
        std::string s = "stuck";
        for (auto& b : blockers) s += " " + b;
        return s;
      }
    }
    return "?";
  }
};

// If the term is a numeral S (... (S O)), returns its value.
inline std::optional<uint64_t> as_numeral(const TermPtr& t) {
  uint64_t n = 0;
  const Term* cur = t.get();
  while (cur->tag == Tag::Succ) {
    ++n;
    cur = cur->kids[0].get();
  }
  if (cur->tag == Tag::Zero) return n;
  return std::nullopt;
}

}  // namespace uvk

#endif  // UVK_TERM_HPP
