// Name resolution: binds surface identifiers to de Bruijn indices, global
// constants, postulates, or primitive heads. Primitive identifiers (nat,
// total2, the eliminators, ...) are reserved words of the language; they
// resolve to the corresponding core nodes, fully applied where possible and
// eta-expanded when used as bare function values.

#ifndef UVK_RESOLVE_HPP
#define UVK_RESOLVE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "uvk/env.hpp"
#include "uvk/parse.hpp"
#include "uvk/term.hpp"

namespace uvk {

struct ResolveError : std::runtime_error {
  std::string name;
  SrcLoc loc;
  ResolveError(const std::string& n, SrcLoc l, const std::string& msg)
      : std::runtime_error("at " + l.show() + ": " + msg), name(n), loc(l) {}
};

inline bool is_reserved_name(const std::string& n) {
  static const char* words[] = {
      "nat", "bool", "unit", "empty", "coprod", "paths", "total2", "tpair",
      "inl", "inr", "idpath", "O", "S", "tt", "true", "false", "natind",
      "boolind", "unitind", "emptyind", "coprodind", "total2ind", "pathsind",
      "fun", "forall", "in", "as", "UU"};
  for (auto* w : words)
    if (n == w) return true;
  if (n.size() > 2 && n.rfind("UU", 0) == 0) {
    bool digits = true;
    for (size_t i = 2; i < n.size(); ++i) digits = digits && isdigit(n[i]);
    if (digits) return true;
  }
  return false;
}

class Resolver {
 public:
  explicit Resolver(GlobalEnv& env) : env_(env) {}

  TermPtr term(const TermPtr& t) {
    scope_.clear();
    return go(t);
  }

  Command command(const Command& c) {
    Command out = c;
    scope_.clear();
    if (out.type) out.type = go(out.type);
    scope_.clear();
    if (out.body) out.body = go(out.body);
    return out;
  }

 private:
  GlobalEnv& env_;
  std::vector<std::string> scope_;

  TermPtr go(const TermPtr& t) {
    switch (t->tag) {
      case Tag::Ident:
        return resolve_spine(t, {});
      case Tag::App: {
        // collect the application spine so primitive heads can be built
        std::vector<TermPtr> args;
        TermPtr cur = t;
        while (cur->tag == Tag::App) {
          args.push_back(cur->kids[1]);
          cur = cur->kids[0];
        }
        std::reverse(args.begin(), args.end());
        return resolve_spine(cur, args);
      }
      case Tag::Lam:
      case Tag::Pi:
      case Tag::Sigma: {
        auto dom = go(t->kids[0]);
        scope_.push_back(t->name);
        auto body = go(t->kids[1]);
        scope_.pop_back();
        auto p = std::make_shared<Term>(*t);
        p->kids = {dom, body};
        return p;
      }
      default: {
        if (t->kids.empty()) return t;
        bool changed = false;
        std::vector<TermPtr> kids;
        kids.reserve(t->kids.size());
        for (size_t i = 0; i < t->kids.size(); ++i) {
          // no parser form binds variables except Lam/Pi handled above
          auto k = go(t->kids[i]);
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

  TermPtr resolve_spine(const TermPtr& head, std::vector<TermPtr> raw_args) {
    TermPtr resolved_head;
    if (head->tag == Tag::Ident) {
      const std::string& n = head->name;
      // bound variables shadow globals; primitives are reserved names
      for (size_t i = scope_.size(); i-- > 0;) {
        if (scope_[i] == n) {
          resolved_head = mk::var(uint32_t(scope_.size() - 1 - i));
          break;
        }
      }
      if (!resolved_head && is_reserved_name(n))
        return builtin(head, std::move(raw_args));
      if (!resolved_head) {
        if (const GlobalDef* d = env_.find(n)) {
          resolved_head =
              d->is_postulate() ? mk::axiom(n) : mk::constant(n);
        } else {
          throw ResolveError(n, head->loc, "unknown identifier '" + n + "'");
        }
      }
    } else {
      resolved_head = go(head);
    }
    for (auto& a : raw_args) resolved_head = mk::app(resolved_head, go(a));
    return resolved_head;
  }

  TermPtr builtin(const TermPtr& head, std::vector<TermPtr> raw) {
    const std::string& n = head->name;
    SrcLoc loc = head->loc;
    auto arg = [&](size_t i) { return go(raw[i]); };
    auto fold_rest = [&](TermPtr node, size_t from) {
      for (size_t i = from; i < raw.size(); ++i)
        node = mk::app(node, go(raw[i]));
      return node;
    };
    auto need = [&](size_t k) {
      if (raw.size() < k)
        throw ResolveError(
            n, loc,
            "'" + n + "' expects " + std::to_string(k) + " arguments");
    };

    if (n == "UU") {
      if (!raw.empty()) throw ResolveError(n, loc, "a universe is not a function");
      return mk::universe(env_.graph().fresh());
    }
    if (n.size() > 2 && n.rfind("UU", 0) == 0) {
      uint32_t lvl = 0;
      for (size_t i = 2; i < n.size(); ++i) lvl = lvl * 10 + uint32_t(n[i] - '0');
      if (lvl > 9) throw ResolveError(n, loc, "universe levels range over UU0..UU9");
      if (!raw.empty()) throw ResolveError(n, loc, "a universe is not a function");
      return mk::universe(LevelExpr::concrete(lvl));
    }

    // 0-ary forms
    if (n == "nat" || n == "bool" || n == "unit" || n == "empty" ||
        n == "O" || n == "tt" || n == "true" || n == "false") {
      TermPtr node = n == "nat"    ? mk::nat()
                     : n == "bool" ? mk::boolean()
                     : n == "unit" ? mk::unit()
                     : n == "empty" ? mk::empty()
                     : n == "O"    ? mk::zero()
                     : n == "tt"   ? mk::tt()
                     : n == "true" ? mk::true_c()
                                   : mk::false_c();
      return fold_rest(node, 0);
    }
    if (n == "S") {
      if (raw.empty()) {
        // bare successor used as a function
        return mk::lam(mk::nat(), mk::succ(mk::var(0)), "n");
      }
      return fold_rest(mk::succ(arg(0)), 1);
    }
    if (n == "coprod") {
      if (raw.empty()) {
        auto u1 = mk::universe(env_.graph().fresh());
        auto u2 = mk::universe(env_.graph().fresh());
        return mk::lam(u1,
                       mk::lam(u2, mk::coprod(mk::var(1), mk::var(0)), "B"),
                       "A");
      }
      need(2);
      return fold_rest(mk::coprod(arg(0), arg(1)), 2);
    }
    if (n == "inl" || n == "inr") {
      bool left = n == "inl";
      if (raw.empty()) {
        auto u1 = mk::universe(env_.graph().fresh());
        auto u2 = mk::universe(env_.graph().fresh());
        TermPtr payload = left
            ? mk::inl(mk::var(2), mk::var(1), mk::var(0))
            : mk::inr(mk::var(2), mk::var(1), mk::var(0));
        return mk::lam(
            u1, mk::lam(u2, mk::lam(mk::var(left ? 1 : 0), payload, "x"), "B"),
            "A");
      }
      need(3);
      TermPtr node = left ? mk::inl(arg(0), arg(1), arg(2))
                          : mk::inr(arg(0), arg(1), arg(2));
      return fold_rest(node, 3);
    }
    if (n == "paths") {
      if (raw.empty()) {
        auto u = mk::universe(env_.graph().fresh());
        return mk::lam(
            u,
            mk::lam(mk::var(0),
                    mk::lam(mk::var(1),
                            mk::paths(mk::var(2), mk::var(1), mk::var(0)),
                            "b"),
                    "a"),
            "T");
      }
      need(3);
      return fold_rest(mk::paths(arg(0), arg(1), arg(2)), 3);
    }
    if (n == "idpath") {
      if (raw.empty()) {
        auto u = mk::universe(env_.graph().fresh());
        return mk::lam(
            u, mk::lam(mk::var(0), mk::refl(mk::var(1), mk::var(0)), "t"),
            "T");
      }
      need(2);
      return fold_rest(mk::refl(arg(0), arg(1)), 2);
    }
    if (n == "total2") {
      if (raw.size() == 1) {
        TermPtr fam = arg(0);
        if (fam->tag != Tag::Lam)
          throw ResolveError(
              n, loc, "single-argument total2 needs a literal fun");
        return mk::sigma(fam->kids[0], fam->kids[1], fam->name);
      }
      need(2);
      TermPtr dom = arg(0);
      TermPtr fam = arg(1);
      TermPtr node;
      if (fam->tag == Tag::Lam && struct_eq(fam->kids[0], dom))
        node = mk::sigma(dom, fam->kids[1], fam->name);
      else
        node = mk::sigma(dom, mk::app(shift(fam, 1), mk::var(0)));
      return fold_rest(node, 2);
    }
    if (n == "tpair") {
      if (raw.empty()) {
        auto u1 = mk::universe(env_.graph().fresh());
        auto u2 = mk::universe(env_.graph().fresh());
        // fun (T : UU) (P : T -> UU) (a : T) (b : P a) => tpair ...
        return mk::lam(
            u1,
            mk::lam(
                mk::pi(mk::var(0), shift(u2, 1), "_"),
                mk::lam(mk::var(1),
                        mk::lam(mk::app(mk::var(1), mk::var(0)),
                                mk::pair(mk::sigma(mk::var(3),
                                                   mk::app(mk::var(3),
                                                           mk::var(0))),
                                         mk::var(1), mk::var(0)),
                                "b"),
                        "a"),
                "P"),
            "T");
      }
      need(3);
      return fold_rest(mk::pair(arg(0), arg(1), arg(2)), 3);
    }

    // eliminators: must be applied to at least their node arity
    auto elim = [&](size_t arity, auto build) {
      if (raw.size() < arity)
        throw ResolveError(n, loc, "'" + n + "' expects " +
                                       std::to_string(arity) + " arguments");
      return fold_rest(build(), arity);
    };
    if (n == "unitind")
      return elim(3, [&] { return mk::elim_unit(arg(0), arg(1), arg(2)); });
    if (n == "emptyind")
      return elim(2, [&] { return mk::elim_empty(arg(0), arg(1)); });
    if (n == "boolind")
      return elim(4, [&] {
        return mk::elim_bool(arg(0), arg(1), arg(2), arg(3));
      });
    if (n == "natind")
      return elim(4, [&] {
        return mk::elim_nat(arg(0), arg(1), arg(2), arg(3));
      });
    if (n == "coprodind")
      return elim(4, [&] {
        return mk::elim_coprod(arg(0), arg(1), arg(2), arg(3));
      });
    if (n == "total2ind")
      return elim(3, [&] { return mk::elim_sigma(arg(0), arg(1), arg(2)); });
    if (n == "pathsind")
      return elim(3, [&] { return mk::elim_paths(arg(0), arg(1), arg(2)); });

    throw ResolveError(n, loc, "reserved word '" + n + "' cannot be used here");
  }
};

inline TermPtr resolve_term(const TermPtr& t, GlobalEnv& env) {
  return Resolver(env).term(t);
}

inline Command resolve_command(const Command& c, GlobalEnv& env) {
  return Resolver(env).command(c);
}

}  // namespace uvk

#endif  // UVK_RESOLVE_HPP
