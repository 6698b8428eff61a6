// Bidirectional type checker for the core language: beta for Pi, iota for
// the seven inductives, delta for transparent constants. No definitional
// eta. Conversion is full normalization followed by structural comparison;
// universe constraints discovered along the way are committed to the
// session graph, with rollback when a comparison fails.

#ifndef UVK_KERNEL_HPP
#define UVK_KERNEL_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uvk/env.hpp"
#include "uvk/eval.hpp"
#include "uvk/parse.hpp"
#include "uvk/resolve.hpp"
#include "uvk/term.hpp"

namespace uvk {

struct TypingError : std::runtime_error {
  enum class Kind : uint8_t {
    NotAFunction,
    TypeMismatch,
    NotAType,
    UnboundIndex,
    Universe,
    CannotInferHole,
    DuplicateName,
    ReservedName,
  };
  Kind kind;
  TermPtr expected;  // normal form, when meaningful
  TermPtr actual;
  std::optional<UniverseError> universe;
  SrcLoc loc;

  TypingError(Kind k, std::string msg, SrcLoc l = {})
      : std::runtime_error(std::move(msg)), kind(k), loc(l) {}
};

// Local typing telescope; innermost binder last.
struct Context {
  std::vector<std::pair<std::string, TermPtr>> entries;

  size_t size() const { return entries.size(); }
  void push(std::string name, TermPtr ty) {
    entries.emplace_back(std::move(name), std::move(ty));
  }
  void pop() { entries.pop_back(); }

  // Type of Var(i), shifted into the current scope.
  TermPtr type_of(uint32_t i) const {
    return shift(entries[entries.size() - 1 - i].second, int(i) + 1);
  }
};

struct Inferred {
  TermPtr term;  // elaborated (pair annotations and lambda holes filled)
  TermPtr type;
};

class Checker {
 public:
  explicit Checker(GlobalEnv& env)
      : env_(env),
        conv_(env, EvalOptions{Strategy::Compute, kCheckFuel, false}) {}

  GlobalEnv& env() { return env_; }

  // Drops memoized constant values; call after opacity changes.
  void reset_cache() { conv_.reset(); }

  // -----------------------------------------------------------------------
  Inferred infer(Context& ctx, const TermPtr& t) {
    switch (t->tag) {
      case Tag::Var: {
        if (t->index >= ctx.size())
          throw TypingError(TypingError::Kind::UnboundIndex,
                            "unbound variable index", t->loc);
        return {t, ctx.type_of(t->index)};
      }
      case Tag::Universe: {
        LevelExpr up;
        if (t->level.is_concrete()) {
          up = LevelExpr::concrete(t->level.value + 1);
        } else {
          up = env_.graph().fresh();
          constrain(t->level, LevelRel::Lt, up, "universe formation", t->loc);
        }
        return {t, mk::universe(up)};
      }
      case Tag::Pi:
      case Tag::Sigma: {
        auto [dom, ds] = infer_type(ctx, t->kids[0]);
        ctx.push(t->name, dom);
        auto [cod, cs] = infer_type(ctx, t->kids[1]);
        ctx.pop();
        LevelExpr r = env_.graph().fresh();
        constrain(ds, LevelRel::Le, r, "product formation", t->loc);
        constrain(cs, LevelRel::Le, r, "product formation", t->loc);
        auto p = std::make_shared<Term>(*t);
        p->kids = {dom, cod};
        return {p, mk::universe(r)};
      }
      case Tag::Lam: {
        if (t->kids[0]->tag == Tag::Hole)
          throw TypingError(TypingError::Kind::CannotInferHole,
                            "cannot infer the domain of this function",
                            t->loc);
        auto [dom, ds] = infer_type(ctx, t->kids[0]);
        (void)ds;
        ctx.push(t->name, dom);
        Inferred body = infer(ctx, t->kids[1]);
        ctx.pop();
        auto p = std::make_shared<Term>(*t);
        p->kids = {dom, body.term};
        return {p, mk::pi(dom, body.type, t->name)};
      }
      case Tag::App: {
        Inferred f = infer(ctx, t->kids[0]);
        TermPtr fty = whnf(ctx, f.type);
        if (fty->tag != Tag::Pi) {
          TypingError err(TypingError::Kind::NotAFunction,
                          "this term is not a function; it cannot be applied",
                          t->loc);
          err.actual = fty;
          throw err;
        }
        TermPtr arg = check(ctx, t->kids[1], fty->kids[0]);
        return {mk::app(f.term, arg), subst(fty->kids[1], arg)};
      }
      case Tag::Pair: {
        if (t->kids[0]->tag == Tag::Hole)
          throw TypingError(
              TypingError::Kind::CannotInferHole,
              "cannot infer the total2 annotation of this pair", t->loc);
        auto [sig, ss] = infer_type(ctx, t->kids[0]);
        (void)ss;
        TermPtr sw = whnf(ctx, sig);
        if (sw->tag != Tag::Sigma)
          throw TypingError(TypingError::Kind::NotAType,
                            "pair annotation is not a total2 type", t->loc);
        TermPtr fst = check(ctx, t->kids[1], sw->kids[0]);
        TermPtr snd = check(ctx, t->kids[2], subst(sw->kids[1], fst));
        return {mk::pair(sig, fst, snd), sig};
      }
      case Tag::Const: {
        const GlobalDef* d = env_.find(t->name);
        if (!d)
          throw TypingError(TypingError::Kind::UnboundIndex,
                            "unknown constant " + t->name, t->loc);
        return {t, d->type};
      }
      case Tag::AxiomRef: {
        const GlobalDef* d = env_.find(t->name);
        if (!d)
          throw TypingError(TypingError::Kind::UnboundIndex,
                            "unknown axiom " + t->name, t->loc);
        return {t, d->type};
      }
      case Tag::Unit:
      case Tag::Empty:
      case Tag::Bool:
      case Tag::Nat:
        return {t, mk::universe(env_.graph().fresh())};
      case Tag::Tt:
        return {t, mk::unit()};
      case Tag::TrueC:
      case Tag::FalseC:
        return {t, mk::boolean()};
      case Tag::Zero:
        return {t, mk::nat()};
      case Tag::Succ: {
        TermPtr n = check(ctx, t->kids[0], mk::nat());
        return {mk::succ(n), mk::nat()};
      }
      case Tag::Coprod: {
        auto [l, ls] = infer_type(ctx, t->kids[0]);
        auto [r, rs] = infer_type(ctx, t->kids[1]);
        LevelExpr u = env_.graph().fresh();
        constrain(ls, LevelRel::Le, u, "coprod formation", t->loc);
        constrain(rs, LevelRel::Le, u, "coprod formation", t->loc);
        return {mk::coprod(l, r), mk::universe(u)};
      }
      case Tag::InL:
      case Tag::InR: {
        auto [l, ls] = infer_type(ctx, t->kids[0]);
        auto [r, rs] = infer_type(ctx, t->kids[1]);
        (void)ls;
        (void)rs;
        TermPtr payload =
            check(ctx, t->kids[2], t->tag == Tag::InL ? l : r);
        TermPtr out = t->tag == Tag::InL ? mk::inl(l, r, payload)
                                         : mk::inr(l, r, payload);
        return {out, mk::coprod(l, r)};
      }
      case Tag::Paths: {
        auto [ty, s] = infer_type(ctx, t->kids[0]);
        TermPtr a = check(ctx, t->kids[1], ty);
        TermPtr b = check(ctx, t->kids[2], ty);
        return {mk::paths(ty, a, b), mk::universe(s)};
      }
      case Tag::Refl: {
        auto [ty, s] = infer_type(ctx, t->kids[0]);
        (void)s;
        TermPtr a = check(ctx, t->kids[1], ty);
        return {mk::refl(ty, a), mk::paths(ty, a, a)};
      }
      case Tag::ElimUnit: {
        TermPtr s = check(ctx, t->kids[2], mk::unit());
        TermPtr mo = check_motive(ctx, t->kids[0], mk::unit());
        TermPtr m = check(ctx, t->kids[1], mk::app(mo, mk::tt()));
        return {mk::elim_unit(mo, m, s), mk::app(mo, s)};
      }
      case Tag::ElimEmpty: {
        TermPtr s = check(ctx, t->kids[1], mk::empty());
        TermPtr mo = check_motive(ctx, t->kids[0], mk::empty());
        return {mk::elim_empty(mo, s), mk::app(mo, s)};
      }
      case Tag::ElimBool: {
        TermPtr s = check(ctx, t->kids[3], mk::boolean());
        TermPtr mo = check_motive(ctx, t->kids[0], mk::boolean());
        TermPtr mt = check(ctx, t->kids[1], mk::app(mo, mk::true_c()));
        TermPtr mf = check(ctx, t->kids[2], mk::app(mo, mk::false_c()));
        return {mk::elim_bool(mo, mt, mf, s), mk::app(mo, s)};
      }
      case Tag::ElimNat: {
        TermPtr s = check(ctx, t->kids[3], mk::nat());
        TermPtr mo = check_motive(ctx, t->kids[0], mk::nat());
        TermPtr m0 = check(ctx, t->kids[1], mk::app(mo, mk::zero()));
        // forall k : nat, mo k -> mo (S k)
        TermPtr step_ty = mk::pi(
            mk::nat(),
            mk::pi(mk::app(shift(mo, 1), mk::var(0)),
                   mk::app(shift(mo, 2), mk::succ(mk::var(1))), "_"),
            "k");
        TermPtr ms = check(ctx, t->kids[2], step_ty);
        return {mk::elim_nat(mo, m0, ms, s), mk::app(mo, s)};
      }
      case Tag::ElimCoprod: {
        Inferred s = infer(ctx, t->kids[3]);
        TermPtr sty = whnf(ctx, s.type);
        if (sty->tag != Tag::Coprod)
          throw TypingError(TypingError::Kind::TypeMismatch,
                            "coprodind scrutinee is not a coprod", t->loc);
        TermPtr A = sty->kids[0], B = sty->kids[1];
        TermPtr mo = check_motive(ctx, t->kids[0], sty);
        TermPtr ml = check(
            ctx, t->kids[1],
            mk::pi(A,
                   mk::app(shift(mo, 1),
                           mk::inl(shift(A, 1), shift(B, 1), mk::var(0))),
                   "a"));
        TermPtr mr = check(
            ctx, t->kids[2],
            mk::pi(B,
                   mk::app(shift(mo, 1),
                           mk::inr(shift(A, 1), shift(B, 1), mk::var(0))),
                   "b"));
        return {mk::elim_coprod(mo, ml, mr, s.term), mk::app(mo, s.term)};
      }
      case Tag::ElimSigma: {
        Inferred s = infer(ctx, t->kids[2]);
        TermPtr sty = whnf(ctx, s.type);
        if (sty->tag != Tag::Sigma)
          throw TypingError(TypingError::Kind::TypeMismatch,
                            "total2ind scrutinee is not a total2", t->loc);
        TermPtr A = sty->kids[0], B = sty->kids[1];
        TermPtr mo = check_motive(ctx, t->kids[0], sty);
        // forall a : A, forall b : B a, mo (tpair a b)
        TermPtr m_ty = mk::pi(
            A,
            mk::pi(B,
                   mk::app(shift(mo, 2),
                           mk::pair(shift(sty, 2), mk::var(1), mk::var(0))),
                   "b"),
            "a");
        TermPtr m = check(ctx, t->kids[1], m_ty);
        return {mk::elim_sigma(mo, m, s.term), mk::app(mo, s.term)};
      }
      case Tag::ElimPaths: {
        Inferred s = infer(ctx, t->kids[2]);
        TermPtr sty = whnf(ctx, s.type);
        if (sty->tag != Tag::Paths)
          throw TypingError(TypingError::Kind::TypeMismatch,
                            "pathsind scrutinee is not a paths type", t->loc);
        TermPtr A = sty->kids[0], lhs = sty->kids[1], rhs = sty->kids[2];
        // motive : forall b : A, paths A lhs b -> UU
        LevelExpr l = env_.graph().fresh();
        TermPtr mo_ty = mk::pi(
            A,
            mk::pi(mk::paths(shift(A, 1), shift(lhs, 1), mk::var(0)),
                   mk::universe(l), "_"),
            "b");
        TermPtr mo = check(ctx, t->kids[0], mo_ty);
        TermPtr m = check(ctx, t->kids[1],
                          mk::app(mk::app(mo, lhs), mk::refl(A, lhs)));
        return {mk::elim_paths(mo, m, s.term),
                mk::app(mk::app(mo, rhs), s.term)};
      }
      case Tag::Hole:
        throw TypingError(TypingError::Kind::CannotInferHole,
                          "hole in a position where its value is not "
                          "determined by checking",
                          t->loc);
      case Tag::Ident:
        throw TypingError(TypingError::Kind::UnboundIndex,
                          "unresolved identifier " + t->name, t->loc);
    }
    throw std::logic_error("unhandled tag in infer");
  }

  // Checks t against `expected` (well-formed in ctx); returns the
  // elaborated term. Lambda domains and pair annotations written as `_`
  // are filled in from the expected type.
  TermPtr check(Context& ctx, const TermPtr& t, const TermPtr& expected) {
    if (t->tag == Tag::Lam) {
      TermPtr ew = whnf(ctx, expected);
      if (ew->tag == Tag::Pi) {
        TermPtr dom = ew->kids[0];
        if (t->kids[0]->tag != Tag::Hole) {
          auto [d, ds] = infer_type(ctx, t->kids[0]);
          (void)ds;
          require_convertible(ctx, d, dom, t->loc);
          dom = d;
        }
        ctx.push(t->name, dom);
        TermPtr body = check(ctx, t->kids[1], ew->kids[1]);
        ctx.pop();
        return mk::lam(dom, body, t->name);
      }
    }
    if (t->tag == Tag::Pair) {
      TermPtr ew = whnf(ctx, expected);
      if (ew->tag == Tag::Sigma) {
        TermPtr sig = t->kids[0];
        if (sig->tag == Tag::Hole) {
          sig = ew;
        } else {
          auto [sg, ss] = infer_type(ctx, sig);
          (void)ss;
          require_convertible(ctx, sg, ew, t->loc);
          sig = sg;
        }
        TermPtr sw = whnf(ctx, sig);
        TermPtr fst = check(ctx, t->kids[1], sw->kids[0]);
        TermPtr snd = check(ctx, t->kids[2], subst(sw->kids[1], fst));
        return mk::pair(sig, fst, snd);
      }
    }
    Inferred got = infer(ctx, t);
    try {
      subsume(ctx, got.type, expected, t->loc);
    } catch (TypingError& e) {
      if (e.kind == TypingError::Kind::TypeMismatch)
        throw TypingError(e.kind,
                          std::string(e.what()) + " | while checking " +
                              clip(t),
                          e.loc);
      throw;
    }
    return got.term;
  }

  // Conversion: beta, iota, delta; no eta. True iff the normal forms are
  // structurally equal, identifying universe levels where required.
  bool convertible(Context& ctx, const TermPtr& a, const TermPtr& b) {
    if (compare(a, b, false)) return true;  // syntactic fast path
    TermPtr na = normalize_open(ctx, a);
    TermPtr nb = normalize_open(ctx, b);
    auto m = env_.graph().mark();
    if (compare(na, nb, true)) return true;
    env_.graph().rollback(m);
    return false;
  }

  // Weak head normal form on terms: unfold transparent constants, beta,
  // one iota step at a time. Used for type analysis and exposed for the
  // reduction tests.
  TermPtr whnf(Context& ctx, const TermPtr& t) {
    (void)ctx;
    TermPtr cur = t;
    for (uint64_t guard = 0; guard < kCheckFuel; ++guard) {
      switch (cur->tag) {
        case Tag::App: {
          TermPtr f = whnf(ctx, cur->kids[0]);
          if (f->tag == Tag::Lam) {
            cur = subst(f->kids[1], cur->kids[1]);
            continue;
          }
          if (f.get() != cur->kids[0].get())
            cur = mk::app(f, cur->kids[1]);
          return cur;
        }
        case Tag::Const: {
          const GlobalDef* d = env_.find(cur->name);
          if (d && d->body && !d->opaque) {
            cur = d->body;
            continue;
          }
          return cur;
        }
        case Tag::ElimUnit:
        case Tag::ElimEmpty:
        case Tag::ElimBool:
        case Tag::ElimNat:
        case Tag::ElimCoprod:
        case Tag::ElimSigma:
        case Tag::ElimPaths: {
          size_t scrut_at = cur->kids.size() - 1;
          TermPtr s = whnf(ctx, cur->kids[scrut_at]);
          auto stepped = iota_step(cur, s);
          if (stepped) {
            cur = *stepped;
            continue;
          }
          if (s.get() != cur->kids[scrut_at].get()) {
            auto p = std::make_shared<Term>(*cur);
            p->kids[scrut_at] = s;
            return p;
          }
          return cur;
        }
        default:
          return cur;
      }
    }
    throw FuelExhausted(kCheckFuel);
  }

  // Registers a resolved Definition or Postulate command.
  void register_command(const Command& cmd) {
    if (env_.contains(cmd.name))
      throw TypingError(TypingError::Kind::DuplicateName,
                        "duplicate name " + cmd.name, cmd.loc);
    if (is_reserved_name(cmd.name))
      throw TypingError(TypingError::Kind::ReservedName,
                        cmd.name + " is a reserved name", cmd.loc);
    auto m = env_.graph().mark();
    try {
      Context ctx;
      GlobalDef def;
      def.name = cmd.name;
      if (cmd.kind == Command::Kind::Postulate) {
        auto [ty, s] = infer_type(ctx, cmd.type);
        (void)s;
        def.type = ty;
      } else {
        if (cmd.type) {
          auto [ty, s] = infer_type(ctx, cmd.type);
          (void)s;
          def.type = ty;
          def.body = check(ctx, cmd.body, ty);
        } else {
          Inferred got = infer(ctx, cmd.body);
          def.type = got.type;
          def.body = got.term;
        }
      }
      env_.insert(std::move(def));
    } catch (...) {
      env_.graph().rollback(m);
      throw;
    }
  }

  // Normalization of open terms through the shared evaluator (contexts are
  // interpreted as neutral variables).
  TermPtr normalize_open(Context& ctx, const TermPtr& t) {
    EnvPtr e;
    for (uint32_t lvl = 0; lvl < ctx.size(); ++lvl)
      e = env_extend(e, Thunk::of_value(vmk::neutral_var(lvl)));
    ValuePtr v = conv_.eval(e, t);
    return conv_.quote(v, uint32_t(ctx.size()));
  }

 private:
  static constexpr uint64_t kCheckFuel = 2'000'000'000;

  GlobalEnv& env_;
  Evaluator conv_;

  void constrain(LevelExpr a, LevelRel rel, LevelExpr b, const char* why,
                 SrcLoc loc) {
    auto err = env_.graph().add_constraint(
        a, rel, b, std::string(why) + " at " + loc.show());
    if (err) {
      TypingError te(TypingError::Kind::Universe, err->show(), loc);
      te.universe = std::move(err);
      throw te;
    }
  }

  // Infers and demands a type; returns the elaborated term and its sort.
  std::pair<TermPtr, LevelExpr> infer_type(Context& ctx, const TermPtr& t) {
    Inferred got = infer(ctx, t);
    TermPtr s = whnf(ctx, got.type);
    if (s->tag != Tag::Universe) {
      TypingError err(TypingError::Kind::NotAType,
                      "a type was expected here", t->loc);
      err.actual = s;
      throw err;
    }
    return {got.term, s->level};
  }

  // Motives have type `scrutinee type -> UU`; a fresh unconstrained level
  // absorbs whatever universe the motive lands in.
  TermPtr check_motive(Context& ctx, const TermPtr& mo, TermPtr scrut_ty) {
    LevelExpr l = env_.graph().fresh();
    return check(ctx, mo,
                 mk::pi(std::move(scrut_ty), mk::universe(l), "_"));
  }

  static std::string clip(const TermPtr& t) {
    std::string s = pretty(t);
    if (s.size() > 400) s = s.substr(0, 400) + "...";
    return s;
  }

  // Locates the first structural difference for diagnostics.
  static bool first_diff(const TermPtr& a, const TermPtr& b,
                         std::string& where, TermPtr& da, TermPtr& db) {
    if (a->tag != b->tag || (a->tag == Tag::Var && a->index != b->index) ||
        (a->tag == Tag::Universe && !(a->level == b->level)) ||
        ((a->tag == Tag::Const || a->tag == Tag::AxiomRef) &&
         a->name != b->name) ||
        a->kids.size() != b->kids.size()) {
      da = a;
      db = b;
      return true;
    }
    for (size_t i = 0; i < a->kids.size(); ++i) {
      std::string sub = where + "." + std::to_string(i);
      std::string saved = where;
      where = sub;
      if (first_diff(a->kids[i], b->kids[i], where, da, db)) return true;
      where = saved;
    }
    return false;
  }

  static std::string diff_message(const TermPtr& a, const TermPtr& b) {
    std::string where;
    TermPtr da, db;
    if (first_diff(a, b, where, da, db))
      return " | first difference at " + (where.empty() ? "root" : where) +
             ": got " + clip(da) + "  ||  expected " + clip(db);
    return " | (no structural difference found; universe levels differ)";
  }

  void require_convertible(Context& ctx, const TermPtr& a, const TermPtr& b,
                           SrcLoc loc) {
    if (!convertible(ctx, a, b)) {
      TypingError err(TypingError::Kind::TypeMismatch, "type mismatch", loc);
      err.actual = normalize_open(ctx, a);
      err.expected = normalize_open(ctx, b);
      throw TypingError(TypingError::Kind::TypeMismatch,
                        "type mismatch at " + loc.show() +
                            diff_message(err.actual, err.expected),
                        loc);
    }
  }

  // Subtyping happens only at universe comparison sites: when both sides
  // are universes the levels are related by <=; everywhere else conversion
  // demands equality.
  void subsume(Context& ctx, const TermPtr& actual, const TermPtr& expected,
               SrcLoc loc) {
    if (compare(actual, expected, false)) return;  // syntactic fast path
    TermPtr na = normalize_open(ctx, actual);
    TermPtr ne = normalize_open(ctx, expected);
    if (na->tag == Tag::Universe && ne->tag == Tag::Universe) {
      if (na->level.is_concrete() && ne->level.is_concrete()) {
        if (na->level.value <= ne->level.value) return;
        TypingError err(TypingError::Kind::TypeMismatch,
                        "universe level too large", loc);
        err.actual = na;
        err.expected = ne;
        throw err;
      }
      constrain(na->level, LevelRel::Le, ne->level, "cumulativity", loc);
      return;
    }
    auto m = env_.graph().mark();
    if (compare(na, ne, true)) return;
    env_.graph().rollback(m);
    TypingError err(TypingError::Kind::TypeMismatch,
                    "type mismatch at " + loc.show() + diff_message(na, ne),
                    loc);
    err.actual = na;
    err.expected = ne;
    throw err;
  }

  // Structural comparison of normal forms. Universe levels are identified
  // by emitting equality constraints when `commit` is set; failure of the
  // constraints means the terms are not convertible in this session.
  bool compare(const TermPtr& a, const TermPtr& b, bool commit) {
    if (a.get() == b.get()) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case Tag::Var:
        return a->index == b->index;
      case Tag::Universe: {
        if (a->level == b->level) return true;
        if (a->level.is_concrete() && b->level.is_concrete()) return false;
        if (!commit) return false;
        auto e1 = env_.graph().add_constraint(a->level, LevelRel::Le,
                                              b->level, "conversion");
        if (e1) return false;
        auto e2 = env_.graph().add_constraint(b->level, LevelRel::Le,
                                              a->level, "conversion");
        return !e2;
      }
      case Tag::Const:
      case Tag::AxiomRef:
        if (a->name != b->name) return false;
        break;
      default:
        break;
    }
    if (a->kids.size() != b->kids.size()) return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
      if (!compare(a->kids[i], b->kids[i], commit)) return false;
    return true;
  }

  // One iota step of an eliminator whose scrutinee is already in whnf.
  std::optional<TermPtr> iota_step(const TermPtr& e, const TermPtr& s) {
    switch (e->tag) {
      case Tag::ElimUnit:
        if (s->tag == Tag::Tt) return e->kids[1];
        return std::nullopt;
      case Tag::ElimBool:
        if (s->tag == Tag::TrueC) return e->kids[1];
        if (s->tag == Tag::FalseC) return e->kids[2];
        return std::nullopt;
      case Tag::ElimNat:
        if (s->tag == Tag::Zero) return e->kids[1];
        if (s->tag == Tag::Succ) {
          TermPtr pred = s->kids[0];
          TermPtr rec =
              mk::elim_nat(e->kids[0], e->kids[1], e->kids[2], pred);
          return mk::app(mk::app(e->kids[2], pred), rec);
        }
        return std::nullopt;
      case Tag::ElimCoprod:
        if (s->tag == Tag::InL) return mk::app(e->kids[1], s->kids[2]);
        if (s->tag == Tag::InR) return mk::app(e->kids[2], s->kids[2]);
        return std::nullopt;
      case Tag::ElimSigma:
        if (s->tag == Tag::Pair)
          return mk::app(mk::app(e->kids[1], s->kids[1]), s->kids[2]);
        return std::nullopt;
      case Tag::ElimPaths:
        if (s->tag == Tag::Refl) return e->kids[1];
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }
};

}  // namespace uvk

#endif  // UVK_KERNEL_HPP
