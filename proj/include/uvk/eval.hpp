// Normalization by evaluation. Terms are interpreted into a semantic value
// domain (closures for binders, explicit neutrals for blocked reductions)
// and read back as beta-iota-normal terms. Two strategies share the same
// machinery: `compute` forces every argument before applying, `lazy` delays
// arguments in memoized thunks forced at most once. Both produce the same
// normal form; only the work schedule differs.

#ifndef UVK_EVAL_HPP
#define UVK_EVAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "uvk/env.hpp"
#include "uvk/parse.hpp"
#include "uvk/term.hpp"

namespace uvk {

struct FuelExhausted : std::runtime_error {
  uint64_t budget;
  explicit FuelExhausted(uint64_t b)
      : std::runtime_error("evaluation fuel exhausted (budget " +
                           std::to_string(b) + ")"),
        budget(b) {}
};

struct EvalOptions {
  Strategy strategy = Strategy::Compute;
  uint64_t fuel = 10'000'000;
  bool transparent_all = false;
};

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

class Thunk;
using ThunkPtr = std::shared_ptr<Thunk>;

struct EnvNode;
using EnvPtr = std::shared_ptr<const EnvNode>;

struct EnvNode {
  ThunkPtr head;
  EnvPtr tail;
  size_t size = 0;
};

inline EnvPtr env_extend(const EnvPtr& e, ThunkPtr th) {
  auto n = std::make_shared<EnvNode>();
  n->head = std::move(th);
  n->tail = e;
  n->size = (e ? e->size : 0) + 1;
  return n;
}

inline const ThunkPtr& env_lookup(const EnvPtr& e, uint32_t index) {
  const EnvNode* cur = e.get();
  for (uint32_t i = 0; i < index; ++i) cur = cur->tail.get();
  return cur->head;
}

struct Closure {
  EnvPtr env;
  TermPtr body;
};

enum class VTag : uint8_t {
  Universe, Pi, Lam, Sigma, Pair,
  UnitT, Tt, EmptyT, BoolT, True, False, NatT, Zero, Succ,
  CoprodT, InL, InR, PathsT, Refl,
  Neutral,
};

struct NFrame {
  enum class Kind : uint8_t {
    App, ElimUnit, ElimEmpty, ElimBool, ElimNat, ElimCoprod, ElimSigma,
    ElimPaths,
  };
  Kind kind;
  std::vector<ThunkPtr> args;  // App: the argument; elims: motive + methods
};

struct Neutral {
  enum class Head : uint8_t { Var, Axiom, Const };
  Head head = Head::Var;
  uint32_t var_level = 0;  // de Bruijn level for Var heads
  std::string name;        // Axiom/Const heads
  std::vector<NFrame> spine;
};

struct Value {
  VTag tag;
  LevelExpr level;              // Universe
  ValuePtr type1, type2, type3; // type annotations (domains, paths params...)
  Closure closure;              // Pi/Lam/Sigma body
  std::string hint;             // binder hint
  ThunkPtr field1, field2;      // constructor payloads / pair components
  Neutral neutral;

  explicit Value(VTag t) : tag(t) {}
};

namespace vmk {
inline ValuePtr make(VTag t) { return std::make_shared<Value>(t); }
inline ValuePtr universe(LevelExpr l) {
  auto v = std::make_shared<Value>(VTag::Universe);
  v->level = l;
  return v;
}
inline ValuePtr neutral_var(uint32_t level) {
  auto v = std::make_shared<Value>(VTag::Neutral);
  v->neutral.head = Neutral::Head::Var;
  v->neutral.var_level = level;
  return v;
}
inline ValuePtr neutral_axiom(std::string name) {
  auto v = std::make_shared<Value>(VTag::Neutral);
  v->neutral.head = Neutral::Head::Axiom;
  v->neutral.name = std::move(name);
  return v;
}
inline ValuePtr neutral_const(std::string name) {
  auto v = std::make_shared<Value>(VTag::Neutral);
  v->neutral.head = Neutral::Head::Const;
  v->neutral.name = std::move(name);
  return v;
}
}  // namespace vmk

// A thunk is either a suspended (env, term) pair, a suspended native
// computation, or an already computed value. Forcing memoizes.
class Thunk {
 public:
  static ThunkPtr of_value(ValuePtr v) {
    auto t = std::make_shared<Thunk>();
    t->cell_ = std::move(v);
    return t;
  }
  static ThunkPtr suspend(EnvPtr e, TermPtr t) {
    auto th = std::make_shared<Thunk>();
    th->cell_ = Susp{std::move(e), std::move(t)};
    return th;
  }
  static ThunkPtr suspend_native(std::function<ValuePtr()> f) {
    auto th = std::make_shared<Thunk>();
    th->cell_ = std::move(f);
    return th;
  }

  bool forced() const { return std::holds_alternative<ValuePtr>(cell_); }

  template <class Eval>
  const ValuePtr& force(Eval&& ev) {
    if (auto* v = std::get_if<ValuePtr>(&cell_)) return *v;
    if (auto* s = std::get_if<Susp>(&cell_)) {
      ValuePtr v = ev(s->env, s->term);
      cell_ = std::move(v);
    } else {
      auto f = std::get<std::function<ValuePtr()>>(cell_);
      cell_ = f();
    }
    return std::get<ValuePtr>(cell_);
  }

 private:
  struct Susp {
    EnvPtr env;
    TermPtr term;
  };
  std::variant<Susp, std::function<ValuePtr()>, ValuePtr> cell_;
};

class Evaluator {
 public:
  Evaluator(const GlobalEnv& genv, EvalOptions opt)
      : genv_(genv), opt_(opt) {}

  uint64_t steps() const { return steps_; }
  const EvalOptions& options() const { return opt_; }

  // Drops memoized constant values and the step count.
  void reset() {
    const_memo_.clear();
    steps_ = 0;
  }

  ValuePtr eval(const EnvPtr& env, const TermPtr& t) {
    switch (t->tag) {
      case Tag::Var:
        return force(env_lookup(env, t->index));
      case Tag::Universe:
        return vmk::universe(t->level);
      case Tag::Pi:
      case Tag::Sigma: {
        auto v = vmk::make(t->tag == Tag::Pi ? VTag::Pi : VTag::Sigma);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->closure = {env, t->kids[1]};
        m->hint = t->name;
        return v;
      }
      case Tag::Lam: {
        auto v = vmk::make(VTag::Lam);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->closure = {env, t->kids[1]};
        m->hint = t->name;
        return v;
      }
      case Tag::App: {
        ValuePtr f = eval(env, t->kids[0]);
        return apply(f, delay(env, t->kids[1]));
      }
      case Tag::Pair: {
        auto v = vmk::make(VTag::Pair);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->field1 = delay(env, t->kids[1]);
        m->field2 = delay(env, t->kids[2]);
        return v;
      }
      case Tag::Const: {
        const GlobalDef* d = genv_.find(t->name);
        if (!d) throw std::logic_error("unknown constant " + t->name);
        if (d->is_postulate()) return vmk::neutral_axiom(t->name);
        if (d->opaque && !opt_.transparent_all)
          return vmk::neutral_const(t->name);
        auto it = const_memo_.find(t->name);
        if (it != const_memo_.end()) return it->second;
        tick();  // delta step
        ValuePtr v = eval(nullptr, d->body);
        const_memo_.emplace(t->name, v);
        return v;
      }
      case Tag::AxiomRef:
        return vmk::neutral_axiom(t->name);
      case Tag::Unit: return vmk::make(VTag::UnitT);
      case Tag::Tt: return vmk::make(VTag::Tt);
      case Tag::Empty: return vmk::make(VTag::EmptyT);
      case Tag::Bool: return vmk::make(VTag::BoolT);
      case Tag::TrueC: return vmk::make(VTag::True);
      case Tag::FalseC: return vmk::make(VTag::False);
      case Tag::Nat: return vmk::make(VTag::NatT);
      case Tag::Zero: return vmk::make(VTag::Zero);
      case Tag::Succ: {
        auto v = vmk::make(VTag::Succ);
        std::const_pointer_cast<Value>(v)->field1 = delay(env, t->kids[0]);
        return v;
      }
      case Tag::Coprod: {
        auto v = vmk::make(VTag::CoprodT);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->type2 = eval(env, t->kids[1]);
        return v;
      }
      case Tag::InL:
      case Tag::InR: {
        auto v = vmk::make(t->tag == Tag::InL ? VTag::InL : VTag::InR);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->type2 = eval(env, t->kids[1]);
        m->field1 = delay(env, t->kids[2]);
        return v;
      }
      case Tag::Paths: {
        auto v = vmk::make(VTag::PathsT);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->field1 = delay(env, t->kids[1]);
        m->field2 = delay(env, t->kids[2]);
        return v;
      }
      case Tag::Refl: {
        auto v = vmk::make(VTag::Refl);
        auto m = std::const_pointer_cast<Value>(v);
        m->type1 = eval(env, t->kids[0]);
        m->field1 = delay(env, t->kids[1]);
        return v;
      }
      case Tag::ElimUnit:
        return elim(NFrame::Kind::ElimUnit, env,
                    {t->kids[0], t->kids[1]}, t->kids[2]);
      case Tag::ElimEmpty:
        return elim(NFrame::Kind::ElimEmpty, env, {t->kids[0]}, t->kids[1]);
      case Tag::ElimBool:
        return elim(NFrame::Kind::ElimBool, env,
                    {t->kids[0], t->kids[1], t->kids[2]}, t->kids[3]);
      case Tag::ElimNat:
        return elim(NFrame::Kind::ElimNat, env,
                    {t->kids[0], t->kids[1], t->kids[2]}, t->kids[3]);
      case Tag::ElimCoprod:
        return elim(NFrame::Kind::ElimCoprod, env,
                    {t->kids[0], t->kids[1], t->kids[2]}, t->kids[3]);
      case Tag::ElimSigma:
        return elim(NFrame::Kind::ElimSigma, env,
                    {t->kids[0], t->kids[1]}, t->kids[2]);
      case Tag::ElimPaths:
        return elim(NFrame::Kind::ElimPaths, env,
                    {t->kids[0], t->kids[1]}, t->kids[2]);
      case Tag::Ident:
        throw std::logic_error("unresolved identifier reached evaluator");
      case Tag::Hole:
        throw std::logic_error("hole reached evaluator");
    }
    throw std::logic_error("unhandled term tag");
  }

  ValuePtr apply(const ValuePtr& f, ThunkPtr arg) {
    if (f->tag == VTag::Lam) {
      tick();
      return eval(env_extend(f->closure.env, std::move(arg)),
                  f->closure.body);
    }
    if (f->tag == VTag::Neutral) {
      auto v = std::make_shared<Value>(*f);
      v->neutral.spine.push_back({NFrame::Kind::App, {std::move(arg)}});
      return v;
    }
    throw std::logic_error("application of a non-function value");
  }

  const ValuePtr& force(const ThunkPtr& th) {
    return th->force([this](const EnvPtr& e, const TermPtr& t) {
      return eval(e, t);
    });
  }

  ThunkPtr delay(const EnvPtr& env, const TermPtr& t) {
    if (opt_.strategy == Strategy::Compute)
      return Thunk::of_value(eval(env, t));
    return Thunk::suspend(env, t);
  }

  // Instantiate a closure with a value.
  ValuePtr instantiate(const Closure& c, ValuePtr v) {
    return eval(env_extend(c.env, Thunk::of_value(std::move(v))), c.body);
  }

  // ---------------------------------------------------------------------
  // Read-back: converts values to beta-iota-normal terms. `depth` is the
  // number of enclosing binders (free neutrals use levels below it).
  TermPtr quote(const ValuePtr& v, uint32_t depth) {
    switch (v->tag) {
      case VTag::Universe:
        return mk::universe(v->level);
      case VTag::Pi:
      case VTag::Sigma:
      case VTag::Lam: {
        TermPtr dom = quote(v->type1, depth);
        ValuePtr fresh = vmk::neutral_var(depth);
        TermPtr body =
            quote(instantiate(v->closure, std::move(fresh)), depth + 1);
        if (v->tag == VTag::Pi) return mk::pi(dom, body, v->hint);
        if (v->tag == VTag::Sigma) return mk::sigma(dom, body, v->hint);
        return mk::lam(dom, body, v->hint);
      }
      case VTag::Pair:
        return mk::pair(quote(v->type1, depth), quote_force(v->field1, depth),
                        quote_force(v->field2, depth));
      case VTag::UnitT: return mk::unit();
      case VTag::Tt: return mk::tt();
      case VTag::EmptyT: return mk::empty();
      case VTag::BoolT: return mk::boolean();
      case VTag::True: return mk::true_c();
      case VTag::False: return mk::false_c();
      case VTag::NatT: return mk::nat();
      case VTag::Zero: return mk::zero();
      case VTag::Succ:
        return mk::succ(quote_force(v->field1, depth));
      case VTag::CoprodT:
        return mk::coprod(quote(v->type1, depth), quote(v->type2, depth));
      case VTag::InL:
        return mk::inl(quote(v->type1, depth), quote(v->type2, depth),
                       quote_force(v->field1, depth));
      case VTag::InR:
        return mk::inr(quote(v->type1, depth), quote(v->type2, depth),
                       quote_force(v->field1, depth));
      case VTag::PathsT:
        return mk::paths(quote(v->type1, depth), quote_force(v->field1, depth),
                         quote_force(v->field2, depth));
      case VTag::Refl:
        return mk::refl(quote(v->type1, depth),
                        quote_force(v->field1, depth));
      case VTag::Neutral: {
        TermPtr acc;
        switch (v->neutral.head) {
          case Neutral::Head::Var:
            acc = mk::var(depth - 1 - v->neutral.var_level);
            break;
          case Neutral::Head::Axiom:
            acc = mk::axiom(v->neutral.name);
            break;
          case Neutral::Head::Const:
            acc = mk::constant(v->neutral.name);
            break;
        }
        for (auto& fr : v->neutral.spine) acc = quote_frame(acc, fr, depth);
        return acc;
      }
    }
    throw std::logic_error("unhandled value tag");
  }

 private:
  const GlobalEnv& genv_;
  EvalOptions opt_;
  uint64_t steps_ = 0;
  std::map<std::string, ValuePtr> const_memo_;

  void tick() {
    if (++steps_ > opt_.fuel) throw FuelExhausted(opt_.fuel);
  }

  TermPtr quote_force(const ThunkPtr& th, uint32_t depth) {
    return quote(force(th), depth);
  }

  // Shared eliminator evaluation. `parts` lists motive then methods.
  ValuePtr elim(NFrame::Kind kind, const EnvPtr& env,
                std::vector<TermPtr> parts, const TermPtr& scrutinee_t) {
    std::vector<ThunkPtr> th;
    th.reserve(parts.size());
    for (auto& p : parts) th.push_back(delay(env, p));
    ValuePtr s = eval(env, scrutinee_t);
    return step_elim(kind, std::move(th), s);
  }

  ValuePtr step_elim(NFrame::Kind kind, std::vector<ThunkPtr> th,
                     const ValuePtr& s) {
    switch (kind) {
      case NFrame::Kind::App:
        throw std::logic_error("App is not an eliminator");
      case NFrame::Kind::ElimUnit:
        if (s->tag == VTag::Tt) {
          tick();
          return force(th[1]);
        }
        break;
      case NFrame::Kind::ElimEmpty:
        break;  // no closed constructor; always neutral
      case NFrame::Kind::ElimBool:
        if (s->tag == VTag::True) {
          tick();
          return force(th[1]);
        }
        if (s->tag == VTag::False) {
          tick();
          return force(th[2]);
        }
        break;
      case NFrame::Kind::ElimNat:
        if (s->tag == VTag::Zero) {
          tick();
          return force(th[1]);
        }
        if (s->tag == VTag::Succ) {
          tick();
          ThunkPtr pred = s->field1;
          // recursive occurrence, delayed under lazy evaluation
          ThunkPtr rec;
          if (opt_.strategy == Strategy::Compute) {
            rec = Thunk::of_value(
                step_elim(NFrame::Kind::ElimNat, th, force(pred)));
          } else {
            auto self = this;
            auto th_copy = th;
            rec = Thunk::suspend_native([self, th_copy, pred]() {
              return self->step_elim(NFrame::Kind::ElimNat, th_copy,
                                     self->force(pred));
            });
          }
          return apply(apply(force(th[2]), pred), rec);
        }
        break;
      case NFrame::Kind::ElimCoprod:
        if (s->tag == VTag::InL) {
          tick();
          return apply(force(th[1]), s->field1);
        }
        if (s->tag == VTag::InR) {
          tick();
          return apply(force(th[2]), s->field1);
        }
        break;
      case NFrame::Kind::ElimSigma:
        if (s->tag == VTag::Pair) {
          tick();
          return apply(apply(force(th[1]), s->field1), s->field2);
        }
        break;
      case NFrame::Kind::ElimPaths:
        if (s->tag == VTag::Refl) {
          tick();
          return force(th[1]);
        }
        break;
    }
    if (s->tag == VTag::Neutral) {
      auto v = std::make_shared<Value>(*s);
      v->neutral.spine.push_back({kind, std::move(th)});
      return v;
    }
    throw std::logic_error("eliminator applied to an incompatible value");
  }

  TermPtr quote_frame(TermPtr scrut, const NFrame& fr, uint32_t depth) {
    auto q = [&](size_t i) { return quote_force(fr.args[i], depth); };
    switch (fr.kind) {
      case NFrame::Kind::App:
        return mk::app(scrut, q(0));
      case NFrame::Kind::ElimUnit:
        return mk::elim_unit(q(0), q(1), scrut);
      case NFrame::Kind::ElimEmpty:
        return mk::elim_empty(q(0), scrut);
      case NFrame::Kind::ElimBool:
        return mk::elim_bool(q(0), q(1), q(2), scrut);
      case NFrame::Kind::ElimNat:
        return mk::elim_nat(q(0), q(1), q(2), scrut);
      case NFrame::Kind::ElimCoprod:
        return mk::elim_coprod(q(0), q(1), q(2), scrut);
      case NFrame::Kind::ElimSigma:
        return mk::elim_sigma(q(0), q(1), scrut);
      case NFrame::Kind::ElimPaths:
        return mk::elim_paths(q(0), q(1), scrut);
    }
    throw std::logic_error("unhandled frame kind");
  }
};

// Evaluate a closed term and read back its normal form.
struct NormalizeResult {
  TermPtr term;
  uint64_t steps = 0;
};

inline NormalizeResult normalize(const GlobalEnv& genv, const TermPtr& t,
                                 EvalOptions opt = {}) {
  Evaluator ev(genv, opt);
  ValuePtr v = ev.eval(nullptr, t);
  TermPtr out = ev.quote(v, 0);
  return {out, ev.steps()};
}

// Classify a normal form. Stuck exactly when an axiom reference or a free
// variable occurs anywhere in the term; numerals and booleans are reported
// for the ground types; anything else canonical.
inline Classification classify(const TermPtr& normal_form) {
  std::set<std::string> blockers;
  collect_axioms(normal_form, blockers);
  struct FreeScan {
    void go(const TermPtr& t, uint32_t depth, std::set<std::string>& out) {
      if (t->tag == Tag::Var && t->index >= depth)
        out.insert("?free" + std::to_string(t->index - depth));
      for (size_t i = 0; i < t->kids.size(); ++i)
        go(t->kids[i], depth + binds_at(t->tag, i), out);
    }
  };
  FreeScan{}.go(normal_form, 0, blockers);
  if (!blockers.empty()) return Classification::stuck(std::move(blockers));
  if (auto n = as_numeral(normal_form)) return Classification::make_numeral(*n);
  if (normal_form->tag == Tag::TrueC) return Classification::make_bool(true);
  if (normal_form->tag == Tag::FalseC) return Classification::make_bool(false);
  return Classification::canonical();
}

}  // namespace uvk

#endif  // UVK_EVAL_HPP
