// Seeded generator of closed, well-typed, axiom-free nat terms built from
// constructors, lambdas, application and the seven eliminators. Terms are
// correct by construction, which makes the generator its own oracle for the
// canonicity experiments: every generated term must normalize to a numeral.

#ifndef UVK_CORPUS_HPP
#define UVK_CORPUS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "uvk/term.hpp"

namespace uvk {

class CorpusGen {
 public:
  explicit CorpusGen(uint64_t seed) : rng_(seed) {}

  // A closed term of type nat.
  TermPtr nat_term(int depth = 4) {
    vars_.clear();
    return gen_nat(depth);
  }

 private:
  enum class Ty : uint8_t { Nat, Bool, FnNatNat };

  std::mt19937_64 rng_;
  std::vector<Ty> vars_;  // innermost last

  uint64_t pick(uint64_t n) { return rng_() % n; }

  static TermPtr ty_term(Ty t) {
    switch (t) {
      case Ty::Nat: return mk::nat();
      case Ty::Bool: return mk::boolean();
      case Ty::FnNatNat: return mk::pi(mk::nat(), mk::nat(), "_");
    }
    return mk::nat();
  }

  // Motive `fun _ : T => nat`.
  static TermPtr nat_motive(TermPtr scrut_ty) {
    return mk::lam(std::move(scrut_ty), mk::nat(), "_");
  }

  std::optional<uint32_t> find_var(Ty want) {
    std::vector<uint32_t> hits;
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[vars_.size() - 1 - i] == want) hits.push_back(uint32_t(i));
    if (hits.empty()) return std::nullopt;
    return hits[pick(hits.size())];
  }

  TermPtr gen_nat(int depth) {
    if (depth <= 0) return leaf_nat();
    switch (pick(10)) {
      case 0:
        return leaf_nat();
      case 1:
        return mk::succ(gen_nat(depth - 1));
      case 2: {  // beta redex with a nat/bool/function argument
        Ty t = Ty(pick(3));
        vars_.push_back(t);
        TermPtr body = gen_nat(depth - 1);
        vars_.pop_back();
        return mk::app(mk::lam(ty_term(t), body, "v"), gen_of(t, depth - 1));
      }
      case 3: {  // primitive recursion
        TermPtr m0 = gen_nat(depth - 1);
        vars_.push_back(Ty::Nat);  // k
        vars_.push_back(Ty::Nat);  // recursive result
        TermPtr step = gen_nat(depth - 1);
        vars_.pop_back();
        vars_.pop_back();
        TermPtr ms = mk::lam(
            mk::nat(), mk::lam(mk::nat(), step, "r"), "k");
        return mk::elim_nat(nat_motive(mk::nat()), m0, ms,
                            gen_nat(depth - 1));
      }
      case 4:  // boolean branch
        return mk::elim_bool(nat_motive(mk::boolean()), gen_nat(depth - 1),
                             gen_nat(depth - 1), gen_bool(depth - 1));
      case 5: {  // coproduct case split
        bool left = pick(2) == 0;
        TermPtr scrut =
            left ? mk::inl(mk::nat(), mk::boolean(), gen_nat(depth - 1))
                 : mk::inr(mk::nat(), mk::boolean(), gen_bool(depth - 1));
        vars_.push_back(Ty::Nat);
        TermPtr ml_body = gen_nat(depth - 1);
        vars_.pop_back();
        vars_.push_back(Ty::Bool);
        TermPtr mr_body = gen_nat(depth - 1);
        vars_.pop_back();
        return mk::elim_coprod(
            nat_motive(mk::coprod(mk::nat(), mk::boolean())),
            mk::lam(mk::nat(), ml_body, "a"),
            mk::lam(mk::boolean(), mr_body, "b"), scrut);
      }
      case 6: {  // pair projection
        TermPtr sig = mk::sigma(mk::nat(), mk::nat(), "_");
        TermPtr scrut =
            mk::pair(sig, gen_nat(depth - 1), gen_nat(depth - 1));
        vars_.push_back(Ty::Nat);
        vars_.push_back(Ty::Nat);
        TermPtr body = gen_nat(depth - 1);
        vars_.pop_back();
        vars_.pop_back();
        TermPtr method =
            mk::lam(mk::nat(), mk::lam(mk::nat(), body, "b"), "a");
        return mk::elim_sigma(nat_motive(sig), method, scrut);
      }
      case 7: {  // unit elimination
        return mk::elim_unit(nat_motive(mk::unit()), gen_nat(depth - 1),
                             mk::tt());
      }
      case 8: {  // path induction on a reflexivity proof
        TermPtr point = mk::numeral(pick(4));
        TermPtr motive = mk::lam(
            mk::nat(),
            mk::lam(mk::paths(mk::nat(), shift(point, 1), mk::var(0)),
                    mk::nat(), "e"),
            "b");
        return mk::elim_paths(motive, gen_nat(depth - 1),
                              mk::refl(mk::nat(), point));
      }
      case 9: {  // apply a function variable or a fresh function
        if (auto v = find_var(Ty::FnNatNat))
          return mk::app(mk::var(*v), gen_nat(depth - 1));
        vars_.push_back(Ty::Nat);
        TermPtr body = gen_nat(depth - 1);
        vars_.pop_back();
        return mk::app(mk::lam(mk::nat(), body, "x"), gen_nat(depth - 1));
      }
    }
    return leaf_nat();
  }

  TermPtr gen_of(Ty t, int depth) {
    switch (t) {
      case Ty::Nat: return gen_nat(depth);
      case Ty::Bool: return gen_bool(depth);
      case Ty::FnNatNat: {
        vars_.push_back(Ty::Nat);
        TermPtr body = gen_nat(depth);
        vars_.pop_back();
        return mk::lam(mk::nat(), body, "x");
      }
    }
    return gen_nat(depth);
  }

  TermPtr leaf_nat() {
    if (auto v = find_var(Ty::Nat); v && pick(2) == 0) return mk::var(*v);
    return mk::numeral(pick(5));
  }

  TermPtr gen_bool(int depth) {
    if (depth <= 0) return leaf_bool();
    switch (pick(4)) {
      case 0:
      case 1:
        return leaf_bool();
      case 2:
        return mk::elim_bool(
            mk::lam(mk::boolean(), mk::boolean(), "_"), gen_bool(depth - 1),
            gen_bool(depth - 1), gen_bool(depth - 1));
      default: {  // test a nat against zero by recursion
        TermPtr isz = mk::elim_nat(
            nat_bool_motive(), mk::true_c(),
            mk::lam(mk::nat(), mk::lam(mk::boolean(), mk::false_c(), "_"),
                    "k"),
            gen_nat(depth - 1));
        return isz;
      }
    }
  }

  static TermPtr nat_bool_motive() {
    return mk::lam(mk::nat(), mk::boolean(), "_");
  }

  TermPtr leaf_bool() {
    if (auto v = find_var(Ty::Bool); v && pick(2) == 0) return mk::var(*v);
    return pick(2) ? mk::true_c() : mk::false_c();
  }
};

}  // namespace uvk

#endif  // UVK_CORPUS_HPP
