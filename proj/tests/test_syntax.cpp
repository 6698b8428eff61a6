// Parser, resolver, printer: grammar cases, numeral desugaring, round-trip.

#include <catch2/catch_amalgamated.hpp>

#include "uvk/env.hpp"
#include "uvk/parse.hpp"
#include "uvk/resolve.hpp"
#include "uvk/term.hpp"

using namespace uvk;

namespace {

TermPtr parse_resolve(const std::string& src) {
  GlobalEnv env;
  return resolve_term(parse_expr(src), env);
}

}  // namespace

TEST_CASE("definition with binders parses to a two-binder lambda") {
  auto cmds = parse_file("Definition idfun (T : UU) (t : T) : T := t.");
  REQUIRE(cmds.size() == 1);
  auto& c = cmds[0];
  CHECK(c.kind == Command::Kind::Definition);
  CHECK(c.name == "idfun");
  REQUIRE(c.body);
  CHECK(c.body->tag == Tag::Lam);
  CHECK(c.body->kids[1]->tag == Tag::Lam);
  REQUIRE(c.type);
  CHECK(c.type->tag == Tag::Pi);
}

TEST_CASE("Eval command form") {
  auto cmds = parse_file("Eval compute in (natgtb 2 1).");
  REQUIRE(cmds.size() == 1);
  CHECK(cmds[0].kind == Command::Kind::Eval);
  CHECK(cmds[0].strategy == Strategy::Compute);
  // application spine with numerals
  GlobalEnv env;
  env.insert({"natgtb", mk::pi(mk::nat(), mk::pi(mk::nat(), mk::boolean())),
              mk::lam(mk::nat(), mk::lam(mk::nat(), mk::true_c()))});
  auto t = resolve_term(cmds[0].body, env);
  REQUIRE(t->tag == Tag::App);
  CHECK(struct_eq(t->kids[1], mk::numeral(1)));
  CHECK(struct_eq(t->kids[0]->kids[1], mk::numeral(2)));
  CHECK(t->kids[0]->kids[0]->tag == Tag::Const);
}

TEST_CASE("malformed definition reports a syntax error at the dot") {
  CHECK_THROWS_AS(parse_file("Definition bad := ."), SyntaxError);
}

TEST_CASE("lambda resolves to de Bruijn form") {
  auto t = parse_resolve("fun t : nat => t");
  REQUIRE(t->tag == Tag::Lam);
  CHECK(t->kids[0]->tag == Tag::Nat);
  CHECK(t->kids[1]->tag == Tag::Var);
  CHECK(t->kids[1]->index == 0);
}

TEST_CASE("numerals desugar to successor chains") {
  auto t = parse_resolve("3");
  CHECK(struct_eq(t, mk::succ(mk::succ(mk::succ(mk::zero())))));
}

TEST_CASE("unbound identifier is an error") {
  CHECK_THROWS_AS(parse_resolve("fun t : nat => s"), ResolveError);
}

TEST_CASE("alpha invariance through de Bruijn") {
  auto a = parse_resolve("fun x : nat => x");
  auto b = parse_resolve("fun y : nat => y");
  CHECK(struct_eq(a, b));
  auto c = parse_resolve("fun x : bool => x");
  CHECK_FALSE(struct_eq(a, c));
}

TEST_CASE("pretty prints numerals and arrows") {
  CHECK(pretty(mk::succ(mk::succ(mk::zero()))) == "2");
  // forall T : UU0, T -> T
  auto t = mk::pi(mk::universe(LevelExpr::concrete(0)),
                  mk::pi(mk::var(0), mk::var(1), "_"), "T");
  CHECK(pretty(t) == "forall T : UU0, T -> T");
  CHECK(pretty(mk::refl(mk::nat(), mk::zero())) == "idpath nat 0");
}

TEST_CASE("round-trip: resolve(parse(pretty(t))) is structurally equal") {
  const char* samples[] = {
      "fun x : nat => S (S x)",
      "forall T : UU0, T -> T",
      "fun p : total2 (fun n : nat => paths nat n 0) => p",
      "tpair (total2 (fun n : nat => bool)) 2 true",
      "natind (fun n : nat => nat) 0 (fun k : nat => fun r : nat => S r) 7",
      "coprodind (fun c : coprod nat bool => nat) (fun a : nat => a) "
      "(fun b : bool => 0) (inl nat bool 3)",
      "pathsind (fun b : nat => fun e : paths nat 0 b => bool) true "
      "(idpath nat 0)",
      "fun f : nat -> nat => fun x : nat => f (f x)",
      "boolind (fun b : bool => UU3) nat bool true",
      "total2ind (fun p : total2 (fun T : UU1 => T) => nat) "
      "(fun a : UU1 => fun b : a => 0) "
      "(tpair (total2 (fun T : UU1 => T)) nat 5)",
  };
  for (auto* s : samples) {
    CAPTURE(s);
    auto t1 = parse_resolve(s);
    auto t2 = parse_resolve(pretty(t1));
    CHECK(struct_eq(t1, t2));
  }
}

TEST_CASE("numeral law: print then classify returns n") {
  for (uint64_t n = 0; n <= 1000; n += (n < 20 ? 1 : 97)) {
    auto t = parse_resolve(std::to_string(n));
    auto v = as_numeral(t);
    REQUIRE(v.has_value());
    CHECK(*v == n);
    CHECK(pretty(t) == std::to_string(n));
  }
}

TEST_CASE("closed resolution leaves no free indices") {
  auto t = parse_resolve(
      "fun f : forall T : UU, T -> T => f (nat -> nat) (f (nat -> nat) "
      "(fun x : nat => x))");
  CHECK(indices_bound(t));
}

TEST_CASE("comments nest") {
  auto cmds = parse_file(
      "(* a comment (* nested *) still *) Definition x : nat := 0.");
  REQUIRE(cmds.size() == 1);
  CHECK(cmds[0].name == "x");
}

TEST_CASE("module commands parse") {
  auto cmds = parse_file(
      "Library Foundations.Generalities.uuu_core.\n"
      "Add LoadPath \"./lib/Generalities\" as Foundations.Generalities.\n"
      "Require Export Foundations.Generalities.uuu_core.\n");
  REQUIRE(cmds.size() == 3);
  CHECK(cmds[0].kind == Command::Kind::LibraryDecl);
  CHECK(cmds[0].dotted == "Foundations.Generalities.uuu_core");
  CHECK(cmds[1].kind == Command::Kind::AddLoadPath);
  CHECK(cmds[1].directory == "./lib/Generalities");
  CHECK(cmds[1].dotted == "Foundations.Generalities");
  CHECK(cmds[2].kind == Command::Kind::RequireExport);
  CHECK(cmds[2].dotted == "Foundations.Generalities.uuu_core");
}

TEST_CASE("canonicity test command parses expectations") {
  auto cmds = parse_file(
      "CanonicityTest 5 as numeral 5.\n"
      "CanonicityTest true as boolval true.\n"
      "CanonicityTest (fun x : nat => x) as canonical.\n"
      "CanonicityTest x as stuck funextfunax.\n");
  REQUIRE(cmds.size() == 4);
  CHECK(cmds[0].expected == Classification::make_numeral(5));
  CHECK(cmds[1].expected == Classification::make_bool(true));
  CHECK(cmds[2].expected == Classification::canonical());
  CHECK(cmds[3].expected == Classification::stuck({"funextfunax"}));
}
