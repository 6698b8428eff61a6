// Surface syntax: a small Coq-like vernacular over the core language.
// Files carry Definition / Postulate / Eval / Require Export / Add LoadPath /
// CanonicityTest / Opaque / Library commands; terms use `forall`, `fun`,
// arrows and explicit application. Parsing leaves identifiers symbolic;
// resolution to de Bruijn form happens in resolve.hpp.

#ifndef UVK_PARSE_HPP
#define UVK_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uvk/term.hpp"

namespace uvk {

struct SyntaxError : std::runtime_error {
  SrcLoc loc;
  SyntaxError(SrcLoc l, const std::string& expected)
      : std::runtime_error("syntax error at " + l.show() + ": " + expected),
        loc(l) {}
};

enum class Strategy : uint8_t { Compute, Lazy };

inline const char* strategy_name(Strategy s) {
  return s == Strategy::Compute ? "compute" : "lazy";
}

struct Command {
  enum class Kind : uint8_t {
    Definition,   // name, stated type (optional), body
    Postulate,    // name, type
    Eval,         // strategy, expr
    RequireExport,// dotted module name
    AddLoadPath,  // directory, dotted prefix
    CanonicityTest, // expr, expected classification
    SetOpaque,    // name
    LibraryDecl,  // declared module name of this file
  };

  Kind kind;
  SrcLoc loc;
  std::string name;         // Definition/Postulate/SetOpaque target
  TermPtr type;             // stated type (may be null for Definition)
  TermPtr body;             // Definition body / Eval / CanonicityTest expr
  Strategy strategy = Strategy::Compute;
  std::string dotted;       // RequireExport/AddLoadPath/ LibraryDecl name
  std::string directory;    // AddLoadPath
  Classification expected;  // CanonicityTest
};

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind : uint8_t {
    Ident, Numeral, String,
    LParen, RParen, Colon, ColonEq, Dot, Comma, Arrow, FatArrow, Underscore,
    End,
  };
  Kind kind;
  std::string text;
  uint64_t number = 0;
  SrcLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {
    advance();
    tok2_ = tok_;
    advance();
  }

  const Token& peek() const { return tok2_; }
  const Token& peek_ahead() const { return tok_; }
  Token next() {
    Token t = tok2_;
    tok2_ = tok_;
    advance();
    return t;
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
  uint32_t line_ = 1, col_ = 1;
  Token tok_;   // lookahead(1)
  Token tok2_;  // lookahead(0)

  int cur() const { return pos_ < src_.size() ? (unsigned char)src_[pos_] : -1; }
  int cur1() const {
    return pos_ + 1 < src_.size() ? (unsigned char)src_[pos_ + 1] : -1;
  }
  void bump() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      while (isspace(cur())) bump();
      if (cur() == '(' && cur1() == '*') {
        SrcLoc start{line_, col_};
        bump();
        bump();
        int depth = 1;
        while (depth > 0) {
          if (cur() == -1) throw SyntaxError(start, "unterminated comment");
          if (cur() == '(' && cur1() == '*') {
            bump(); bump(); ++depth;
          } else if (cur() == '*' && cur1() == ')') {
            bump(); bump(); --depth;
          } else {
            bump();
          }
        }
        continue;
      }
      break;
    }
  }

  static bool ident_start(int c) { return isalpha(c) || c == '_'; }
  static bool ident_cont(int c) {
    return isalnum(c) || c == '_' || c == '\'';
  }

  void advance() {
    skip_trivia();
    SrcLoc loc{line_, col_};
    tok_ = Token{Token::Kind::End, "", 0, loc};
    int c = cur();
    if (c == -1) return;
    if (isdigit(c)) {
      uint64_t n = 0;
      std::string text;
      while (isdigit(cur())) {
        n = n * 10 + uint64_t(cur() - '0');
        text += char(cur());
        bump();
      }
      tok_ = Token{Token::Kind::Numeral, text, n, loc};
      return;
    }
    if (ident_start(c)) {
      std::string text;
      while (ident_cont(cur())) {
        text += char(cur());
        bump();
      }
      // Module names are dotted identifiers lexed as one token: a dot
      // binds into the name only when an identifier character follows
      // immediately, so the command-terminating dot stays separate.
      while (cur() == '.' && ident_start(cur1())) {
        text += '.';
        bump();
        while (ident_cont(cur())) {
          text += char(cur());
          bump();
        }
      }
      if (text == "_")
        tok_ = Token{Token::Kind::Underscore, text, 0, loc};
      else
        tok_ = Token{Token::Kind::Ident, text, 0, loc};
      return;
    }
    if (c == '"') {
      bump();
      std::string text;
      while (cur() != '"') {
        if (cur() == -1) throw SyntaxError(loc, "unterminated string");
        text += char(cur());
        bump();
      }
      bump();
      tok_ = Token{Token::Kind::String, text, 0, loc};
      return;
    }
    auto two = [&](Token::Kind k, const char* s) {
      bump();
      bump();
      tok_ = Token{k, s, 0, loc};
    };
    switch (c) {
      case '(': bump(); tok_ = Token{Token::Kind::LParen, "(", 0, loc}; return;
      case ')': bump(); tok_ = Token{Token::Kind::RParen, ")", 0, loc}; return;
      case ',': bump(); tok_ = Token{Token::Kind::Comma, ",", 0, loc}; return;
      case '.': bump(); tok_ = Token{Token::Kind::Dot, ".", 0, loc}; return;
      case ':':
        if (cur1() == '=') { two(Token::Kind::ColonEq, ":="); return; }
        bump();
        tok_ = Token{Token::Kind::Colon, ":", 0, loc};
        return;
      case '-':
        if (cur1() == '>') { two(Token::Kind::Arrow, "->"); return; }
        break;
      case '=':
        if (cur1() == '>') { two(Token::Kind::FatArrow, "=>"); return; }
        break;
      default:
        break;
    }
    throw SyntaxError(loc, std::string("unexpected character '") +
                               char(c) + "'");
  }
};

// ---------------------------------------------------------------------------
// Parser. Produces commands whose terms still contain Ident nodes and
// named binders; `->` is desugared here into a non-dependent forall.

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  std::vector<Command> parse_file() {
    std::vector<Command> out;
    while (lex_.peek().kind != Token::Kind::End) out.push_back(parse_command());
    return out;
  }

  Command parse_command() {
    Token t = expect(Token::Kind::Ident, "command keyword");
    Command cmd;
    cmd.loc = t.loc;
    if (t.text == "Definition") {
      cmd.kind = Command::Kind::Definition;
      cmd.name = expect(Token::Kind::Ident, "definition name").text;
      auto binders = parse_binder_groups();
      if (peek_is(Token::Kind::Colon)) {
        lex_.next();
        cmd.type = parse_term();
      }
      expect(Token::Kind::ColonEq, "':='");
      cmd.body = parse_term();
      expect(Token::Kind::Dot, "'.'");
      apply_binders(cmd, binders);
      return cmd;
    }
    if (t.text == "Postulate") {
      cmd.kind = Command::Kind::Postulate;
      cmd.name = expect(Token::Kind::Ident, "postulate name").text;
      auto binders = parse_binder_groups();
      expect(Token::Kind::Colon, "':'");
      cmd.type = parse_term();
      expect(Token::Kind::Dot, "'.'");
      // binders on a postulate abbreviate a forall telescope
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        cmd.type = mk::pi(it->second, cmd.type, it->first);
      return cmd;
    }
    if (t.text == "Eval") {
      cmd.kind = Command::Kind::Eval;
      Token s = expect(Token::Kind::Ident, "'compute' or 'lazy'");
      if (s.text == "compute") cmd.strategy = Strategy::Compute;
      else if (s.text == "lazy") cmd.strategy = Strategy::Lazy;
      else throw SyntaxError(s.loc, "'compute' or 'lazy'");
      expect_kw("in");
      cmd.body = parse_term();
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    if (t.text == "Require") {
      expect_kw("Export");
      cmd.kind = Command::Kind::RequireExport;
      cmd.dotted = parse_dotted();
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    if (t.text == "Add") {
      expect_kw("LoadPath");
      cmd.kind = Command::Kind::AddLoadPath;
      cmd.directory = expect(Token::Kind::String, "directory string").text;
      expect_kw("as");
      cmd.dotted = parse_dotted();
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    if (t.text == "CanonicityTest") {
      cmd.kind = Command::Kind::CanonicityTest;
      cmd.body = parse_term();
      expect_kw("as");
      cmd.expected = parse_classification();
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    if (t.text == "Opaque") {
      cmd.kind = Command::Kind::SetOpaque;
      cmd.name = expect(Token::Kind::Ident, "constant name").text;
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    if (t.text == "Library") {
      cmd.kind = Command::Kind::LibraryDecl;
      cmd.dotted = parse_dotted();
      expect(Token::Kind::Dot, "'.'");
      return cmd;
    }
    throw SyntaxError(t.loc, "command keyword (got '" + t.text + "')");
  }

  // Entry point for parsing a standalone expression (CLI eval).
  TermPtr parse_expression() {
    TermPtr t = parse_term();
    if (lex_.peek().kind != Token::Kind::End &&
        lex_.peek().kind != Token::Kind::Dot)
      throw SyntaxError(lex_.peek().loc, "end of expression");
    return t;
  }

 private:
  Lexer lex_;

  bool peek_is(Token::Kind k) const { return lex_.peek().kind == k; }
  bool peek_kw(const char* s) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (lex_.peek().kind != k) throw SyntaxError(lex_.peek().loc, what);
    return lex_.next();
  }
  void expect_kw(const char* s) {
    Token t = expect(Token::Kind::Ident, std::string("'") + s + "'");
    if (t.text != s) throw SyntaxError(t.loc, std::string("'") + s + "'");
  }

  std::string parse_dotted() {
    // dotted names are single tokens (see the lexer)
    return expect(Token::Kind::Ident, "module name").text;
  }

  Classification parse_classification() {
    Token t = expect(Token::Kind::Ident, "classification");
    if (t.text == "numeral") {
      Token n = expect(Token::Kind::Numeral, "numeral value");
      return Classification::make_numeral(n.number);
    }
    if (t.text == "boolval") {
      Token b = expect(Token::Kind::Ident, "'true' or 'false'");
      if (b.text == "true") return Classification::make_bool(true);
      if (b.text == "false") return Classification::make_bool(false);
      throw SyntaxError(b.loc, "'true' or 'false'");
    }
    if (t.text == "canonical") return Classification::canonical();
    if (t.text == "stuck") {
      std::set<std::string> names;
      while (peek_is(Token::Kind::Ident)) names.insert(lex_.next().text);
      return Classification::stuck(std::move(names));
    }
    throw SyntaxError(t.loc, "classification keyword");
  }

  using BinderGroup = std::pair<std::string, TermPtr>;  // name, type

  // Zero or more parenthesized binder groups: (x y : T) (z : U) ...
  std::vector<BinderGroup> parse_binder_groups() {
    std::vector<BinderGroup> out;
    while (peek_is(Token::Kind::LParen)) {
      lex_.next();
      std::vector<std::string> names;
      while (peek_is(Token::Kind::Ident) || peek_is(Token::Kind::Underscore))
        names.push_back(lex_.next().text);
      if (names.empty())
        throw SyntaxError(lex_.peek().loc, "binder name");
      expect(Token::Kind::Colon, "':' in binder");
      TermPtr ty = parse_term();
      expect(Token::Kind::RParen, "')'");
      for (auto& n : names) out.emplace_back(n, ty);
    }
    return out;
  }

  // Binders directly after fun/forall: either paren groups or one bare
  // group `x y : T`.
  std::vector<BinderGroup> parse_lambda_binders() {
    if (peek_is(Token::Kind::LParen)) {
      auto out = parse_binder_groups();
      if (out.empty()) throw SyntaxError(lex_.peek().loc, "binder");
      return out;
    }
    std::vector<std::string> names;
    while (peek_is(Token::Kind::Ident) || peek_is(Token::Kind::Underscore))
      names.push_back(lex_.next().text);
    if (names.empty()) throw SyntaxError(lex_.peek().loc, "binder name");
    expect(Token::Kind::Colon, "':' in binder");
    TermPtr ty = parse_term();
    std::vector<BinderGroup> out;
    for (auto& n : names) out.emplace_back(n, ty);
    return out;
  }

  void apply_binders(Command& cmd, const std::vector<BinderGroup>& binders) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      cmd.body = mk::lam(it->second, cmd.body, it->first);
      if (cmd.type) cmd.type = mk::pi(it->second, cmd.type, it->first);
    }
  }

  TermPtr parse_term() {
    if (peek_kw("fun")) {
      SrcLoc loc = lex_.next().loc;
      auto binders = parse_lambda_binders();
      expect(Token::Kind::FatArrow, "'=>'");
      TermPtr body = parse_term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = mk::lam(it->second, body, it->first);
      const_cast<Term*>(body.get())->loc = loc;
      return body;
    }
    if (peek_kw("forall")) {
      SrcLoc loc = lex_.next().loc;
      auto binders = parse_lambda_binders();
      expect(Token::Kind::Comma, "','");
      TermPtr body = parse_term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = mk::pi(it->second, body, it->first);
      const_cast<Term*>(body.get())->loc = loc;
      return body;
    }
    TermPtr lhs = parse_application();
    if (peek_is(Token::Kind::Arrow)) {
      lex_.next();
      TermPtr rhs = parse_term();
      // A -> B is forall _ : A, B with B not using the variable.
      return mk::pi(lhs, shift(rhs, 1), "_");
    }
    return lhs;
  }

  TermPtr parse_application() {
    TermPtr head = parse_atom();
    for (;;) {
      switch (lex_.peek().kind) {
        case Token::Kind::Ident:
          // structural keywords end an application spine
          if (peek_kw("fun") || peek_kw("forall") || peek_kw("in") ||
              peek_kw("as"))
            return head;
          head = mk::app(head, parse_atom());
          break;
        case Token::Kind::Numeral:
        case Token::Kind::Underscore:
        case Token::Kind::LParen:
          head = mk::app(head, parse_atom());
          break;
        default:
          return head;
      }
    }
  }

  TermPtr parse_atom() {
    const Token& p = lex_.peek();
    switch (p.kind) {
      case Token::Kind::LParen: {
        lex_.next();
        TermPtr t = parse_term();
        expect(Token::Kind::RParen, "')'");
        return t;
      }
      case Token::Kind::Numeral: {
        Token t = lex_.next();
        return mk::numeral(t.number);
      }
      case Token::Kind::Underscore: {
        Token t = lex_.next();
        auto h = mk::hole();
        const_cast<Term*>(h.get())->loc = t.loc;
        return h;
      }
      case Token::Kind::Ident: {
        Token t = lex_.next();
        return mk::ident(t.text, t.loc);
      }
      default:
        throw SyntaxError(p.loc, "term");
    }
  }
};

inline std::vector<Command> parse_file(std::string_view source) {
  return Parser(source).parse_file();
}

inline TermPtr parse_expr(std::string_view source) {
  return Parser(source).parse_expression();
}

// ---------------------------------------------------------------------------
// Pretty printer. Output re-parses and re-resolves to a structurally equal
// term. Bound variables print their binder hints, freshened on collision.

class Printer {
 public:
  std::string print(const TermPtr& t) {
    std::string out;
    go(t, out, 0);
    return out;
  }

 private:
  std::vector<std::string> names_;

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() || hint == "_" ? "x" : hint;
    std::string cand = base;
    int i = 0;
    while (taken(cand)) cand = base + std::to_string(i++);
    return cand;
  }
  bool taken(const std::string& n) const {
    for (auto& m : names_)
      if (m == n) return true;
    return reserved(n);
  }
  static bool reserved(const std::string& n) {
    static const char* words[] = {
        "fun", "forall", "nat", "bool", "unit", "empty", "coprod", "paths",
        "total2", "tpair", "inl", "inr", "idpath", "O", "S", "tt", "true",
        "false", "natind", "boolind", "unitind", "emptyind", "coprodind",
        "total2ind", "pathsind", "UU", "Definition", "Postulate", "Eval",
        "Require", "Add", "CanonicityTest", "Opaque", "Library", "in", "as"};
    for (auto* w : words)
      if (n == w) return true;
    if (n.size() >= 3 && n.rfind("UU", 0) == 0) return true;
    return false;
  }

  // Precedence levels: 0 top (fun/forall/arrow), 1 application, 2 atom.
  void go(const TermPtr& t, std::string& out, int prec) {
    switch (t->tag) {
      case Tag::Var: {
        size_t i = t->index;
        if (i < names_.size())
          out += names_[names_.size() - 1 - i];
        else
          out += "!" + std::to_string(i);  // unbound; diagnostics only
        return;
      }
      case Tag::Universe:
        if (t->level.is_concrete())
          out += "UU" + std::to_string(t->level.value);
        else
          out += "UU";
        return;
      case Tag::Pi: {
        bool dep = uses_var0(t->kids[1]);
        if (!dep) {
          open(out, prec, 0);
          go(t->kids[0], out, 1);
          out += " -> ";
          go(lowered(t->kids[1]), out, 0);
          close(out, prec, 0);
          return;
        }
        open(out, prec, 0);
        std::string n = fresh(t->name);
        out += "forall " + n + " : ";
        go(t->kids[0], out, 0);
        out += ", ";
        names_.push_back(n);
        go(t->kids[1], out, 0);
        names_.pop_back();
        close(out, prec, 0);
        return;
      }
      case Tag::Lam: {
        open(out, prec, 0);
        std::string n = fresh(t->name);
        out += "fun " + n + " : ";
        go(t->kids[0], out, 0);
        out += " => ";
        names_.push_back(n);
        go(t->kids[1], out, 0);
        names_.pop_back();
        close(out, prec, 0);
        return;
      }
      case Tag::App: {
        open(out, prec, 1);
        go(t->kids[0], out, 1);
        out += " ";
        go(t->kids[1], out, 2);
        close(out, prec, 1);
        return;
      }
      case Tag::Sigma: {
        open(out, prec, 1);
        // total2 (fun x : A => B)
        out += "total2 (fun ";
        std::string n = fresh(t->name);
        out += n + " : ";
        go(t->kids[0], out, 0);
        out += " => ";
        names_.push_back(n);
        go(t->kids[1], out, 0);
        names_.pop_back();
        out += ")";
        close(out, prec, 1);
        return;
      }
      case Tag::Pair:
        head(out, prec, "tpair", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::Const:
      case Tag::AxiomRef:
      case Tag::Ident:
        out += t->name;
        return;
      case Tag::Hole:
        out += "_";
        return;
      case Tag::Unit: out += "unit"; return;
      case Tag::Tt: out += "tt"; return;
      case Tag::Empty: out += "empty"; return;
      case Tag::Bool: out += "bool"; return;
      case Tag::TrueC: out += "true"; return;
      case Tag::FalseC: out += "false"; return;
      case Tag::Nat: out += "nat"; return;
      case Tag::Zero: out += "0"; return;
      case Tag::Succ: {
        if (auto n = as_numeral(t)) {
          out += std::to_string(*n);
          return;
        }
        head(out, prec, "S", {t->kids[0]});
        return;
      }
      case Tag::Coprod:
        head(out, prec, "coprod", {t->kids[0], t->kids[1]});
        return;
      case Tag::InL:
        head(out, prec, "inl", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::InR:
        head(out, prec, "inr", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::Paths:
        head(out, prec, "paths", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::Refl:
        head(out, prec, "idpath", {t->kids[0], t->kids[1]});
        return;
      case Tag::ElimUnit:
        head(out, prec, "unitind", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::ElimEmpty:
        head(out, prec, "emptyind", {t->kids[0], t->kids[1]});
        return;
      case Tag::ElimBool:
        head(out, prec, "boolind",
             {t->kids[0], t->kids[1], t->kids[2], t->kids[3]});
        return;
      case Tag::ElimNat:
        head(out, prec, "natind",
             {t->kids[0], t->kids[1], t->kids[2], t->kids[3]});
        return;
      case Tag::ElimCoprod:
        head(out, prec, "coprodind",
             {t->kids[0], t->kids[1], t->kids[2], t->kids[3]});
        return;
      case Tag::ElimSigma:
        head(out, prec, "total2ind", {t->kids[0], t->kids[1], t->kids[2]});
        return;
      case Tag::ElimPaths:
        head(out, prec, "pathsind", {t->kids[0], t->kids[1], t->kids[2]});
        return;
    }
  }

  static void open(std::string& out, int prec, int mine) {
    if (prec > mine) out += "(";
  }
  static void close(std::string& out, int prec, int mine) {
    if (prec > mine) out += ")";
  }

  void head(std::string& out, int prec, const char* name,
            std::vector<TermPtr> args) {
    open(out, prec, 1);
    out += name;
    for (auto& a : args) {
      out += " ";
      go(a, out, 2);
    }
    close(out, prec, 1);
  }

  static bool uses_var0(const TermPtr& t, uint32_t depth = 0) {
    if (t->tag == Tag::Var) return t->index == depth;
    for (size_t i = 0; i < t->kids.size(); ++i)
      if (uses_var0(t->kids[i], depth + binds_at(t->tag, i))) return true;
    return false;
  }

  // Remove the unused binder from a non-dependent codomain.
  static TermPtr lowered(const TermPtr& t) { return subst(t, mk::zero()); }
};

inline std::string pretty(const TermPtr& t) { return Printer().print(t); }

}  // namespace uvk

#endif  // UVK_PARSE_HPP
