#pragma once

// Surface syntax: lexer, recursive-descent parser and elaborator for .cd
// files. A file is a mode declaration, a signature block, and a sequence of
// named definitions with optional directives. Elaboration resolves each
// occurrence of a proof variable to its binder (annotating it with the bound
// formula), inlines references to earlier definitions, and uses the
// typechecker itself to compute the hypothesis types bound by case and
// unpack. Grammar-level failures carry line/column; name- and type-level
// failures carry a TypeError, so the driver can distinguish exit codes.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdk/typecheck.hpp"

namespace cdk {

struct ParseError {
  int line = 0;
  int col = 0;
  std::string expected;

  std::string render() const {
    return std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected;
  }
};

// Expected outcome of checking a definition, from a preceding #expect line.
struct Expectation {
  bool ok = true;
  std::string err_kind;  // meaningful when !ok
};

struct Definition {
  std::string name;
  Formula type;
  std::optional<Proof> term;      // elaborated, earlier defs inlined; present iff ok
  std::optional<TypeError> error; // elaboration or checking failure
  std::optional<Expectation> expect;
  int line = 0;

  bool ok() const { return term.has_value() && !error.has_value(); }
};

struct Directive {
  enum Kind { Check, Normalize, Translate, Extract } kind;
  std::string target;  // definition name
  int line = 0;
};

struct SourceFile {
  Mode mode = Mode::CD;
  Signature sig;
  std::vector<Definition> defs;
  std::vector<Directive> directives;

  const Definition* find_def(const std::string& name) const {
    for (auto& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  }
};

struct ParseResult {
  std::optional<SourceFile> file;
  std::optional<ParseError> parse_error;  // grammar level
  std::optional<TypeError> type_error;    // symbol/type level

  bool ok() const { return file.has_value(); }
};

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok {
  Ident, Number,
  KwFun, KwGen, KwCase, KwOf, KwInl, KwInr, KwPack, KwUnpack, KwAs, KwIn,
  KwEfq, KwForall, KwExists, KwBot, KwDef, KwConst, KwPred, KwD, KwF,
  DirMode, DirCheck, DirNormalize, DirTranslate, DirExtract, DirExpect,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Comma, Dot, Colon, ColonEq, FatArrow, Arrow, Tilde, Amp, Bar, At, Slash, Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct ParseErrorEx {
  ParseError err;
};
struct TypeErrorEx {
  TypeError err;
};

[[noreturn]] inline void fail_at(int line, int col, std::string expected) {
  throw ParseErrorEx{ParseError{line, col, std::move(expected)}};
}

inline bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int l = line, cl = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      col += (int)(j - i);
      i = j;
      Tok k = Tok::Ident;
      if (word == "fun") k = Tok::KwFun;
      else if (word == "gen") k = Tok::KwGen;
      else if (word == "case") k = Tok::KwCase;
      else if (word == "of") k = Tok::KwOf;
      else if (word == "inl") k = Tok::KwInl;
      else if (word == "inr") k = Tok::KwInr;
      else if (word == "pack") k = Tok::KwPack;
      else if (word == "unpack") k = Tok::KwUnpack;
      else if (word == "as") k = Tok::KwAs;
      else if (word == "in") k = Tok::KwIn;
      else if (word == "efq") k = Tok::KwEfq;
      else if (word == "forall") k = Tok::KwForall;
      else if (word == "exists") k = Tok::KwExists;
      else if (word == "bot") k = Tok::KwBot;
      else if (word == "def") k = Tok::KwDef;
      else if (word == "const") k = Tok::KwConst;
      else if (word == "pred") k = Tok::KwPred;
      else if (word == "D") k = Tok::KwD;
      else if (word == "F") k = Tok::KwF;
      push(k, std::move(word), l, cl);
      continue;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      push(Tok::Number, src.substr(i, j - i), l, cl);
      col += (int)(j - i);
      i = j;
      continue;
    }
    if (c == '#') {
      size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word = src.substr(i + 1, j - i - 1);
      col += (int)(j - i);
      i = j;
      Tok k;
      if (word == "mode") k = Tok::DirMode;
      else if (word == "check") k = Tok::DirCheck;
      else if (word == "normalize") k = Tok::DirNormalize;
      else if (word == "translate") k = Tok::DirTranslate;
      else if (word == "extract") k = Tok::DirExtract;
      else if (word == "expect") k = Tok::DirExpect;
      else fail_at(l, cl, "a directive (#mode, #check, #normalize, #translate, #extract, #expect)");
      push(k, "#" + word, l, cl);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two(':', '=')) { push(Tok::ColonEq, ":=", l, cl); i += 2; col += 2; continue; }
    if (two('=', '>')) { push(Tok::FatArrow, "=>", l, cl); i += 2; col += 2; continue; }
    if (two('-', '>')) { push(Tok::Arrow, "->", l, cl); i += 2; col += 2; continue; }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '@': k = Tok::At; break;
      case '/': k = Tok::Slash; break;
      case '-': k = Tok::Minus; break;
      default: fail_at(l, cl, "a valid token");
    }
    push(k, std::string(1, c), l, cl);
    ++i;
    ++col;
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser / elaborator
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  SourceFile parse_file() {
    SourceFile f;
    bool saw_def = false;
    std::optional<Expectation> pending_expect;
    while (!at(Tok::End)) {
      if (at(Tok::DirMode)) {
        Token t = next();
        if (saw_def) fail_at(t.line, t.col, "#mode before the first definition");
        f.mode = parse_mode();
      } else if (at(Tok::KwConst)) {
        next();
        f.sig.constants.insert(expect_ident("constant name"));
      } else if (at(Tok::KwFun)) {
        next();
        std::string name = expect_ident("function name");
        expect(Tok::Slash, "/");
        f.sig.functions[name] = expect_number("arity");
      } else if (at(Tok::KwPred)) {
        next();
        std::string name = expect_ident("predicate name");
        expect(Tok::Slash, "/");
        f.sig.predicates[name] = expect_number("arity");
      } else if (at(Tok::DirExpect)) {
        next();
        Expectation e;
        std::string what = expect_ident("ok or error");
        if (what == "ok") {
          e.ok = true;
        } else if (what == "error") {
          e.ok = false;
          e.err_kind = expect_ident("an error kind");
        } else {
          fail_at(prev().line, prev().col, "ok or error");
        }
        pending_expect = e;
      } else if (at(Tok::KwDef)) {
        saw_def = true;
        f.defs.push_back(parse_def(f));
        f.defs.back().expect = pending_expect;
        pending_expect.reset();
      } else if (at(Tok::DirCheck) || at(Tok::DirNormalize) || at(Tok::DirTranslate) ||
                 at(Tok::DirExtract)) {
        Token t = next();
        Directive d;
        d.kind = t.kind == Tok::DirCheck        ? Directive::Check
                 : t.kind == Tok::DirNormalize  ? Directive::Normalize
                 : t.kind == Tok::DirTranslate  ? Directive::Translate
                                                : Directive::Extract;
        d.target = expect_ident("a definition name");
        d.line = t.line;
        f.directives.push_back(d);
      } else {
        fail_at(peek().line, peek().col,
                "a declaration (#mode, const, fun, pred, def) or directive");
      }
    }
    if (pending_expect)
      fail_at(peek().line, peek().col, "a definition after #expect");
    for (auto& d : f.directives) {
      if (!f.find_def(d.target))
        throw TypeErrorEx{TypeError{ErrKind::UnboundVariable,
                                    {},
                                    "directive references unknown definition " + d.target,
                                    std::nullopt,
                                    std::nullopt}};
    }
    return f;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  // Proof variables in scope, innermost last.
  std::vector<std::pair<std::string, Formula>> scope_;
  // Successfully checked definitions available for inlining.
  std::map<std::string, std::pair<Formula, Proof>> def_env_;

  const Token& peek() const { return toks_[pos_]; }
  const Token& prev() const { return toks_[pos_ ? pos_ - 1 : 0]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token next() { return toks_[pos_++]; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const std::string& what) {
    if (!eat(k)) fail_at(peek().line, peek().col, what);
  }
  std::string expect_ident(const std::string& what) {
    if (!at(Tok::Ident)) fail_at(peek().line, peek().col, what);
    return next().text;
  }
  int expect_number(const std::string& what) {
    if (!at(Tok::Number)) fail_at(peek().line, peek().col, what);
    return std::stoi(next().text);
  }

  Mode parse_mode() {
    if (at(Tok::Ident) && peek().text == "cd") {
      next();
      return Mode::CD;
    }
    if (at(Tok::Ident) && peek().text == "il") {
      next();
      expect(Tok::Minus, "cd or il-bot");
      if (!at(Tok::KwBot)) fail_at(peek().line, peek().col, "cd or il-bot");
      next();
      return Mode::IL_BOT;
    }
    fail_at(peek().line, peek().col, "cd or il-bot");
  }

  // ---- first-order terms -------------------------------------------------

  Term parse_term(const Signature& sig) {
    Token t = peek();
    std::string name = expect_ident("a first-order term");
    if (eat(Tok::LParen)) {
      std::vector<Term> args;
      if (!at(Tok::RParen)) {
        args.push_back(parse_term(sig));
        while (eat(Tok::Comma)) args.push_back(parse_term(sig));
      }
      expect(Tok::RParen, ")");
      return t_app(name, std::move(args));
    }
    if (sig.has_const(name)) return t_const(name);
    if (sig.fn_arity(name))
      throw TypeErrorEx{TypeError{
          ErrKind::ArityError,
          {},
          "function " + name + " used without arguments (line " +
              std::to_string(t.line) + ")",
          std::nullopt,
          std::nullopt}};
    return t_var(name);
  }

  // ---- formulas ----------------------------------------------------------

  Formula parse_formula(const Signature& sig) { return parse_imp(sig); }

  Formula parse_imp(const Signature& sig) {
    Formula l = parse_or(sig);
    if (eat(Tok::Arrow)) return f_imp(std::move(l), parse_imp(sig));
    return l;
  }
  Formula parse_or(const Signature& sig) {
    Formula l = parse_and(sig);
    while (eat(Tok::Bar)) l = f_or(std::move(l), parse_and(sig));
    return l;
  }
  Formula parse_and(const Signature& sig) {
    Formula l = parse_funary(sig);
    while (eat(Tok::Amp)) l = f_and(std::move(l), parse_funary(sig));
    return l;
  }
  Formula parse_funary(const Signature& sig) {
    if (eat(Tok::Tilde)) return f_neg(parse_funary(sig));
    if (eat(Tok::KwForall)) {
      std::string v = expect_ident("a bound variable");
      expect(Tok::Dot, ".");
      return f_forall(std::move(v), parse_funary(sig));
    }
    if (eat(Tok::KwExists)) {
      std::string v = expect_ident("a bound variable");
      expect(Tok::Dot, ".");
      return f_exists(std::move(v), parse_funary(sig));
    }
    return parse_fprimary(sig);
  }
  Formula parse_fprimary(const Signature& sig) {
    if (eat(Tok::KwBot)) return f_bot();
    if (eat(Tok::LParen)) {
      Formula f = parse_formula(sig);
      expect(Tok::RParen, ")");
      return f;
    }
    if (at(Tok::Ident)) {
      std::string name = next().text;
      std::vector<Term> args;
      if (eat(Tok::LParen)) {
        if (!at(Tok::RParen)) {
          args.push_back(parse_term(sig));
          while (eat(Tok::Comma)) args.push_back(parse_term(sig));
        }
        expect(Tok::RParen, ")");
      }
      return f_atom(std::move(name), std::move(args));
    }
    fail_at(peek().line, peek().col, "a formula");
  }

  // ---- proofs ------------------------------------------------------------

  Context scope_context() const {
    Context ctx;
    // innermost binding wins; walk outside-in and overwrite by re-adding later
    std::map<std::string, Formula> last;
    std::vector<std::string> order;
    for (auto& [n, ty] : scope_) {
      if (!last.count(n)) order.push_back(n);
      last.insert_or_assign(n, ty);
    }
    for (auto& n : order) ctx = ctx.extended(n, last.at(n));
    return ctx;
  }

  Result<Formula> infer_here(const SourceFile& f, const Proof& p) const {
    return infer(f.sig, scope_context(), p, f.mode);
  }

  [[noreturn]] void type_fail(TypeError e) { throw TypeErrorEx{std::move(e)}; }

  bool starts_proof_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::KwD:
      case Tok::KwF:
      case Tok::KwEfq:
      case Tok::KwPack:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Proof parse_proof(const SourceFile& f) {
    switch (peek().kind) {
      case Tok::KwFun: {
        next();
        expect(Tok::LParen, "(");
        std::string x = expect_ident("a hypothesis name");
        expect(Tok::Colon, ":");
        Formula a = parse_formula(f.sig);
        expect(Tok::RParen, ")");
        expect(Tok::FatArrow, "=>");
        scope_.emplace_back(x, a);
        Proof body = parse_proof(f);
        scope_.pop_back();
        return p_lam(x, a, body);
      }
      case Tok::KwGen: {
        next();
        std::string v = expect_ident("a bound variable");
        expect(Tok::FatArrow, "=>");
        return p_folam(v, parse_proof(f));
      }
      case Tok::KwCase: {
        Token kw = next();
        Proof scrut = parse_proof(f);
        expect(Tok::KwOf, "of");
        expect(Tok::LBrace, "{");
        auto sty = infer_here(f, scrut);
        if (!sty) type_fail(sty.error());
        auto* disj = as<Formula::Or>(*sty);
        if (!disj)
          type_fail(TypeError{ErrKind::Mismatch,
                              {},
                              "case scrutinee (line " + std::to_string(kw.line) +
                                  ") has type " + print(*sty) +
                                  ", which is not a disjunction",
                              std::nullopt,
                              std::nullopt});
        expect(Tok::KwInl, "inl");
        std::string lv = expect_ident("a hypothesis name");
        expect(Tok::FatArrow, "=>");
        scope_.emplace_back(lv, disj->l);
        Proof lb = parse_proof(f);
        scope_.pop_back();
        expect(Tok::Bar, "|");
        expect(Tok::KwInr, "inr");
        std::string rv = expect_ident("a hypothesis name");
        expect(Tok::FatArrow, "=>");
        scope_.emplace_back(rv, disj->r);
        Proof rb = parse_proof(f);
        scope_.pop_back();
        expect(Tok::RBrace, "}");
        return p_case(scrut, lv, lb, rv, rb);
      }
      case Tok::KwUnpack: {
        Token kw = next();
        Proof scrut = parse_proof(f);
        expect(Tok::KwAs, "as");
        expect(Tok::LParen, "(");
        std::string fov = expect_ident("a bound variable");
        expect(Tok::Comma, ",");
        std::string pv = expect_ident("a hypothesis name");
        expect(Tok::RParen, ")");
        expect(Tok::KwIn, "in");
        auto sty = infer_here(f, scrut);
        if (!sty) type_fail(sty.error());
        auto* ex = as<Formula::Exists>(*sty);
        if (!ex)
          type_fail(TypeError{ErrKind::Mismatch,
                              {},
                              "unpack scrutinee (line " + std::to_string(kw.line) +
                                  ") has type " + print(*sty) +
                                  ", which is not existentially quantified",
                              std::nullopt,
                              std::nullopt});
        Formula hyp = fo_subst(ex->body, t_var(fov), ex->var);
        scope_.emplace_back(pv, hyp);
        Proof body = parse_proof(f);
        scope_.pop_back();
        return p_unpack(scrut, fov, pv, body);
      }
      case Tok::KwInl:
      case Tok::KwInr: {
        int idx = peek().kind == Tok::KwInl ? 0 : 1;
        next();
        expect(Tok::LBrack, "[");
        Formula ann = parse_formula(f.sig);
        expect(Tok::RBrack, "]");
        return p_inj(idx, parse_proof_atom(f), ann);
      }
      default:
        return parse_appchain(f);
    }
  }

  Proof parse_appchain(const SourceFile& f) {
    Proof cur = parse_proof_atom(f);
    for (;;) {
      if (starts_proof_atom()) {
        cur = p_app(cur, parse_proof_atom(f));
      } else if (eat(Tok::At)) {
        cur = p_foapp(cur, parse_term(f.sig));
      } else if (at(Tok::Dot)) {
        next();
        if (!at(Tok::Number) || (peek().text != "0" && peek().text != "1"))
          fail_at(peek().line, peek().col, "projection index 0 or 1");
        cur = p_proj(cur, next().text == "0" ? 0 : 1);
      } else {
        return cur;
      }
    }
  }

  Proof parse_proof_atom(const SourceFile& f) {
    switch (peek().kind) {
      case Tok::Ident: {
        Token t = next();
        // innermost binder first, then earlier definitions (inlined)
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.text) return p_var(t.text, it->second);
        auto def = def_env_.find(t.text);
        if (def != def_env_.end()) return def->second.second;
        type_fail(TypeError{ErrKind::UnboundVariable,
                            {},
                            "unbound proof variable " + t.text + " (line " +
                                std::to_string(t.line) + ")",
                            std::nullopt,
                            std::nullopt});
      }
      case Tok::KwD: {
        next();
        expect(Tok::LBrack, "[");
        Formula inst = parse_formula(f.sig);
        expect(Tok::RBrack, "]");
        return p_cd(inst);
      }
      case Tok::KwF:
        next();
        return p_falsity();
      case Tok::KwEfq: {
        next();
        expect(Tok::LBrack, "[");
        Formula target = parse_formula(f.sig);
        expect(Tok::RBrack, "]");
        expect(Tok::LParen, "(");
        Proof body = parse_proof(f);
        expect(Tok::RParen, ")");
        return p_efq(target, body);
      }
      case Tok::KwPack: {
        next();
        expect(Tok::LBrack, "[");
        Formula ann = parse_formula(f.sig);
        expect(Tok::RBrack, "]");
        expect(Tok::LParen, "(");
        Term witness = parse_term(f.sig);
        expect(Tok::Comma, ",");
        Proof body = parse_proof(f);
        expect(Tok::RParen, ")");
        return p_pack(witness, body, ann);
      }
      case Tok::LParen: {
        next();
        Proof first = parse_proof(f);
        if (eat(Tok::Comma)) {
          Proof second = parse_proof(f);
          expect(Tok::RParen, ")");
          return p_pair(first, second);
        }
        expect(Tok::RParen, ")");
        return first;
      }
      default:
        fail_at(peek().line, peek().col, "a proof term");
    }
  }

  // ---- definitions -------------------------------------------------------

  Definition parse_def(const SourceFile& f) {
    Token kw = next();  // 'def'
    std::string name = expect_ident("a definition name");
    expect(Tok::Colon, ":");
    Formula type = parse_formula(f.sig);
    Definition d{std::move(name), std::move(type), std::nullopt, std::nullopt,
                 std::nullopt, kw.line};
    expect(Tok::ColonEq, ":=");
    size_t body_start = pos_;
    try {
      Proof term = parse_proof(f);
      auto res = check(f.sig, Context{}, term, d.type, f.mode);
      if (res.ok()) {
        d.term = term;
        def_env_.emplace(d.name, std::make_pair(d.type, term));
      } else {
        d.term = term;
        d.error = res.error();
      }
    } catch (TypeErrorEx& e) {
      // The body references something unknown or has a shape the elaborator
      // cannot type; record the failure and skip past the body so later
      // definitions can still be processed.
      d.error = e.err;
      scope_.clear();
      pos_ = body_start;
      skip_proof_tokens();
    }
    return d;
  }

  // Advances past the remainder of a definition body after an elaboration
  // failure: consume tokens until the next top-level item.
  void skip_proof_tokens() {
    int depth = 0;
    for (;;) {
      switch (peek().kind) {
        case Tok::End:
          return;
        case Tok::LParen:
        case Tok::LBrack:
        case Tok::LBrace:
          ++depth;
          next();
          break;
        case Tok::RParen:
        case Tok::RBrack:
        case Tok::RBrace:
          --depth;
          next();
          break;
        case Tok::KwDef:
        case Tok::KwConst:
        case Tok::KwPred:
        case Tok::DirMode:
        case Tok::DirCheck:
        case Tok::DirNormalize:
        case Tok::DirTranslate:
        case Tok::DirExtract:
        case Tok::DirExpect:
          if (depth <= 0) return;
          next();
          break;
        default:
          next();
          break;
      }
    }
  }
};

}  // namespace detail

inline ParseResult parse_source(const std::string& text) {
  ParseResult r;
  try {
    detail::Parser p(text);
    r.file = p.parse_file();
  } catch (detail::ParseErrorEx& e) {
    r.parse_error = e.err;
  } catch (detail::TypeErrorEx& e) {
    r.type_error = e.err;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Source-file printing
// ---------------------------------------------------------------------------

// Prints a file whose definitions all elaborated; the result reparses to the
// same definitions (with cross-references already inlined).
inline std::string print_source(const SourceFile& f) {
  std::string out = "#mode " + mode_name(f.mode) + "\n\n";
  for (auto& c : f.sig.constants)
    if (c != "dum") out += "const " + c + "\n";
  for (auto& [name, arity] : f.sig.functions)
    out += "fun " + name + "/" + std::to_string(arity) + "\n";
  for (auto& [name, arity] : f.sig.predicates)
    out += "pred " + name + "/" + std::to_string(arity) + "\n";
  out += "\n";
  for (auto& d : f.defs) {
    if (!d.term) continue;  // a body the elaborator rejected has no term to print
    if (d.expect) {
      out += d.expect->ok ? std::string("#expect ok")
                          : "#expect error " + d.expect->err_kind;
      out += "\n";
    }
    out += "def " + d.name + " : " + print(d.type) + " := " + print(*d.term) + "\n\n";
  }
  for (auto& dir : f.directives) {
    const char* k = dir.kind == Directive::Check       ? "#check"
                    : dir.kind == Directive::Normalize ? "#normalize"
                    : dir.kind == Directive::Translate ? "#translate"
                                                       : "#extract";
    out += std::string(k) + " " + dir.target + "\n";
  }
  return out;
}

}  // namespace cdk
