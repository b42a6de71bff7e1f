#include "sltl/parser.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace sltl {

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      col(c),
      message(msg) {}

namespace {

// ===========================================================================
// Lexer

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* const syms[] = {"<->", "->", "||", "!=", "|", "&", "!", "(", ")", "[",
                                     "]",   ",",  ";",  ":",  "{", "}", "="};
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    bool matched = false;
    for (const char* s : syms) {
      std::string sym(s);
      if (src.compare(i, sym.size(), sym) == 0) {
        t.kind = Tok::Sym;
        t.text = sym;
        advance(sym.size());
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "env" || s == "sys" || s == "init" || s == "safety" || s == "true" ||
         s == "false" || s == "X" || s == "G" || s == "F";
}

// ===========================================================================
// Recursive descent

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature* sig) : toks_(std::move(toks)), sig_(sig) {}

  SpecFile spec() {
    SpecFile out;
    while (peek_ident("env") || peek_ident("sys")) declaration();
    out.init = top();
    if (peek_ident("init")) {
      take();
      expect(":");
      in_init_ = true;
      out.init = formula();
      in_init_ = false;
      expect(";");
    }
    if (!peek_ident("safety")) fail(cur(), "expected 'safety:'");
    take();
    expect(":");
    out.safety = formula();
    expect(";");
    if (cur().kind != Tok::End) fail(cur(), "unexpected input after safety formula");
    out.sig = *sig_;
    return out;
  }

  Formula formula_only() {
    Formula f = formula();
    if (cur().kind != Tok::End) fail(cur(), "unexpected input after formula");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature* sig_;
  bool in_init_ = false;

  const Token& cur() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  bool peek_sym(const char* s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool peek_ident(const char* s) const { return cur().kind == Tok::Ident && cur().text == s; }

  void expect(const char* s) {
    if (!peek_sym(s)) fail(cur(), std::string("expected '") + s + "'" + found());
    take();
  }

  std::string found() const {
    if (cur().kind == Tok::End) return " but reached end of input";
    return " but found '" + cur().text + "'";
  }

  Token expect_name() {
    if (cur().kind != Tok::Ident || is_keyword(cur().text))
      fail(cur(), "expected an identifier" + found());
    return take();
  }

  void declaration() {
    Owner owner = take().text == "env" ? Owner::Environment : Owner::System;
    std::vector<Token> names{expect_name()};
    while (peek_sym(",")) {
      take();
      names.push_back(expect_name());
    }
    std::vector<std::string> domain;
    if (peek_sym(":")) {
      take();
      Token brace = cur();
      expect("{");
      domain.push_back(expect_name().text);
      while (peek_sym(",")) {
        take();
        domain.push_back(expect_name().text);
      }
      expect("}");
      if (domain.size() < 2) fail(brace, "an enumerated domain needs at least two constants");
      for (std::size_t i = 0; i < domain.size(); ++i)
        for (std::size_t j = i + 1; j < domain.size(); ++j)
          if (domain[i] == domain[j]) fail(brace, "duplicate constant '" + domain[i] + "'");
    }
    expect(";");
    for (const auto& n : names) {
      if (sig_->find(n.text) >= 0) fail(n, "variable '" + n.text + "' declared twice");
      sig_->add(VarDecl{n.text, owner, domain});
    }
  }

  Formula formula() { return parse_iff(); }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek_sym("<->")) {
      take();
      f = iff(f, parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_dor();
    if (peek_sym("->")) {
      take();
      return implies(f, parse_implies());
    }
    return f;
  }

  Formula parse_dor() {
    Formula f = parse_or();
    if (!peek_sym("||")) return f;
    std::vector<Formula> parts{f};
    while (peek_sym("||")) {
      take();
      parts.push_back(parse_or());
    }
    return ddisj(std::move(parts));
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (peek_sym("|")) {
      take();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts[0] : disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (peek_sym("&")) {
      take();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? parts[0] : conj(std::move(parts));
  }

  std::pair<int, int> interval() {
    Token open = cur();
    expect("[");
    int lo = number();
    expect(",");
    int hi = number();
    expect("]");
    if (lo > hi) fail(open, "empty interval [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    return {lo, hi};
  }

  int number() {
    if (cur().kind != Tok::Number) fail(cur(), "expected a number" + found());
    Token t = take();
    long long v = 0;
    for (char c : t.text) {
      v = v * 10 + (c - '0');
      if (v > std::numeric_limits<int>::max() / 4) fail(t, "number too large");
    }
    return static_cast<int>(v);
  }

  void no_temporal(const Token& t) {
    if (in_init_) fail(t, "temporal operator in initial formula");
  }

  Formula parse_unary() {
    if (peek_sym("!")) {
      take();
      return negate(parse_unary());
    }
    if (peek_ident("X")) {
      no_temporal(take());
      return next(1, parse_unary());
    }
    if (peek_ident("G") || peek_ident("F")) {
      Token t = take();
      no_temporal(t);
      auto [lo, hi] = interval();
      Formula sub = parse_unary();
      return t.text == "G" ? always(lo, hi, sub) : eventually(lo, hi, sub);
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (peek_sym("(")) {
      take();
      Formula f = formula();
      expect(")");
      return f;
    }
    if (peek_ident("true")) {
      take();
      return top();
    }
    if (peek_ident("false")) {
      take();
      return bottom();
    }
    if (cur().kind != Tok::Ident || is_keyword(cur().text))
      fail(cur(), "expected a formula" + found());
    Token name = take();
    int v = sig_->find(name.text);
    if (v < 0) fail(name, "undeclared variable '" + name.text + "'");
    const VarDecl& d = sig_->vars[v];
    if (peek_sym("=") || peek_sym("!=")) {
      Token op = take();
      if (d.is_bool()) fail(op, "variable '" + d.name + "' is boolean");
      Token c = expect_name();
      int idx = -1;
      for (std::size_t i = 0; i < d.domain.size(); ++i)
        if (d.domain[i] == c.text) idx = static_cast<int>(i);
      if (idx < 0) fail(c, "'" + c.text + "' is not a constant of '" + d.name + "'");
      return op.text == "=" ? eq(v, idx) : neq(v, idx);
    }
    if (!d.is_bool()) fail(name, "enumerated variable '" + d.name + "' must be compared with '='");
    return pos(v);
  }
};

// ===========================================================================
// Rendering

int level(const Formula& f) {
  switch (f->op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::DOr: return 3;
    case Op::Or: return 4;
    case Op::And: return 5;
    case Op::Not:
    case Op::Next:
    case Op::Always:
    case Op::Eventually: return 6;
    case Op::Lit: return f->lit.kind == LitKind::Neg ? 6 : 7;
    default: return 7;
  }
}

std::string render_at(const Formula& f, const Signature& sig, int min_level);

std::string join(const Formula& f, const Signature& sig, const char* sep, int kid_level) {
  std::string s;
  for (std::size_t i = 0; i < f->kids.size(); ++i) {
    if (i) s += sep;
    s += render_at(f->kids[i], sig, kid_level);
  }
  return s;
}

std::string body(const Formula& f, const Signature& sig) {
  switch (f->op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Lit: return render_literal(f->lit, sig);
    case Op::Not: return "!" + render_at(f->kids[0], sig, 6);
    case Op::And: return join(f, sig, " & ", 6);
    case Op::Or: return join(f, sig, " | ", 5);
    case Op::DOr:
      if (f->kids.size() == 1) return "false || " + render_at(f->kids[0], sig, 4);
      return join(f, sig, " || ", 4);
    case Op::Next: {
      std::string s;
      for (int i = 0; i < f->lo; ++i) s += "X ";
      return s + render_at(f->kids[0], sig, 6);
    }
    case Op::Always:
    case Op::Eventually:
      return std::string(f->op == Op::Always ? "G[" : "F[") + std::to_string(f->lo) + "," +
             std::to_string(f->hi) + "] " + render_at(f->kids[0], sig, 6);
    case Op::Implies:
      return render_at(f->kids[0], sig, 3) + " -> " + render_at(f->kids[1], sig, 2);
    case Op::Iff:
      return render_at(f->kids[0], sig, 1) + " <-> " + render_at(f->kids[1], sig, 2);
  }
  return "?";
}

std::string render_at(const Formula& f, const Signature& sig, int min_level) {
  std::string s = body(f, sig);
  if (level(f) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  Signature sig;
  Parser p(lex(text), &sig);
  return p.spec();
}

Formula parse_formula(const std::string& text, const Signature& sig) {
  Signature copy = sig;
  Parser p(lex(text), &copy);
  return p.formula_only();
}

std::string render_literal(const Literal& l, const Signature& sig) {
  const VarDecl& d = sig.vars.at(l.var);
  switch (l.kind) {
    case LitKind::Pos: return d.name;
    case LitKind::Neg: return "!" + d.name;
    case LitKind::Eq: return d.name + " = " + d.domain.at(l.val);
    case LitKind::NotEq: return d.name + " != " + d.domain.at(l.val);
  }
  return "?";
}

std::string render(const Formula& f, const Signature& sig) { return render_at(f, sig, 0); }

std::string render_spec(const SpecFile& spec) {
  std::ostringstream os;
  for (const auto& d : spec.sig.vars) {
    os << (d.owner == Owner::Environment ? "env " : "sys ") << d.name;
    if (!d.is_bool()) {
      os << " : {";
      for (std::size_t i = 0; i < d.domain.size(); ++i) os << (i ? ", " : "") << d.domain[i];
      os << "}";
    }
    os << ";\n";
  }
  os << "init: " << render(spec.init, spec.sig) << ";\n";
  os << "safety: " << render(spec.safety, spec.sig) << ";\n";
  return os.str();
}

}  // namespace sltl
