#include "cochoice/syntax.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace cochoice {

namespace {

std::string describe(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

}  // namespace

ParseError::ParseError(Diagnostic d) : std::runtime_error(describe(d)), diag_(std::move(d)) {}

namespace {

enum class Tok : unsigned char {
  Ident,
  Number,
  Backslash,
  BigLambda,  // /\ .
  Dot,
  Colon,
  LParen,
  RParen,
  Bars,        // ||
  LBrace,
  RBrace,
  BraceArrow,  // }->
  DashBrace,   // -{
  Arrow,       // ->
  At,
  Plus,
  Minus,
  Star,
  Comma,
  End,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Backslash: return "'\\'";
    case Tok::BigLambda: return "'/\\'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bars: return "'||'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::BraceArrow: return "'}->'";
    case Tok::DashBrace: return "'-{'";
    case Tok::Arrow: return "'->'";
    case Tok::At: return "'@'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\''; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { lex(); }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg, const char* code) const {
    Diagnostic d;
    d.offset = offset;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++d.line;
        d.column = 1;
      } else {
        ++d.column;
      }
    }
    d.message = msg;
    d.code = code;
    throw ParseError(std::move(d));
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok t) {
    if (!at(t)) {
      fail(peek().offset, std::string("expected ") + tok_name(t) + ", found " + describe_tok(peek()), "E-SYNTAX");
    }
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek().offset, "expected '" + std::string(w) + "', found " + describe_tok(peek()), "E-SYNTAX");
    take();
  }

  void finish() {
    if (!at(Tok::End)) fail(peek().offset, "unexpected " + describe_tok(peek()), "E-TRAILING");
  }

  static std::string describe_tok(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
    return tok_name(t.kind);
  }

  // -- names and effects -----------------------------------------------------

  static bool is_keyword(const std::string& s) {
    return s == "add" || s == "nat" || s == "all" || s == "fix" || s == "eps";
  }

  bool at_name_atom() const { return at(Tok::Ident) && !is_keyword(peek().text); }

  NameAtom name_atom() {
    Token t = expect(Tok::Ident);
    if (t.text == "o") return NameAtom::on();
    if (t.text == "b") return NameAtom::off();
    if (is_keyword(t.text)) fail(t.offset, "'" + t.text + "' is not a name atom", "E-RESERVED");
    return NameAtom::variable(t.text);
  }

  // eps is the unit and may appear anywhere in a word.
  Name name() {
    if (!at_name_atom() && !at_word("eps")) {
      fail(peek().offset, "expected a name, found " + describe_tok(peek()), "E-SYNTAX");
    }
    Name n;
    while (at_name_atom() || at_word("eps")) {
      if (at_word("eps")) {
        take();
      } else {
        n += name_atom();
      }
    }
    return n;
  }

  Effect effect() {
    Effect e = effect_cat();
    while (at(Tok::Plus)) {
      take();
      e = Effect::alt(e, effect_cat());
    }
    return e;
  }

  bool at_effect_start() const {
    return at(Tok::LParen) || at_word("eps") || at_name_atom() || (at(Tok::LBrace) && peek(1).kind == Tok::RBrace);
  }

  Effect effect_cat() {
    if (!at_effect_start()) fail(peek().offset, "expected an effect, found " + describe_tok(peek()), "E-SYNTAX");
    Effect e = effect_post();
    while (at_effect_start()) e = Effect::concat(e, effect_post());
    return e;
  }

  Effect effect_post() {
    Effect e = effect_prim();
    while (at(Tok::Star)) {
      take();
      e = Effect::star(e);
    }
    return e;
  }

  Effect effect_prim() {
    if (at(Tok::LBrace)) {
      take();
      expect(Tok::RBrace);
      return Effect::empty();
    }
    if (at_word("eps")) {
      take();
      return Effect::eps();
    }
    if (at(Tok::LParen)) {
      take();
      Effect e = effect();
      expect(Tok::RParen);
      return e;
    }
    return Effect::atom(name_atom());
  }

  // Effect between braces; `{}` is the empty language.
  Effect braced_effect(Tok close) {
    expect(Tok::LBrace);
    if (at(close)) {
      take();
      return Effect::empty();
    }
    Effect e = effect();
    expect(close);
    return e;
  }

  // -- types -------------------------------------------------------------------

  std::string binder_ident() {
    Token t = expect(Tok::Ident);
    if (is_keyword(t.text) || t.text == "o" || t.text == "b") {
      fail(t.offset, "'" + t.text + "' is reserved", "E-RESERVED");
    }
    return t.text;
  }

  SrcType src_type() {
    SrcType dom = src_type_prim();
    if (at(Tok::Arrow)) {
      take();
      return SrcType::arrow(dom, src_type());
    }
    return dom;
  }

  SrcType src_type_prim() {
    if (at(Tok::LParen)) {
      take();
      SrcType t = src_type();
      expect(Tok::RParen);
      return t;
    }
    expect_word("nat");
    return SrcType::nat();
  }

  TgtType tgt_type() {
    if (at_word("all")) {
      take();
      std::string a = binder_ident();
      expect(Tok::Dot);
      Effect lat = braced_effect(Tok::RBrace);
      return TgtType::forall(a, lat, tgt_type());
    }
    TgtType dom = tgt_type_prim();
    if (at(Tok::Arrow)) {
      take();
      return TgtType::arrow(dom, Effect::empty(), tgt_type());
    }
    if (at(Tok::DashBrace)) {
      take();
      Effect lat = Effect::empty();
      if (!at(Tok::BraceArrow)) lat = effect();
      expect(Tok::BraceArrow);
      return TgtType::arrow(dom, lat, tgt_type());
    }
    return dom;
  }

  TgtType tgt_type_prim() {
    if (at(Tok::LParen)) {
      take();
      TgtType t = tgt_type();
      expect(Tok::RParen);
      return t;
    }
    expect_word("nat");
    return TgtType::nat();
  }

  // -- source terms ------------------------------------------------------------

  bool at_term_atom() const {
    if (at(Tok::LParen) || at(Tok::Number)) return true;
    if (!at(Tok::Ident)) return false;
    const auto& s = peek().text;
    return s == "add" || !is_keyword(s);
  }

  bool at_binder() const { return at(Tok::Backslash) || at(Tok::BigLambda) || at_word("fix"); }

  std::uint64_t number() {
    Token t = expect(Tok::Number);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(t.offset, "numeral out of range", "E-NUMBER");
    return v;
  }

  SrcExpr src_expr() {
    if (at_binder()) return src_binder();
    SrcExpr e = src_atom();
    while (true) {
      if (at_term_atom()) {
        e = SrcExpr::app(e, src_atom());
      } else if (at_binder()) {
        e = SrcExpr::app(e, src_binder());
        return e;
      } else {
        return e;
      }
    }
  }

  SrcExpr src_binder() {
    if (at(Tok::BigLambda)) fail(peek().offset, "name abstraction is not source syntax", "E-SYNTAX");
    bool is_fix = at_word("fix");
    take();
    std::string x = binder_ident();
    expect(Tok::Colon);
    SrcType t = src_type();
    expect(Tok::Dot);
    SrcExpr body = src_expr();
    return is_fix ? SrcExpr::fix(x, t, body) : SrcExpr::abs(x, t, body);
  }

  SrcExpr src_atom() {
    if (at(Tok::Number)) return SrcExpr::nat(number());
    if (at(Tok::LParen)) {
      take();
      SrcExpr e = src_expr();
      if (at(Tok::Bars)) {
        take();
        if (at(Tok::LBrace)) fail(peek().offset, "named choice is not source syntax", "E-SYNTAX");
        SrcExpr r = src_expr();
        expect(Tok::RParen);
        return SrcExpr::choice(e, r);
      }
      expect(Tok::RParen);
      return e;
    }
    if (at_word("add")) {
      take();
      return SrcExpr::add();
    }
    if (at(Tok::Ident) && (peek().text == "o" || peek().text == "b")) {
      fail(peek().offset, "'" + peek().text + "' is reserved", "E-RESERVED");
    }
    if (at_term_atom()) return SrcExpr::var(take().text);
    fail(peek().offset, "expected an expression, found " + describe_tok(peek()), "E-SYNTAX");
  }

  // -- target terms ------------------------------------------------------------

  TgtExpr tgt_expr() {
    if (at_binder()) return tgt_binder();
    TgtExpr e = tgt_atom();
    while (true) {
      if (at(Tok::At)) {
        take();
        if (at(Tok::LParen)) {
          take();
          Name n = name();
          expect(Tok::RParen);
          e = TgtExpr::name_app(e, n);
        } else if (at_word("eps")) {
          take();
          e = TgtExpr::name_app(e, Name::eps());
        } else {
          e = TgtExpr::name_app(e, Name{name_atom()});
        }
      } else if (at_term_atom()) {
        e = TgtExpr::app(e, tgt_atom());
      } else if (at_binder()) {
        return TgtExpr::app(e, tgt_binder());
      } else {
        return e;
      }
    }
  }

  TgtExpr tgt_binder() {
    if (at(Tok::BigLambda)) {
      take();
      std::string a = binder_ident();
      expect(Tok::Dot);
      return TgtExpr::name_abs(a, tgt_expr());
    }
    bool is_fix = at_word("fix");
    take();
    std::string x = binder_ident();
    expect(Tok::Colon);
    TgtType t = tgt_type();
    expect(Tok::Dot);
    TgtExpr body = tgt_expr();
    return is_fix ? TgtExpr::fix(x, t, body) : TgtExpr::abs(x, t, body);
  }

  TgtExpr tgt_atom() {
    if (at(Tok::Number)) return TgtExpr::nat(number());
    if (at(Tok::LParen)) {
      take();
      TgtExpr e = tgt_expr();
      if (at(Tok::Bars)) {
        take();
        expect(Tok::LBrace);
        Name n = name();
        expect(Tok::RBrace);
        TgtExpr r = tgt_expr();
        expect(Tok::RParen);
        return TgtExpr::choice(e, n, r);
      }
      expect(Tok::RParen);
      return e;
    }
    if (at_word("add")) {
      take();
      return TgtExpr::add();
    }
    if (at(Tok::Ident) && (peek().text == "o" || peek().text == "b")) {
      fail(peek().offset, "'" + peek().text + "' is reserved", "E-RESERVED");
    }
    if (at_term_atom()) return TgtExpr::var(take().text);
    fail(peek().offset, "expected an expression, found " + describe_tok(peek()), "E-SYNTAX");
  }

  // -- worlds ------------------------------------------------------------------

  World world() {
    World w;
    if (at(Tok::End)) return w;
    while (true) {
      Name n = name();
      if (at(Tok::Plus)) {
        w.insert(n, Polarity::Plus);
      } else if (at(Tok::Minus)) {
        w.insert(n, Polarity::Minus);
      } else {
        fail(peek().offset, "expected '+' or '-' after a world name", "E-SYNTAX");
      }
      take();
      if (!at(Tok::Comma)) break;
      take();
    }
    return w;
  }

 private:
  void lex() {
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t at, std::size_t len) {
      toks_.push_back({k, at, std::string(text_.substr(at, len))});
      i = at + len;
    };
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') ++i;
        continue;
      }
      auto next_is = [&](std::string_view s) { return text_.substr(i, s.size()) == s; };
      if (ident_start(c)) {
        std::size_t j = i + 1;
        while (j < text_.size() && ident_char(text_[j])) ++j;
        push(Tok::Ident, i, j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
        std::size_t j = i + 1;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])) != 0) ++j;
        push(Tok::Number, i, j - i);
      } else if (next_is("/\\")) {
        push(Tok::BigLambda, i, 2);
      } else if (next_is("||")) {
        push(Tok::Bars, i, 2);
      } else if (next_is("}->")) {
        push(Tok::BraceArrow, i, 3);
      } else if (next_is("-{")) {
        push(Tok::DashBrace, i, 2);
      } else if (next_is("->")) {
        push(Tok::Arrow, i, 2);
      } else {
        Tok k;
        switch (c) {
          case '\\': k = Tok::Backslash; break;
          case '.': k = Tok::Dot; break;
          case ':': k = Tok::Colon; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case '{': k = Tok::LBrace; break;
          case '}': k = Tok::RBrace; break;
          case '@': k = Tok::At; break;
          case '+': k = Tok::Plus; break;
          case '-': k = Tok::Minus; break;
          case '*': k = Tok::Star; break;
          case ',': k = Tok::Comma; break;
          default:
            fail(i, std::string("unexpected character '") + c + "'", "E-LEX");
        }
        push(k, i, 1);
      }
    }
    toks_.push_back({Tok::End, text_.size(), {}});
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class F>
auto parse_all(std::string_view text, F f) {
  Parser p(text);
  auto out = f(p);
  p.finish();
  return out;
}

}  // namespace

SrcExpr parse_src(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.src_expr(); });
}
TgtExpr parse_tgt(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.tgt_expr(); });
}
Name parse_name(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.name(); });
}
Effect parse_effect(std::string_view text) {
  return parse_all(text, [](Parser& p) {
    if (p.at(Tok::End)) p.fail(0, "expected an effect", "E-SYNTAX");
    return p.effect();
  });
}
SrcType parse_src_type(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.src_type(); });
}
TgtType parse_tgt_type(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.tgt_type(); });
}
World parse_world(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.world(); });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void put_atom(const NameAtom& a, std::string& out) {
  switch (a.kind) {
    case NameAtom::Kind::On: out += 'o'; break;
    case NameAtom::Kind::Off: out += 'b'; break;
    case NameAtom::Kind::Var: out += a.var; break;
  }
}

void put_name(const Name& n, std::string& out) {
  if (n.empty()) {
    out += "eps";
    return;
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) out += ' ';
    put_atom(n[i], out);
  }
}

// 0: alternation, 1: concatenation, 2: star operand
void put_effect(const Effect& e, int prec, std::string& out) {
  switch (e.kind()) {
    case Effect::Kind::Empty:
      out += "{}";
      return;
    case Effect::Kind::Lit:
      if (prec >= 2 && e.word().size() > 1) {
        out += '(';
        put_name(e.word(), out);
        out += ')';
      } else {
        put_name(e.word(), out);
      }
      return;
    case Effect::Kind::Concat:
      if (prec >= 2) out += '(';
      put_effect(e.lhs(), 1, out);
      out += ' ';
      put_effect(e.rhs(), 1, out);
      if (prec >= 2) out += ')';
      return;
    case Effect::Kind::Alt:
      if (prec >= 1) out += '(';
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += " + ";
        put_effect(e.children()[i], 0, out);
      }
      if (prec >= 1) out += ')';
      return;
    case Effect::Kind::Star:
      put_effect(e.body(), 2, out);
      out += '*';
      return;
  }
}

void put_src_type(const SrcType& t, bool as_dom, std::string& out) {
  if (!t.is_arrow()) {
    out += "nat";
    return;
  }
  if (as_dom) out += '(';
  put_src_type(t.dom(), true, out);
  out += " -> ";
  put_src_type(t.cod(), false, out);
  if (as_dom) out += ')';
}

void put_tgt_type(const TgtType& t, bool as_dom, std::string& out) {
  switch (t.kind()) {
    case TgtType::Kind::Nat:
      out += "nat";
      return;
    case TgtType::Kind::Arrow:
      if (as_dom) out += '(';
      put_tgt_type(t.dom(), true, out);
      if (t.latent().kind() == Effect::Kind::Empty) {
        out += " -> ";
      } else {
        out += " -{";
        put_effect(t.latent(), 0, out);
        out += "}-> ";
      }
      put_tgt_type(t.cod(), false, out);
      if (as_dom) out += ')';
      return;
    case TgtType::Kind::Forall:
      if (as_dom) out += '(';
      out += "all ";
      out += t.binder();
      out += ".{";
      if (t.latent().kind() != Effect::Kind::Empty) put_effect(t.latent(), 0, out);
      out += "} ";
      put_tgt_type(t.body(), false, out);
      if (as_dom) out += ')';
      return;
  }
}

enum class Ctx : unsigned char { Top, Fn, Arg };

void put_src(const SrcExpr& e, Ctx ctx, std::string& out) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
      out += e.ident();
      return;
    case SrcExpr::Kind::Nat:
      out += std::to_string(e.value());
      return;
    case SrcExpr::Kind::Add:
      out += "add";
      return;
    case SrcExpr::Kind::App:
      if (ctx == Ctx::Arg) out += '(';
      put_src(e.fn(), Ctx::Fn, out);
      out += ' ';
      put_src(e.arg(), Ctx::Arg, out);
      if (ctx == Ctx::Arg) out += ')';
      return;
    case SrcExpr::Kind::Abs:
    case SrcExpr::Kind::Fix:
      if (ctx != Ctx::Top) out += '(';
      out += e.is(SrcExpr::Kind::Abs) ? "\\" : "fix ";
      out += e.ident();
      out += ':';
      put_src_type(e.annot(), false, out);
      out += ". ";
      put_src(e.body(), Ctx::Top, out);
      if (ctx != Ctx::Top) out += ')';
      return;
    case SrcExpr::Kind::Choice:
      out += '(';
      put_src(e.lhs(), Ctx::Top, out);
      out += " || ";
      put_src(e.rhs(), Ctx::Top, out);
      out += ')';
      return;
  }
}

void put_tgt(const TgtExpr& e, Ctx ctx, std::string& out) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
      out += e.ident();
      return;
    case TgtExpr::Kind::Nat:
      out += std::to_string(e.value());
      return;
    case TgtExpr::Kind::Add:
      out += "add";
      return;
    case TgtExpr::Kind::App:
      if (ctx == Ctx::Arg) out += '(';
      put_tgt(e.fn(), Ctx::Fn, out);
      out += ' ';
      put_tgt(e.arg(), Ctx::Arg, out);
      if (ctx == Ctx::Arg) out += ')';
      return;
    case TgtExpr::Kind::NameApp:
      if (ctx == Ctx::Arg) out += '(';
      put_tgt(e.fn(), Ctx::Fn, out);
      out += " @ ";
      if (e.name().size() == 1) {
        put_name(e.name(), out);
      } else if (e.name().empty()) {
        out += "eps";
      } else {
        out += '(';
        put_name(e.name(), out);
        out += ')';
      }
      if (ctx == Ctx::Arg) out += ')';
      return;
    case TgtExpr::Kind::Abs:
    case TgtExpr::Kind::Fix:
      if (ctx != Ctx::Top) out += '(';
      out += e.is(TgtExpr::Kind::Abs) ? "\\" : "fix ";
      out += e.ident();
      out += ':';
      put_tgt_type(e.annot(), false, out);
      out += ". ";
      put_tgt(e.body(), Ctx::Top, out);
      if (ctx != Ctx::Top) out += ')';
      return;
    case TgtExpr::Kind::NameAbs:
      if (ctx != Ctx::Top) out += '(';
      out += "/\\";
      out += e.ident();
      out += ". ";
      put_tgt(e.body(), Ctx::Top, out);
      if (ctx != Ctx::Top) out += ')';
      return;
    case TgtExpr::Kind::Choice:
      out += '(';
      put_tgt(e.lhs(), Ctx::Top, out);
      out += " ||{";
      put_name(e.name(), out);
      out += "} ";
      put_tgt(e.rhs(), Ctx::Top, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string format(const SrcExpr& e) {
  std::string out;
  put_src(e, Ctx::Top, out);
  return out;
}

std::string format(const TgtExpr& e) {
  std::string out;
  put_tgt(e, Ctx::Top, out);
  return out;
}

std::string format(const Name& n) {
  std::string out;
  put_name(n, out);
  return out;
}

std::string format(const Effect& e) {
  std::string out;
  put_effect(e, 0, out);
  return out;
}

std::string format(const SrcType& t) {
  std::string out;
  put_src_type(t, false, out);
  return out;
}

std::string format(const TgtType& t) {
  std::string out;
  put_tgt_type(t, false, out);
  return out;
}

std::string format(const World& w) {
  std::string out;
  for (const auto& [n, p] : w.entries()) {
    if (!out.empty()) out += ", ";
    put_name(n, out);
    out += p == Polarity::Plus ? '+' : '-';
  }
  return out;
}

}  // namespace cochoice
