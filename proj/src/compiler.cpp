#include "cochoice/compiler.hpp"

#include <set>
#include <stdexcept>

#include "cochoice/errors.hpp"

namespace cochoice {

SrcExpr dummy_arg() { return SrcExpr::abs("x", SrcType::nat(), SrcExpr::var("x")); }
SrcType dummy_type() { return SrcType::arrow(SrcType::nat(), SrcType::nat()); }

namespace {

struct Compiler {
  const std::string& root;
  std::size_t counter = 0;

  TgtExpr run(const SrcExpr& e, const std::string& alpha, const Name& seed) {
    switch (e.kind()) {
      case SrcExpr::Kind::Var:
        return TgtExpr::var(e.ident());
      case SrcExpr::Kind::Nat:
        return TgtExpr::nat(e.value());
      case SrcExpr::Kind::Add:
        throw CompileError("add cannot be compiled");
      case SrcExpr::Kind::App: {
        TgtExpr f = run(e.fn(), alpha, seed + NameAtom::on() + NameAtom::on());
        TgtExpr a = run(e.arg(), alpha, seed + NameAtom::on() + NameAtom::off());
        return TgtExpr::name_app(TgtExpr::app(std::move(f), std::move(a)), Name::var(alpha) + seed + NameAtom::off());
      }
      case SrcExpr::Kind::Abs: {
        std::string beta = root + "_" + std::to_string(++counter);
        TgtExpr body = run(e.body(), beta, seed);
        return TgtExpr::abs(e.ident(), compile_type(e.annot()), TgtExpr::name_abs(beta, std::move(body)));
      }
      case SrcExpr::Kind::Fix:
        return TgtExpr::fix(e.ident(), compile_type(e.annot()), run(e.body(), alpha, seed));
      case SrcExpr::Kind::Choice: {
        Name inner = seed + NameAtom::on();
        TgtExpr l = run(e.lhs(), alpha, inner);
        TgtExpr r = run(e.rhs(), alpha, inner);
        return TgtExpr::choice(std::move(l), Name::var(alpha) + seed + NameAtom::off(), std::move(r));
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

TgtExpr compile_expr(const SrcExpr& e, const std::string& alpha, const Name& seed) {
  if (seed.has_vars()) throw std::invalid_argument("compilation seed must be closed");
  if (e.mentions_builtin()) throw CompileError("add cannot be compiled");
  Compiler c{alpha};
  return c.run(e, alpha, seed);
}

TgtType compile_type(const SrcType& t) {
  if (!t.is_arrow()) return TgtType::nat();
  const std::string a = "a";
  return TgtType::arrow(compile_type(t.dom()), Effect::empty(),
                        TgtType::forall(a, Effect::concat(Effect::lit(Name::var(a)), Effect::any_word()),
                                        compile_type(t.cod())));
}

TgtEnv compile_env(const SrcEnv& env) {
  TgtEnv out;
  out.reserve(env.size());
  for (const auto& [x, t] : env) out.push_back(TgtBinding::term(x, compile_type(t)));
  return out;
}

SrcType erase(const TgtType& t) {
  switch (t.kind()) {
    case TgtType::Kind::Nat:
      return SrcType::nat();
    case TgtType::Kind::Arrow:
      return SrcType::arrow(erase(t.dom()), erase(t.cod()));
    case TgtType::Kind::Forall:
      return SrcType::arrow(dummy_type(), erase(t.body()));
  }
  return SrcType::nat();
}

namespace {

struct FreshNames {
  std::set<std::string> taken;
  std::size_t counter = 0;

  std::string next() {
    std::string y;
    do {
      y = "y" + std::to_string(++counter);
    } while (taken.contains(y));
    taken.insert(y);
    return y;
  }
};

SrcExpr erase_rec(const TgtExpr& m, FreshNames& fresh) {
  switch (m.kind()) {
    case TgtExpr::Kind::Var:
      return SrcExpr::var(m.ident());
    case TgtExpr::Kind::Nat:
      return SrcExpr::nat(m.value());
    case TgtExpr::Kind::Add:
      return SrcExpr::add();
    case TgtExpr::Kind::App:
      return SrcExpr::app(erase_rec(m.fn(), fresh), erase_rec(m.arg(), fresh));
    case TgtExpr::Kind::Abs:
      return SrcExpr::abs(m.ident(), erase(m.annot()), erase_rec(m.body(), fresh));
    case TgtExpr::Kind::NameApp:
      return SrcExpr::app(erase_rec(m.fn(), fresh), dummy_arg());
    case TgtExpr::Kind::NameAbs: {
      std::string y = fresh.next();
      return SrcExpr::abs(y, dummy_type(), erase_rec(m.body(), fresh));
    }
    case TgtExpr::Kind::Fix:
      return SrcExpr::fix(m.ident(), erase(m.annot()), erase_rec(m.body(), fresh));
    case TgtExpr::Kind::Choice:
      return SrcExpr::choice(erase_rec(m.lhs(), fresh), erase_rec(m.rhs(), fresh));
  }
  throw std::logic_error("unreachable");
}

SrcExpr pseudo_rec(const SrcExpr& e, FreshNames& fresh) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
    case SrcExpr::Kind::Nat:
      return e;
    case SrcExpr::Kind::Add:
      throw CompileError("add cannot be pseudo-compiled");
    case SrcExpr::Kind::App:
      return SrcExpr::app(SrcExpr::app(pseudo_rec(e.fn(), fresh), pseudo_rec(e.arg(), fresh)), dummy_arg());
    case SrcExpr::Kind::Abs: {
      std::string y = fresh.next();
      return SrcExpr::abs(e.ident(), pseudo_compile(e.annot()),
                          SrcExpr::abs(y, dummy_type(), pseudo_rec(e.body(), fresh)));
    }
    case SrcExpr::Kind::Fix:
      return SrcExpr::fix(e.ident(), pseudo_compile(e.annot()), pseudo_rec(e.body(), fresh));
    case SrcExpr::Kind::Choice:
      return SrcExpr::choice(pseudo_rec(e.lhs(), fresh), pseudo_rec(e.rhs(), fresh));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SrcExpr erase(const TgtExpr& m) {
  FreshNames fresh;
  collect_idents(m, fresh.taken);
  return erase_rec(m, fresh);
}

SrcType pseudo_compile(const SrcType& t) {
  if (!t.is_arrow()) return SrcType::nat();
  return SrcType::arrow(pseudo_compile(t.dom()), SrcType::arrow(dummy_type(), pseudo_compile(t.cod())));
}

SrcExpr pseudo_compile(const SrcExpr& e) {
  if (e.mentions_builtin()) throw CompileError("add cannot be pseudo-compiled");
  FreshNames fresh;
  collect_idents(e, fresh.taken);
  return pseudo_rec(e, fresh);
}

}  // namespace cochoice
