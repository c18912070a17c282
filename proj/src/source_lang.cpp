#include "cochoice/source_lang.hpp"

#include <set>

#include "cochoice/errors.hpp"
#include "cochoice/syntax.hpp"

namespace cochoice {

namespace {

SrcType add_type() { return SrcType::arrow(SrcType::nat(), SrcType::arrow(SrcType::nat(), SrcType::nat())); }

void expect_same(const SrcType& want, const SrcType& got, const char* where) {
  if (!(want == got)) {
    throw TypeError(ErrorCode::TypeMismatch,
                    std::string(where) + ": expected " + format(want) + ", got " + format(got));
  }
}

// Binders shadow earlier entries: a binder is the same as an alpha-renamed
// fresh one, so the lookup simply takes the innermost entry.
SrcType infer(SrcEnv& env, const SrcExpr& e) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == e.ident()) return it->second;
      }
      throw TypeError(ErrorCode::UnboundVariable, "unbound variable " + e.ident());
    case SrcExpr::Kind::Nat:
      return SrcType::nat();
    case SrcExpr::Kind::Add:
      return add_type();
    case SrcExpr::Kind::App: {
      SrcType f = infer(env, e.fn());
      if (!f.is_arrow()) {
        throw TypeError(ErrorCode::NonFunctionApplication, "applying a term of type " + format(f));
      }
      SrcType a = infer(env, e.arg());
      expect_same(f.dom(), a, "argument");
      return f.cod();
    }
    case SrcExpr::Kind::Abs: {
      env.emplace_back(e.ident(), e.annot());
      SrcType body = infer(env, e.body());
      env.pop_back();
      return SrcType::arrow(e.annot(), body);
    }
    case SrcExpr::Kind::Fix: {
      if (!e.body().is(SrcExpr::Kind::Abs)) {
        throw TypeError(ErrorCode::FixBodyNotLambda, "fix " + e.ident() + " does not bind a lambda");
      }
      env.emplace_back(e.ident(), e.annot());
      SrcType body = infer(env, e.body());
      env.pop_back();
      expect_same(e.annot(), body, "fix body");
      return body;
    }
    case SrcExpr::Kind::Choice: {
      SrcType l = infer(env, e.lhs());
      SrcType r = infer(env, e.rhs());
      expect_same(l, r, "choice branches");
      return l;
    }
  }
  throw TypeError(ErrorCode::IllFormed, "unknown expression");
}

}  // namespace

SrcType src_typecheck(const SrcEnv& env, const SrcExpr& e) {
  std::set<std::string> seen;
  for (const auto& [x, t] : env) {
    if (!seen.insert(x).second) throw TypeError(ErrorCode::EnvNotWellFormed, "duplicate binding for " + x);
  }
  SrcEnv scratch = env;
  return infer(scratch, e);
}

namespace {

void root_steps(const SrcExpr& f, const SrcExpr& a, std::vector<Step<SrcExpr>>& out) {
  if (f.is(SrcExpr::Kind::Abs) && a.is_value()) out.push_back({"SR-Beta", subst_term(f.body(), f.ident(), a)});
  if (f.is(SrcExpr::Kind::App) && f.fn().is(SrcExpr::Kind::Add) && f.arg().is(SrcExpr::Kind::Nat) &&
      a.is(SrcExpr::Kind::Nat)) {
    out.push_back({"SR-Add", SrcExpr::nat(f.arg().value() + a.value())});
  }
}

}  // namespace

std::vector<Step<SrcExpr>> src_step_all(const SrcExpr& e) {
  std::vector<Step<SrcExpr>> out;
  switch (e.kind()) {
    case SrcExpr::Kind::App: {
      const SrcExpr& f = e.fn();
      const SrcExpr& a = e.arg();
      root_steps(f, a, out);
      if (f.is(SrcExpr::Kind::Choice)) {
        out.push_back({"SR-DistAppL", SrcExpr::choice(SrcExpr::app(f.lhs(), a), SrcExpr::app(f.rhs(), a))});
      }
      if (f.is_value() && a.is(SrcExpr::Kind::Choice)) {
        out.push_back({"SR-DistAppR", SrcExpr::choice(SrcExpr::app(f, a.lhs()), SrcExpr::app(f, a.rhs()))});
      }
      for (auto& s : src_step_all(f)) out.push_back({"SR-AppL", SrcExpr::app(std::move(s.next), a)});
      if (f.is_value()) {
        for (auto& s : src_step_all(a)) out.push_back({"SR-AppR", SrcExpr::app(f, std::move(s.next))});
      }
      break;
    }
    case SrcExpr::Kind::Fix:
      if (e.body().is(SrcExpr::Kind::Abs)) out.push_back({"SR-Fix", subst_term(e.body(), e.ident(), e)});
      break;
    case SrcExpr::Kind::Choice:
      for (auto& s : src_step_all(e.lhs())) out.push_back({"SR-ChoiceL", SrcExpr::choice(std::move(s.next), e.rhs())});
      for (auto& s : src_step_all(e.rhs())) out.push_back({"SR-ChoiceR", SrcExpr::choice(e.lhs(), std::move(s.next))});
      break;
    default:
      break;
  }
  return out;
}

// Distribution commutes with steps inside the distributed choice, and the two
// branches of a choice never interact, so evaluation distributes eagerly and
// finishes the left branch before touching the right one.
std::vector<Step<SrcExpr>> src_step_eval(const SrcExpr& e) {
  std::vector<Step<SrcExpr>> out;
  switch (e.kind()) {
    case SrcExpr::Kind::App: {
      const SrcExpr& f = e.fn();
      const SrcExpr& a = e.arg();
      if (f.is(SrcExpr::Kind::Choice)) {
        out.push_back({"SR-DistAppL", SrcExpr::choice(SrcExpr::app(f.lhs(), a), SrcExpr::app(f.rhs(), a))});
        break;
      }
      if (f.is_value() && a.is(SrcExpr::Kind::Choice)) {
        out.push_back({"SR-DistAppR", SrcExpr::choice(SrcExpr::app(f, a.lhs()), SrcExpr::app(f, a.rhs()))});
        break;
      }
      root_steps(f, a, out);
      for (auto& s : src_step_eval(f)) out.push_back({"SR-AppL", SrcExpr::app(std::move(s.next), a)});
      if (f.is_value()) {
        for (auto& s : src_step_eval(a)) out.push_back({"SR-AppR", SrcExpr::app(f, std::move(s.next))});
      }
      break;
    }
    case SrcExpr::Kind::Choice:
      for (auto& s : src_step_eval(e.lhs())) out.push_back({"SR-ChoiceL", SrcExpr::choice(std::move(s.next), e.rhs())});
      if (out.empty()) {
        for (auto& s : src_step_eval(e.rhs())) out.push_back({"SR-ChoiceR", SrcExpr::choice(e.lhs(), std::move(s.next))});
      }
      break;
    default:
      out = src_step_all(e);
      break;
  }
  return out;
}

EvalResult<SrcExpr> src_eval(const SrcExpr& e, const EvalOptions& opt) {
  auto key = [](const SrcExpr& x) { return alpha_key(x); };
  if (opt.all_interleavings) return explore(e, opt, [](const SrcExpr& x) { return src_step_all(x); }, key);
  return explore(e, opt, [](const SrcExpr& x) { return src_step_eval(x); }, key);
}

}  // namespace cochoice
