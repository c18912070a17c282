#include "cochoice/target_lang.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "cochoice/errors.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source.hpp"
#include "cochoice/syntax.hpp"

namespace cochoice {

EffectPNF EffectPNF::of(Name prefix, Effect suffix) {
  if (suffix.is_empty_language()) return none();
  return {false, std::move(prefix), std::move(suffix)};
}

Effect EffectPNF::effect() const {
  if (bottom) return Effect::empty();
  return Effect::concat(Effect::lit(prefix), suffix);
}

EffectPNF extract_pnf(const Effect& e) {
  if (e.is_empty_language()) return EffectPNF::none();
  Name prefix;
  Effect cur = e;
  while (!cur.closed()) {
    if (cur.nullable()) {
      throw TypeError(ErrorCode::NonClosedResidual, "effect " + format(e) + " has no closed suffix after " +
                                                        format(prefix));
    }
    std::set<NameAtom> atoms;
    cur.collect_atoms(atoms);
    std::optional<NameAtom> only;
    bool ambiguous = false;
    for (const auto& a : atoms) {
      if (deriv(cur, a).is_empty_language()) continue;
      if (only) {
        ambiguous = true;
        break;
      }
      only = a;
    }
    if (ambiguous || !only) {
      throw TypeError(ErrorCode::NonClosedResidual,
                      "effect " + format(e) + " branches before its variables end, after " + format(prefix));
    }
    prefix += *only;
    cur = deriv(cur, *only);
  }
  std::size_t keep = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i].is_var()) keep = i + 1;
  }
  Effect suffix = Effect::concat(Effect::lit(prefix.drop(keep)), cur);
  return EffectPNF::of(prefix.take(keep), suffix);
}

Alignment pnf_align(const std::vector<EffectPNF>& effects) {
  Alignment out;
  bool first = true;
  for (const auto& p : effects) {
    if (p.bottom) continue;
    out.prefix = first ? p.prefix : common_prefix(out.prefix, p.prefix);
    first = false;
  }
  for (const auto& p : effects) {
    if (p.bottom) {
      out.suffixes.push_back(Effect::empty());
      continue;
    }
    Name leftover = p.prefix.drop(out.prefix.size());
    if (leftover.has_vars()) {
      throw TypeError(ErrorCode::EffectAlignError,
                      "prefix " + format(p.prefix) + " does not align with " + format(out.prefix));
    }
    out.suffixes.push_back(Effect::concat(Effect::lit(leftover), p.suffix));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

std::set<std::string> env_names(const TgtEnv& env) {
  std::set<std::string> out;
  for (const auto& b : env) {
    if (b.is_name()) out.insert(b.var());
  }
  return out;
}

bool vars_bound(const std::set<std::string>& vars, const std::set<std::string>& bound) {
  return std::includes(bound.begin(), bound.end(), vars.begin(), vars.end());
}

std::set<std::string> name_vars(const Name& n) {
  std::set<std::string> out;
  for (const auto& a : n.atoms()) {
    if (a.is_var()) out.insert(a.var);
  }
  return out;
}

}  // namespace

bool wf_name(const TgtEnv& env, const Name& n) { return vars_bound(name_vars(n), env_names(env)); }

bool wf_effect(const TgtEnv& env, const Effect& e) {
  std::set<std::string> vs;
  e.collect_vars(vs);
  return vars_bound(vs, env_names(env));
}

bool wf_type(const TgtEnv& env, const TgtType& t) { return vars_bound(free_name_vars(t), env_names(env)); }

bool wf_env(const TgtEnv& env) {
  std::set<std::string> terms;
  std::set<std::string> names;
  for (const auto& b : env) {
    if (b.is_name()) {
      if (!names.insert(b.var()).second) return false;
    } else {
      if (!terms.insert(b.var()).second) return false;
      if (!vars_bound(free_name_vars(std::get<TgtBinding::Term>(b.entry).type), names)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subtyping and joins

namespace {

std::string common_binder(const TgtType& a, const TgtType& b) {
  std::set<std::string> taken = free_name_vars(a);
  auto fb = free_name_vars(b);
  taken.insert(fb.begin(), fb.end());
  if (!taken.contains(a.binder())) return a.binder();
  return fresh_ident(a.binder(), taken);
}

std::pair<Effect, TgtType> open_forall(const TgtType& t, const std::string& as) {
  if (t.binder() == as) return {t.latent(), t.body()};
  Name v = Name::var(as);
  return {t.latent().subst(t.binder(), v), name_subst(t.body(), t.binder(), v)};
}

TgtType join(const TgtType& a, const TgtType& b) {
  if (a.kind() != b.kind()) {
    throw TypeError(ErrorCode::TypeMismatch, "choice branches have types " + format(a) + " and " + format(b));
  }
  switch (a.kind()) {
    case TgtType::Kind::Nat:
      return a;
    case TgtType::Kind::Arrow:
      if (!subtype(a.dom(), b.dom()) || !subtype(b.dom(), a.dom())) {
        throw TypeError(ErrorCode::TypeMismatch,
                        "choice branches take arguments " + format(a.dom()) + " and " + format(b.dom()));
      }
      return TgtType::arrow(a.dom(), Effect::alt(a.latent(), b.latent()), join(a.cod(), b.cod()));
    case TgtType::Kind::Forall: {
      std::string v = common_binder(a, b);
      auto [la, ta] = open_forall(a, v);
      auto [lb, tb] = open_forall(b, v);
      return TgtType::forall(v, Effect::alt(la, lb), join(ta, tb));
    }
  }
  return a;
}

}  // namespace

bool subtype(const TgtType& sub, const TgtType& super) {
  if (sub.same_node(super)) return true;
  if (sub.kind() != super.kind()) return false;
  switch (sub.kind()) {
    case TgtType::Kind::Nat:
      return true;
    case TgtType::Kind::Arrow:
      return subtype(super.dom(), sub.dom()) && includes(sub.latent(), super.latent()) &&
             subtype(sub.cod(), super.cod());
    case TgtType::Kind::Forall: {
      std::string v = common_binder(sub, super);
      auto [ls, ts] = open_forall(sub, v);
      auto [lp, tp] = open_forall(super, v);
      return includes(ls, lp) && subtype(ts, tp);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Effect checker

namespace {

void require_disjoint(const Effect& a, const Effect& b, const char* what) {
  if (auto w = overlap_witness(a, b)) {
    throw TypeError(ErrorCode::DisjointnessViolation,
                    std::string(what) + ": " + format(a) + " and " + format(b) + " share " + format(*w), *w);
  }
}

Effect quotient_or_throw(const Name& prefix, const Effect& e) {
  try {
    return quotient_word(prefix, e);
  } catch (const CoverageError& err) {
    throw TypeError(ErrorCode::EffectCoverageError,
                    format(e) + " is not covered by prefix " + format(prefix) + " (" + err.what() + ")",
                    err.witness());
  }
}

class Checker {
 public:
  explicit Checker(TgtEnv env) : env_(std::move(env)) {
    for (const auto& b : env_) {
      if (b.is_name()) names_.insert(b.var());
    }
  }

  TypedEffect infer(const TgtExpr& m) {
    switch (m.kind()) {
      case TgtExpr::Kind::Var:
        return {lookup(m.ident()), EffectPNF::none()};
      case TgtExpr::Kind::Nat:
        return {TgtType::nat(), EffectPNF::none()};
      case TgtExpr::Kind::Add:
        throw TypeError(ErrorCode::BuiltinNotCheckable, "add has no effect typing");
      case TgtExpr::Kind::Abs: {
        require_wf(m.annot());
        env_.push_back(TgtBinding::term(m.ident(), m.annot()));
        TypedEffect body = infer(m.body());
        env_.pop_back();
        return {TgtType::arrow(m.annot(), body.effect.effect(), body.type), EffectPNF::none()};
      }
      case TgtExpr::Kind::NameAbs: {
        std::string binder = m.ident();
        TgtExpr body = m.body();
        if (names_.contains(binder)) {
          std::set<std::string> taken = names_;
          auto inner = free_name_vars(body);
          taken.insert(inner.begin(), inner.end());
          std::string renamed = fresh_ident(binder, taken);
          body = name_subst(body, binder, Name::var(renamed));
          binder = std::move(renamed);
        }
        env_.push_back(TgtBinding::name(binder));
        names_.insert(binder);
        TypedEffect inner = infer(body);
        names_.erase(binder);
        env_.pop_back();
        return {TgtType::forall(binder, inner.effect.effect(), inner.type), EffectPNF::none()};
      }
      case TgtExpr::Kind::Fix: {
        if (!m.body().is(TgtExpr::Kind::Abs)) {
          throw TypeError(ErrorCode::FixBodyNotLambda, "fix " + m.ident() + " does not bind a lambda");
        }
        require_wf(m.annot());
        env_.push_back(TgtBinding::term(m.ident(), m.annot()));
        TypedEffect body = infer(m.body());
        env_.pop_back();
        if (!subtype(body.type, m.annot())) {
          throw TypeError(ErrorCode::TypeMismatch,
                          "fix body has type " + format(body.type) + ", not below " + format(m.annot()));
        }
        return {m.annot(), EffectPNF::none()};
      }
      case TgtExpr::Kind::App:
        return app(m);
      case TgtExpr::Kind::NameApp:
        return name_app(m);
      case TgtExpr::Kind::Choice:
        return choice(m);
    }
    throw TypeError(ErrorCode::IllFormed, "unknown expression");
  }

 private:
  TgtType lookup(const std::string& x) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (!it->is_name() && it->var() == x) return std::get<TgtBinding::Term>(it->entry).type;
    }
    throw TypeError(ErrorCode::UnboundVariable, "unbound variable " + x);
  }

  void require_wf(const TgtType& t) const {
    for (const auto& v : free_name_vars(t)) {
      if (!names_.contains(v)) throw TypeError(ErrorCode::UnboundNameVariable, "unbound name variable " + v);
    }
  }

  void require_wf(const Name& n) const {
    for (const auto& a : n.atoms()) {
      if (a.is_var() && !names_.contains(a.var)) {
        throw TypeError(ErrorCode::UnboundNameVariable, "unbound name variable " + a.var);
      }
    }
  }

  TypedEffect app(const TgtExpr& m) {
    TypedEffect f = infer(m.fn());
    if (!f.type.is(TgtType::Kind::Arrow)) {
      throw TypeError(ErrorCode::NonFunctionApplication, "applying a term of type " + format(f.type));
    }
    TypedEffect a = infer(m.arg());
    if (!subtype(a.type, f.type.dom())) {
      throw TypeError(ErrorCode::TypeMismatch,
                      "argument has type " + format(a.type) + ", expected " + format(f.type.dom()));
    }
    Alignment al = pnf_align({f.effect, a.effect, extract_pnf(f.type.latent())});
    const auto& s = al.suffixes;
    require_disjoint(s[0], s[1], "function and argument effects");
    require_disjoint(s[0], s[2], "function and latent effects");
    require_disjoint(s[1], s[2], "argument and latent effects");
    return {f.type.cod(), EffectPNF::of(al.prefix, Effect::alt({s[0], s[1], s[2]}))};
  }

  TypedEffect name_app(const TgtExpr& m) {
    TypedEffect f = infer(m.fn());
    if (!f.type.is(TgtType::Kind::Forall)) {
      throw TypeError(ErrorCode::NonForallApplication, "name application to a term of type " + format(f.type));
    }
    require_wf(m.name());
    const Name& phi = m.name();
    Effect latent = f.type.latent().subst(f.type.binder(), phi);
    Alignment al = pnf_align({f.effect, extract_pnf(latent)});
    Effect rest = quotient_or_throw(al.prefix, latent);
    if (!rest.closed()) {
      throw TypeError(ErrorCode::NonClosedResidual,
                      "latent effect " + format(latent) + " leaves open residual " + format(rest));
    }
    require_disjoint(al.suffixes[0], rest, "function and latent effects");
    return {name_subst(f.type.body(), f.type.binder(), phi),
            EffectPNF::of(al.prefix, Effect::alt(al.suffixes[0], rest))};
  }

  TypedEffect choice(const TgtExpr& m) {
    TypedEffect l = infer(m.lhs());
    TypedEffect r = infer(m.rhs());
    TgtType t = join(l.type, r.type);
    require_wf(m.name());
    Effect own = Effect::lit(m.name());
    Alignment al = pnf_align({l.effect, r.effect, extract_pnf(own)});
    Effect branches = Effect::alt(al.suffixes[0], al.suffixes[1]);
    Effect mine = quotient_or_throw(al.prefix, own);
    require_disjoint(branches, mine, "branch effects and choice name");
    return {t, EffectPNF::of(al.prefix, Effect::alt(branches, mine))};
  }

  TgtEnv env_;
  std::set<std::string> names_;
};

}  // namespace

TypedEffect effect_typecheck(const TgtEnv& env, const TgtExpr& m) {
  if (!wf_env(env)) throw TypeError(ErrorCode::EnvNotWellFormed, "environment is not well formed");
  Checker c(env);
  return c.infer(m);
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

void step_into(const TgtExpr& m, const World* delta, bool pruned, std::vector<Step<TgtExpr>>& out);

std::vector<Step<TgtExpr>> steps_of(const TgtExpr& m, const World* delta, bool pruned = false) {
  std::vector<Step<TgtExpr>> out;
  step_into(m, delta, pruned, out);
  return out;
}

// `delta == nullptr` selects the non-coordinated relation. `pruned` keeps one
// order per group of commuting steps: distribution goes first, and a choice
// finishes its left branch before its right one. World steps stay enabled
// throughout, since they discard a branch rather than commute with it.
void step_into(const TgtExpr& m, const World* delta, bool pruned, std::vector<Step<TgtExpr>>& out) {
  switch (m.kind()) {
    case TgtExpr::Kind::App: {
      const TgtExpr& f = m.fn();
      const TgtExpr& a = m.arg();
      if (f.is(TgtExpr::Kind::Abs) && a.is_value()) out.push_back({"TR-Beta", subst_term(f.body(), f.ident(), a)});
      if (f.is(TgtExpr::Kind::App) && f.fn().is(TgtExpr::Kind::Add) && f.arg().is(TgtExpr::Kind::Nat) &&
          a.is(TgtExpr::Kind::Nat)) {
        out.push_back({"TR-Add", TgtExpr::nat(f.arg().value() + a.value())});
      }
      if (f.is(TgtExpr::Kind::Choice)) {
        out.push_back({"TR-DistAppL",
                       TgtExpr::choice(TgtExpr::app(f.lhs(), a), f.name(), TgtExpr::app(f.rhs(), a))});
        if (pruned) return;
      }
      if (f.is_value() && a.is(TgtExpr::Kind::Choice)) {
        out.push_back({"TR-DistAppR",
                       TgtExpr::choice(TgtExpr::app(f, a.lhs()), a.name(), TgtExpr::app(f, a.rhs()))});
        if (pruned) return;
      }
      for (auto& s : steps_of(f, delta, pruned)) out.push_back({"TR-AppL", TgtExpr::app(std::move(s.next), a)});
      if (f.is_value()) {
        for (auto& s : steps_of(a, delta, pruned)) out.push_back({"TR-AppR", TgtExpr::app(f, std::move(s.next))});
      }
      return;
    }
    case TgtExpr::Kind::NameApp: {
      const TgtExpr& f = m.fn();
      if (f.is(TgtExpr::Kind::NameAbs)) out.push_back({"TR-Sigma", name_subst(f.body(), f.ident(), m.name())});
      if (f.is(TgtExpr::Kind::Choice)) {
        out.push_back({"TR-DistSApp", TgtExpr::choice(TgtExpr::name_app(f.lhs(), m.name()), f.name(),
                                                      TgtExpr::name_app(f.rhs(), m.name()))});
        if (pruned) return;
      }
      for (auto& s : steps_of(f, delta, pruned)) {
        out.push_back({"TR-SApp", TgtExpr::name_app(std::move(s.next), m.name())});
      }
      return;
    }
    case TgtExpr::Kind::Fix:
      if (m.body().is(TgtExpr::Kind::Abs)) out.push_back({"TR-Fix", subst_term(m.body(), m.ident(), m)});
      return;
    case TgtExpr::Kind::Choice: {
      const Name& phi = m.name();
      std::optional<World> left, right;
      if (delta != nullptr) {
        left = delta->with(phi, Polarity::Plus);
        right = delta->with(phi, Polarity::Minus);
      }
      const std::size_t before = out.size();
      for (auto& s : steps_of(m.lhs(), left ? &*left : nullptr, pruned)) {
        out.push_back({"TR-ChoiceL", TgtExpr::choice(std::move(s.next), phi, m.rhs())});
      }
      if (!pruned || out.size() == before) {
        for (auto& s : steps_of(m.rhs(), right ? &*right : nullptr, pruned)) {
          out.push_back({"TR-ChoiceR", TgtExpr::choice(m.lhs(), phi, std::move(s.next))});
        }
      }
      if (delta != nullptr) {
        if (delta->contains(phi, Polarity::Plus)) out.push_back({"TR-WorldL", m.lhs()});
        if (delta->contains(phi, Polarity::Minus)) out.push_back({"TR-WorldR", m.rhs()});
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::vector<Step<TgtExpr>> tgt_step_all(const TgtExpr& m, const World& delta) { return steps_of(m, &delta); }

std::vector<Step<TgtExpr>> tgt_step_nc(const TgtExpr& m) { return steps_of(m, nullptr); }

EvalResult<TgtExpr> tgt_eval(const TgtExpr& m, const World& delta, const EvalOptions& opt) {
  const bool pruned = !opt.all_interleavings;
  return explore(m, opt, [&delta, pruned](const TgtExpr& x) { return steps_of(x, &delta, pruned); },
                 [](const TgtExpr& x) { return alpha_key(x); });
}

EvalResult<TgtExpr> tgt_eval_nc(const TgtExpr& m, const EvalOptions& opt) {
  const bool pruned = !opt.all_interleavings;
  return explore(m, opt, [pruned](const TgtExpr& x) { return steps_of(x, nullptr, pruned); },
                 [](const TgtExpr& x) { return alpha_key(x); });
}

}  // namespace cochoice
