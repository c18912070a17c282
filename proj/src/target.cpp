#include "cochoice/target.hpp"

#include <algorithm>

#include "cochoice/source.hpp"

namespace cochoice {

TgtType TgtType::nat() { return TgtType(std::make_shared<const Node>(Node{Kind::Nat, {}, Effect::empty(), {}, {}})); }

TgtType TgtType::arrow(TgtType dom, Effect latent, TgtType cod) {
  return TgtType(
      std::make_shared<const Node>(Node{Kind::Arrow, {}, std::move(latent), std::move(dom), std::move(cod)}));
}

TgtType TgtType::forall(std::string binder, Effect latent, TgtType body) {
  return TgtType(
      std::make_shared<const Node>(Node{Kind::Forall, std::move(binder), std::move(latent), {}, std::move(body)}));
}

TgtExpr TgtExpr::make(TgtExpr::Kind k, std::string ident, TgtType annot, Name name,
                   std::vector<TgtExpr> kids, std::uint64_t value) {
  std::size_t size = 1;
  bool builtin = k == TgtExpr::Kind::Add;
  for (const auto& c : kids) {
    size += c.size();
    builtin = builtin || c.mentions_builtin();
  }
  return TgtExpr(std::make_shared<const TgtExpr::Node>(TgtExpr::Node{k, std::move(ident), std::move(annot), std::move(name),
                                                             std::move(kids), value, size, builtin}));
}

TgtExpr TgtExpr::var(std::string x) { return make(Kind::Var, std::move(x), {}, {}, {}); }
TgtExpr TgtExpr::app(TgtExpr fn, TgtExpr arg) {
  return make(Kind::App, {}, {}, {}, {std::move(fn), std::move(arg)});
}
TgtExpr TgtExpr::abs(std::string x, TgtType annot, TgtExpr body) {
  return make(Kind::Abs, std::move(x), std::move(annot), {}, {std::move(body)});
}
TgtExpr TgtExpr::name_app(TgtExpr fn, Name name) {
  return make(Kind::NameApp, {}, {}, std::move(name), {std::move(fn)});
}
TgtExpr TgtExpr::name_abs(std::string alpha, TgtExpr body) {
  return make(Kind::NameAbs, std::move(alpha), {}, {}, {std::move(body)});
}
TgtExpr TgtExpr::fix(std::string f, TgtType annot, TgtExpr body) {
  return make(Kind::Fix, std::move(f), std::move(annot), {}, {std::move(body)});
}
TgtExpr TgtExpr::choice(TgtExpr lhs, Name name, TgtExpr rhs) {
  return make(Kind::Choice, {}, {}, std::move(name), {std::move(lhs), std::move(rhs)});
}
TgtExpr TgtExpr::nat(std::uint64_t n) { return make(Kind::Nat, {}, {}, {}, {}, n); }
TgtExpr TgtExpr::add() { return make(Kind::Add, {}, {}, {}, {}); }

bool TgtExpr::is_value() const {
  switch (kind()) {
    case Kind::Abs:
    case Kind::NameAbs:
    case Kind::Nat:
    case Kind::Add:
      return true;
    case Kind::App:
      return fn().is(Kind::Add) && arg().is(Kind::Nat);
    default:
      return false;
  }
}

const std::string& TgtBinding::var() const {
  return std::visit([](const auto& e) -> const std::string& { return e.var; }, entry);
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void name_vars_into(const Name& n, const std::vector<std::string>& bound, std::set<std::string>& out) {
  for (const auto& a : n.atoms()) {
    if (a.is_var() && std::find(bound.begin(), bound.end(), a.var) == bound.end()) out.insert(a.var);
  }
}

void effect_vars_into(const Effect& e, const std::vector<std::string>& bound, std::set<std::string>& out) {
  std::set<std::string> vs;
  e.collect_vars(vs);
  for (const auto& v : vs) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  }
}

void type_name_vars_into(const TgtType& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TgtType::Kind::Nat:
      return;
    case TgtType::Kind::Arrow:
      type_name_vars_into(t.dom(), bound, out);
      effect_vars_into(t.latent(), bound, out);
      type_name_vars_into(t.cod(), bound, out);
      return;
    case TgtType::Kind::Forall:
      bound.push_back(t.binder());
      effect_vars_into(t.latent(), bound, out);
      type_name_vars_into(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

void expr_name_vars_into(const TgtExpr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
    case TgtExpr::Kind::Nat:
    case TgtExpr::Kind::Add:
      return;
    case TgtExpr::Kind::App:
      expr_name_vars_into(e.fn(), bound, out);
      expr_name_vars_into(e.arg(), bound, out);
      return;
    case TgtExpr::Kind::Abs:
    case TgtExpr::Kind::Fix:
      type_name_vars_into(e.annot(), bound, out);
      expr_name_vars_into(e.body(), bound, out);
      return;
    case TgtExpr::Kind::NameApp:
      expr_name_vars_into(e.fn(), bound, out);
      name_vars_into(e.name(), bound, out);
      return;
    case TgtExpr::Kind::NameAbs:
      bound.push_back(e.ident());
      expr_name_vars_into(e.body(), bound, out);
      bound.pop_back();
      return;
    case TgtExpr::Kind::Choice:
      expr_name_vars_into(e.lhs(), bound, out);
      name_vars_into(e.name(), bound, out);
      expr_name_vars_into(e.rhs(), bound, out);
      return;
  }
}

void term_vars_into(const TgtExpr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
      if (std::find(bound.begin(), bound.end(), e.ident()) == bound.end()) out.insert(e.ident());
      return;
    case TgtExpr::Kind::Nat:
    case TgtExpr::Kind::Add:
      return;
    case TgtExpr::Kind::App:
    case TgtExpr::Kind::Choice:
      term_vars_into(e.lhs(), bound, out);
      term_vars_into(e.rhs(), bound, out);
      return;
    case TgtExpr::Kind::Abs:
    case TgtExpr::Kind::Fix:
      bound.push_back(e.ident());
      term_vars_into(e.body(), bound, out);
      bound.pop_back();
      return;
    case TgtExpr::Kind::NameApp:
    case TgtExpr::Kind::NameAbs:
      term_vars_into(e.body(), bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const TgtExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  term_vars_into(e, bound, out);
  return out;
}

std::set<std::string> free_name_vars(const TgtExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  expr_name_vars_into(e, bound, out);
  return out;
}

std::set<std::string> free_name_vars(const TgtType& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  type_name_vars_into(t, bound, out);
  return out;
}

void collect_idents(const TgtExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
      out.insert(e.ident());
      return;
    case TgtExpr::Kind::Nat:
    case TgtExpr::Kind::Add:
      return;
    case TgtExpr::Kind::App:
    case TgtExpr::Kind::Choice:
      collect_idents(e.lhs(), out);
      collect_idents(e.rhs(), out);
      return;
    case TgtExpr::Kind::Abs:
    case TgtExpr::Kind::Fix:
      out.insert(e.ident());
      collect_idents(e.body(), out);
      return;
    case TgtExpr::Kind::NameApp:
    case TgtExpr::Kind::NameAbs:
      collect_idents(e.body(), out);
      return;
  }
}

namespace {
void type_names_into(const TgtType& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TgtType::Kind::Nat:
      return;
    case TgtType::Kind::Arrow:
      t.latent().collect_vars(out);
      type_names_into(t.dom(), out);
      type_names_into(t.cod(), out);
      return;
    case TgtType::Kind::Forall:
      out.insert(t.binder());
      t.latent().collect_vars(out);
      type_names_into(t.body(), out);
      return;
  }
}

void all_names_into(const TgtExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
      out.insert(e.ident());
      return;
    case TgtExpr::Kind::Nat:
    case TgtExpr::Kind::Add:
      return;
    case TgtExpr::Kind::App:
      all_names_into(e.fn(), out);
      all_names_into(e.arg(), out);
      return;
    case TgtExpr::Kind::Choice:
      for (const auto& a : e.name().atoms()) {
        if (a.is_var()) out.insert(a.var);
      }
      all_names_into(e.lhs(), out);
      all_names_into(e.rhs(), out);
      return;
    case TgtExpr::Kind::Abs:
    case TgtExpr::Kind::Fix:
      out.insert(e.ident());
      type_names_into(e.annot(), out);
      all_names_into(e.body(), out);
      return;
    case TgtExpr::Kind::NameApp:
      for (const auto& a : e.name().atoms()) {
        if (a.is_var()) out.insert(a.var);
      }
      all_names_into(e.fn(), out);
      return;
    case TgtExpr::Kind::NameAbs:
      out.insert(e.ident());
      all_names_into(e.body(), out);
      return;
  }
}
}  // namespace

void collect_all_names(const TgtExpr& e, std::set<std::string>& out) { all_names_into(e, out); }

// ---------------------------------------------------------------------------
// Name substitution

Name name_subst(const Name& n, const std::string& alpha, const Name& by) { return n.subst(alpha, by); }

Effect name_subst(const Effect& e, const std::string& alpha, const Name& by) { return e.subst(alpha, by); }

namespace {

std::set<std::string> vars_of(const Name& n) {
  std::set<std::string> out;
  for (const auto& a : n.atoms()) {
    if (a.is_var()) out.insert(a.var);
  }
  return out;
}

TgtType type_subst_rec(const TgtType& t, const std::string& alpha, const Name& by, const std::set<std::string>& by_vars);

// Renames the binder of a forall away from `avoid` when `alpha` occurs under it.
TgtType forall_subst(const TgtType& t, const std::string& alpha, const Name& by, const std::set<std::string>& by_vars) {
  if (t.binder() == alpha) return t;
  std::string binder = t.binder();
  Effect latent = t.latent();
  TgtType body = t.body();
  if (by_vars.contains(binder)) {
    std::set<std::string> inner;
    latent.collect_vars(inner);
    auto body_fnv = free_name_vars(body);
    inner.insert(body_fnv.begin(), body_fnv.end());
    if (!inner.contains(alpha)) return t;
    std::set<std::string> taken = by_vars;
    taken.insert(inner.begin(), inner.end());
    taken.insert(alpha);
    std::string renamed = fresh_ident(binder, taken);
    latent = latent.subst(binder, Name::var(renamed));
    body = type_subst_rec(body, binder, Name::var(renamed), {renamed});
    binder = std::move(renamed);
  }
  return TgtType::forall(std::move(binder), latent.subst(alpha, by), type_subst_rec(body, alpha, by, by_vars));
}

TgtType type_subst_rec(const TgtType& t, const std::string& alpha, const Name& by, const std::set<std::string>& by_vars) {
  switch (t.kind()) {
    case TgtType::Kind::Nat:
      return t;
    case TgtType::Kind::Arrow:
      return TgtType::arrow(type_subst_rec(t.dom(), alpha, by, by_vars), t.latent().subst(alpha, by),
                            type_subst_rec(t.cod(), alpha, by, by_vars));
    case TgtType::Kind::Forall:
      return forall_subst(t, alpha, by, by_vars);
  }
  return t;
}

TgtExpr expr_name_subst_rec(const TgtExpr& e, const std::string& alpha, const Name& by,
                            const std::set<std::string>& by_vars) {
  switch (e.kind()) {
    case TgtExpr::Kind::Var:
    case TgtExpr::Kind::Nat:
    case TgtExpr::Kind::Add:
      return e;
    case TgtExpr::Kind::App:
      return TgtExpr::app(expr_name_subst_rec(e.fn(), alpha, by, by_vars),
                          expr_name_subst_rec(e.arg(), alpha, by, by_vars));
    case TgtExpr::Kind::Abs:
      return TgtExpr::abs(e.ident(), type_subst_rec(e.annot(), alpha, by, by_vars),
                          expr_name_subst_rec(e.body(), alpha, by, by_vars));
    case TgtExpr::Kind::Fix:
      return TgtExpr::fix(e.ident(), type_subst_rec(e.annot(), alpha, by, by_vars),
                          expr_name_subst_rec(e.body(), alpha, by, by_vars));
    case TgtExpr::Kind::NameApp:
      return TgtExpr::name_app(expr_name_subst_rec(e.fn(), alpha, by, by_vars), e.name().subst(alpha, by));
    case TgtExpr::Kind::Choice:
      return TgtExpr::choice(expr_name_subst_rec(e.lhs(), alpha, by, by_vars), e.name().subst(alpha, by),
                             expr_name_subst_rec(e.rhs(), alpha, by, by_vars));
    case TgtExpr::Kind::NameAbs: {
      if (e.ident() == alpha) return e;
      std::string binder = e.ident();
      TgtExpr body = e.body();
      if (by_vars.contains(binder)) {
        auto inner = free_name_vars(body);
        if (!inner.contains(alpha)) return e;
        std::set<std::string> taken = by_vars;
        taken.insert(inner.begin(), inner.end());
        taken.insert(alpha);
        std::string renamed = fresh_ident(binder, taken);
        body = expr_name_subst_rec(body, binder, Name::var(renamed), {renamed});
        binder = std::move(renamed);
      }
      return TgtExpr::name_abs(std::move(binder), expr_name_subst_rec(body, alpha, by, by_vars));
    }
  }
  return e;
}

}  // namespace

TgtType name_subst(const TgtType& t, const std::string& alpha, const Name& by) {
  return type_subst_rec(t, alpha, by, vars_of(by));
}

TgtExpr name_subst(const TgtExpr& e, const std::string& alpha, const Name& by) {
  return expr_name_subst_rec(e, alpha, by, vars_of(by));
}

// ---------------------------------------------------------------------------
// Term substitution

namespace {

struct TermSubst {
  const std::string& x;
  const TgtExpr& r;
  std::set<std::string> fv_r;
  std::set<std::string> fnv_r;

  TgtExpr operator()(const TgtExpr& e) const {
    switch (e.kind()) {
      case TgtExpr::Kind::Var:
        return e.ident() == x ? r : e;
      case TgtExpr::Kind::Nat:
      case TgtExpr::Kind::Add:
        return e;
      case TgtExpr::Kind::App: {
        TgtExpr f = (*this)(e.fn());
        TgtExpr a = (*this)(e.arg());
        if (f.same_node(e.fn()) && a.same_node(e.arg())) return e;
        return TgtExpr::app(std::move(f), std::move(a));
      }
      case TgtExpr::Kind::Choice: {
        TgtExpr l = (*this)(e.lhs());
        TgtExpr rr = (*this)(e.rhs());
        if (l.same_node(e.lhs()) && rr.same_node(e.rhs())) return e;
        return TgtExpr::choice(std::move(l), e.name(), std::move(rr));
      }
      case TgtExpr::Kind::NameApp: {
        TgtExpr f = (*this)(e.fn());
        if (f.same_node(e.fn())) return e;
        return TgtExpr::name_app(std::move(f), e.name());
      }
      case TgtExpr::Kind::NameAbs: {
        std::string binder = e.ident();
        TgtExpr body = e.body();
        if (fnv_r.contains(binder)) {
          if (!free_vars(body).contains(x)) return e;
          std::set<std::string> taken = fnv_r;
          auto inner = free_name_vars(body);
          taken.insert(inner.begin(), inner.end());
          std::string renamed = fresh_ident(binder, taken);
          body = name_subst(body, binder, Name::var(renamed));
          binder = std::move(renamed);
        }
        TgtExpr b = (*this)(body);
        if (b.same_node(e.body())) return e;
        return TgtExpr::name_abs(std::move(binder), std::move(b));
      }
      case TgtExpr::Kind::Abs:
      case TgtExpr::Kind::Fix: {
        if (e.ident() == x) return e;
        std::string binder = e.ident();
        TgtExpr body = e.body();
        if (fv_r.contains(binder)) {
          auto fv_body = free_vars(body);
          if (!fv_body.contains(x)) return e;
          std::set<std::string> taken = fv_r;
          taken.insert(fv_body.begin(), fv_body.end());
          taken.insert(x);
          std::string renamed = fresh_ident(binder, taken);
          body = subst_term(body, binder, TgtExpr::var(renamed));
          binder = std::move(renamed);
        }
        TgtExpr b = (*this)(body);
        if (b.same_node(e.body())) return e;
        return e.is(TgtExpr::Kind::Abs) ? TgtExpr::abs(std::move(binder), e.annot(), std::move(b))
                                        : TgtExpr::fix(std::move(binder), e.annot(), std::move(b));
      }
    }
    return e;
  }
};

}  // namespace

TgtExpr subst_term(const TgtExpr& e, const std::string& x, const TgtExpr& replacement) {
  TermSubst s{x, replacement, free_vars(replacement), free_name_vars(replacement)};
  return s(e);
}

// ---------------------------------------------------------------------------
// Alpha keys. Name binders are replaced by level-numbered placeholders before
// effects are keyed, so alternation order inside effects is stable under
// renaming.

namespace {

struct KeyBuilder {
  std::vector<std::string> terms;
  std::vector<std::pair<std::string, std::string>> names;  // original -> placeholder
  std::string out;

  const std::string* lookup_name(const std::string& v) const {
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      if (it->first == v) return &it->second;
    }
    return nullptr;
  }

  void name(const Name& n) {
    out += '[';
    for (const auto& a : n.atoms()) {
      if (a.is_var()) {
        if (const auto* p = lookup_name(a.var)) {
          out += *p;
          out += ';';
          continue;
        }
      }
      out += atom_key(a);
    }
    out += ']';
  }

  void effect(const Effect& e) {
    if (e.closed()) {
      out += e.key();
      return;
    }
    std::set<std::string> vs;
    e.collect_vars(vs);
    Effect renamed = e;
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      if (vs.contains(it->first)) {
        renamed = renamed.subst(it->first, Name::var(it->second));
        vs.erase(it->first);
      }
    }
    out += renamed.key();
  }

  void push_name(const std::string& v) { names.emplace_back(v, "%" + std::to_string(names.size())); }

  void type(const TgtType& t) {
    switch (t.kind()) {
      case TgtType::Kind::Nat:
        out += 'N';
        return;
      case TgtType::Kind::Arrow:
        out += '>';
        type(t.dom());
        effect(t.latent());
        type(t.cod());
        return;
      case TgtType::Kind::Forall:
        out += 'A';
        push_name(t.binder());
        effect(t.latent());
        type(t.body());
        names.pop_back();
        return;
    }
  }

  void expr(const TgtExpr& e) {
    switch (e.kind()) {
      case TgtExpr::Kind::Var: {
        auto it = std::find(terms.rbegin(), terms.rend(), e.ident());
        if (it == terms.rend()) {
          out += '\'';
          out += e.ident();
        } else {
          out += '#';
          out += std::to_string(it - terms.rbegin());
        }
        out += ';';
        return;
      }
      case TgtExpr::Kind::App:
        out += '@';
        expr(e.fn());
        expr(e.arg());
        return;
      case TgtExpr::Kind::Choice:
        out += '|';
        name(e.name());
        expr(e.lhs());
        expr(e.rhs());
        return;
      case TgtExpr::Kind::NameApp:
        out += '$';
        expr(e.fn());
        name(e.name());
        return;
      case TgtExpr::Kind::NameAbs:
        out += 'L';
        push_name(e.ident());
        expr(e.body());
        names.pop_back();
        return;
      case TgtExpr::Kind::Abs:
      case TgtExpr::Kind::Fix:
        out += e.is(TgtExpr::Kind::Abs) ? '\\' : 'F';
        type(e.annot());
        terms.push_back(e.ident());
        expr(e.body());
        terms.pop_back();
        return;
      case TgtExpr::Kind::Nat:
        out += 'n';
        out += std::to_string(e.value());
        out += ';';
        return;
      case TgtExpr::Kind::Add:
        out += '+';
        return;
    }
  }
};

}  // namespace

std::string alpha_key(const TgtExpr& e) {
  KeyBuilder kb;
  kb.out.reserve(e.size() * 4);
  kb.expr(e);
  return std::move(kb.out);
}

std::string alpha_key(const TgtType& t) {
  KeyBuilder kb;
  kb.type(t);
  return std::move(kb.out);
}

bool alpha_eq(const TgtExpr& a, const TgtExpr& b) { return a.same_node(b) || alpha_key(a) == alpha_key(b); }
bool alpha_eq(const TgtType& a, const TgtType& b) { return a.same_node(b) || alpha_key(a) == alpha_key(b); }

}  // namespace cochoice
