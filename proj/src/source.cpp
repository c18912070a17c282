#include "cochoice/source.hpp"

#include <algorithm>

namespace cochoice {

SrcType SrcType::nat() { return SrcType(std::make_shared<const Node>(Node{Kind::Nat, {}, {}})); }

SrcType SrcType::arrow(SrcType dom, SrcType cod) {
  return SrcType(std::make_shared<const Node>(Node{Kind::Arrow, std::move(dom), std::move(cod)}));
}

bool operator==(const SrcType& a, const SrcType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == SrcType::Kind::Nat) return true;
  return a.dom() == b.dom() && a.cod() == b.cod();
}

SrcExpr SrcExpr::make(SrcExpr::Kind k, std::string ident, SrcType annot,
                   std::vector<SrcExpr> kids, std::uint64_t value) {
  std::size_t size = 1;
  bool builtin = k == SrcExpr::Kind::Add;
  for (const auto& c : kids) {
    size += c.size();
    builtin = builtin || c.mentions_builtin();
  }
  return SrcExpr(std::make_shared<const SrcExpr::Node>(
      SrcExpr::Node{k, std::move(ident), std::move(annot), std::move(kids), value, size, builtin}));
}

SrcExpr SrcExpr::var(std::string x) { return make(Kind::Var, std::move(x), {}, {}); }
SrcExpr SrcExpr::app(SrcExpr fn, SrcExpr arg) {
  return make(Kind::App, {}, {}, {std::move(fn), std::move(arg)});
}
SrcExpr SrcExpr::abs(std::string x, SrcType annot, SrcExpr body) {
  return make(Kind::Abs, std::move(x), std::move(annot), {std::move(body)});
}
SrcExpr SrcExpr::fix(std::string f, SrcType annot, SrcExpr body) {
  return make(Kind::Fix, std::move(f), std::move(annot), {std::move(body)});
}
SrcExpr SrcExpr::choice(SrcExpr lhs, SrcExpr rhs) {
  return make(Kind::Choice, {}, {}, {std::move(lhs), std::move(rhs)});
}
SrcExpr SrcExpr::nat(std::uint64_t n) { return make(Kind::Nat, {}, {}, {}, n); }
SrcExpr SrcExpr::add() { return make(Kind::Add, {}, {}, {}); }

bool SrcExpr::is_value() const {
  switch (kind()) {
    case Kind::Abs:
    case Kind::Nat:
    case Kind::Add:
      return true;
    case Kind::App:
      return fn().is(Kind::Add) && arg().is(Kind::Nat);
    default:
      return false;
  }
}

namespace {
void free_vars_into(const SrcExpr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
      if (std::find(bound.begin(), bound.end(), e.ident()) == bound.end()) out.insert(e.ident());
      return;
    case SrcExpr::Kind::Abs:
    case SrcExpr::Kind::Fix:
      bound.push_back(e.ident());
      free_vars_into(e.body(), bound, out);
      bound.pop_back();
      return;
    case SrcExpr::Kind::App:
      free_vars_into(e.fn(), bound, out);
      free_vars_into(e.arg(), bound, out);
      return;
    case SrcExpr::Kind::Choice:
      free_vars_into(e.lhs(), bound, out);
      free_vars_into(e.rhs(), bound, out);
      return;
    case SrcExpr::Kind::Nat:
    case SrcExpr::Kind::Add:
      return;
  }
}
}  // namespace

std::set<std::string> free_vars(const SrcExpr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  free_vars_into(e, bound, out);
  return out;
}

void collect_idents(const SrcExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
      out.insert(e.ident());
      return;
    case SrcExpr::Kind::Abs:
    case SrcExpr::Kind::Fix:
      out.insert(e.ident());
      collect_idents(e.body(), out);
      return;
    case SrcExpr::Kind::App:
    case SrcExpr::Kind::Choice:
      collect_idents(e.lhs(), out);
      collect_idents(e.rhs(), out);
      return;
    default:
      return;
  }
}

std::string fresh_ident(const std::string& base, const std::set<std::string>& taken) {
  std::string candidate = base + "'";
  while (taken.contains(candidate)) candidate += "'";
  return candidate;
}

namespace {

SrcExpr subst_rec(const SrcExpr& e, const std::string& x, const SrcExpr& r, const std::set<std::string>& fv_r) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var:
      return e.ident() == x ? r : e;
    case SrcExpr::Kind::Nat:
    case SrcExpr::Kind::Add:
      return e;
    case SrcExpr::Kind::App: {
      SrcExpr f = subst_rec(e.fn(), x, r, fv_r);
      SrcExpr a = subst_rec(e.arg(), x, r, fv_r);
      if (f.same_node(e.fn()) && a.same_node(e.arg())) return e;
      return SrcExpr::app(std::move(f), std::move(a));
    }
    case SrcExpr::Kind::Choice: {
      SrcExpr l = subst_rec(e.lhs(), x, r, fv_r);
      SrcExpr rr = subst_rec(e.rhs(), x, r, fv_r);
      if (l.same_node(e.lhs()) && rr.same_node(e.rhs())) return e;
      return SrcExpr::choice(std::move(l), std::move(rr));
    }
    case SrcExpr::Kind::Abs:
    case SrcExpr::Kind::Fix: {
      if (e.ident() == x) return e;
      std::string binder = e.ident();
      SrcExpr body = e.body();
      if (fv_r.contains(binder)) {
        auto fv_body = free_vars(body);
        if (!fv_body.contains(x)) return e;
        std::set<std::string> taken = fv_r;
        taken.insert(fv_body.begin(), fv_body.end());
        taken.insert(x);
        std::string renamed = fresh_ident(binder, taken);
        body = subst_rec(body, binder, SrcExpr::var(renamed), {renamed});
        binder = std::move(renamed);
      }
      SrcExpr b = subst_rec(body, x, r, fv_r);
      if (b.same_node(e.body())) return e;
      return e.is(SrcExpr::Kind::Abs) ? SrcExpr::abs(std::move(binder), e.annot(), std::move(b))
                                      : SrcExpr::fix(std::move(binder), e.annot(), std::move(b));
    }
  }
  return e;
}

void type_key(const SrcType& t, std::string& out) {
  if (t.kind() == SrcType::Kind::Nat) {
    out += 'N';
    return;
  }
  out += '>';
  type_key(t.dom(), out);
  type_key(t.cod(), out);
}

void key_rec(const SrcExpr& e, std::vector<std::string>& scope, std::string& out) {
  switch (e.kind()) {
    case SrcExpr::Kind::Var: {
      auto it = std::find(scope.rbegin(), scope.rend(), e.ident());
      if (it == scope.rend()) {
        out += '\'';
        out += e.ident();
      } else {
        out += '#';
        out += std::to_string(it - scope.rbegin());
      }
      out += ';';
      return;
    }
    case SrcExpr::Kind::App:
      out += '@';
      key_rec(e.fn(), scope, out);
      key_rec(e.arg(), scope, out);
      return;
    case SrcExpr::Kind::Choice:
      out += '|';
      key_rec(e.lhs(), scope, out);
      key_rec(e.rhs(), scope, out);
      return;
    case SrcExpr::Kind::Abs:
    case SrcExpr::Kind::Fix:
      out += e.is(SrcExpr::Kind::Abs) ? '\\' : 'F';
      type_key(e.annot(), out);
      scope.push_back(e.ident());
      key_rec(e.body(), scope, out);
      scope.pop_back();
      return;
    case SrcExpr::Kind::Nat:
      out += 'n';
      out += std::to_string(e.value());
      out += ';';
      return;
    case SrcExpr::Kind::Add:
      out += '+';
      return;
  }
}

}  // namespace

SrcExpr subst_term(const SrcExpr& e, const std::string& x, const SrcExpr& replacement) {
  return subst_rec(e, x, replacement, free_vars(replacement));
}

std::string alpha_key(const SrcExpr& e) {
  std::string out;
  out.reserve(e.size() * 3);
  std::vector<std::string> scope;
  key_rec(e, scope, out);
  return out;
}

bool alpha_eq(const SrcExpr& a, const SrcExpr& b) { return a.same_node(b) || alpha_key(a) == alpha_key(b); }

}  // namespace cochoice
