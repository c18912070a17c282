#include "cochoice/effect.hpp"

#include <algorithm>

namespace cochoice {

std::string atom_key(const NameAtom& a) {
  switch (a.kind) {
    // Digits order o before b, which keeps sorted alternations readable.
    case NameAtom::Kind::On:
      return "1";
    case NameAtom::Kind::Off:
      return "2";
    case NameAtom::Kind::Var:
      return "$" + a.var + ";";
  }
  return {};
}

Effect Effect::make(Kind k, Name w, std::vector<Effect> children) {
  Node n{k, std::move(w), std::move(children), {}, false, false, false};
  switch (k) {
    case Kind::Empty:
      n.key = "0";
      n.empty_language = true;
      break;
    case Kind::Lit:
      n.key = "<";
      for (const auto& a : n.word.atoms()) n.key += atom_key(a);
      n.key += ">";
      n.has_vars = n.word.has_vars();
      n.nullable = n.word.empty();
      break;
    case Kind::Concat:
      n.key = "(" + n.children[0].key() + "." + n.children[1].key() + ")";
      n.has_vars = !n.children[0].closed() || !n.children[1].closed();
      n.nullable = n.children[0].nullable() && n.children[1].nullable();
      break;
    case Kind::Alt:
      n.key = "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) n.key += "|";
        n.key += n.children[i].key();
        n.has_vars = n.has_vars || !n.children[i].closed();
        n.nullable = n.nullable || n.children[i].nullable();
      }
      n.key += ")";
      break;
    case Kind::Star:
      n.key = "(" + n.children[0].key() + ")*";
      n.has_vars = !n.children[0].closed();
      n.nullable = true;
      break;
  }
  return Effect(std::make_shared<const Node>(std::move(n)));
}

Effect::Effect() : Effect(empty()) {}

Effect Effect::empty() {
  static const Effect e = make(Kind::Empty, {}, {});
  return e;
}

Effect Effect::lit(Name word) { return make(Kind::Lit, std::move(word), {}); }

Effect Effect::concat(const Effect& lhs, const Effect& rhs) {
  if (lhs.kind() == Kind::Empty || rhs.kind() == Kind::Empty) return empty();
  if (lhs.kind() == Kind::Lit && lhs.word().empty()) return rhs;
  if (rhs.kind() == Kind::Lit && rhs.word().empty()) return lhs;
  if (lhs.kind() == Kind::Concat) return concat(lhs.lhs(), concat(lhs.rhs(), rhs));
  if (lhs.kind() == Kind::Lit) {
    if (rhs.kind() == Kind::Lit) return lit(lhs.word() + rhs.word());
    if (rhs.kind() == Kind::Concat && rhs.lhs().kind() == Kind::Lit) {
      return make(Kind::Concat, {}, {lit(lhs.word() + rhs.lhs().word()), rhs.rhs()});
    }
  }
  return make(Kind::Concat, {}, {lhs, rhs});
}

Effect Effect::alt(const Effect& lhs, const Effect& rhs) { return alt(std::vector<Effect>{lhs, rhs}); }

Effect Effect::alt(const std::vector<Effect>& branches) {
  std::vector<Effect> flat;
  for (const auto& b : branches) {
    if (b.kind() == Kind::Alt) {
      flat.insert(flat.end(), b.children().begin(), b.children().end());
    } else if (b.kind() != Kind::Empty) {
      flat.push_back(b);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  return make(Kind::Alt, {}, std::move(flat));
}

Effect Effect::star(const Effect& body) {
  if (body.kind() == Kind::Empty || (body.kind() == Kind::Lit && body.word().empty())) return eps();
  if (body.kind() == Kind::Star) return body;
  if (body.kind() == Kind::Alt) {
    // (eps + r)* = r*
    std::vector<Effect> rest;
    for (const auto& c : body.children()) {
      if (!(c.kind() == Kind::Lit && c.word().empty())) rest.push_back(c);
    }
    if (rest.size() != body.children().size()) return star(alt(rest));
  }
  return make(Kind::Star, {}, {body});
}

Effect Effect::any_word() {
  static const Effect e = star(alt(atom(NameAtom::on()), atom(NameAtom::off())));
  return e;
}

void Effect::collect_atoms(std::set<NameAtom>& out) const {
  if (kind() == Kind::Lit) {
    for (const auto& a : word().atoms()) out.insert(a);
  }
  for (const auto& c : children()) c.collect_atoms(out);
}

void Effect::collect_vars(std::set<std::string>& out) const {
  if (closed()) return;
  if (kind() == Kind::Lit) {
    for (const auto& a : word().atoms()) {
      if (a.is_var()) out.insert(a.var);
    }
  }
  for (const auto& c : children()) c.collect_vars(out);
}

Effect Effect::subst(const std::string& var, const Name& by) const {
  if (closed()) return *this;
  switch (kind()) {
    case Kind::Empty:
      return *this;
    case Kind::Lit:
      return lit(word().subst(var, by));
    case Kind::Concat:
      return concat(lhs().subst(var, by), rhs().subst(var, by));
    case Kind::Alt: {
      std::vector<Effect> out;
      out.reserve(children().size());
      for (const auto& c : children()) out.push_back(c.subst(var, by));
      return alt(out);
    }
    case Kind::Star:
      return star(body().subst(var, by));
  }
  return *this;
}

}  // namespace cochoice
