#include "cochoice/name.hpp"

#include <algorithm>

namespace cochoice {

bool Name::has_vars() const {
  return std::ranges::any_of(atoms_, [](const NameAtom& a) { return a.is_var(); });
}

bool Name::mentions(const std::string& var) const {
  return std::ranges::any_of(atoms_, [&](const NameAtom& a) { return a.is_var() && a.var == var; });
}

Name Name::take(std::size_t n) const {
  n = std::min(n, atoms_.size());
  return Name(std::vector<NameAtom>(atoms_.begin(), atoms_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Name Name::drop(std::size_t n) const {
  n = std::min(n, atoms_.size());
  return Name(std::vector<NameAtom>(atoms_.begin() + static_cast<std::ptrdiff_t>(n), atoms_.end()));
}

bool Name::starts_with(const Name& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.atoms_.begin(), prefix.atoms_.end(), atoms_.begin());
}

Name& Name::operator+=(const Name& rhs) {
  atoms_.insert(atoms_.end(), rhs.atoms_.begin(), rhs.atoms_.end());
  return *this;
}

Name& Name::operator+=(const NameAtom& atom) {
  atoms_.push_back(atom);
  return *this;
}

Name Name::subst(const std::string& var, const Name& by) const {
  if (!mentions(var)) return *this;
  std::vector<NameAtom> out;
  out.reserve(atoms_.size() + by.size());
  for (const auto& a : atoms_) {
    if (a.is_var() && a.var == var) {
      out.insert(out.end(), by.atoms_.begin(), by.atoms_.end());
    } else {
      out.push_back(a);
    }
  }
  return Name(std::move(out));
}

Name common_prefix(const Name& a, const Name& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return a.take(n);
}

NameTerm NameTerm::eps() { return NameTerm(std::make_shared<const Node>(Node{Kind::Eps, {}, {}})); }

NameTerm NameTerm::atom(NameAtom a) {
  return NameTerm(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

NameTerm NameTerm::concat(NameTerm lhs, NameTerm rhs) {
  return NameTerm(std::make_shared<const Node>(Node{Kind::Concat, {}, {std::move(lhs), std::move(rhs)}}));
}

namespace {
void flatten(const NameTerm& t, Name& out) {
  switch (t.kind()) {
    case NameTerm::Kind::Eps:
      return;
    case NameTerm::Kind::Atom:
      out += t.atom();
      return;
    case NameTerm::Kind::Concat:
      flatten(t.lhs(), out);
      flatten(t.rhs(), out);
      return;
  }
}
}  // namespace

Name normalize_name(const NameTerm& n) {
  Name out;
  flatten(n, out);
  return out;
}

bool name_eq(const Name& a, const Name& b) { return a == b; }

bool name_eq(const NameTerm& a, const NameTerm& b) { return normalize_name(a) == normalize_name(b); }

World World::with(const Name& n, Polarity p) const {
  World w = *this;
  w.entries_.insert({n, p});
  return w;
}

bool World::subset_of(const World& other) const {
  return std::ranges::all_of(entries_, [&](const auto& e) { return other.entries_.contains(e); });
}

}  // namespace cochoice
