#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cochoice {

/// One letter of a name: on (o), off (b) or a name variable.
struct NameAtom {
  enum class Kind : unsigned char { On, Off, Var };

  Kind kind = Kind::On;
  std::string var;  // only meaningful for Kind::Var

  static NameAtom on() { return {Kind::On, {}}; }
  static NameAtom off() { return {Kind::Off, {}}; }
  static NameAtom variable(std::string id) { return {Kind::Var, std::move(id)}; }

  bool is_var() const { return kind == Kind::Var; }

  auto operator<=>(const NameAtom&) const = default;
};

/// A name in normal form: a flat word of atoms. The empty word is eps.
class Name {
 public:
  Name() = default;
  explicit Name(std::vector<NameAtom> atoms) : atoms_(std::move(atoms)) {}
  Name(std::initializer_list<NameAtom> atoms) : atoms_(atoms) {}

  static Name eps() { return {}; }
  static Name on() { return Name{NameAtom::on()}; }
  static Name off() { return Name{NameAtom::off()}; }
  static Name var(std::string id) { return Name{NameAtom::variable(std::move(id))}; }

  std::span<const NameAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const NameAtom& operator[](std::size_t i) const { return atoms_[i]; }

  bool has_vars() const;
  bool mentions(const std::string& var) const;

  /// First `n` atoms / everything after the first `n` atoms.
  Name take(std::size_t n) const;
  Name drop(std::size_t n) const;
  bool starts_with(const Name& prefix) const;

  Name& operator+=(const Name& rhs);
  Name& operator+=(const NameAtom& atom);
  friend Name operator+(Name lhs, const Name& rhs) { return lhs += rhs; }
  friend Name operator+(Name lhs, const NameAtom& rhs) { return lhs += rhs; }

  /// Replace every occurrence of variable `var` by the word `by`.
  Name subst(const std::string& var, const Name& by) const;

  auto operator<=>(const Name&) const = default;

 private:
  std::vector<NameAtom> atoms_;
};

Name common_prefix(const Name& a, const Name& b);

/// Unnormalised name expression, as written with explicit eps and nested
/// concatenation. Only used to state the monoid laws; everything else works
/// on `Name`.
class NameTerm {
 public:
  enum class Kind : unsigned char { Eps, Atom, Concat };

  static NameTerm eps();
  static NameTerm atom(NameAtom a);
  static NameTerm concat(NameTerm lhs, NameTerm rhs);

  Kind kind() const { return node_->kind; }
  const NameAtom& atom() const { return node_->atom; }
  const NameTerm& lhs() const { return node_->children.at(0); }
  const NameTerm& rhs() const { return node_->children.at(1); }

 private:
  struct Node {
    Kind kind;
    NameAtom atom;
    std::vector<NameTerm> children;
  };
  explicit NameTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Name normalize_name(const NameTerm& n);
bool name_eq(const Name& a, const Name& b);
bool name_eq(const NameTerm& a, const NameTerm& b);

enum class Polarity : unsigned char { Plus, Minus };

/// A set of polarised names consulted by the world rules. Both polarities of
/// the same name may be present.
class World {
 public:
  World() = default;

  bool contains(const Name& n, Polarity p) const { return entries_.contains({n, p}); }
  World with(const Name& n, Polarity p) const;
  bool subset_of(const World& other) const;
  bool empty() const { return entries_.empty(); }
  const std::set<std::pair<Name, Polarity>>& entries() const { return entries_; }

  void insert(const Name& n, Polarity p) { entries_.insert({n, p}); }

 private:
  std::set<std::pair<Name, Polarity>> entries_;
};

}  // namespace cochoice
