#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cochoice/name.hpp"

namespace cochoice {

/// A regular expression over name atoms. Effects are immutable and always
/// kept in a canonical form by the smart constructors:
///  - concatenation is right-nested, absorbs the empty language and drops eps,
///    and adjacent literals are merged into one word;
///  - alternation is n-ary, flattened, sorted and duplicate-free, with the
///    empty language removed;
///  - star collapses nested stars and stars of eps or the empty language.
/// The canonical form gives derivative iteration a finite state space.
class Effect {
 public:
  enum class Kind : unsigned char { Empty, Lit, Concat, Alt, Star };

  /// Defaults to the empty language.
  Effect();

  static Effect empty();
  static Effect eps() { return lit(Name::eps()); }
  static Effect lit(Name word);
  static Effect atom(NameAtom a) { return lit(Name{std::move(a)}); }
  static Effect concat(const Effect& lhs, const Effect& rhs);
  static Effect alt(const Effect& lhs, const Effect& rhs);
  static Effect alt(const std::vector<Effect>& branches);
  static Effect star(const Effect& body);

  /// (o + b)*
  static Effect any_word();

  Kind kind() const { return node_->kind; }
  const Name& word() const { return node_->word; }
  const std::vector<Effect>& children() const { return node_->children; }
  const Effect& lhs() const { return node_->children.at(0); }
  const Effect& rhs() const { return node_->children.at(1); }
  const Effect& body() const { return node_->children.at(0); }

  /// True iff no name variable occurs.
  bool closed() const { return !node_->has_vars; }
  bool nullable() const { return node_->nullable; }
  /// True iff the denoted language is empty.
  bool is_empty_language() const { return node_->empty_language; }

  /// Unambiguous canonical serialisation; equal keys mean equal structure.
  const std::string& key() const { return node_->key; }

  void collect_atoms(std::set<NameAtom>& out) const;
  void collect_vars(std::set<std::string>& out) const;

  /// Replace variable `var` by `by` in every literal.
  Effect subst(const std::string& var, const Name& by) const;

  friend bool operator==(const Effect& a, const Effect& b) { return a.key() == b.key(); }
  friend bool operator<(const Effect& a, const Effect& b) { return a.key() < b.key(); }

 private:
  struct Node {
    Kind kind;
    Name word;
    std::vector<Effect> children;
    std::string key;
    bool has_vars;
    bool nullable;
    bool empty_language;
  };
  explicit Effect(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Effect make(Kind k, Name w, std::vector<Effect> children);

  std::shared_ptr<const Node> node_;
};

std::string atom_key(const NameAtom& a);

}  // namespace cochoice
