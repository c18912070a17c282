#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cochoice {

/// Types of the source calculus: nat | T -> T.
class SrcType {
 public:
  enum class Kind : unsigned char { Nat, Arrow };

  /// nat
  SrcType() = default;

  static SrcType nat();
  static SrcType arrow(SrcType dom, SrcType cod);

  Kind kind() const;
  bool is_arrow() const { return kind() == Kind::Arrow; }
  const SrcType& dom() const;
  const SrcType& cod() const;

  friend bool operator==(const SrcType& a, const SrcType& b);

 private:
  struct Node;
  explicit SrcType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct SrcType::Node {
  Kind kind;
  SrcType dom;
  SrcType cod;
};

inline SrcType::Kind SrcType::kind() const { return node_ ? node_->kind : Kind::Nat; }
inline const SrcType& SrcType::dom() const { return node_->dom; }
inline const SrcType& SrcType::cod() const { return node_->cod; }

/// Expressions of the source calculus with non-collapse choice. `Nat` and
/// `Add` are the demo extension: inert numerals and a curried addition.
class SrcExpr {
 public:
  enum class Kind : unsigned char { Var, App, Abs, Fix, Choice, Nat, Add };

  static SrcExpr var(std::string x);
  static SrcExpr app(SrcExpr fn, SrcExpr arg);
  static SrcExpr abs(std::string x, SrcType annot, SrcExpr body);
  static SrcExpr fix(std::string f, SrcType annot, SrcExpr body);
  static SrcExpr choice(SrcExpr lhs, SrcExpr rhs);
  static SrcExpr nat(std::uint64_t n);
  static SrcExpr add();

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& ident() const;
  const SrcType& annot() const;
  const SrcExpr& body() const;  // Abs, Fix
  const SrcExpr& fn() const;    // App
  const SrcExpr& arg() const;   // App
  const SrcExpr& lhs() const;   // Choice
  const SrcExpr& rhs() const;   // Choice
  std::uint64_t value() const;  // Nat

  /// Abs, Nat, add and `add n` are values.
  bool is_value() const;
  bool mentions_builtin() const;
  /// Number of AST nodes (annotations not counted).
  std::size_t size() const;

  bool same_node(const SrcExpr& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit SrcExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SrcExpr make(Kind k, std::string ident, SrcType annot,
                   std::vector<SrcExpr> kids, std::uint64_t value = 0);
  std::shared_ptr<const Node> node_;
};

struct SrcExpr::Node {
  Kind kind;
  std::string ident;
  SrcType annot;
  std::vector<SrcExpr> kids;
  std::uint64_t value = 0;
  std::size_t size = 1;
  bool builtin = false;
};

inline SrcExpr::Kind SrcExpr::kind() const { return node_->kind; }
inline const std::string& SrcExpr::ident() const { return node_->ident; }
inline const SrcType& SrcExpr::annot() const { return node_->annot; }
inline const SrcExpr& SrcExpr::body() const { return node_->kids.at(0); }
inline const SrcExpr& SrcExpr::fn() const { return node_->kids.at(0); }
inline const SrcExpr& SrcExpr::arg() const { return node_->kids.at(1); }
inline const SrcExpr& SrcExpr::lhs() const { return node_->kids.at(0); }
inline const SrcExpr& SrcExpr::rhs() const { return node_->kids.at(1); }
inline std::uint64_t SrcExpr::value() const { return node_->value; }
inline std::size_t SrcExpr::size() const { return node_->size; }
inline bool SrcExpr::mentions_builtin() const { return node_->builtin; }

/// Ordered typing environment x1:T1, ..., xn:Tn.
using SrcEnv = std::vector<std::pair<std::string, SrcType>>;

std::set<std::string> free_vars(const SrcExpr& e);
/// Every identifier occurring in `e`, bound or free.
void collect_idents(const SrcExpr& e, std::set<std::string>& out);

/// Capture-avoiding e[x := replacement].
SrcExpr subst_term(const SrcExpr& e, const std::string& x, const SrcExpr& replacement);

/// Canonical key identifying `e` up to alpha-equivalence.
std::string alpha_key(const SrcExpr& e);
bool alpha_eq(const SrcExpr& a, const SrcExpr& b);

/// `base` primed until it avoids `taken`.
std::string fresh_ident(const std::string& base, const std::set<std::string>& taken);

}  // namespace cochoice
