#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cochoice/effect.hpp"
#include "cochoice/name.hpp"

namespace cochoice {

/// Types of the target calculus: nat | t -{eff}-> t | all a.{eff} t.
/// In a forall the binder scopes over both the latent effect and the body.
class TgtType {
 public:
  enum class Kind : unsigned char { Nat, Arrow, Forall };

  /// nat
  TgtType() = default;

  static TgtType nat();
  static TgtType arrow(TgtType dom, Effect latent, TgtType cod);
  static TgtType forall(std::string binder, Effect latent, TgtType body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const TgtType& dom() const;
  const TgtType& cod() const;
  const TgtType& body() const;  // Forall
  const Effect& latent() const;
  const std::string& binder() const;

  bool same_node(const TgtType& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit TgtType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TgtType::Node {
  Kind kind;
  std::string binder;
  Effect latent;
  TgtType lhs;
  TgtType rhs;
};

inline TgtType::Kind TgtType::kind() const { return node_ ? node_->kind : Kind::Nat; }
inline const TgtType& TgtType::dom() const { return node_->lhs; }
inline const TgtType& TgtType::cod() const { return node_->rhs; }
inline const TgtType& TgtType::body() const { return node_->rhs; }
inline const Effect& TgtType::latent() const { return node_->latent; }
inline const std::string& TgtType::binder() const { return node_->binder; }

/// Expressions of the target calculus with coordinated (named) choice and
/// name abstraction/application. `Nat` and `Add` are the demo extension.
class TgtExpr {
 public:
  enum class Kind : unsigned char { Var, App, Abs, NameApp, NameAbs, Fix, Choice, Nat, Add };

  static TgtExpr var(std::string x);
  static TgtExpr app(TgtExpr fn, TgtExpr arg);
  static TgtExpr abs(std::string x, TgtType annot, TgtExpr body);
  static TgtExpr name_app(TgtExpr fn, Name name);
  static TgtExpr name_abs(std::string alpha, TgtExpr body);
  static TgtExpr fix(std::string f, TgtType annot, TgtExpr body);
  static TgtExpr choice(TgtExpr lhs, Name name, TgtExpr rhs);
  static TgtExpr nat(std::uint64_t n);
  static TgtExpr add();

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& ident() const;  // Var, Abs, Fix: term variable; NameAbs: name variable
  const TgtType& annot() const;
  const Name& name() const;           // NameApp, Choice
  const TgtExpr& body() const;        // Abs, NameAbs, Fix
  const TgtExpr& fn() const;          // App, NameApp
  const TgtExpr& arg() const;         // App
  const TgtExpr& lhs() const;         // Choice
  const TgtExpr& rhs() const;         // Choice
  std::uint64_t value() const;

  /// Abs, NameAbs, Nat, add and `add n` are values.
  bool is_value() const;
  bool mentions_builtin() const;
  std::size_t size() const;

  bool same_node(const TgtExpr& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit TgtExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static TgtExpr make(Kind k, std::string ident, TgtType annot, Name name,
                   std::vector<TgtExpr> kids, std::uint64_t value = 0);
  std::shared_ptr<const Node> node_;
};

struct TgtExpr::Node {
  Kind kind;
  std::string ident;
  TgtType annot;
  Name name;
  std::vector<TgtExpr> kids;
  std::uint64_t value = 0;
  std::size_t size = 1;
  bool builtin = false;
};

inline TgtExpr::Kind TgtExpr::kind() const { return node_->kind; }
inline const std::string& TgtExpr::ident() const { return node_->ident; }
inline const TgtType& TgtExpr::annot() const { return node_->annot; }
inline const Name& TgtExpr::name() const { return node_->name; }
inline const TgtExpr& TgtExpr::body() const { return node_->kids.at(0); }
inline const TgtExpr& TgtExpr::fn() const { return node_->kids.at(0); }
inline const TgtExpr& TgtExpr::arg() const { return node_->kids.at(1); }
inline const TgtExpr& TgtExpr::lhs() const { return node_->kids.at(0); }
inline const TgtExpr& TgtExpr::rhs() const { return node_->kids.at(1); }
inline std::uint64_t TgtExpr::value() const { return node_->value; }
inline std::size_t TgtExpr::size() const { return node_->size; }
inline bool TgtExpr::mentions_builtin() const { return node_->builtin; }

/// Target environment entry: either x:t or a name variable binding.
struct TgtBinding {
  struct Term {
    std::string var;
    TgtType type;
  };
  struct NameVar {
    std::string var;
  };
  std::variant<Term, NameVar> entry;

  static TgtBinding term(std::string x, TgtType t) { return {Term{std::move(x), std::move(t)}}; }
  static TgtBinding name(std::string a) { return {NameVar{std::move(a)}}; }
  bool is_name() const { return std::holds_alternative<NameVar>(entry); }
  const std::string& var() const;
};

using TgtEnv = std::vector<TgtBinding>;

std::set<std::string> free_vars(const TgtExpr& e);
std::set<std::string> free_name_vars(const TgtExpr& e);
std::set<std::string> free_name_vars(const TgtType& t);
void collect_idents(const TgtExpr& e, std::set<std::string>& out);
/// Term and name identifiers, bound or free, including those inside types.
void collect_all_names(const TgtExpr& e, std::set<std::string>& out);

/// Capture-avoiding M[x := replacement]. Term and name binders in M are
/// renamed if they would capture free variables of the replacement.
TgtExpr subst_term(const TgtExpr& e, const std::string& x, const TgtExpr& replacement);

/// Capture-avoiding name substitution [alpha := by].
TgtExpr name_subst(const TgtExpr& e, const std::string& alpha, const Name& by);
TgtType name_subst(const TgtType& t, const std::string& alpha, const Name& by);
Effect name_subst(const Effect& e, const std::string& alpha, const Name& by);
Name name_subst(const Name& n, const std::string& alpha, const Name& by);

std::string alpha_key(const TgtExpr& e);
std::string alpha_key(const TgtType& t);
bool alpha_eq(const TgtExpr& a, const TgtExpr& b);
bool alpha_eq(const TgtType& a, const TgtType& b);

}  // namespace cochoice
