#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cochoice/name.hpp"
#include "cochoice/source.hpp"
#include "cochoice/target.hpp"

namespace cochoice {

enum class CheckStatus : unsigned char { Ok, CounterExample, FuelExhausted };

std::string_view to_string(CheckStatus s);

struct BisimWitness {
  std::string left;       // source side of the failing pair
  std::string right;      // other side of the failing pair
  std::string unmatched;  // successor without a partner
  std::vector<std::string> trace;  // rule names leading to the pair
};

struct BisimReport {
  CheckStatus status = CheckStatus::Ok;
  std::optional<BisimWitness> witness;
  std::size_t explored = 0;
  std::string detail;

  bool ok() const { return status == CheckStatus::Ok; }
};

/// Lockstep check of e ~ M: e -> e' must be answered by M ->{} M' with
/// erase(M') = e' and vice versa, and every reached M' must stay typable.
/// Throws PreconditionViolated unless erase(M) = e and M typechecks closed.
BisimReport check_strong_bisim(const SrcExpr& e, const TgtExpr& m, std::size_t depth);

/// Weak bisimulation between e and its pseudo compilation. Single steps on
/// one side are answered by up to `fuel` steps on the other. Throws
/// PreconditionViolated for ill-typed or builtin-using e.
BisimReport check_weak_bisim_pseudo(const SrcExpr& e, std::size_t depth, std::size_t fuel);

struct CheckReport {
  CheckStatus status = CheckStatus::Ok;
  std::string detail;
  std::size_t explored = 0;

  bool ok() const { return status == CheckStatus::Ok; }
};

/// Every term reachable under ->{} within `depth` retypes below the root.
CheckReport check_subject_reduction(const TgtExpr& m, std::size_t depth);

/// Every ->{} step of every reachable term is also a non-coordinated step.
CheckReport check_non_coordination(const TgtExpr& m, std::size_t depth);

/// Compiled e typechecks under [[env]], alpha with type below [[T]] and effect
/// inside alpha seed (o + b)*.
CheckReport check_trans_sound(const SrcEnv& env, const SrcExpr& e, const std::string& alpha, const Name& seed);

// Erasure and pseudo-compilation identities.
CheckReport lemma_erase_compile(const SrcExpr& e, const std::string& alpha, const Name& seed);
CheckReport lemma_erase_subst(const TgtExpr& m, const std::string& x, const TgtExpr& replacement);
CheckReport lemma_erase_name_subst(const TgtExpr& m, const std::string& alpha, const Name& phi);
CheckReport lemma_pseudo_subst(const SrcExpr& e, const std::string& x, const SrcExpr& replacement);
/// M => M' implies erase(M) -> erase(M'), for every non-coordinated step
/// reachable within `depth`.
CheckReport lemma_pred_red(const TgtExpr& m, std::size_t depth);

struct EndToEndOptions {
  std::size_t fuel = 200;
  std::size_t depth = 8;
  std::size_t max_states = 20000;
  /// Also run both bisimulation checks.
  bool with_bisim = true;
};

/// Normal forms of e and of its compiled closed instance correspond through
/// pseudo compilation and erasure; also runs both bisimulation checks.
CheckReport end_to_end(const SrcExpr& e, const EndToEndOptions& opt);

/// The closed instance compile_expr(e, "a", eps)[a := eps].
TgtExpr compile_closed(const SrcExpr& e);

// Random well-typed programs.

/// Closed, well-typed, builtin-free term with at most `size` AST nodes.
SrcExpr gen_typed_source(std::uint64_t seed, std::size_t size);

struct OpenTerm {
  SrcEnv env;
  SrcExpr expr;
  SrcType type;
};

/// Well-typed term over `env`, which may mention its variables.
OpenTerm gen_open_source(std::uint64_t seed, std::size_t size, const SrcEnv& env);

/// A random name of length at most 3 over o, b and the given variables.
Name gen_name(std::uint64_t seed, const std::vector<std::string>& vars);

/// Compiled seed-free regression: the single source step of the term below
/// has a target counterpart outside the compiler image for every seed up to
/// `max_len`, although that counterpart still typechecks.
struct SeedSearchReport {
  SrcExpr source;
  TgtExpr compiled;
  TgtExpr successor;
  SrcExpr source_successor;
  std::size_t seeds_tried = 0;
  bool found_in_image = false;
  bool successor_typechecks = false;
};
SeedSearchReport seed_alternation_regression(std::size_t max_len);

// Suite runner.

struct SuiteOptions {
  std::size_t n = 300;
  std::uint64_t seed = 42;
  std::size_t depth = 8;
  std::size_t fuel = 200;
};

struct SuiteLine {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string check;
  CheckStatus status = CheckStatus::Ok;
  std::string witness;

  std::string render() const;
};

/// Checks run for case i use seed S + i and size 1 + i % 30.
std::vector<SuiteLine> run_case(const SuiteOptions& opt, std::size_t index);
std::vector<SuiteLine> run_suite_serial(const SuiteOptions& opt);
std::vector<SuiteLine> run_suite_parallel(const SuiteOptions& opt);

}  // namespace cochoice
