#pragma once

#include <vector>

#include "cochoice/effect.hpp"
#include "cochoice/explore.hpp"
#include "cochoice/name.hpp"
#include "cochoice/target.hpp"

namespace cochoice {

/// Prefix normal form of an inferred effect: either the empty language, or a
/// name prefix holding every variable followed by a closed suffix.
struct EffectPNF {
  bool bottom = true;
  Name prefix;
  Effect suffix;

  static EffectPNF none() { return {}; }
  /// Collapses to bottom when the suffix language is empty.
  static EffectPNF of(Name prefix, Effect suffix);

  Effect effect() const;
};

/// Splits an effect into prefix and closed suffix by following its forced
/// leading atoms. Throws TypeError(NonClosedResidual) when no such split
/// exists. The prefix ends at its last variable.
EffectPNF extract_pnf(const Effect& e);

struct Alignment {
  Name prefix;
  std::vector<Effect> suffixes;
};

/// Re-expresses every input over the longest common prefix. Throws
/// TypeError(EffectAlignError) when a leftover prefix holds a variable.
Alignment pnf_align(const std::vector<EffectPNF>& effects);

bool wf_name(const TgtEnv& env, const Name& n);
bool wf_effect(const TgtEnv& env, const Effect& e);
bool wf_type(const TgtEnv& env, const TgtType& t);
bool wf_env(const TgtEnv& env);

bool subtype(const TgtType& sub, const TgtType& super);

struct TypedEffect {
  TgtType type;
  EffectPNF effect;
};

/// Algorithmic effect checker. Throws TypeError.
TypedEffect effect_typecheck(const TgtEnv& env, const TgtExpr& m);

/// Successors under the world-indexed reduction.
std::vector<Step<TgtExpr>> tgt_step_all(const TgtExpr& m, const World& delta);
/// Successors under the non-coordinated reduction (no world rules).
std::vector<Step<TgtExpr>> tgt_step_nc(const TgtExpr& m);

EvalResult<TgtExpr> tgt_eval(const TgtExpr& m, const World& delta, const EvalOptions& opt);
EvalResult<TgtExpr> tgt_eval_nc(const TgtExpr& m, const EvalOptions& opt);

}  // namespace cochoice
