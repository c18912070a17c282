#pragma once

#include <vector>

#include "cochoice/explore.hpp"
#include "cochoice/source.hpp"

namespace cochoice {

/// Syntax-directed typing with annotated binders. Throws TypeError.
SrcType src_typecheck(const SrcEnv& env, const SrcExpr& e);

/// Every e' with e -> e', tagged with the rule applied at the root.
std::vector<Step<SrcExpr>> src_step_all(const SrcExpr& e);

EvalResult<SrcExpr> src_eval(const SrcExpr& e, const EvalOptions& opt);

}  // namespace cochoice
