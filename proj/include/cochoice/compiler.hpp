#pragma once

#include <string>

#include "cochoice/name.hpp"
#include "cochoice/source.hpp"
#include "cochoice/target.hpp"

namespace cochoice {

/// Seed-threaded compilation. `seed` must be closed. Name binders introduced
/// for lambdas are `<alpha>_<k>` with k counting up within one call. Throws
/// CompileError on builtins and std::invalid_argument on an open seed.
TgtExpr compile_expr(const SrcExpr& e, const std::string& alpha, const Name& seed);

/// nat => nat; T1 -> T2 => [T1] -{}-> all a.{a (o + b)*} [T2]
TgtType compile_type(const SrcType& t);
TgtEnv compile_env(const SrcEnv& env);

/// Name erasure. Name abstractions become lambdas over nat -> nat with fresh
/// binders y1, y2, ...; name applications apply the identity on nat.
SrcExpr erase(const TgtExpr& m);
SrcType erase(const TgtType& t);

/// Pseudo compilation. Throws CompileError on builtins.
SrcExpr pseudo_compile(const SrcExpr& e);
SrcType pseudo_compile(const SrcType& t);

/// \x:nat. x, the dummy argument shared by erasure and pseudo compilation.
SrcExpr dummy_arg();
SrcType dummy_type();

}  // namespace cochoice
