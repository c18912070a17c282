#include <unordered_set>

#include "cochoice/compiler.hpp"
#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

namespace cochoice {

namespace {

CheckReport fail(std::string why) { return {CheckStatus::CounterExample, std::move(why), 0}; }

CheckReport same(const SrcExpr& lhs, const SrcExpr& rhs, const char* what) {
  if (alpha_eq(lhs, rhs)) return {};
  return fail(std::string(what) + ": " + format(lhs) + " vs " + format(rhs));
}

}  // namespace

CheckReport check_trans_sound(const SrcEnv& env, const SrcExpr& e, const std::string& alpha, const Name& seed) {
  const SrcType t = src_typecheck(env, e);
  TgtEnv tenv = compile_env(env);
  tenv.push_back(TgtBinding::name(alpha));
  const TgtExpr m = compile_expr(e, alpha, seed);
  TypedEffect got;
  try {
    got = effect_typecheck(tenv, m);
  } catch (const TypeError& err) {
    return fail(format(m) + " rejected: " + err.what());
  }
  const TgtType want = compile_type(t);
  if (!subtype(got.type, want)) return fail("type " + format(got.type) + " is not below " + format(want));
  const Effect bound = Effect::concat(Effect::lit(Name::var(alpha) + seed), Effect::any_word());
  if (auto w = inclusion_counterexample(got.effect.effect(), bound)) {
    return fail("effect " + format(got.effect.effect()) + " produces " + format(*w) + " outside " + format(bound));
  }
  return {};
}

CheckReport lemma_erase_compile(const SrcExpr& e, const std::string& alpha, const Name& seed) {
  return same(erase(compile_expr(e, alpha, seed)), pseudo_compile(e), "erase(compile e) vs pseudo(e)");
}

CheckReport lemma_erase_subst(const TgtExpr& m, const std::string& x, const TgtExpr& replacement) {
  return same(erase(subst_term(m, x, replacement)), subst_term(erase(m), x, erase(replacement)),
              "erase(M[x:=N]) vs erase(M)[x:=erase(N)]");
}

CheckReport lemma_erase_name_subst(const TgtExpr& m, const std::string& alpha, const Name& phi) {
  return same(erase(name_subst(m, alpha, phi)), erase(m), "erase(M[a:=phi]) vs erase(M)");
}

CheckReport lemma_pseudo_subst(const SrcExpr& e, const std::string& x, const SrcExpr& replacement) {
  return same(pseudo_compile(subst_term(e, x, replacement)), subst_term(pseudo_compile(e), x, pseudo_compile(replacement)),
              "pseudo(e[x:=e']) vs pseudo(e)[x:=pseudo(e')]");
}

CheckReport lemma_pred_red(const TgtExpr& m, std::size_t depth) {
  CheckReport rep;
  std::vector<TgtExpr> level{m};
  std::unordered_set<std::string> seen{alpha_key(m)};
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<TgtExpr> next;
    for (const auto& x : level) {
      ++rep.explored;
      std::unordered_set<std::string> src;
      for (const auto& s : src_step_all(erase(x))) src.insert(alpha_key(s.next));
      for (auto& s : tgt_step_nc(x)) {
        if (!src.contains(alpha_key(erase(s.next)))) {
          return fail(format(x) + " => " + format(s.next) + " by " + s.rule + " but the erasure does not step");
        }
        if (seen.insert(alpha_key(s.next)).second) next.push_back(std::move(s.next));
      }
    }
    level = std::move(next);
  }
  return rep;
}

SeedSearchReport seed_alternation_regression(std::size_t max_len) {
  const SrcType nat_nat = SrcType::arrow(SrcType::nat(), SrcType::nat());
  const SrcExpr source =
      SrcExpr::app(SrcExpr::abs("x", nat_nat, SrcExpr::var("x")), SrcExpr::abs("x", SrcType::nat(), SrcExpr::var("x")));
  const std::string alpha = "a";
  const TgtExpr compiled = compile_expr(source, alpha, Name::eps());
  auto src_steps = src_step_all(source);
  auto tgt_steps = tgt_step_all(compiled, World{});
  if (src_steps.size() != 1 || tgt_steps.size() != 1) {
    throw std::logic_error("regression term no longer has a single step");
  }
  SeedSearchReport rep{source, compiled, tgt_steps.front().next, src_steps.front().next};

  // Every closed seed up to max_len, against the original seed variable and
  // one variable that occurs nowhere.
  std::vector<std::string> roots{alpha, "fresh"};
  std::vector<Name> seeds{Name::eps()};
  for (std::size_t len = 1, begin = 0; len <= max_len; ++len) {
    const std::size_t end = seeds.size();
    for (std::size_t i = begin; i < end; ++i) {
      seeds.push_back(seeds[i] + NameAtom::on());
      seeds.push_back(seeds[i] + NameAtom::off());
    }
    begin = end;
  }
  const std::string target = alpha_key(rep.successor);
  for (const auto& seed : seeds) {
    ++rep.seeds_tried;
    for (const auto& root : roots) {
      if (alpha_key(compile_expr(rep.source_successor, root, seed)) == target) rep.found_in_image = true;
    }
  }
  try {
    effect_typecheck({TgtBinding::name(alpha)}, rep.successor);
    rep.successor_typechecks = true;
  } catch (const TypeError&) {
    rep.successor_typechecks = false;
  }
  return rep;
}

}  // namespace cochoice
