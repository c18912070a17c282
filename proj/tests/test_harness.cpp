#include <doctest.h>

#include "cochoice/compiler.hpp"
#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

using namespace cochoice;

namespace {

SrcExpr S(const char* s) { return parse_src(s); }
TgtExpr T(const char* s) { return parse_tgt(s); }

std::set<std::string> keys(const std::vector<Step<TgtExpr>>& steps) {
  std::set<std::string> out;
  for (const auto& s : steps) out.insert(alpha_key(s.next));
  return out;
}

}  // namespace

TEST_CASE("check_strong_bisim") {
  CHECK(check_strong_bisim(S("\\x:nat. x"), T("\\x:nat. x"), 8).ok());

  const TgtExpr mc = compile_closed(S("(\\x:nat->nat. x) (\\y:nat. y)"));
  const auto rep = check_strong_bisim(erase(mc), mc, 10);
  CHECK(rep.ok());
  CHECK(rep.explored > 1);

  CHECK_THROWS_AS(check_strong_bisim(S("\\x:nat. x"), T("(\\x:nat. x) (\\x:nat. x)"), 8), PreconditionViolated);
  CHECK(check_strong_bisim(S("(1 || 2)"), T("(1 ||{o} 2)"), 8).ok());
}

TEST_CASE("check_weak_bisim_pseudo") {
  CHECK(check_weak_bisim_pseudo(S("\\x:nat. x"), 8, 200).ok());
  CHECK(check_weak_bisim_pseudo(S("(\\x:nat->nat. x) (\\y:nat. y)"), 8, 200).ok());
  CHECK(check_weak_bisim_pseudo(S("((\\x:nat->nat. x) || (\\y:nat->nat. y)) (\\z:nat. z)"), 8, 200).ok());
  CHECK_THROWS_AS(check_weak_bisim_pseudo(S("add 1 2"), 8, 200), PreconditionViolated);
  CHECK_THROWS_AS(check_weak_bisim_pseudo(S("1 2"), 8, 200), PreconditionViolated);

  const auto loop = check_weak_bisim_pseudo(S("(fix f:nat->nat. \\x:nat. f x) 0"), 8, 200);
  CHECK(loop.status != CheckStatus::CounterExample);
}

TEST_CASE("check_subject_reduction") {
  const auto beta = check_subject_reduction(T("(\\x:nat. x) 1"), 8);
  CHECK(beta.ok());
  CHECK(beta.explored >= 2);
  CHECK(check_subject_reduction(T("\\x:nat. x"), 8).ok());
  CHECK_THROWS_AS(check_subject_reduction(T("((x ||{o} y) ||{o} z)"), 8), PreconditionViolated);
}

TEST_CASE("check_non_coordination") {
  const TgtExpr m = compile_expr(S("(\\z:nat. z) (x || y)"), "a", Name::eps());
  const TgtExpr closed = subst_term(subst_term(name_subst(m, "a", Name::eps()), "x", T("1")), "y", T("2"));
  CHECK(check_non_coordination(closed, 8).ok());
  CHECK(check_non_coordination(T("(1 ||{o} 2)"), 8).ok());

  const TgtExpr coord = T("((1 ||{o} 2) ||{o} (3 ||{o} 4))");
  CHECK_THROWS_AS(check_non_coordination(coord, 8), PreconditionViolated);
  // Negative control: the coordinating term has strictly more world steps.
  const auto all = keys(tgt_step_all(coord, World{}));
  const auto nc = keys(tgt_step_nc(coord));
  CHECK(nc.size() < all.size());
  for (const auto& k : nc) CHECK(all.contains(k));
}

TEST_CASE("gen_typed_source") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t size = 1 + seed % 30;
    const SrcExpr e = gen_typed_source(seed, size);
    CHECK(e.size() <= size);
    CHECK(free_vars(e).empty());
    CHECK_FALSE(e.mentions_builtin());
    CHECK_NOTHROW(src_typecheck({}, e));
    CHECK(alpha_eq(e, gen_typed_source(seed, size)));
  }
  CHECK(gen_typed_source(0, 1).is_value());
}

TEST_CASE("gen_typed_source mixes constructs") {
  std::size_t choices = 0;
  std::size_t fixes = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::string text = format(gen_typed_source(seed, 1 + seed % 30));
    if (text.find("||") != std::string::npos) ++choices;
    if (text.find("fix") != std::string::npos) ++fixes;
  }
  CHECK(choices > 100);
  CHECK(fixes > 0);
}

TEST_CASE("end_to_end") {
  CHECK(end_to_end(S("(\\x:nat->nat. x) (\\y:nat. y)"), {}).ok());
  const auto two = end_to_end(S("(\\x:nat. x || \\y:nat. y)"), {});
  CHECK(two.ok());
  CHECK(end_to_end(S("\\x:nat. x"), {}).ok());
  CHECK(end_to_end(S("(\\f:nat->nat. f 1) (\\x:nat. x || \\y:nat. 7)"), {}).ok());
  const auto loop = end_to_end(S("(fix f:nat->nat. \\x:nat. f x) 0"), {});
  CHECK(loop.status == CheckStatus::FuelExhausted);
}

TEST_CASE("erasure and pseudo-compilation lemmas") {
  const SrcExpr e = S("(\\f:nat->nat. f x) (\\y:nat. (y || x))");
  CHECK(lemma_erase_compile(e, "a", Name::on()).ok());
  const TgtExpr m = compile_expr(e, "a", Name::eps());
  CHECK(lemma_erase_subst(m, "x", compile_expr(S("(1 || 2)"), "c", Name::off())).ok());
  CHECK(lemma_erase_name_subst(m, "a", parse_name("o b")).ok());
  CHECK(lemma_pseudo_subst(e, "x", S("(\\z:nat. z) 3")).ok());
  CHECK(lemma_pred_red(compile_closed(S("(\\f:nat->nat. f 1) (\\y:nat. (y || 2))")), 8).ok());
}

TEST_CASE("a seed is alternated") {
  const SeedSearchReport rep = seed_alternation_regression(6);
  CHECK(rep.seeds_tried == 127);
  CHECK_FALSE(rep.found_in_image);
  CHECK(rep.successor_typechecks);
  CHECK(alpha_eq(rep.source_successor, S("\\x:nat. x")));
}

TEST_CASE("suite runners agree") {
  SuiteOptions opt;
  opt.n = 24;
  opt.seed = 5;
  const auto serial = run_suite_serial(opt);
  const auto parallel = run_suite_parallel(opt);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].render() == parallel[i].render());
  for (const auto& line : serial) {
    CAPTURE(line.render());
    CHECK(line.status != CheckStatus::CounterExample);
  }
}

TEST_CASE("suite line format") {
  SuiteLine line;
  line.index = 3;
  line.seed = 45;
  line.check = "weak-bisim";
  line.status = CheckStatus::FuelExhausted;
  CHECK(line.render() == "case=3 seed=45 check=weak-bisim status=FUEL");
  line.status = CheckStatus::CounterExample;
  line.witness = "(1 || 2)";
  CHECK(line.render() == "case=3 seed=45 check=weak-bisim status=FAIL witness=(1 || 2)");
}
