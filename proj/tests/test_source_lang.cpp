#include <doctest.h>

#include <algorithm>

#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"

using namespace cochoice;

namespace {

SrcExpr S(const char* s) { return parse_src(s); }
SrcType Ty(const char* s) { return parse_src_type(s); }

ErrorCode code_of(const char* text) {
  try {
    src_typecheck({}, S(text));
  } catch (const TypeError& e) {
    return e.code();
  }
  FAIL("expected a type error for " << text);
  return ErrorCode::IllFormed;
}

void leaves(const SrcExpr& e, std::vector<std::uint64_t>& out) {
  if (e.is(SrcExpr::Kind::Choice)) {
    leaves(e.lhs(), out);
    leaves(e.rhs(), out);
  } else {
    REQUIRE(e.is(SrcExpr::Kind::Nat));
    out.push_back(e.value());
  }
}

std::set<std::string> keys(const std::vector<SrcExpr>& v) {
  std::set<std::string> out;
  for (const auto& e : v) out.insert(alpha_key(e));
  return out;
}

}  // namespace

TEST_CASE("src_typecheck") {
  CHECK(src_typecheck({}, S("\\x:nat. x")) == Ty("nat -> nat"));
  CHECK(src_typecheck({}, S("(\\x:nat. x || \\y:nat. y)")) == Ty("nat -> nat"));
  CHECK(src_typecheck({}, S("fix f:nat->nat. \\x:nat. f x")) == Ty("nat -> nat"));
  CHECK(src_typecheck({{"g", Ty("nat -> nat")}}, S("g 1")) == SrcType::nat());

  CHECK(code_of("x") == ErrorCode::UnboundVariable);
  CHECK(code_of("(1 || \\x:nat. x)") == ErrorCode::TypeMismatch);
  CHECK(code_of("1 2") == ErrorCode::NonFunctionApplication);
  CHECK(code_of("fix f:nat. f") == ErrorCode::FixBodyNotLambda);
  // The untyped identity-on-identity spelling does not typecheck.
  CHECK(code_of("(\\x:nat.x)(\\x:nat.x)") == ErrorCode::TypeMismatch);
  CHECK_THROWS_AS(src_typecheck({{"x", SrcType::nat()}, {"x", SrcType::nat()}}, S("x")), TypeError);
}

TEST_CASE("src_step_all") {
  auto one = src_step_all(S("(\\x:nat. x) 1"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].rule == "SR-Beta");
  CHECK(alpha_eq(one[0].next, S("1")));

  auto dist = src_step_all(S("(\\x:nat. x) (\\y:nat. y || \\z:nat. z)"));
  REQUIRE(dist.size() == 1);
  CHECK(dist[0].rule == "SR-DistAppR");
  CHECK(alpha_eq(dist[0].next, S("((\\x:nat. x) (\\y:nat. y) || (\\x:nat. x) (\\z:nat. z))")));

  CHECK(src_step_all(S("(\\x:nat. x || \\y:nat. y)")).empty());
  CHECK(src_step_all(S("(1 || (2 || 3))")).empty());

  // A choice in function position distributes; its branches may also step.
  auto left = src_step_all(S("((\\x:nat. x) (\\y:nat. y) || \\z:nat. z) 1"));
  std::set<std::string> rules;
  for (const auto& s : left) rules.insert(s.rule);
  CHECK(rules == std::set<std::string>{"SR-DistAppL", "SR-AppL"});

  // Arguments are evaluated only once the function is a value.
  auto arg = src_step_all(S("((\\f:nat->nat. f) (\\x:nat. x)) ((\\x:nat. x) 1)"));
  REQUIRE(arg.size() == 1);
  CHECK(arg[0].rule == "SR-AppL");
}

TEST_CASE("src_eval") {
  EvalOptions opt;
  opt.fuel = 10;
  auto r = src_eval(S("(\\x:nat. x) 1"), opt);
  REQUIRE(r.ok());
  REQUIRE(r.normal_forms.size() == 1);
  CHECK(alpha_eq(r.normal_forms[0], S("1")));

  opt.fuel = 50;
  auto demo = src_eval(S("add (1 || 2) (3 || 4)"), opt);
  REQUIRE(demo.ok());
  REQUIRE(demo.normal_forms.size() == 1);
  std::vector<std::uint64_t> got;
  leaves(demo.normal_forms[0], got);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::uint64_t>{4, 5, 5, 6});

  opt.fuel = 20;
  auto loop = src_eval(S("(fix f:nat->nat. \\x:nat. f x) 0"), opt);
  CHECK_FALSE(loop.ok());
  CHECK_FALSE(loop.frontier.empty());
}

TEST_CASE("source properties on generated terms") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const SrcExpr e = gen_typed_source(seed, 1 + seed % 25);
    CAPTURE(format(e));
    const SrcType t = src_typecheck({}, e);
    const auto steps = src_step_all(e);
    if (e.is_value()) CHECK(steps.empty());
    for (const auto& s : steps) CHECK(src_typecheck({}, s.next) == t);
    std::vector<SrcExpr> first, second;
    for (const auto& st : steps) first.push_back(st.next);
    for (const auto& st : src_step_all(e)) second.push_back(st.next);
    CHECK(keys(first) == keys(second));
  }
}

TEST_CASE("evaluation order does not change normal forms or divergence") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const SrcExpr e = gen_typed_source(seed, 1 + seed % 18);
    CAPTURE(format(e));
    EvalOptions fast;
    fast.max_states = 20000;
    EvalOptions full = fast;
    full.all_interleavings = true;
    const auto a = src_eval(e, fast);
    const auto b = src_eval(e, full);
    if (b.reason == "state cap") continue;  // the reference itself gave up
    CHECK(a.ok() == b.ok());
    if (a.ok() && b.ok()) CHECK(keys(a.normal_forms) == keys(b.normal_forms));
    CHECK(a.explored <= b.explored);
  }
}

TEST_CASE("evaluation order agrees on handwritten terms") {
  const char* terms[] = {
      "(fix f:nat->nat. \\x:nat. f x) 0",
      "(fix f:nat->nat. \\x:nat. (x || f x)) 0",
      "((\\x:nat. x) 1 || (fix f:nat->nat. \\x:nat. f x) 2)",
      "add ((\\x:nat. x) 1 || 2) (add (3 || 4) 5)",
      "((\\x:nat. x || \\y:nat. add y y) (1 || 2))",
  };
  for (const char* t : terms) {
    CAPTURE(t);
    EvalOptions fast;
    fast.fuel = 40;
    EvalOptions full = fast;
    full.all_interleavings = true;
    const auto a = src_eval(S(t), fast);
    const auto b = src_eval(S(t), full);
    CHECK(a.ok() == b.ok());
    if (a.ok()) CHECK(keys(a.normal_forms) == keys(b.normal_forms));
  }
}
