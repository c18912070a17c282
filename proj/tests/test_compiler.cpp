#include <doctest.h>

#include <map>
#include <optional>
#include <set>

#include "cochoice/compiler.hpp"
#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

using namespace cochoice;

namespace {

SrcExpr S(const char* s) { return parse_src(s); }
TgtExpr T(const char* s) { return parse_tgt(s); }
Name N(const char* s) { return parse_name(s); }

// Choice names within a compiled term. Distinct except that the two branches
// of one choice may reuse each other's names, since they never both run.
// Bound name variables are renamed apart so sibling binders do not collide.
struct Freshness {
  std::map<std::string, std::string> env;
  int next = 0;

  Name rename(const Name& n) const {
    Name out;
    for (const auto& a : n.atoms()) {
      auto it = a.is_var() ? env.find(a.var) : env.end();
      out += it == env.end() ? a : NameAtom::variable(it->second);
    }
    return out;
  }

  static std::optional<std::set<Name>> join(std::optional<std::set<Name>> a, const std::optional<std::set<Name>>& b) {
    if (!a || !b) return std::nullopt;
    for (const auto& n : *b) {
      if (!a->insert(n).second) return std::nullopt;
    }
    return a;
  }

  std::optional<std::set<Name>> names(const TgtExpr& m) {
    switch (m.kind()) {
      case TgtExpr::Kind::App:
        return join(names(m.lhs()), names(m.rhs()));
      case TgtExpr::Kind::Choice: {
        auto l = names(m.lhs());
        auto r = names(m.rhs());
        if (!l || !r) return std::nullopt;
        const Name own = rename(m.name());
        if (l->contains(own) || r->contains(own)) return std::nullopt;
        l->insert(r->begin(), r->end());
        l->insert(own);
        return l;
      }
      case TgtExpr::Kind::NameAbs: {
        auto saved = env;
        env[m.ident()] = m.ident() + "#" + std::to_string(next++);
        auto out = names(m.body());
        env = std::move(saved);
        return out;
      }
      case TgtExpr::Kind::Abs:
      case TgtExpr::Kind::Fix:
        return names(m.body());
      case TgtExpr::Kind::NameApp:
        return names(m.fn());
      default:
        return std::set<Name>{};
    }
  }
};

}  // namespace

TEST_CASE("compile_expr") {
  CHECK(alpha_eq(compile_expr(S("x"), "a", Name::eps()), T("x")));
  CHECK(alpha_eq(compile_expr(S("\\x:nat. x"), "a", Name::eps()), T("\\x:nat. /\\c. x")));
  CHECK(alpha_eq(compile_expr(S("(x || y)"), "a", Name::eps()), T("(x ||{a b} y)")));
  CHECK(alpha_eq(compile_expr(S("x y"), "a", Name::eps()), T("x y @ (a b)")));
  // Seeds extend per position; both choice branches share theirs.
  CHECK(alpha_eq(compile_expr(S("(x y || z)"), "a", N("o")), T("(x y @ (a o o b) ||{a o b} z)")));
  CHECK(alpha_eq(compile_expr(S("(x || y) z"), "a", Name::eps()), T("(x ||{a o o b} y) z @ (a b)")));
  CHECK(alpha_eq(compile_expr(S("fix f:nat->nat. \\x:nat. f x"), "a", Name::eps()),
                 T("fix f:nat -{}-> all c.{c (o + b)*} nat. \\x:nat. /\\d. f x @ (d b)")));
  CHECK_THROWS_AS(compile_expr(S("add 1 2"), "a", Name::eps()), CompileError);
}

TEST_CASE("compile_type") {
  CHECK(alpha_eq(compile_type(SrcType::nat()), TgtType::nat()));
  CHECK(alpha_eq(compile_type(parse_src_type("nat -> nat")), parse_tgt_type("nat -{}-> all a.{a (o + b)*} nat")));
  CHECK(alpha_eq(compile_type(parse_src_type("(nat -> nat) -> nat")),
                 parse_tgt_type("(nat -{}-> all a.{a (o + b)*} nat) -{}-> all c.{c (o + b)*} nat")));
}

TEST_CASE("compile_env") {
  CHECK(compile_env({}).empty());
  const TgtEnv one = compile_env({{"x", SrcType::nat()}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].var() == "x");
  const TgtEnv fn = compile_env({{"f", parse_src_type("nat -> nat")}, {"x", SrcType::nat()}});
  REQUIRE(fn.size() == 2);
  const auto& entry = std::get<TgtBinding::Term>(fn[0].entry);
  CHECK(entry.var == "f");
  CHECK(alpha_eq(entry.type, compile_type(parse_src_type("nat -> nat"))));
  CHECK(wf_env(fn));
}

TEST_CASE("erase") {
  CHECK(alpha_eq(erase(T("x @ o")), S("x (\\x:nat. x)")));
  CHECK(alpha_eq(erase(T("/\\a. x")), S("\\y:nat->nat. x")));
  CHECK(alpha_eq(erase(T("(1 ||{o b} 2)")), S("(1 || 2)")));
  CHECK(erase(parse_tgt_type("nat -{o}-> all a.{a} nat")) == parse_src_type("nat -> (nat -> nat) -> nat"));
}

TEST_CASE("pseudo_compile") {
  CHECK(alpha_eq(pseudo_compile(S("x")), S("x")));
  CHECK(alpha_eq(pseudo_compile(S("x y")), S("x y (\\x:nat. x)")));
  CHECK(alpha_eq(pseudo_compile(S("\\x:nat. x")), S("\\x:nat. \\y:nat->nat. x")));
  CHECK(alpha_eq(pseudo_compile(S("\\f:nat->nat. f")),
                 S("\\f:nat->(nat->nat)->nat. \\y:nat->nat. f")));
  CHECK_THROWS_AS(pseudo_compile(S("add 1")), CompileError);
}

TEST_CASE("compiler properties on generated terms") {
  const std::vector<Name> seeds{Name::eps(), N("o"), N("b o")};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SrcExpr e = gen_typed_source(seed, 1 + seed % 30);
    CAPTURE(format(e));
    const SrcType t = src_typecheck({}, e);
    for (const auto& s : seeds) {
      const TgtExpr m = compile_expr(e, "a", s);
      CHECK(alpha_eq(erase(m), pseudo_compile(e)));

      CHECK(Freshness{}.names(m).has_value());

      const TypedEffect te = effect_typecheck({TgtBinding::name("a")}, m);
      CHECK(subtype(te.type, compile_type(t)));
      const Effect bound = Effect::concat(Effect::lit(Name::var("a") + s), Effect::any_word());
      CHECK(includes(te.effect.effect(), bound));
    }
    // Deterministic up to alpha_eq.
    CHECK(alpha_eq(compile_expr(e, "a", Name::eps()), compile_expr(e, "a", Name::eps())));
    // Pseudo-compiled terms stay well typed.
    CHECK(src_typecheck({}, pseudo_compile(e)) == pseudo_compile(t));
  }
}
