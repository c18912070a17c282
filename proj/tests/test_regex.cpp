#include <doctest.h>

#include <random>

#include "cochoice/regex.hpp"
#include "cochoice/syntax.hpp"
#include "oracle.hpp"

using namespace cochoice;

namespace {

Effect E(const char* s) { return parse_effect(s); }
Name N(const char* s) { return parse_name(s); }

// L(deriv(e, a)) against {w | a w in L(e)}, all words up to `len`.
void check_deriv_against_oracle(const Effect& e, char a, std::size_t len) {
  const auto full = oracle::words(e, len + 1);
  oracle::Lang expect;
  for (const auto& w : full) {
    if (!w.empty() && w[0] == a && w.size() <= len + 1) expect.insert(w.substr(1));
  }
  const NameAtom atom = oracle::name_of(std::string(1, a))[0];
  CHECK(oracle::words(deriv(e, atom), len) == expect);
}

}  // namespace

TEST_CASE("nullable") {
  CHECK(nullable(E("(o + b)*")));
  CHECK_FALSE(nullable(E("{}")));
  CHECK_FALSE(nullable(E("o b")));
  CHECK(nullable(E("eps")));
}

TEST_CASE("deriv examples agree with enumeration") {
  check_deriv_against_oracle(E("o b"), 'o', 3);
  check_deriv_against_oracle(E("o + b"), 'o', 3);
  check_deriv_against_oracle(E("(o + b)*"), 'b', 3);
  CHECK(equivalent(deriv(E("o b"), NameAtom::on()), E("b")));
  CHECK(equivalent(deriv(E("o + b"), NameAtom::on()), E("eps")));
  CHECK(equivalent(deriv(E("(o + b)*"), NameAtom::off()), E("(o + b)*")));
}

TEST_CASE("member") {
  CHECK(member(N("o b"), E("(o + b)*")));
  CHECK_FALSE(member(N("eps"), E("{}")));
  CHECK(member(N("a b"), E("a (o + b)*")));
  CHECK_FALSE(member(N("b a"), E("a (o + b)*")));
}

TEST_CASE("includes") {
  CHECK(includes(E("a o"), E("a (o + b)*")));
  CHECK_FALSE(includes(E("o"), E("b")));
  CHECK(includes(E("{}"), E("o b a")));
  CHECK(includes(E("{}"), E("{}")));
  CHECK_FALSE(includes(E("a (o + b)*"), E("a o")));
  const auto cex = inclusion_counterexample(E("(o + b)*"), E("o*"));
  REQUIRE(cex.has_value());
  CHECK(member(*cex, E("(o + b)*")));
  CHECK_FALSE(member(*cex, E("o*")));

  // Cross-check of the first example against word membership.
  for (const auto& w : oracle::all_words("oba", 6)) {
    const Name n = oracle::name_of(w);
    if (member(n, E("a o"))) CHECK(member(n, E("a (o + b)*")));
  }
}

TEST_CASE("disjoint") {
  CHECK(disjoint(E("o (o + b)*"), E("b (o + b)*")));
  CHECK_FALSE(disjoint(E("eps"), E("eps")));
  CHECK(disjoint(E("{}"), E("(o + b)*")));
  const auto w = overlap_witness(E("o*"), E("(o o)*"));
  REQUIRE(w.has_value());
  CHECK(member(*w, E("o*")));
  CHECK(member(*w, E("(o o)*")));
  for (const auto& word : oracle::all_words("ob", 6)) {
    const Name n = oracle::name_of(word);
    CHECK_FALSE((member(n, E("o (o + b)*")) && member(n, E("b (o + b)*"))));
  }
}

TEST_CASE("quotient_word") {
  CHECK(equivalent(quotient_word(N("a"), E("a b (o + b)*")), E("b (o + b)*")));
  CHECK_THROWS_AS(quotient_word(N("b"), E("o b")), CoverageError);
  try {
    quotient_word(N("b"), E("o b"));
  } catch (const CoverageError& err) {
    REQUIRE(err.witness().has_value());
    CHECK(format(*err.witness()) == "o b");
  }
  CHECK(quotient_word(N("a o"), E("{}")).is_empty_language());
  CHECK(equivalent(quotient_word(N("eps"), E("o + b")), E("o + b")));
}

TEST_CASE("regular expression identities") {
  const Effect e1 = E("a (o + b)*");
  const Effect e2 = E("o b*");
  const Effect e3 = E("c + b");
  CHECK(equivalent(Effect::concat(Effect::eps(), e1), e1));
  const Effect lhs = Effect::concat(e1, Effect::alt(e2, e3));
  const Effect rhs = Effect::alt(Effect::concat(e1, e2), Effect::concat(e1, e3));
  CHECK(includes(lhs, rhs));
  CHECK(includes(rhs, lhs));
}

TEST_CASE("random effects: deriv soundness and order properties") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 150; ++i) {
    const Effect a = oracle::random_effect(rng, 1 + rng() % 10);
    const Effect b = oracle::random_effect(rng, 1 + rng() % 10);
    const Effect c = oracle::random_effect(rng, 1 + rng() % 10);
    CAPTURE(format(a));
    CAPTURE(format(b));
    CAPTURE(format(c));
    for (char x : std::string("obac")) check_deriv_against_oracle(a, x, 4);

    CHECK(includes(a, a));
    if (includes(a, b) && includes(b, c)) CHECK(includes(a, c));
    if (disjoint(a, b) && includes(a, b)) CHECK(a.is_empty_language());
    CHECK(a.is_empty_language() == oracle::is_empty(a));
  }
}

TEST_CASE("random effects agree with the enumeration oracle") {
  constexpr std::size_t kLen = 6;
  std::mt19937_64 rng(11);
  const auto universe = oracle::all_words("obac", kLen);
  for (int i = 0; i < 100; ++i) {
    const Effect a = oracle::random_effect(rng, 1 + rng() % 12);
    const Effect b = oracle::random_effect(rng, 1 + rng() % 12);
    CAPTURE(format(a));
    CAPTURE(format(b));
    const auto la = oracle::words(a, kLen);
    const auto lb = oracle::words(b, kLen);
    for (std::size_t k = 0; k < 40; ++k) {
      const auto& w = universe[rng() % universe.size()];
      CHECK(member(oracle::name_of(w), a) == la.contains(w));
    }
    CHECK(includes(a, b) == oracle::subset(la, lb));
    CHECK(disjoint(a, b) == !oracle::intersects(la, lb));
  }
}
