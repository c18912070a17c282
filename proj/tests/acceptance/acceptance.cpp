// Acceptance run: one PASS/FAIL line per criterion, each with its wall time
// and time limit. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../oracle.hpp"
#include "cochoice/compiler.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

using namespace cochoice;

namespace {

constexpr std::size_t kCorpus = 300;
constexpr std::size_t kDepth = 8;
constexpr std::size_t kFuel = 200;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

SrcExpr corpus(std::size_t i) { return gen_typed_source(42 + i, 1 + i % 30); }

bool terminates(const SrcExpr& e) {
  EvalOptions opt;
  opt.fuel = kFuel;
  opt.max_states = 20000;
  return src_eval(e, opt).ok();
}

std::set<std::string> step_keys(const std::vector<Step<TgtExpr>>& steps) {
  std::set<std::string> out;
  for (const auto& s : steps) out.insert(alpha_key(s.next));
  return out;
}

Outcome ac1() {
  Outcome o;
  EvalOptions opt;
  opt.fuel = 50;
  const auto r = src_eval(parse_src("add (1 || 2) (3 || 4)"), opt);
  if (!r.ok() || r.normal_forms.size() != 1) {
    o.fail("evaluation did not end in one choice tree");
    return o;
  }
  std::vector<std::uint64_t> leaves;
  std::function<void(const SrcExpr&)> walk = [&](const SrcExpr& e) {
    if (e.is(SrcExpr::Kind::Choice)) {
      walk(e.lhs());
      walk(e.rhs());
    } else if (e.is(SrcExpr::Kind::Nat)) {
      leaves.push_back(e.value());
    } else {
      o.fail("non-numeral leaf " + format(e));
    }
  };
  walk(r.normal_forms[0]);
  std::sort(leaves.begin(), leaves.end());
  const std::set<std::uint64_t> values(leaves.begin(), leaves.end());
  if (leaves != std::vector<std::uint64_t>{4, 5, 5, 6}) o.fail("leaf multiset differs");
  if (values != std::set<std::uint64_t>{4, 5, 6}) o.fail("value set differs");
  o.detail = format(r.normal_forms[0]);
  return o;
}

Outcome ac2() {
  Outcome o;
  EvalOptions opt;
  opt.fuel = 100;
  const auto r = tgt_eval(parse_tgt("add (1 ||{A} 2) (3 ||{A} 4)"), parse_world(""), opt);
  if (!r.ok() || r.normal_forms.size() != 1 || !alpha_eq(r.normal_forms[0], parse_tgt("(4 ||{A} 6)"))) {
    o.fail("normal forms differ from (4 ||{A} 6)");
  } else {
    o.detail = format(r.normal_forms[0]);
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto shared = step_keys(tgt_step_all(parse_tgt("((1 ||{o} 2) ||{o} (3 ||{o} 4))"), World{}));
  const std::set<std::string> expected{alpha_key(parse_tgt("(1 ||{o} (3 ||{o} 4))")),
                                       alpha_key(parse_tgt("((1 ||{o} 2) ||{o} 4)"))};
  if (shared != expected) o.fail("successor set of the shared-name term differs");
  const auto distinct = tgt_step_all(parse_tgt("((1 ||{o o} 2) ||{o} (3 ||{o b} 4))"), World{});
  if (!distinct.empty()) o.fail("renamed term has successors");
  o.detail = std::to_string(shared.size()) + " collapsing successors, " + std::to_string(distinct.size()) +
             " after renaming";
  return o;
}

Outcome ac4() {
  Outcome o;
  const std::vector<Name> seeds{Name::eps(), Name::on(), Name{NameAtom::off(), NameAtom::on()}};
  std::size_t checks = 0;
  for (std::size_t i = 0; i < kCorpus; ++i) {
    const SrcExpr e = corpus(i);
    for (const auto& s : seeds) {
      ++checks;
      const auto r = check_trans_sound({}, e, "a", s);
      if (!r.ok()) o.fail("case " + std::to_string(i) + ": " + r.detail);
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " compilations accepted";
  return o;
}

Outcome ac5() {
  Outcome o;
  for (std::size_t i = 0; i < kCorpus; ++i) {
    const TgtExpr m = compile_closed(corpus(i));
    const auto sr = check_subject_reduction(m, kDepth);
    if (!sr.ok()) o.fail("case " + std::to_string(i) + " subject reduction: " + sr.detail);
    const auto nc = check_non_coordination(m, kDepth);
    if (!nc.ok()) o.fail("case " + std::to_string(i) + " non-coordination: " + nc.detail);
  }
  if (o.pass) o.detail = std::to_string(kCorpus) + " terms, zero violations";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::size_t divergent = 0;
  for (std::size_t i = 0; i < kCorpus; ++i) {
    const SrcExpr e = corpus(i);
    const bool ends = terminates(e);
    if (!ends) ++divergent;
    const TgtExpr m = compile_closed(e);
    const auto strong = check_strong_bisim(erase(m), m, kDepth);
    const auto weak = check_weak_bisim_pseudo(e, kDepth, kFuel);
    for (const auto* r : {&strong, &weak}) {
      const std::string which = r == &strong ? " strong: " : " weak: ";
      if (r->status == CheckStatus::CounterExample) {
        o.fail("case " + std::to_string(i) + which + r->detail);
      } else if (ends && r->status != CheckStatus::Ok) {
        o.fail("case " + std::to_string(i) + which + "fuel ran out on a terminating program");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(kCorpus) + " terms, " + std::to_string(divergent) + " divergent";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t compared = 0;
  EndToEndOptions opt;
  opt.fuel = kFuel;
  opt.depth = kDepth;
  opt.with_bisim = false;  // the bisimulations are criterion 6
  for (std::size_t i = 0; i < kCorpus; ++i) {
    const SrcExpr e = corpus(i);
    if (!terminates(e)) continue;
    ++compared;
    const auto r = end_to_end(e, opt);
    if (!r.ok()) o.fail("case " + std::to_string(i) + ": " + r.detail);
  }
  if (o.pass) o.detail = std::to_string(compared) + " terminating programs, zero mismatches";
  return o;
}

Outcome ac8() {
  Outcome o;
  const SeedSearchReport rep = seed_alternation_regression(6);
  if (rep.seeds_tried != 127) o.fail("searched " + std::to_string(rep.seeds_tried) + " seeds");
  if (rep.found_in_image) o.fail("successor lies in the compiler image");
  if (!rep.successor_typechecks) o.fail("successor does not effect-typecheck");
  if (o.pass) o.detail = format(rep.successor);
  return o;
}

Outcome ac9() {
  Outcome o;
  constexpr std::size_t kLen = 8;
  std::mt19937_64 rng(2024);
  std::size_t disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Effect a = oracle::random_effect(rng, 1 + rng() % 12);
    const Effect b = oracle::random_effect(rng, 1 + rng() % 12);
    std::string alphabet;
    for (const auto& x : alphabet_of(a, b)) alphabet += oracle::atom_char(x);
    const oracle::Table la(a, alphabet, kLen);
    const oracle::Table lb(b, alphabet, kLen);
    if (alphabet.empty()) alphabet = "o";
    // Every word of either language, plus random words of length up to 8 over
    // the occurring alphabet.
    std::vector<oracle::Word> probes;
    for (const auto* t : {&la, &lb}) {
      const auto m = t->members();
      probes.insert(probes.end(), m.begin(), m.end());
    }
    for (int k = 0; k < 200; ++k) {
      oracle::Word w;
      const std::size_t len = rng() % (kLen + 1);
      for (std::size_t j = 0; j < len; ++j) w += alphabet[rng() % alphabet.size()];
      probes.push_back(std::move(w));
    }
    bool bad = false;
    for (const auto& w : probes) {
      const Name n = oracle::name_of(w);
      if (member(n, a) != la.has(w) || member(n, b) != lb.has(w)) bad = true;
    }
    if (includes(a, b) != la.subset_of(lb)) bad = true;
    if (disjoint(a, b) == la.intersects(lb)) bad = true;
    if (bad) {
      ++disagreements;
      o.fail("disagreement on " + format(a) + " / " + format(b));
    }
  }
  o.detail = (o.pass ? "1000 pairs, " : o.detail + "; ") + std::to_string(disagreements) + " disagreements";
  return o;
}

Outcome ac10() {
  Outcome o;
  const std::vector<Name> seeds{Name::eps(), Name::on(), Name{NameAtom::off(), NameAtom::on()}};
  std::size_t checks = 0;
  auto expect = [&](const CheckReport& r, const std::string& what) {
    ++checks;
    if (!r.ok()) o.fail(what + ": " + r.detail);
  };
  for (std::size_t i = 0; i < kCorpus; ++i) {
    const SrcExpr e = corpus(i);
    for (const auto& s : seeds) expect(lemma_erase_compile(e, "a", s), "erase-compile case " + std::to_string(i));
    expect(lemma_pred_red(compile_closed(e), kDepth), "pred-red case " + std::to_string(i));
  }
  const SrcEnv env{{"x", SrcType::nat()}, {"g", SrcType::arrow(SrcType::nat(), SrcType::nat())}};
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const OpenTerm open = gen_open_source(7000 + k, 1 + k % 25, env);
    // A replacement of the substituted variable's type, drawn from the same env.
    SrcExpr r = SrcExpr::var("x");
    for (std::uint64_t t = 0; t < 16; ++t) {
      const OpenTerm cand = gen_open_source(90000 + 16 * k + t, 1 + k % 12, env);
      if (cand.type == SrcType::nat()) {
        r = cand.expr;
        break;
      }
    }
    const std::string tag = " instance " + std::to_string(k);
    expect(lemma_pseudo_subst(open.expr, "x", r), "pseudo-subst" + tag);
    expect(lemma_erase_subst(compile_expr(open.expr, "a", seeds[k % 3]), "x", compile_expr(r, "c", Name::on())),
           "erase-subst" + tag);
    expect(lemma_erase_name_subst(compile_expr(open.expr, "a", seeds[k % 3]), "a", gen_name(k, {"c"})),
           "erase-name-subst" + tag);
  }
  if (o.pass) o.detail = std::to_string(checks) + " lemma instances";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds; 0 means no limit
    Outcome (*run)();
  };
  const Criterion all[] = {
      {"AC1 source demo", 1, ac1},
      {"AC2 target demo", 1, ac2},
      {"AC3 coordination mechanism", 1, ac3},
      {"AC4 translation soundness suite", 60, ac4},
      {"AC5 subject reduction and non-coordination", 60, ac5},
      {"AC6 bisimulation suites", 120, ac6},
      {"AC7 end-to-end normal forms", 0, ac7},
      {"AC8 seed alternation regression", 5, ac8},
      {"AC9 effect oracle equivalence", 30, ac9},
      {"AC10 erasure and pseudo-compilation lemmas", 0, ac10},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs >= c.limit) o.fail("took longer than the limit");
    if (!o.pass) ++failures;
    char timing[64];
    if (c.limit > 0) {
      std::snprintf(timing, sizeof timing, "%.3fs (limit %.0fs)", secs, c.limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.3fs", secs);
    }
    std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, timing, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
