#include <functional>

#include "cochoice/compiler.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/syntax.hpp"

namespace cochoice {

std::string SuiteLine::render() const {
  std::string out = "case=" + std::to_string(index) + " seed=" + std::to_string(seed) + " check=" + check +
                    " status=" + std::string(to_string(status));
  if (!witness.empty()) {
    std::string w = witness;
    for (char& c : w) {
      if (c == '\n') c = ' ';
    }
    out += " witness=" + w;
  }
  return out;
}

namespace {

SuiteLine line_of(std::size_t index, std::uint64_t seed, std::string check, const std::function<CheckReport()>& run) {
  SuiteLine l{index, seed, std::move(check), CheckStatus::Ok, {}};
  try {
    CheckReport r = run();
    l.status = r.status;
    if (!r.ok()) l.witness = r.detail;
  } catch (const std::exception& err) {
    l.status = CheckStatus::CounterExample;
    l.witness = err.what();
  }
  return l;
}

CheckReport from_bisim(const BisimReport& b) {
  CheckReport r{b.status, b.detail, b.explored};
  if (b.witness) r.detail += " at " + b.witness->left + " / " + b.witness->right + " unmatched " + b.witness->unmatched;
  return r;
}

}  // namespace

std::vector<SuiteLine> run_case(const SuiteOptions& opt, std::size_t index) {
  const std::uint64_t seed = opt.seed + index;
  const std::size_t size = 1 + index % 30;
  const SrcExpr e = gen_typed_source(seed, size);
  const std::string alpha = "a";
  std::vector<SuiteLine> out;
  auto add = [&](std::string check, const std::function<CheckReport()>& run) {
    out.push_back(line_of(index, seed, std::move(check), run));
  };

  const std::pair<const char*, Name> seeds[] = {
      {"eps", Name::eps()}, {"o", Name::on()}, {"bo", Name{NameAtom::off(), NameAtom::on()}}};
  for (const auto& [label, phi] : seeds) {
    add(std::string("trans-sound-") + label, [&] { return check_trans_sound({}, e, alpha, phi); });
  }
  add("erase-compile", [&] {
    for (const auto& [label, phi] : seeds) {
      CheckReport r = lemma_erase_compile(e, alpha, phi);
      if (!r.ok()) return r;
    }
    return CheckReport{};
  });

  const TgtExpr m = compile_closed(e);
  add("subject-reduction", [&] { return check_subject_reduction(m, opt.depth); });
  add("non-coordination", [&] { return check_non_coordination(m, opt.depth); });
  add("strong-bisim", [&] { return from_bisim(check_strong_bisim(erase(m), m, opt.depth)); });
  add("weak-bisim", [&] { return from_bisim(check_weak_bisim_pseudo(e, opt.depth, opt.fuel)); });
  add("end-to-end", [&] {
    EndToEndOptions eo;
    eo.fuel = opt.fuel;
    eo.depth = opt.depth;
    eo.with_bisim = false;
    return end_to_end(e, eo);
  });

  // Substitution lemmas on an open term over x:nat, g:nat->nat.
  const SrcEnv env{{"x", SrcType::nat()}, {"g", SrcType::arrow(SrcType::nat(), SrcType::nat())}};
  const OpenTerm open = gen_open_source(seed ^ 0x9e3779b97f4a7c15ULL, size, env);
  const OpenTerm repl = gen_open_source(seed * 31 + 7, std::max<std::size_t>(1, size / 2), env);
  const SrcExpr r = repl.type == SrcType::nat() ? repl.expr : SrcExpr::var("x");
  add("pseudo-subst", [&] { return lemma_pseudo_subst(open.expr, "x", r); });
  add("erase-subst", [&] {
    return lemma_erase_subst(compile_expr(open.expr, alpha, Name::eps()), "x", compile_expr(r, "c", Name::on()));
  });
  add("erase-name-subst", [&] {
    return lemma_erase_name_subst(compile_expr(open.expr, alpha, Name::off()), alpha, gen_name(seed, {"c", alpha}));
  });
  add("pred-red", [&] { return lemma_pred_red(m, opt.depth); });
  return out;
}

std::vector<SuiteLine> run_suite_serial(const SuiteOptions& opt) {
  std::vector<SuiteLine> out;
  for (std::size_t i = 0; i < opt.n; ++i) {
    auto lines = run_case(opt, i);
    out.insert(out.end(), lines.begin(), lines.end());
  }
  return out;
}

std::vector<SuiteLine> run_suite_parallel(const SuiteOptions& opt) {
  std::vector<std::vector<SuiteLine>> per_case(opt.n);
  const auto n = static_cast<long long>(opt.n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    per_case[static_cast<std::size_t>(i)] = run_case(opt, static_cast<std::size_t>(i));
  }
  std::vector<SuiteLine> out;
  for (auto& lines : per_case) out.insert(out.end(), lines.begin(), lines.end());
  return out;
}

}  // namespace cochoice
