// Command-line front end. Exit codes: 0 success, 1 check failure, 2 usage or
// parse error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cochoice/compiler.hpp"
#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

using namespace cochoice;

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FILE may be "-" for stdin; with --inline the argument is the program text.
bool g_inline = false;

std::string read_input(const std::string& arg) {
  if (g_inline) return arg;
  std::ostringstream buf;
  if (arg == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot open " + arg);
  buf << in.rdbuf();
  return buf.str();
}

template <class Expr>
int print_eval(const EvalResult<Expr>& r, bool trace) {
  if (trace) {
    for (const auto& t : r.trace) std::cout << t.rule << ' ' << format(t.term) << '\n';
  }
  for (const auto& nf : r.normal_forms) std::cout << format(nf) << '\n';
  if (!r.ok()) {
    std::cerr << "FuelExhausted (" << r.reason << "), " << r.frontier.size() << " pending term(s)\n";
    return kFail;
  }
  return 0;
}

template <class Expr>
void print_steps(const std::vector<Step<Expr>>& steps) {
  for (const auto& s : steps) std::cout << s.rule << ' ' << format(s.next) << '\n';
}

int print_check(const CheckReport& r) {
  std::cout << to_string(r.status);
  if (!r.detail.empty()) std::cout << ' ' << r.detail;
  std::cout << '\n';
  return r.ok() ? 0 : kFail;
}

int print_bisim(const BisimReport& r) {
  std::cout << to_string(r.status) << " explored=" << r.explored;
  if (!r.detail.empty()) std::cout << ' ' << r.detail;
  std::cout << '\n';
  if (r.witness) {
    std::cout << "left " << r.witness->left << "\nright " << r.witness->right << "\nunmatched "
              << r.witness->unmatched << '\n';
    for (const auto& rule : r.witness->trace) std::cout << "trace " << rule << '\n';
  }
  return r.ok() ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated choice calculi: checkers, evaluators, compiler and verification harness"};
  app.require_subcommand(1);
  app.add_flag("--inline", g_inline, "Treat FILE arguments as program text");

  std::string file, file2;
  std::size_t fuel = 200, depth = 8;
  bool trace = false;
  std::string delta, seed_var = "a", seed = "eps";
  SuiteOptions suite_opt;
  std::string op, arg1, arg2;

  auto with_file = [&](CLI::App* c) { c->add_option("FILE", file, "Input file, or - for stdin")->required(); };

  auto* src_check = app.add_subcommand("src-check", "Typecheck a source term");
  with_file(src_check);
  auto* src_eval = app.add_subcommand("src-eval", "All normal forms of a source term");
  with_file(src_eval);
  src_eval->add_option("--fuel", fuel);
  src_eval->add_flag("--trace", trace);
  auto* src_step = app.add_subcommand("src-step", "One-step successors of a source term");
  with_file(src_step);

  auto* tgt_check = app.add_subcommand("tgt-check", "Effect-typecheck a target term");
  with_file(tgt_check);
  auto* tgt_eval = app.add_subcommand("tgt-eval", "All normal forms under a world");
  with_file(tgt_eval);
  tgt_eval->add_option("--delta", delta, "World, e.g. \"o b+, o-\"");
  tgt_eval->add_option("--fuel", fuel);
  tgt_eval->add_flag("--trace", trace);
  auto* tgt_eval_nc = app.add_subcommand("tgt-eval-nc", "All normal forms under the non-coordinated relation");
  with_file(tgt_eval_nc);
  tgt_eval_nc->add_option("--fuel", fuel);
  tgt_eval_nc->add_flag("--trace", trace);
  auto* tgt_step = app.add_subcommand("tgt-step", "One-step successors under a world");
  with_file(tgt_step);
  tgt_step->add_option("--delta", delta);

  auto* compile = app.add_subcommand("compile", "Compile a source term");
  with_file(compile);
  compile->add_option("--seed-var", seed_var);
  compile->add_option("--seed", seed);
  auto* erase_cmd = app.add_subcommand("erase", "Erase names from a target term");
  with_file(erase_cmd);
  auto* pseudo = app.add_subcommand("pseudo", "Pseudo-compile a source term");
  with_file(pseudo);

  auto* bisim = app.add_subcommand("bisim", "Strong bisimulation between a source and a target term");
  bisim->add_option("SRC", file)->required();
  bisim->add_option("TGT", file2)->required();
  bisim->add_option("--depth", depth);
  auto* e2e = app.add_subcommand("end2end", "Normal-form correspondence and both bisimulations");
  with_file(e2e);
  e2e->add_option("--fuel", fuel);
  e2e->add_option("--depth", depth);

  auto* suite = app.add_subcommand("suite", "Run the randomized verification suite");
  suite->add_option("--n", suite_opt.n);
  suite->add_option("--seed", suite_opt.seed);
  suite->add_option("--depth", suite_opt.depth);
  suite->add_option("--fuel", suite_opt.fuel);

  auto* effect = app.add_subcommand("effect", "Effect language queries");
  effect->add_option("OP", op, "member WORD EFF | includes A B | disjoint A B | quotient WORD EFF")
      ->required()
      ->check(CLI::IsMember({"member", "includes", "disjoint", "quotient"}));
  effect->add_option("ARG1", arg1)->required();
  effect->add_option("ARG2", arg2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*src_check) {
      std::cout << format(src_typecheck({}, parse_src(read_input(file)))) << '\n';
    } else if (*src_eval) {
      EvalOptions o;
      o.fuel = fuel;
      o.trace = trace;
      return print_eval(cochoice::src_eval(parse_src(read_input(file)), o), trace);
    } else if (*src_step) {
      print_steps(src_step_all(parse_src(read_input(file))));
    } else if (*tgt_check) {
      auto te = effect_typecheck({}, parse_tgt(read_input(file)));
      std::cout << format(te.type) << " & " << format(te.effect.effect()) << '\n';
    } else if (*tgt_eval) {
      EvalOptions o;
      o.fuel = fuel;
      o.trace = trace;
      return print_eval(cochoice::tgt_eval(parse_tgt(read_input(file)), parse_world(delta), o), trace);
    } else if (*tgt_eval_nc) {
      EvalOptions o;
      o.fuel = fuel;
      o.trace = trace;
      return print_eval(cochoice::tgt_eval_nc(parse_tgt(read_input(file)), o), trace);
    } else if (*tgt_step) {
      print_steps(tgt_step_all(parse_tgt(read_input(file)), parse_world(delta)));
    } else if (*compile) {
      std::cout << format(compile_expr(parse_src(read_input(file)), seed_var, parse_name(seed))) << '\n';
    } else if (*erase_cmd) {
      std::cout << format(erase(parse_tgt(read_input(file)))) << '\n';
    } else if (*pseudo) {
      std::cout << format(pseudo_compile(parse_src(read_input(file)))) << '\n';
    } else if (*bisim) {
      const SrcExpr e = parse_src(read_input(file));
      const TgtExpr m = parse_tgt(read_input(file2));
      return print_bisim(check_strong_bisim(e, m, depth));
    } else if (*e2e) {
      EndToEndOptions o;
      o.fuel = fuel;
      o.depth = depth;
      return print_check(end_to_end(parse_src(read_input(file)), o));
    } else if (*suite) {
      int rc = 0;
      for (const auto& line : run_suite_parallel(suite_opt)) {
        std::cout << line.render() << '\n';
        if (line.status == CheckStatus::CounterExample) rc = kFail;
      }
      return rc;
    } else if (*effect) {
      if (op == "member") {
        const bool r = member(parse_name(arg1), parse_effect(arg2));
        std::cout << (r ? "true" : "false") << '\n';
        return r ? 0 : kFail;
      }
      if (op == "quotient") {
        std::cout << format(quotient_word(parse_name(arg1), parse_effect(arg2))) << '\n';
        return 0;
      }
      const Effect a = parse_effect(arg1), b = parse_effect(arg2);
      if (op == "includes") {
        if (auto w = inclusion_counterexample(a, b)) {
          std::cout << "false witness=" << format(*w) << '\n';
          return kFail;
        }
      } else if (auto w = overlap_witness(a, b)) {
        std::cout << "false witness=" << format(*w) << '\n';
        return kFail;
      }
      std::cout << "true\n";
    }
    return 0;
  } catch (const ParseError& e) {
    const auto& d = e.diagnostic();
    std::cerr << d.line << ':' << d.column << ": " << d.code << ": " << d.message << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const CoverageError& e) {
    std::cerr << "EffectCoverageError: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kFail;
  }
}
