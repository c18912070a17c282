#include <algorithm>
#include <random>

#include "cochoice/harness.hpp"
#include "cochoice/source_lang.hpp"

namespace cochoice {

namespace {

std::size_t min_size(const SrcType& t) { return t.is_arrow() ? 1 + min_size(t.cod()) : 1; }

SrcType nat() { return SrcType::nat(); }
SrcType fn(SrcType a, SrcType b) { return SrcType::arrow(std::move(a), std::move(b)); }

// Type-directed generator. Every production keeps the term within its size
// budget, so the minimal term for the goal type always fits.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  SrcType goal_type() {
    switch (pick({3, 3.5, 1, 1.5, 1})) {
      case 0: return nat();
      case 1: return fn(nat(), nat());
      case 2: return fn(fn(nat(), nat()), nat());
      case 3: return fn(nat(), fn(nat(), nat()));
      default: return fn(fn(nat(), nat()), fn(nat(), nat()));
    }
  }

  SrcExpr gen(SrcEnv& env, const SrcType& t, std::size_t budget) {
    enum Kind { Var, Lit, Lam, Choice, IdApp, App, Fix, N };
    std::vector<double> w(N, 0.0);
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < env.size(); ++i) {
      if (env[i].second == t) vars.push_back(i);
    }
    const std::size_t m = min_size(t);
    if (!vars.empty()) w[Var] = budget <= m ? 4 : 1.5;
    if (!t.is_arrow()) w[Lit] = budget <= 1 ? 4 : 1;
    if (t.is_arrow() && budget >= m) w[Lam] = 2;
    if (budget >= 1 + 2 * m) w[Choice] = 3;
    if (budget >= 3 + m) w[IdApp] = 2;
    if (budget >= 3 + m) w[App] = 1.5;
    if (t.is_arrow() && budget >= 2 + m) w[Fix] = 0.25;

    switch (pick(w)) {
      case Var:
        return SrcExpr::var(env[vars[uniform(0, vars.size() - 1)]].first);
      case Lit:
        return SrcExpr::nat(uniform(0, 9));
      case Lam:
        return lambda(env, t, budget - 1);
      case Choice: {
        const std::size_t rest = budget - 1;
        const std::size_t left = uniform(m, rest - m);
        SrcExpr l = gen(env, t, left);
        SrcExpr r = gen(env, t, rest - l.size());
        return SrcExpr::choice(std::move(l), std::move(r));
      }
      case IdApp: {
        std::string x = fresh("x");
        SrcExpr arg = gen(env, t, budget - 3);
        return SrcExpr::app(SrcExpr::abs(x, t, SrcExpr::var(x)), std::move(arg));
      }
      case App: {
        SrcType u = coin(0.7) ? nat() : fn(nat(), nat());
        const std::size_t mu = min_size(u);
        const std::size_t mf = 1 + m;
        if (budget < 1 + mf + mu) u = nat();
        const std::size_t rest = budget - 1;
        const std::size_t fbudget = uniform(mf, rest - min_size(u));
        SrcExpr f = gen(env, fn(u, t), fbudget);
        SrcExpr a = gen(env, u, rest - f.size());
        return SrcExpr::app(std::move(f), std::move(a));
      }
      case Fix: {
        std::string f = fresh("f");
        std::string x = fresh("x");
        // The recursive name is visible only sometimes: any call diverges.
        const bool self = coin(0.3);
        if (self) env.emplace_back(f, t);
        env.emplace_back(x, t.dom());
        SrcExpr body = gen(env, t.cod(), budget - 2);
        env.pop_back();
        if (self) env.pop_back();
        return SrcExpr::fix(f, t, SrcExpr::abs(x, t.dom(), std::move(body)));
      }
      default:
        break;
    }
    return minimal(env, t);
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    if (hi <= lo) return lo;
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::size_t pick(const std::vector<double>& weights) {
    double total = 0;
    for (double x : weights) total += x;
    if (total <= 0) return weights.size();
    return std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng_);
  }

  std::string fresh(const char* base) { return std::string(base) + std::to_string(counter_++); }

  std::mt19937_64& rng() { return rng_; }

 private:
  SrcExpr lambda(SrcEnv& env, const SrcType& t, std::size_t body_budget) {
    std::string x = fresh("x");
    env.emplace_back(x, t.dom());
    SrcExpr body = gen(env, t.cod(), body_budget);
    env.pop_back();
    return SrcExpr::abs(x, t.dom(), std::move(body));
  }

  SrcExpr minimal(SrcEnv& env, const SrcType& t) {
    if (!t.is_arrow()) return SrcExpr::nat(0);
    return lambda(env, t, min_size(t.cod()));
  }

  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace

SrcExpr gen_typed_source(std::uint64_t seed, std::size_t size) {
  Gen g(seed);
  size = std::max<std::size_t>(size, 1);
  SrcType goal = g.goal_type();
  if (min_size(goal) > size) goal = nat();
  SrcEnv env;
  return g.gen(env, goal, size);
}

OpenTerm gen_open_source(std::uint64_t seed, std::size_t size, const SrcEnv& env) {
  Gen g(seed);
  size = std::max<std::size_t>(size, 1);
  SrcType goal = g.goal_type();
  if (min_size(goal) > size) goal = nat();
  SrcEnv scratch = env;
  SrcExpr e = g.gen(scratch, goal, size);
  return {env, e, goal};
}

Name gen_name(std::uint64_t seed, const std::vector<std::string>& vars) {
  Gen g(seed);
  Name n;
  const std::size_t len = g.uniform(0, 3);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t k = g.uniform(0, 1 + vars.size());
    if (k == 0) {
      n += NameAtom::on();
    } else if (k == 1) {
      n += NameAtom::off();
    } else {
      n += NameAtom::variable(vars[k - 2]);
    }
  }
  return n;
}

}  // namespace cochoice
