#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "cochoice/compiler.hpp"
#include "cochoice/errors.hpp"
#include "cochoice/harness.hpp"
#include "cochoice/regex.hpp"
#include "cochoice/source_lang.hpp"
#include "cochoice/syntax.hpp"
#include "cochoice/target_lang.hpp"

namespace cochoice {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ok: return "OK";
    case CheckStatus::CounterExample: return "FAIL";
    case CheckStatus::FuelExhausted: return "FUEL";
  }
  return "?";
}

TgtExpr compile_closed(const SrcExpr& e) { return name_subst(compile_expr(e, "a", Name::eps()), "a", Name::eps()); }

// ---------------------------------------------------------------------------
// Strong bisimulation between erase(M) and M

BisimReport check_strong_bisim(const SrcExpr& e, const TgtExpr& m, std::size_t depth) {
  if (!alpha_eq(erase(m), e)) {
    throw PreconditionViolated("erasure clause: erase(M) = " + format(erase(m)) + " differs from " + format(e));
  }
  try {
    effect_typecheck({}, m);
  } catch (const TypeError& err) {
    throw PreconditionViolated(std::string("typing clause: ") + err.what());
  }

  struct Pair {
    SrcExpr e;
    TgtExpr m;
    std::size_t level;
    std::vector<std::string> trace;
  };
  BisimReport rep;
  std::deque<Pair> queue{{e, m, 0, {}}};
  std::unordered_set<std::string> seen{alpha_key(m)};

  auto fail = [&](const Pair& p, std::string unmatched, std::string why) {
    rep.status = CheckStatus::CounterExample;
    rep.witness = BisimWitness{format(p.e), format(p.m), std::move(unmatched), p.trace};
    rep.detail = std::move(why);
    return rep;
  };

  while (!queue.empty()) {
    Pair p = std::move(queue.front());
    queue.pop_front();
    ++rep.explored;
    if (p.level >= depth) continue;

    auto src = src_step_all(p.e);
    auto tgt = tgt_step_all(p.m, World{});
    std::vector<std::string> src_keys;
    src_keys.reserve(src.size());
    for (const auto& s : src) src_keys.push_back(alpha_key(s.next));
    std::vector<std::string> erased_keys;
    erased_keys.reserve(tgt.size());
    for (const auto& t : tgt) erased_keys.push_back(alpha_key(erase(t.next)));

    for (std::size_t i = 0; i < src.size(); ++i) {
      if (std::find(erased_keys.begin(), erased_keys.end(), src_keys[i]) == erased_keys.end()) {
        return fail(p, format(src[i].next), "source step " + src[i].rule + " has no target counterpart");
      }
    }
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      auto it = std::find(src_keys.begin(), src_keys.end(), erased_keys[j]);
      if (it == src_keys.end()) {
        return fail(p, format(tgt[j].next), "target step " + tgt[j].rule + " has no source counterpart");
      }
      try {
        effect_typecheck({}, tgt[j].next);
      } catch (const TypeError& err) {
        return fail(p, format(tgt[j].next), std::string("successor leaves the relation: ") + err.what());
      }
      if (!seen.insert(alpha_key(tgt[j].next)).second) continue;
      auto trace = p.trace;
      trace.push_back(tgt[j].rule);
      queue.push_back({src[static_cast<std::size_t>(it - src_keys.begin())].next, tgt[j].next, p.level + 1,
                       std::move(trace)});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak bisimulation between e and its pseudo compilation

namespace {

// Per-search cap on visited terms; hitting it counts as running out of fuel.
constexpr std::size_t kWeakStateCap = 4000;

// Source terms interned by alpha key, with successors and pseudo images
// computed on first use. Shared by every search within one check.
std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

class TermGraph {
 public:
  using Id = std::uint32_t;
  struct Edge {
    std::string rule;
    Id to;
  };

  Id intern(const SrcExpr& e) {
    std::string k = alpha_key(e);
    auto [it, fresh] = ids_.emplace(std::move(k), static_cast<Id>(terms_.size()));
    if (fresh) {
      terms_.push_back(e);
      succ_.emplace_back();
      pseudo_.push_back(kNone);
      kids_.push_back({kNone, kNone});
    }
    return it->second;
  }

  /// f a by id, without rebuilding a key when the pair was seen before.
  Id app(Id f, Id a) {
    auto [it, fresh] = apps_.try_emplace(pair_key(f, a), kNone);
    if (fresh) {
      it->second = intern(SrcExpr::app(terms_[f], terms_[a]));
      kids_[it->second] = {f, a};
    }
    return it->second;
  }

  const SrcExpr& term(Id i) const { return terms_[i]; }
  bool is_choice(Id i) const { return terms_[i].is(SrcExpr::Kind::Choice); }
  /// Children of an application or choice: function or left branch first.
  Id kid(Id i, std::size_t k) {
    if (kids_[i][k] == kNone) {
      const SrcExpr& e = terms_[i];
      const bool choice = e.is(SrcExpr::Kind::Choice);
      const Id c = intern(SrcExpr(k == 0 ? (choice ? e.lhs() : e.fn()) : (choice ? e.rhs() : e.arg())));
      kids_[i][k] = c;
    }
    return kids_[i][k];
  }
  Id lhs(Id i) { return kid(i, 0); }
  Id rhs(Id i) { return kid(i, 1); }
  Id fn(Id i) { return kid(i, 0); }
  Id arg(Id i) { return kid(i, 1); }

  /// f a with a choice on the stepping side: f a choice, or f a value and a
  /// a choice. Such an application leaves its shape only by distributing.
  bool distributable(Id i) const {
    const SrcExpr& e = terms_[i];
    return e.is(SrcExpr::Kind::App) &&
           (e.fn().is(SrcExpr::Kind::Choice) || (e.fn().is_value() && e.arg().is(SrcExpr::Kind::Choice)));
  }

  Id distribute(Id i) {
    if (auto it = dist_.find(i); it != dist_.end()) return it->second;
    const Id f = fn(i);
    const Id a = arg(i);
    const Id l = is_choice(f) ? app(lhs(f), a) : app(f, lhs(a));
    const Id r = is_choice(f) ? app(rhs(f), a) : app(f, rhs(a));
    const Id d = intern(SrcExpr::choice(terms_[l], terms_[r]));
    kids_[d] = {l, r};
    dist_.emplace(i, d);
    return d;
  }

  const std::vector<Edge>& succ(Id i) {
    if (!succ_[i]) {
      std::vector<Edge> out;
      for (auto& st : src_step_all(SrcExpr(terms_[i]))) {
        Id to = intern(st.next);
        out.push_back({std::move(st.rule), to});
      }
      succ_[i] = std::move(out);
    }
    return *succ_[i];
  }

  Id pseudo(Id i) {
    if (pseudo_[i] == kNone) {
      const Id p = intern(pseudo_compile(SrcExpr(terms_[i])));
      pseudo_[i] = p;
    }
    return pseudo_[i];
  }

 private:
  static constexpr Id kNone = static_cast<Id>(-1);
  std::unordered_map<std::string, Id> ids_;
  std::deque<SrcExpr> terms_;
  std::deque<std::optional<std::vector<Edge>>> succ_;
  std::vector<Id> pseudo_;
  std::unordered_map<Id, Id> dist_;
  std::vector<std::array<Id, 2>> kids_;
  std::unordered_map<std::uint64_t, Id> apps_;
};

// Reads a term of the pseudo-compiled side back as the source term it stands
// for, completing pending dummy applications. Used only to propose a match,
// which is then verified.
std::optional<SrcType> unpseudo_type(const SrcType& t) {
  if (!t.is_arrow()) return t;
  const SrcType& rest = t.cod();
  if (!rest.is_arrow() || !(rest.dom() == dummy_type())) return std::nullopt;
  auto dom = unpseudo_type(t.dom());
  auto cod = unpseudo_type(rest.cod());
  if (!dom || !cod) return std::nullopt;
  return SrcType::arrow(*dom, *cod);
}

bool is_dummy_abs(const SrcExpr& e) {
  return e.is(SrcExpr::Kind::Abs) && e.annot() == dummy_type() && !free_vars(e.body()).contains(e.ident());
}

std::optional<SrcExpr> unpseudo(const SrcExpr& t) {
  switch (t.kind()) {
    case SrcExpr::Kind::Var:
    case SrcExpr::Kind::Nat:
      return t;
    case SrcExpr::Kind::Choice: {
      auto l = unpseudo(t.lhs());
      auto r = unpseudo(t.rhs());
      if (!l || !r) return std::nullopt;
      return SrcExpr::choice(std::move(*l), std::move(*r));
    }
    case SrcExpr::Kind::Fix: {
      auto ty = unpseudo_type(t.annot());
      auto body = unpseudo(t.body());
      if (!ty || !body) return std::nullopt;
      return SrcExpr::fix(t.ident(), *ty, std::move(*body));
    }
    case SrcExpr::Kind::Abs: {
      if (!is_dummy_abs(t.body())) return std::nullopt;
      auto ty = unpseudo_type(t.annot());
      auto body = unpseudo(t.body().body());
      if (!ty || !body) return std::nullopt;
      return SrcExpr::abs(t.ident(), *ty, std::move(*body));
    }
    case SrcExpr::Kind::App: {
      if (!alpha_eq(t.arg(), dummy_arg())) return std::nullopt;
      const SrcExpr& f = t.fn();
      if (f.is(SrcExpr::Kind::App)) {
        auto g = unpseudo(f.fn());
        auto a = unpseudo(f.arg());
        if (!g || !a) return std::nullopt;
        return SrcExpr::app(std::move(*g), std::move(*a));
      }
      if (is_dummy_abs(f)) return unpseudo(f.body());
      if (f.is(SrcExpr::Kind::Choice)) {
        auto l = unpseudo(SrcExpr::app(f.lhs(), t.arg()));
        auto r = unpseudo(SrcExpr::app(f.rhs(), t.arg()));
        if (!l || !r) return std::nullopt;
        return SrcExpr::choice(std::move(*l), std::move(*r));
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

enum class Match : unsigned char { Found, Missing, CutOff };

struct Answer {
  Match how = Match::Missing;
  std::size_t steps = 0;  // length of the matching run when Found
  TermGraph::Id term = 0;  // the source term reached, for pseudo-side queries
};


// Matching searches. A choice-rooted source term only ever steps inside its
// branches, so (a || b) ->* (c || d) iff a ->* c and b ->* d; both searches
// split at such roots instead of enumerating interleavings. Searches deepen
// iteratively so that a match a few steps away never pays for a full
// exploration.
class Matcher {
 public:
  using Id = TermGraph::Id;
  Matcher(TermGraph& g, std::size_t fuel) : g_(g), fuel_(fuel) {}

  /// t ->* x within `limit` steps; the result is minimal when Found.
  Answer reach(Id t, Id x, std::size_t limit) {
    auto it = reach_memo_.find(pair_key(t, x));
    if (it != reach_memo_.end()) {
      const auto& [ans, tried] = it->second;
      if (ans.how == Match::Found) return ans.steps <= limit ? ans : Answer{Match::CutOff};
      if (ans.how == Match::Missing || tried >= limit) return ans;
    }
    Answer a = reach_uncached(t, x, limit);
    reach_memo_[pair_key(t, x)] = {a, limit};
    return a;
  }

  /// Some s' with s ->* s' and t ->* pseudo(s'), minimizing the combined
  /// number of steps and then the source depth.
  Answer answer(Id s, Id t) {
    if (auto it = answer_memo_.find(pair_key(s, t)); it != answer_memo_.end()) return it->second;
    Answer a = answer_uncached(s, t);
    answer_memo_.emplace(pair_key(s, t), a);
    return a;
  }

 private:
  Answer both(const Answer& l, const Answer& r, std::size_t limit) const {
    if (l.how == Match::Missing || r.how == Match::Missing) return {};
    if (l.how == Match::CutOff || r.how == Match::CutOff || l.steps + r.steps > limit) return {Match::CutOff};
    return {Match::Found, l.steps + r.steps};
  }

  struct Exits {
    std::vector<std::pair<Id, std::size_t>> terms;
    bool truncated = false;
    std::size_t tried = 0;
  };

  static void add_exit(Exits& out, Id term, std::size_t steps) {
    for (auto& [t, d] : out.terms) {
      if (t == term) {
        d = std::min(d, steps);
        return;
      }
    }
    out.terms.emplace_back(term, steps);
  }

  // Successors of f1 a1 once both sides are settled; only root rules apply.
  const std::vector<TermGraph::Edge>& root_steps(Id node) { return g_.succ(node); }

  Id app(Id f, Id a) { return g_.app(f, a); }

  /// The first terms reached from t that are values, choice-rooted, or stuck,
  /// each with its smallest distance. Every run from t that steps at its
  /// root, or ends, passes through one of them.
  const Exits& exits(Id t, std::size_t budget) {
    if (auto it = exits_memo_.find(t); it != exits_memo_.end()) {
      if (!it->second.truncated || it->second.tried >= budget) return it->second;
    }
    Exits out = exits_uncached(t, budget);
    out.tried = budget;
    return exits_memo_[t] = std::move(out);
  }

  Exits exits_uncached(Id t, std::size_t budget) {
    Exits out;
    const SrcExpr& tt = g_.term(t);
    auto shifted = [&](Id from, std::size_t base) {
      if (base > budget) {
        out.truncated = true;
        return;
      }
      const Exits& sub = exits(from, budget - base);
      if (sub.truncated) out.truncated = true;
      for (const auto& [e, d] : sub.terms) {
        if (base + d <= budget) add_exit(out, e, base + d);
      }
    };
    switch (tt.kind()) {
      case SrcExpr::Kind::Fix: {
        const auto& edges = g_.succ(t);
        if (edges.empty()) {
          add_exit(out, t, 0);
        } else {
          for (const auto& edge : edges) shifted(edge.to, 1);
        }
        return out;
      }
      case SrcExpr::Kind::App:
        break;
      default:
        add_exit(out, t, 0);
        return out;
    }
    const Id f = g_.fn(t);
    const Id a = g_.arg(t);
    const Exits ef = exits(f, budget);
    if (ef.truncated) out.truncated = true;
    for (const auto& [f1, d1] : ef.terms) {
      if (g_.is_choice(f1)) {
        if (d1 + 1 <= budget) {
          add_exit(out, g_.distribute(app(f1, a)), d1 + 1);
        } else {
          out.truncated = true;
        }
        continue;
      }
      if (!g_.term(f1).is_value()) {
        add_exit(out, app(f1, a), d1);
        continue;
      }
      const Exits ea = exits(a, budget - d1);
      if (ea.truncated) out.truncated = true;
      for (const auto& [a1, d2] : ea.terms) {
        const Id node = app(f1, a1);
        const std::size_t base = d1 + d2;
        if (g_.is_choice(a1)) {
          if (base + 1 <= budget) {
            add_exit(out, g_.distribute(node), base + 1);
          } else {
            out.truncated = true;
          }
          continue;
        }
        const auto edges = root_steps(node);
        if (edges.empty()) add_exit(out, node, base);
        for (const auto& edge : edges) shifted(edge.to, base + 1);
      }
    }
    return out;
  }

  Answer reach_uncached(Id t, Id x, std::size_t limit) {
    if (t == x) return {Match::Found, 0, x};
    const bool x_choice = g_.is_choice(x);
    const SrcExpr& tt = g_.term(t);
    if (g_.is_choice(t)) {
      if (!x_choice) return {};
      const Id tl = g_.lhs(t), tr = g_.rhs(t), xl = g_.lhs(x), xr = g_.rhs(x);
      Answer l = reach(tl, xl, limit);
      if (l.how == Match::Missing) return {};
      Answer r = reach(tr, xr, l.how == Match::Found ? limit - l.steps : limit);
      if (r.how == Match::Found && l.how == Match::CutOff && r.steps < limit) l = reach(tl, xl, limit - r.steps);
      Answer a = both(l, r, limit);
      a.term = x;
      return a;
    }

    std::optional<std::size_t> best;
    bool truncated = false;
    auto offer = [&](const Answer& r, std::size_t base) {
      if (r.how == Match::CutOff) truncated = true;
      if (r.how == Match::Found) best = std::min(best.value_or(base + r.steps), base + r.steps);
    };
    auto then = [&](Id from, std::size_t base) {
      if (base > limit) {
        truncated = true;
        return;
      }
      offer(reach(from, x, limit - base), base);
    };

    if (tt.is(SrcExpr::Kind::Fix)) {
      for (const auto& edge : g_.succ(t)) then(edge.to, 1);
    } else if (tt.is(SrcExpr::Kind::App)) {
      const SrcExpr& xx = g_.term(x);
      const Id f = g_.fn(t);
      const Id a = g_.arg(t);
      // No step at the root: the function part first, then the argument.
      if (xx.is(SrcExpr::Kind::App)) {
        const Id xf = g_.fn(x);
        const Id xa = g_.arg(x);
        const Answer l = reach(f, xf, limit);
        if (l.how == Match::CutOff) truncated = true;
        if (l.how == Match::Found) {
          if (a == xa) {
            offer(l, 0);
          } else if (xx.fn().is_value()) {
            offer(reach(a, xa, limit - l.steps), l.steps);
          }
        }
      }
      // A first root step, taken where the parts first settle.
      const Exits ef = exits(f, limit);
      if (ef.truncated) truncated = true;
      for (const auto& [f1, d1] : ef.terms) {
        if (g_.is_choice(f1)) {
          then(g_.distribute(app(f1, a)), d1 + 1);
          continue;
        }
        if (!g_.term(f1).is_value()) continue;
        const Exits ea = exits(a, limit - d1);
        if (ea.truncated) truncated = true;
        for (const auto& [a1, d2] : ea.terms) {
          const Id node = app(f1, a1);
          if (g_.is_choice(a1)) {
            then(g_.distribute(node), d1 + d2 + 1);
            continue;
          }
          const auto edges = root_steps(node);
          for (const auto& edge : edges) then(edge.to, d1 + d2 + 1);
        }
      }
    }
    if (best && *best <= limit) return {Match::Found, *best, x};
    return {truncated || best ? Match::CutOff : Match::Missing};
  }

  // Pseudo-side counterpart: s = f a against t = (F A) dummy.
  Answer answer_congruence(Id s, Id t) {
    const SrcExpr& ss = g_.term(s);
    const SrcExpr& tt = g_.term(t);
    if (!ss.is(SrcExpr::Kind::App) || !tt.is(SrcExpr::Kind::App) || !tt.fn().is(SrcExpr::Kind::App) ||
        !alpha_eq(tt.arg(), dummy_arg())) {
      return {};
    }
    const Id sf = g_.fn(s), sa = g_.arg(s);
    const Id tf = g_.fn(g_.fn(t)), ta = g_.arg(g_.fn(t));
    const Answer l = answer(sf, tf);
    if (l.how != Match::Found) return {};
    const Answer r = answer(sa, ta);
    if (r.how != Match::Found) return {};
    // Argument steps on either side need the function to be a value already.
    const bool moves = r.term != sa || ta != g_.pseudo(r.term);
    if (moves && !g_.term(l.term).is_value()) return {};
    if (l.steps + r.steps > fuel_) return {};
    return {Match::Found, l.steps + r.steps, g_.app(l.term, r.term)};
  }

  Answer answer_uncached(Id s, Id t) {
    if (g_.is_choice(s) && !g_.is_choice(t)) {
      // pseudo(s') is a choice, which t reaches only through distributing.
      if (g_.distributable(t)) {
        Answer a = answer(s, g_.distribute(t));
        if (a.how == Match::Found) ++a.steps;
        return a;
      }
    }
    if (g_.is_choice(s) && g_.is_choice(t)) {
      const Answer l = answer(g_.lhs(s), g_.lhs(t));
      const Answer r = answer(g_.rhs(s), g_.rhs(t));
      Answer a = both(l, r, fuel_);
      if (a.how == Match::Found) a.term = g_.intern(SrcExpr::choice(g_.term(l.term), g_.term(r.term)));
      return a;
    }
    if (const Answer c = answer_congruence(s, t); c.how == Match::Found) return c;
    if (auto guess = unpseudo(g_.term(t))) {
      const Id cand = g_.intern(*guess);
      const Answer src = reach(s, cand, fuel_);
      if (src.how == Match::Found) {
        const Answer tgt = reach(t, g_.pseudo(cand), fuel_);
        if (tgt.how == Match::Found) return {Match::Found, src.steps + tgt.steps, cand};
      }
    }
    // Source candidates by depth; round k allows depth + pseudo steps <= k.
    std::vector<std::pair<Id, std::size_t>> cands{{s, 0}};
    std::unordered_set<Id> seen{s};
    std::size_t level_begin = 0;
    bool s_truncated = false;
    for (std::size_t round = 0; round <= fuel_; ++round) {
      // Grow the source side to depth `round`.
      if (round > 0 && level_begin < cands.size() && cands.back().second == round - 1) {
        if (seen.size() > kWeakStateCap) {
          s_truncated = true;
        } else {
          const std::size_t end = cands.size();
          for (std::size_t i = level_begin; i < end; ++i) {
            for (const auto& edge : g_.succ(cands[i].first)) {
              if (seen.insert(edge.to).second) cands.emplace_back(edge.to, round);
            }
          }
          level_begin = end;
        }
      }
      bool open = s_truncated;
      for (const auto& [cand, depth] : cands) {
        const Answer r = reach(t, g_.pseudo(cand), round - depth);
        if (r.how == Match::Found) return {Match::Found, depth + r.steps, cand};
        if (r.how == Match::CutOff) open = true;
      }
      // Every candidate is definitely unmatched and no new ones can appear.
      if (!open && level_begin == cands.size()) return {};
    }
    return {Match::CutOff};
  }

  TermGraph& g_;
  std::size_t fuel_;
  std::unordered_map<std::uint64_t, std::pair<Answer, std::size_t>> reach_memo_;
  std::unordered_map<std::uint64_t, Answer> answer_memo_;
  std::unordered_map<Id, Exits> exits_memo_;
};

}  // namespace

BisimReport check_weak_bisim_pseudo(const SrcExpr& e, std::size_t depth, std::size_t fuel) {
  if (e.mentions_builtin()) throw PreconditionViolated("term uses builtins");
  try {
    src_typecheck({}, e);
  } catch (const TypeError& err) {
    throw PreconditionViolated(std::string("term does not typecheck: ") + err.what());
  }

  using Id = TermGraph::Id;
  struct Pair {
    Id s;
    Id t;
    std::size_t level;
    std::vector<std::string> trace;
  };
  TermGraph g;
  Matcher match(g, fuel);
  BisimReport rep;
  const Id root_s = g.intern(e);
  const Id root_t = g.pseudo(root_s);
  std::deque<Pair> queue{{root_s, root_t, 0, {}}};
  std::unordered_set<std::uint64_t> seen{pair_key(root_s, root_t)};
  bool cut_off = false;

  auto fail = [&](const Pair& p, Id unmatched, std::string why) {
    rep.status = CheckStatus::CounterExample;
    rep.witness = BisimWitness{format(g.term(p.s)), format(g.term(p.t)), format(g.term(unmatched)), p.trace};
    rep.detail = std::move(why);
    return rep;
  };
  auto enqueue = [&](const Pair& p, Id s, Id t, const std::string& rule) {
    if (!seen.insert(pair_key(s, t)).second) return;
    auto trace = p.trace;
    trace.push_back(rule);
    queue.push_back({s, t, p.level + 1, std::move(trace)});
  };

  while (!queue.empty()) {
    Pair p = std::move(queue.front());
    queue.pop_front();
    ++rep.explored;
    if (p.level >= depth) continue;

    // Both sides only ever step inside the branches of a choice, so such a
    // pair is related exactly when its branch pairs are.
    if (g.is_choice(p.s) && g.is_choice(p.t)) {
      for (const bool left : {true, false}) {
        const Id s = left ? g.lhs(p.s) : g.rhs(p.s);
        const Id t = left ? g.lhs(p.t) : g.rhs(p.t);
        if (!seen.insert(pair_key(s, t)).second) continue;
        auto trace = p.trace;
        trace.emplace_back(left ? "branch-L" : "branch-R");
        queue.push_back({s, t, p.level, std::move(trace)});
      }
      continue;
    }

    // Source steps, answered by t ->* pseudo(s').
    const auto src_edges = g.succ(p.s);
    for (const auto& st : src_edges) {
      const Id image = g.pseudo(st.to);
      switch (match.reach(p.t, image, fuel).how) {
        case Match::Found:
          enqueue(p, st.to, image, st.rule);
          break;
        case Match::CutOff:
          cut_off = true;
          break;
        case Match::Missing:
          return fail(p, st.to, "source step " + st.rule + " not matched by the pseudo-compiled side");
      }
    }

    // Pseudo-compiled steps, answered by s ->* s' with t' ->* pseudo(s').
    const auto tgt_edges = g.succ(p.t);
    for (const auto& tt : tgt_edges) {
      const Answer a = match.answer(p.s, tt.to);
      switch (a.how) {
        case Match::Found:
          enqueue(p, a.term, tt.to, tt.rule);
          break;
        case Match::CutOff:
          cut_off = true;
          break;
        case Match::Missing:
          return fail(p, tt.to, "pseudo-compiled step " + tt.rule + " not matched by the source side");
      }
    }
  }
  if (cut_off) {
    rep.status = CheckStatus::FuelExhausted;
    rep.detail = "a matching search ran out of fuel";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Subject reduction and non-coordination

namespace {

template <class Visit>
CheckReport walk_empty_world(const TgtExpr& m, std::size_t depth, Visit visit) {
  CheckReport rep;
  std::vector<TgtExpr> level{m};
  std::unordered_set<std::string> seen{alpha_key(m)};
  for (std::size_t d = 0; !level.empty(); ++d) {
    std::vector<TgtExpr> next;
    for (const auto& x : level) {
      ++rep.explored;
      auto steps = tgt_step_all(x, World{});
      if (auto why = visit(x, steps)) {
        rep.status = CheckStatus::CounterExample;
        rep.detail = *why;
        return rep;
      }
      if (d == depth) continue;
      for (auto& s : steps) {
        if (seen.insert(alpha_key(s.next)).second) next.push_back(std::move(s.next));
      }
    }
    level = std::move(next);
  }
  return rep;
}

TypedEffect require_typed(const TgtExpr& m) {
  try {
    return effect_typecheck({}, m);
  } catch (const TypeError& err) {
    throw PreconditionViolated(std::string("term does not typecheck: ") + err.what());
  }
}

}  // namespace

CheckReport check_subject_reduction(const TgtExpr& m, std::size_t depth) {
  const TypedEffect root = require_typed(m);
  const Effect root_eff = root.effect.effect();
  return walk_empty_world(m, depth, [&](const TgtExpr& x, const auto&) -> std::optional<std::string> {
    TypedEffect got;
    try {
      got = effect_typecheck({}, x);
    } catch (const TypeError& err) {
      return format(x) + " does not typecheck: " + err.what();
    }
    if (!subtype(got.type, root.type)) {
      return format(x) + " has type " + format(got.type) + ", not below " + format(root.type);
    }
    if (auto w = inclusion_counterexample(got.effect.effect(), root_eff)) {
      return format(x) + " may produce " + format(*w) + " outside " + format(root_eff);
    }
    return std::nullopt;
  });
}

CheckReport check_non_coordination(const TgtExpr& m, std::size_t depth) {
  require_typed(m);
  return walk_empty_world(m, depth, [](const TgtExpr& x, const auto& steps) -> std::optional<std::string> {
    std::unordered_set<std::string> nc;
    for (const auto& s : tgt_step_nc(x)) nc.insert(alpha_key(s.next));
    for (const auto& s : steps) {
      if (!nc.contains(alpha_key(s.next))) {
        return format(x) + " steps by " + s.rule + " to " + format(s.next) + " only with coordination";
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// End to end

CheckReport end_to_end(const SrcExpr& e, const EndToEndOptions& opt) {
  if (e.mentions_builtin()) throw PreconditionViolated("term uses builtins");
  try {
    src_typecheck({}, e);
  } catch (const TypeError& err) {
    throw PreconditionViolated(std::string("term does not typecheck: ") + err.what());
  }
  CheckReport rep;
  const TgtExpr m = compile_closed(e);
  EvalOptions eo;
  eo.fuel = opt.fuel;
  eo.max_states = opt.max_states;
  auto src = src_eval(e, eo);
  auto tgt = tgt_eval(m, World{}, eo);
  rep.explored = src.explored + tgt.explored;
  if (!src.ok() || !tgt.ok()) {
    rep.status = CheckStatus::FuelExhausted;
    rep.detail = "evaluation exhausted: source " + (src.ok() ? std::string("ok") : src.reason) + ", target " +
                 (tgt.ok() ? std::string("ok") : tgt.reason);
    return rep;
  }
  std::unordered_map<std::string, SrcExpr> lhs;
  std::unordered_map<std::string, SrcExpr> rhs;
  for (const auto& nf : src.normal_forms) {
    SrcExpr p = pseudo_compile(nf);
    lhs.emplace(alpha_key(p), p);
  }
  for (const auto& nf : tgt.normal_forms) {
    SrcExpr p = erase(nf);
    rhs.emplace(alpha_key(p), p);
  }
  for (const auto& [k, v] : lhs) {
    if (!rhs.contains(k)) {
      rep.status = CheckStatus::CounterExample;
      rep.detail = "source normal form " + format(v) + " has no erased target counterpart";
      return rep;
    }
  }
  for (const auto& [k, v] : rhs) {
    if (!lhs.contains(k)) {
      rep.status = CheckStatus::CounterExample;
      rep.detail = "erased target normal form " + format(v) + " has no source counterpart";
      return rep;
    }
  }
  if (!opt.with_bisim) {
    rep.detail = std::to_string(lhs.size()) + " normal form(s) correspond";
    return rep;
  }
  auto strong = check_strong_bisim(erase(m), m, opt.depth);
  if (strong.status == CheckStatus::CounterExample) {
    rep.status = strong.status;
    rep.detail = "strong bisimulation: " + strong.detail;
    return rep;
  }
  auto weak = check_weak_bisim_pseudo(e, opt.depth, opt.fuel);
  if (weak.status != CheckStatus::Ok) {
    rep.status = weak.status;
    rep.detail = "weak bisimulation: " + weak.detail;
    return rep;
  }
  rep.detail = std::to_string(lhs.size()) + " normal form(s) correspond";
  return rep;
}

}  // namespace cochoice
