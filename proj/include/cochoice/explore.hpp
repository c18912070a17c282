#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace cochoice {

template <class Expr>
struct Step {
  std::string rule;
  Expr next;
};

enum class EvalStatus : unsigned char { Ok, FuelExhausted };

struct EvalOptions {
  std::size_t fuel = 200;
  /// 0 means unbounded.
  std::size_t max_states = 0;
  bool trace = false;
  /// Follow every interleaving instead of one order per group of commuting
  /// steps. Both give the same normal forms and the same divergence; the
  /// full relation is kept as a reference.
  bool all_interleavings = false;
};

template <class Expr>
struct TraceEntry {
  std::size_t depth;
  std::string rule;
  Expr term;
};

template <class Expr>
struct EvalResult {
  EvalStatus status = EvalStatus::Ok;
  /// "fuel", "cycle" or "state cap" when exhausted.
  std::string reason;
  std::vector<Expr> normal_forms;
  std::vector<Expr> frontier;
  std::size_t explored = 0;
  std::vector<TraceEntry<Expr>> trace;

  bool ok() const { return status == EvalStatus::Ok; }
};

/// Breadth-first closure of `step` from `root`, deduplicated by `key`.
/// Terminates with Ok only if the whole reachable graph was built, it is
/// acyclic, and its longest path is at most `fuel` steps.
template <class Expr, class StepFn, class KeyFn>
EvalResult<Expr> explore(const Expr& root, const EvalOptions& opt, StepFn step, KeyFn key) {
  EvalResult<Expr> res;
  std::vector<Expr> nodes{root};
  std::vector<std::vector<std::size_t>> succ(1);
  std::unordered_map<std::string, std::size_t> ids{{key(root), 0}};
  std::vector<std::size_t> cur{0};
  std::vector<std::size_t> normal;

  auto finish_exhausted = [&](const char* why, const std::vector<std::size_t>& pending) {
    res.status = EvalStatus::FuelExhausted;
    res.reason = why;
    for (auto id : pending) res.frontier.push_back(nodes[id]);
    for (auto id : normal) res.normal_forms.push_back(nodes[id]);
    res.explored = nodes.size();
    return res;
  };

  for (std::size_t depth = 0; !cur.empty(); ++depth) {
    if (depth == opt.fuel) return finish_exhausted("fuel", cur);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const std::size_t id = cur[i];
      auto steps = step(nodes[id]);
      if (steps.empty()) normal.push_back(id);
      for (auto& s : steps) {
        std::string k = key(s.next);
        auto [it, fresh] = ids.try_emplace(std::move(k), nodes.size());
        if (fresh) {
          if (opt.trace) res.trace.push_back({depth + 1, s.rule, s.next});
          nodes.push_back(std::move(s.next));
          succ.emplace_back();
          next.push_back(it->second);
        } else if (opt.trace) {
          res.trace.push_back({depth + 1, s.rule, s.next});
        }
        succ[id].push_back(it->second);
      }
      if (opt.max_states != 0 && nodes.size() > opt.max_states) {
        std::vector<std::size_t> pending(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end());
        pending.insert(pending.end(), next.begin(), next.end());
        return finish_exhausted("state cap", pending);
      }
    }
    cur = std::move(next);
  }

  // Kahn's algorithm: cycle detection plus longest path in the DAG.
  const std::size_t n = nodes.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& out : succ) {
    for (auto t : out) ++indeg[t];
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) order.push_back(i);
  }
  std::vector<std::size_t> longest(n, 0);
  for (std::size_t h = 0; h < order.size(); ++h) {
    const std::size_t u = order[h];
    for (auto t : succ[u]) {
      if (longest[u] + 1 > longest[t]) longest[t] = longest[u] + 1;
      if (--indeg[t] == 0) order.push_back(t);
    }
  }
  if (order.size() != n) {
    std::vector<std::size_t> cyclic;
    for (std::size_t i = 0; i < n; ++i) {
      if (indeg[i] != 0) cyclic.push_back(i);
    }
    return finish_exhausted("cycle", cyclic);
  }
  std::vector<std::size_t> too_deep;
  for (std::size_t i = 0; i < n; ++i) {
    if (longest[i] > opt.fuel) too_deep.push_back(i);
  }
  if (!too_deep.empty()) return finish_exhausted("fuel", too_deep);

  for (auto id : normal) res.normal_forms.push_back(nodes[id]);
  res.explored = n;
  return res;
}

}  // namespace cochoice
