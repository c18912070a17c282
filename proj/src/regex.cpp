#include "cochoice/regex.hpp"

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

namespace cochoice {

bool nullable(const Effect& e) { return e.nullable(); }

Effect deriv(const Effect& e, const NameAtom& a) {
  switch (e.kind()) {
    case Effect::Kind::Empty:
      return e;
    case Effect::Kind::Lit:
      if (!e.word().empty() && e.word()[0] == a) return Effect::lit(e.word().drop(1));
      return Effect::empty();
    case Effect::Kind::Concat: {
      Effect head = Effect::concat(deriv(e.lhs(), a), e.rhs());
      if (!e.lhs().nullable()) return head;
      return Effect::alt(head, deriv(e.rhs(), a));
    }
    case Effect::Kind::Alt: {
      std::vector<Effect> parts;
      parts.reserve(e.children().size());
      for (const auto& c : e.children()) parts.push_back(deriv(c, a));
      return Effect::alt(parts);
    }
    case Effect::Kind::Star:
      return Effect::concat(deriv(e.body(), a), e);
  }
  return Effect::empty();
}

Effect deriv(const Effect& e, const Name& w) {
  Effect cur = e;
  for (const auto& a : w.atoms()) {
    if (cur.is_empty_language()) break;
    cur = deriv(cur, a);
  }
  return cur;
}

bool member(const Name& w, const Effect& e) { return deriv(e, w).nullable(); }

std::optional<Name> shortest_word(const Effect& e) {
  switch (e.kind()) {
    case Effect::Kind::Empty:
      return std::nullopt;
    case Effect::Kind::Lit:
      return e.word();
    case Effect::Kind::Concat: {
      auto l = shortest_word(e.lhs());
      auto r = shortest_word(e.rhs());
      if (!l || !r) return std::nullopt;
      return *l + *r;
    }
    case Effect::Kind::Alt: {
      std::optional<Name> best;
      for (const auto& c : e.children()) {
        auto w = shortest_word(c);
        if (w && (!best || w->size() < best->size())) best = std::move(w);
      }
      return best;
    }
    case Effect::Kind::Star:
      return Name::eps();
  }
  return std::nullopt;
}

std::set<NameAtom> alphabet_of(const Effect& a, const Effect& b) {
  std::set<NameAtom> out;
  a.collect_atoms(out);
  b.collect_atoms(out);
  return out;
}

namespace {

// Breadth-first walk over pairs of derivatives (d_w(a), d_w(b)). `accept`
// decides whether a reached pair witnesses the property being searched for;
// `prune` drops pairs that can never lead to a witness. Returns the word
// leading to the first accepted pair.
template <class Accept, class Prune>
std::optional<Name> search_pairs(const Effect& a, const Effect& b, Accept accept, Prune prune) {
  struct State {
    Effect lhs;
    Effect rhs;
    std::size_t parent;
    NameAtom via;
  };
  const auto sigma = alphabet_of(a, b);
  std::vector<State> states;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> queue;

  auto push = [&](Effect l, Effect r, std::size_t parent, NameAtom via) {
    if (prune(l, r)) return;
    std::string k = l.key() + '\x1f' + r.key();
    if (seen.contains(k)) return;
    seen.emplace(std::move(k), states.size());
    queue.push_back(states.size());
    states.push_back({std::move(l), std::move(r), parent, std::move(via)});
  };

  push(a, b, SIZE_MAX, {});
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (accept(states[i].lhs, states[i].rhs)) {
      std::vector<NameAtom> rev;
      for (std::size_t j = i; states[j].parent != SIZE_MAX; j = states[j].parent) rev.push_back(states[j].via);
      return Name(std::vector<NameAtom>(rev.rbegin(), rev.rend()));
    }
    for (const auto& c : sigma) {
      // copies: push may reallocate `states`
      Effect l = deriv(states[i].lhs, c);
      Effect r = deriv(states[i].rhs, c);
      push(std::move(l), std::move(r), i, c);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Name> inclusion_counterexample(const Effect& a, const Effect& b) {
  return search_pairs(
      a, b, [](const Effect& l, const Effect& r) { return l.nullable() && !r.nullable(); },
      [](const Effect& l, const Effect&) { return l.is_empty_language(); });
}

bool includes(const Effect& a, const Effect& b) {
  if (a.is_empty_language() || a == b) return true;
  return !inclusion_counterexample(a, b).has_value();
}

std::optional<Name> overlap_witness(const Effect& a, const Effect& b) {
  return search_pairs(
      a, b, [](const Effect& l, const Effect& r) { return l.nullable() && r.nullable(); },
      [](const Effect& l, const Effect& r) { return l.is_empty_language() || r.is_empty_language(); });
}

bool disjoint(const Effect& a, const Effect& b) { return !overlap_witness(a, b).has_value(); }

bool equivalent(const Effect& a, const Effect& b) { return includes(a, b) && includes(b, a); }

Effect quotient_word(const Name& prefix, const Effect& e) {
  std::set<NameAtom> sigma;
  e.collect_atoms(sigma);
  Effect cur = e;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (cur.is_empty_language()) return cur;
    if (cur.nullable()) {
      throw CoverageError("effect contains a word that is a proper prefix of the quotient word", prefix.take(k));
    }
    for (const auto& c : sigma) {
      if (c == prefix[k]) continue;
      Effect off_path = deriv(cur, c);
      if (auto w = shortest_word(off_path)) {
        throw CoverageError("effect contains a word not starting with the quotient word", prefix.take(k) + c + *w);
      }
    }
    cur = deriv(cur, prefix[k]);
  }
  return cur;
}

}  // namespace cochoice
