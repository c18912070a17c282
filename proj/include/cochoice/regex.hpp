#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "cochoice/effect.hpp"
#include "cochoice/name.hpp"

namespace cochoice {

// Decision procedures for the languages denoted by effects. Name variables are
// opaque alphabet symbols. Everything is built on Brzozowski derivatives over
// the canonical effects of effect.hpp.

bool nullable(const Effect& e);

/// Brzozowski derivative: L(result) = { w | a.w in L(e) }.
Effect deriv(const Effect& e, const NameAtom& a);

/// Derivative by a whole word.
Effect deriv(const Effect& e, const Name& w);

bool member(const Name& w, const Effect& e);

/// A shortest word of L(e), if any.
std::optional<Name> shortest_word(const Effect& e);

/// L(a) subset of L(b).
bool includes(const Effect& a, const Effect& b);
/// A word of L(a) \ L(b), if any (shortest in derivative-BFS order).
std::optional<Name> inclusion_counterexample(const Effect& a, const Effect& b);

/// L(a) and L(b) have no common word.
bool disjoint(const Effect& a, const Effect& b);
/// A word in both L(a) and L(b), if any.
std::optional<Name> overlap_witness(const Effect& a, const Effect& b);

/// Language equality.
bool equivalent(const Effect& a, const Effect& b);

class CoverageError : public std::runtime_error {
 public:
  CoverageError(const std::string& msg, std::optional<Name> witness)
      : std::runtime_error(msg), witness_(std::move(witness)) {}
  const std::optional<Name>& witness() const { return witness_; }

 private:
  std::optional<Name> witness_;
};

/// Left quotient of L(e) by the word `prefix`, after checking that every word
/// of L(e) starts with `prefix`. Throws CoverageError otherwise.
Effect quotient_word(const Name& prefix, const Effect& e);

std::set<NameAtom> alphabet_of(const Effect& a, const Effect& b);

}  // namespace cochoice
