#pragma once

// Brute-force reference for effect languages: decides every word up to a
// length bound straight from the expression tree. Shares no code with the
// derivative-based decision procedures it checks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cochoice/effect.hpp"
#include "cochoice/name.hpp"

namespace oracle {

using Word = std::string;  // one char per atom
using Lang = std::set<Word>;

inline char atom_char(const cochoice::NameAtom& a) {
  switch (a.kind) {
    case cochoice::NameAtom::Kind::On:
      return 'o';
    case cochoice::NameAtom::Kind::Off:
      return 'b';
    case cochoice::NameAtom::Kind::Var:
      break;
  }
  // Test effects only use single-letter variables other than o and b.
  return a.var.at(0);
}

inline Word word_of(const cochoice::Name& n) {
  Word w;
  for (const auto& a : n.atoms()) w += atom_char(a);
  return w;
}

inline cochoice::Name name_of(const Word& w) {
  cochoice::Name n;
  for (char c : w) {
    if (c == 'o') {
      n += cochoice::NameAtom::on();
    } else if (c == 'b') {
      n += cochoice::NameAtom::off();
    } else {
      n += cochoice::NameAtom::variable(std::string(1, c));
    }
  }
  return n;
}

/// Characters of every atom occurring in `e`, sorted.
inline std::string alphabet_of(const cochoice::Effect& e) {
  std::set<char> seen;
  auto go = [&](auto&& self, const cochoice::Effect& x) -> void {
    if (x.kind() == cochoice::Effect::Kind::Lit) {
      for (char c : word_of(x.word())) seen.insert(c);
    }
    for (const auto& c : x.children()) self(self, c);
  };
  go(go, e);
  return {seen.begin(), seen.end()};
}

/// Membership of every word up to `max_len` over `alphabet`, one flag vector
/// per length indexed by the word's base-k rank (first letter most
/// significant). Concatenation and star try every split point.
class Table {
 public:
  Table(const cochoice::Effect& e, std::string alphabet, std::size_t max_len)
      : alphabet_(std::move(alphabet)), n_(max_len) {
    pow_.push_back(1);
    for (std::size_t i = 0; i < n_; ++i) pow_.push_back(pow_.back() * k());
    bits_ = build(e);
  }

  bool has(const Word& w) const {
    if (w.size() > n_) return false;
    std::size_t idx = 0;
    for (char c : w) {
      const auto pos = alphabet_.find(c);
      if (pos == std::string::npos) return false;
      idx = idx * k() + pos;
    }
    return bits_[w.size()][idx] != 0;
  }

  Lang members() const {
    Lang out;
    for (std::size_t len = 0; len <= n_; ++len) {
      for (std::size_t idx = 0; idx < pow_[len]; ++idx) {
        if (bits_[len][idx]) out.insert(word(len, idx));
      }
    }
    return out;
  }

  /// Both tables must share alphabet and bound.
  bool subset_of(const Table& o) const {
    for (std::size_t len = 0; len <= n_; ++len) {
      for (std::size_t idx = 0; idx < pow_[len]; ++idx) {
        if (bits_[len][idx] && !o.bits_[len][idx]) return false;
      }
    }
    return true;
  }

  bool intersects(const Table& o) const {
    for (std::size_t len = 0; len <= n_; ++len) {
      for (std::size_t idx = 0; idx < pow_[len]; ++idx) {
        if (bits_[len][idx] && o.bits_[len][idx]) return true;
      }
    }
    return false;
  }

  Word word(std::size_t len, std::size_t idx) const {
    Word w(len, ' ');
    for (std::size_t i = len; i-- > 0;) {
      w[i] = alphabet_[idx % k()];
      idx /= k();
    }
    return w;
  }

 private:
  using Bits = std::vector<std::vector<std::uint8_t>>;

  std::size_t k() const { return std::max<std::size_t>(alphabet_.size(), 1); }

  Bits blank() const {
    Bits b;
    for (std::size_t len = 0; len <= n_; ++len) b.emplace_back(pow_[len], 0);
    return b;
  }

  Bits cat(const Bits& a, const Bits& b) const {
    Bits out = blank();
    for (std::size_t len = 0; len <= n_; ++len) {
      for (std::size_t idx = 0; idx < pow_[len]; ++idx) {
        for (std::size_t i = 0; i <= len; ++i) {
          const std::size_t tail = pow_[len - i];
          if (a[i][idx / tail] && b[len - i][idx % tail]) {
            out[len][idx] = 1;
            break;
          }
        }
      }
    }
    return out;
  }

  Bits build(const cochoice::Effect& e) const {
    using K = cochoice::Effect::Kind;
    Bits out = blank();
    switch (e.kind()) {
      case K::Empty:
        break;
      case K::Lit: {
        const Word w = word_of(e.word());
        if (w.size() > n_) break;
        std::size_t idx = 0;
        for (char c : w) {
          const auto pos = alphabet_.find(c);
          if (pos == std::string::npos) return out;
          idx = idx * k() + pos;
        }
        out[w.size()][idx] = 1;
        break;
      }
      case K::Concat:
        out[0][0] = 1;
        for (const auto& c : e.children()) out = cat(out, build(c));
        break;
      case K::Alt:
        for (const auto& c : e.children()) {
          const Bits b = build(c);
          for (std::size_t len = 0; len <= n_; ++len) {
            for (std::size_t idx = 0; idx < pow_[len]; ++idx) out[len][idx] |= b[len][idx];
          }
        }
        break;
      case K::Star: {
        // w in L* iff w is empty or splits as a nonempty L word then an L* word.
        const Bits body = build(e.body());
        out[0][0] = 1;
        for (std::size_t len = 1; len <= n_; ++len) {
          for (std::size_t idx = 0; idx < pow_[len]; ++idx) {
            for (std::size_t i = 1; i <= len; ++i) {
              const std::size_t tail = pow_[len - i];
              if (body[i][idx / tail] && out[len - i][idx % tail]) {
                out[len][idx] = 1;
                break;
              }
            }
          }
        }
        break;
      }
    }
    return out;
  }

  std::string alphabet_;
  std::size_t n_;
  std::vector<std::size_t> pow_;
  Bits bits_;
};

/// Every word of L(e) up to `max_len`.
inline Lang words(const cochoice::Effect& e, std::size_t max_len) {
  return Table(e, alphabet_of(e), max_len).members();
}

/// Structural emptiness: no enumeration needed.
inline bool is_empty(const cochoice::Effect& e) {
  using K = cochoice::Effect::Kind;
  switch (e.kind()) {
    case K::Empty:
      return true;
    case K::Concat:
      for (const auto& c : e.children()) {
        if (is_empty(c)) return true;
      }
      return false;
    case K::Alt:
      for (const auto& c : e.children()) {
        if (!is_empty(c)) return false;
      }
      return true;
    default:
      return false;
  }
}

inline bool subset(const Lang& a, const Lang& b) {
  for (const auto& w : a) {
    if (!b.contains(w)) return false;
  }
  return true;
}

inline bool intersects(const Lang& a, const Lang& b) {
  for (const auto& w : a) {
    if (b.contains(w)) return true;
  }
  return false;
}

/// All words up to `max_len` over `alphabet`.
inline std::vector<Word> all_words(const std::string& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

/// Random effect over {o, b, a, c} with at most `size` constructors.
inline cochoice::Effect random_effect(std::mt19937_64& rng, std::size_t size) {
  using cochoice::Effect;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (size <= 1) {
    switch (pick(7)) {
      case 0:
        return Effect::empty();
      case 1:
        return Effect::eps();
      case 2:
      case 3:
        return Effect::atom(cochoice::NameAtom::on());
      case 4:
        return Effect::atom(cochoice::NameAtom::off());
      case 5:
        return Effect::atom(cochoice::NameAtom::variable("a"));
      default:
        return Effect::atom(cochoice::NameAtom::variable("c"));
    }
  }
  switch (pick(3)) {
    case 0:
      return Effect::star(random_effect(rng, size - 1));
    case 1: {
      const std::size_t left = 1 + pick(size - 1);
      return Effect::concat(random_effect(rng, left), random_effect(rng, size - left));
    }
    default: {
      const std::size_t left = 1 + pick(size - 1);
      return Effect::alt(random_effect(rng, left), random_effect(rng, size - left));
    }
  }
}

}  // namespace oracle
