#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cochoice/effect.hpp"
#include "cochoice/name.hpp"
#include "cochoice/source.hpp"
#include "cochoice/target.hpp"

namespace cochoice {

/// Position-carrying parse diagnostic. Lines and columns start at 1.
struct Diagnostic {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
  std::string code;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

// Concrete syntax:
//   src   e ::= x | n | add | e e | \x:T. e | fix f:T. e | (e || e) | (e)
//   tgt   M ::= x | n | add | M M | M @ atom | M @ (name) | \x:t. M | /\a. M
//               | fix f:t. M | (M ||{name} M) | (M)
//   name    ::= eps | atom atom ...        atom ::= o | b | identifier
//   effect  ::= {} | eps | name | eff eff | eff + eff | eff* | (eff)
//   src type T ::= nat | T -> T
//   tgt type t ::= nat | t -{eff}-> t | t -> t | all a.{eff} t
//   world     ::= name+ | name- separated by commas
SrcExpr parse_src(std::string_view text);
TgtExpr parse_tgt(std::string_view text);
Name parse_name(std::string_view text);
Effect parse_effect(std::string_view text);
SrcType parse_src_type(std::string_view text);
TgtType parse_tgt_type(std::string_view text);
World parse_world(std::string_view text);

std::string format(const SrcExpr& e);
std::string format(const TgtExpr& e);
std::string format(const Name& n);
std::string format(const Effect& e);
std::string format(const SrcType& t);
std::string format(const TgtType& t);
std::string format(const World& w);

}  // namespace cochoice
