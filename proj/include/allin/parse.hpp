#pragma once

// Text syntax for linear forms, substitutions and constraint sets.
//
//   form          2x - 3y + z
//   substitution  (y, x, z)        parentheses optional
//   constraints   0 < x < y < z    chains, and lists split by ',' or ';'
//
// Coefficients are integers, variables are x, y and z, whitespace is ignored.
// Constraints must be homogeneous: both sides may carry constants only if they cancel.

#include "allin/expansion.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace allin {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

LinForm parse_form(std::string_view text);
Substitution parse_substitution(std::string_view text);
Region parse_region(std::string_view text);

/// Renders a region as a comma-separated list that parse_region reads back.
std::string format_region(const Region& r);

}  // namespace allin
