#pragma once

// Small expression reader shared by the polynomial, series and bivariate
// text formats: integer-coefficient sums of products of named variables,
// with parentheses and non-negative integer powers.

#include "h10/ring.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace h10::detail {

/// Exponent vector (one entry per declared variable) -> integer coefficient.
using SparsePoly = std::map<std::vector<unsigned>, BigInt>;

class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

SparsePoly parse_expr(std::string_view text, const std::vector<std::string>& vars);

}  // namespace h10::detail
