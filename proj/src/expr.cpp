#include "h10/detail/expr.hpp"

#include <algorithm>
#include <cctype>

namespace h10::detail {
namespace {

void add_into(SparsePoly& acc, const SparsePoly& x, int sign) {
  for (const auto& [e, c] : x) {
    BigInt& slot = acc[e];
    slot += sign * c;
    if (slot == 0) acc.erase(e);
  }
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      BigInt& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

class Reader {
 public:
  Reader(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  SparsePoly run() {
    SparsePoly r = sum();
    skip_ws();
    if (pos_ != s_.size()) throw ExprError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly sum() {
    SparsePoly acc;
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    add_into(acc, product(), sign);
    for (;;) {
      if (accept('+')) add_into(acc, product(), 1);
      else if (accept('-')) add_into(acc, product(), -1);
      else break;
    }
    return acc;
  }

  SparsePoly product() {
    SparsePoly acc = power();
    while (accept('*')) acc = multiply(acc, power());
    return acc;
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      const BigInt e = integer();
      if (e > 100000) throw ExprError("exponent too large", at);
      SparsePoly r = constant(1);
      for (BigInt i = 0; i < e; ++i) r = multiply(r, base);
      return r;
    }
    return base;
  }

  SparsePoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly r = sum();
      if (!accept(')')) throw ExprError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw ExprError("unknown variable '" + name + "'", start);
      std::vector<unsigned> e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = 1;
      return SparsePoly{{e, BigInt(1)}};
    }
    throw ExprError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  BigInt integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ExprError("expected integer", start);
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  SparsePoly constant(const BigInt& c) {
    if (c == 0) return {};
    return SparsePoly{{std::vector<unsigned>(vars_.size(), 0), c}};
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_expr(std::string_view text, const std::vector<std::string>& vars) {
  return Reader(text, vars).run();
}

}  // namespace h10::detail
