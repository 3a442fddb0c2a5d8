#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperglue/polytope.hpp"

namespace hyperglue {

class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One K_n element per non-coordinate wall of P_n, in canonical wall order.
struct Assignment {
  int n = 0;
  std::vector<KMask> masks;

  bool operator==(const Assignment&) const = default;
};

// Symbol i of a code is the sign mask assigned to wall n + i of polytope(n),
// written in the alphabet below (value 0..63).
class PairingCode {
 public:
  static constexpr std::string_view alphabet =
      "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz+/";

  PairingCode(int n, std::string text);

  int dimension() const { return n_; }
  const std::string& str() const { return text_; }
  std::size_t size() const { return text_.size(); }

  bool operator==(const PairingCode&) const = default;
  auto operator<=>(const PairingCode& o) const { return text_ <=> o.text_; }

 private:
  int n_;
  std::string text_;
};

std::size_t code_length(int n);
int symbol_value(char c);  // -1 if not in the alphabet

PairingCode encode(const Assignment& a);
Assignment decode(const PairingCode& code);

}  // namespace hyperglue
