#include "hyperglue/pairing_code.hpp"

namespace hyperglue {

std::size_t code_length(int n) {
  switch (n) {
    case 4: return 6;
    case 5: return 11;
    case 6: return 21;
    default: throw CodeError("pairing codes exist for n = 4, 5, 6 only");
  }
}

int symbol_value(char c) {
  const auto pos = PairingCode::alphabet.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

PairingCode::PairingCode(int n, std::string text) : n_(n), text_(std::move(text)) {
  const std::size_t len = code_length(n);
  if (text_.size() != len)
    throw CodeError("code '" + text_ + "' has length " + std::to_string(text_.size()) + ", expected " +
                    std::to_string(len));
  for (char c : text_) {
    const int v = symbol_value(c);
    if (v < 0) throw CodeError(std::string("bad character '") + c + "' in code");
    if (v >= (1 << n)) throw CodeError(std::string("symbol '") + c + "' exceeds the sign group");
  }
}

PairingCode encode(const Assignment& a) {
  if (a.masks.size() != code_length(a.n)) throw CodeError("assignment has the wrong length");
  std::string s;
  for (KMask m : a.masks) {
    if (m >= (KMask(1) << a.n)) throw CodeError("mask outside the sign group");
    s += PairingCode::alphabet[m];
  }
  return PairingCode(a.n, std::move(s));
}

Assignment decode(const PairingCode& code) {
  Assignment a;
  a.n = code.dimension();
  for (char c : code.str()) a.masks.push_back(static_cast<KMask>(symbol_value(c)));
  return a;
}

}  // namespace hyperglue
