#include "hrc/alphabet.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hrc {

Alphabet Alphabet::from_text(std::u32string_view text) {
  if (text.empty()) throw std::invalid_argument("empty corpus");
  std::set<Symbol> distinct(text.begin(), text.end());
  return Alphabet(std::vector<Symbol>(distinct.begin(), distinct.end()));
}

Alphabet Alphabet::from_symbols(std::vector<Symbol> symbols) {
  if (symbols.empty()) throw std::invalid_argument("empty alphabet");
  std::sort(symbols.begin(), symbols.end());
  if (std::adjacent_find(symbols.begin(), symbols.end()) != symbols.end())
    throw std::invalid_argument("alphabet symbols must be distinct");
  return Alphabet(std::move(symbols));
}

Alphabet Alphabet::identity(std::size_t size) {
  if (size == 0) throw std::invalid_argument("empty alphabet");
  std::vector<Symbol> symbols(size);
  for (std::size_t i = 0; i < size; ++i) symbols[i] = static_cast<Symbol>(i);
  return Alphabet(std::move(symbols));
}

Symbol Alphabet::symbol(std::size_t index) const {
  if (index >= symbols_.size())
    throw std::invalid_argument("alphabet index out of range");
  return symbols_[index];
}

std::size_t Alphabet::index(Symbol s) const {
  const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
  if (it == symbols_.end() || *it != s)
    throw std::invalid_argument("symbol not in alphabet: U+" +
                                std::to_string(static_cast<std::uint32_t>(s)));
  return static_cast<std::size_t>(it - symbols_.begin());
}

bool Alphabet::contains(Symbol s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

SymbolSequence encode(std::u32string_view text, const Alphabet& alphabet) {
  SymbolSequence indices;
  indices.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const Symbol s = text[pos];
    if (!alphabet.contains(s))
      throw std::invalid_argument(
          "unknown symbol U+" + std::to_string(static_cast<std::uint32_t>(s)) +
          " at position " + std::to_string(pos));
    indices.push_back(static_cast<std::uint32_t>(alphabet.index(s)));
  }
  return indices;
}

std::u32string decode(const SymbolSequence& indices, const Alphabet& alphabet) {
  std::u32string text;
  text.reserve(indices.size());
  for (const auto idx : indices) text.push_back(alphabet.symbol(idx));
  return text;
}

Eigen::VectorXd one_hot(Eigen::Index index, Eigen::Index size) {
  if (index < 0 || index >= size)
    throw std::invalid_argument("one_hot index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
  v[index] = 1.0;
  return v;
}

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const auto fail = [&](std::size_t at) {
    throw std::invalid_argument("invalid UTF-8 at byte " + std::to_string(at));
  };
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t len;
    char32_t cp;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xe0) == 0xc0) {
      len = 2;
      cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
      len = 3;
      cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      fail(i);
      return out;  // unreachable
    }
    if (i + len > bytes.size()) fail(i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xc0) != 0x80) fail(i + k);
      cp = (cp << 6) | (b & 0x3f);
    }
    // reject overlong encodings, surrogates and out-of-range values
    static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff))
      fail(i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char32_t cp : text) {
    if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))
      throw std::invalid_argument("invalid Unicode scalar value");
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

}  // namespace hrc
