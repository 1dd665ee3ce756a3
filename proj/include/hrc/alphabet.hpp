#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hrc {

/// Symbols are Unicode scalar values.
using Symbol = char32_t;

/// A sequence of alphabet indices, each in [0, alphabet size).
using SymbolSequence = std::vector<std::uint32_t>;

/// Ordered bijection between symbols and indices 0..size-1. Symbols are
/// stored sorted ascending by code point, so the mapping is a deterministic
/// function of the symbol set.
class Alphabet {
public:
  /// Empty alphabet; a usable one comes from the factories below.
  Alphabet() = default;

  /// Collects the distinct symbols of `text`, sorted ascending.
  /// Throws std::invalid_argument on empty input ("empty corpus").
  static Alphabet from_text(std::u32string_view text);

  /// Builds an alphabet from an explicit symbol set; sorts and requires
  /// all symbols distinct.
  static Alphabet from_symbols(std::vector<Symbol> symbols);

  /// Synthetic alphabet over code points 0..size-1, used by the benchmark
  /// harness where sequences are generated directly as indices.
  static Alphabet identity(std::size_t size);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  Symbol symbol(std::size_t index) const;
  std::size_t index(Symbol s) const;  // throws if the symbol is unknown
  bool contains(Symbol s) const;

  bool operator==(const Alphabet&) const = default;

private:
  explicit Alphabet(std::vector<Symbol> sorted) : symbols_(std::move(sorted)) {}

  std::vector<Symbol> symbols_;  // sorted ascending, distinct
};

/// Maps text to alphabet indices. Unknown symbols raise
/// std::invalid_argument naming the symbol and its position.
SymbolSequence encode(std::u32string_view text, const Alphabet& alphabet);

/// Inverse of encode.
std::u32string decode(const SymbolSequence& indices, const Alphabet& alphabet);

/// Standard basis vector e_index of the given size.
Eigen::VectorXd one_hot(Eigen::Index index, Eigen::Index size);

/// UTF-8 boundary helpers for file and CLI I/O. decode_utf8 rejects invalid
/// byte sequences (overlong forms, surrogates, truncation).
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

}  // namespace hrc
