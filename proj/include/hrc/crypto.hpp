#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hrc/alphabet.hpp"
#include "hrc/regimes.hpp"
#include "hrc/reservoir.hpp"
#include "hrc/rng.hpp"

namespace hrc::crypto {

/// Raised when the trained readout fails to reproduce the masked message,
/// i.e. the chosen parameters cannot encrypt losslessly.
class EncryptionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// SHA-256 in counter mode keyed by the hashed password: block i is
/// SHA-256(SHA-256(password) || LE64(i)), and blocks concatenate into one
/// byte stream. Words are read little-endian: next_u64 consumes 8 bytes,
/// next_u32 consumes 4.
class Sha256Keystream final : public RandomStream {
public:
  explicit Sha256Keystream(std::string_view password);

  void fill(std::uint8_t* out, std::size_t len);
  std::uint64_t next_u64() override;
  std::uint32_t next_u32() override;

private:
  void refill();

  std::array<std::uint8_t, 32> key_;
  std::array<std::uint8_t, 32> block_;
  std::uint64_t counter_ = 0;
  std::size_t pos_ = 32;
};

struct Params {
  double n_factor = 2.0;  // reservoir size N = round(n_factor * T)
  double alpha = 0.5;
  std::size_t key_symbols = 38;  // key alphabet size M
  /// Whole messages are encrypted in one block; the dense reservoir is
  /// N x N with N = n_factor * T, so the limit keeps memory bounded.
  std::size_t max_message_length = 4096;
  /// Output alphabet; defaults to the distinct symbols of the message.
  std::optional<Alphabet> output_alphabet;
};

/// Secret key material shared by both ends: the input matrix, the dense
/// orthogonal reservoir, and the key symbol sequence, all derived
/// deterministically from the password.
struct KeyMaterial {
  InputMatrix u;
  Reservoir reservoir;
  SymbolSequence key;
};

/// Header + trained readout; the readout matrix is the ciphertext payload.
struct CipherText {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t t = 0;
  double alpha = 0.5;
  Alphabet output_alphabet;
  ReadoutWeights w;  // K x N
};

/// Derives (U, Q, key sequence) from the password keystream, in that order:
/// N*M uniform doubles for U (column-major), N*N Box-Muller normals for the
/// QR-orthogonalized reservoir (column-major), then T key symbols as 32-bit
/// draws reduced mod m with rejection sampling. Requires t >= 2, m >= 2 and
/// m <= n.
KeyMaterial derive_key_material(std::string_view password, std::size_t t,
                                Eigen::Index n, std::size_t m);

enum class MaskDirection { Encode, Decode };

/// Per-symbol masking over Z_k: encode adds the key symbol mod k, decode
/// subtracts. Reduces to bitwise XOR when k = 2. Requires equal lengths.
SymbolSequence mask(const SymbolSequence& message, const SymbolSequence& key,
                    std::size_t k, MaskDirection direction);

/// Masks the message, trains the associative readout on key -> masked
/// message, verifies the round trip, and packages header + W. Throws
/// EncryptionError if recall of the masked message is not exact.
CipherText encrypt(std::u32string_view message, std::string_view password,
                   const Params& params = {});

/// Re-derives the key material from the password and header dimensions,
/// recalls the masked message, and unmasks. A wrong password is not
/// detected; it yields garbage output by design.
std::u32string decrypt(const CipherText& cipher, std::string_view password);

/// Binary ciphertext format, bit-exact:
///   bytes 0-3  magic "HRC1"
///   byte  4    version = 1
///   bytes 5-8  reserved, zero
///   u64le      N, M, K, T
///   f64le      alpha
///   u64le      alphabet byte length, then that many UTF-8 bytes
///              (output alphabet symbols in ascending order)
///   K*N f64le  readout W, row-major
std::vector<std::uint8_t> serialize(const CipherText& cipher);

/// Parses and validates a serialized ciphertext. Throws
/// std::invalid_argument on malformed input (bad magic/version, dimension
/// or length mismatch).
CipherText parse_ciphertext(std::span<const std::uint8_t> bytes);

}  // namespace hrc::crypto
