#include "hrc/crypto.hpp"

#include <openssl/sha.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "hrc/readout.hpp"

namespace hrc::crypto {

namespace {

constexpr char kMagic[4] = {'H', 'R', 'C', '1'};
constexpr std::uint8_t kVersion = 1;
constexpr double kEta = 1e-7;

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64le(std::vector<std::uint8_t>& out, double d) {
  put_u64le(out, std::bit_cast<std::uint64_t>(d));
}

class Reader {
public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t len) {
    if (len > bytes_.size() - pos_)
      throw std::invalid_argument("malformed ciphertext: truncated");
    const auto s = bytes_.subspan(pos_, len);
    pos_ += len;
    return s;
  }

  std::uint64_t u64le() {
    const auto s = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
    return v;
  }

  double f64le() { return std::bit_cast<double>(u64le()); }

  bool done() const { return pos_ == bytes_.size(); }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len) {
  std::array<std::uint8_t, 32> digest;
  SHA256(data, len, digest.data());
  return digest;
}

}  // namespace

Sha256Keystream::Sha256Keystream(std::string_view password) {
  if (password.empty()) throw std::invalid_argument("empty password");
  key_ = sha256(reinterpret_cast<const std::uint8_t*>(password.data()),
                password.size());
}

void Sha256Keystream::refill() {
  std::uint8_t material[40];
  std::memcpy(material, key_.data(), 32);
  for (int i = 0; i < 8; ++i)
    material[32 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  block_ = sha256(material, sizeof material);
  ++counter_;
  pos_ = 0;
}

void Sha256Keystream::fill(std::uint8_t* out, std::size_t len) {
  while (len > 0) {
    if (pos_ == block_.size()) refill();
    const std::size_t chunk = std::min(len, block_.size() - pos_);
    std::memcpy(out, block_.data() + pos_, chunk);
    pos_ += chunk;
    out += chunk;
    len -= chunk;
  }
}

std::uint64_t Sha256Keystream::next_u64() {
  std::uint8_t b[8];
  fill(b, sizeof b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint32_t Sha256Keystream::next_u32() {
  std::uint8_t b[4];
  fill(b, sizeof b);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

KeyMaterial derive_key_material(std::string_view password, std::size_t t,
                                Eigen::Index n, std::size_t m) {
  if (t < 2) throw std::invalid_argument("key sequence needs T >= 2");
  if (m < 2) throw std::invalid_argument("degenerate key alphabet");
  if (static_cast<Eigen::Index>(m) > n)
    throw std::invalid_argument("input alphabet exceeds reservoir size");

  Sha256Keystream stream(password);
  InputMatrix u = InputMatrix::init(static_cast<Eigen::Index>(m), n, stream);
  Reservoir reservoir = Reservoir::dense_orthogonal(n, stream);
  SymbolSequence key(t);
  for (auto& symbol : key)
    symbol = uniform_below(stream, static_cast<std::uint32_t>(m));
  return KeyMaterial{std::move(u), std::move(reservoir), std::move(key)};
}

SymbolSequence mask(const SymbolSequence& message, const SymbolSequence& key,
                    std::size_t k, MaskDirection direction) {
  if (message.size() != key.size())
    throw std::invalid_argument("message and key lengths differ");
  if (k < 1) throw std::invalid_argument("alphabet size must be positive");
  const auto mod = static_cast<std::uint64_t>(k);
  SymbolSequence out(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) {
    const std::uint64_t y = message[i];
    const std::uint64_t s = key[i] % mod;
    out[i] = static_cast<std::uint32_t>(
        direction == MaskDirection::Encode ? (y + s) % mod : (y + mod - s) % mod);
  }
  return out;
}

CipherText encrypt(std::u32string_view message, std::string_view password,
                   const Params& params) {
  const std::size_t t = message.size();
  if (t < 2) throw std::invalid_argument("message needs at least 2 symbols");
  if (t > params.max_message_length)
    throw std::invalid_argument("message exceeds the configured block limit");
  if (password.empty()) throw std::invalid_argument("empty password");

  const Alphabet alphabet = params.output_alphabet
                                ? *params.output_alphabet
                                : Alphabet::from_text(message);
  const SymbolSequence plain = encode(message, alphabet);
  const std::size_t k = alphabet.size();

  const auto n = std::max<Eigen::Index>(
      static_cast<Eigen::Index>(params.key_symbols),
      static_cast<Eigen::Index>(std::llround(params.n_factor * static_cast<double>(t))));
  const KeyMaterial material =
      derive_key_material(password, t, n, params.key_symbols);

  const SymbolSequence masked = mask(plain, material.key, k, MaskDirection::Encode);
  ReadoutWeights w =
      train_associative_readout(material.key, masked, k, material.u,
                                material.reservoir, params.alpha, kEta);

  // The readout must reproduce the masked message exactly; anything less
  // would silently corrupt the plaintext.
  if (recall_associative(material.u, material.reservoir, w, params.alpha,
                         material.key) != masked)
    throw EncryptionError("parameters insufficient for lossless encryption");

  CipherText cipher;
  cipher.n = static_cast<std::uint64_t>(n);
  cipher.m = params.key_symbols;
  cipher.k = k;
  cipher.t = t;
  cipher.alpha = params.alpha;
  cipher.output_alphabet = alphabet;
  cipher.w = std::move(w);
  return cipher;
}

std::u32string decrypt(const CipherText& cipher, std::string_view password) {
  if (password.empty()) throw std::invalid_argument("empty password");
  const KeyMaterial material = derive_key_material(
      password, cipher.t, static_cast<Eigen::Index>(cipher.n),
      static_cast<std::size_t>(cipher.m));
  const SymbolSequence masked = recall_associative(
      material.u, material.reservoir, cipher.w, cipher.alpha, material.key);
  const SymbolSequence plain = mask(masked, material.key,
                                    static_cast<std::size_t>(cipher.k),
                                    MaskDirection::Decode);
  return decode(plain, cipher.output_alphabet);
}

std::vector<std::uint8_t> serialize(const CipherText& cipher) {
  const std::string alphabet_utf8 = encode_utf8(std::u32string(
      cipher.output_alphabet.symbols().begin(), cipher.output_alphabet.symbols().end()));

  std::vector<std::uint8_t> out;
  out.reserve(49 + 8 + alphabet_utf8.size() +
              static_cast<std::size_t>(cipher.w.size()) * 8);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.insert(out.end(), 4, 0);  // reserved
  put_u64le(out, cipher.n);
  put_u64le(out, cipher.m);
  put_u64le(out, cipher.k);
  put_u64le(out, cipher.t);
  put_f64le(out, cipher.alpha);
  put_u64le(out, alphabet_utf8.size());
  out.insert(out.end(), alphabet_utf8.begin(), alphabet_utf8.end());
  for (Eigen::Index row = 0; row < cipher.w.rows(); ++row)
    for (Eigen::Index col = 0; col < cipher.w.cols(); ++col)
      put_f64le(out, cipher.w(row, col));
  return out;
}

CipherText parse_ciphertext(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const auto magic = in.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0)
    throw std::invalid_argument("malformed ciphertext: bad magic");
  if (in.take(1)[0] != kVersion)
    throw std::invalid_argument("malformed ciphertext: unsupported version");
  in.take(4);  // reserved

  CipherText cipher;
  cipher.n = in.u64le();
  cipher.m = in.u64le();
  cipher.k = in.u64le();
  cipher.t = in.u64le();
  cipher.alpha = in.f64le();
  if (cipher.n == 0 || cipher.m < 2 || cipher.k == 0 || cipher.t < 2 ||
      cipher.m > cipher.n || !(cipher.alpha > 0.0 && cipher.alpha <= 1.0))
    throw std::invalid_argument("malformed ciphertext: implausible header");
  constexpr std::uint64_t kDimLimit = 1u << 24;
  if (cipher.n > kDimLimit || cipher.k > kDimLimit || cipher.t > kDimLimit)
    throw std::invalid_argument("malformed ciphertext: implausible header");

  const std::uint64_t alphabet_len = in.u64le();
  if (alphabet_len > kDimLimit)
    throw std::invalid_argument("malformed ciphertext: implausible header");
  const auto alphabet_bytes = in.take(static_cast<std::size_t>(alphabet_len));
  std::u32string alphabet_text;
  try {
    alphabet_text = decode_utf8(std::string_view(
        reinterpret_cast<const char*>(alphabet_bytes.data()), alphabet_bytes.size()));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed ciphertext: bad alphabet encoding");
  }
  if (alphabet_text.size() != cipher.k)
    throw std::invalid_argument("malformed ciphertext: alphabet size mismatch");
  cipher.output_alphabet = Alphabet::from_symbols(
      std::vector<Symbol>(alphabet_text.begin(), alphabet_text.end()));
  if (std::u32string(cipher.output_alphabet.symbols().begin(),
                     cipher.output_alphabet.symbols().end()) != alphabet_text)
    throw std::invalid_argument("malformed ciphertext: alphabet not sorted");

  const auto rows = static_cast<Eigen::Index>(cipher.k);
  const auto cols = static_cast<Eigen::Index>(cipher.n);
  cipher.w.resize(rows, cols);
  for (Eigen::Index row = 0; row < rows; ++row)
    for (Eigen::Index col = 0; col < cols; ++col) cipher.w(row, col) = in.f64le();
  if (!in.done())
    throw std::invalid_argument("malformed ciphertext: trailing bytes");
  if (!cipher.w.allFinite())
    throw std::invalid_argument("malformed ciphertext: non-finite payload");
  return cipher;
}

}  // namespace hrc::crypto
