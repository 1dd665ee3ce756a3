#include "hrc/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace hrc {

namespace {

constexpr char kMagic[4] = {'H', 'R', 'C', 'M'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kKindDense = 0;
constexpr std::uint8_t kKindCyclic = 1;

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64le(std::vector<std::uint8_t>& out, double d) {
  put_u64le(out, std::bit_cast<std::uint64_t>(d));
}

void put_matrix(std::vector<std::uint8_t>& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index row = 0; row < m.rows(); ++row)
    for (Eigen::Index col = 0; col < m.cols(); ++col) put_f64le(out, m(row, col));
}

class Reader {
public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  const std::uint8_t* take(std::size_t len) {
    if (len > bytes_.size() - pos_)
      throw std::invalid_argument("corrupt model file: truncated");
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += len;
    return p;
  }

  std::uint64_t u64le() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
  }

  double f64le() { return std::bit_cast<double>(u64le()); }

  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index row = 0; row < rows; ++row)
      for (Eigen::Index col = 0; col < cols; ++col) m(row, col) = f64le();
    return m;
  }

  bool done() const { return pos_ == bytes_.size(); }

private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const auto n = static_cast<std::uint64_t>(model.reservoir.size());
  const auto m = static_cast<std::uint64_t>(model.input_alphabet.size());
  const std::string alphabet_utf8 = encode_utf8(
      std::u32string(model.input_alphabet.symbols().begin(),
                     model.input_alphabet.symbols().end()));

  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.insert(out.end(), 4, 0);  // reserved
  put_u64le(out, n);
  put_u64le(out, m);
  put_f64le(out, model.alpha);
  put_u64le(out, alphabet_utf8.size());
  out.insert(out.end(), alphabet_utf8.begin(), alphabet_utf8.end());
  put_matrix(out, model.u.matrix());
  const bool dense = model.reservoir.kind() == ReservoirKind::DenseOrthogonal;
  out.push_back(dense ? kKindDense : kKindCyclic);
  if (dense) put_matrix(out, model.reservoir.matrix());
  put_matrix(out, model.w);

  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file.flush()) throw std::runtime_error("cannot write " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());

  Reader in(bytes);
  if (std::memcmp(in.take(4), kMagic, 4) != 0)
    throw std::invalid_argument("corrupt model file: bad magic");
  if (*in.take(1) != kVersion)
    throw std::invalid_argument("corrupt model file: unsupported version");
  in.take(4);  // reserved

  const std::uint64_t n = in.u64le();
  const std::uint64_t m = in.u64le();
  const double alpha = in.f64le();
  constexpr std::uint64_t kDimLimit = 1u << 24;
  if (n == 0 || m == 0 || m > n || n > kDimLimit ||
      !(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("corrupt model file: implausible header");

  const std::uint64_t alphabet_len = in.u64le();
  if (alphabet_len > kDimLimit)
    throw std::invalid_argument("corrupt model file: implausible header");
  const std::uint8_t* alphabet_bytes = in.take(static_cast<std::size_t>(alphabet_len));
  std::u32string alphabet_text;
  try {
    alphabet_text = decode_utf8(std::string_view(
        reinterpret_cast<const char*>(alphabet_bytes), alphabet_len));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("corrupt model file: bad alphabet encoding");
  }
  if (alphabet_text.size() != m)
    throw std::invalid_argument("corrupt model file: alphabet size mismatch");
  Alphabet alphabet = Alphabet::from_symbols(
      std::vector<Symbol>(alphabet_text.begin(), alphabet_text.end()));

  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd u_matrix = in.matrix(rows, cols);

  const std::uint8_t kind = *in.take(1);
  Reservoir reservoir = [&] {
    if (kind == kKindDense)
      return Reservoir::from_dense_matrix(in.matrix(rows, rows));
    if (kind == kKindCyclic) return Reservoir::cyclic_shift(rows);
    throw std::invalid_argument("corrupt model file: unknown reservoir kind");
  }();

  Eigen::MatrixXd w = in.matrix(cols, rows);  // K = M for generative models
  if (!in.done())
    throw std::invalid_argument("corrupt model file: trailing bytes");
  if (!u_matrix.allFinite() || !w.allFinite())
    throw std::invalid_argument("corrupt model file: non-finite payload");

  InputMatrix u = [&] {
    try {
      return InputMatrix::from_matrix(std::move(u_matrix));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("corrupt model file: invalid input matrix");
    }
  }();

  return TrainedModel{std::move(u), std::move(reservoir), std::move(w), alpha,
                      alphabet, alphabet};
}

}  // namespace hrc
