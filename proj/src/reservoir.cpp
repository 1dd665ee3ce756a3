#include "hrc/reservoir.hpp"

#include <cmath>
#include <stdexcept>

namespace hrc {

namespace {
constexpr double kColumnTol = 1e-12;
constexpr double kDegenerateNorm = 1e-300;
}  // namespace

InputMatrix InputMatrix::init(Eigen::Index m, Eigen::Index n, RandomStream& rng) {
  if (m < 1) throw std::invalid_argument("input alphabet must not be empty");
  if (m > n) throw std::invalid_argument("input alphabet exceeds reservoir size");
  Eigen::MatrixXd u(n, m);
  for (Eigen::Index col = 0; col < m; ++col)
    for (Eigen::Index row = 0; row < n; ++row) u(row, col) = uniform_double(rng);
  for (Eigen::Index col = 0; col < m; ++col) {
    auto c = u.col(col);
    c.array() -= c.mean();
    const double norm = c.norm();
    if (norm < kDegenerateNorm)
      throw std::runtime_error("degenerate input matrix column");
    c /= norm;
  }
  return InputMatrix(std::move(u));
}

InputMatrix InputMatrix::from_matrix(Eigen::MatrixXd u) {
  if (u.cols() < 1 || u.cols() > u.rows())
    throw std::invalid_argument("input matrix must have 1 <= M <= N");
  for (Eigen::Index col = 0; col < u.cols(); ++col) {
    if (std::abs(u.col(col).mean()) > kColumnTol ||
        std::abs(u.col(col).norm() - 1.0) > kColumnTol)
      throw std::invalid_argument("input matrix columns must be centered and unit norm");
  }
  return InputMatrix(std::move(u));
}

Reservoir Reservoir::dense_orthogonal(Eigen::Index n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("reservoir size must be positive");
  Eigen::MatrixXd v(n, n);
  GaussianStream normals(rng);
  for (Eigen::Index col = 0; col < n; ++col)
    for (Eigen::Index row = 0; row < n; ++row) v(row, col) = normals.next();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  v.resize(0, 0);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the QR sign ambiguity: flip columns where diag(R) < 0 so Q is a
  // deterministic function of the normal draw.
  const auto& r = qr.matrixQR();
  for (Eigen::Index col = 0; col < n; ++col)
    if (r(col, col) < 0.0) q.col(col) = -q.col(col);
  return Reservoir(ReservoirKind::DenseOrthogonal, n, std::move(q));
}

Reservoir Reservoir::cyclic_shift(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("reservoir size must be positive");
  return Reservoir(ReservoirKind::CyclicShift, n, Eigen::MatrixXd());
}

Reservoir Reservoir::from_dense_matrix(Eigen::MatrixXd q) {
  if (q.rows() < 1 || q.rows() != q.cols())
    throw std::invalid_argument("dense reservoir must be square");
  if (!q.allFinite())
    throw std::invalid_argument("dense reservoir entries must be finite");
  const Eigen::Index n = q.rows();
  return Reservoir(ReservoirKind::DenseOrthogonal, n, std::move(q));
}

const Eigen::MatrixXd& Reservoir::matrix() const {
  if (kind_ != ReservoirKind::DenseOrthogonal)
    throw std::logic_error("cyclic reservoir has no stored matrix");
  return q_;
}

Eigen::VectorXd Reservoir::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw std::invalid_argument("state size mismatch");
  Eigen::VectorXd out(n_);
  if (kind_ == ReservoirKind::DenseOrthogonal) {
    out.noalias() = q_ * x;
  } else {
    out.head(n_ - 1) = x.tail(n_ - 1);
    out[n_ - 1] = x[0];
  }
  return out;
}

void step_state(Eigen::Ref<const Eigen::VectorXd> x, std::uint32_t input,
                const InputMatrix& u, const Reservoir& r, double alpha,
                Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = r.size();
  if (x.size() != n || u.rows() != n)
    throw std::invalid_argument("state size mismatch");
  if (static_cast<Eigen::Index>(input) >= u.cols())
    throw std::invalid_argument("input symbol out of range");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in (0,1]");

  const auto ucol = u.column(static_cast<Eigen::Index>(input));
  if (r.kind() == ReservoirKind::DenseOrthogonal) {
    out.noalias() = r.matrix() * x;
    out += ucol;
    if (alpha != 1.0) out = alpha * out + (1.0 - alpha) * x;
  } else {
    // cyclic shift fused with the input add and the leaky blend
    if (alpha == 1.0) {
      out.head(n - 1) = x.tail(n - 1) + ucol.head(n - 1);
      out[n - 1] = x[0] + ucol[n - 1];
    } else {
      out.head(n - 1) =
          (1.0 - alpha) * x.head(n - 1) + alpha * (x.tail(n - 1) + ucol.head(n - 1));
      out[n - 1] = (1.0 - alpha) * x[n - 1] + alpha * (x[0] + ucol[n - 1]);
    }
  }
  const double norm = out.norm();
  if (norm < kDegenerateNorm) throw std::runtime_error("degenerate state");
  out /= norm;
}

Eigen::VectorXd update_state(const Eigen::VectorXd& x, std::uint32_t input,
                             const InputMatrix& u, const Reservoir& r,
                             double alpha) {
  Eigen::VectorXd out(r.size());
  step_state(x, input, u, r, alpha, out);
  return out;
}

}  // namespace hrc
