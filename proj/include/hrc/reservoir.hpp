#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "hrc/rng.hpp"

namespace hrc {

enum class ReservoirKind { DenseOrthogonal, CyclicShift };

/// N x M input scaling matrix. Entries are drawn uniform in [0,1], then each
/// column is centered to zero mean and scaled to unit Euclidean norm, so the
/// image of every one-hot input lies on the unit hypersphere.
class InputMatrix {
public:
  /// Requires 1 <= m <= n. Columns are filled from `rng` in column-major
  /// order, one uniform double per entry.
  static InputMatrix init(Eigen::Index m, Eigen::Index n, RandomStream& rng);

  /// Wraps an existing matrix (deserialization); validates the column
  /// invariants: zero mean and unit norm within 1e-12.
  static InputMatrix from_matrix(Eigen::MatrixXd u);

  Eigen::Index rows() const { return u_.rows(); }
  Eigen::Index cols() const { return u_.cols(); }
  const Eigen::MatrixXd& matrix() const { return u_; }

  /// Column for input symbol m, i.e. U * one_hot(m).
  Eigen::MatrixXd::ConstColXpr column(Eigen::Index m) const { return u_.col(m); }

private:
  explicit InputMatrix(Eigen::MatrixXd u) : u_(std::move(u)) {}

  Eigen::MatrixXd u_;
};

/// Isometric reservoir operator: either a dense orthogonal matrix Q or the
/// cyclic coordinate shift x[n] <- x[(n+1) mod N]. Both preserve the
/// Euclidean norm, so the spectral radius is 1 by construction.
class Reservoir {
public:
  /// QR of an N x N standard-normal matrix (Box-Muller samples from `rng`,
  /// filled column-major), with the sign convention diag(R) > 0 so Q is a
  /// deterministic function of the draw.
  static Reservoir dense_orthogonal(Eigen::Index n, RandomStream& rng);

  static Reservoir cyclic_shift(Eigen::Index n);

  /// Wraps an existing orthogonal matrix (deserialization). The matrix is
  /// assumed orthogonal as produced by dense_orthogonal.
  static Reservoir from_dense_matrix(Eigen::MatrixXd q);

  ReservoirKind kind() const { return kind_; }
  Eigen::Index size() const { return n_; }

  /// Dense operator matrix; throws for the cyclic variant.
  const Eigen::MatrixXd& matrix() const;

  /// Applies the operator to x. Throws on dimension mismatch.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

private:
  Reservoir(ReservoirKind kind, Eigen::Index n, Eigen::MatrixXd q)
      : kind_(kind), n_(n), q_(std::move(q)) {}

  ReservoirKind kind_;
  Eigen::Index n_;
  Eigen::MatrixXd q_;  // empty for CyclicShift
};

/// Model hyperparameters shared by the training entry points.
struct ModelConfig {
  Eigen::Index reservoir_size = 0;           // N
  double alpha = 0.5;                        // leak rate in (0,1]
  double eta = 1e-7;                         // ridge parameter
  ReservoirKind kind = ReservoirKind::CyclicShift;
  std::uint64_t seed = 0;
};

/// One step of the normalized state recurrence:
///   v = (1-alpha) x + alpha (R x + U e_input),   x' = v / ||v||.
/// With alpha = 1 this is the basic update. `out` must not alias `x`.
/// Throws std::runtime_error("degenerate state") when ||v|| underflows.
void step_state(Eigen::Ref<const Eigen::VectorXd> x, std::uint32_t input,
                const InputMatrix& u, const Reservoir& r, double alpha,
                Eigen::Ref<Eigen::VectorXd> out);

/// Value-returning wrapper around step_state.
Eigen::VectorXd update_state(const Eigen::VectorXd& x, std::uint32_t input,
                             const InputMatrix& u, const Reservoir& r,
                             double alpha);

}  // namespace hrc
