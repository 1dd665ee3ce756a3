#pragma once

#include <Eigen/Dense>

namespace hrc {

/// K x N output weight matrix; row k is the weight vector of class k.
using ReadoutWeights = Eigen::MatrixXd;

/// Softmax class probabilities p_k = exp(<w_k,x>) / sum_i exp(<w_i,x>),
/// evaluated with the usual max-shift so large logits cannot overflow.
Eigen::VectorXd softmax_probs(const ReadoutWeights& w, const Eigen::VectorXd& x);

/// -log p[target]. Capped at 745 (-log of the smallest positive double)
/// instead of returning infinity; the value is diagnostic only.
double cross_entropy(const Eigen::VectorXd& p, Eigen::Index target);

/// One online cross-entropy descent step with unit step size:
///   W <- W + (e_target - softmax_probs(W,x)) x^T.
void gradient_step(ReadoutWeights& w, const Eigen::VectorXd& x,
                   Eigen::Index target);

/// Offline ridge solution W = (S X^T)(X X^T + eta I)^{-1} where X collects
/// states and S targets as columns. Uses a Cholesky factorization of the
/// shifted Gram matrix; eta = 0 on a singular system throws with advice to
/// use eta > 0.
ReadoutWeights solve_offline(const Eigen::MatrixXd& states,
                             const Eigen::MatrixXd& targets, double eta);

/// Running sums Y X^T and X X^T, so the ridge solution is available at any
/// time step without retaining the state history.
class NormalEquationsAccumulator {
public:
  NormalEquationsAccumulator(Eigen::Index k, Eigen::Index n);

  /// Adds one (state, target) pair: YXt += y x^T, XXt += x x^T.
  void accumulate(const Eigen::VectorXd& x, const Eigen::VectorXd& target);

  /// W = YXt (XXt + eta I)^{-1}. Requires at least one accumulated pair.
  ReadoutWeights solve(double eta) const;

  long count() const { return count_; }
  const Eigen::MatrixXd& yxt() const { return yxt_; }
  const Eigen::MatrixXd& xxt() const { return xxt_; }

private:
  Eigen::MatrixXd yxt_;  // K x N
  Eigen::MatrixXd xxt_;  // N x N, symmetric PSD
  long count_ = 0;
};

}  // namespace hrc
