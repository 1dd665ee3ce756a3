#include "hrc/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace hrc {

namespace {
// -log of the smallest positive (denormal) double, rounded up.
constexpr double kCrossEntropyCap = 745.0;

Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& gram,
                            const Eigen::MatrixXd& rhs, double eta) {
  if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  Eigen::MatrixXd a = gram;
  a.diagonal().array() += eta;
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "singular normal equations; use eta > 0 to regularize");
  Eigen::MatrixXd wt = llt.solve(rhs);
  if (!wt.allFinite())
    throw std::runtime_error(
        "singular normal equations; use eta > 0 to regularize");
  return wt.transpose();
}
}  // namespace

Eigen::VectorXd softmax_probs(const ReadoutWeights& w, const Eigen::VectorXd& x) {
  if (w.cols() != x.size())
    throw std::invalid_argument("readout/state size mismatch");
  Eigen::VectorXd p = w * x;
  p.array() -= p.maxCoeff();
  p = p.array().exp();
  p /= p.sum();
  return p;
}

double cross_entropy(const Eigen::VectorXd& p, Eigen::Index target) {
  if (target < 0 || target >= p.size())
    throw std::invalid_argument("target index out of range");
  const double q = p[target];
  if (!(q > 0.0)) return kCrossEntropyCap;
  return std::min(-std::log(q), kCrossEntropyCap);
}

void gradient_step(ReadoutWeights& w, const Eigen::VectorXd& x,
                   Eigen::Index target) {
  if (target < 0 || target >= w.rows())
    throw std::invalid_argument("target index out of range");
  Eigen::VectorXd delta = -softmax_probs(w, x);
  delta[target] += 1.0;
  w.noalias() += delta * x.transpose();
}

ReadoutWeights solve_offline(const Eigen::MatrixXd& states,
                             const Eigen::MatrixXd& targets, double eta) {
  if (states.cols() != targets.cols())
    throw std::invalid_argument("states and targets must have equal columns");
  if (states.cols() == 0)
    throw std::invalid_argument("cannot solve with zero training steps");
  // W (X X^T + eta I) = S X^T, solved as the transposed SPD system.
  return ridge_solve(states * states.transpose(),
                     states * targets.transpose(), eta);
}

NormalEquationsAccumulator::NormalEquationsAccumulator(Eigen::Index k,
                                                       Eigen::Index n)
    : yxt_(Eigen::MatrixXd::Zero(k, n)), xxt_(Eigen::MatrixXd::Zero(n, n)) {}

void NormalEquationsAccumulator::accumulate(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& target) {
  if (x.size() != xxt_.rows() || target.size() != yxt_.rows())
    throw std::invalid_argument("accumulator dimension mismatch");
  yxt_.noalias() += target * x.transpose();
  xxt_.noalias() += x * x.transpose();
  ++count_;
}

ReadoutWeights NormalEquationsAccumulator::solve(double eta) const {
  if (count_ < 1)
    throw std::invalid_argument("accumulator holds no training steps");
  return ridge_solve(xxt_, yxt_.transpose(), eta);
}

}  // namespace hrc
