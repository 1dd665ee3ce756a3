#include <doctest.h>

#include <cmath>
#include <hrc/alphabet.hpp>
#include <hrc/readout.hpp>
#include <hrc/reservoir.hpp>
#include <hrc/rng.hpp>

using namespace hrc;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              RandomStream& rng, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = scale * (2.0 * uniform_double(rng) - 1.0);
  return m;
}

// Test-side oracle: plain Gauss-Jordan inversion with partial pivoting,
// independent of the library's Cholesky solve path.
Eigen::MatrixXd gauss_jordan_inverse(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  REQUIRE(a.cols() == n);
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index row = col + 1; row < n; ++row)
      if (std::abs(a(row, col)) > std::abs(a(pivot, col))) pivot = row;
    REQUIRE(std::abs(a(pivot, col)) > 0.0);
    a.row(col).swap(a.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const double d = a(col, col);
    a.row(col) /= d;
    inv.row(col) /= d;
    for (Eigen::Index row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = a(row, col);
      if (f != 0.0) {
        a.row(row) -= f * a.row(col);
        inv.row(row) -= f * inv.row(col);
      }
    }
  }
  return inv;
}

// Oracle for the ridge solution: W = (S X^T)(X X^T + eta I)^-1 by explicit
// dense inversion.
Eigen::MatrixXd ridge_oracle(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s,
                             double eta) {
  Eigen::MatrixXd gram = x * x.transpose();
  gram.diagonal().array() += eta;
  return s * x.transpose() * gauss_jordan_inverse(gram);
}

}  // namespace

TEST_CASE("softmax at zero weights is uniform") {
  const ReadoutWeights w = ReadoutWeights::Zero(4, 6);
  const Eigen::VectorXd p = softmax_probs(w, Eigen::VectorXd::Random(6));
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(p[k] == doctest::Approx(0.25));
}

TEST_CASE("softmax probabilities sum to one") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const ReadoutWeights w = random_matrix(5, 9, rng, 10.0);
    Eigen::VectorXd x = random_matrix(9, 1, rng);
    const Eigen::VectorXd p = softmax_probs(w, x);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK(p.minCoeff() > 0.0);
  }
}

TEST_CASE("softmax matches direct evaluation for two classes") {
  // logits 1 and 0 give [e/(e+1), 1/(e+1)]
  ReadoutWeights w(2, 2);
  w.row(0) << 1.0, 0.0;
  w.row(1) << 0.0, 0.0;
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  const Eigen::VectorXd p = softmax_probs(w, x);
  const double e = std::exp(1.0);
  CHECK(p[0] == doctest::Approx(e / (e + 1.0)).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(1.0 / (e + 1.0)).epsilon(1e-14));
}

TEST_CASE("softmax survives huge logits") {
  ReadoutWeights w(2, 1);
  w << 1000.0, -1000.0;
  Eigen::VectorXd x(1);
  x << 1.0;
  const Eigen::VectorXd p = softmax_probs(w, x);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(std::isfinite(p[1]));
}

TEST_CASE("softmax is invariant to a constant logit shift") {
  SplitMix64 rng(32);
  const Eigen::VectorXd x = random_matrix(7, 1, rng);
  const ReadoutWeights w = random_matrix(4, 7, rng, 3.0);
  ReadoutWeights shifted = w;
  // add a vector c to every row: logits shift by <c,x> uniformly
  const Eigen::VectorXd c = random_matrix(7, 1, rng, 2.0);
  shifted.rowwise() += c.transpose();
  const Eigen::VectorXd p = softmax_probs(w, x);
  const Eigen::VectorXd q = softmax_probs(shifted, x);
  CHECK((p - q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cross entropy basics") {
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(4, 0.25);
  CHECK(cross_entropy(uniform, 2) == doctest::Approx(std::log(4.0)));

  Eigen::VectorXd certain(3);
  certain << 0.0, 1.0, 0.0;
  CHECK(cross_entropy(certain, 1) == 0.0);
  CHECK(cross_entropy(certain, 0) == 745.0);  // capped, not infinite

  Eigen::VectorXd p(2);
  p << 0.9, 0.1;
  CHECK(cross_entropy(p, 1) == doctest::Approx(2.302585092994046).epsilon(1e-12));
  CHECK_THROWS_AS(cross_entropy(p, 2), std::invalid_argument);
}

TEST_CASE("gradient step matches the hand-evaluated case") {
  // W = 0, K = N = 2, x = e0, target 0: p = [1/2,1/2],
  // so the update rows are [1/2, 0] and [-1/2, 0]
  ReadoutWeights w = ReadoutWeights::Zero(2, 2);
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  gradient_step(w, x, 0);
  CHECK(w(0, 0) == doctest::Approx(0.5));
  CHECK(w(0, 1) == 0.0);
  CHECK(w(1, 0) == doctest::Approx(-0.5));
  CHECK(w(1, 1) == 0.0);
}

TEST_CASE("gradient step with a zero state is a no-op") {
  SplitMix64 rng(33);
  ReadoutWeights w = random_matrix(3, 5, rng);
  const ReadoutWeights before = w;
  gradient_step(w, Eigen::VectorXd::Zero(5), 1);
  CHECK(w == before);
}

TEST_CASE("gradient step preserves per-column sums") {
  // targets and probabilities both sum to 1, so each column of the update
  // sums to zero
  SplitMix64 rng(34);
  for (int rep = 0; rep < 10; ++rep) {
    ReadoutWeights w = random_matrix(4, 6, rng, 2.0);
    const ReadoutWeights before = w;
    const Eigen::VectorXd x = random_matrix(6, 1, rng);
    gradient_step(w, x, static_cast<Eigen::Index>(uniform_below(rng, 4)));
    const Eigen::RowVectorXd colsum = (w - before).colwise().sum();
    CHECK(colsum.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("analytic gradient matches central finite differences") {
  // d/dw of the cross entropy (oracle) vs the library update direction
  SplitMix64 rng(35);
  const double h = 1e-6;
  double worst = 0.0;
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::Index k = 2 + uniform_below(rng, 4);  // K <= 5
    const Eigen::Index n = 2 + uniform_below(rng, 7);  // N <= 8
    const ReadoutWeights w = random_matrix(k, n, rng);
    const Eigen::VectorXd x = random_matrix(n, 1, rng);
    const auto target = static_cast<Eigen::Index>(
        uniform_below(rng, static_cast<std::uint32_t>(k)));

    // library gradient of H: (p - y) x^T times -1 is the update direction
    ReadoutWeights updated = w;
    gradient_step(updated, x, target);
    const ReadoutWeights analytic = -(updated - w);  // = (p - y) x^T

    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        ReadoutWeights plus = w, minus = w;
        plus(i, j) += h;
        minus(i, j) -= h;
        const double num = (cross_entropy(softmax_probs(plus, x), target) -
                            cross_entropy(softmax_probs(minus, x), target)) /
                           (2.0 * h);
        const double denom = std::max(std::abs(num), 1e-3);
        worst = std::max(worst, std::abs(analytic(i, j) - num) / denom);
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("offline solve on the identity system returns the identity") {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(4, 4);
  const ReadoutWeights w = solve_offline(x, x, 0.0);
  CHECK((w - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("offline solve matches the explicit-inverse oracle") {
  SplitMix64 rng(36);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::MatrixXd x = random_matrix(5, 8, rng);
    const Eigen::MatrixXd s = random_matrix(3, 8, rng);
    for (const double eta : {1e-7, 1e-3, 1.0}) {
      const ReadoutWeights w = solve_offline(x, s, eta);
      CHECK((w - ridge_oracle(x, s, eta)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("offline solve rejects singular systems at eta = 0") {
  // fewer states than reservoir dimensions leaves the Gram matrix singular
  SplitMix64 rng(37);
  const Eigen::MatrixXd x = random_matrix(6, 3, rng);
  const Eigen::MatrixXd s = random_matrix(2, 3, rng);
  CHECK_THROWS_AS(solve_offline(x, s, 0.0), std::runtime_error);
  CHECK_NOTHROW(solve_offline(x, s, 1e-7));
}

TEST_CASE("default ridge parameter is 1e-7") {
  CHECK(hrc::ModelConfig{}.eta == 1e-7);
}

TEST_CASE("accumulator single step stores the outer products") {
  NormalEquationsAccumulator acc(2, 3);
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, -1.0;
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  acc.accumulate(x, y);
  CHECK(acc.count() == 1);
  CHECK(acc.yxt() == y * x.transpose());
  CHECK(acc.xxt() == x * x.transpose());
}

TEST_CASE("accumulator keeps XXt exactly symmetric") {
  SplitMix64 rng(38);
  NormalEquationsAccumulator acc(2, 5);
  for (int t = 0; t < 20; ++t)
    acc.accumulate(random_matrix(5, 1, rng), random_matrix(2, 1, rng));
  CHECK((acc.xxt() - acc.xxt().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("incremental solve equals the batch solve") {
  SplitMix64 rng(39);
  for (int rep = 0; rep < 5; ++rep) {
    const Eigen::Index n = 4 + uniform_below(rng, 5);
    const Eigen::Index t = n + 1 + uniform_below(rng, 10);
    const Eigen::MatrixXd x = random_matrix(n, t, rng);
    const Eigen::MatrixXd s = random_matrix(3, t, rng);
    NormalEquationsAccumulator acc(3, n);
    for (Eigen::Index col = 0; col < t; ++col)
      acc.accumulate(x.col(col), s.col(col));
    for (const double eta : {1e-7, 0.5}) {
      const ReadoutWeights batch = solve_offline(x, s, eta);
      const ReadoutWeights inc = acc.solve(eta);
      CHECK((batch - inc).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("accumulator solve matches the 1x(1+1) hand case") {
  // one pair x = e1, y = e0, eta = 1: W = e0 e1^T / 2
  NormalEquationsAccumulator acc(3, 4);
  acc.accumulate(one_hot(1, 4), one_hot(0, 3));
  const ReadoutWeights w = acc.solve(1.0);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 4);
  expect(0, 1) = 0.5;
  CHECK((w - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("huge ridge drives the weights to zero") {
  SplitMix64 rng(40);
  NormalEquationsAccumulator acc(2, 3);
  for (int t = 0; t < 6; ++t)
    acc.accumulate(random_matrix(3, 1, rng), random_matrix(2, 1, rng));
  CHECK(acc.solve(1e12).cwiseAbs().maxCoeff() < 1e-9);
  CHECK_THROWS_AS(NormalEquationsAccumulator(2, 3).solve(1.0),
                  std::invalid_argument);
}
