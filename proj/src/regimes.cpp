#include "hrc/regimes.hpp"

#include <stdexcept>

namespace hrc {

namespace {

// Lowest-index argmax; ties always resolve to the smallest index so recall
// is deterministic.
Eigen::Index argmax_lowest(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

// States after consuming s(0..t) for t = 0..steps-1, starting from x(0)=0.
// Each new state is written straight into its output column and read back
// as the previous state of the next step.
Eigen::MatrixXd drive_prefix_states(const SymbolSequence& s, std::size_t steps,
                                    const InputMatrix& u, const Reservoir& r,
                                    double alpha) {
  const Eigen::Index n = r.size();
  Eigen::MatrixXd states(n, static_cast<Eigen::Index>(steps));
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto prev =
        t == 0 ? Eigen::Ref<const Eigen::VectorXd>(zero)
               : Eigen::Ref<const Eigen::VectorXd>(states.col(t - 1));
    step_state(prev, s[t], u, r, alpha, states.col(static_cast<Eigen::Index>(t)));
  }
  return states;
}

// One-hot target matrix with columns e_{y(t)}.
Eigen::MatrixXd target_matrix(const SymbolSequence& y, std::size_t offset,
                              std::size_t count, Eigen::Index k) {
  Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(k, static_cast<Eigen::Index>(count));
  for (std::size_t t = 0; t < count; ++t) {
    const auto idx = y[offset + t];
    if (idx >= static_cast<std::uint32_t>(k))
      throw std::invalid_argument("target symbol out of range");
    targets(idx, static_cast<Eigen::Index>(t)) = 1.0;
  }
  return targets;
}

struct RandomLayers {
  InputMatrix u;
  Reservoir reservoir;
};

RandomLayers make_layers(std::size_t m, const ModelConfig& config) {
  SplitMix64 rng(config.seed);
  InputMatrix u =
      InputMatrix::init(static_cast<Eigen::Index>(m), config.reservoir_size, rng);
  Reservoir reservoir = config.kind == ReservoirKind::DenseOrthogonal
                            ? Reservoir::dense_orthogonal(config.reservoir_size, rng)
                            : Reservoir::cyclic_shift(config.reservoir_size);
  return {std::move(u), std::move(reservoir)};
}

void check_sequence(const SymbolSequence& s, std::size_t alphabet_size) {
  for (const auto idx : s)
    if (idx >= alphabet_size)
      throw std::invalid_argument("sequence index out of alphabet range");
}

}  // namespace

Eigen::MatrixXd drive_states(const SymbolSequence& s, const InputMatrix& u,
                             const Reservoir& r, double alpha) {
  if (s.size() < 2)
    throw std::invalid_argument("sequence must have at least 2 symbols");
  return drive_prefix_states(s, s.size() - 1, u, r, alpha);
}

Eigen::MatrixXd drive_states_full(const SymbolSequence& s, const InputMatrix& u,
                                  const Reservoir& r, double alpha) {
  if (s.empty()) throw std::invalid_argument("sequence must not be empty");
  return drive_prefix_states(s, s.size(), u, r, alpha);
}

TrainedModel train_offline_generative(const SymbolSequence& s,
                                      const Alphabet& alphabet,
                                      const ModelConfig& config) {
  if (s.size() < 2)
    throw std::invalid_argument("training sequence must have T >= 2");
  check_sequence(s, alphabet.size());
  auto layers = make_layers(alphabet.size(), config);
  const Eigen::MatrixXd states =
      drive_states(s, layers.u, layers.reservoir, config.alpha);
  // Next-symbol targets: state after s(0..t) predicts s(t+1).
  const Eigen::MatrixXd targets =
      target_matrix(s, 1, s.size() - 1, static_cast<Eigen::Index>(alphabet.size()));
  ReadoutWeights w = solve_offline(states, targets, config.eta);
  return TrainedModel{std::move(layers.u), std::move(layers.reservoir),
                      std::move(w), config.alpha, alphabet, alphabet};
}

std::pair<TrainedModel, TrainReport> train_online_generative(
    const SymbolSequence& s, const Alphabet& alphabet,
    const ModelConfig& config, int max_epochs) {
  if (s.size() < 2)
    throw std::invalid_argument("training sequence must have T >= 2");
  check_sequence(s, alphabet.size());
  if (max_epochs <= 0) max_epochs = static_cast<int>(s.size());

  auto layers = make_layers(alphabet.size(), config);
  const Eigen::Index n = config.reservoir_size;
  const auto k = static_cast<Eigen::Index>(alphabet.size());

  TrainedModel model{std::move(layers.u), std::move(layers.reservoir),
                     ReadoutWeights::Zero(k, n), config.alpha, alphabet,
                     alphabet};
  const Symbol start = alphabet.symbol(s[0]);

  TrainReport report;
  Eigen::VectorXd x(n);
  Eigen::VectorXd next(n);
  for (;;) {
    report.final_error = recall_error(s, recall_generative(model, start, s.size()));
    report.converged = report.final_error == 0.0;
    if (report.converged || report.epochs >= max_epochs) break;

    // one teacher-forced epoch from a zero state
    x.setZero();
    for (std::size_t t = 0; t + 1 < s.size(); ++t) {
      step_state(x, s[t], model.u, model.reservoir, config.alpha, next);
      x.swap(next);
      gradient_step(model.w, x, static_cast<Eigen::Index>(s[t + 1]));
    }
    ++report.epochs;
  }
  return {std::move(model), report};
}

TrainedModel train_offline_associative(const SymbolSequence& s,
                                       const SymbolSequence& y,
                                       const Alphabet& input_alphabet,
                                       const Alphabet& output_alphabet,
                                       const ModelConfig& config) {
  if (s.empty()) throw std::invalid_argument("training sequence must have T >= 1");
  if (s.size() != y.size())
    throw std::invalid_argument("input and output sequences must have equal length");
  check_sequence(s, input_alphabet.size());
  check_sequence(y, output_alphabet.size());
  auto layers = make_layers(input_alphabet.size(), config);
  ReadoutWeights w = train_associative_readout(
      s, y, output_alphabet.size(), layers.u, layers.reservoir, config.alpha,
      config.eta);
  return TrainedModel{std::move(layers.u), std::move(layers.reservoir),
                      std::move(w), config.alpha, input_alphabet,
                      output_alphabet};
}

ReadoutWeights train_associative_readout(const SymbolSequence& s,
                                         const SymbolSequence& y,
                                         std::size_t output_size,
                                         const InputMatrix& u,
                                         const Reservoir& r, double alpha,
                                         double eta) {
  if (s.empty() || s.size() != y.size())
    throw std::invalid_argument("input and output sequences must have equal length >= 1");
  const Eigen::MatrixXd states = drive_states_full(s, u, r, alpha);
  const Eigen::MatrixXd targets =
      target_matrix(y, 0, y.size(), static_cast<Eigen::Index>(output_size));
  return solve_offline(states, targets, eta);
}

SymbolSequence recall_generative(const TrainedModel& model, Symbol start,
                                 std::size_t length) {
  if (length < 1) throw std::invalid_argument("recall length must be >= 1");
  const Eigen::Index n = model.reservoir.size();
  auto idx = static_cast<std::uint32_t>(model.input_alphabet.index(start));

  SymbolSequence out;
  out.reserve(length);
  out.push_back(idx);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd next(n);
  Eigen::VectorXd logits(model.w.rows());
  for (std::size_t t = 1; t < length; ++t) {
    step_state(x, idx, model.u, model.reservoir, model.alpha, next);
    x.swap(next);
    // argmax of the logits equals argmax of the softmax
    logits.noalias() = model.w * x;
    idx = static_cast<std::uint32_t>(argmax_lowest(logits));
    out.push_back(idx);
  }
  return out;
}

SymbolSequence recall_associative(const TrainedModel& model,
                                  const SymbolSequence& s) {
  return recall_associative(model.u, model.reservoir, model.w, model.alpha, s);
}

SymbolSequence recall_associative(const InputMatrix& u, const Reservoir& r,
                                  const ReadoutWeights& w, double alpha,
                                  const SymbolSequence& s) {
  const Eigen::Index n = r.size();
  SymbolSequence out;
  out.reserve(s.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd next(n);
  Eigen::VectorXd logits(w.rows());
  for (const auto symbol : s) {
    step_state(x, symbol, u, r, alpha, next);
    x.swap(next);
    logits.noalias() = w * x;
    out.push_back(static_cast<std::uint32_t>(argmax_lowest(logits)));
  }
  return out;
}

double recall_error(const SymbolSequence& a, const SymbolSequence& b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("sequences must have equal length >= 1");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < a.size(); ++t) hits += a[t] == b[t];
  return 1.0 - static_cast<double>(hits) / static_cast<double>(a.size());
}

}  // namespace hrc
