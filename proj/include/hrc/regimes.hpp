#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>

#include "hrc/alphabet.hpp"
#include "hrc/readout.hpp"
#include "hrc/reservoir.hpp"

namespace hrc {

/// Everything needed to recall: the fixed random layers, the trained
/// readout, and the symbol mappings at both ends. In the generative regime
/// the two alphabets coincide.
struct TrainedModel {
  InputMatrix u;
  Reservoir reservoir;
  ReadoutWeights w;
  double alpha;
  Alphabet input_alphabet;
  Alphabet output_alphabet;
};

struct TrainReport {
  int epochs = 0;
  double final_error = 1.0;
  bool converged = false;
};

/// Teacher-forced states for the generative regime: column t is the state
/// after consuming s(0..t), starting from x(0) = 0. Returns N x (T-1); the
/// state after the final symbol has no next-symbol target and is omitted.
/// Requires T >= 2.
Eigen::MatrixXd drive_states(const SymbolSequence& s, const InputMatrix& u,
                             const Reservoir& r, double alpha);

/// Like drive_states but keeps all T prefix states (associative regime,
/// where targets align with every position).
Eigen::MatrixXd drive_states_full(const SymbolSequence& s, const InputMatrix& u,
                                  const Reservoir& r, double alpha);

/// Offline (ridge pseudo-inverse) training on next-symbol targets.
TrainedModel train_offline_generative(const SymbolSequence& s,
                                      const Alphabet& alphabet,
                                      const ModelConfig& config);

/// Online gradient-descent training. Each epoch replays the sequence with
/// teacher forcing from a zero state and applies one gradient step per
/// position; the recall error of the current weights is evaluated by full
/// recall at epoch boundaries. Stops at error 0 or after max_epochs epochs
/// (default: T, pass 0). Non-convergence is reported, not thrown.
std::pair<TrainedModel, TrainReport> train_online_generative(
    const SymbolSequence& s, const Alphabet& alphabet,
    const ModelConfig& config, int max_epochs = 0);

/// Offline training mapping an input sequence to an aligned output
/// sequence; target y(t) is paired with the state after consuming s(0..t).
TrainedModel train_offline_associative(const SymbolSequence& s,
                                       const SymbolSequence& y,
                                       const Alphabet& input_alphabet,
                                       const Alphabet& output_alphabet,
                                       const ModelConfig& config);

/// Associative training on externally supplied layers (the crypto module
/// derives U and Q from key material rather than a seed).
ReadoutWeights train_associative_readout(const SymbolSequence& s,
                                         const SymbolSequence& y,
                                         std::size_t output_size,
                                         const InputMatrix& u,
                                         const Reservoir& r, double alpha,
                                         double eta);

/// Autonomous generation: consume the start symbol from the zero state,
/// then repeatedly emit the argmax of the readout and feed it back.
/// Returns `length` indices beginning with the start symbol. Ties resolve
/// to the lowest index.
SymbolSequence recall_generative(const TrainedModel& model, Symbol start,
                                 std::size_t length);

/// Associative recall: output t is the readout argmax over the state after
/// consuming s(0..t).
SymbolSequence recall_associative(const TrainedModel& model,
                                  const SymbolSequence& s);

/// Associative recall on unbundled layers (avoids packing a TrainedModel
/// around externally owned U/Q, as in the crypto round trip).
SymbolSequence recall_associative(const InputMatrix& u, const Reservoir& r,
                                  const ReadoutWeights& w, double alpha,
                                  const SymbolSequence& s);

/// Fraction of positions where the sequences differ (in [0,1]).
/// Requires equal lengths >= 1.
double recall_error(const SymbolSequence& a, const SymbolSequence& b);

}  // namespace hrc
