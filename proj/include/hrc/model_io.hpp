#pragma once

#include <filesystem>

#include "hrc/regimes.hpp"

namespace hrc {

/// Model artifact format (magic "HRCM", version 1): same header discipline
/// as the ciphertext format, then alpha, the input alphabet, U, a reservoir
/// descriptor (kind byte, plus Q for the dense variant) and W, all matrices
/// row-major f64le. Generative models only, so K = M and the output
/// alphabet equals the input alphabet.
void save_model(const TrainedModel& model, const std::filesystem::path& path);

/// Loads a model artifact. Throws std::invalid_argument on malformed or
/// truncated files, std::runtime_error on I/O failure.
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace hrc
