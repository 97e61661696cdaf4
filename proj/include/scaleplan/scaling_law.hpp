#pragma once

#include "scaleplan/coefficients.hpp"

namespace scaleplan {

/// A (parameter count, training tokens) pair. Counts are real-valued
/// throughout; rounding happens only when reports are rendered.
struct ModelConfig {
  double params;
  double train_tokens;

  ModelConfig(double params, double train_tokens);

  double tokens_per_param() const { return train_tokens / params; }
};

struct FlopAccount {
  double train_flops;
  double inference_flops;
  double total_flops;  // always exactly train_flops + inference_flops
};

/// E + A/N^alpha + B/D^beta, in nats.
double loss(const ModelConfig& cfg, const Coefficients& c);

/// Training tokens needed to reach target_loss at a fixed parameter count:
/// D = (B / (target_loss - E - A/N^alpha))^(1/beta).
/// Throws UnachievableLoss when the model is too small or the target is at
/// or below the asymptote.
double tokens_for_loss(double params, double target_loss, const Coefficients& c);

/// Parameter count needed to reach target_loss at a fixed token budget.
double params_for_loss(double train_tokens, double target_loss, const Coefficients& c);

/// 6N FLOPs per training token, 2N per inference token.
FlopAccount flop_account(const ModelConfig& cfg, double inference_tokens);

/// Minimum-training-FLOPs configuration achieving target_loss, ignoring
/// inference. Closed form: D = (B(alpha+beta) / (alpha(l-E)))^(1/beta).
ModelConfig chinchilla_baseline(double target_loss, const Coefficients& c);

/// Loss reached by the Chinchilla-optimal model of a given size; the inverse
/// of chinchilla_baseline in the params coordinate. Used to key plans and
/// sweeps by "Chinchilla-equivalent model size".
double loss_for_chinchilla_params(double params, const Coefficients& c);

}  // namespace scaleplan
