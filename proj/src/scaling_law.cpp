#include "scaleplan/scaling_law.hpp"

#include <cmath>
#include <string>

#include "scaleplan/errors.hpp"

namespace scaleplan {

ModelConfig::ModelConfig(double params_, double train_tokens_)
    : params(params_), train_tokens(train_tokens_) {
  if (!std::isfinite(params) || !(params > 0))
    throw ValidationError("params must be finite and > 0");
  if (!std::isfinite(train_tokens) || !(train_tokens > 0))
    throw ValidationError("train_tokens must be finite and > 0");
}

double loss(const ModelConfig& cfg, const Coefficients& c) {
  return c.E + c.A * std::pow(cfg.params, -c.alpha) +
         c.B * std::pow(cfg.train_tokens, -c.beta);
}

double tokens_for_loss(double params, double target_loss, const Coefficients& c) {
  if (!std::isfinite(params) || !(params > 0))
    throw ValidationError("params must be finite and > 0");
  const double gap = target_loss - c.E - c.A * std::pow(params, -c.alpha);
  if (!(gap > 0))
    throw UnachievableLoss("loss " + std::to_string(target_loss) +
                           " is not reachable at this size (data term would need to be <= 0)");
  return std::pow(c.B / gap, 1.0 / c.beta);
}

double params_for_loss(double train_tokens, double target_loss, const Coefficients& c) {
  if (!std::isfinite(train_tokens) || !(train_tokens > 0))
    throw ValidationError("train_tokens must be finite and > 0");
  const double gap = target_loss - c.E - c.B * std::pow(train_tokens, -c.beta);
  if (!(gap > 0))
    throw UnachievableLoss("loss " + std::to_string(target_loss) +
                           " is not reachable at this token budget");
  return std::pow(c.A / gap, 1.0 / c.alpha);
}

FlopAccount flop_account(const ModelConfig& cfg, double inference_tokens) {
  if (!std::isfinite(inference_tokens) || inference_tokens < 0)
    throw ValidationError("inference_tokens must be finite and >= 0");
  FlopAccount account{};
  account.train_flops = 6.0 * cfg.params * cfg.train_tokens;
  account.inference_flops = 2.0 * cfg.params * inference_tokens;
  account.total_flops = account.train_flops + account.inference_flops;
  return account;
}

ModelConfig chinchilla_baseline(double target_loss, const Coefficients& c) {
  if (!(target_loss > c.E))
    throw UnachievableLoss("loss " + std::to_string(target_loss) +
                           " is at or below the asymptote E = " + std::to_string(c.E));
  // Stationarity alpha*A*N^-alpha = beta*B*D^-beta plus the loss constraint.
  const double tokens =
      std::pow(c.B * (c.alpha + c.beta) / (c.alpha * (target_loss - c.E)), 1.0 / c.beta);
  return ModelConfig(params_for_loss(tokens, target_loss, c), tokens);
}

double loss_for_chinchilla_params(double params, const Coefficients& c) {
  if (!std::isfinite(params) || !(params > 0))
    throw ValidationError("params must be finite and > 0");
  // On the training-compute-optimal contour the data term is alpha/beta times
  // the params term.
  return c.E + c.A * std::pow(params, -c.alpha) * (c.alpha + c.beta) / c.beta;
}

}  // namespace scaleplan
