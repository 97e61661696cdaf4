#pragma once

#include <vector>

#include "scaleplan/cost_model.hpp"

namespace scaleplan {

// Frozen reference configurations used by the `tables` command and the
// acceptance suite. Values are stored exactly as printed in the published
// comparison tables; the two cells whose printed magnitudes are inconsistent
// with their own rows carry a correction plus a note.

struct ComputeReferenceRow {
  double inference_tokens;
  double printed_loss;  // two-decimal published loss
  double chin_params;
  double chin_tokens;
  double chin_total_flops;
  double opt_params;
  double opt_tokens;
  double opt_total_flops;
  double flop_reduction;
  const char* note;  // typo annotation, or nullptr
};

struct CostReferenceRow {
  double requests;
  double printed_loss;
  double chin_params;
  double chin_tokens;
  double chin_total_cost;
  double opt_params;
  double opt_tokens;
  double opt_total_cost;
  double cost_savings;
  const char* note;
};

const std::vector<ComputeReferenceRow>& compute_reference_rows();
const std::vector<CostReferenceRow>& cost_reference_rows();

struct ComputeRowRegen {
  const ComputeReferenceRow* ref;
  double loss;  // resolved from the reference Chinchilla size, full precision
  ModelConfig chin;
  double chin_total_flops;
  ModelConfig opt;
  double opt_total_flops;
  double flop_reduction;
};

struct CostRowRegen {
  const CostReferenceRow* ref;
  double loss;
  ModelConfig chin;
  double chin_total_cost;
  ModelConfig opt;
  double opt_total_cost;
  double cost_savings;
};

/// Re-derives every reference row from first principles: the row loss comes
/// from the reference Chinchilla size, then the inference-adjusted solve runs
/// at the row's demand.
std::vector<ComputeRowRegen> regenerate_compute_rows(const Coefficients& c);
std::vector<CostRowRegen> regenerate_cost_rows(const Coefficients& c,
                                               const HardwareProfile& hw,
                                               const MfuProfile& mfu);

}  // namespace scaleplan
