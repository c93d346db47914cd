#ifndef STEER_LHS_HPP
#define STEER_LHS_HPP

#include <cstdint>
#include <map>

#include "steer/scenario.hpp"

namespace steer {

/// The n^m extremal deterministic response functions D_lambda(a|x).
/// lambda is little-endian base-n: digit x of lambda is the outcome for
/// input x. SDP constraint layout and file formats depend on this indexing.
struct StrategySet {
  int inputs = 0;    // m
  int outcomes = 0;  // n
  std::int64_t count = 0;

  int outcome(std::int64_t lambda, int x) const {
    for (int i = 0; i < x; ++i) lambda /= outcomes;
    return static_cast<int>(lambda % outcomes);
  }
  bool responds(std::int64_t lambda, int a, int x) const {
    return outcome(lambda, x) == a;
  }
};

inline constexpr std::int64_t default_strategy_cap = std::int64_t(1) << 16;

/// Throws when n^m exceeds the cap.
StrategySet enumerate_strategies(int m, int n,
                                 std::int64_t cap = default_strategy_cap);

/// Explicit local hidden state model: sub-normalized sigma_lambda with
/// p(lambda) = tr sigma_lambda. Stored sparsely; absent keys are zero.
struct LhsModel {
  int dim_b = 0;
  StrategySet strategies;
  std::map<std::int64_t, Cmat> sigma;

  double total_weight() const;
};

/// PSD blocks; when require_normalized, sum of traces must be 1.
void validate_lhs_model(const LhsModel& model, double tol = tol_psd,
                        bool require_normalized = true);

/// sigma_{a|x} = sum_lambda D_lambda(a|x) sigma_lambda.
Assemblage realize(const LhsModel& model);

struct ReproduceReport {
  double max_block_error = 0.0;
  bool pass = false;
};

/// Frobenius distance between realize(model) and target, blockwise max.
ReproduceReport verify_reproduces(const LhsModel& model,
                                  const Assemblage& target, double tol);

}  // namespace steer

#endif
