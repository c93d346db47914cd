#include "steer/lhs.hpp"

#include <cmath>
#include <stdexcept>

namespace steer {

StrategySet enumerate_strategies(int m, int n, std::int64_t cap) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("strategies: m, n > 0");
  std::int64_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= n;
    if (count > cap) throw std::invalid_argument("strategies: n^m exceeds cap");
  }
  return StrategySet{m, n, count};
}

double LhsModel::total_weight() const {
  double w = 0.0;
  for (const auto& [lambda, s] : sigma) w += s.trace().real();
  return w;
}

void validate_lhs_model(const LhsModel& model, double tol,
                        bool require_normalized) {
  if (model.dim_b <= 0) throw std::invalid_argument("lhs model: dim_b");
  for (const auto& [lambda, s] : model.sigma) {
    if (lambda < 0 || lambda >= model.strategies.count)
      throw std::invalid_argument("lhs model: lambda out of range");
    if (s.rows() != model.dim_b || s.cols() != model.dim_b)
      throw std::invalid_argument("lhs model: sigma dimension");
    if (!is_hermitian(s, 1e2 * tol_herm) || !is_psd(s, tol))
      throw std::invalid_argument("lhs model: sigma not PSD");
  }
  if (require_normalized && std::abs(model.total_weight() - 1.0) > 1e-10)
    throw std::invalid_argument("lhs model: traces do not sum to 1");
}

Assemblage realize(const LhsModel& model) {
  const auto& set = model.strategies;
  Assemblage out = make_assemblage(model.dim_b, set.inputs, set.outcomes);
  for (const auto& [lambda, s] : model.sigma)
    for (int x = 0; x < set.inputs; ++x)
      out.block(set.outcome(lambda, x), x) += s;
  return out;
}

ReproduceReport verify_reproduces(const LhsModel& model,
                                  const Assemblage& target, double tol) {
  Assemblage got = realize(model);
  if (got.dim_b != target.dim_b || got.inputs != target.inputs ||
      got.outcomes != target.outcomes)
    throw std::invalid_argument("verify_reproduces: shape mismatch");
  ReproduceReport report;
  for (int x = 0; x < target.inputs; ++x)
    for (int a = 0; a < target.outcomes; ++a)
      report.max_block_error = std::max(
          report.max_block_error, (got.block(a, x) - target.block(a, x)).norm());
  report.pass = report.max_block_error <= tol;
  return report;
}

}  // namespace steer
