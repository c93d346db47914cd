#ifndef STEER_STEERING_HPP
#define STEER_STEERING_HPP

#include "steer/lhs.hpp"
#include "steer/sdp.hpp"

namespace steer {

/// Linear steering inequality {F_{a|x}}: PSD elements with
/// sum_{ax} D_lambda(a|x) F_{a|x} >= I for every deterministic strategy.
/// Any valid inequality takes value >= 1 on unsteerable assemblages.
struct SteeringInequality {
  int dim_b = 0;
  int m = 0;
  int n = 0;
  std::vector<Cmat> F;  // index x * n + a

  const Cmat& f(int a, int x) const { return F[std::size_t(x) * n + a]; }
  Cmat& f(int a, int x) { return F[std::size_t(x) * n + a]; }
};

SteeringInequality make_inequality(int dim_b, int m, int n);

struct InequalityReport {
  double min_eig_elements = 0.0;
  double min_eig_dual_constraints = 0.0;
  bool pass = false;
};

InequalityReport validate_inequality(const SteeringInequality& ineq,
                                     double tol = tol_psd);

/// tr sum_{ax} F_{a|x} sigma_{a|x}.
double evaluate_inequality(const SteeringInequality& ineq,
                           const Assemblage& assemblage);

/// max(0, 1 - value); a certified lower bound on the steerable weight.
/// Throws when the inequality fails validation.
double sw_lower_bound(const SteeringInequality& ineq,
                      const Assemblage& assemblage);

struct WeightOptions {
  double gap_tol = 1e-7;
  std::int64_t strategy_cap = default_strategy_cap;
  SolverOptions solver;
};

struct WeightResult {
  double mu_star = 0.0;  // weight of the unsteerable part
  double sw = 0.0;       // 1 - mu_star
  LhsModel lhs_part;     // optimal sub-normalized {sigma_lambda}, traces sum to mu_star
  SteeringInequality certificate;  // optimal inequality from the dual
  double duality_gap = 0.0;
  SolverStatus status = SolverStatus::failed;
};

/// Steerable weight SDP: maximize tr sum_lambda sigma_lambda subject to
/// sigma_{a|x} - sum_lambda D_lambda(a|x) sigma_lambda >= 0, sigma_lambda >= 0.
/// Solved through the Hermitian-to-real embedding on the inequality side, so
/// the Schur system stays at m*n*dim_b^2 variables regardless of n^m.
WeightResult steerable_weight(const Assemblage& assemblage,
                              const WeightOptions& opts = {});

/// Membership in the unsteerable set, implemented as SW <= tol.
bool is_unsteerable(const Assemblage& assemblage, double tol = 1e-6,
                    const WeightOptions& opts = {});

}  // namespace steer

#endif
