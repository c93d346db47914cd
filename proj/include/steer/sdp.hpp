#ifndef STEER_SDP_HPP
#define STEER_SDP_HPP

#include <vector>

#include "steer/herm.hpp"

namespace steer {

/// One addend of a constraint matrix: a dense symmetric coefficient on a
/// single diagonal block. Blocks not listed are zero.
struct SdpTerm {
  int block = 0;
  Rmat coeff;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;
};

/// Block-diagonal real symmetric SDP in the standard pair
///   (P)  min  sum_b tr(C_b X_b)   s.t.  tr(A_i X) = b_i,  X >= 0
///   (D)  max  b^T y               s.t.  Z = C - sum_i y_i A_i >= 0
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<Rmat> objective;  // C_b, one symmetric matrix per block
  std::vector<SdpConstraint> constraints;
  Rvec rhs;  // b
};

enum class SolverStatus { optimal, near_optimal, failed };

struct SdpSolution {
  std::vector<Rmat> x_blocks;
  Rvec y;
  std::vector<Rmat> z_blocks;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  SolverStatus status = SolverStatus::failed;

  double gap() const { return primal_objective - dual_objective; }
};

struct SolverOptions {
  double tol_gap = 1e-8;   // relative duality gap
  double tol_feas = 1e-9;  // primal/dual infeasibility
  int max_iterations = 100;
  double step_fraction = 0.98;
  double init_scale = 10.0;
  bool verbose = false;
};

/// Infeasible-start Mehrotra predictor-corrector with the HKM direction.
/// Feasibility of the returned point is reported, never assumed; callers
/// must check status.
SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& opts = {});

}  // namespace steer

#endif
