#include "steer/steering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steer {

SteeringInequality make_inequality(int dim_b, int m, int n) {
  SteeringInequality ineq;
  ineq.dim_b = dim_b;
  ineq.m = m;
  ineq.n = n;
  ineq.F.assign(std::size_t(m) * n, Cmat::Zero(dim_b, dim_b));
  return ineq;
}

InequalityReport validate_inequality(const SteeringInequality& ineq,
                                     double tol) {
  if (ineq.dim_b <= 0 || ineq.m <= 0 || ineq.n <= 0 ||
      ineq.F.size() != std::size_t(ineq.m) * ineq.n)
    throw std::invalid_argument("inequality: bad shape");
  InequalityReport report;
  report.min_eig_elements = std::numeric_limits<double>::infinity();
  for (const Cmat& f : ineq.F) {
    if (!is_hermitian(f, 1e2 * tol_herm))
      throw std::invalid_argument("inequality: element not Hermitian");
    report.min_eig_elements =
        std::min(report.min_eig_elements, min_eigenvalue(f));
  }
  StrategySet set = enumerate_strategies(ineq.m, ineq.n);
  report.min_eig_dual_constraints = std::numeric_limits<double>::infinity();
  const Cmat id = Cmat::Identity(ineq.dim_b, ineq.dim_b);
  for (std::int64_t lambda = 0; lambda < set.count; ++lambda) {
    Cmat sum = -id;
    for (int x = 0; x < ineq.m; ++x) sum += ineq.f(set.outcome(lambda, x), x);
    report.min_eig_dual_constraints =
        std::min(report.min_eig_dual_constraints, min_eigenvalue(sum));
  }
  report.pass = report.min_eig_elements >= -tol &&
                report.min_eig_dual_constraints >= -tol;
  return report;
}

double evaluate_inequality(const SteeringInequality& ineq,
                           const Assemblage& assemblage) {
  if (ineq.dim_b != assemblage.dim_b || ineq.m != assemblage.inputs ||
      ineq.n != assemblage.outcomes)
    throw std::invalid_argument("evaluate_inequality: shape mismatch");
  double value = 0.0;
  for (int x = 0; x < ineq.m; ++x)
    for (int a = 0; a < ineq.n; ++a)
      value += (ineq.f(a, x) * assemblage.block(a, x)).trace().real();
  return value;
}

double sw_lower_bound(const SteeringInequality& ineq,
                      const Assemblage& assemblage) {
  if (!validate_inequality(ineq).pass)
    throw std::invalid_argument("sw_lower_bound: invalid inequality");
  return std::max(0.0, 1.0 - evaluate_inequality(ineq, assemblage));
}

WeightResult steerable_weight(const Assemblage& assemblage,
                              const WeightOptions& opts) {
  validate_assemblage(assemblage);
  const int db = assemblage.dim_b;
  const int m = assemblage.inputs;
  const int n = assemblage.outcomes;
  StrategySet set = enumerate_strategies(m, n, opts.strategy_cap);
  const std::int64_t nlam = set.count;
  const auto basis = hermitian_basis(db);
  const int nb = static_cast<int>(basis.size());
  const int ed = 2 * db;  // embedded block dimension

  std::vector<Rmat> ebasis;
  ebasis.reserve(nb);
  for (const Cmat& e : basis) ebasis.push_back(embed_real(e));

  // Inequality-form SDP over the F coefficients:
  //   max  -tr sum F sigma   s.t.  F_{a|x} >= 0,
  //                                sum_x F_{a_x(lambda)|x} - I >= 0.
  // Its conic dual carries the sigma_lambda directly.
  SdpProblem prob;
  const int nfb = m * n;  // one slack block per inequality element
  prob.block_dims.assign(std::size_t(nfb) + nlam, ed);
  prob.objective.assign(std::size_t(nfb) + nlam, Rmat::Zero(ed, ed));
  for (std::int64_t l = 0; l < nlam; ++l)
    prob.objective[nfb + l] = -Rmat::Identity(ed, ed);

  prob.rhs = Rvec::Zero(std::size_t(nfb) * nb);
  prob.constraints.resize(std::size_t(nfb) * nb);

  // Strategies grouped by (a, x) so each constraint lists its lambda terms.
  std::vector<std::vector<std::int64_t>> compatible;
  compatible.resize(std::size_t(nfb));
  for (std::int64_t l = 0; l < nlam; ++l)
    for (int x = 0; x < m; ++x)
      compatible[std::size_t(x) * n + set.outcome(l, x)].push_back(l);

  for (int x = 0; x < m; ++x)
    for (int a = 0; a < n; ++a) {
      const int fb = x * n + a;
      const Rmat esig = embed_real(assemblage.block(a, x));
      for (int al = 0; al < nb; ++al) {
        const std::size_t ci = std::size_t(fb) * nb + al;
        prob.rhs(ci) = -ebasis[al].cwiseProduct(esig).sum();
        auto& terms = prob.constraints[ci].terms;
        terms.reserve(compatible[fb].size() + 1);
        terms.push_back({fb, -ebasis[al]});
        for (std::int64_t l : compatible[fb])
          terms.push_back({static_cast<int>(nfb + l), -ebasis[al]});
      }
    }

  SolverOptions sopts = opts.solver;
  SdpSolution sdp = solve_sdp(prob, sopts);

  WeightResult result;
  result.status = sdp.status;
  if (sdp.status == SolverStatus::failed) {
    result.mu_star = std::numeric_limits<double>::quiet_NaN();
    result.sw = std::numeric_limits<double>::quiet_NaN();
    result.duality_gap = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  result.lhs_part.dim_b = db;
  result.lhs_part.strategies = set;
  double mu = 0.0;
  for (std::int64_t l = 0; l < nlam; ++l) {
    Cmat sig = extract_complex(sdp.x_blocks[nfb + l]);
    mu += sig.trace().real();
    result.lhs_part.sigma[l] = std::move(sig);
  }
  result.mu_star = std::min(1.0, std::max(0.0, mu));
  result.sw = 1.0 - result.mu_star;
  result.duality_gap = 0.5 * std::abs(sdp.gap());
  if (result.status == SolverStatus::optimal &&
      result.duality_gap > opts.gap_tol)
    result.status = SolverStatus::near_optimal;

  result.certificate = make_inequality(db, m, n);
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < n; ++a) {
      Cmat f = extract_complex(sdp.z_blocks[std::size_t(x) * n + a]);
      if (min_eigenvalue(f) < -tol_psd)
        throw std::runtime_error(
            "steerable_weight: dual certificate block is not PSD");
      result.certificate.f(a, x) = std::move(f);
    }
  return result;
}

bool is_unsteerable(const Assemblage& assemblage, double tol,
                    const WeightOptions& opts) {
  WeightResult r = steerable_weight(assemblage, opts);
  if (r.status == SolverStatus::failed)
    throw std::runtime_error("is_unsteerable: solver failed");
  return r.sw <= tol;
}

}  // namespace steer
