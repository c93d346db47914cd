#include "steer/sdp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace steer {

namespace {

struct ActiveTerm {
  int constraint;
  const Rmat* coeff;
};

double block_dot(const Rmat& a, const Rmat& b) {
  return a.cwiseProduct(b).sum();
}

// Largest alpha <= 1 with S + alpha * dS >= 0, given the Cholesky factor of S.
double max_step(const Eigen::LLT<Rmat>& llt, const Rmat& ds, double fraction) {
  Rmat w = llt.matrixL().solve(ds);
  w = llt.matrixL().solve(w.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Rmat> es(0.5 * (w + w.transpose()),
                                         Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return 1.0;
  return std::min(1.0, -fraction / lmin);
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& opts) {
  const int nb = static_cast<int>(problem.block_dims.size());
  const int nc = static_cast<int>(problem.constraints.size());
  if (static_cast<int>(problem.objective.size()) != nb ||
      problem.rhs.size() != nc)
    throw std::invalid_argument("solve_sdp: inconsistent problem data");

  // Per-block lists of the constraints touching that block.
  std::vector<std::vector<ActiveTerm>> active(nb);
  for (int i = 0; i < nc; ++i)
    for (const SdpTerm& t : problem.constraints[i].terms) {
      if (t.block < 0 || t.block >= nb ||
          t.coeff.rows() != problem.block_dims[t.block])
        throw std::invalid_argument("solve_sdp: bad constraint term");
      active[t.block].push_back({i, &t.coeff});
    }

  double n_tot = 0.0;
  for (int d : problem.block_dims) n_tot += d;

  const double b_norm = nc > 0 ? problem.rhs.cwiseAbs().maxCoeff() : 0.0;
  double c_norm = 0.0;
  for (const Rmat& c : problem.objective)
    c_norm = std::max(c_norm, c.size() ? c.cwiseAbs().maxCoeff() : 0.0);

  SdpSolution sol;
  sol.y = Rvec::Zero(nc);
  const double xi = opts.init_scale * std::max(1.0, b_norm);
  const double zeta = opts.init_scale * std::max(1.0, c_norm);
  for (int b = 0; b < nb; ++b) {
    const int d = problem.block_dims[b];
    sol.x_blocks.push_back(xi * Rmat::Identity(d, d));
    sol.z_blocks.push_back(zeta * Rmat::Identity(d, d));
  }

  auto apply_A = [&](const std::vector<Rmat>& x) {
    Rvec r = Rvec::Zero(nc);
    for (int i = 0; i < nc; ++i)
      for (const SdpTerm& t : problem.constraints[i].terms)
        r(i) += block_dot(t.coeff, x[t.block]);
    return r;
  };
  auto apply_At = [&](const Rvec& y, std::vector<Rmat>& out) {
    for (int b = 0; b < nb; ++b)
      out[b].setZero(problem.block_dims[b], problem.block_dims[b]);
    for (int i = 0; i < nc; ++i)
      for (const SdpTerm& t : problem.constraints[i].terms)
        out[t.block] += y(i) * t.coeff;
  };

  std::vector<Rmat> aty(nb), rd(nb), rc(nb), dx(nb), dz(nb), dx_aff(nb),
      dz_aff(nb);
  std::vector<Eigen::LLT<Rmat>> x_llt(nb), z_llt(nb);
  Rmat schur(nc, nc);
  Eigen::LDLT<Rmat> schur_ldlt;

  double best_quality = std::numeric_limits<double>::infinity();
  SdpSolution best = sol;
  int stall = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    Rvec rp = problem.rhs - apply_A(sol.x_blocks);
    apply_At(sol.y, aty);
    double dinf = 0.0;
    for (int b = 0; b < nb; ++b) {
      rd[b] = problem.objective[b] - aty[b] - sol.z_blocks[b];
      if (rd[b].size()) dinf = std::max(dinf, rd[b].cwiseAbs().maxCoeff());
    }
    double mu = 0.0;
    for (int b = 0; b < nb; ++b)
      mu += block_dot(sol.x_blocks[b], sol.z_blocks[b]);
    mu /= n_tot;

    sol.primal_objective = 0.0;
    for (int b = 0; b < nb; ++b)
      sol.primal_objective += block_dot(problem.objective[b], sol.x_blocks[b]);
    sol.dual_objective = problem.rhs.dot(sol.y);
    sol.primal_infeasibility =
        (nc > 0 ? rp.cwiseAbs().maxCoeff() : 0.0) / (1.0 + b_norm);
    sol.dual_infeasibility = dinf / (1.0 + c_norm);
    sol.iterations = iter;

    const double relgap =
        std::abs(sol.gap()) /
        (1.0 + std::max(std::abs(sol.primal_objective),
                        std::abs(sol.dual_objective)));
    if (opts.verbose)
      std::fprintf(stderr, "it %3d  mu %.3e  gap %.3e  pinf %.3e  dinf %.3e\n",
                   iter, mu, relgap, sol.primal_infeasibility,
                   sol.dual_infeasibility);

    const double quality =
        std::max({relgap, sol.primal_infeasibility, sol.dual_infeasibility});
    if (quality < 0.9 * best_quality) {
      best_quality = quality;
      best = sol;
      stall = 0;
    } else if (++stall >= 30) {
      break;  // numerical floor reached
    }
    if (relgap <= opts.tol_gap && sol.primal_infeasibility <= opts.tol_feas &&
        sol.dual_infeasibility <= opts.tol_feas) {
      sol.status = SolverStatus::optimal;
      return sol;
    }

    for (int b = 0; b < nb; ++b) {
      x_llt[b].compute(sol.x_blocks[b]);
      z_llt[b].compute(sol.z_blocks[b]);
      if (x_llt[b].info() != Eigen::Success ||
          z_llt[b].info() != Eigen::Success) {
        best.status = best_quality < 1e-6 ? SolverStatus::near_optimal
                                          : SolverStatus::failed;
        return best;
      }
    }

    // Schur complement M_ij = tr(A_i sym(Z^-1 A_j X)), assembled blockwise.
    schur.setZero();
    for (int b = 0; b < nb; ++b) {
      const auto& acts = active[b];
      if (acts.empty()) continue;
      std::vector<Rmat> t(acts.size());
      for (std::size_t j = 0; j < acts.size(); ++j)
        t[j] = z_llt[b].solve(*acts[j].coeff * sol.x_blocks[b]);
      for (std::size_t i = 0; i < acts.size(); ++i)
        for (std::size_t j = 0; j < acts.size(); ++j)
          schur(acts[i].constraint, acts[j].constraint) +=
              block_dot(*acts[i].coeff, t[j]);
    }
    schur = 0.5 * (schur + schur.transpose()).eval();
    schur_ldlt.compute(schur);
    if (schur_ldlt.info() != Eigen::Success) {
      schur += 1e-12 * schur.diagonal().maxCoeff() *
               Rmat::Identity(nc, nc);
      schur_ldlt.compute(schur);
    }

    // Given rc, solve the Newton system for (dy, dz, dx).
    auto solve_direction = [&](const std::vector<Rmat>& rc_in) {
      Rvec h = Rvec::Zero(nc);
      std::vector<Rmat> g(nb);
      for (int b = 0; b < nb; ++b) {
        if (active[b].empty()) continue;
        Rmat num = rc_in[b] - sol.x_blocks[b] * rd[b];
        Rmat gt = z_llt[b].solve(num.transpose());
        g[b] = 0.5 * (gt.transpose() + gt);  // sym((rc - X rd) Z^-1)
        for (const ActiveTerm& at : active[b])
          h(at.constraint) += block_dot(*at.coeff, g[b]);
      }
      Rvec rhs = rp - h;
      Rvec dy = schur_ldlt.solve(rhs);
      // Iterative refinement; the Schur complement gets severely
      // ill-conditioned near the boundary of the cone.
      for (int pass = 0; pass < 2; ++pass)
        dy += schur_ldlt.solve(rhs - schur * dy);
      apply_At(dy, dz);
      for (int b = 0; b < nb; ++b) {
        dz[b] = rd[b] - dz[b];
        Rmat num = rc_in[b] - sol.x_blocks[b] * dz[b];
        Rmat dxt = z_llt[b].solve(num.transpose());
        dx[b] = 0.5 * (dxt.transpose() + dxt);
      }
      return dy;
    };

    // Predictor (affine scaling).
    for (int b = 0; b < nb; ++b)
      rc[b] = -sol.x_blocks[b] * sol.z_blocks[b];
    solve_direction(rc);
    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(x_llt[b], dx[b], opts.step_fraction));
      ad = std::min(ad, max_step(z_llt[b], dz[b], opts.step_fraction));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      mu_aff += block_dot(sol.x_blocks[b] + ap * dx[b],
                          sol.z_blocks[b] + ad * dz[b]);
    mu_aff /= n_tot;
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3);
    sigma = std::min(1.0, std::max(sigma, 1e-10));

    dx_aff = dx;
    dz_aff = dz;

    // Corrector.
    for (int b = 0; b < nb; ++b) {
      const int d = problem.block_dims[b];
      rc[b] = sigma * mu * Rmat::Identity(d, d) -
              sol.x_blocks[b] * sol.z_blocks[b] - dx_aff[b] * dz_aff[b];
    }
    Rvec dy = solve_direction(rc);

    ap = 1.0;
    ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(x_llt[b], dx[b], opts.step_fraction));
      ad = std::min(ad, max_step(z_llt[b], dz[b], opts.step_fraction));
    }
    for (int b = 0; b < nb; ++b) {
      sol.x_blocks[b] += ap * dx[b];
      sol.z_blocks[b] += ad * dz[b];
      sol.x_blocks[b] = 0.5 * (sol.x_blocks[b] + sol.x_blocks[b].transpose()).eval();
      sol.z_blocks[b] = 0.5 * (sol.z_blocks[b] + sol.z_blocks[b].transpose()).eval();
    }
    sol.y += ad * dy;
  }

  best.status = best_quality <= 1e-6 ? SolverStatus::near_optimal
                                     : SolverStatus::failed;
  return best;
}

}  // namespace steer
