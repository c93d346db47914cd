#include "steer/constructions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steer {

namespace {

constexpr double alpha_margin = 1e-6;

// Unit ket of a rank-1 projector.
Cvec projector_ket(const Cmat& p) {
  EigResult eig = eig_hermitian(p, 1e-9);
  if (std::abs(eig.values(0) - 1.0) > 1e-9 ||
      (eig.values.size() > 1 && std::abs(eig.values(1)) > 1e-9))
    throw std::invalid_argument("expected a rank-1 projector");
  return eig.vectors.col(0);
}

void require_projective(const Measurement& meas, int d) {
  validate_measurement(meas);
  if (meas.dim != d || meas.outcomes() != d)
    throw std::invalid_argument("expected a d-outcome projective measurement");
}

}  // namespace

PureConstruction pure_state_inequality(const SchmidtState& state,
                                       const Measurement& basis0,
                                       const Measurement& basis1) {
  validate_schmidt(state);
  const int d = state.dim();
  if (state.coefficients.size() < 2 || state.coefficients(1) < 1e-12)
    throw std::invalid_argument("pure_state_inequality: state not entangled");
  require_projective(basis0, d);
  require_projective(basis1, d);

  PureConstruction out;
  out.assemblage = make_assemblage(d, 2, d);
  out.meta.conditional_kets.assign(std::size_t(2) * d, Cvec());
  out.meta.probabilities.assign(std::size_t(2) * d, 0.0);

  const Measurement* bases[2] = {&basis0, &basis1};
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < d; ++a) {
      Cvec phi = projector_ket(bases[x]->elements[a]);
      Cvec psi = Cvec::Zero(d);  // sum_i sqrt(p_i) <phi|i> |i>
      for (int i = 0; i < d; ++i)
        psi(i) = state.coefficients(i) * std::conj(phi(i));
      const double p = psi.squaredNorm();
      if (p < 1e-12)
        throw std::invalid_argument(
            "pure_state_inequality: measurement orthogonal to the state");
      psi /= std::sqrt(p);
      out.meta.conditional_kets[std::size_t(x) * d + a] = psi;
      out.meta.probabilities[std::size_t(x) * d + a] = p;
      out.assemblage.block(a, x) = p * psi * psi.adjoint();
    }

  double xi = 0.0;
  for (int a0 = 0; a0 < d; ++a0)
    for (int a1 = 0; a1 < d; ++a1)
      xi = std::max(xi, std::abs(out.meta.conditional_kets[a0]
                                     .dot(out.meta.conditional_kets[d + a1])));
  out.meta.overlap = xi;
  if (xi >= 1.0 - 1e-6)
    throw std::invalid_argument(
        "pure_state_inequality: conditional states nearly parallel");

  const double alpha = (1.0 + alpha_margin) / (1.0 - xi);
  out.inequality = make_inequality(d, 2, d);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < d; ++a) {
      const Cvec& psi = out.meta.conditional_kets[std::size_t(x) * d + a];
      out.inequality.f(a, x) =
          alpha * (Cmat::Identity(d, d) - psi * psi.adjoint());
    }
  return out;
}

std::pair<SteeringInequality, Assemblage> antisymmetric_inequality(
    int d, const std::vector<Measurement>& bases, double min_eig_floor) {
  if (d < 2) throw std::invalid_argument("antisymmetric_inequality: d < 2");
  if (static_cast<int>(bases.size()) != d)
    throw std::invalid_argument("antisymmetric_inequality: need d bases");
  std::vector<Cmat> proj(std::size_t(d) * d);  // index x * d + a
  for (int x = 0; x < d; ++x) {
    require_projective(bases[x], d);
    for (int a = 0; a < d; ++a)
      proj[std::size_t(x) * d + a] = bases[x].elements[a];
  }

  // Spanning condition: every one-vector-per-basis selection must give
  // sum_x P_{a_x|x} with eigenvalues bounded away from zero.
  StrategySet set = enumerate_strategies(d, d);
  double eps = std::numeric_limits<double>::infinity();
  for (std::int64_t lambda = 0; lambda < set.count; ++lambda) {
    Cmat sum = Cmat::Zero(d, d);
    for (int x = 0; x < d; ++x) sum += proj[std::size_t(x) * d + set.outcome(lambda, x)];
    eps = std::min(eps, min_eigenvalue(sum));
  }
  if (eps < min_eig_floor)
    throw std::invalid_argument(
        "antisymmetric_inequality: selected basis vectors do not span");

  const double alpha = (1.0 + alpha_margin) / eps;
  SteeringInequality ineq = make_inequality(d, d, d);
  Assemblage assemblage = make_assemblage(d, d, d);
  const double norm = 1.0 / (double(d) * (d - 1));
  for (int x = 0; x < d; ++x)
    for (int a = 0; a < d; ++a) {
      const Cmat& p = proj[std::size_t(x) * d + a];
      ineq.f(a, x) = alpha * p;
      assemblage.block(a, x) = norm * (Cmat::Identity(d, d) - p);
    }
  return {std::move(ineq), std::move(assemblage)};
}

LhsModel mub3_lhs_table() {
  const Complex w = std::exp(Complex(0, 2.0 * M_PI / 3.0));
  const Complex w2 = w * w;
  struct Row {
    int a[4];
    Complex v[3];
  };
  static const double s = 1.0 / std::sqrt(2.0);
  const Row rows[9] = {
      {{0, 0, 0, 0}, {0, 1, -1}},  {{0, 1, 1, 1}, {0, w2, -1}},
      {{0, 2, 2, 2}, {0, w, -1}},  {{1, 0, 1, 2}, {1, 0, -1}},
      {{1, 1, 2, 0}, {w, 0, -1}},  {{1, 2, 0, 1}, {w2, 0, -1}},
      {{2, 0, 2, 1}, {1, -1, 0}},  {{2, 1, 0, 2}, {w2, -1, 0}},
      {{2, 2, 1, 0}, {w, -1, 0}}};

  LhsModel model;
  model.dim_b = 3;
  model.strategies = enumerate_strategies(4, 3);
  for (const Row& row : rows) {
    std::int64_t lambda = 0;
    for (int x = 3; x >= 0; --x) lambda = lambda * 3 + row.a[x];
    Cvec v(3);
    v << s * row.v[0], s * row.v[1], s * row.v[2];
    model.sigma[lambda] = (1.0 / 9.0) * v * v.adjoint();
  }
  validate_lhs_model(model);
  return model;
}

Cmat erasure_symmetric_extension(int k) {
  if (k < 1) throw std::invalid_argument("erasure_symmetric_extension: k < 1");
  std::int64_t dim_a = 1;
  for (int i = 0; i < k; ++i) dim_a *= 3;
  const std::int64_t dim = dim_a * 2;
  const double s = 1.0 / std::sqrt(2.0);
  Cmat rho = Cmat::Zero(dim, dim);
  for (int i = 0; i < k; ++i) {
    Cvec v = Cvec::Zero(dim);
    // |2...2> on the other Alices, singlet between A_i and B.
    for (auto [ai, b, amp] : {std::tuple<int, int, double>{0, 1, s},
                              std::tuple<int, int, double>{1, 0, -s}}) {
      std::int64_t idx = 0;
      for (int j = 0; j < k; ++j) idx = idx * 3 + (j == i ? ai : 2);
      v(idx * 2 + b) = amp;
    }
    rho += (1.0 / k) * v * v.adjoint();
  }
  return rho;
}

LhsModel erasure_lhs_model(int k,
                           const std::vector<Measurement>& measurements) {
  if (k < 1 || static_cast<int>(measurements.size()) != k)
    throw std::invalid_argument("erasure_lhs_model: need k measurements");
  int n = 0;
  for (const Measurement& m : measurements) {
    validate_measurement(m);
    if (m.dim != 3)
      throw std::invalid_argument("erasure_lhs_model: qutrit POVMs expected");
    n = std::max(n, m.outcomes());
  }

  // Per (x, a): Bob's conditional state from the embedded singlet, and the
  // flag overlap <2|M|2>.
  const Cmat singlet = erasure_state(1.0);
  const Cmat id2 = Cmat::Identity(2, 2);
  std::vector<Cmat> cond(std::size_t(k) * n, Cmat::Zero(2, 2));
  std::vector<double> flag(std::size_t(k) * n, 0.0);
  for (int x = 0; x < k; ++x)
    for (int a = 0; a < measurements[x].outcomes(); ++a) {
      const Cmat& el = measurements[x].elements[a];
      cond[std::size_t(x) * n + a] =
          partial_trace(tensor(el, id2) * singlet, 3, 2, Subsystem::B);
      flag[std::size_t(x) * n + a] = el(2, 2).real();
    }

  LhsModel model;
  model.dim_b = 2;
  model.strategies = enumerate_strategies(k, n);
  for (std::int64_t lambda = 0; lambda < model.strategies.count; ++lambda) {
    bool in_range = true;
    for (int x = 0; x < k; ++x)
      if (model.strategies.outcome(lambda, x) >= measurements[x].outcomes())
        in_range = false;
    if (!in_range) continue;  // padded outcome string, weight zero
    Cmat sigma = Cmat::Zero(2, 2);
    for (int i = 0; i < k; ++i) {
      double weight = 1.0 / k;
      for (int j = 0; j < k; ++j)
        if (j != i)
          weight *= flag[std::size_t(j) * n + model.strategies.outcome(lambda, j)];
      sigma += weight * cond[std::size_t(i) * n + model.strategies.outcome(lambda, i)];
    }
    if (sigma.norm() > 0.0) model.sigma[lambda] = sigma;
  }
  return model;
}

std::pair<Assemblage, SteeringInequality> erasure_bob_side(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erasure_bob_side: p");
  const double s = 1.0 / std::sqrt(2.0);
  Cvec up_x(3), down_x(3), up_z(3), down_z(3), flag(3);
  up_x << s, s, 0;
  down_x << s, -s, 0;
  up_z << 1, 0, 0;
  down_z << 0, 1, 0;
  flag << 0, 0, 1;
  auto proj = [](const Cvec& v) { return Cmat(v * v.adjoint()); };

  Assemblage assemblage = make_assemblage(3, 2, 2);
  assemblage.block(0, 0) = 0.5 * p * proj(down_x) + 0.5 * (1 - p) * proj(flag);
  assemblage.block(1, 0) = 0.5 * p * proj(up_x) + 0.5 * (1 - p) * proj(flag);
  assemblage.block(0, 1) = 0.5 * p * proj(down_z) + 0.5 * (1 - p) * proj(flag);
  assemblage.block(1, 1) = 0.5 * p * proj(up_z) + 0.5 * (1 - p) * proj(flag);

  const double alpha = 2.0 + std::sqrt(2.0);
  SteeringInequality ineq = make_inequality(3, 2, 2);
  ineq.f(0, 0) = alpha * proj(up_x) + 0.5 * proj(flag);
  ineq.f(1, 0) = alpha * proj(down_x) + 0.5 * proj(flag);
  ineq.f(0, 1) = alpha * proj(up_z) + 0.5 * proj(flag);
  ineq.f(1, 1) = alpha * proj(down_z) + 0.5 * proj(flag);
  return {std::move(assemblage), std::move(ineq)};
}

}  // namespace steer
