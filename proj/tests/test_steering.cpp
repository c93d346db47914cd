#include <doctest.h>

#include <random>

#include "steer/rng.hpp"
#include "steer/steering.hpp"
#include "test_helpers.hpp"

using namespace steer;
using namespace steer_test;

namespace {

Assemblage singlet_pauli() {
  return assemble(werner_qubit(1.0), 2, 2, pauli_measurements());
}

bool solved(const WeightResult& r) { return r.status != SolverStatus::failed; }

LhsModel random_model(int dim_b, int m, int n, std::mt19937_64& rng) {
  LhsModel model;
  model.dim_b = dim_b;
  model.strategies = enumerate_strategies(m, n);
  double total = 0.0;
  for (std::int64_t l = 0; l < model.strategies.count; ++l) {
    model.sigma[l] = random_psd(dim_b, rng);
    total += model.sigma[l].trace().real();
  }
  for (auto& [l, s] : model.sigma) s /= total;
  return model;
}

}  // namespace

TEST_CASE("steerable_weight: singlet with Pauli X,Y,Z is maximal") {
  WeightResult r = steerable_weight(singlet_pauli());
  REQUIRE(solved(r));
  CHECK(r.sw == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.duality_gap <= 1e-7);
  // certificate value equals mu_star (strong duality)
  CHECK(std::abs(evaluate_inequality(r.certificate, singlet_pauli()) -
                 r.mu_star) <= 1e-6);
  CHECK(validate_inequality(r.certificate, 1e-7).pass);
}

TEST_CASE("steerable_weight: product states carry no steering") {
  std::mt19937_64 rng(51);
  Cmat rho = tensor(random_density(2, rng), random_density(2, rng));
  WeightResult r = steerable_weight(assemble(rho, 2, 2, pauli_measurements()));
  REQUIRE(solved(r));
  CHECK(r.sw <= 1e-6);
}

TEST_CASE("steerable_weight: Werner p=0.6 with X,Z has an explicit LHS model") {
  const double p = 0.6;
  auto paulis = pauli_measurements();
  std::vector<Measurement> xz = {paulis[0], paulis[2]};
  Assemblage a = assemble(werner_qubit(p), 2, 2, xz);

  // Independent oracle: hidden states with Bloch vectors -p(s0 x + s1 z),
  // valid whenever p*sqrt(2) <= 1. Realizes the assemblage exactly.
  Cmat sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  LhsModel oracle;
  oracle.dim_b = 2;
  oracle.strategies = enumerate_strategies(2, 2);
  for (std::int64_t l = 0; l < 4; ++l) {
    double s0 = oracle.strategies.outcome(l, 0) == 0 ? 1.0 : -1.0;
    double s1 = oracle.strategies.outcome(l, 1) == 0 ? 1.0 : -1.0;
    oracle.sigma[l] =
        (Cmat::Identity(2, 2) - p * (s0 * sx + s1 * sz)) / 8.0;
  }
  validate_lhs_model(oracle);
  CHECK(verify_reproduces(oracle, a, 1e-12).pass);

  WeightResult r = steerable_weight(a);
  REQUIRE(solved(r));
  CHECK(r.sw <= 1e-6);
  CHECK(is_unsteerable(a));
}

TEST_CASE("steerable_weight: Werner p=0.6 with Pauli X,Y,Z is steerable") {
  Assemblage a = assemble(werner_qubit(0.6), 2, 2, pauli_measurements());
  WeightResult r = steerable_weight(a);
  REQUIRE(solved(r));
  CHECK(r.sw > 1e-3);
  CHECK_FALSE(is_unsteerable(a));
}

TEST_CASE("steerable_weight: result structure invariants") {
  Assemblage a = assemble(werner_qubit(0.8), 2, 2, pauli_measurements());
  WeightResult r = steerable_weight(a);
  REQUIRE(solved(r));
  CHECK(r.sw >= 0.0);
  CHECK(r.sw <= 1.0);
  CHECK(r.mu_star == doctest::Approx(1.0 - r.sw));
  // lhs_part traces sum to mu_star and realize() is dominated blockwise
  CHECK(r.lhs_part.total_weight() == doctest::Approx(r.mu_star).epsilon(1e-6));
  validate_lhs_model(r.lhs_part, 1e-8, false);
  Assemblage u = realize(r.lhs_part);
  for (int x = 0; x < a.inputs; ++x)
    for (int out = 0; out < a.outcomes; ++out)
      CHECK(min_eigenvalue(a.block(out, x) - u.block(out, x)) > -1e-6);
  // certificate consistency
  CHECK(std::abs(evaluate_inequality(r.certificate, a) - r.mu_star) <= 1e-6);
}

TEST_CASE("is_unsteerable on realized models; MUB d=3 case") {
  std::mt19937_64 rng(52);
  LhsModel model = random_model(2, 2, 2, rng);
  CHECK(is_unsteerable(realize(model)));

  Assemblage mub = assemble(werner_d(3, 1.0), 3, 3, mub_measurements(3));
  CHECK(is_unsteerable(mub));
}

TEST_CASE("validate_inequality: identity family and scaling") {
  SteeringInequality id = make_inequality(2, 2, 2);
  for (auto& f : id.F) f = Cmat::Identity(2, 2);
  InequalityReport rep = validate_inequality(id);
  CHECK(rep.pass);
  CHECK(rep.min_eig_elements == doctest::Approx(1.0));
  CHECK(rep.min_eig_dual_constraints == doctest::Approx(1.0));  // 2I - I

  for (auto& f : id.F) f *= 0.4;  // sum per strategy now 0.8 I < I
  CHECK_FALSE(validate_inequality(id).pass);
}

TEST_CASE("evaluate_inequality lower-bounds unity on unsteerable input") {
  std::mt19937_64 rng(53);
  SteeringInequality id = make_inequality(3, 2, 2);
  for (auto& f : id.F) f = Cmat::Identity(3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    LhsModel model = random_model(3, 2, 2, rng);
    CHECK(evaluate_inequality(id, realize(model)) >= 1.0 - 1e-8);
    CHECK(sw_lower_bound(id, realize(model)) == 0.0);
  }
}

TEST_CASE("sw_lower_bound rejects invalid inequalities") {
  SteeringInequality bad = make_inequality(2, 2, 2);
  for (auto& f : bad.F) f = 0.1 * Cmat::Identity(2, 2);
  CHECK_THROWS_AS(sw_lower_bound(bad, singlet_pauli()), std::invalid_argument);
}

TEST_CASE("SW monotone under mixing with unsteerable noise") {
  std::mt19937_64 rng(54);
  Assemblage a = assemble(werner_qubit(0.9), 2, 2,
                          {pauli_measurements()[0], pauli_measurements()[2]});
  Assemblage noise = realize(random_model(2, 2, 2, rng));
  WeightResult base = steerable_weight(a);
  REQUIRE(solved(base));
  for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    Assemblage mixed = a;
    for (std::size_t i = 0; i < mixed.blocks.size(); ++i)
      mixed.blocks[i] = mu * a.blocks[i] + (1.0 - mu) * noise.blocks[i];
    WeightResult r = steerable_weight(mixed);
    REQUIRE(solved(r));
    CHECK(r.sw <= base.sw + 1e-6);
  }
}

TEST_CASE("SW never increases when a measurement is dropped") {
  Assemblage full = assemble(werner_qubit(0.75), 2, 2, pauli_measurements());
  Assemblage sub = make_assemblage(2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int out = 0; out < 2; ++out) sub.block(out, x) = full.block(out, x);
  WeightResult rf = steerable_weight(full);
  WeightResult rs = steerable_weight(sub);
  REQUIRE(solved(rf));
  REQUIRE(solved(rs));
  CHECK(rs.sw <= rf.sw + 1e-6);
}

TEST_CASE("SW invariant under relabeling and unitary conjugation") {
  SeedStream seeds{5};
  auto rng = seeds.derive(0, 0);
  Assemblage a = assemble(werner_qubit(0.8), 2, 2, pauli_measurements());
  WeightResult base = steerable_weight(a);
  REQUIRE(solved(base));

  // swap the outcomes of input 1
  Assemblage relabeled = a;
  std::swap(relabeled.block(0, 1), relabeled.block(1, 1));
  WeightResult rr = steerable_weight(relabeled);
  REQUIRE(solved(rr));
  CHECK(std::abs(rr.sw - base.sw) <= 1e-6);

  // conjugate every block by a fixed unitary
  Cmat u = random_unitary(2, rng);
  Assemblage rotated = a;
  for (auto& b : rotated.blocks) b = u * b * u.adjoint();
  WeightResult ru = steerable_weight(rotated);
  REQUIRE(solved(ru));
  CHECK(std::abs(ru.sw - base.sw) <= 1e-6);
}

TEST_CASE("steerable_weight enforces the strategy cap") {
  Assemblage a = singlet_pauli();
  WeightOptions opts;
  opts.strategy_cap = 4;  // 2^3 = 8 strategies needed
  CHECK_THROWS_AS(steerable_weight(a, opts), std::invalid_argument);
}
