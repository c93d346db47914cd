// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "steer/constructions.hpp"
#include "steer/rng.hpp"
#include "steer/steering.hpp"

using namespace steer;

namespace {

int failures = 0;

void line(int criterion, const char* what, bool ok) {
  std::printf("criterion %2d: %-58s %s\n", criterion, what,
              ok ? "PASS" : "FAIL");
  if (!ok) ++failures;
  std::fflush(stdout);
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

// Every weight computed for criteria 1-7 feeds the strong-duality check.
double worst_gap = 0.0;
double worst_cert_error = 0.0;
bool any_failed_solve = false;

WeightResult weigh_tracked(const Assemblage& a) {
  WeightResult r = steerable_weight(a);
  if (r.status == SolverStatus::failed) {
    any_failed_solve = true;
    return r;
  }
  worst_gap = std::max(worst_gap, r.duality_gap);
  worst_cert_error = std::max(
      worst_cert_error,
      std::abs(evaluate_inequality(r.certificate, a) - r.mu_star));
  return r;
}

double werner_pauli_sw(double p) {
  WeightResult r =
      weigh_tracked(assemble(werner_qubit(p), 2, 2, pauli_measurements()));
  return r.status == SolverStatus::failed ? -1.0 : r.sw;
}

Cmat random_psd(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Cmat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a * a.adjoint();
}

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

Measurement random_povm(int d, int outcomes, std::mt19937_64& rng) {
  std::vector<Cmat> g(outcomes);
  Cmat total = Cmat::Zero(d, d);
  for (Cmat& e : g) {
    e = random_psd(d, rng);
    total += e;
  }
  EigResult es = eig_hermitian(total);
  Cmat inv_sqrt = Cmat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    inv_sqrt += (1.0 / std::sqrt(es.values(i))) * es.vectors.col(i) *
                es.vectors.col(i).adjoint();
  Measurement m;
  m.dim = d;
  for (const Cmat& e : g) m.elements.push_back(inv_sqrt * e * inv_sqrt);
  return m;
}

double max_sw_over_samples(double p, int k, int samples, SeedStream seeds,
                           std::uint64_t experiment) {
  double max_sw = 0.0;
  for (int s = 0; s < samples; ++s) {
    auto rng = seeds.derive(experiment, std::uint64_t(s));
    std::vector<Measurement> ms;
    for (int x = 0; x < k; ++x) ms.push_back(random_projective(2, rng));
    WeightResult r = steerable_weight(assemble(werner_qubit(p), 2, 2, ms));
    if (r.status == SolverStatus::failed) return -1.0;
    max_sw = std::max(max_sw, r.sw);
  }
  return max_sw;
}

void criterion_1() {
  double t0 = now_seconds();
  WeightResult r =
      weigh_tracked(assemble(werner_qubit(1.0), 2, 2, pauli_measurements()));
  double elapsed = now_seconds() - t0;
  line(1, "singlet + Pauli X,Y,Z: SW = 1 within 1e-4, under 1 s",
       r.status != SolverStatus::failed && std::abs(r.sw - 1.0) <= 1e-4 &&
           elapsed < 1.0);
}

void criterion_2() {
  bool bracket = werner_pauli_sw(0.57) <= 1e-5 && werner_pauli_sw(0.59) >= 1e-3;
  double lo = 0.50, hi = 0.65;
  while (hi - lo > 0.002) {
    double mid = 0.5 * (lo + hi);
    (werner_pauli_sw(mid) > 1e-6 ? hi : lo) = mid;
  }
  double crossing = 0.5 * (lo + hi);
  bool localized = std::abs(crossing - 1.0 / std::sqrt(3.0)) <= 0.005;
  line(2, "Werner qubit threshold brackets and bisects to 1/sqrt(3)",
       bracket && localized);
}

void criterion_3() {
  Assemblage a = assemble(werner_d(3, 1.0), 3, 3, mub_measurements(3));
  WeightResult r = weigh_tracked(a);
  ReproduceReport rep = verify_reproduces(mub3_lhs_table(), a, 1e-12);
  line(3, "d=3 + 4 MUBs: SW <= 1e-6 and table reproduces to 1e-12",
       r.status != SolverStatus::failed && r.sw <= 1e-6 && rep.pass);
}

void criterion_4() {
  SeedStream seeds{2026};
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    auto rng = seeds.derive(4, std::uint64_t(t));
    std::vector<Measurement> bases = {random_projective(3, rng),
                                      random_projective(3, rng),
                                      random_projective(3, rng)};
    WeightResult r =
        weigh_tracked(assemble(werner_d(3, 1.0), 3, 3, bases));
    ok = ok && r.status != SolverStatus::failed &&
         std::abs(r.sw - 1.0) <= 1e-4;
  }
  line(4, "d=3 + 3 random bases: SW = 1 within 1e-4, 10/10 draws", ok);
}

void criterion_5() {
  double t0 = now_seconds();
  WeightResult r =
      weigh_tracked(assemble(werner_d(4, 1.0), 4, 4, mub_measurements(4)));
  double elapsed = now_seconds() - t0;
  line(5, "d=4 + 5 MUBs: SW = 1 within 1e-4, under 2 min",
       r.status != SolverStatus::failed && std::abs(r.sw - 1.0) <= 1e-4 &&
           elapsed < 120.0);
}

void criterion_6() {
  SeedStream seeds{2027};
  bool ok = true;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 20; ++t) {
    auto rng = seeds.derive(6, std::uint64_t(t));
    int d = 2 + t % 2;
    PureConstruction pc;
    for (;;) {
      Rvec p(d);
      double total = 0.0;
      for (int i = 0; i < d; ++i) total += (p(i) = u(rng));
      p /= total;
      std::sort(p.data(), p.data() + d, std::greater<double>());
      try {
        pc = pure_state_inequality(SchmidtState{p.array().sqrt().matrix()},
                                   random_projective(d, rng),
                                   random_projective(d, rng));
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (pc.meta.overlap < 0.99) break;
    }
    WeightResult r = weigh_tracked(pc.assemblage);
    double value = evaluate_inequality(pc.inequality, pc.assemblage);
    ok = ok && r.status != SolverStatus::failed &&
         std::abs(r.sw - 1.0) <= 1e-4 && std::abs(value) <= 1e-10 &&
         validate_inequality(pc.inequality).pass;
  }
  line(6, "20 random pure states: SW = 1; inequality value 0 +- 1e-10", ok);
}

void criterion_7() {
  SeedStream seeds{2028};
  bool alice_ok = true;
  for (int t = 0; t < 10; ++t) {
    auto rng = seeds.derive(7, std::uint64_t(t));
    std::vector<Measurement> ms;
    for (int x = 0; x < 2; ++x) {
      if (t % 2 == 0)
        ms.push_back(random_projective(3, rng));
      else
        ms.push_back(random_povm(3, 3 + int(rng() % 2), rng));
    }
    Assemblage a = assemble(erasure_state(0.5), 3, 2, ms);
    LhsModel model = erasure_lhs_model(2, ms);
    WeightResult r = weigh_tracked(a);
    alice_ok = alice_ok && verify_reproduces(model, a, 1e-10).pass &&
               r.status != SolverStatus::failed && r.sw <= 1e-6;
  }
  auto [bob, ineq] = erasure_bob_side(0.5);
  double value = evaluate_inequality(ineq, bob);
  WeightResult rb = weigh_tracked(bob);
  bool bob_ok = std::abs(value - 0.5) <= 1e-12 &&
                rb.status != SolverStatus::failed && rb.sw >= 0.5 - 1e-4;
  line(7, "erasure p=1/2, k=2: Alice-side zero, Bob-side SW >= 1/2",
       alice_ok && bob_ok);
}

void criterion_8() {
  line(8, "strong duality: gap <= 1e-7, certificates consistent (1-7)",
       !any_failed_solve && worst_gap <= 1e-7 && worst_cert_error <= 1e-6);
  std::printf("              worst gap %.2e, worst certificate error %.2e\n",
              worst_gap, worst_cert_error);
}

void criterion_9() {
  SeedStream seeds{2029};
  Cmat rho = upb_tiles_state();
  double t0 = now_seconds();
  double worst = 0.0;
  bool solved = true;
  for (int t = 0; t < 100; ++t) {
    auto rng = seeds.derive(9, std::uint64_t(t));
    std::vector<Measurement> ms;
    for (int x = 0; x < 6; ++x) ms.push_back(random_projective(3, rng));
    WeightResult r = steerable_weight(assemble(rho, 3, 3, ms));
    solved = solved && r.status != SolverStatus::failed;
    if (solved) worst = std::max(worst, r.sw);
  }
  double elapsed = now_seconds() - t0;
  line(9, "UPB tiles: 100 samples x 6 random measurements, SW <= 1e-5",
       solved && worst <= 1e-5 && elapsed < 1200.0);
  std::printf("              max SW %.2e in %.0f s\n", worst, elapsed);
}

void criterion_10() {
  SeedStream seeds{2030};
  double k4_06 = max_sw_over_samples(0.60, 4, 200, seeds, 100);
  double k10_06 = max_sw_over_samples(0.60, 10, 200, seeds, 101);
  bool increasing = k4_06 >= 0.0 && k10_06 > k4_06;

  double k4_05 = max_sw_over_samples(0.50, 4, 200, seeds, 102);
  double k10_05 = max_sw_over_samples(0.50, 10, 200, seeds, 103);
  bool limit = k4_05 >= 0.0 && k4_05 <= 1e-4 && k10_05 >= 0.0 &&
               k10_05 <= 1e-4;

  bool separation = false;
  for (std::uint64_t i = 0; i < 2; ++i) {
    double p = 0.54 + 0.02 * double(i);
    double k4 = max_sw_over_samples(p, 4, 50, seeds, 110 + 2 * i);
    double k10 = max_sw_over_samples(p, 10, 50, seeds, 111 + 2 * i);
    if (k10 > 1e-3 && k4 >= 0.0 && k4 <= 1e-3) separation = true;
  }
  // distribution mass above 0.9 grows with p for k=10 (fixed seed)
  double mass[3];
  int pi = 0;
  for (double p : {0.8, 0.9, 1.0}) {
    int above = 0;
    const int samples = 100;
    for (int s = 0; s < samples; ++s) {
      auto rng = seeds.derive(120 + std::uint64_t(pi), std::uint64_t(s));
      std::vector<Measurement> ms;
      for (int x = 0; x < 10; ++x) ms.push_back(random_projective(2, rng));
      WeightResult r = steerable_weight(assemble(werner_qubit(p), 2, 2, ms));
      if (r.status != SolverStatus::failed && r.sw > 0.9) ++above;
    }
    mass[pi++] = double(above) / samples;
  }
  bool peaked = mass[0] <= mass[1] && mass[1] <= mass[2];

  line(10, "Werner sweep: k growth, p=0.50 null, separation, peaking",
       increasing && limit && separation && peaked);
  std::printf(
      "              max SW at p=0.60: k=4 %.4f, k=10 %.4f; p=0.50 max %.1e; "
      "mass>0.9: %.2f %.2f %.2f\n",
      k4_06, k10_06, std::max(k4_05, k10_05), mass[0], mass[1], mass[2]);
}

void criterion_11() {
  SeedStream seeds{2031};
  bool realized_ok = true;
  for (int t = 0; t < 50; ++t) {
    auto rng = seeds.derive(11, std::uint64_t(t));
    int m = 2 + int(rng() % 2);
    int n = 2 + int(rng() % 2);
    int d = 2 + int(rng() % 2);
    LhsModel model = random_model(d, m, n, rng);
    Assemblage a = realize(model);
    bool invariants_ok = true;
    try {
      validate_assemblage(a);
    } catch (const std::exception&) {
      invariants_ok = false;
    }
    WeightResult r = steerable_weight(a);
    realized_ok = realized_ok && invariants_ok &&
                  r.status != SolverStatus::failed && r.sw >= 0.0 &&
                  r.sw <= 1e-6;
  }
  auto rng = seeds.derive(12, 0);
  Assemblage a = assemble(werner_qubit(0.8), 2, 2, pauli_measurements());
  WeightResult base = steerable_weight(a);
  Assemblage relabeled = a;
  std::swap(relabeled.block(0, 2), relabeled.block(1, 2));
  WeightResult rr = steerable_weight(relabeled);
  Cmat u = random_unitary(2, rng);
  Assemblage rotated = a;
  for (auto& b : rotated.blocks) b = u * b * u.adjoint();
  WeightResult ru = steerable_weight(rotated);
  Assemblage sub = make_assemblage(2, 2, 2);
  for (int x = 0; x < 2; ++x)
    for (int out = 0; out < 2; ++out) sub.block(out, x) = a.block(out, x);
  WeightResult rs = steerable_weight(sub);
  bool solved = base.status != SolverStatus::failed &&
                rr.status != SolverStatus::failed &&
                ru.status != SolverStatus::failed &&
                rs.status != SolverStatus::failed;
  bool ok = solved && std::abs(rr.sw - base.sw) <= 1e-6 &&
            std::abs(ru.sw - base.sw) <= 1e-6 && rs.sw <= base.sw + 1e-6 &&
            base.sw >= 0.0 && base.sw <= 1.0;
  line(11, "invariants: realized models, relabeling, unitaries, subsets",
       realized_ok && ok);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%s (%d failing)\n", failures == 0 ? "ALL PASS" : "FAILURES",
              failures);
  return failures == 0 ? 0 : 1;
}
