// steerctl: compute steerable weights, build assemblages, and reproduce the
// standard steering experiments from the command line.

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "steer/constructions.hpp"
#include "steer/json_io.hpp"
#include "steer/rng.hpp"

using namespace steer;

namespace {

int thread_count() {
  if (const char* env = std::getenv("STEERCTL_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

// Deterministic parallel map: job i writes only slot i of the result.
template <typename Fn>
void parallel_for(int jobs, Fn&& fn) {
  int workers = std::min(thread_count(), jobs);
  if (workers <= 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << text;
}

void emit(const std::string& out_path, const json& j) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text_file(out_path, j.dump(2) + "\n");
}

// SPEC strings look like "name:key=value,key=value" or just "name".
struct Spec {
  std::string name;
  std::map<std::string, std::string> args;

  double number(const std::string& key) const {
    auto it = args.find(key);
    if (it == args.end())
      throw std::invalid_argument("spec " + name + ": missing " + key + "=");
    return std::stod(it->second);
  }
  double number_or(const std::string& key, double fallback) const {
    auto it = args.find(key);
    return it == args.end() ? fallback : std::stod(it->second);
  }
};

Spec parse_spec(const std::string& text) {
  Spec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec " + text + ": expected key=value");
    spec.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

struct StateSpec {
  Cmat rho;
  int dim_a = 0;
  int dim_b = 0;
};

StateSpec make_state(const std::string& text) {
  Spec spec = parse_spec(text);
  if (spec.name == "werner2") {
    return {werner_qubit(spec.number("p")), 2, 2};
  }
  if (spec.name == "wernerd") {
    int d = int(spec.number("d"));
    return {werner_d(d, spec.number("eta")), d, d};
  }
  if (spec.name == "erasure") {
    return {erasure_state(spec.number("p")), 3, 2};
  }
  if (spec.name == "pure") {
    auto it = spec.args.find("coeffs");
    if (it == spec.args.end())
      throw std::invalid_argument("pure: missing coeffs=");
    std::vector<double> c;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ';')) c.push_back(std::stod(tok));
    Rvec v = Eigen::Map<Rvec>(c.data(), Eigen::Index(c.size()));
    SchmidtState s{v};
    validate_schmidt(s);
    return {pure_state(s), s.dim(), s.dim()};
  }
  if (spec.name == "upb-tiles") {
    return {upb_tiles_state(), 3, 3};
  }
  throw std::invalid_argument("unknown state spec: " + spec.name);
}

std::vector<Measurement> make_measurements(const std::string& text) {
  Spec spec = parse_spec(text);
  if (spec.name == "pauli-xyz") return pauli_measurements();
  if (spec.name == "mub") return mub_measurements(int(spec.number("d")));
  if (spec.name == "random") {
    int d = int(spec.number("d"));
    int k = int(spec.number("k"));
    SeedStream seeds{std::uint64_t(spec.number_or("seed", 0))};
    std::vector<Measurement> out;
    for (int i = 0; i < k; ++i) {
      auto rng = seeds.derive(0, std::uint64_t(i));
      out.push_back(random_projective(d, rng));
    }
    return out;
  }
  throw std::invalid_argument("unknown measurement spec: " + spec.name);
}

WeightResult weigh(const Assemblage& a, double tol) {
  WeightOptions opts;
  opts.gap_tol = tol;
  return steerable_weight(a, opts);
}

int cmd_weight(const std::string& in, double tol, const std::string& out) {
  Assemblage a = assemblage_from_json(read_json_file(in));
  validate_assemblage(a);
  WeightResult r = weigh(a, tol);
  emit(out, weight_result_to_json(r));
  return r.status == SolverStatus::failed ? 2 : 0;
}

int cmd_assemble(const std::string& state, const std::string& meas,
                 const std::string& out) {
  StateSpec s = make_state(state);
  std::vector<Measurement> ms = make_measurements(meas);
  Assemblage a = assemble(s.rho, s.dim_a, s.dim_b, ms);
  validate_assemblage(a);
  emit(out, assemblage_to_json(a));
  return 0;
}

int cmd_verify_lhs(const std::string& model_path,
                   const std::string& assemblage_path, double tol) {
  LhsModel model = lhs_model_from_json(read_json_file(model_path));
  validate_lhs_model(model, tol_psd, false);
  Assemblage target = assemblage_from_json(read_json_file(assemblage_path));
  ReproduceReport rep = verify_reproduces(model, target, tol);
  std::printf("max_block_error %.3e  %s\n", rep.max_block_error,
              rep.pass ? "PASS" : "FAIL");
  return rep.pass ? 0 : 1;
}

struct SweepRow {
  double p;
  int k;
  int sample;
  double sw;
};

std::vector<SweepRow> run_sweep(const std::vector<double>& ps,
                                const std::vector<int>& ks, int samples,
                                std::uint64_t seed) {
  struct Job {
    std::size_t pi;
    std::size_t ki;
    int sample;
  };
  std::vector<Job> jobs;
  for (std::size_t pi = 0; pi < ps.size(); ++pi)
    for (std::size_t ki = 0; ki < ks.size(); ++ki)
      for (int s = 0; s < samples; ++s) jobs.push_back({pi, ki, s});

  SeedStream seeds{seed};
  std::vector<SweepRow> rows(jobs.size());
  parallel_for(int(jobs.size()), [&](int i) {
    const Job& job = jobs[std::size_t(i)];
    const double p = ps[job.pi];
    const int k = ks[job.ki];
    // experiment id fixes the stream per (p, k) grid point
    auto rng = seeds.derive(std::uint64_t(job.pi) * 1000 + std::uint64_t(k),
                            std::uint64_t(job.sample));
    std::vector<Measurement> ms;
    for (int x = 0; x < k; ++x) ms.push_back(random_projective(2, rng));
    WeightResult r = weigh(assemble(werner_qubit(p), 2, 2, ms), 1e-7);
    double sw = r.status == SolverStatus::failed
                    ? std::numeric_limits<double>::quiet_NaN()
                    : r.sw;
    rows[std::size_t(i)] = {p, k, job.sample, sw};
  });
  return rows;
}

int cmd_sweep(double p_min, double p_max, double p_step,
              const std::string& k_list, int samples, std::uint64_t seed,
              bool full_scale, const std::string& out) {
  if (full_scale) samples = 1000;
  if (samples < 1) throw std::invalid_argument("sweep: samples >= 1");
  std::vector<double> ps;
  for (double p = p_min; p <= p_max + 1e-12; p += p_step)
    ps.push_back(std::min(p, 1.0));
  std::vector<int> ks;
  std::stringstream ss(k_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
  if (ps.empty() || ks.empty())
    throw std::invalid_argument("sweep: empty grid");
  for (int k : ks) enumerate_strategies(k, 2);  // cap check up front

  std::vector<SweepRow> rows = run_sweep(ps, ks, samples, seed);

  std::string csv = "p,k,sample,sw\n";
  for (const SweepRow& r : rows) {
    char line[96];
    std::snprintf(line, sizeof line, "%.4f,%d,%d,%.10e\n", r.p, r.k, r.sample,
                  r.sw);
    csv += line;
  }

  std::string summary = "p,k,max_sw,mean_sw";
  for (int b = 0; b < 10; ++b)
    summary += ",hist" + std::to_string(b);
  summary += "\n";
  for (std::size_t i = 0; i < rows.size(); i += std::size_t(samples)) {
    double max_sw = 0.0, mean = 0.0;
    int hist[10] = {0};
    for (int s = 0; s < samples; ++s) {
      double sw = rows[i + std::size_t(s)].sw;
      max_sw = std::max(max_sw, sw);
      mean += sw / samples;
      int bin = std::min(9, int(sw * 10.0));
      ++hist[std::max(0, bin)];
    }
    char head[64];
    std::snprintf(head, sizeof head, "%.4f,%d,%.10e,%.10e", rows[i].p,
                  rows[i].k, max_sw, mean);
    summary += head;
    for (int b = 0; b < 10; ++b) summary += "," + std::to_string(hist[b]);
    summary += "\n";
  }

  if (out.empty()) {
    std::cout << csv;
    std::cout << summary;
  } else {
    write_text_file(out, csv);
    write_text_file(out + ".summary.csv", summary);
  }
  return 0;
}

bool report(const char* label, bool ok) {
  std::printf("%s: %s\n", label, ok ? "PASS" : "FAIL");
  return ok;
}

int demo_pure(std::uint64_t seed, json& records) {
  SeedStream seeds{seed};
  bool ok = true;
  json runs = json::array();
  for (int t = 0; t < 20; ++t) {
    auto rng = seeds.derive(10, std::uint64_t(t));
    int d = 2 + t % 2;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Rvec p(d);
    PureConstruction pc;
    for (;;) {
      double total = 0.0;
      for (int i = 0; i < d; ++i) total += (p(i) = u(rng));
      p /= total;
      std::sort(p.data(), p.data() + d, std::greater<double>());
      try {
        pc = pure_state_inequality(SchmidtState{p.array().sqrt().matrix()},
                                   random_projective(d, rng),
                                   random_projective(d, rng));
      } catch (const std::invalid_argument&) {
        continue;  // overlap too close to 1; redraw
      }
      if (pc.meta.overlap < 0.99) break;
    }
    double value = evaluate_inequality(pc.inequality, pc.assemblage);
    WeightResult r = weigh(pc.assemblage, 1e-7);
    bool good = r.status != SolverStatus::failed &&
                std::abs(r.sw - 1.0) <= 1e-4 && std::abs(value) <= 1e-10 &&
                validate_inequality(pc.inequality).pass;
    ok = ok && good;
    runs.push_back({{"d", d},
                    {"xi", pc.meta.overlap},
                    {"value", value},
                    {"sw", r.sw}});
  }
  records["runs"] = runs;
  return report("pure: 20 random pure states maximally steerable", ok) ? 0 : 1;
}

int demo_mub3(json& records) {
  Assemblage a = assemble(werner_d(3, 1.0), 3, 3, mub_measurements(3));
  WeightResult r = weigh(a, 1e-7);
  LhsModel table = mub3_lhs_table();
  ReproduceReport rep = verify_reproduces(table, a, 1e-12);
  records["sw"] = r.sw;
  records["table_error"] = rep.max_block_error;
  bool ok = report("mub3: 4 MUBs on the d=3 antisymmetric state unsteerable",
                   r.status != SolverStatus::failed && r.sw <= 1e-6);
  ok = report("mub3: 9-state table reproduces the assemblage", rep.pass) && ok;
  return ok ? 0 : 1;
}

int demo_mub4(json& records) {
  auto mubs = mub_measurements(4);
  Cmat rho = werner_d(4, 1.0);
  json prefix = json::array();
  double final_sw = 0.0;
  SolverStatus final_status = SolverStatus::failed;
  for (int count = 2; count <= 5; ++count) {
    std::vector<Measurement> used(mubs.begin(), mubs.begin() + count);
    WeightResult r = weigh(assemble(rho, 4, 4, used), 1e-7);
    prefix.push_back({{"bases", count}, {"sw", r.sw}});
    final_sw = r.sw;
    final_status = r.status;
  }
  records["prefix_sw"] = prefix;
  bool ok = final_status != SolverStatus::failed &&
            std::abs(final_sw - 1.0) <= 1e-4;
  return report("mub4: 5 MUBs on the d=4 antisymmetric state maximal", ok)
             ? 0
             : 1;
}

int demo_antisym(std::uint64_t seed, json& records) {
  SeedStream seeds{seed};
  bool ok = true;
  json runs = json::array();
  for (int d : {2, 3, 4})
    for (int t = 0; t < 10; ++t) {
      auto rng = seeds.derive(20 + std::uint64_t(d), std::uint64_t(t));
      std::vector<Measurement> bases;
      for (int x = 0; x < d; ++x) bases.push_back(random_projective(d, rng));
      auto [ineq, a] = antisymmetric_inequality(d, bases);
      WeightResult r = weigh(a, 1e-7);
      bool good =
          r.status != SolverStatus::failed && std::abs(r.sw - 1.0) <= 1e-4;
      ok = ok && good;
      runs.push_back({{"d", d}, {"sample", t}, {"sw", r.sw}});
    }
  records["runs"] = runs;
  return report("antisym: d random bases give SW = 1 (d = 2,3,4)", ok) ? 0 : 1;
}

int demo_erasure(std::uint64_t seed, json& records) {
  SeedStream seeds{seed};
  bool alice_ok = true;
  for (int t = 0; t < 3; ++t) {
    auto rng = seeds.derive(30, std::uint64_t(t));
    std::vector<Measurement> ms = {random_projective(3, rng),
                                   random_projective(3, rng)};
    Assemblage a = assemble(erasure_state(0.5), 3, 2, ms);
    LhsModel model = erasure_lhs_model(2, ms);
    WeightResult r = weigh(a, 1e-7);
    alice_ok = alice_ok && verify_reproduces(model, a, 1e-10).pass &&
               r.status != SolverStatus::failed && r.sw <= 1e-6;
  }
  auto [bob, ineq] = erasure_bob_side(0.5);
  double value = evaluate_inequality(ineq, bob);
  WeightResult rb = weigh(bob, 1e-7);
  records["bob_value"] = value;
  records["bob_sw"] = rb.sw;
  bool ok = report("erasure: Alice-side unsteerable at p = 1/2, k = 2",
                   alice_ok);
  ok = report("erasure: Bob-side inequality value 0.5",
              std::abs(value - 0.5) <= 1e-12) &&
       ok;
  ok = report("erasure: Bob-side SW >= 0.5",
              rb.status != SolverStatus::failed && rb.sw >= 0.5 - 1e-4) &&
       ok;
  return ok ? 0 : 1;
}

int demo_bound(std::uint64_t seed, json& records) {
  SeedStream seeds{seed};
  const int samples = 100;
  std::vector<double> sw(samples);
  Cmat rho = upb_tiles_state();
  parallel_for(samples, [&](int t) {
    auto rng = seeds.derive(40, std::uint64_t(t));
    std::vector<Measurement> ms;
    for (int x = 0; x < 6; ++x) ms.push_back(random_projective(3, rng));
    WeightResult r = weigh(assemble(rho, 3, 3, ms), 1e-7);
    sw[std::size_t(t)] = r.status == SolverStatus::failed
                             ? std::numeric_limits<double>::quiet_NaN()
                             : r.sw;
  });
  double worst = 0.0;
  for (double s : sw) worst = std::max(worst, s);
  records["max_sw"] = worst;
  records["samples"] = samples;
  bool ok = worst <= 1e-5 && !std::isnan(worst);
  return report("bound: 100 samples of 6 random measurements, all SW <= 1e-5",
                ok)
             ? 0
             : 1;
}

int cmd_demo(const std::string& name, std::uint64_t seed,
             const std::string& out) {
  json records{{"demo", name}, {"seed", seed}};
  int rc;
  if (name == "pure")
    rc = demo_pure(seed, records);
  else if (name == "mub3")
    rc = demo_mub3(records);
  else if (name == "mub4")
    rc = demo_mub4(records);
  else if (name == "antisym")
    rc = demo_antisym(seed, records);
  else if (name == "erasure")
    rc = demo_erasure(seed, records);
  else if (name == "bound")
    rc = demo_bound(seed, records);
  else
    throw std::invalid_argument("unknown demo: " + name);
  if (!out.empty()) write_text_file(out, records.dump(2) + "\n");
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steerable-weight toolkit"};
  app.require_subcommand(1);

  std::string in_file, out_file, state_spec, meas_spec, model_file;
  double tol = 1e-7;

  auto* weight = app.add_subcommand("weight", "steerable weight of an assemblage");
  weight->add_option("--assemblage", in_file, "assemblage JSON file")
      ->required();
  weight->add_option("--tol", tol, "duality gap tolerance");
  weight->add_option("--out", out_file, "output file (stdout when absent)");

  auto* asmb = app.add_subcommand("assemble", "build an assemblage from specs");
  asmb->add_option("--state", state_spec,
                   "werner2:p= | wernerd:d=,eta= | erasure:p= | "
                   "pure:coeffs=c0;c1;... | upb-tiles")
      ->required();
  asmb->add_option("--meas", meas_spec,
                   "pauli-xyz | mub:d= | random:d=,k=,seed=")
      ->required();
  asmb->add_option("--out", out_file, "output file (stdout when absent)");

  double p_min = 0.5, p_max = 1.0, p_step = 0.02;
  std::string k_list = "4,6,8,10";
  int samples = 200;
  std::uint64_t seed = 0;
  bool full_scale = false;
  auto* sweep = app.add_subcommand("sweep", "Werner-state random-measurement sweep");
  sweep->add_option("--p-min", p_min);
  sweep->add_option("--p-max", p_max);
  sweep->add_option("--p-step", p_step);
  sweep->add_option("--k", k_list, "comma-separated measurement counts");
  sweep->add_option("--samples", samples, "samples per grid point");
  sweep->add_option("--seed", seed);
  sweep->add_flag("--full-scale", full_scale, "1000 samples per grid point");
  sweep->add_option("--out", out_file,
                    "CSV file; a .summary.csv sibling is written too");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "reproduce a named experiment");
  demo->add_option("name", demo_name,
                   "pure | mub3 | mub4 | antisym | erasure | bound")
      ->required();
  demo->add_option("--seed", seed);
  demo->add_option("--out", out_file, "JSON records file");

  auto* verify = app.add_subcommand("verify-lhs",
                                    "check a model against an assemblage");
  verify->add_option("--model", model_file, "LHS model JSON file")->required();
  verify->add_option("--assemblage", in_file, "assemblage JSON file")
      ->required();
  verify->add_option("--tol", tol, "blockwise Frobenius tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (weight->parsed()) return cmd_weight(in_file, tol, out_file);
    if (asmb->parsed()) return cmd_assemble(state_spec, meas_spec, out_file);
    if (sweep->parsed())
      return cmd_sweep(p_min, p_max, p_step, k_list, samples, seed, full_scale,
                       out_file);
    if (demo->parsed()) return cmd_demo(demo_name, seed, out_file);
    if (verify->parsed()) return cmd_verify_lhs(model_file, in_file, tol);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
