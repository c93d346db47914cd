#include "steer/json_io.hpp"

#include <stdexcept>

namespace steer {

json matrix_to_json(const Cmat& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

Cmat matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || j.size() != std::size_t(rows) * cols)
    throw std::invalid_argument("matrix: wrong entry count");
  Cmat m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c, ++k)
      m(i, c) = Complex(j[k].at(0).get<double>(), j[k].at(1).get<double>());
  return m;
}

json measurement_to_json(const Measurement& m) {
  json elements = json::array();
  for (const Cmat& e : m.elements) elements.push_back(matrix_to_json(e));
  return json{{"dim", m.dim}, {"elements", elements}};
}

Measurement measurement_from_json(const json& j) {
  Measurement m;
  m.dim = j.at("dim").get<int>();
  for (const json& e : j.at("elements"))
    m.elements.push_back(matrix_from_json(e, m.dim, m.dim));
  validate_measurement(m);
  return m;
}

json assemblage_to_json(const Assemblage& a) {
  json blocks = json::object();
  for (int x = 0; x < a.inputs; ++x)
    for (int out = 0; out < a.outcomes; ++out)
      blocks[std::to_string(out) + "," + std::to_string(x)] =
          matrix_to_json(a.block(out, x));
  return json{{"dim_b", a.dim_b},
              {"inputs", a.inputs},
              {"outcomes", a.outcomes},
              {"blocks", blocks}};
}

Assemblage assemblage_from_json(const json& j) {
  Assemblage a = make_assemblage(j.at("dim_b").get<int>(),
                                 j.at("inputs").get<int>(),
                                 j.at("outcomes").get<int>());
  for (int x = 0; x < a.inputs; ++x)
    for (int out = 0; out < a.outcomes; ++out) {
      const std::string key = std::to_string(out) + "," + std::to_string(x);
      a.block(out, x) =
          matrix_from_json(j.at("blocks").at(key), a.dim_b, a.dim_b);
    }
  return a;
}

json lhs_model_to_json(const LhsModel& m) {
  json sigma = json::object();
  for (const auto& [lambda, s] : m.sigma)
    sigma[std::to_string(lambda)] = matrix_to_json(s);
  return json{{"dim_b", m.dim_b},
              {"m", m.strategies.inputs},
              {"n", m.strategies.outcomes},
              {"sigma", sigma}};
}

LhsModel lhs_model_from_json(const json& j) {
  LhsModel m;
  m.dim_b = j.at("dim_b").get<int>();
  m.strategies =
      enumerate_strategies(j.at("m").get<int>(), j.at("n").get<int>());
  for (const auto& [key, value] : j.at("sigma").items())
    m.sigma[std::stoll(key)] = matrix_from_json(value, m.dim_b, m.dim_b);
  return m;
}

json inequality_to_json(const SteeringInequality& ineq) {
  json f = json::object();
  for (int x = 0; x < ineq.m; ++x)
    for (int a = 0; a < ineq.n; ++a)
      f[std::to_string(a) + "," + std::to_string(x)] =
          matrix_to_json(ineq.f(a, x));
  return json{
      {"dim_b", ineq.dim_b}, {"m", ineq.m}, {"n", ineq.n}, {"F", f}};
}

SteeringInequality inequality_from_json(const json& j) {
  SteeringInequality ineq =
      make_inequality(j.at("dim_b").get<int>(), j.at("m").get<int>(),
                      j.at("n").get<int>());
  for (int x = 0; x < ineq.m; ++x)
    for (int a = 0; a < ineq.n; ++a) {
      const std::string key = std::to_string(a) + "," + std::to_string(x);
      ineq.f(a, x) = matrix_from_json(j.at("F").at(key), ineq.dim_b, ineq.dim_b);
    }
  return ineq;
}

json weight_result_to_json(const WeightResult& r) {
  const char* status = r.status == SolverStatus::optimal      ? "optimal"
                       : r.status == SolverStatus::near_optimal ? "near_optimal"
                                                                : "failed";
  json j{{"mu_star", r.mu_star},
         {"sw", r.sw},
         {"gap", r.duality_gap},
         {"status", status}};
  if (r.status != SolverStatus::failed) {
    j["certificate"] = inequality_to_json(r.certificate);
    j["lhs"] = lhs_model_to_json(r.lhs_part);
  }
  return j;
}

}  // namespace steer
