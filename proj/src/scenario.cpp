#include "steer/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace steer {

namespace {

const Complex kI(0.0, 1.0);

Cmat projector(const Cvec& v) { return v * v.adjoint(); }

Cvec singlet_ket() {
  Cvec psi = Cvec::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return psi;
}

Measurement basis_measurement(const Cmat& basis) {
  Measurement m;
  m.dim = static_cast<int>(basis.rows());
  for (Eigen::Index a = 0; a < basis.cols(); ++a)
    m.elements.push_back(projector(basis.col(a)));
  return m;
}

// 5 MUBs for d = 4: computational basis plus four bases with entries
// {+-1, +-i}/2, the common eigenbases of the commuting two-qubit Pauli
// classes {XI,IX,XX}, {YI,IY,YY}, {XY,YZ,ZX}, {YX,ZY,XZ}. Verified
// against the unbiasedness invariant at load.
std::vector<Measurement> mub4() {
  static const Complex t[4][4][4] = {
      {{1, -1, -1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, 1}},
      {{1, -kI, -kI, -1}, {1, -kI, kI, 1}, {1, kI, -kI, 1}, {1, kI, kI, -1}},
      {{1, -1, -kI, -kI}, {1, 1, -kI, kI}, {1, 1, kI, -kI}, {1, -1, kI, kI}},
      {{1, -kI, -1, -kI}, {1, -kI, 1, kI}, {1, kI, 1, -kI}, {1, kI, -1, kI}}};
  std::vector<Measurement> out;
  out.push_back(basis_measurement(Cmat::Identity(4, 4)));
  for (const auto& basis : t) {
    Cmat b(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i) b(i, a) = 0.5 * basis[a][i];
    out.push_back(basis_measurement(b));
  }
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double ov = (out[x].elements[a] * out[y].elements[b]).trace().real();
          if (std::abs(ov - 0.25) > 1e-12)
            throw std::logic_error("mub_measurements: d=4 table corrupt");
        }
  return out;
}

}  // namespace

void validate_measurement(const Measurement& m, double tol) {
  if (m.dim <= 0 || m.elements.empty())
    throw std::invalid_argument("measurement: empty");
  Cmat sum = Cmat::Zero(m.dim, m.dim);
  for (const auto& e : m.elements) {
    if (e.rows() != m.dim || e.cols() != m.dim)
      throw std::invalid_argument("measurement: element dimension mismatch");
    if (!is_hermitian(e, 1e2 * tol_herm) || !is_psd(e, tol))
      throw std::invalid_argument("measurement: element not PSD");
    sum += e;
  }
  if ((sum - Cmat::Identity(m.dim, m.dim)).norm() > tol * m.dim * 10)
    throw std::invalid_argument("measurement: elements do not sum to identity");
}

Cmat Assemblage::reduced() const {
  Cmat r = Cmat::Zero(dim_b, dim_b);
  for (int a = 0; a < outcomes; ++a) r += block(a, 0);
  return r;
}

Assemblage make_assemblage(int dim_b, int inputs, int outcomes) {
  Assemblage a;
  a.dim_b = dim_b;
  a.inputs = inputs;
  a.outcomes = outcomes;
  a.blocks.assign(std::size_t(inputs) * outcomes, Cmat::Zero(dim_b, dim_b));
  return a;
}

void validate_assemblage(const Assemblage& a, double tol) {
  if (a.dim_b <= 0 || a.inputs <= 0 || a.outcomes <= 0 ||
      a.blocks.size() != std::size_t(a.inputs) * a.outcomes)
    throw std::invalid_argument("assemblage: bad shape");
  Cmat first = a.reduced();
  if (std::abs(first.trace() - Complex(1.0)) > tol)
    throw std::invalid_argument("assemblage: not normalized");
  for (int x = 0; x < a.inputs; ++x) {
    Cmat sum = Cmat::Zero(a.dim_b, a.dim_b);
    for (int ai = 0; ai < a.outcomes; ++ai) {
      const Cmat& blk = a.block(ai, x);
      if (!is_hermitian(blk, 1e2 * tol_herm) || !is_psd(blk, tol))
        throw std::invalid_argument("assemblage: block not PSD");
      sum += blk;
    }
    if ((sum - first).norm() > tol)
      throw std::invalid_argument("assemblage: signalling between inputs");
  }
}

void validate_schmidt(const SchmidtState& s, double tol) {
  if (s.coefficients.size() == 0)
    throw std::invalid_argument("schmidt state: empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) {
    if (s.coefficients(i) < 0)
      throw std::invalid_argument("schmidt state: negative coefficient");
    if (i > 0 && s.coefficients(i) > s.coefficients(i - 1) + tol)
      throw std::invalid_argument("schmidt state: not descending");
    sum += s.coefficients(i) * s.coefficients(i);
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("schmidt state: coefficients not normalized");
}

Assemblage assemble(const Cmat& rho, int da, int db,
                    const std::vector<Measurement>& measurements) {
  if (rho.rows() != Eigen::Index(da) * db)
    throw std::invalid_argument("assemble: state dimension mismatch");
  if (measurements.empty())
    throw std::invalid_argument("assemble: no measurements");
  int n = 0;
  for (const auto& m : measurements) {
    if (m.dim != da) throw std::invalid_argument("assemble: measurement dim");
    n = std::max(n, m.outcomes());
  }
  Assemblage out = make_assemblage(db, static_cast<int>(measurements.size()), n);
  const Cmat id_b = Cmat::Identity(db, db);
  for (int x = 0; x < out.inputs; ++x)
    for (int a = 0; a < measurements[x].outcomes(); ++a)
      out.block(a, x) = partial_trace(
          tensor(measurements[x].elements[a], id_b) * rho, da, db, Subsystem::B);
  return out;
}

Cmat werner_qubit(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner_qubit: p");
  Cvec psi = singlet_ket();
  return p * projector(psi) + (1.0 - p) * 0.25 * Cmat::Identity(4, 4);
}

Cmat flip_operator(int d) {
  Cmat f = Cmat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

Cmat werner_d(int d, double eta) {
  if (d < 2) throw std::invalid_argument("werner_d: d < 2");
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("werner_d: eta");
  const double na = 0.5 * d * (d - 1);
  Cmat anti = 0.5 * (Cmat::Identity(d * d, d * d) - flip_operator(d));
  return eta / na * anti +
         (1.0 - eta) / (d * d) * Cmat::Identity(d * d, d * d);
}

Cmat erasure_state(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erasure_state: p");
  Cvec psi = Cvec::Zero(6);  // qutrit (x) qubit, singlet on span{|0>,|1>}
  psi(1) = 1.0 / std::sqrt(2.0);   // |0>|1>
  psi(2) = -1.0 / std::sqrt(2.0);  // |1>|0>
  Cmat flag = Cmat::Zero(3, 3);
  flag(2, 2) = 1.0;
  return p * projector(psi) +
         (1.0 - p) * tensor(flag, 0.5 * Cmat::Identity(2, 2));
}

Cmat upb_tiles_state() {
  auto ket3 = [](Complex c0, Complex c1, Complex c2) {
    Cvec v(3);
    v << c0, c1, c2;
    return v;
  };
  const double s = 1.0 / std::sqrt(2.0);
  Cvec e0 = ket3(1, 0, 0), e1 = ket3(0, 1, 0), e2 = ket3(0, 0, 1);
  Cvec w01 = s * (e0 - e1), w12 = s * (e1 - e2);
  Cvec u = (e0 + e1 + e2) / std::sqrt(3.0);
  std::vector<std::pair<Cvec, Cvec>> tiles = {
      {e0, w01}, {e2, w12}, {w01, e2}, {w12, e0}, {u, u}};
  Cmat rho = Cmat::Identity(9, 9);
  for (const auto& [a, b] : tiles) {
    Cvec v = Cvec::Zero(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v(i * 3 + j) = a(i) * b(j);
    rho -= projector(v);
  }
  return rho / 4.0;
}

Cvec pure_state_ket(const SchmidtState& s) {
  validate_schmidt(s);
  const int d = s.dim();
  Cvec psi = Cvec::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = s.coefficients(i);
  return psi;
}

Cmat pure_state(const SchmidtState& s) { return projector(pure_state_ket(s)); }

std::vector<Measurement> pauli_measurements() {
  Cmat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  const Cmat id = Cmat::Identity(2, 2);
  std::vector<Measurement> out;
  for (const Cmat& pauli : {x, y, z}) {
    Measurement m;
    m.dim = 2;
    m.elements = {0.5 * (id + pauli), 0.5 * (id - pauli)};
    out.push_back(m);
  }
  return out;
}

std::vector<Measurement> mub_measurements(int d) {
  if (d == 2) {
    auto xyz = pauli_measurements();
    return {xyz[2], xyz[0], xyz[1]};  // Z first: computational basis
  }
  if (d == 3) {
    const Complex w = std::exp(2.0 * M_PI * kI / 3.0);
    const Complex w2 = w * w;
    const double s = 1.0 / std::sqrt(3.0);
    Cmat b0 = Cmat::Identity(3, 3);
    Cmat b1(3, 3), b2(3, 3), b3(3, 3);
    b1.col(0) << 1, 1, 1;
    b1.col(1) << 1, w, w2;
    b1.col(2) << 1, w2, w;
    b2.col(0) << 1, w, w;
    b2.col(1) << 1, w2, 1.0;
    b2.col(2) << 1, 1.0, w2;
    b3.col(0) << 1, w2, w2;
    b3.col(1) << 1, 1.0, w;
    b3.col(2) << 1, w, 1.0;
    std::vector<Measurement> out;
    for (const Cmat& b : {b0, Cmat(s * b1), Cmat(s * b2), Cmat(s * b3)})
      out.push_back(basis_measurement(b));
    return out;
  }
  if (d == 4) return mub4();
  throw std::invalid_argument("mub_measurements: unsupported dimension");
}

Cmat random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Cmat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Cmat> qr(g);
  Cmat q = qr.householderQ();
  Cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

Measurement random_projective(int d, std::mt19937_64& rng) {
  return basis_measurement(random_unitary(d, rng));
}

}  // namespace steer
