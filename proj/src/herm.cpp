#include "steer/herm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace steer {

bool is_hermitian(const Cmat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Cmat tensor(const Cmat& a, const Cmat& b) {
  Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Cmat partial_trace(const Cmat& m, int da, int db, Subsystem keep) {
  if (m.rows() != m.cols() || m.rows() != Eigen::Index(da) * db)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep == Subsystem::A) {
    Cmat out = Cmat::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  Cmat out = Cmat::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

EigResult eig_hermitian(const Cmat& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Cmat> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  // Eigen returns ascending order; flip to descending.
  EigResult r;
  r.values = solver.eigenvalues().reverse();
  r.vectors = solver.eigenvectors().rowwise().reverse();
  return r;
}

double min_eigenvalue(const Cmat& m) {
  Eigen::SelfAdjointEigenSolver<Cmat> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_psd(const Cmat& m, double tol) { return min_eigenvalue(m) >= -tol; }

bool is_density_matrix(const Cmat& m, double tol) {
  if (!is_hermitian(m, 1e2 * tol_herm)) return false;
  if (!is_psd(m, tol)) return false;
  return std::abs(m.trace() - Complex(1.0)) <= tol;
}

Rmat embed_real(const Cmat& h) {
  const Eigen::Index d = h.rows();
  Rmat s(2 * d, 2 * d);
  s.topLeftCorner(d, d) = h.real();
  s.bottomRightCorner(d, d) = h.real();
  s.topRightCorner(d, d) = -h.imag();
  s.bottomLeftCorner(d, d) = h.imag();
  return s;
}

Cmat extract_complex(const Rmat& s) {
  const Eigen::Index d = s.rows() / 2;
  Rmat re = 0.5 * (s.topLeftCorner(d, d) + s.bottomRightCorner(d, d));
  Rmat im = 0.5 * (s.bottomLeftCorner(d, d) - s.topRightCorner(d, d));
  Cmat h = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return Cmat(0.5 * (h + h.adjoint()));
}

std::vector<Cmat> hermitian_basis(int d) {
  std::vector<Cmat> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  for (int k = 0; k < d; ++k) {
    Cmat e = Cmat::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      Cmat re = Cmat::Zero(d, d);
      re(k, l) = 1.0;
      re(l, k) = 1.0;
      basis.push_back(re);
      Cmat im = Cmat::Zero(d, d);
      im(k, l) = Complex(0, 1);
      im(l, k) = Complex(0, -1);
      basis.push_back(im);
    }
  return basis;
}

}  // namespace steer
