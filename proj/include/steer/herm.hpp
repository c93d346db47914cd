#ifndef STEER_HERM_HPP
#define STEER_HERM_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace steer {

using Complex = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;
using Rmat = Eigen::MatrixXd;
using Rvec = Eigen::VectorXd;

// Exact constructions carry ~1e-14 noise, SDP outputs ~1e-8; the defaults
// sit between the two.
inline constexpr double tol_herm = 1e-12;
inline constexpr double tol_psd = 1e-10;

enum class Subsystem { A, B };

bool is_hermitian(const Cmat& m, double tol = tol_herm);

/// Kronecker product a (x) b.
Cmat tensor(const Cmat& a, const Cmat& b);

/// Reduced operator on the kept factor of a (da x db) bipartite space.
Cmat partial_trace(const Cmat& m, int da, int db, Subsystem keep);

struct EigResult {
  Rvec values;   // descending
  Cmat vectors;  // columns, same order as values
};

/// Eigendecomposition of a Hermitian matrix; throws on non-Hermitian input.
EigResult eig_hermitian(const Cmat& m, double tol = tol_herm);

double min_eigenvalue(const Cmat& m);

bool is_psd(const Cmat& m, double tol = tol_psd);

bool is_density_matrix(const Cmat& m, double tol = tol_psd);

/// Real symmetric embedding [[Re H, -Im H], [Im H, Re H]]. PSD status is
/// preserved, every eigenvalue doubles in multiplicity, traces double.
Rmat embed_real(const Cmat& h);

/// Left inverse of embed_real. For a general symmetric S this is the
/// projection onto embedded form: tr(E H) = tr(embed_real(E) S) / 2 for
/// every Hermitian E.
Cmat extract_complex(const Rmat& s);

/// Basis of the real vector space of d x d Hermitian matrices (d^2 elements):
/// e_kk, then e_kl + e_lk and i(e_kl - e_lk) for k < l.
std::vector<Cmat> hermitian_basis(int d);

}  // namespace steer

#endif
