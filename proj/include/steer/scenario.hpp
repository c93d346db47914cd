#ifndef STEER_SCENARIO_HPP
#define STEER_SCENARIO_HPP

#include <random>
#include <vector>

#include "steer/herm.hpp"

namespace steer {

/// POVM on a dim-dimensional system: PSD elements summing to the identity.
struct Measurement {
  int dim = 0;
  std::vector<Cmat> elements;

  int outcomes() const { return static_cast<int>(elements.size()); }
};

void validate_measurement(const Measurement& m, double tol = tol_psd);

/// The family {sigma_{a|x}} of sub-normalized conditional states held by the
/// trusted party, indexed by the untrusted party's input x and outcome a.
struct Assemblage {
  int dim_b = 0;
  int inputs = 0;    // m
  int outcomes = 0;  // n
  std::vector<Cmat> blocks;  // index x * outcomes + a

  const Cmat& block(int a, int x) const { return blocks[std::size_t(x) * outcomes + a]; }
  Cmat& block(int a, int x) { return blocks[std::size_t(x) * outcomes + a]; }

  /// sum_a sigma_{a|x} for x = 0 (equal for all x on valid assemblages).
  Cmat reduced() const;
};

Assemblage make_assemblage(int dim_b, int inputs, int outcomes);

/// Checks PSD blocks, no-signalling and unit normalization.
void validate_assemblage(const Assemblage& a, double tol = 1e-10);

/// Schmidt coefficients sqrt(p_i), descending and non-negative; sum p_i = 1.
struct SchmidtState {
  Rvec coefficients;

  int dim() const { return static_cast<int>(coefficients.size()); }
};

void validate_schmidt(const SchmidtState& s, double tol = 1e-12);

/// sigma_{a|x} = tr_A((M_{a|x} (x) I) rho) for measurements on the A factor.
Assemblage assemble(const Cmat& rho, int da, int db,
                    const std::vector<Measurement>& measurements);

/// p |psi-><psi-| + (1-p) I/4.
Cmat werner_qubit(double p);

/// eta A_d / N_A + (1-eta) I / d^2, A_d the antisymmetric projector.
Cmat werner_d(int d, double eta);

/// Qutrit-qubit state p |psi-><psi-| + (1-p) |2><2| (x) I/2; the singlet
/// lives on span{|0>,|1>} of the qutrit, |2> is the erasure flag.
Cmat erasure_state(double p);

/// The 3x3 bound-entangled state built on the five-tile unextendible product
/// basis: (I - sum_i |v_i><v_i|) / 4. PPT, rank 4.
Cmat upb_tiles_state();

/// Flip (swap) operator on C^d (x) C^d.
Cmat flip_operator(int d);

Cvec pure_state_ket(const SchmidtState& s);
Cmat pure_state(const SchmidtState& s);

/// X, Y, Z eigenbases; outcome 0 is the +1 eigenprojector.
std::vector<Measurement> pauli_measurements();

/// d+1 mutually unbiased bases for d in {2, 3, 4}.
std::vector<Measurement> mub_measurements(int d);

/// Unitary-invariant (Haar) sample via QR of a complex Gaussian matrix with
/// phase-normalized R diagonal.
Cmat random_unitary(int d, std::mt19937_64& rng);

/// Projective measurement from a Haar-random basis.
Measurement random_projective(int d, std::mt19937_64& rng);

}  // namespace steer

#endif
