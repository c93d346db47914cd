#ifndef STEER_CONSTRUCTIONS_HPP
#define STEER_CONSTRUCTIONS_HPP

#include "steer/steering.hpp"

namespace steer {

/// Data of the pure-state assemblage behind an optimal inequality:
/// conditional kets |psi_{a|x}>, their probabilities, and the maximum
/// cross-measurement overlap xi (construction valid only for xi < 1).
struct PureAssemblageMeta {
  double overlap = 0.0;  // xi
  std::vector<Cvec> conditional_kets;    // index x * n + a
  std::vector<double> probabilities;     // p(a|x), same index
};

struct PureConstruction {
  SteeringInequality inequality;
  Assemblage assemblage;
  PureAssemblageMeta meta;
};

/// Optimal steering inequality for a pure entangled state measured in two
/// projective bases: F_{a|x} = alpha (I - |psi_{a|x}><psi_{a|x}|) with
/// alpha = (1 + 1e-6)/(1 - xi). The returned assemblage attains value 0,
/// so its steerable weight is 1.
PureConstruction pure_state_inequality(const SchmidtState& state,
                                       const Measurement& basis0,
                                       const Measurement& basis1);

/// Inequality F_{a|x} = alpha |phi_{a|x}><phi_{a|x}| for d projective bases
/// on the normalized antisymmetric projector. Requires every selection of
/// one vector per basis to span the space (min eigenvalue >= min_eig_floor).
std::pair<SteeringInequality, Assemblage> antisymmetric_inequality(
    int d, const std::vector<Measurement>& bases, double min_eig_floor = 1e-6);

/// The 9-state LHS model reproducing the 4-MUB assemblage on the d=3
/// antisymmetric state, p(lambda) = 1/9 each.
LhsModel mub3_lhs_table();

/// (1/k) sum_i |2><2|^(k-1) (x) |psi-><psi-|_{A_i B} on (C^3)^k (x) C^2.
Cmat erasure_symmetric_extension(int k);

/// LHS model for k arbitrary POVMs on the qutrit side of erasure_state(1/k),
/// built from the k-symmetric extension; lambda runs over outcome strings.
LhsModel erasure_lhs_model(int k, const std::vector<Measurement>& measurements);

/// Bob measures X and Z on the erasure state; the steered side is the
/// qutrit. Returns the assemblage and the alpha = 2 + sqrt(2) inequality it
/// violates with value 1 - p.
std::pair<Assemblage, SteeringInequality> erasure_bob_side(double p);

}  // namespace steer

#endif
