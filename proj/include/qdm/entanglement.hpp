#pragma once

#include "qdm/operators.hpp"

namespace qdm {

struct QubitProjection {
  DensityMatrix rho;  // on ModelBasis::two_qubit(): |00>, |01>, |10>, |11>
  double leak;        // 1 - Tr(P rho P), weight outside the qubit subspace
};

/// Rows of the isometry mapping `basis` onto the two-qubit product states.
/// Works for any basis carrying either {00, 01, 10, 11} or
/// {00, S01, A01, 11}; throws BasisError otherwise.
CMatrix qubit_isometry(const ModelBasis& basis);

/// Projects onto the two-hole-spin subspace and renormalizes. Throws
/// EmptySubspaceError when less than 1e-6 of the weight is left.
QubitProjection project_to_qubits(const DensityMatrix& rho);

/// Wootters concurrence of a two-qubit state. Eigenvalues in (-1e-8, 0) are
/// clamped; anything more negative raises PositivityError.
double concurrence(const DensityMatrix& rho2);

/// 1/2 sum of singular values of rho1 - rho2.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);
double trace_distance(const CMatrix& rho1, const CMatrix& rho2);

}  // namespace qdm
