#pragma once

#include <string>
#include <vector>

#include "qdm/operators.hpp"
#include "qdm/physics/params.hpp"
#include "qdm/physics/phonons.hpp"

namespace qdm::dissipators {

/// Collapse operators (units sqrt(μeV)) with a readable tag each.
struct CollapseSet {
  std::vector<OperatorMatrix> ops;
  std::vector<std::string> labels;

  void add(OperatorMatrix op, std::string label);
  void append(const CollapseSet& other);
  std::size_t size() const { return ops.size(); }
  /// sum_k L_k^dagger L_k on the shared basis.
  CMatrix decay_operator() const;
};

/// L1 = sqrt(G0)(|00><S0s| + |S01><S1s|/sqrt2), L2 = -sqrt(G0/2)|A01><S1s|,
/// L3 = sqrt(G1)(|11><S1s| + |S01><S0s|/sqrt2), L4 = sqrt(G1/2)|A01><S0s|.
/// On Full9/Full16 these are the symmetric and antisymmetric combinations of
/// the single-dot decays, which restrict to the formulas above. Symmetric
/// bases get the transformed product-basis operators.
CollapseSet spontaneous_collapse_ops(double Gamma0, double Gamma1, const ModelBasis& basis);

/// Exciton occupation n1 + n2 (plus) or n1 - n2 (minus) counting |s> per
/// dot. Effective bases use the restriction of the symmetric-basis operator.
OperatorMatrix exciton_occupation(const ModelBasis& basis, physics::Parity parity);

/// One Bohr frequency of H and the lowering parts of both occupations.
struct PhononChannel {
  double omega;  // μeV, > 0
  OperatorMatrix P_sym;
  OperatorMatrix P_asym;
};

inline constexpr double phonon_cutoff = 1e-3;          // μeV
inline constexpr double eigenvalue_clustering = 1e-6;  // μeV

/// Secular eigenoperators: P(omega) = sum Pi_a N Pi_b over eigenspace pairs
/// with E_b - E_a = omega > cutoff. Channels whose operators both vanish
/// are dropped; output is sorted by frequency.
std::vector<PhononChannel> phonon_eigenoperators(const OperatorMatrix& H);

/// Downward sqrt(J (N + 1)) P and upward sqrt(J N) P^dagger per channel,
/// with J_+ for the symmetric and J_- for the antisymmetric occupation.
/// Upward operators are omitted at T = 0.
CollapseSet phonon_dissipator(const OperatorMatrix& H, double T, const physics::DotGeometry& geom,
                              const physics::MaterialParams& material);

/// -i[H, .] + sum_k D[L_k].
Superoperator assemble_liouvillian(const OperatorMatrix& H, const CollapseSet& collapse);

}  // namespace qdm::dissipators
