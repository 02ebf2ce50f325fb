#pragma once

#include <string_view>
#include <vector>

#include "qdm/basis.hpp"
#include "qdm/types.hpp"

namespace qdm {

namespace tolerance {
inline constexpr double hamiltonian_hermiticity = 1e-12;  // μeV
inline constexpr double state_hermiticity = 1e-10;
inline constexpr double state_trace = 1e-8;
inline constexpr double positivity = 1e-8;
inline constexpr double unitarity = 1e-10;
inline constexpr double trace_preservation = 1e-10;  // μeV
}  // namespace tolerance

/// A square complex matrix tied to a labeled basis. Units depend on use:
/// μeV for Hamiltonians, sqrt(μeV) for collapse operators.
class OperatorMatrix {
 public:
  OperatorMatrix(ModelBasis basis, CMatrix entries);

  static OperatorMatrix zero(const ModelBasis& basis);
  static OperatorMatrix identity(const ModelBasis& basis);
  /// |row><col| by label.
  static OperatorMatrix outer(const ModelBasis& basis, std::string_view row, std::string_view col);

  const ModelBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return entries_; }
  Index dim() const { return entries_.rows(); }

  Complex operator()(Index i, Index j) const { return entries_(i, j); }
  Complex element(std::string_view row, std::string_view col) const;

  OperatorMatrix adjoint() const { return {basis_, entries_.adjoint()}; }
  double hermiticity_error() const { return qdm::hermiticity_error(entries_); }
  bool is_hermitian(double tol = tolerance::hamiltonian_hermiticity) const {
    return hermiticity_error() < tol;
  }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex s) {
    entries_ *= s;
    return *this;
  }

 private:
  ModelBasis basis_;
  CMatrix entries_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, OperatorMatrix a);

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (all within the tolerances above). Instances are immutable.
class DensityMatrix {
 public:
  /// Validates the invariants; throws InvalidStateError on violation.
  DensityMatrix(ModelBasis basis, CMatrix entries);

  static DensityMatrix pure(const ModelBasis& basis, const CVector& psi);
  static DensityMatrix basis_state(const ModelBasis& basis, std::string_view label);
  /// Equal-weight mixture of the labeled basis states.
  static DensityMatrix uniform_mixture(const ModelBasis& basis, const std::vector<std::string>& labels);
  /// Ginibre-distributed random mixed state, deterministic in the seed.
  static DensityMatrix random(const ModelBasis& basis, unsigned long long seed);
  /// Hermitizes and trace-normalizes before validating.
  static DensityMatrix normalized(const ModelBasis& basis, const CMatrix& entries);

  const ModelBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return entries_; }
  Index dim() const { return entries_.rows(); }

  double population(std::string_view label) const;
  RVector populations() const { return entries_.diagonal().real(); }
  double min_eigenvalue() const;

 private:
  ModelBasis basis_;
  CMatrix entries_;
};

/// Linear map on column-stacked density matrices, dimension d^2 x d^2.
class Superoperator {
 public:
  Superoperator(ModelBasis basis, CMatrix entries);

  static Superoperator zero(const ModelBasis& basis);
  static Superoperator identity(const ModelBasis& basis);

  const ModelBasis& basis() const { return basis_; }
  const CMatrix& matrix() const { return entries_; }
  Index state_dim() const { return basis_.dim(); }

  CMatrix apply(const CMatrix& rho) const;
  /// max |(L^dagger vec(I))_k|; zero for trace-preserving generators.
  double trace_preservation_error() const;

  Superoperator& operator+=(const Superoperator& other);

 private:
  ModelBasis basis_;
  CMatrix entries_;
};

Superoperator operator+(Superoperator a, const Superoperator& b);

/// A unitary whose columns are the target-basis states written in source
/// coordinates.
struct BasisChange {
  ModelBasis source;
  ModelBasis target;
  CMatrix columns;

  double unitarity_error() const;
};

/// Kronecker product of two single-dot operators on the product basis.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

/// U^dagger op U, relabeled to u.target. Throws UnitarityError if U is not
/// unitary within 1e-10.
OperatorMatrix change_basis(const OperatorMatrix& op, const BasisChange& u);
DensityMatrix change_basis(const DensityMatrix& rho, const BasisChange& u);

/// Inverse transform: U op U^dagger, from u.target back to u.source.
OperatorMatrix change_basis_inverse(const OperatorMatrix& op, const BasisChange& u);

/// Identity change of basis on `basis`.
BasisChange identity_change(const ModelBasis& basis);

/// Full9 -> Symmetric9 or Full16 -> Symmetric16, with
/// |S_ij> = (|ij> + |ji>)/sqrt2 and |A_ij> = (|ji> - |ij>)/sqrt2.
BasisChange symmetric_transform(const ModelBasis& full);

/// Picks the sub-block of `op` spanned by the labels of `target`.
OperatorMatrix restrict_to(const OperatorMatrix& op, const ModelBasis& target);
/// Places `op` into the larger `target` basis (matching labels), zero elsewhere.
OperatorMatrix embed_into(const OperatorMatrix& op, const ModelBasis& target);

/// rho -> L rho L^dagger - 1/2 {L^dagger L, rho}.
Superoperator lindblad_term(const OperatorMatrix& jump);

/// -i[H, .] as a superoperator.
Superoperator hamiltonian_term(const OperatorMatrix& hamiltonian);

}  // namespace qdm
