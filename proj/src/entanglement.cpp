#include "qdm/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qdm/errors.hpp"

namespace qdm {

namespace {

constexpr double kMinQubitWeight = 1e-6;

CMatrix sqrt_psd(const CMatrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  RVector lam = es.eigenvalues();
  const double lo = lam.minCoeff();
  if (lo < -tolerance::positivity)
    throw PositivityError(std::string(what) + " has negative eigenvalue " + std::to_string(lo), lo);
  lam = lam.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix qubit_isometry(const ModelBasis& basis) {
  CMatrix v = CMatrix::Zero(4, basis.dim());
  const auto i00 = basis.find("00");
  const auto i11 = basis.find("11");
  if (!i00 || !i11) throw BasisError("basis has no two-qubit subspace");
  v(0, *i00) = 1.0;
  v(3, *i11) = 1.0;
  if (auto i01 = basis.find("01"), i10 = basis.find("10"); i01 && i10) {
    v(1, *i01) = 1.0;
    v(2, *i10) = 1.0;
    return v;
  }
  const auto is = basis.find("S01");
  const auto ia = basis.find("A01");
  if (!is || !ia) throw BasisError("basis has no two-qubit subspace");
  // |01> = (|S01> - |A01>)/sqrt2, |10> = (|S01> + |A01>)/sqrt2
  const double r = 1.0 / std::sqrt(2.0);
  v(1, *is) = r;
  v(1, *ia) = -r;
  v(2, *is) = r;
  v(2, *ia) = r;
  return v;
}

QubitProjection project_to_qubits(const DensityMatrix& rho) {
  const CMatrix v = qubit_isometry(rho.basis());
  CMatrix block = v * rho.matrix() * v.adjoint();
  const double weight = block.trace().real();
  if (weight < kMinQubitWeight)
    throw EmptySubspaceError("qubit subspace carries weight " + std::to_string(weight) +
                                 "; state is almost entirely trion",
                             weight);
  block = hermitian_part(block) / weight;
  return {DensityMatrix(ModelBasis::two_qubit(), std::move(block)), std::clamp(1.0 - weight, 0.0, 1.0)};
}

double concurrence(const DensityMatrix& rho2) {
  if (rho2.dim() != 4) throw BasisError("concurrence needs a two-qubit state");
  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix& rho = rho2.matrix();
  // The Wootters lambdas are the singular values of sqrt(rho) YY sqrt(rho)*.
  // This avoids square roots of near-zero eigenvalues.
  const CMatrix s = sqrt_psd(rho, "two-qubit state");
  const CMatrix x = s * yy * s.conjugate();
  Eigen::JacobiSVD<CMatrix> svd(x);
  const RVector sv = svd.singularValues();
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = sv(i);
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double trace_distance(const CMatrix& rho1, const CMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw BasisError("trace distance of matrices with different shapes");
  // Hermitian difference: singular values are |eigenvalues|.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho1 - rho2), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (!(rho1.basis() == rho2.basis())) throw BasisError("trace distance across different bases");
  return trace_distance(rho1.matrix(), rho2.matrix());
}

}  // namespace qdm
