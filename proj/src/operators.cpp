#include "qdm/operators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qdm/errors.hpp"

namespace qdm {

namespace {

void require_same_basis(const ModelBasis& a, const ModelBasis& b, const char* where) {
  if (!(a == b))
    throw BasisError(std::string(where) + ": basis mismatch (" + std::string(to_string(a.kind())) +
                     " vs " + std::string(to_string(b.kind())) + ")");
}

}  // namespace

// --- OperatorMatrix ---------------------------------------------------------

OperatorMatrix::OperatorMatrix(ModelBasis basis, CMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw BasisError("operator matrix must be square");
  if (entries_.rows() != basis_.dim())
    throw BasisError("operator dimension " + std::to_string(entries_.rows()) +
                     " does not match basis dimension " + std::to_string(basis_.dim()));
}

OperatorMatrix OperatorMatrix::zero(const ModelBasis& basis) {
  return {basis, CMatrix::Zero(basis.dim(), basis.dim())};
}

OperatorMatrix OperatorMatrix::identity(const ModelBasis& basis) {
  return {basis, CMatrix::Identity(basis.dim(), basis.dim())};
}

OperatorMatrix OperatorMatrix::outer(const ModelBasis& basis, std::string_view row, std::string_view col) {
  CMatrix m = CMatrix::Zero(basis.dim(), basis.dim());
  m(basis.index_of(row), basis.index_of(col)) = 1.0;
  return {basis, std::move(m)};
}

Complex OperatorMatrix::element(std::string_view row, std::string_view col) const {
  return entries_(basis_.index_of(row), basis_.index_of(col));
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_basis(basis_, other.basis_, "operator +");
  entries_ += other.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_basis(basis_, other.basis_, "operator -");
  entries_ -= other.entries_;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a.basis(), b.basis(), "operator *");
  return {a.basis(), a.matrix() * b.matrix()};
}

OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(ModelBasis basis, CMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() != basis_.dim())
    throw BasisError("density matrix dimension does not match basis");
  const double herm = qdm::hermiticity_error(entries_);
  if (herm > tolerance::state_hermiticity)
    throw InvalidStateError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  const double trace_dev = std::abs(entries_.trace() - 1.0);
  if (trace_dev > tolerance::state_trace)
    throw InvalidStateError("density matrix trace deviates from 1 by " + std::to_string(trace_dev));
  const double lam = min_eigenvalue();
  if (lam < -tolerance::positivity)
    throw InvalidStateError("density matrix has negative eigenvalue " + std::to_string(lam));
}

DensityMatrix DensityMatrix::pure(const ModelBasis& basis, const CVector& psi) {
  if (psi.size() != basis.dim()) throw BasisError("state vector dimension does not match basis");
  const double n = psi.norm();
  if (n == 0) throw InvalidStateError("zero state vector");
  const CVector u = psi / n;
  return {basis, u * u.adjoint()};
}

DensityMatrix DensityMatrix::basis_state(const ModelBasis& basis, std::string_view label) {
  CVector psi = CVector::Zero(basis.dim());
  psi(basis.index_of(label)) = 1.0;
  return pure(basis, psi);
}

DensityMatrix DensityMatrix::uniform_mixture(const ModelBasis& basis,
                                             const std::vector<std::string>& labels) {
  if (labels.empty()) throw InvalidStateError("empty mixture");
  CMatrix m = CMatrix::Zero(basis.dim(), basis.dim());
  for (const auto& l : labels) {
    const Index i = basis.index_of(l);
    m(i, i) += 1.0 / static_cast<double>(labels.size());
  }
  return {basis, std::move(m)};
}

DensityMatrix DensityMatrix::random(const ModelBasis& basis, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index d = basis.dim();
  CMatrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return normalized(basis, rho);
}

DensityMatrix DensityMatrix::normalized(const ModelBasis& basis, const CMatrix& entries) {
  CMatrix m = hermitian_part(entries);
  const Complex tr = m.trace();
  if (std::abs(tr) == 0) throw InvalidStateError("cannot normalize a traceless matrix");
  m /= tr.real();
  return {basis, std::move(m)};
}

double DensityMatrix::population(std::string_view label) const {
  const Index i = basis_.index_of(label);
  return entries_(i, i).real();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// --- Superoperator ----------------------------------------------------------

Superoperator::Superoperator(ModelBasis basis, CMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  const Index n = basis_.dim() * basis_.dim();
  if (entries_.rows() != n || entries_.cols() != n)
    throw BasisError("superoperator must be d^2 x d^2 for its basis");
}

Superoperator Superoperator::zero(const ModelBasis& basis) {
  const Index n = basis.dim() * basis.dim();
  return {basis, CMatrix::Zero(n, n)};
}

Superoperator Superoperator::identity(const ModelBasis& basis) {
  const Index n = basis.dim() * basis.dim();
  return {basis, CMatrix::Identity(n, n)};
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
  if (rho.rows() != state_dim() || rho.cols() != state_dim())
    throw BasisError("superoperator applied to matrix of wrong dimension");
  const CVector out = entries_ * vec(rho);
  return unvec(out, state_dim());
}

double Superoperator::trace_preservation_error() const {
  const CVector id = vec(CMatrix::Identity(state_dim(), state_dim()));
  return max_abs(entries_.adjoint() * id);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  require_same_basis(basis_, other.basis_, "superoperator +");
  entries_ += other.entries_;
  return *this;
}

Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }

// --- basis changes ----------------------------------------------------------

double BasisChange::unitarity_error() const {
  const Index n = columns.cols();
  return max_abs(columns.adjoint() * columns - CMatrix::Identity(n, n));
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  ModelBasis basis = product_basis(a.basis(), b.basis());
  return {std::move(basis), kron(a.matrix(), b.matrix())};
}

namespace {

void check_change(const BasisChange& u) {
  if (u.columns.rows() != u.source.dim() || u.columns.cols() != u.target.dim())
    throw BasisError("basis change has wrong shape for its source/target bases");
  const double dev = u.unitarity_error();
  if (dev > tolerance::unitarity)
    throw UnitarityError("basis change is not unitary (max deviation " + std::to_string(dev) + ")", dev);
}

}  // namespace

OperatorMatrix change_basis(const OperatorMatrix& op, const BasisChange& u) {
  require_same_basis(op.basis(), u.source, "change_basis");
  check_change(u);
  return {u.target, u.columns.adjoint() * op.matrix() * u.columns};
}

DensityMatrix change_basis(const DensityMatrix& rho, const BasisChange& u) {
  require_same_basis(rho.basis(), u.source, "change_basis");
  check_change(u);
  return DensityMatrix::normalized(u.target, u.columns.adjoint() * rho.matrix() * u.columns);
}

OperatorMatrix change_basis_inverse(const OperatorMatrix& op, const BasisChange& u) {
  require_same_basis(op.basis(), u.target, "change_basis_inverse");
  check_change(u);
  return {u.source, u.columns * op.matrix() * u.columns.adjoint()};
}

BasisChange identity_change(const ModelBasis& basis) {
  return {basis, basis, CMatrix::Identity(basis.dim(), basis.dim())};
}

BasisChange symmetric_transform(const ModelBasis& full) {
  ModelBasis target = [&] {
    switch (full.kind()) {
      case BasisKind::Full9: return ModelBasis::symmetric9();
      case BasisKind::Full16: return ModelBasis::symmetric16();
      default: throw BasisError("symmetric transform needs a Full9 or Full16 basis");
    }
  }();
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix u = CMatrix::Zero(full.dim(), target.dim());
  for (Index k = 0; k < target.dim(); ++k) {
    const std::string& label = target.labels()[static_cast<std::size_t>(k)];
    if (label.size() == 2) {  // diagonal product state, e.g. "00", "ss"
      u(full.index_of(label), k) = 1.0;
      continue;
    }
    const std::string i(1, label[1]), j(1, label[2]);
    const Index ij = full.index_of(i + j), ji = full.index_of(j + i);
    if (label[0] == 'S') {
      u(ij, k) = r;
      u(ji, k) = r;
    } else {
      u(ji, k) = r;
      u(ij, k) = -r;
    }
  }
  return {full, std::move(target), std::move(u)};
}

OperatorMatrix restrict_to(const OperatorMatrix& op, const ModelBasis& target) {
  std::vector<Index> idx;
  idx.reserve(static_cast<std::size_t>(target.dim()));
  for (const auto& l : target.labels()) idx.push_back(op.basis().index_of(l));
  return {target, op.matrix()(idx, idx)};
}

OperatorMatrix embed_into(const OperatorMatrix& op, const ModelBasis& target) {
  std::vector<Index> idx;
  idx.reserve(static_cast<std::size_t>(op.dim()));
  for (const auto& l : op.basis().labels()) idx.push_back(target.index_of(l));
  CMatrix m = CMatrix::Zero(target.dim(), target.dim());
  m(idx, idx) = op.matrix();
  return {target, std::move(m)};
}

Superoperator lindblad_term(const OperatorMatrix& jump) {
  const Index d = jump.dim();
  const CMatrix& l = jump.matrix();
  const CMatrix ldl = l.adjoint() * l;
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix s = kron(l.conjugate(), l);
  s -= 0.5 * kron(id, ldl);
  s -= 0.5 * kron(ldl.transpose(), id);
  return {jump.basis(), std::move(s)};
}

Superoperator hamiltonian_term(const OperatorMatrix& hamiltonian) {
  const Index d = hamiltonian.dim();
  const CMatrix& h = hamiltonian.matrix();
  const CMatrix id = CMatrix::Identity(d, d);
  const Complex minus_i(0.0, -1.0);
  return {hamiltonian.basis(), minus_i * (kron(id, h) - kron(h.transpose(), id))};
}

}  // namespace qdm
