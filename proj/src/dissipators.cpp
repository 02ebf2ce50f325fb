#include "qdm/dissipators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qdm/errors.hpp"

namespace qdm::dissipators {

using physics::Parity;

void CollapseSet::add(OperatorMatrix op, std::string label) {
  if (!ops.empty() && !(ops.front().basis() == op.basis()))
    throw BasisError("collapse operators must share one basis");
  ops.push_back(std::move(op));
  labels.push_back(std::move(label));
}

void CollapseSet::append(const CollapseSet& other) {
  for (std::size_t k = 0; k < other.size(); ++k) add(other.ops[k], other.labels[k]);
}

CMatrix CollapseSet::decay_operator() const {
  if (ops.empty()) return {};
  CMatrix sum = CMatrix::Zero(ops.front().dim(), ops.front().dim());
  for (const auto& l : ops) sum += l.matrix().adjoint() * l.matrix();
  return sum;
}

namespace {

std::string phonon_label(double omega, char sign, const char* direction) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << "phonon(" << omega << ',' << sign << ',' << direction << ')';
  return os.str();
}

CollapseSet effective_collapse(double g0, double g1, const ModelBasis& b) {
  const double r = 1.0 / std::sqrt(2.0);
  auto out = [&](std::string_view row, std::string_view col) { return OperatorMatrix::outer(b, row, col); };
  CollapseSet set;
  set.add(std::sqrt(g0) * (out("00", "S0s") + Complex(r) * out("S01", "S1s")), "L1");
  set.add(-std::sqrt(g0 / 2.0) * out("A01", "S1s"), "L2");
  set.add(std::sqrt(g1) * (out("11", "S1s") + Complex(r) * out("S01", "S0s")), "L3");
  set.add(std::sqrt(g1 / 2.0) * out("A01", "S0s"), "L4");
  return set;
}

CollapseSet product_collapse(double g0, double g1, const ModelBasis& dot) {
  const auto id = OperatorMatrix::identity(dot);
  auto pair = [&](std::string_view ground) {
    const auto single = OperatorMatrix::outer(dot, ground, "s");
    return std::pair{tensor(single, id), tensor(id, single)};
  };
  const auto [a0, b0] = pair("0");
  const auto [a1, b1] = pair("1");
  CollapseSet set;
  set.add(std::sqrt(g0 / 2.0) * (a0 + b0), "L1");
  set.add(std::sqrt(g0 / 2.0) * (a0 - b0), "L2");
  set.add(std::sqrt(g1 / 2.0) * (a1 + b1), "L3");
  set.add(std::sqrt(g1 / 2.0) * (a1 - b1), "L4");
  return set;
}

ModelBasis full_for_symmetric(const ModelBasis& b) {
  return b.kind() == BasisKind::Symmetric9 ? ModelBasis::full9() : ModelBasis::full16();
}

OperatorMatrix product_occupation(const ModelBasis& dot, Parity parity) {
  const auto id = OperatorMatrix::identity(dot);
  const auto n = OperatorMatrix::outer(dot, "s", "s");
  return parity == Parity::plus ? tensor(n, id) + tensor(id, n) : tensor(n, id) - tensor(id, n);
}

}  // namespace

CollapseSet spontaneous_collapse_ops(double Gamma0, double Gamma1, const ModelBasis& basis) {
  if (Gamma0 < 0 || Gamma1 < 0) throw DomainError("decay rates must be non-negative");
  switch (basis.kind()) {
    case BasisKind::Full9: return product_collapse(Gamma0, Gamma1, ModelBasis::dot3());
    case BasisKind::Full16: return product_collapse(Gamma0, Gamma1, ModelBasis::dot4());
    case BasisKind::Symmetric9:
    case BasisKind::Symmetric16: {
      const auto full = full_for_symmetric(basis);
      const auto u = symmetric_transform(full);
      CollapseSet product = spontaneous_collapse_ops(Gamma0, Gamma1, full);
      CollapseSet set;
      for (std::size_t k = 0; k < product.size(); ++k)
        set.add(change_basis(product.ops[k], u), product.labels[k]);
      return set;
    }
    default:
      for (const char* label : {"00", "S01", "A01", "11", "S0s", "S1s"})
        if (!basis.contains(label))
          throw BasisError("basis " + std::string(to_string(basis.kind())) + " lacks label " + label);
      return effective_collapse(Gamma0, Gamma1, basis);
  }
}

OperatorMatrix exciton_occupation(const ModelBasis& basis, Parity parity) {
  switch (basis.kind()) {
    case BasisKind::Full9: return product_occupation(ModelBasis::dot3(), parity);
    case BasisKind::Full16: return product_occupation(ModelBasis::dot4(), parity);
    case BasisKind::Symmetric9:
    case BasisKind::Symmetric16: {
      const auto full = full_for_symmetric(basis);
      return change_basis(exciton_occupation(full, parity), symmetric_transform(full));
    }
    case BasisKind::Effective6:
      return restrict_to(exciton_occupation(ModelBasis::symmetric9(), parity), basis);
    case BasisKind::Effective8:
      return restrict_to(exciton_occupation(ModelBasis::symmetric16(), parity), basis);
    default:
      throw BasisError("no exciton occupation defined on " + std::string(to_string(basis.kind())));
  }
}

std::vector<PhononChannel> phonon_eigenoperators(const OperatorMatrix& H) {
  if (!H.is_hermitian()) throw DomainError("phonon eigenoperators need a Hermitian Hamiltonian");
  const auto& basis = H.basis();
  const CMatrix n_sym = exciton_occupation(basis, Parity::plus).matrix();
  const CMatrix n_asym = exciton_occupation(basis, Parity::minus).matrix();

  Eigen::SelfAdjointEigenSolver<CMatrix> es(H.matrix());
  const RVector& e = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();

  // Group ascending eigenvalues into degenerate clusters.
  struct Cluster {
    double energy;
    CMatrix projector;
  };
  std::vector<Cluster> clusters;
  for (Index k = 0; k < e.size();) {
    Index end = k + 1;
    while (end < e.size() && e(end) - e(end - 1) < eigenvalue_clustering) ++end;
    const CMatrix block = v.middleCols(k, end - k);
    clusters.push_back({e.segment(k, end - k).mean(), block * block.adjoint()});
    k = end;
  }

  // Secular sum: pairs sharing a Bohr frequency go into one channel.
  std::vector<PhononChannel> channels;
  for (std::size_t b = 0; b < clusters.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      const double omega = clusters[b].energy - clusters[a].energy;
      if (omega <= phonon_cutoff) continue;
      const CMatrix ps = clusters[a].projector * n_sym * clusters[b].projector;
      const CMatrix pa = clusters[a].projector * n_asym * clusters[b].projector;
      auto match = std::find_if(channels.begin(), channels.end(), [&](const PhononChannel& c) {
        return std::abs(c.omega - omega) < eigenvalue_clustering;
      });
      if (match == channels.end()) {
        channels.push_back({omega, OperatorMatrix(basis, ps), OperatorMatrix(basis, pa)});
      } else {
        match->P_sym += OperatorMatrix(basis, ps);
        match->P_asym += OperatorMatrix(basis, pa);
      }
    }
  }
  constexpr double negligible = 1e-12;
  std::erase_if(channels, [&](const PhononChannel& c) {
    return max_abs(c.P_sym.matrix()) < negligible && max_abs(c.P_asym.matrix()) < negligible;
  });
  std::sort(channels.begin(), channels.end(),
            [](const PhononChannel& x, const PhononChannel& y) { return x.omega < y.omega; });
  return channels;
}

CollapseSet phonon_dissipator(const OperatorMatrix& H, double T, const physics::DotGeometry& geom,
                              const physics::MaterialParams& material) {
  if (T < 0) throw DomainError("temperature must be non-negative");
  CollapseSet set;
  constexpr double negligible = 1e-12;
  for (const auto& ch : phonon_eigenoperators(H)) {
    const double n = physics::bose_occupation(ch.omega, T);
    const double base = physics::angular_coupling(ch.omega, geom, material);
    const double phase = physics::phonon_wavenumber(ch.omega, material) * geom.d;
    const double s = physics::sinc(phase);
    const std::pair<const OperatorMatrix*, double> parts[] = {{&ch.P_sym, (1.0 + s) * base},
                                                              {&ch.P_asym, (1.0 - s) * base}};
    for (int k = 0; k < 2; ++k) {
      const auto& [p, J] = parts[k];
      if (max_abs(p->matrix()) < negligible || J <= 0) continue;
      const char sign = k == 0 ? '+' : '-';
      set.add(std::sqrt(J * (n + 1.0)) * *p, phonon_label(ch.omega, sign, "down"));
      if (n > 0) set.add(std::sqrt(J * n) * p->adjoint(), phonon_label(ch.omega, sign, "up"));
    }
  }
  return set;
}

Superoperator assemble_liouvillian(const OperatorMatrix& H, const CollapseSet& collapse) {
  Superoperator l = hamiltonian_term(H);
  for (const auto& op : collapse.ops) {
    if (!(op.basis() == H.basis())) throw BasisError("collapse operator basis differs from Hamiltonian");
    l += lindblad_term(op);
  }
  return l;
}

}  // namespace qdm::dissipators
