#include "qdm/hamiltonians.hpp"

#include <cmath>
#include <numbers>

#include "qdm/errors.hpp"

namespace qdm::hamiltonians {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// a |row><col| + conj(a) |col><row|
void add_coupling(CMatrix& h, const ModelBasis& b, std::string_view row, std::string_view col, Complex a) {
  const Index i = b.index_of(row), j = b.index_of(col);
  h(i, j) += a;
  h(j, i) += std::conj(a);
}

OperatorMatrix single_dot(const ModelBasis& dot, const DriveParams& drive) {
  CMatrix h = CMatrix::Zero(dot.dim(), dot.dim());
  add_coupling(h, dot, "1", "s", drive.omega);
  add_coupling(h, dot, "0", "1", drive.omega_m);
  h(dot.index_of("s"), dot.index_of("s")) += drive.detuning;
  return {dot, std::move(h)};
}

OperatorMatrix two_dot_sum(const OperatorMatrix& single) {
  const auto id = OperatorMatrix::identity(single.basis());
  return tensor(single, id) + tensor(id, single);
}

void add_coulomb(CMatrix& h, const ModelBasis& full, const CouplingParams& coupling) {
  add_coupling(h, full, "1s", "s1", coupling.V_F);
  add_coupling(h, full, "0s", "s0", coupling.V_F);
  h(full.index_of("ss"), full.index_of("ss")) += coupling.V_xx;
}

}  // namespace

OperatorMatrix build_full_hamiltonian(const DriveParams& drive, const CouplingParams& coupling) {
  OperatorMatrix h = two_dot_sum(single_dot(ModelBasis::dot3(), drive));
  CMatrix m = h.matrix();
  add_coulomb(m, h.basis(), coupling);
  return {h.basis(), std::move(m)};
}

OperatorMatrix build_effective_hamiltonian(const DriveParams& drive) {
  const auto b = ModelBasis::effective6();
  CMatrix h = CMatrix::Zero(b.dim(), b.dim());
  add_coupling(h, b, "11", "S1s", kSqrt2 * drive.omega);
  add_coupling(h, b, "S01", "S0s", drive.omega);
  add_coupling(h, b, "S0s", "S1s", drive.omega_m);
  add_coupling(h, b, "00", "S01", kSqrt2 * drive.omega_m);
  add_coupling(h, b, "S01", "11", kSqrt2 * drive.omega_m);
  return {b, std::move(h)};
}

OperatorMatrix build_tunneling_hamiltonian(const CouplingParams& coupling, double frame_energy) {
  const auto dot = ModelBasis::dot4();
  CMatrix single = CMatrix::Zero(dot.dim(), dot.dim());
  single(dot.index_of("t"), dot.index_of("t")) = coupling.omega_t() - frame_energy;
  add_coupling(single, dot, "s", "t", coupling.t_e);
  return two_dot_sum(OperatorMatrix(dot, std::move(single)));
}

OperatorMatrix build_full_tunneling_hamiltonian(const DriveParams& drive, const CouplingParams& coupling) {
  const double laser = coupling.omega - drive.detuning;
  OperatorMatrix h = two_dot_sum(single_dot(ModelBasis::dot4(), drive));
  h += build_tunneling_hamiltonian(coupling, laser);
  CMatrix m = h.matrix();
  add_coulomb(m, h.basis(), coupling);
  return {h.basis(), std::move(m)};
}

DressedBasisInfo dressed_basis(double delta, double t_e) {
  if (delta == 0 && t_e == 0)
    throw DegenerateBasisError("dressed basis undefined for delta = t_e = 0");
  // arccot(delta / (2 t_e)) in (0, pi), written with atan2 so t_e = 0 is exact.
  const double arccot = t_e >= 0 ? std::atan2(2.0 * t_e, delta) : std::atan2(-2.0 * t_e, -delta);
  const double theta = -0.5 * arccot;
  const double root = std::sqrt(4.0 * t_e * t_e + delta * delta);
  // Take the root without cancellation, the other from E1 E2 = -t_e^2.
  double E1, E2;
  if (delta >= 0) {
    E2 = 0.5 * (-delta - root);
    E1 = -t_e * t_e / E2;
  } else {
    E1 = 0.5 * (-delta + root);
    E2 = -t_e * t_e / E1;
  }

  const auto source = ModelBasis::effective8();
  const auto target = ModelBasis::dressed8();
  const double c = std::cos(theta), s = std::sin(theta);
  CMatrix u = CMatrix::Zero(8, 8);
  for (Index i = 0; i < 4; ++i) u(i, i) = 1.0;
  const Index s0s = source.index_of("S0s"), s1s = source.index_of("S1s");
  const Index s0t = source.index_of("S0t"), s1t = source.index_of("S1t");
  const Index p1 = target.index_of("psi1"), p2 = target.index_of("psi2");
  const Index p3 = target.index_of("psi3"), p4 = target.index_of("psi4");
  u(s0s, p1) = c;
  u(s0t, p1) = -s;
  u(s0s, p2) = s;
  u(s0t, p2) = c;
  u(s1s, p3) = c;
  u(s1t, p3) = -s;
  u(s1s, p4) = s;
  u(s1t, p4) = c;
  return {theta, E1, E2, BasisChange{source, target, std::move(u)}};
}

double resonant_detuning(const CouplingParams& coupling) { return -coupling.V_F; }

double resonant_detuning(const CouplingParams& coupling, const DressedBasisInfo& dressed) {
  return -coupling.V_F - dressed.E1;
}

OperatorMatrix build_dressed_hamiltonian(const DriveParams& drive, const DressedBasisInfo& dressed,
                                         EffectiveTunnelingOptions options) {
  const auto b = ModelBasis::dressed8();
  CMatrix h = CMatrix::Zero(b.dim(), b.dim());
  const double c = std::cos(dressed.theta), s = std::sin(dressed.theta);

  add_coupling(h, b, "00", "S01", kSqrt2 * drive.omega_m);
  add_coupling(h, b, "S01", "11", kSqrt2 * drive.omega_m);
  add_coupling(h, b, "11", "psi3", kSqrt2 * drive.omega * c);
  add_coupling(h, b, "S01", "psi1", drive.omega * c);

  // Omega_m |S0s><S1s| with S0(1)s = cos(theta) psi1(3) + sin(theta) psi2(4).
  add_coupling(h, b, "psi1", "psi3", drive.omega_m * c * c);
  if (options.offresonant_dressed_states) {
    add_coupling(h, b, "psi1", "psi4", drive.omega_m * c * s);
    add_coupling(h, b, "psi2", "psi3", drive.omega_m * s * c);
    add_coupling(h, b, "psi2", "psi4", drive.omega_m * s * s);
    const double detuning = dressed.E2 - dressed.E1;
    h(b.index_of("psi2"), b.index_of("psi2")) += detuning;
    h(b.index_of("psi4"), b.index_of("psi4")) += detuning;
  }
  return {b, std::move(h)};
}

OperatorMatrix build_effective_tunneling_hamiltonian(const DriveParams& drive,
                                                     const DressedBasisInfo& dressed,
                                                     EffectiveTunnelingOptions options) {
  OperatorMatrix h = change_basis_inverse(build_dressed_hamiltonian(drive, dressed, options), dressed.U);
  // Restore exact Hermiticity after the rotation.
  return {h.basis(), hermitian_part(h.matrix())};
}

bool dressed_drive_ok(const DriveParams& drive, const DressedBasisInfo& dressed) {
  return drive.omega <= std::abs(dressed.E1 - dressed.E2) / 5.0;
}

}  // namespace qdm::hamiltonians
