#include "qdm/validation.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qdm/dissipators.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/entanglement.hpp"
#include "qdm/hamiltonians.hpp"
#include "qdm/physics/couplings.hpp"
#include "qdm/physics/phonons.hpp"

namespace qdm::validation {

namespace {

using physics::CouplingParams;
using physics::DriveParams;

std::string sci(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// Value must stay below the bound.
CheckResult bounded(std::string name, double value, double bound) {
  return {std::move(name), value < bound, sci(value) + " < " + sci(bound)};
}

std::vector<CheckResult> hamiltonian_checks() {
  const DriveParams drive;
  CouplingParams coupling;
  const auto dressed = hamiltonians::dressed_basis(coupling.delta, coupling.t_e);
  std::vector<CheckResult> out;
  const std::pair<const char*, OperatorMatrix> builders[] = {
      {"hermitian full9", hamiltonians::build_full_hamiltonian(drive, coupling)},
      {"hermitian effective6", hamiltonians::build_effective_hamiltonian(drive)},
      {"hermitian full16", hamiltonians::build_full_tunneling_hamiltonian(drive, coupling)},
      {"hermitian effective8", hamiltonians::build_effective_tunneling_hamiltonian(drive, dressed)},
  };
  for (const auto& [name, h] : builders) out.push_back(bounded(name, h.hermiticity_error(), 1e-12));

  const auto h6 = hamiltonians::build_effective_hamiltonian(drive);
  const auto h8 = hamiltonians::build_effective_tunneling_hamiltonian(drive, dressed);
  out.push_back(bounded("dark state effective6", max_abs(h6.matrix().col(h6.basis().index_of("A01"))), 1e-300));
  out.push_back(bounded("dark state effective8", max_abs(h8.matrix().col(h8.basis().index_of("A01"))), 1e-300));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30000.0, 30000.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double delta = u(rng), te = std::abs(u(rng)) / 10.0;
    const auto info = hamiltonians::dressed_basis(delta, te);
    worst = std::max({worst, std::abs(info.E1 + info.E2 + delta), std::abs(info.E1 * info.E2 + te * te) / std::max(1.0, te * te)});
  }
  out.push_back(bounded("dressed roots", worst, 1e-9));
  out.push_back(bounded("dressed unitarity", dressed.U.unitarity_error(), 1e-12));
  return out;
}

std::vector<CheckResult> liouvillian_checks() {
  const DriveParams drive;
  const auto basis = ModelBasis::effective6();
  const auto h = hamiltonians::build_effective_hamiltonian(drive);
  const auto collapse = dissipators::spontaneous_collapse_ops(drive.gamma0, drive.gamma1, basis);
  const auto L = dissipators::assemble_liouvillian(h, collapse);
  std::vector<CheckResult> out;
  out.push_back(bounded("trace preservation", L.trace_preservation_error(), 1e-10));
  const auto dark = DensityMatrix::basis_state(basis, "A01");
  out.push_back(bounded("dark state fixed point", max_abs(L.apply(dark.matrix())), 1e-12));
  const auto ss = dynamics::steady_state_info(L);
  out.push_back(bounded("steady state is the singlet", trace_distance(ss.rho, dark), 1e-6));
  out.push_back(bounded("steady residual", ss.residual, 1e-9));

  const auto full = ModelBasis::full9();
  const auto Lf = dissipators::assemble_liouvillian(
      hamiltonians::build_full_hamiltonian(
          [&] {
            DriveParams d = drive;
            d.detuning = 200.0;
            return d;
          }(),
          CouplingParams{}),
      dissipators::spontaneous_collapse_ops(drive.gamma0, drive.gamma1, full));
  out.push_back(bounded("trace preservation full9", Lf.trace_preservation_error(), 1e-10));
  return out;
}

std::vector<CheckResult> observable_checks() {
  std::vector<CheckResult> out;
  const auto two = ModelBasis::two_qubit();
  double worst = 0.0;
  for (double p : {0.0, 1.0 / 3.0, 0.6, 1.0}) {
    CVector psi = CVector::Zero(4);
    psi(1) = -1.0 / std::sqrt(2.0);
    psi(2) = 1.0 / std::sqrt(2.0);
    const CMatrix w = p * psi * psi.adjoint() + (1.0 - p) / 4.0 * CMatrix::Identity(4, 4);
    const double c = concurrence(DensityMatrix(two, w));
    worst = std::max(worst, std::abs(c - std::max(0.0, (3.0 * p - 1.0) / 2.0)));
  }
  out.push_back(bounded("Werner concurrence", worst, 1e-10));

  const auto r1 = DensityMatrix::random(ModelBasis::effective6(), 1);
  const auto r2 = DensityMatrix::random(ModelBasis::effective6(), 2);
  out.push_back(bounded("trace distance symmetry", std::abs(trace_distance(r1, r2) - trace_distance(r2, r1)),
                        1e-12));

  const double x = 2.27;
  const double f = physics::forster_shape_F(x);
  out.push_back({"Forster shape finite", std::isfinite(f) && f > 0, sci(f)});
  const auto z = physics::zeeman_from_splittings(-27.78, -17.94);
  out.push_back(bounded("Zeeman sum", std::abs(std::abs(z.Delta_H) - 45.72), 1e-9));
  const double n = physics::bose_occupation(86.1733, 1.0);
  out.push_back(bounded("Bose occupation", std::abs(n - 1.0 / (std::exp(1.0) - 1.0)), 1e-4));
  return out;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  std::vector<CheckResult> all;
  const std::pair<const char*, std::function<std::vector<CheckResult>()>> groups[] = {
      {"hamiltonians", hamiltonian_checks},
      {"liouvillian", liouvillian_checks},
      {"observables", observable_checks},
  };
  for (const auto& [group, run] : groups) {
    try {
      for (auto& r : run()) all.push_back(std::move(r));
    } catch (const std::exception& e) {
      all.push_back({std::string(group), false, std::string("raised: ") + e.what()});
    }
  }
  return all;
}

}  // namespace qdm::validation
