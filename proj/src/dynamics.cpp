#include "qdm/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>

#include "qdm/entanglement.hpp"
#include "qdm/errors.hpp"
#include "qdm/ode.hpp"
#include "qdm/physics/units.hpp"

namespace qdm::dynamics {

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("time grid is empty");
  if (grid.front() < 0) throw DomainError("time grid must start at t >= 0");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("time grid must be strictly ascending");
}

void check_basis(const DensityMatrix& rho, const Superoperator& L) {
  if (!(rho.basis() == L.basis())) throw BasisError("state and Liouvillian live on different bases");
}

CMatrix expm_internal(const CMatrix& l, double t) { return (l * Complex(t)).exp(); }

const std::vector<std::string>& kept_labels() {
  static const std::vector<std::string> keep{"00", "S01", "A01", "11", "S0s", "S1s"};
  return keep;
}

}  // namespace

Trajectory make_trajectory(const ModelBasis& basis, std::vector<double> times_ns,
                           const std::vector<CMatrix>& states) {
  Trajectory tr;
  tr.times_ns = std::move(times_ns);
  tr.states.reserve(states.size());
  for (const auto& m : states) {
    DensityMatrix rho(basis, hermitian_part(m));
    double c = 0.0, leak = 1.0;
    try {
      const auto q = project_to_qubits(rho);
      c = concurrence(q.rho);
      leak = q.leak;
    } catch (const EmptySubspaceError&) {
      // Nothing left in the qubit block; report zero entanglement.
    }
    tr.concurrence.push_back(c);
    tr.leak.push_back(leak);
    tr.populations.push_back(rho.populations());
    tr.states.push_back(std::move(rho));
  }
  return tr;
}

Trajectory evolve(const DensityMatrix& rho0, const Superoperator& L, const std::vector<double>& t_grid_ns,
                  double rel_tol) {
  check_basis(rho0, L);
  check_grid(t_grid_ns);
  if (!(rel_tol > 0)) throw DomainError("rel_tol must be positive");
  const CMatrix& l = L.matrix();
  std::vector<double> grid(t_grid_ns.size());
  std::transform(t_grid_ns.begin(), t_grid_ns.end(), grid.begin(), units::ns_to_internal);

  ode::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-4;
  auto rhs = [&l](double, const CVector& y) -> CVector { return l * y; };
  std::vector<CVector> raw;
  try {
    raw = ode::dopri5<Complex>(rhs, 0.0, CVector(vec(rho0.matrix())), grid, opt);
  } catch (const StiffnessError& e) {
    throw StiffnessError(e.what(), units::internal_to_ns(e.time_reached_ns()));
  }
  std::vector<CMatrix> states;
  states.reserve(raw.size());
  for (const auto& v : raw) states.push_back(unvec(v, rho0.dim()));
  return make_trajectory(rho0.basis(), t_grid_ns, states);
}

Superoperator propagator_expm(const Superoperator& L, double t_ns) {
  if (t_ns < 0) throw DomainError("propagation time must be non-negative");
  if (t_ns == 0) return Superoperator::identity(L.basis());
  return {L.basis(), expm_internal(L.matrix(), units::ns_to_internal(t_ns))};
}

Trajectory evolve_expm(const DensityMatrix& rho0, const Superoperator& L, const std::vector<double>& t_grid_ns) {
  check_basis(rho0, L);
  check_grid(t_grid_ns);
  CVector v = vec(rho0.matrix());
  std::vector<CMatrix> states;
  states.reserve(t_grid_ns.size());
  double t = 0.0, cached_dt = -1.0;
  CMatrix step;
  for (double target : t_grid_ns) {
    const double dt = target - t;
    if (dt > 0) {
      if (std::abs(dt - cached_dt) > 1e-12 * std::max(1.0, dt)) {
        step = expm_internal(L.matrix(), units::ns_to_internal(dt));
        cached_dt = dt;
      }
      v = step * v;
      t = target;
    }
    states.push_back(unvec(v, rho0.dim()));
  }
  return make_trajectory(rho0.basis(), t_grid_ns, states);
}

SteadyState steady_state_info(const Superoperator& L) {
  const Index d = L.state_dim();
  Eigen::ComplexEigenSolver<CMatrix> es(L.matrix());
  if (es.info() != Eigen::Success) throw DegenerateSteadyStateError("eigensolver failed", 0, 0.0);
  const CVector& lambda = es.eigenvalues();

  int null_count = 0;
  Index null_index = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) < null_tolerance) {
      ++null_count;
      null_index = k;
    } else {
      gap = std::min(gap, std::abs(lambda(k).real()));
    }
  }
  if (null_count != 1) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "Liouvillian has " << null_count << " eigenvalues within " << null_tolerance << " ueV of zero (gap "
        << gap << " ueV)";
    throw DegenerateSteadyStateError(msg.str(), null_count, gap);
  }

  auto finish = [&](const CVector& v) {
    CMatrix m = hermitian_part(unvec(v, d));
    const Complex tr = m.trace();
    if (std::abs(tr) < 1e-14) throw DegenerateSteadyStateError("null vector is traceless", 1, gap);
    return CMatrix(m / tr);
  };
  CMatrix rho = finish(es.eigenvectors().col(null_index));
  double residual = max_abs(L.matrix() * vec(rho));

  // Inverse iteration polishes a loose eigenvector.
  if (residual >= residual_tolerance) {
    Eigen::PartialPivLU<CMatrix> lu(L.matrix() - CMatrix::Identity(L.matrix().rows(), L.matrix().cols()) *
                                                     Complex(1e-12 * std::max(1.0, gap)));
    CVector v = vec(rho);
    for (int it = 0; it < 3 && residual >= residual_tolerance; ++it) {
      v = lu.solve(v);
      v /= v.norm();
      rho = finish(v);
      residual = max_abs(L.matrix() * vec(rho));
    }
  }
  return {DensityMatrix(L.basis(), rho), gap, residual};
}

double gap_time_ns(const Superoperator& L) {
  return units::internal_to_ns(1.0 / steady_state_info(L).gap);
}

double characteristic_time(const Superoperator& L, const DensityMatrix& rho0,
                           const CharacteristicTimeOptions& options) {
  const auto ss = steady_state_info(L);
  CharacteristicTimeOptions opt = options;
  if (opt.t_max_ns <= 0) opt.t_max_ns = 50.0 * units::internal_to_ns(1.0 / ss.gap);
  return characteristic_time(L, rho0, ss.rho, opt);
}

double characteristic_time(const Superoperator& L, const DensityMatrix& rho0, const DensityMatrix& steady,
                           const CharacteristicTimeOptions& opt) {
  check_basis(rho0, L);
  if (!(opt.epsilon > 0 && opt.epsilon < 1)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(opt.t_max_ns > 0)) throw DomainError("t_max must be positive");
  if (opt.grid_points < 2) throw DomainError("need at least two grid points");
  const Index d = rho0.dim();
  const CMatrix& ss = steady.matrix();
  auto distance = [&](const CVector& v) { return trace_distance(CMatrix(unvec(v, d)), ss); };

  const CVector v0 = vec(rho0.matrix());
  const double d0 = distance(v0);
  if (d0 < 1e-12) return 0.0;
  const double threshold = opt.epsilon * d0;

  const double dt = opt.t_max_ns / opt.grid_points;
  const CMatrix step = expm_internal(L.matrix(), units::ns_to_internal(dt));
  CVector prev = v0;
  for (int k = 1; k <= opt.grid_points; ++k) {
    CVector cur = step * prev;
    if (distance(cur) <= threshold) {
      // Bisection on [t_{k-1}, t_k], propagating from the left end.
      double lo = 0.0, hi = dt;
      const double t_left = (k - 1) * dt;
      while (hi - lo > opt.rel_precision * 0.1 * (t_left + hi)) {
        const double mid = 0.5 * (lo + hi);
        const CVector v = expm_internal(L.matrix(), units::ns_to_internal(mid)) * prev;
        (distance(v) <= threshold ? hi : lo) = mid;
      }
      return t_left + 0.5 * (lo + hi);
    }
    prev = std::move(cur);
  }
  throw TimeoutError("steady state not reached within " + std::to_string(opt.t_max_ns) + " ns");
}

double eliminated_population(const DensityMatrix& rho) {
  const auto kind = rho.basis().kind();
  if (kind == BasisKind::Full9 || kind == BasisKind::Full16)
    return eliminated_population(change_basis(rho, symmetric_transform(rho.basis())));
  double kept = 0.0;
  for (const auto& label : kept_labels())
    if (rho.basis().contains(label)) kept += rho.population(label);
  return std::max(0.0, 1.0 - kept);
}

double adiabatic_validity(const Superoperator& L_full, const DensityMatrix& rho0,
                          const std::vector<double>& t_grid_ns) {
  const auto tr = evolve_expm(rho0, L_full, t_grid_ns);
  double worst = 0.0;
  for (const auto& rho : tr.states) worst = std::max(worst, eliminated_population(rho));
  return worst;
}

std::vector<double> linear_grid(double start, double stop, int points) {
  if (points < 1) throw DomainError("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = start + (stop - start) * k / (points - 1);
  g.back() = stop;
  return g;
}

}  // namespace qdm::dynamics
