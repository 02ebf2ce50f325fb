#include <doctest.h>

#include "oracles.hpp"
#include "qdm/dissipators.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/entanglement.hpp"
#include "qdm/errors.hpp"
#include "qdm/hamiltonians.hpp"
#include "qdm/ode.hpp"
#include "qdm/physics/units.hpp"
#include "qdm/scenarios.hpp"

using namespace qdm;
using namespace qdm::dynamics;

namespace {

Superoperator default_liouvillian(const physics::DriveParams& d = {}) {
  const auto b = ModelBasis::effective6();
  return dissipators::assemble_liouvillian(hamiltonians::build_effective_hamiltonian(d),
                                           dissipators::spontaneous_collapse_ops(d.gamma0, d.gamma1, b));
}

DensityMatrix mixed_start() {
  return DensityMatrix::uniform_mixture(ModelBasis::effective6(), {"00", "S01", "A01", "11"});
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("DOPRI5 on a scalar decay") {
    auto f = [](double, const RVector& y) -> RVector { return -0.5 * y; };
    RVector y0(1);
    y0 << 2.0;
    const auto out = ode::dopri5<double>(f, 0.0, y0, {1.0, 3.0, 10.0}, {});
    REQUIRE(out.size() == 3);
    CHECK(out[0](0) == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-9));
    CHECK(out[2](0) == doctest::Approx(2.0 * std::exp(-5.0)).epsilon(1e-9));
  }

  TEST_CASE("DOPRI5 reports step collapse") {
    // Finite-time blow-up of y' = y^2 at t = 1.
    auto f = [](double, const RVector& y) -> RVector { return y.cwiseProduct(y); };
    RVector y0(1);
    y0 << 1.0;
    CHECK_THROWS_AS(ode::dopri5<double>(f, 0.0, y0, {2.0}, {}), StiffnessError);
  }

  TEST_CASE("zero generator leaves the state alone") {
    const auto rho0 = DensityMatrix::random(ModelBasis::effective6(), 4);
    const auto tr = evolve(rho0, Superoperator::zero(rho0.basis()), {0.0, 1.0, 10.0});
    for (const auto& s : tr.states) CHECK(max_abs(s.matrix() - rho0.matrix()) < 1e-15);
  }

  TEST_CASE("grid validation") {
    const auto rho0 = mixed_start();
    const auto L = default_liouvillian();
    CHECK_THROWS_AS(evolve(rho0, L, {}), DomainError);
    CHECK_THROWS_AS(evolve(rho0, L, {0.0, 2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(evolve(rho0, L, {-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(evolve(DensityMatrix::basis_state(ModelBasis::effective8(), "00"), L, {0.0}), BasisError);
  }

  TEST_CASE("integrator agrees with the matrix exponential") {
    const auto L = default_liouvillian();
    const auto rho0 = mixed_start();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.1, 40.0);
    std::vector<double> times{3.0};
    for (int k = 0; k < 5; ++k) times.push_back(u(rng));
    std::sort(times.begin(), times.end());
    times.insert(times.begin(), 0.0);
    const auto tr = evolve(rho0, L, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const CMatrix exact = propagator_expm(L, times[k]).apply(rho0.matrix());
      CHECK(trace_distance(tr.states[k].matrix(), exact) < 1e-8);
    }
  }

  TEST_CASE("propagator identities") {
    const auto L = default_liouvillian();
    CHECK(max_abs(propagator_expm(L, 0.0).matrix() - Superoperator::identity(L.basis()).matrix()) == 0.0);
    const CMatrix p1 = propagator_expm(L, 1.7).matrix(), p2 = propagator_expm(L, 2.9).matrix();
    CHECK(max_abs(p1 * p2 - propagator_expm(L, 4.6).matrix()) < 1e-9);
    CHECK_THROWS_AS(propagator_expm(L, -1.0), DomainError);

    std::mt19937_64 rng(41);
    for (int k = 0; k < 5; ++k) {
      const CMatrix h = oracle::random_hermitian(6, rng);
      const CMatrix out = propagator_expm(L, 2.0).apply(h);
      CHECK(hermiticity_error(out) < 1e-12);
    }
  }

  TEST_CASE("expm stepping equals the integrator on a grid") {
    const auto L = default_liouvillian();
    const auto grid = linear_grid(0.0, 30.0, 31);
    const auto a = evolve(mixed_start(), L, grid);
    const auto b = evolve_expm(mixed_start(), L, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(trace_distance(a.states[k], b.states[k]) < 1e-8);
  }

  TEST_CASE("trajectory invariants") {
    const auto tr = evolve(mixed_start(), default_liouvillian(), linear_grid(0.0, 60.0, 121));
    for (std::size_t k = 0; k < tr.size(); ++k) {
      CHECK(std::abs(tr.populations[k].sum() - 1.0) < 1e-8);
      CHECK(tr.states[k].min_eigenvalue() >= -1e-8);
      CHECK(tr.concurrence[k] >= 0.0);
      CHECK(tr.concurrence[k] <= 1.0);
    }
  }

  TEST_CASE("steady state of the spontaneous protocol is the singlet") {
    const auto ss = steady_state_info(default_liouvillian());
    const auto singlet = DensityMatrix::basis_state(ModelBasis::effective6(), "A01");
    CHECK(trace_distance(ss.rho, singlet) < 1e-6);
    CHECK(ss.residual < 1e-9);
    CHECK(ss.gap > 0.0);
  }

  TEST_CASE("undriven system has no unique steady state") {
    physics::DriveParams d;
    d.omega = d.omega_m = 0.0;
    CHECK_THROWS_AS(steady_state(default_liouvillian(d)), DegenerateSteadyStateError);
  }

  TEST_CASE("steady state agrees with long-time integration") {
    const auto L = default_liouvillian();
    const auto tr = evolve(mixed_start(), L, {0.0, 200.0});
    CHECK(trace_distance(tr.states.back(), steady_state(L)) < 1e-6);
  }

  TEST_CASE("initial-state independence") {
    const auto L = default_liouvillian();
    std::vector<DensityMatrix> ends;
    for (unsigned long long seed : {101ull, 202ull, 303ull})
      ends.push_back(evolve(DensityMatrix::random(L.basis(), seed), L, {0.0, 200.0}).states.back());
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j) CHECK(trace_distance(ends[i], ends[j]) < 1e-6);
  }

  TEST_CASE("characteristic time") {
    const auto L = default_liouvillian();
    CHECK(characteristic_time(L, steady_state(L)) == 0.0);
    const double t0 = characteristic_time(L, mixed_start());
    CHECK(t0 > 2.75);
    CHECK(t0 < 8.25);

    // Stronger pumping shortens the best achievable T0 over the Raman coupling.
    auto best = [](double omega) {
      double t = 1e300;
      for (double ratio = 0.1; ratio <= 1.0001; ratio += 0.05) {
        physics::DriveParams d;
        d.omega = omega;
        d.omega_m = ratio * omega;
        t = std::min(t, characteristic_time(default_liouvillian(d), mixed_start()));
      }
      return t;
    };
    CHECK(best(40.0) <= best(10.0));

    CharacteristicTimeOptions tight;
    tight.t_max_ns = 0.5;
    CHECK_THROWS_AS(characteristic_time(L, mixed_start(), tight), TimeoutError);
    CharacteristicTimeOptions bad;
    bad.epsilon = 1.5;
    CHECK_THROWS_AS(characteristic_time(L, mixed_start(), bad), DomainError);
  }

  TEST_CASE("characteristic time matches its definition") {
    const auto L = default_liouvillian();
    const auto rho0 = mixed_start();
    const auto ss = steady_state(L);
    const double t0 = characteristic_time(L, rho0);
    const double d0 = trace_distance(rho0, ss);
    auto dist = [&](double t) { return trace_distance(propagator_expm(L, t).apply(rho0.matrix()), ss.matrix()); };
    const double eps = std::exp(-1.0);
    CHECK(dist(t0 * 1.01) <= eps * d0);
    CHECK(dist(t0 * 0.99) > eps * d0);
  }

  TEST_CASE("concurrence approaches the singlet monotonically after T0") {
    const auto L = default_liouvillian();
    const double t0 = characteristic_time(L, mixed_start());
    const auto tr = evolve(mixed_start(), L, linear_grid(t0, 100.0, 200));
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr.concurrence[k] >= tr.concurrence[k - 1] - 1e-12);
  }

  TEST_CASE("adiabatic validity on the full model") {
    auto cfg = scenarios::preset("fig3a_full9");
    const auto grid = linear_grid(0.0, 60.0, 121);
    const auto m = scenarios::build_model(cfg);
    CHECK(adiabatic_validity(m.L, m.rho0, grid) < 0.02);

    cfg.drive.omega = 0.0;
    const auto dark = scenarios::build_model(cfg);
    CHECK(adiabatic_validity(dark.L, dark.rho0, grid) < 1e-14);

    double prev = -1.0;
    for (double vf : {-200.0, -100.0, -40.0}) {
      auto c = scenarios::preset("fig3a_full9");
      c.coupling.V_F = vf;
      const auto mv = scenarios::build_model(c);
      const double v = adiabatic_validity(mv.L, mv.rho0, grid);
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("eliminated population") {
    const auto f9 = ModelBasis::full9();
    CHECK(eliminated_population(DensityMatrix::basis_state(f9, "ss")) == doctest::Approx(1.0));
    CHECK(eliminated_population(DensityMatrix::basis_state(f9, "00")) < 1e-15);
    const auto s9 = ModelBasis::symmetric9();
    CHECK(eliminated_population(DensityMatrix::uniform_mixture(s9, {"A0s", "S1s"})) == doctest::Approx(0.5));
  }

  TEST_CASE("linear grid") {
    const auto g = linear_grid(0.0, 60.0, 301);
    CHECK(g.size() == 301);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 60.0);
    CHECK(g[5] == doctest::Approx(1.0));
  }

  TEST_CASE("unit conversion") {
    CHECK(units::internal_to_ns(1.0 / 1.2) == doctest::Approx(0.5485).epsilon(1e-3));
    CHECK(units::ns_to_internal(units::internal_to_ns(3.7)) == doctest::Approx(3.7));
  }
}
