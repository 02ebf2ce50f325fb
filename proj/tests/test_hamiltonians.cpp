#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "qdm/errors.hpp"
#include "qdm/hamiltonians.hpp"

using namespace qdm;
using namespace qdm::hamiltonians;

namespace {

// Eigenvalues sorted by magnitude, keeping the `n` closest to zero, then
// sorted by value.
RVector lowest(const CMatrix& h, Index n) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> e(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(e.begin(), e.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  e.resize(static_cast<std::size_t>(n));
  std::sort(e.begin(), e.end());
  return Eigen::Map<RVector>(e.data(), n);
}

RVector sorted_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DriveParams resonant_drive(const CouplingParams& c) {
  DriveParams d;
  d.detuning = resonant_detuning(c);
  return d;
}

}  // namespace

TEST_SUITE("hamiltonians") {
  TEST_CASE("full Hamiltonian: zero parameters give zero") {
    DriveParams d;
    d.omega = d.omega_m = d.detuning = 0.0;
    CouplingParams c;
    c.V_F = c.V_xx = 0.0;
    CHECK(max_abs(build_full_hamiltonian(d, c).matrix()) == 0.0);
  }

  TEST_CASE("full Hamiltonian matrix elements") {
    DriveParams d;
    d.detuning = 137.0;
    const CouplingParams c;
    const auto h = build_full_hamiltonian(d, c);
    CHECK(h.element("1s", "s1") == Complex(c.V_F));
    CHECK(h.element("0s", "s0") == Complex(c.V_F));
    CHECK(h.element("ss", "ss") == Complex(c.V_xx + 2.0 * d.detuning));
    CHECK(h.element("1s", "0s") == Complex(d.omega_m));
    CHECK(h.element("11", "1s") == Complex(d.omega));
    CHECK(h.is_hermitian());
  }

  TEST_CASE("resonance condition removes the symmetric trion energies") {
    const CouplingParams c;
    const auto h = build_full_hamiltonian(resonant_drive(c), c);
    const auto hs = change_basis(h, symmetric_transform(h.basis()));
    CHECK(std::abs(hs.element("S0s", "S0s")) < 1e-12);
    CHECK(std::abs(hs.element("S1s", "S1s")) < 1e-12);
  }

  TEST_CASE("effective Hamiltonian structure") {
    const DriveParams d;
    const auto h = build_effective_hamiltonian(d);
    const Index a = h.basis().index_of("A01");
    CHECK(max_abs(h.matrix().row(a)) == 0.0);
    CHECK(max_abs(h.matrix().col(a)) == 0.0);
    CHECK(max_abs(h.matrix().diagonal()) == 0.0);
    CHECK(h.element("11", "S1s") == Complex(std::sqrt(2.0) * d.omega));
    CHECK(h.element("S01", "S0s") == Complex(d.omega));
    CHECK(h.element("S0s", "S1s") == Complex(d.omega_m));
    CHECK(h.element("00", "S01") == Complex(std::sqrt(2.0) * d.omega_m));
    CHECK(h.element("S01", "11") == Complex(std::sqrt(2.0) * d.omega_m));
    int nonzero = 0;
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 6; ++j) nonzero += h(i, j) != 0.0;
    CHECK(nonzero == 10);

    DriveParams off;
    off.omega = off.omega_m = 0.0;
    CHECK(max_abs(build_effective_hamiltonian(off).matrix()) == 0.0);
  }

  TEST_CASE("Full9 low-energy spectrum matches Effective6") {
    const CouplingParams c;
    const auto d = resonant_drive(c);
    const RVector full = lowest(build_full_hamiltonian(d, c).matrix(), 6);
    const RVector eff = sorted_eigenvalues(build_effective_hamiltonian(d).matrix());
    CHECK((full - eff).cwiseAbs().maxCoeff() < 3.0);
  }

  TEST_CASE("tunneling Hamiltonian") {
    CouplingParams c;
    c.t_e = 0.0;
    const auto h0 = build_tunneling_hamiltonian(c);
    const auto& b = h0.basis();
    for (Index i = 0; i < b.dim(); ++i)
      for (Index j = 0; j < b.dim(); ++j) {
        const bool ti = b.labels()[i].find('t') != std::string::npos;
        const bool tj = b.labels()[j].find('t') != std::string::npos;
        if (ti != tj) CHECK(h0(i, j) == 0.0);
      }

    c.t_e = 1234.0;
    const auto h = build_tunneling_hamiltonian(c);
    CHECK(h.element("0s", "0t") == Complex(c.t_e));
    CHECK(h.element("s1", "t1") == Complex(c.t_e));
    CHECK(h.is_hermitian());

    // {s, t} block of one dot against the 2x2 closed form.
    const double ws = 0.0, wt = c.omega_t();
    Eigen::Matrix2cd blk;
    blk << h.element("s0", "s0"), h.element("s0", "t0"), h.element("t0", "s0"), h.element("t0", "t0");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
    const double root = std::sqrt((ws - wt) * (ws - wt) + 4.0 * c.t_e * c.t_e);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.5 * (ws + wt - root)).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.5 * (ws + wt + root)).epsilon(1e-12));
  }

  TEST_CASE("Full16 with t_e = 0 embeds Full9") {
    CouplingParams c;
    c.t_e = 0.0;
    const auto d = resonant_drive(c);
    const auto h16 = build_full_tunneling_hamiltonian(d, c);
    const auto h9 = build_full_hamiltonian(d, c);
    CHECK(max_abs(restrict_to(h16, h9.basis()).matrix() - h9.matrix()) < 1e-12);
    for (const auto& row : h16.basis().labels())
      for (const auto& col : h16.basis().labels())
        if ((row.find('t') == std::string::npos) != (col.find('t') == std::string::npos))
          CHECK(h16.element(row, col) == 0.0);
  }

  TEST_CASE("dressed basis: closed-form cases") {
    const auto sym = dressed_basis(0.0, 500.0);
    CHECK(sym.theta == doctest::Approx(-std::numbers::pi / 4).epsilon(1e-14));
    CHECK(sym.E1 == doctest::Approx(500.0));
    CHECK(sym.E2 == doctest::Approx(-500.0));

    const auto weak = dressed_basis(20000.0, 1e-6);
    CHECK(std::abs(weak.theta) < 1e-9);
    CHECK(std::abs(weak.E1) < 1e-9);
    CHECK(weak.E2 == doctest::Approx(-20000.0));

    CHECK_THROWS_AS(dressed_basis(0.0, 0.0), DegenerateBasisError);
  }

  TEST_CASE("dressed energies against a dense eigensolver") {
    for (double delta : {-20000.0, 20000.0, 300.0}) {
      const double te = 2000.0;
      const auto info = dressed_basis(delta, te);
      Eigen::Matrix2d m;
      m << 0.0, te, te, -delta;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
      CHECK(std::abs(info.E1 - es.eigenvalues()(1)) < 1e-9);
      CHECK(std::abs(info.E2 - es.eigenvalues()(0)) < 1e-9);
      CHECK(info.E1 >= info.E2);
      CHECK(info.theta <= 0.0);
      CHECK(info.theta > -std::numbers::pi / 2);

      // Rotated single-dot block is diag(E1, E2).
      Eigen::Matrix2d u;
      u << std::cos(info.theta), std::sin(info.theta), -std::sin(info.theta), std::cos(info.theta);
      const Eigen::Matrix2d rot = u.transpose() * m * u;
      CHECK(std::abs(rot(0, 0) - info.E1) < 1e-9);
      CHECK(std::abs(rot(1, 1) - info.E2) < 1e-9);
      CHECK(std::abs(rot(0, 1)) < 1e-9);
      CHECK(info.U.unitarity_error() < 1e-12);
    }
  }

  TEST_CASE("dressed roots over random inputs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-30000.0, 30000.0), t(0.0, 3000.0);
    for (int k = 0; k < 100; ++k) {
      const double delta = u(rng), te = t(rng);
      const auto info = dressed_basis(delta, te);
      CHECK(std::abs(info.E1 + info.E2 + delta) < 1e-9);
      CHECK(std::abs(info.E1 * info.E2 + te * te) < 1e-9 * std::max(1.0, te * te));
    }
  }

  TEST_CASE("effective tunneling Hamiltonian reduces to Effective6 at t_e = 0") {
    const DriveParams d;
    const auto info = dressed_basis(20000.0, 0.0);
    const auto h6 = build_effective_hamiltonian(d);
    for (bool keep : {true, false}) {
      const auto h8 = build_effective_tunneling_hamiltonian(d, info, {.offresonant_dressed_states = keep});
      CHECK(max_abs(restrict_to(h8, h6.basis()).matrix() - h6.matrix()) < 1e-12);
      for (const char* t : {"S0t", "S1t"})
        for (const auto& other : h8.basis().labels())
          if (other != t) CHECK(h8.element(t, other) == 0.0);
    }
  }

  TEST_CASE("effective tunneling Hamiltonian structure") {
    const DriveParams d;
    const auto info = dressed_basis(0.0, 1500.0);
    const auto hd = build_dressed_hamiltonian(d, info);
    CHECK(std::abs(hd.element("S01", "psi1") - d.omega / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(hd.element("11", "psi3") - d.omega) < 1e-12);
    CHECK(hd.element("psi2", "psi2") == Complex(info.E2 - info.E1));
    const auto h8 = build_effective_tunneling_hamiltonian(d, info);
    CHECK(h8.is_hermitian());
    const Index a = h8.basis().index_of("A01");
    CHECK(max_abs(h8.matrix().col(a)) == 0.0);
    CHECK(max_abs(h8.matrix().row(a)) == 0.0);
    CHECK(dressed_drive_ok(d, info));
  }

  TEST_CASE("Effective8 spectrum against the Full16 rotating-frame block") {
    const CouplingParams c;
    const auto info = dressed_basis(c.delta, c.t_e);
    DriveParams d;
    d.detuning = resonant_detuning(c, info);
    const RVector full = lowest(build_full_tunneling_hamiltonian(d, c).matrix(), 6);
    const RVector eff = lowest(build_effective_tunneling_hamiltonian(d, info).matrix(), 6);
    CHECK((full - eff).cwiseAbs().maxCoeff() < 3.0);
  }

  TEST_CASE("every builder is Hermitian and keeps the singlet dark") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    for (int k = 0; k < 10; ++k) {
      DriveParams d;
      d.omega = u(rng);
      d.omega_m = u(rng);
      const CouplingParams c;
      const auto info = dressed_basis(c.delta, c.t_e);
      CHECK(build_full_hamiltonian(d, c).hermiticity_error() < 1e-12);
      CHECK(build_full_tunneling_hamiltonian(d, c).hermiticity_error() < 1e-12);
      const auto h6 = build_effective_hamiltonian(d);
      const auto h8 = build_effective_tunneling_hamiltonian(d, info);
      CHECK(h6.hermiticity_error() < 1e-12);
      CHECK(h8.hermiticity_error() < 1e-12);
      CHECK(max_abs(h6.matrix().col(2)) == 0.0);
      CHECK(max_abs(h8.matrix().col(2)) == 0.0);
    }
  }
}
