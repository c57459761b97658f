#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qotto/strokes.hpp"
#include "support/test_helpers.hpp"

using namespace qotto;

TEST_CASE("detailed balance rates") {
  const BathSpec bath{1.0, 0.7, 0.0};
  const double w = 1.3;
  CHECK(bath.k_down(w) - bath.k_up(w) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(bath.k_up(w) / bath.k_down(w) ==
        doctest::Approx(std::exp(-w)).epsilon(1e-14));
  const BathSpec cold{0.0, 0.7, 0.0};
  CHECK(cold.k_down(w) == doctest::Approx(0.7));
  CHECK(cold.k_up(w) == 0.0);
}

TEST_CASE("isochore propagator") {
  const BathSpec bath{0.0, 1.0, 0.0};
  SUBCASE("tau = 0 is the identity") {
    CHECK((isochore_propagator(bath, 1.0, 0.0).matrix -
           Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("long times equilibrate any state") {
    const AffineMap4 u = isochore_propagator({0.8, 1.0, 0.0}, 1.2, 60.0);
    const OscillatorState out =
        u.apply(test::random_physical_state(1.2));
    CHECK(out.energy ==
          doctest::Approx(equilibrium_energy(1.2, 0.8)).epsilon(1e-12));
    CHECK(out.lagrangian == doctest::Approx(0.0));
    CHECK(out.correlation == doctest::Approx(0.0));
  }
  SUBCASE("worked example at T = 0") {
    const AffineMap4 u = isochore_propagator(bath, 1.0, 1.0);
    const OscillatorState out = u.apply({2.0, 0.0, 0.0, 1.0});
    const double expect = 2.0 * std::exp(-1.0) + 0.5 * (1.0 - std::exp(-1.0));
    CHECK(out.energy == doctest::Approx(expect).epsilon(1e-14));
    CHECK(expect == doctest::Approx(1.0518192).epsilon(1e-6));
  }
  SUBCASE("contraction with spectral radius e^{-Gamma tau}") {
    const AffineMap4 u = isochore_propagator({2.0, 0.7, 0.0}, 1.5, 0.9);
    CHECK(spectral_radius(u.homogeneous()) ==
          doctest::Approx(std::exp(-0.7 * 0.9)).epsilon(1e-12));
    CHECK(u.matrix(3, 0) == 0.0);
    CHECK(u.matrix(3, 3) == 1.0);
  }
  SUBCASE("matches the exponential of the generator") {
    const BathSpec b2{1.7, 0.6, 0.0};
    const double w = 0.9, tau = 1.3;
    const Eigen::Matrix4d expm = (isochore_generator(b2, w) * tau).exp();
    CHECK((isochore_propagator(b2, w, tau).matrix - expm)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("squeezed isochore propagator") {
  SUBCASE("gamma = 0 reduces to the thermal isochore") {
    const BathSpec bath{1.1, 0.8, 0.0};
    CHECK((squeezed_isochore_propagator(bath, 1.0, 0.7).matrix -
           isochore_propagator(bath, 1.0, 0.7).matrix)
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  const BathSpec bath{0.9, 0.7, 0.35};
  const double w = 1.3;
  SUBCASE("stationary state solves the generator") {
    const AffineMap4 u = squeezed_isochore_propagator(bath, w, 80.0);
    const OscillatorState ss = u.apply(test::random_physical_state(w));
    const SqueezedTargets t = squeezed_targets(bath, w);
    const double g = bath.conductance;
    const double l_ss = g * g * t.l_target / (g * g + 4.0 * w * w);
    CHECK(ss.energy == doctest::Approx(t.h_target).epsilon(1e-10));
    CHECK(ss.lagrangian == doctest::Approx(l_ss).epsilon(1e-10));
    CHECK(ss.correlation == doctest::Approx(2.0 * w * l_ss / g).epsilon(1e-10));
  }
  SUBCASE("squeezed energy target exceeds the thermal one") {
    for (double g : {0.0, 0.2, 0.7, 1.5}) {
      const BathSpec b{0.9, 0.7, g};
      CHECK(squeezed_targets(b, w).h_target >=
            equilibrium_energy(w, 0.9) - 1e-14);
    }
  }
  SUBCASE("matches the exponential of the squeezed generator") {
    const double tau = 1.1;
    const Eigen::Matrix4d expm = (isochore_generator(bath, w) * tau).exp();
    CHECK((squeezed_isochore_propagator(bath, w, tau).matrix - expm)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("constant-mu adiabat propagator") {
  SUBCASE("equal endpoints give the identity") {
    const AffineMap4 u = adiabat_constmu_propagator(1.7, 1.7, -0.4);
    CHECK((u.matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("bad sign or zero mu is rejected") {
    CHECK_THROWS_AS(adiabat_constmu_propagator(2.0, 0.5, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(adiabat_constmu_propagator(2.0, 0.5, 0.3),
                    std::invalid_argument);
  }
  SUBCASE("frictionless quantization closes the map") {
    const Protocol p = frictionless_constmu(2.0, 0.5, 1);
    // 2 ln4 / sqrt(4 pi^2 + ln^2 4) and tau = 3/(2 |mu*|)
    CHECK(std::abs(p.mu) == doctest::Approx(0.4309075239324936).epsilon(1e-12));
    CHECK(p.duration == doctest::Approx(3.481025316780014).epsilon(1e-12));
    const AffineMap4 u = adiabat_constmu_propagator(2.0, 0.5, p.mu);
    CHECK(delta_f(u) < 1e-10);
    CHECK(delta_f(u) >= -1e-12);
    // diagonal map with scale omega_f/omega_i
    CHECK(u.matrix(0, 0) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(std::abs(u.matrix(0, 1)) < 1e-10);
    CHECK(std::abs(u.matrix(2, 1)) < 1e-10);
  }
  SUBCASE("mu -> +-infinity structurally approaches the sudden map") {
    for (double mu : {1e6, -1e6}) {
      const double wi = mu > 0 ? 0.5 : 2.0;
      const double wf = mu > 0 ? 2.0 : 0.5;
      const AffineMap4 u = adiabat_constmu_propagator(wi, wf, mu);
      const AffineMap4 s = sudden_propagator(wi, wf);
      CHECK((u.matrix - s.matrix).cwiseAbs().maxCoeff() < 1e-4);
    }
  }
  SUBCASE("exceptional point continuity within 1e-4") {
    const double wi = 1.0, wf = 3.0;
    const AffineMap4 at_ep = adiabat_constmu_propagator(wi, wf, 2.0);
    for (double mu : {2.0 - 1e-6, 2.0 + 1e-6}) {
      const AffineMap4 u = adiabat_constmu_propagator(wi, wf, mu);
      CHECK((u.matrix - at_ep.matrix).cwiseAbs().maxCoeff() < 1e-4);
    }
  }
  SUBCASE("generator eigenvalues cross from imaginary to real at |mu| = 2") {
    auto eigvals = [](double mu) {
      Eigen::Matrix3d k;
      k << 0, -mu, 0, -mu, 0, -2, 0, 2, 0;
      return Eigen::EigenSolver<Eigen::Matrix3d>(k).eigenvalues();
    };
    const auto below = eigvals(1.5);
    CHECK(below.real().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(below.imag().cwiseAbs().maxCoeff() ==
          doctest::Approx(std::sqrt(4.0 - 1.5 * 1.5)).epsilon(1e-10));
    const auto above = eigvals(2.5);
    CHECK(above.imag().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(above.real().cwiseAbs().maxCoeff() ==
          doctest::Approx(std::sqrt(2.5 * 2.5 - 4.0)).epsilon(1e-10));
    // triple degeneracy at the exceptional point
    CHECK(eigvals(2.0).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("sudden propagator") {
  SUBCASE("identity at equal frequencies") {
    CHECK((sudden_propagator(1.3, 1.3).matrix - Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("energy mixing for a 2 -> 1 jump") {
    const AffineMap4 u = sudden_propagator(2.0, 1.0);
    const OscillatorState out = u.apply(equilibrium_state(2.0, 1.5));
    CHECK(out.energy ==
          doctest::Approx(0.625 * equilibrium_energy(2.0, 1.5)).epsilon(1e-14));
    CHECK(delta_f(u) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(u.duration == 0.0);
  }
}

TEST_CASE("numeric adiabat propagator") {
  SUBCASE("constant-mu protocols match the analytic propagator to 1e-8") {
    for (const double mu : {-0.1, -0.8, 0.8, -3.0}) {
      const double wi = mu < 0 ? 2.0 : 0.5;
      const double wf = mu < 0 ? 0.5 : 2.0;
      const Protocol p = constant_mu_protocol(wi, wf, mu);
      const AffineMap4 num = adiabat_numeric_propagator(p, 1e-11);
      const AffineMap4 ana = adiabat_constmu_propagator(wi, wf, mu);
      CHECK((num.matrix - ana.matrix).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SUBCASE("chain of instantaneous jumps equals the sudden product") {
    const Protocol p = tabulated_protocol({{0, 2.0}, {0, 1.0}, {0, 0.5}});
    const AffineMap4 num = adiabat_numeric_propagator(p);
    const AffineMap4 ana =
        compose(sudden_propagator(1.0, 0.5), sudden_propagator(2.0, 1.0));
    CHECK((num.matrix - ana.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("casimir companion is conserved along random protocols") {
    for (int i = 0; i < 24; ++i) {
      const double wi = test::uniform(0.4, 3.0);
      const double wf = test::uniform(0.4, 3.0);
      if (std::abs(wi - wf) < 1e-3) continue;
      Protocol p;
      if (i % 2 == 0)
        p = linear_protocol(wi, wf, test::uniform(0.5, 4.0));
      else
        p = constant_mu_protocol(
            wi, wf, std::copysign(test::uniform(0.1, 1.9), wf - wi));
      const AffineMap4 u = adiabat_numeric_propagator(p, 1e-11);
      const OscillatorState in = test::random_physical_state(wi);
      const OscillatorState out = u.apply(in);
      CHECK(casimir_companion(out) ==
            doctest::Approx(casimir_companion(in)).epsilon(1e-9));
      CHECK(delta_f(u) >= -1e-12);
      // unitary strokes also preserve S_VN
      CHECK(entropies(out).s_vn ==
            doctest::Approx(entropies(in).s_vn).epsilon(1e-8));
      // homogeneous determinant carries the (wf/wi)^3 energy rescaling
      CHECK(u.homogeneous().determinant() ==
            doctest::Approx(std::pow(wf / wi, 3)).epsilon(1e-8));
    }
  }
}

TEST_CASE("noisy adiabat generator") {
  SUBCASE("zero noise reduces to the bare generator") {
    CHECK((adiabat_generator(1.3, -0.5, NoiseSpec{}) -
           adiabat_generator(1.3, -0.5, NoiseSpec{0.0, 0.0}))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("any noise produces friction") {
    const Protocol p = frictionless_constmu(2.0, 0.5, 1);
    CHECK(delta_f(adiabat_numeric_propagator(p, NoiseSpec{1e-3, 0.0}, 1e-10)) >
          0.0);
    CHECK(delta_f(adiabat_numeric_propagator(p, NoiseSpec{0.0, 1e-3}, 1e-10)) >
          0.0);
  }
  SUBCASE("amplitude noise heats at rate gamma_a omega^2 (H - L)") {
    const Eigen::Matrix4d g =
        adiabat_generator(1.5, 0.0, NoiseSpec{0.2, 0.0});
    const double na = 0.2 * 1.5 * 1.5;
    CHECK(g(0, 0) == doctest::Approx(na));
    CHECK(g(0, 1) == doctest::Approx(-na));
    CHECK(g(1, 0) == doctest::Approx(na));
    CHECK(g(1, 1) == doctest::Approx(-na));
    CHECK(g(2, 2) == doctest::Approx(0.0));
  }
  SUBCASE("phase noise damps the coherence rows") {
    const Eigen::Matrix4d g =
        adiabat_generator(1.5, 0.0, NoiseSpec{0.0, 0.1});
    const double np = 4.0 * 0.1 * 1.5 * 1.5;
    CHECK(g(0, 0) == doctest::Approx(0.0));
    CHECK(g(1, 1) == doctest::Approx(-np));
    CHECK(g(2, 2) == doctest::Approx(-np));
  }
}

TEST_CASE("magnus references") {
  SUBCASE("no noise gives the identity") {
    CHECK((magnus_amplitude_reference(0.0, 0.01, 1, 2.0).matrix -
           Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("phase reference is a symmetric cosh/-sinh block") {
    const AffineMap4 u = magnus_phase_reference(0.05, 0.01, 1, 2.0);
    CHECK(u.matrix(0, 0) == doctest::Approx(u.matrix(1, 1)));
    CHECK(u.matrix(0, 1) == doctest::Approx(u.matrix(1, 0)));
    CHECK(u.matrix(0, 0) * u.matrix(0, 0) - u.matrix(0, 1) * u.matrix(0, 1) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.matrix(0, 1) <= 0.0);
    CHECK(u.matrix(2, 2) == 1.0);
  }
}

TEST_CASE("q_star") {
  SUBCASE("constant frequency gives 1") {
    const Protocol p = linear_protocol(1.0, 1.0 + 1e-13, 2.0);
    CHECK(q_star(p) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("sudden 2 -> 1 gives 1.25") {
    const Protocol p = tabulated_protocol({{0, 2.0}, {0, 1.0}});
    CHECK(q_star(p) == doctest::Approx(1.25).epsilon(1e-12));
  }
  SUBCASE("slow ramps are adiabatic") {
    const Protocol p = constant_mu_protocol(1.0, 1.1, 1e-3);
    CHECK(q_star(p) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(q_star(p) - 1.0 < 1e-5);
  }
  SUBCASE("Q* = 1 + delta_f across protocol kinds") {
    const Protocol ps[] = {constant_mu_protocol(2.0, 0.5, -0.8),
                           linear_protocol(1.0, 2.5, 2.0),
                           ermakov_sta(2.0, 0.5, 10.0)};
    for (const Protocol& p : ps) {
      const double df = delta_f(adiabat_numeric_propagator(p, 1e-11));
      CHECK(q_star(p) == doctest::Approx(1.0 + df).epsilon(1e-7));
    }
  }
}

TEST_CASE("heat flux") {
  const BathSpec bath{2.0, 0.7, 0.0};
  SUBCASE("vanishes at equilibrium") {
    CHECK(heat_flux(bath, equilibrium_state(1.0, 2.0)) ==
          doctest::Approx(0.0));
  }
  SUBCASE("high-temperature transport is Newtonian") {
    const BathSpec hot{1000.0, 0.7, 0.0};
    const OscillatorState s = equilibrium_state(1.0, 800.0);
    const double newton = 0.7 * (1000.0 - internal_temperature(s));
    CHECK(heat_flux(hot, s) == doctest::Approx(newton).epsilon(1e-3));
  }
  SUBCASE("hotter medium loses heat") {
    CHECK(heat_flux(bath, equilibrium_state(1.0, 3.0)) < 0.0);
  }
}
