#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qotto/protocols.hpp"
#include "qotto/strokes.hpp"
#include "support/test_helpers.hpp"

using namespace qotto;

TEST_CASE("protocol endpoint identities") {
  const Protocol ps[] = {constant_mu_protocol(2.0, 0.5, -0.8),
                         linear_protocol(0.7, 2.2, 3.0),
                         ermakov_sta(2.0, 0.5, 10.0),
                         frictionless_constmu(0.5, 2.0, 3)};
  for (const Protocol& p : ps) {
    CHECK(p.sample(0.0).omega == doctest::Approx(p.omega_start).epsilon(1e-12));
    CHECK(p.sample(p.duration).omega ==
          doctest::Approx(p.omega_end).epsilon(1e-9));
    for (int i = 0; i <= 50; ++i)
      CHECK(p.sample(p.duration * i / 50).omega > 0.0);
  }
  CHECK_THROWS_AS(constant_mu_protocol(2.0, 0.5, -0.8).sample(-0.1),
                  std::invalid_argument);
}

TEST_CASE("frictionless constant-mu design") {
  SUBCASE("quantization numbers close the loop") {
    for (int l = 1; l <= 5; ++l) {
      const Protocol p = frictionless_constmu(2.0, 0.5, l);
      // Omega * theta over the stroke equals 2 pi l exactly
      const double theta = std::log(0.25) / p.mu;
      const double omega_big = std::sqrt(4.0 - p.mu * p.mu);
      CHECK(omega_big * theta == doctest::Approx(2.0 * M_PI * l).epsilon(1e-12));
      CHECK(delta_f(adiabat_constmu_propagator(2.0, 0.5, p.mu)) < 1e-10);
    }
  }
  SUBCASE("large l approaches the adiabatic limit") {
    const Protocol p = frictionless_constmu(2.0, 0.5, 200);
    CHECK(std::abs(p.mu) < 5e-3);
    CHECK(p.duration > 300.0);
  }
  SUBCASE("sampled mu is constant") {
    const Protocol p = frictionless_constmu(2.0, 0.5, 1);
    for (int i = 0; i <= 40; ++i)
      CHECK(p.sample(p.duration * i / 40).mu ==
            doctest::Approx(p.mu).epsilon(1e-12));
  }
  CHECK_THROWS_AS(frictionless_constmu(1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("ermakov shortcut") {
  SUBCASE("equal endpoints give a constant frequency") {
    const Protocol p = ermakov_sta(1.5, 1.5, 2.0);
    for (int i = 0; i <= 20; ++i)
      CHECK(p.sample(2.0 * i / 20).omega == doctest::Approx(1.5).epsilon(1e-12));
  }
  SUBCASE("boundary conditions hold to 1e-12") {
    const Protocol p = ermakov_sta(2.0, 0.5, 10.0);
    CHECK(p.sample(0.0).omega == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.sample(10.0).omega == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("propagator is frictionless and conserves N") {
    const Protocol p = ermakov_sta(2.0, 0.5, 10.0);
    const AffineMap4 u = adiabat_numeric_propagator(p, 1e-11);
    CHECK(delta_f(u) < 1e-8);
    const OscillatorState in = equilibrium_state(2.0, 1.0);
    const OscillatorState out = u.apply(in);
    CHECK(out.energy / out.frequency ==
          doctest::Approx(in.energy / in.frequency).epsilon(1e-8));
  }
  SUBCASE("ermakov residual vanishes on a dense grid") {
    // b'' + omega^2 b = wi^2/b^3 with b rebuilt independently from the known
    // quintic and omega taken from sample()
    const double tau = 6.0;
    const Protocol p = ermakov_sta(1.6, 0.9, tau);
    const double d = std::sqrt(1.6 / 0.9) - 1.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = tau * i / 400.0;
      const double s = t / tau;
      const double b =
          1.0 + d * (10 * std::pow(s, 3) - 15 * std::pow(s, 4) +
                     6 * std::pow(s, 5));
      const double d2b =
          d * (60 * s - 180 * s * s + 120 * s * s * s) / (tau * tau);
      const double w = p.sample(t).omega;
      const double residual = d2b + w * w * b - 1.6 * 1.6 / (b * b * b);
      CHECK(std::abs(residual) < 1e-8);
    }
  }
  SUBCASE("too-short durations are rejected with the violating time") {
    CHECK_THROWS_AS(ermakov_sta(2.0, 0.5, 0.2), InfeasibleProtocolError);
    try {
      ermakov_sta(2.0, 0.5, 0.2);
    } catch (const InfeasibleProtocolError& e) {
      CHECK(std::string(e.what()).find("t = ") != std::string::npos);
    }
  }
}

TEST_CASE("bang-bang minimal-time protocol") {
  SUBCASE("identity request gives a zero-duration protocol") {
    const Protocol p = bang_bang(1.0, 1.0, 0.5, 2.0, 1.0);
    CHECK(p.duration == 0.0);
  }
  SUBCASE("non-adiabatic target ratios are infeasible") {
    CHECK_THROWS_AS(bang_bang(2.0, 0.5, 0.5, 2.0, 0.5),
                    InfeasibleProtocolError);
  }
  SUBCASE("expansion at the engine bounds is frictionless") {
    const Protocol p = bang_bang(2.0, 0.5, 0.5, 2.0, 0.25);
    const AffineMap4 u = adiabat_numeric_propagator(p, 1e-11);
    CHECK(delta_f(u) < 1e-8);
    const OscillatorState out = u.apply(equilibrium_state(2.0, 1.0));
    CHECK(std::abs(out.lagrangian) < 1e-8 * out.energy);
    CHECK(std::abs(out.correlation) < 1e-8 * out.energy);
    CHECK(out.energy ==
          doctest::Approx(0.25 * equilibrium_energy(2.0, 1.0)).epsilon(1e-9));
    // faster than the l = 1 frictionless constant-mu schedule
    CHECK(p.duration < frictionless_constmu(2.0, 0.5, 1).duration);
  }
  SUBCASE("compression works too") {
    const Protocol p = bang_bang(0.5, 2.0, 0.5, 2.0, 4.0);
    CHECK(delta_f(adiabat_numeric_propagator(p, 1e-11)) < 1e-8);
  }
  SUBCASE("duration scales as 1/sqrt(omega_c omega_h)") {
    std::vector<double> lx, ly;
    for (double om_c : {0.2, 0.1, 0.05, 0.02}) {
      const double t = minimal_time_estimate(om_c, 2.0, TimeScheme::optimal);
      lx.push_back(std::log(om_c * 2.0));
      ly.push_back(std::log(t));
    }
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = int(lx.size());
    for (int i = 0; i < n; ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
  }
  SUBCASE("jump instants report infinite mu") {
    const Protocol p = bang_bang(2.0, 0.5, 0.5, 2.0, 0.25);
    CHECK(std::isinf(p.sample(0.0).mu));
    CHECK(p.sample(0.0).omega == doctest::Approx(p.holds[0].omega));
    CHECK(p.sample(p.holds[0].time / 2).mu == 0.0);
  }
}

TEST_CASE("minimal time estimates") {
  const double t_mu = minimal_time_estimate(0.5, 2.0, TimeScheme::constant_mu);
  CHECK(t_mu == doctest::Approx(3.481025316780014).epsilon(1e-12));
  const double t_opt = minimal_time_estimate(0.5, 2.0, TimeScheme::optimal);
  CHECK(t_opt < t_mu);
  // the l = 1 constant-mu time tends to the rotation half-period pi/omega_h
  // as the frequency window closes (one coherence loop is always needed)
  CHECK(minimal_time_estimate(1.999, 2.0, TimeScheme::constant_mu) ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-3));
}

TEST_CASE("protocol table round trip") {
  SUBCASE("bang-bang serializes losslessly") {
    const Protocol p = bang_bang(2.0, 0.5, 0.5, 2.0, 0.25);
    const Protocol q = from_table(to_table(p));
    const AffineMap4 up = adiabat_numeric_propagator(p, 1e-11);
    const AffineMap4 uq = adiabat_numeric_propagator(q, 1e-11);
    CHECK((up.matrix - uq.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("smooth protocols round trip within sampling accuracy") {
    const Protocol p = frictionless_constmu(2.0, 0.5, 1);
    const Protocol q = from_table(to_table(p, 400));
    CHECK(q.omega_start == doctest::Approx(2.0));
    CHECK(q.omega_end == doctest::Approx(0.5));
    CHECK(q.duration == doctest::Approx(p.duration).epsilon(1e-12));
    const AffineMap4 up = adiabat_numeric_propagator(p, 1e-10);
    const AffineMap4 uq = adiabat_numeric_propagator(q, 1e-10);
    CHECK((up.matrix - uq.matrix).cwiseAbs().maxCoeff() < 1e-3);
  }
  SUBCASE("malformed rows are rejected") {
    CHECK_THROWS_AS(from_table("0 1\nbroken row\n"), std::invalid_argument);
  }
}
