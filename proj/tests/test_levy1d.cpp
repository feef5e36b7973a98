#include <cmath>
#include <vector>

#include "doctest.h"
#include "levyparam/density1d.hpp"
#include "levyparam/gauss.hpp"
#include "levyparam/levy_component.hpp"

using namespace levyparam;

namespace {

// brute-force Pruitt function by direct atom summation
double h_atoms(const LevyComponent& c, double r) {
  double acc = 0.0;
  for (auto [rho, w] : c.atoms_above(1e-300)) {
    acc += w * std::min(1.0, rho * rho / (r * r));
    if (rho < 1e-12 * r) break;
  }
  return acc;
}

// trapezoid of an even function over a sinh-graded grid on [0, wmax]
template <class F>
double integrate_even(F&& f, double scale, double wmax, int n = 4000) {
  double tmax = std::asinh(wmax / scale);
  double prev_w = 0.0, prev_f = f(0.0), acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    double w = scale * std::sinh(tmax * i / n);
    double fw = f(w);
    acc += 0.5 * (fw + prev_f) * (w - prev_w);
    prev_w = w;
    prev_f = fw;
  }
  return 2.0 * acc;
}

const double kCauchyC = 1.0 / M_PI;  // psi(xi) = |xi| for alpha = 1

}  // namespace

TEST_CASE("pruitt_h closed form and discretized band") {
  auto s = LevyComponent::stable(1.0, 0.25);
  CHECK(s.pruitt_h(0.5) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.pruitt_h(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  auto d = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  double href = h_atoms(d, 0.1);
  CHECK(d.pruitt_h(0.1) == doctest::Approx(href).epsilon(1e-10));
  DiscreteBand band = discretized_stable_band(1.2, 1.0, 0.5);
  double v = d.pruitt_h(0.1) * std::pow(0.1, 1.2);
  CHECK(v >= band.B1 * (1 - 1e-9));
  CHECK(v <= band.B2 * (1 + 1e-9));
}

TEST_CASE("pruitt_K value, domination and the h identity") {
  auto s = LevyComponent::stable(1.0, 0.25);
  CHECK(s.pruitt_K(1.0) == doctest::Approx(0.5).epsilon(1e-12));

  auto d = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  for (double r : {0.03, 0.2, 1.0, 3.0}) {
    CHECK(s.pruitt_K(r) <= s.pruitt_h(r) * (1 + 1e-12));
    CHECK(d.pruitt_K(r) <= d.pruitt_h(r) * (1 + 1e-12));
  }

  // h(r) = 2 int_r^inf K(w)/w dw
  for (double r : {0.1, 1.0}) {
    double acc = 0.0, hi = r;
    for (int p = 0; p < 400; ++p) {
      double next = hi * 1.5;
      acc += gauss_panel([&](double w) { return s.pruitt_K(w) / w; }, hi, next, 16);
      hi = next;
      if (s.pruitt_h(hi) < 1e-14 * s.pruitt_h(r)) break;
    }
    CHECK(2.0 * acc == doctest::Approx(s.pruitt_h(r)).epsilon(1e-8));
  }
}

TEST_CASE("h_inverse: values, round trips, Lemma scaling constants") {
  auto s = LevyComponent::stable(1.0, 0.25);
  CHECK(s.h_inverse(2.0) == doctest::Approx(0.5).epsilon(1e-10));

  auto d = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  for (double r : {0.01, 0.1, 1.0}) {
    CHECK(d.h_inverse(d.pruitt_h(r)) == doctest::Approx(r).epsilon(1e-9));
    CHECK(s.h_inverse(s.pruitt_h(r)) == doctest::Approx(r).epsilon(1e-9));
  }

  // c1 u^{1/a} <= h^{-1}(1/u) <= c2 u^{1/b} with the lemma's explicit constants
  auto s15 = LevyComponent::stable(1.5, 1.0);
  const double tau = 1.0, a = 1.5, b = 1.5;
  double h1 = s15.h_at_1();
  double c1 = std::pow(1.0, 1.0 / a) * std::pow(std::min(h1, 1.0 / tau), 1.0 / a);
  double c2 = std::pow(1.0, 1.0 / b) * std::max(s15.h_inverse(1.0 / tau), 1.0) *
              std::pow(h1, 1.0 / b);
  for (int i = 0; i <= 40; ++i) {
    double u = std::pow(10.0, -4.0 + 4.0 * i / 40.0);
    double hi = s15.h_inverse(1.0 / u);
    CHECK(hi >= c1 * std::pow(u, 1.0 / a) * (1 - 1e-9));
    CHECK(hi <= c2 * std::pow(u, 1.0 / b) * (1 + 1e-9));
  }
}

TEST_CASE("weak scaling report") {
  std::vector<double> rg, lg;
  for (int i = 0; i <= 12; ++i) rg.push_back(std::pow(10.0, -2.0 + 2.0 * i / 12.0));
  for (int i = 0; i <= 10; ++i) lg.push_back(std::pow(10.0, -1.5 + 1.5 * i / 10.0));
  lg.back() = 1.0;
  rg.back() = 1.0;

  auto s = LevyComponent::stable(1.2, 1.0);
  WscReport rs = s.check_wsc(rg, lg);
  CHECK(rs.pass());
  CHECK(rs.min_ratio_alpha == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rs.max_ratio_beta == doctest::Approx(1.0).epsilon(1e-9));

  auto d = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  CHECK(d.check_wsc(rg, lg).pass());

  // x^{-1} e^x density near 0: log-divergent mass, h not power-bounded with
  // the (wrongly) declared unit constants
  auto bad_tail = [](double r) {
    if (r >= 1.0) return 0.0;
    double acc = 0.0, hi = 1.0;
    while (hi > r) {
      double lo = std::max(r, hi * 0.5);
      acc += gauss_panel([](double x) { return std::exp(x) / x; }, lo, hi, 16);
      hi = lo;
    }
    return acc;
  };
  auto bad = LevyComponent::custom(
      [](double x) { return x < 1.0 ? std::exp(x) / x : 0.0; }, bad_tail,
      LevyComponent::Scaling{1.0, 1.0, 1.0, 1.0});
  CHECK_FALSE(bad.check_wsc(rg, lg).pass());
}

TEST_CASE("psi: normalization, closed-form I(alpha), sandwich") {
  auto s = LevyComponent::stable(1.0, 0.25);
  CHECK(s.psi(0.0) == 0.0);
  CHECK(s.psi(1.0) == doctest::Approx(0.25 * M_PI).epsilon(1e-9));

  auto sn = LevyComponent::stable_normalized(1.5);
  CHECK(sn.psi(2.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-9));

  // I(alpha) = -2 Gamma(-alpha) cos(pi alpha / 2), alpha != 1
  for (double alpha : {0.7, 1.2, 1.5}) {
    auto c = LevyComponent::stable(alpha, 1.0);
    double I_impl = c.psi(1.0);
    double I_exact = -2.0 * std::tgamma(-alpha) * std::cos(M_PI * alpha / 2.0);
    CHECK(I_impl == doctest::Approx(I_exact).epsilon(1e-9));
  }

  for (const LevyComponent& c :
       {LevyComponent::stable(1.2, 0.7), LevyComponent::discretized_stable(1.2, 1.0, 0.5)}) {
    for (double xi : {1.0, 4.0, 16.0}) {
      CHECK(c.psi(xi) >= c.psi_lower_bound(xi, 1.0) * (1 - 1e-12));
      CHECK(c.psi(xi) <= c.psi_upper_bound(xi) * (1 + 1e-12));
    }
  }
}

TEST_CASE("custom measure agrees with the stable fast paths") {
  const double alpha = 1.3, c = 0.6;
  auto ref = LevyComponent::stable(alpha, c);
  auto cus = LevyComponent::custom(
      [=](double x) { return c * std::pow(x, -1.0 - alpha); },
      [=](double r) { return c / alpha * std::pow(r, -alpha); },
      LevyComponent::Scaling{alpha, alpha, 1.0, 1.0});
  for (double r : {0.05, 0.4, 2.0}) {
    CHECK(cus.pruitt_h(r) == doctest::Approx(ref.pruitt_h(r)).epsilon(1e-10));
    CHECK(cus.pruitt_K(r) == doctest::Approx(ref.pruitt_K(r)).epsilon(1e-10));
  }
  for (double xi : {0.5, 1.0, 7.0}) {
    CHECK(cus.psi(xi) == doctest::Approx(ref.psi(xi)).epsilon(1e-7));
    CHECK(cus.psi_truncated(xi, 0.8) ==
          doctest::Approx(ref.psi_truncated(xi, 0.8)).epsilon(1e-7));
  }
}

TEST_CASE("custom measure with non-integrable x^2 density fails loudly") {
  // h(1) is evaluated at construction, which is where the quadrature blows up
  CHECK_THROWS_AS(LevyComponent::custom(
                      [](double x) { return std::pow(x, -3.5); },
                      [](double r) { return std::pow(r, -2.5) / 2.5; },
                      LevyComponent::Scaling{1.9, 2.0, 0.5, 2.0}),
                  NumericsError);
}

TEST_CASE("truncation radius") {
  auto s = LevyComponent::stable(1.0, 0.25);  // h(r) = 1/r
  CHECK(s.truncation_radius(0.1, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.truncation_radius(0.1, 0.01) ==
        doctest::Approx(std::pow(100.0, -0.9)).epsilon(1e-10));
  double prev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double u = std::pow(10.0, -3.0 + 3.0 * i / 20.0);
    double R = s.truncation_radius(0.1, u);
    CHECK(R >= prev);
    prev = R;
  }
  CHECK_THROWS_AS(s.truncation_radius(0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(s.truncation_radius(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("truncated exponent sandwich (H2) and large-R limit") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  const double eps = 0.1;
  CHECK(s.psi_truncated(0.0, 1.0) == 0.0);
  for (double u : {1e-3, 1e-2, 0.1, 1.0}) {
    double R = s.truncation_radius(eps, u);
    for (double xi : {0.5, 1.0, 2.0, 8.0, 32.0}) {
      double pu = s.psi_truncated(xi, R), p = s.psi(xi);
      CHECK(pu <= p * (1 + 1e-12) + 1e-15);
      CHECK(pu >= p - 2.0 * std::pow(u, eps - 1.0) - 1e-12);
    }
  }
  CHECK(s.psi_truncated(1.0, 1e6) == doctest::Approx(s.psi(1.0)).epsilon(1e-5));

  auto d = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  for (double u : {1e-2, 0.5}) {
    double R = d.truncation_radius(eps, u);
    for (double xi : {0.5, 2.0, 32.0}) {
      CHECK(d.psi_truncated(xi, R) <= d.psi(xi) * (1 + 1e-12));
      CHECK(d.psi_truncated(xi, R) >= d.psi(xi) - 2.0 * std::pow(u, eps - 1.0) - 1e-12);
    }
  }
}

TEST_CASE("integrated exponent: sandwich and 2D brute-force oracle") {
  auto s = LevyComponent::stable(1.2, 0.7);
  const double eps = 0.15;
  CHECK(s.integrated_exponent(eps, 0.5, 0.0) == 0.0);
  for (double u : {0.05, 0.3, 1.0}) {
    for (double xi : {0.7, 3.0, 20.0}) {
      double v = s.integrated_exponent(eps, u, xi);
      CHECK(v <= u * s.psi(xi) * (1 + 1e-10));
      CHECK(v >= u * s.psi(xi) - 2.0 / eps * std::pow(u, eps) - 1e-12);
    }
  }

  // independent double quadrature over (r, x)
  const double u = 0.5, xi = 3.0, c = 0.7, alpha = 1.2;
  Quadrature rq = make_graded_rule(0.0, u, 80, 0.82, 16);
  double oracle = 0.0;
  for (size_t i = 0; i < rq.size(); ++i) {
    double R = s.h_inverse(std::pow(rq.x[i], eps - 1.0));
    double inner = gauss_geometric_to_zero(
        [&](double x) {
          double sn = std::sin(0.5 * xi * x);
          return 2.0 * sn * sn * c * std::pow(x, -1.0 - alpha);
        },
        R, 16, 1e-15, 400);
    oracle += rq.w[i] * 2.0 * inner;
  }
  CHECK(s.integrated_exponent(eps, u, xi) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("full density against the analytic Cauchy law") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  Density1D d1(s, 1.0, 0.1);
  CHECK(d1.gtilde(0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-8));
  Density1D d2(s, 2.0, 0.1);
  CHECK(d2.gtilde(2.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-8));
  // gtilde_u(w) = u / (pi (u^2 + w^2))
  for (double w : {0.0, 0.5, 3.0, 10.0}) {
    double exact = 2.0 / (M_PI * (4.0 + w * w));
    CHECK(d2.gtilde(w) == doctest::Approx(exact).epsilon(1e-7));
  }
}

TEST_CASE("truncated density: bracket at zero, evenness, normalization") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  const double eps = 0.05;
  Density1D d1(s, 1.0, eps);
  double g0 = d1.g(0.0), gt0 = d1.gtilde(0.0);
  CHECK(gt0 == doctest::Approx(1.0 / M_PI).epsilon(1e-8));
  CHECK(g0 >= gt0 * (1 - 1e-9));
  CHECK(g0 <= gt0 * std::exp(std::pow(1.0, eps) / eps) * (1 + 1e-9));

  CHECK(d1.g(0.3) == d1.g(-0.3));
  CHECK(d1.g(1.7) == d1.g(-1.7));

  for (double u : {0.3, 0.02}) {
    Density1D du(s, u, 0.1);
    double mass = integrate_even([&](double w) { return du.g(w); },
                                 s.h_inverse(1.0 / u), 40.0 * du.R());
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }

  auto disc = LevyComponent::discretized_stable(1.2, 1.0, 0.5);
  Density1D dd(disc, 0.5, 0.1);
  double mass = integrate_even([&](double w) { return dd.g(w); },
                               disc.h_inverse(1.0 / 0.5), 40.0 * dd.R());
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(dd.radius_roundtrip_defect() <= 1e-9);
}

TEST_CASE("g_u(0) lower bound with the explicit sub-constant") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  const double eps = 0.1, floor = std::exp(-2.0) / M_PI;
  for (int i = 0; i <= 12; ++i) {
    double u = std::pow(10.0, -3.0 + 3.0 * i / 12.0);
    Density1D d(s, u, eps);
    CHECK(d.g(0.0) * s.h_inverse(1.0 / u) >= floor);
  }
}

TEST_CASE("Lemma 4.6 triple: sup and L1 difference bounds") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  const double eps = 0.1;
  for (double u : {0.5, 0.125, 0.03125}) {
    Density1D d(s, u, eps);
    double g0 = d.g(0.0), gt0 = d.gtilde(0.0);
    double budget = 2.0 * std::pow(u, eps) / eps;
    CHECK(gt0 <= g0 * (1 + 1e-9));
    CHECK(g0 <= gt0 * std::exp(std::pow(u, eps) / eps) * (1 + 1e-9));
    double supdiff = 0.0;
    for (int i = 0; i <= 60; ++i) {
      double w = 40.0 * d.R() * i / 60.0;
      supdiff = std::max(supdiff, std::abs(d.g(w) - d.gtilde(w)));
    }
    CHECK(supdiff <= budget * g0);
    // L1 on [0, W] plus the analytic Cauchy mass beyond W (g is spent there)
    double W = std::max(40.0 * d.R(), 60.0 * u);
    double l1 = integrate_even([&](double w) { return std::abs(d.g(w) - d.gtilde(w)); },
                               s.h_inverse(1.0 / u), W, 4000);
    double cauchy_tail = 1.0 - 2.0 / M_PI * std::atan(W / u);
    CHECK(l1 + cauchy_tail + 1e-6 <= budget);
  }
}

TEST_CASE("second moment: lemma bound, oracle, monotonicity") {
  auto s = LevyComponent::stable(1.0, 0.25);
  const double eps = 0.1;
  for (double u : {0.01, 0.1, 1.0}) {
    double R = s.truncation_radius(eps, u);
    CHECK(s.second_moment(eps, u) <= R * R * std::pow(u, eps) * (1 + 1e-10));
  }

  // direct (r, x) double integral: int_0^u int_{|x|<=R_r} x^2 nu(dx) dr
  const double u = 1.0, c = 0.25;
  Quadrature rq = make_graded_rule(0.0, u, 80, 0.82, 16);
  double oracle = 0.0;
  for (size_t i = 0; i < rq.size(); ++i) {
    double R = s.h_inverse(std::pow(rq.x[i], eps - 1.0));
    oracle += rq.w[i] * 2.0 * (c * R);  // int_0^R x^2 c x^{-2} dx = c R
  }
  CHECK(s.second_moment(eps, u) == doctest::Approx(oracle).epsilon(1e-8));

  double prev = 0.0;
  for (int j = -10; j <= 0; ++j) {
    double m = s.second_moment(eps, std::pow(2.0, j));
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("generator: constant kill, x^2 moment, PDE residual") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  Density1D d(s, 0.2, 0.1);
  double zero = d.generator_apply([](double) { return 3.7; }, 0.4);
  CHECK(std::abs(zero) <= 1e-14);

  double R = d.R();
  double quad = d.generator_apply([](double x) { return x * x; }, 0.0);
  CHECK(quad == doctest::Approx(2.0 * s.x2_mass(R)).epsilon(1e-6));

  // |d_u g - K_u g| <= 1e-3 g(0)/u at w in {0, R, 4R}
  for (double u : {0.05, 0.2}) {
    Density1D du(s, u, 0.1);
    double h = 1e-4 * u;
    Density1D dp(s, u + h, 0.1), dm(s, u - h, 0.1);
    double scale = 1e-3 * du.g(0.0) / u;
    for (double w : {0.0, du.R(), 4.0 * du.R()}) {
      double dug = (dp.g(w) - dm.g(w)) / (2.0 * h);
      double Kg = du.generator_g(w);
      CHECK(std::abs(dug - Kg) <= scale);
    }
  }
}

TEST_CASE("g_du matches the finite difference in u") {
  auto s = LevyComponent::stable(1.2, 0.7);
  const double u = 0.3, h = 1e-5 * u;
  Density1D d(s, u, 0.1), dp(s, u + h, 0.1), dm(s, u - h, 0.1);
  for (double w : {0.0, 0.5 * d.R(), 3.0 * d.R()}) {
    double fd = (dp.g(w) - dm.g(w)) / (2.0 * h);
    CHECK(d.g_du(w) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("exponential tail shape of the truncated density") {
  auto s = LevyComponent::stable(1.0, kCauchyC);
  Density1D d(s, 0.2, 0.1);
  double R = d.R(), g0 = d.g(0.0);
  double C = -1e300;
  for (int i = 0; i <= 40; ++i) {
    double w = 2.0 * R * i / 40.0;
    C = std::max(C, std::log(std::abs(d.g(w)) / g0) + w / (8.0 * R));
  }
  for (int i = 0; i <= 120; ++i) {
    double w = 30.0 * R * i / 120.0;
    double val = std::log(std::abs(d.g(w)) / g0) + w / (8.0 * R);
    CHECK(val <= C + 0.5);
  }
}

TEST_CASE("derivatives in w match finite differences") {
  auto s = LevyComponent::stable(1.5, 0.4);
  Density1D d(s, 0.4, 0.12);
  double h = 1e-4 * d.R();
  for (double w : {0.1 * d.R(), d.R(), 5.0 * d.R()}) {
    double d1 = (d.g(w + h) - d.g(w - h)) / (2.0 * h);
    double d2 = (d.g(w + h) + d.g(w - h) - 2.0 * d.g(w)) / (h * h);
    CHECK(d.g(w, 1) == doctest::Approx(d1).epsilon(1e-5));
    CHECK(d.g(w, 2) == doctest::Approx(d2).epsilon(1e-3));
  }
}
