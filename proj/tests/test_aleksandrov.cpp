#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rfh/aleksandrov.hpp"
#include "rfh/errors.hpp"

using namespace rfh;
using namespace rfh::elliptic;

namespace {

constexpr double kTwoPi = 6.283185307179586;
using Complex = std::complex<double>;

Complex as_complex(Point p) { return {p.x, p.y}; }

// u(s, t) = s (1 + 0.3 sin 2 pi t) + 0.2 s^2 cos 4 pi t.
double cylinder_field(double s, double t) {
  return s * (1.0 + 0.3 * std::sin(kTwoPi * t)) + 0.2 * s * s * std::cos(2.0 * kTwoPi * t);
}
Complex cylinder_field_gradient(double s, double t) {
  const double ds = 1.0 + 0.3 * std::sin(kTwoPi * t) + 0.4 * s * std::cos(2.0 * kTwoPi * t);
  const double dt = 0.3 * kTwoPi * s * std::cos(kTwoPi * t) -
                    0.4 * kTwoPi * s * s * std::sin(2.0 * kTwoPi * t);
  return {ds, dt};
}

}  // namespace

TEST_SUITE("aleksandrov") {
  TEST_CASE("constant function has margin zero") {
    EllipticSample s;
    s.u = TrigField::constant(3.25);
    const auto r = check_aleksandrov(s, {});
    CHECK(r.f_minus_norm == 0.0);
    CHECK(std::abs(r.margin) <= 1e-12);
    CHECK(r.neumann_ok);
    CHECK(r.pass);
  }

  TEST_CASE("radial ramp has no negative source and peaks on the outer arc") {
    EllipticSample s;
    s.domain = {2.2, 0.9};
    s.ramp = 1.0;
    const auto r = check_aleksandrov(s, {});
    CHECK(r.f_minus_norm == 0.0);
    CHECK(r.sup_boundary == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(r.margin <= 1e-9);
    CHECK(r.margin >= -1e-6);
    CHECK(r.min_radial_derivative == doctest::Approx(1.0));
    CHECK(r.pass);
  }

  TEST_CASE("constant is d exp((|b|^2 + 1) / 4 pi)") {
    std::mt19937_64 rng(8);
    const auto s = random_sample(rng);
    REQUIRE(s);
    const auto r = check_aleksandrov(*s, {});
    CHECK(r.constant == doctest::Approx(r.diameter * std::exp((r.b_norm_squared + 1.0) / (2.0 * kTwoPi))));
    CHECK(r.diameter >= 2.0 * s->domain.outer_radius * std::sin(s->domain.half_angle) - 1e-12);
  }

  TEST_CASE("inner-arc violation is reported") {
    EllipticSample s;
    s.ramp = -0.5;
    const auto r = check_aleksandrov(s, {});
    CHECK_FALSE(r.neumann_ok);
    CHECK_FALSE(r.pass);
  }

  TEST_CASE("sector validation") {
    CHECK_THROWS_AS((AnnularSector{1.0, 0.5}.validate()), InputError);
    CHECK_THROWS_AS((AnnularSector{2.0, 3.5}.validate()), InputError);
    CHECK_NOTHROW((AnnularSector{2.0, 1.0}.validate()));
    const AnnularSector d{2.0, 1.0};
    CHECK(d.contains({1.5, 0.0}));
    CHECK_FALSE(d.contains({0.9, 0.0}));
    CHECK_FALSE(d.contains({0.0, 1.5}));
  }

  TEST_CASE("trigonometric field derivatives match finite differences") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
      const auto f = TrigField::random(rng, 3, 1.3, 1.0);
      const Point p{1.0 + 0.05 * t, -0.4 + 0.04 * t};
      const double h = 1e-4;
      auto v = [&](double x, double y) { return f.jet({x, y}).value; };
      const auto j = f.jet(p);
      CHECK(j.dx == doctest::Approx((v(p.x + h, p.y) - v(p.x - h, p.y)) / (2 * h)).epsilon(1e-6));
      CHECK(j.dy == doctest::Approx((v(p.x, p.y + h) - v(p.x, p.y - h)) / (2 * h)).epsilon(1e-6));
      const double lap =
          (v(p.x + h, p.y) + v(p.x - h, p.y) + v(p.x, p.y + h) + v(p.x, p.y - h) - 4 * v(p.x, p.y)) /
          (h * h);
      CHECK(std::abs(j.laplacian - lap) <= 1e-4 * (1.0 + std::abs(lap)));
      const TrigField::Row row(f, p.y);
      const auto rj = row.at(p.x);
      CHECK(std::abs(rj.value - j.value) <= 1e-12);
      CHECK(std::abs(rj.laplacian - j.laplacian) <= 1e-10);
    }
  }

  TEST_CASE("small battery") {
    const auto b = run_aleksandrov_battery(2, 8, {});
    CHECK(b.pass);
    CHECK(b.max_margin <= b.tolerance);
    CHECK(b.reports.size() + b.skipped == 8);
  }

  TEST_CASE("transport of constants and of the radial coordinate") {
    const auto one = sample_cylinder(0.1, 16, 128, [](double, double) { return 1.0; });
    const auto g1 = cylinder_annulus_transport(one, 1.0 / 64);
    std::size_t inside = 0;
    for (int i = 0; i < g1.size; ++i) {
      for (int j = 0; j < g1.size; ++j) {
        if (!g1.inside(i, j)) continue;
        ++inside;
        CHECK(std::abs(g1.at(i, j) - 1.0) <= 1e-14);
      }
    }
    CHECK(inside > 0);

    const auto s = sample_cylinder(0.1, 16, 128, [](double s, double) { return s; });
    const auto gs = cylinder_annulus_transport(s, 1.0 / 64);
    for (int i = 0; i < gs.size; ++i) {
      for (int j = 0; j < gs.size; ++j) {
        if (!gs.inside(i, j)) continue;
        const Point z = gs.point(i, j);
        CHECK(std::abs(gs.at(i, j) - std::log(std::hypot(z.x, z.y)) / kTwoPi) <= 1e-12);
      }
    }
  }

  TEST_CASE("gradient identity at 10^4 grid points") {
    const double length = 0.1;
    const double h = 1.0 / 256;
    const auto u = sample_cylinder(length, 64, 1024, cylinder_field);
    const auto g = cylinder_annulus_transport(u, h);
    std::vector<std::pair<int, int>> interior;
    for (int i = 1; i + 1 < g.size; ++i) {
      for (int j = 1; j + 1 < g.size; ++j) {
        if (g.inside(i, j) && g.inside(i + 1, j) && g.inside(i - 1, j) && g.inside(i, j + 1) &&
            g.inside(i, j - 1)) {
          interior.emplace_back(i, j);
        }
      }
    }
    REQUIRE(interior.size() > 10000);
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const auto [i, j] = interior[pick(rng)];
      const Point annulus_gradient{(g.at(i + 1, j) - g.at(i - 1, j)) / (2 * h),
                                   (g.at(i, j + 1) - g.at(i, j - 1)) / (2 * h)};
      const Point z = g.point(i, j);
      double s = 0.0;
      double t = 0.0;
      annulus_to_cylinder(z, s, t);
      const Complex exact = cylinder_field_gradient(s, t);
      const Complex got = as_complex(cylinder_gradient(z, annulus_gradient));
      worst = std::max(worst, std::abs(got - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-4);
  }

  TEST_CASE("drift and source rescalings") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
      const double r = 1.0 + 0.8 * (unit(rng) + 1.0) / 2.0;
      const double a = kTwoPi * unit(rng);
      const Point z{r * std::cos(a), r * std::sin(a)};
      const Point b{unit(rng), unit(rng)};
      const Point grad{unit(rng), unit(rng)};
      const Complex zc = as_complex(z);
      const Complex bt = as_complex(transported_drift(z, b));
      CHECK(std::abs(bt - zc * as_complex(b) / (kTwoPi * std::norm(zc))) <= 1e-15);
      // b~ . grad u~ = f~ whenever b . grad u = f.
      const Point cyl = cylinder_gradient(z, grad);
      const double f = b.x * cyl.x + b.y * cyl.y;
      const double lhs = bt.real() * grad.x + bt.imag() * grad.y;
      CHECK(std::abs(lhs - transported_source(z, f)) <= 1e-13);
    }
  }

  TEST_CASE("Laplacian rescales like the source") {
    // u = s^2 has cylinder Laplacian 2.
    auto u_tilde = [](double x, double y) {
      const double s = std::log(std::hypot(x, y)) / kTwoPi;
      return s * s;
    };
    const double h = 1e-3;
    for (double r : {1.1, 1.4, 1.8}) {
      for (double a : {0.3, 2.0, 4.5}) {
        const Point z{r * std::cos(a), r * std::sin(a)};
        const double lap = (u_tilde(z.x + h, z.y) + u_tilde(z.x - h, z.y) + u_tilde(z.x, z.y + h) +
                            u_tilde(z.x, z.y - h) - 4 * u_tilde(z.x, z.y)) /
                           (h * h);
        CHECK(lap == doctest::Approx(transported_source(z, 2.0)).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("norm equivalence") {
    for (double length : {0.05, 0.1, 0.2}) {
      const double c = norm_equivalence_constant(length);
      CHECK(c >= 1.0);
      const auto f = sample_cylinder(length, 32, 256, [](double s, double t) {
        return std::cos(kTwoPi * t) + 3.0 * s;
      });
      double cylinder = 0.0;
      for (int i = 0; i <= f.s_intervals; ++i) {
        const double weight = (i == 0 || i == f.s_intervals) ? 0.5 : 1.0;
        for (int j = 0; j < f.t_samples; ++j) cylinder += weight * f.at(i, j) * f.at(i, j);
      }
      cylinder = std::sqrt(cylinder * (length / f.s_intervals) / f.t_samples);
      const double h = 1.0 / 256;
      const auto g = cylinder_annulus_transport(f, h);
      double annulus = 0.0;
      for (int i = 0; i < g.size; ++i) {
        for (int j = 0; j < g.size; ++j) {
          if (!g.inside(i, j)) continue;
          const double v = transported_source(g.point(i, j), g.at(i, j));
          annulus += v * v * h * h;
        }
      }
      annulus = std::sqrt(annulus);
      CHECK(annulus <= c * cylinder);
      CHECK(cylinder <= c * annulus);
    }
  }
}
