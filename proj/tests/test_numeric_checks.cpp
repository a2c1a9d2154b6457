#include <doctest.h>

#include <cmath>
#include <random>

#include "rfh/errors.hpp"
#include "rfh/numeric_checks.hpp"

using namespace rfh;
using namespace rfh::numeric;

namespace {

DiscreteLoop straight_loop(int samples) {
  Matrix q = Matrix::Zero(samples, 2);
  Matrix p = Matrix::Zero(samples, 2);
  for (int j = 0; j < samples; ++j) {
    q(j, 0) = static_cast<double>(j) / samples;
    p(j, 0) = 1.0;
  }
  Vector w(2);
  w << 1.0, 0.0;
  return {q, w, p};
}

DiscreteLoop constant_loop(int samples, const Vector& point, const Vector& momentum) {
  Matrix q = point.transpose().replicate(samples, 1);
  Matrix p = momentum.transpose().replicate(samples, 1);
  return {q, Vector::Zero(point.size()), p};
}

// Sample-by-sample evaluation with explicit wrap-around indices.
double reference_action(const DiscreteLoop& x, double eta, const Matrix& g) {
  const int n = x.samples();
  const Matrix g_inv = g.inverse();
  double liouville = 0.0;
  double ham = 0.0;
  for (int j = 0; j < n; ++j) {
    Vector next = x.q().row((j + 1) % n).transpose();
    Vector prev = x.q().row((j + n - 1) % n).transpose();
    if (j == n - 1) next += x.winding();
    if (j == 0) prev -= x.winding();
    const Vector v = (next - prev) * (n / 2.0);
    const Vector p = x.p().row(j).transpose();
    liouville += p.dot(v);
    ham += 0.5 * (p.dot(g_inv * p) - 1.0);
  }
  return (liouville - eta * ham) / n;
}

QuadraticLagrangian kinetic(int n) {
  return QuadraticLagrangian(Matrix::Identity(n, n), std::vector<std::vector<TrigTerm>>(n), {});
}

}  // namespace

TEST_SUITE("numeric-checks") {
  TEST_CASE("action of constant and straight loops") {
    const auto g = FlatMetric::identity(2);
    Vector point(2);
    point << 0.3, 0.7;
    Vector momentum(2);
    momentum << 0.4, -1.1;
    CHECK(rabinowitz_action(constant_loop(16, point, momentum), 0.0, g) == 0.0);

    Vector unit(2);
    unit << 0.6, 0.8;
    for (double eta : {-3.0, 0.5, 7.0}) {
      CHECK(std::abs(rabinowitz_action(constant_loop(16, point, unit), eta, g)) <= 1e-15);
    }
    CHECK(rabinowitz_action(straight_loop(64), 1.0, g) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("action agrees with a sample-by-sample evaluation") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + t % 2;
      const auto metric = random_metric(rng, n);
      const auto x = random_loop(rng, n, 32 + 8 * (t % 5));
      const double eta = -2.0 + 0.1 * t;
      CHECK(std::abs(rabinowitz_action(x, eta, metric) - reference_action(x, eta, metric.g())) <=
            1e-12);
    }
  }

  TEST_CASE("loop and metric validation") {
    CHECK_THROWS_AS(DiscreteLoop(Matrix::Zero(7, 2), Vector::Zero(2), Matrix::Zero(7, 2)), InputError);
    CHECK_THROWS_AS(DiscreteLoop(Matrix::Zero(8, 2), Vector::Zero(2), Matrix::Zero(8, 3)), InputError);
    Matrix bad = Matrix::Zero(8, 2);
    bad(3, 1) = std::nan("");
    CHECK_THROWS_AS(DiscreteLoop(bad, Vector::Zero(2), Matrix::Zero(8, 2)), InputError);
    Matrix indefinite(2, 2);
    indefinite << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(FlatMetric{indefinite}, InputError);
    CHECK_THROWS_AS(QuadraticLagrangian(indefinite, std::vector<std::vector<TrigTerm>>(2), {}),
                    InputError);
  }

  TEST_CASE("levrel closed forms") {
    const auto g = FlatMetric::identity(2);
    auto x = straight_loop(64);
    const auto r = check_levrel(x, g);
    CHECK(std::abs(r.energy - 1.0) <= 1e-12);
    CHECK(std::abs(r.upper_action - 1.0) <= 1e-9);
    CHECK(std::abs(r.margin) <= 1e-9);

    const auto zero_p = x.with_momentum(Matrix::Zero(64, 2));
    const auto z = check_levrel(zero_p, g);
    CHECK(z.upper_action == doctest::Approx(z.root / 2.0).epsilon(1e-14));
    CHECK(z.margin >= 0.0);
  }

  TEST_CASE("sign flip is exact") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
      const auto metric = random_metric(rng, 2 + t % 2);
      const auto x = random_loop(rng, metric.dim(), 64);
      const double root = std::sqrt(loop_energy(x, metric));
      const auto flipped = x.with_momentum(-x.p());
      CHECK(rabinowitz_action(x, -root, metric) == -rabinowitz_action(flipped, root, metric));
    }
  }

  TEST_CASE("levrel equality witnesses are second-order accurate") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
      const auto metric = random_metric(rng, 2);
      const auto family = random_smooth_family(rng, 2);
      const double energy = family.energy(metric);
      if (energy < 1e-3) continue;
      const double root = std::sqrt(energy);
      double previous = 0.0;
      for (int samples : {32, 64, 128}) {
        const auto x = family.sample(samples, metric.g() / root);
        const double residual = std::abs(rabinowitz_action(x, root, metric) - root);
        if (samples > 32) {
          CAPTURE(samples);
          CHECK(previous / residual >= 3.0);
        }
        previous = residual;
      }
    }
  }

  TEST_CASE("levrel2 closed forms") {
    const auto l = kinetic(2);
    Vector point(2);
    point << 0.1, 0.2;
    const auto c = check_levrel2(constant_loop(16, point, Vector::Zero(2)), 1.0, l);
    CHECK(c.hamiltonian_action == 0.0);
    CHECK(c.lagrangian_action == 0.0);

    const auto s = check_levrel2(straight_loop(64), 1.0, l);
    CHECK(std::abs(s.hamiltonian_action - 0.5) <= 1e-9);
    CHECK(std::abs(s.lagrangian_action - 0.5) <= 1e-9);
    CHECK(s.margin >= -1e-9);
    CHECK_THROWS_AS(check_levrel2(straight_loop(64), 0.0, l), InputError);
  }

  TEST_CASE("levrel2 witnesses from the exact velocity converge") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
      const auto l = random_lagrangian(rng, 2);
      const auto family = random_smooth_family(rng, 2);
      const double period = 0.5 + 0.2 * t;
      double previous = 0.0;
      for (int samples : {32, 64, 128}) {
        const auto raw = family.sample(samples, Matrix::Identity(2, 2));
        Matrix p(samples, 2);
        for (int j = 0; j < samples; ++j) {
          p.row(j) = l.legendre(raw.q().row(j).transpose(), raw.p().row(j).transpose() / period)
                         .transpose();
        }
        const auto r = check_levrel2(raw.with_momentum(p), period, l);
        const double residual = std::abs(r.lagrangian_action - r.hamiltonian_action);
        if (samples > 32 && residual > 1e-13) {
          CAPTURE(samples);
          CHECK(previous / residual >= 3.0);
        }
        previous = residual;
      }
    }
  }

  TEST_CASE("Fenchel inequality at every sample") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
      const auto l = random_lagrangian(rng, 2);
      Vector q = Vector::Random(2);
      Vector v = 2.0 * Vector::Random(2);
      Vector p = 2.0 * Vector::Random(2);
      CHECK(p.dot(v) <= l.lagrangian(q, v) + l.hamiltonian(q, p) + 1e-12);
      const Vector best = l.legendre(q, v);
      CHECK(std::abs(best.dot(v) - l.lagrangian(q, v) - l.hamiltonian(q, best)) <= 1e-12);
    }
  }

  TEST_CASE("batteries") {
    const auto a = run_levrel_battery(1, 200, 256);
    CHECK(a.min_margin >= -1e-9);
    CHECK(a.max_residual <= 1e-6);
    const auto b = run_levrel2_battery(1, 200, 256);
    CHECK(b.min_margin >= -1e-9);
    CHECK(b.max_residual <= 1e-6);
    const auto again = run_levrel_battery(1, 200, 256);
    CHECK(again.margins == a.margins);
  }

  TEST_CASE("gradient check") {
    std::mt19937_64 rng(3);
    const auto metric = random_metric(rng, 2);
    const auto x = random_loop(rng, 2, 256);
    const auto xi = random_perturbation(rng, 2, 256);
    const DiscreteLoop none(Matrix::Zero(256, 2), Vector::Zero(2), Matrix::Zero(256, 2));

    CHECK_THROWS_AS(action_gradient_check(x, 0.7, metric, none, 0.0, 1e-5), InputError);
    CHECK_THROWS_AS(action_gradient_check(x, 0.7, metric, xi, 0.0, 1e-2), InputError);
    CHECK_THROWS_AS(action_gradient_check(x, 0.7, metric, xi, 0.0, 1e-8), InputError);

    const auto eta_only = action_gradient_check(x, 0.7, metric, none, 1.0, 1e-5);
    CHECK(eta_only.eta_error <= 1e-12);
    CHECK(std::abs(eta_only.finite_difference - eta_only.pairing) <= 1e-9);

    const auto r = action_gradient_check(x, 0.7, metric, xi, 0.5, 1e-5);
    CHECK(r.relative_error <= 1e-5);
    CHECK(r.relative_error_without_eta > r.relative_error);

    const auto battery = run_gradient_battery(7, 50, 256, 1e-5);
    CHECK(battery.max_relative_error <= 1e-5);
    CHECK(battery.min_halving_ratio >= 2.0);
    CHECK(battery.max_halving_ratio <= 8.0);
    CHECK(battery.max_eta_error <= 1e-12);
  }
}
