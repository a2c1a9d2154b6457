#pragma once

// Discrete loops in the cotangent bundle of a flat torus, the Rabinowitz
// action functional on them, and randomized checks of the two action
// inequalities and of the gradient formula.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace rfh::numeric {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Constant positive-definite metric g on R^n / Z^n with its inverse g*.
class FlatMetric {
 public:
  explicit FlatMetric(Matrix g);
  static FlatMetric identity(int n) { return FlatMetric(Matrix::Identity(n, n)); }

  int dim() const { return static_cast<int>(g_.rows()); }
  const Matrix& g() const { return g_; }
  const Matrix& g_inv() const { return g_inv_; }

 private:
  Matrix g_;
  Matrix g_inv_;
};

// N samples of a loop x = (q, p) at t_j = j / N. q is stored lifted to R^n;
// q_{j + N} = q_j + winding.
class DiscreteLoop {
 public:
  DiscreteLoop(Matrix q, Vector winding, Matrix p);

  int samples() const { return static_cast<int>(q_.rows()); }
  int dim() const { return static_cast<int>(q_.cols()); }
  const Matrix& q() const { return q_; }
  const Matrix& p() const { return p_; }
  const Vector& winding() const { return winding_; }

  // Centered periodic difference of q (rows are samples).
  Matrix velocity() const;
  DiscreteLoop with_momentum(Matrix p) const { return {q_, winding_, std::move(p)}; }

 private:
  Matrix q_;
  Vector winding_;
  Matrix p_;
};

// Centered periodic difference of a periodic sample matrix.
Matrix periodic_derivative(const Matrix& samples);

// Kinetic energy mean g(q', q').
double loop_energy(const DiscreteLoop& x, const FlatMetric& metric);
// Mean of H(p) = (g*(p,p) - 1) / 2.
double mean_hamiltonian(const DiscreteLoop& x, const FlatMetric& metric);
double rabinowitz_action(const DiscreteLoop& x, double eta, const FlatMetric& metric);

struct LevrelReport {
  double energy = 0.0;
  double root = 0.0;          // sqrt(E)
  double upper_action = 0.0;  // A(x, sqrt E)
  double lower_action = 0.0;  // A(x, -sqrt E)
  double margin = 0.0;        // min(sqrt E - A(x, sqrt E), A(x, -sqrt E) + sqrt E)
};

LevrelReport check_levrel(const DiscreteLoop& x, const FlatMetric& metric);
// Loop with the same q and p = G q' / sqrt(E), where both bounds are equalities.
DiscreteLoop levrel_equality_witness(const DiscreteLoop& x, const FlatMetric& metric);

// One term c cos(2 pi k.q) + s sin(2 pi k.q).
struct TrigTerm {
  Eigen::VectorXi wave;
  double cos_coef = 0.0;
  double sin_coef = 0.0;
};

double trig_value(const std::vector<TrigTerm>& terms, const Vector& q);

// L(q, v) = <A v, v> / 2 + <w(q), v> + U(q) with A positive definite and
// w, U trigonometric polynomials on the torus.
class QuadraticLagrangian {
 public:
  QuadraticLagrangian(Matrix a, std::vector<std::vector<TrigTerm>> w, std::vector<TrigTerm> u);

  int dim() const { return static_cast<int>(a_.rows()); }
  Vector drift(const Vector& q) const;
  double potential(const Vector& q) const;
  double lagrangian(const Vector& q, const Vector& v) const;
  // Fenchel dual H(q, p) = <A^{-1}(p - w), p - w> / 2 - U(q).
  double hamiltonian(const Vector& q, const Vector& p) const;
  // Fibre derivative d_v L(q, v) = A v + w(q).
  Vector legendre(const Vector& q, const Vector& v) const;

 private:
  Matrix a_;
  Matrix a_inv_;
  std::vector<std::vector<TrigTerm>> w_;
  std::vector<TrigTerm> u_;
};

struct FenchelReport {
  double hamiltonian_action = 0.0;  // A_H(x, T)
  double lagrangian_action = 0.0;   // S_L(q, T)
  double reversed_action = 0.0;     // A_H(x reversed, -T)
  double margin = 0.0;              // min of both gaps
};

FenchelReport check_levrel2(const DiscreteLoop& x, double period, const QuadraticLagrangian& l);
// Loop with the same q and p = d_v L(q, q' / T).
DiscreteLoop levrel2_equality_witness(const DiscreteLoop& x, double period,
                                      const QuadraticLagrangian& l);

struct GradientCheck {
  double step = 0.0;
  double finite_difference = 0.0;
  double pairing = 0.0;          // <grad A, xi> with J(x' - eta X_H)
  double pairing_without_eta = 0.0;  // <grad A, xi> with J x'
  double error = 0.0;
  double relative_error = 0.0;
  double relative_error_without_eta = 0.0;
  double eta_finite_difference = 0.0;
  double eta_exact = 0.0;  // -mean H
  double eta_error = 0.0;
};

// Central difference of A along (xi, d_eta) against the gradient pairing.
// xi is a periodic perturbation of (q, p) stored as a loop with zero winding.
GradientCheck action_gradient_check(const DiscreteLoop& x, double eta, const FlatMetric& metric,
                                    const DiscreteLoop& xi, double d_eta, double step);

// Random instances shared by the batteries.
FlatMetric random_metric(std::mt19937_64& rng, int n);
DiscreteLoop random_loop(std::mt19937_64& rng, int n, int samples, int modes = 3);
DiscreteLoop random_perturbation(std::mt19937_64& rng, int n, int samples, int modes = 3);
QuadraticLagrangian random_lagrangian(std::mt19937_64& rng, int n);

// Loop q(t) = w t + sum of low modes with p the exact analytic Legendre dual
// of q', evaluated on N samples; used for convergence checks.
struct SmoothLoopFamily {
  int dim = 2;
  Vector winding;
  std::vector<Vector> cos_modes;  // coefficient of cos(2 pi m t), m = 1..
  std::vector<Vector> sin_modes;
  Vector position(double t) const;
  Vector derivative(double t) const;
  double energy(const FlatMetric& metric) const;  // exact mean g(q', q')
  DiscreteLoop sample(int samples, const Matrix& momentum_map) const;  // p = momentum_map q'
};

SmoothLoopFamily random_smooth_family(std::mt19937_64& rng, int n, int modes = 2);

struct BatterySummary {
  std::size_t trials = 0;
  double min_margin = 0.0;
  double max_residual = 0.0;
  std::vector<double> margins;
  std::vector<double> residuals;
};

BatterySummary run_levrel_battery(std::uint64_t seed, std::size_t trials, int samples);
BatterySummary run_levrel2_battery(std::uint64_t seed, std::size_t trials, int samples);

struct GradientTrial {
  GradientCheck at_step;  // at the requested step
  GradientCheck coarse;   // at kCoarseStep
  GradientCheck halved;   // at kCoarseStep / 2
  double halving_ratio = 0.0;  // coarse.error / halved.error
};

struct GradientBattery {
  static constexpr double kCoarseStep = 1e-3;
  std::size_t trials = 0;
  double step = 0.0;
  double max_relative_error = 0.0;
  double max_relative_error_without_eta = 0.0;
  double min_halving_ratio = 0.0;
  double max_halving_ratio = 0.0;
  double max_eta_error = 0.0;
  std::vector<GradientTrial> results;
};

// Random loop, perturbation (xi, d_eta) with d_eta != 0 and eta per trial.
// The halving ratio is measured at a step where truncation dominates rounding.
GradientBattery run_gradient_battery(std::uint64_t seed, std::size_t trials, int samples, double step);

// Per-trial generator seeded by (seed, trial).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace rfh::numeric
