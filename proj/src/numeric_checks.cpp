#include "rfh/numeric_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rfh/errors.hpp"

namespace rfh::numeric {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

FlatMetric::FlatMetric(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() < 1) throw InputError("metric must be a square matrix");
  if (!g_.isApprox(g_.transpose(), 1e-12)) throw InputError("metric must be symmetric");
  Eigen::LLT<Matrix> llt(g_);
  if (llt.info() != Eigen::Success) throw InputError("metric must be positive definite");
  g_inv_ = llt.solve(Matrix::Identity(g_.rows(), g_.cols()));
}

DiscreteLoop::DiscreteLoop(Matrix q, Vector winding, Matrix p)
    : q_(std::move(q)), winding_(std::move(winding)), p_(std::move(p)) {
  if (q_.rows() < 8) throw InputError("loop needs at least 8 samples");
  if (q_.cols() < 1 || p_.rows() != q_.rows() || p_.cols() != q_.cols() ||
      winding_.size() != q_.cols()) {
    throw InputError("loop: inconsistent sample shapes");
  }
  if (!all_finite(q_) || !all_finite(p_) || !winding_.allFinite()) {
    throw InputError("loop: non-finite sample");
  }
}

Matrix periodic_derivative(const Matrix& x) {
  const Eigen::Index n = x.rows();
  Matrix d(n, x.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    d.row(j) = (x.row((j + 1) % n) - x.row((j + n - 1) % n)) * (0.5 * static_cast<double>(n));
  }
  return d;
}

Matrix DiscreteLoop::velocity() const {
  const Eigen::Index n = q_.rows();
  const double scale = 0.5 * static_cast<double>(n);
  Matrix d(n, q_.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector next = q_.row((j + 1) % n).transpose();
    Vector prev = q_.row((j + n - 1) % n).transpose();
    if (j == n - 1) next += winding_;
    if (j == 0) prev -= winding_;
    d.row(j) = ((next - prev) * scale).transpose();
  }
  return d;
}

double loop_energy(const DiscreteLoop& x, const FlatMetric& metric) {
  const Matrix v = x.velocity();
  return (v * metric.g()).cwiseProduct(v).sum() / x.samples();
}

double mean_hamiltonian(const DiscreteLoop& x, const FlatMetric& metric) {
  const Matrix& p = x.p();
  return 0.5 * ((p * metric.g_inv()).cwiseProduct(p).sum() / x.samples() - 1.0);
}

double rabinowitz_action(const DiscreteLoop& x, double eta, const FlatMetric& metric) {
  if (x.dim() != metric.dim()) throw InputError("loop and metric dimensions differ");
  const double liouville = x.p().cwiseProduct(x.velocity()).sum() / x.samples();
  return liouville - eta * mean_hamiltonian(x, metric);
}

LevrelReport check_levrel(const DiscreteLoop& x, const FlatMetric& metric) {
  LevrelReport r;
  r.energy = loop_energy(x, metric);
  r.root = std::sqrt(r.energy);
  r.upper_action = rabinowitz_action(x, r.root, metric);
  r.lower_action = rabinowitz_action(x, -r.root, metric);
  r.margin = std::min(r.root - r.upper_action, r.lower_action + r.root);
  return r;
}

DiscreteLoop levrel_equality_witness(const DiscreteLoop& x, const FlatMetric& metric) {
  const double e = loop_energy(x, metric);
  if (!(e > 0.0)) throw InputError("equality witness needs positive energy");
  return x.with_momentum(x.velocity() * metric.g() / std::sqrt(e));
}

double trig_value(const std::vector<TrigTerm>& terms, const Vector& q) {
  double total = 0.0;
  for (const auto& t : terms) {
    const double phase = kTwoPi * t.wave.cast<double>().dot(q);
    total += t.cos_coef * std::cos(phase) + t.sin_coef * std::sin(phase);
  }
  return total;
}

QuadraticLagrangian::QuadraticLagrangian(Matrix a, std::vector<std::vector<TrigTerm>> w,
                                         std::vector<TrigTerm> u)
    : a_(std::move(a)), w_(std::move(w)), u_(std::move(u)) {
  if (a_.rows() != a_.cols() || a_.rows() < 1) throw InputError("Lagrangian: A must be square");
  if (!a_.isApprox(a_.transpose(), 1e-12)) throw InputError("Lagrangian: A must be symmetric");
  Eigen::LLT<Matrix> llt(a_);
  if (llt.info() != Eigen::Success) throw InputError("Lagrangian: A must be positive definite");
  a_inv_ = llt.solve(Matrix::Identity(a_.rows(), a_.cols()));
  if (w_.empty()) w_.resize(static_cast<std::size_t>(a_.rows()));
  if (static_cast<Eigen::Index>(w_.size()) != a_.rows()) {
    throw InputError("Lagrangian: drift needs one component per dimension");
  }
  auto check = [&](const std::vector<TrigTerm>& terms) {
    for (const auto& t : terms) {
      if (t.wave.size() != a_.rows()) throw InputError("Lagrangian: wave vector has wrong size");
    }
  };
  for (const auto& c : w_) check(c);
  check(u_);
}

Vector QuadraticLagrangian::drift(const Vector& q) const {
  Vector w(a_.rows());
  for (Eigen::Index i = 0; i < a_.rows(); ++i) w(i) = trig_value(w_[static_cast<std::size_t>(i)], q);
  return w;
}

double QuadraticLagrangian::potential(const Vector& q) const { return trig_value(u_, q); }

double QuadraticLagrangian::lagrangian(const Vector& q, const Vector& v) const {
  return 0.5 * v.dot(a_ * v) + drift(q).dot(v) + potential(q);
}

double QuadraticLagrangian::hamiltonian(const Vector& q, const Vector& p) const {
  const Vector shifted = p - drift(q);
  return 0.5 * shifted.dot(a_inv_ * shifted) - potential(q);
}

Vector QuadraticLagrangian::legendre(const Vector& q, const Vector& v) const {
  return a_ * v + drift(q);
}

namespace {

// Loop traversed backwards: samples q(-t), p(-t).
DiscreteLoop reversed(const DiscreteLoop& x) {
  const int n = x.samples();
  Matrix q(n, x.dim());
  Matrix p(n, x.dim());
  for (int j = 0; j < n; ++j) {
    const int src = (n - j) % n;
    q.row(j) = x.q().row(src);
    if (j > 0) q.row(j) -= x.winding().transpose();
    p.row(j) = x.p().row(src);
  }
  return {q, -x.winding(), p};
}

double hamiltonian_action(const DiscreteLoop& x, double period, const QuadraticLagrangian& l) {
  const Matrix v = x.velocity();
  double liouville = 0.0;
  double ham = 0.0;
  for (int j = 0; j < x.samples(); ++j) {
    liouville += x.p().row(j).dot(v.row(j));
    ham += l.hamiltonian(x.q().row(j).transpose(), x.p().row(j).transpose());
  }
  return (liouville - period * ham) / x.samples();
}

double lagrangian_action(const DiscreteLoop& x, double period, const QuadraticLagrangian& l) {
  const Matrix v = x.velocity() / period;
  double total = 0.0;
  for (int j = 0; j < x.samples(); ++j) {
    total += l.lagrangian(x.q().row(j).transpose(), v.row(j).transpose());
  }
  return period * total / x.samples();
}

}  // namespace

FenchelReport check_levrel2(const DiscreteLoop& x, double period, const QuadraticLagrangian& l) {
  if (!(period > 0.0)) throw InputError("levrel2: the period must be positive");
  if (x.dim() != l.dim()) throw InputError("levrel2: loop and Lagrangian dimensions differ");
  FenchelReport r;
  r.hamiltonian_action = hamiltonian_action(x, period, l);
  r.lagrangian_action = lagrangian_action(x, period, l);
  r.reversed_action = hamiltonian_action(reversed(x), -period, l);
  r.margin = std::min(r.lagrangian_action - r.hamiltonian_action,
                      r.reversed_action + r.lagrangian_action);
  return r;
}

DiscreteLoop levrel2_equality_witness(const DiscreteLoop& x, double period,
                                      const QuadraticLagrangian& l) {
  if (!(period > 0.0)) throw InputError("levrel2: the period must be positive");
  const Matrix v = x.velocity() / period;
  Matrix p(x.samples(), x.dim());
  for (int j = 0; j < x.samples(); ++j) {
    p.row(j) = l.legendre(x.q().row(j).transpose(), v.row(j).transpose()).transpose();
  }
  return x.with_momentum(p);
}

GradientCheck action_gradient_check(const DiscreteLoop& x, double eta, const FlatMetric& metric,
                                    const DiscreteLoop& xi, double d_eta, double step) {
  if (!(step >= 1e-7 && step <= 1e-3)) throw InputError("gradient check: step outside [1e-7, 1e-3]");
  if (xi.samples() != x.samples() || xi.dim() != x.dim()) {
    throw InputError("gradient check: perturbation shape differs from the loop");
  }
  if (!xi.winding().isZero()) throw InputError("gradient check: perturbation must be periodic");
  if (xi.q().isZero() && xi.p().isZero() && d_eta == 0.0) {
    throw InputError("gradient check: degenerate perturbation");
  }

  GradientCheck r;
  r.step = step;
  const DiscreteLoop plus(x.q() + step * xi.q(), x.winding(), x.p() + step * xi.p());
  const DiscreteLoop minus(x.q() - step * xi.q(), x.winding(), x.p() - step * xi.p());
  r.finite_difference = (rabinowitz_action(plus, eta + step * d_eta, metric) -
                         rabinowitz_action(minus, eta - step * d_eta, metric)) /
                        (2.0 * step);

  // <J(x' - eta X_H), xi> in the metric g + g*, with X_H = (g* p, 0) and
  // J(a, b) = (-g* b, g a), reduces to q'.xi_p - p'.xi_q - eta g*(p, xi_p).
  const Matrix dq = x.velocity();
  const Matrix dp = periodic_derivative(x.p());
  const double n = x.samples();
  const double symplectic = (dq.cwiseProduct(xi.p()).sum() - dp.cwiseProduct(xi.q()).sum()) / n;
  const double hamiltonian_part =
      (x.p() * metric.g_inv()).cwiseProduct(xi.p()).sum() / n;
  const double eta_part = -mean_hamiltonian(x, metric) * d_eta;
  r.pairing = symplectic - eta * hamiltonian_part + eta_part;
  r.pairing_without_eta = symplectic + eta_part;

  auto relative = [](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  };
  r.error = std::abs(r.finite_difference - r.pairing);
  r.relative_error = relative(r.finite_difference, r.pairing);
  r.relative_error_without_eta = relative(r.finite_difference, r.pairing_without_eta);

  // A is affine in eta, so a unit step is exact up to rounding.
  const double eta_step = 1.0;
  r.eta_finite_difference =
      (rabinowitz_action(x, eta + eta_step, metric) - rabinowitz_action(x, eta - eta_step, metric)) /
      (2.0 * eta_step);
  r.eta_exact = -mean_hamiltonian(x, metric);
  r.eta_error = std::abs(r.eta_finite_difference - r.eta_exact);
  return r;
}

FlatMetric random_metric(std::mt19937_64& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  }
  Matrix g = m * m.transpose() + 0.5 * Matrix::Identity(n, n);
  g = 0.5 * (g + g.transpose());
  return FlatMetric(g);
}

namespace {

Matrix random_periodic(std::mt19937_64& rng, int n, int samples, int modes, double scale) {
  Matrix x = Matrix::Zero(samples, n);
  Vector mean(n);
  for (int i = 0; i < n; ++i) mean(i) = uniform(rng, -scale, scale);
  for (int m = 1; m <= modes; ++m) {
    Vector a(n);
    Vector b(n);
    for (int i = 0; i < n; ++i) {
      a(i) = uniform(rng, -scale, scale) / m;
      b(i) = uniform(rng, -scale, scale) / m;
    }
    for (int j = 0; j < samples; ++j) {
      const double t = kTwoPi * m * j / samples;
      x.row(j) += (a * std::cos(t) + b * std::sin(t)).transpose();
    }
  }
  x.rowwise() += mean.transpose();
  return x;
}

}  // namespace

DiscreteLoop random_loop(std::mt19937_64& rng, int n, int samples, int modes) {
  Vector winding(n);
  for (int i = 0; i < n; ++i) winding(i) = uniform_int(rng, -2, 2);
  Matrix q = random_periodic(rng, n, samples, modes, 0.3);
  for (int j = 0; j < samples; ++j) {
    q.row(j) += (winding * (static_cast<double>(j) / samples)).transpose();
  }
  Matrix p = random_periodic(rng, n, samples, modes, 1.5);
  return {q, winding, p};
}

DiscreteLoop random_perturbation(std::mt19937_64& rng, int n, int samples, int modes) {
  return {random_periodic(rng, n, samples, modes, 1.0), Vector::Zero(n),
          random_periodic(rng, n, samples, modes, 1.0)};
}

QuadraticLagrangian random_lagrangian(std::mt19937_64& rng, int n) {
  const Matrix a = random_metric(rng, n).g();
  auto random_terms = [&](double scale) {
    std::vector<TrigTerm> terms;
    const int count = uniform_int(rng, 1, 3);
    for (int i = 0; i < count; ++i) {
      TrigTerm t;
      t.wave = Eigen::VectorXi(n);
      for (int k = 0; k < n; ++k) t.wave(k) = uniform_int(rng, -2, 2);
      t.cos_coef = uniform(rng, -scale, scale);
      t.sin_coef = uniform(rng, -scale, scale);
      terms.push_back(t);
    }
    return terms;
  };
  std::vector<std::vector<TrigTerm>> w;
  for (int i = 0; i < n; ++i) w.push_back(random_terms(0.5));
  return QuadraticLagrangian(a, w, random_terms(1.0));
}

Vector SmoothLoopFamily::position(double t) const {
  Vector q = winding * t;
  for (std::size_t m = 0; m < cos_modes.size(); ++m) {
    const double w = kTwoPi * static_cast<double>(m + 1) * t;
    q += cos_modes[m] * std::cos(w) + sin_modes[m] * std::sin(w);
  }
  return q;
}

Vector SmoothLoopFamily::derivative(double t) const {
  Vector v = winding;
  for (std::size_t m = 0; m < cos_modes.size(); ++m) {
    const double k = kTwoPi * static_cast<double>(m + 1);
    v += k * (-cos_modes[m] * std::sin(k * t) + sin_modes[m] * std::cos(k * t));
  }
  return v;
}

double SmoothLoopFamily::energy(const FlatMetric& metric) const {
  const Matrix& g = metric.g();
  double e = winding.dot(g * winding);
  for (std::size_t m = 0; m < cos_modes.size(); ++m) {
    const double k = kTwoPi * static_cast<double>(m + 1);
    e += 0.5 * k * k * (cos_modes[m].dot(g * cos_modes[m]) + sin_modes[m].dot(g * sin_modes[m]));
  }
  return e;
}

DiscreteLoop SmoothLoopFamily::sample(int samples, const Matrix& momentum_map) const {
  Matrix q(samples, dim);
  Matrix p(samples, dim);
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / samples;
    q.row(j) = position(t).transpose();
    p.row(j) = (momentum_map * derivative(t)).transpose();
  }
  return {q, winding, p};
}

SmoothLoopFamily random_smooth_family(std::mt19937_64& rng, int n, int modes) {
  SmoothLoopFamily f;
  f.dim = n;
  f.winding = Vector(n);
  for (int i = 0; i < n; ++i) f.winding(i) = uniform_int(rng, -1, 1);
  for (int m = 1; m <= modes; ++m) {
    Vector a(n);
    Vector b(n);
    for (int i = 0; i < n; ++i) {
      a(i) = uniform(rng, -0.2, 0.2) / m;
      b(i) = uniform(rng, -0.2, 0.2) / m;
    }
    f.cos_modes.push_back(a);
    f.sin_modes.push_back(b);
  }
  return f;
}

BatterySummary run_levrel_battery(std::uint64_t seed, std::size_t trials, int samples) {
  BatterySummary s;
  s.trials = trials;
  s.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, i);
    const int n = uniform_int(rng, 2, 3);
    const FlatMetric metric = random_metric(rng, n);
    const DiscreteLoop x = random_loop(rng, n, samples);
    const LevrelReport r = check_levrel(x, metric);
    double residual = 0.0;
    if (r.energy > 0.0) {
      const DiscreteLoop up = levrel_equality_witness(x, metric);
      const DiscreteLoop down = up.with_momentum(-up.p());
      residual = std::max(std::abs(rabinowitz_action(up, r.root, metric) - r.root),
                          std::abs(rabinowitz_action(down, -r.root, metric) + r.root));
    }
    s.margins.push_back(r.margin);
    s.residuals.push_back(residual);
    s.min_margin = std::min(s.min_margin, r.margin);
    s.max_residual = std::max(s.max_residual, residual);
  }
  return s;
}

BatterySummary run_levrel2_battery(std::uint64_t seed, std::size_t trials, int samples) {
  BatterySummary s;
  s.trials = trials;
  s.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, i);
    const int n = uniform_int(rng, 2, 3);
    const QuadraticLagrangian l = random_lagrangian(rng, n);
    const DiscreteLoop x = random_loop(rng, n, samples);
    const double period = uniform(rng, 0.25, 3.0);
    const FenchelReport r = check_levrel2(x, period, l);
    const DiscreteLoop witness = levrel2_equality_witness(x, period, l);
    const FenchelReport w = check_levrel2(witness, period, l);
    const double residual = std::abs(w.lagrangian_action - w.hamiltonian_action);
    s.margins.push_back(r.margin);
    s.residuals.push_back(residual);
    s.min_margin = std::min(s.min_margin, r.margin);
    s.max_residual = std::max(s.max_residual, residual);
  }
  return s;
}

GradientBattery run_gradient_battery(std::uint64_t seed, std::size_t trials, int samples, double step) {
  GradientBattery b;
  b.trials = trials;
  b.step = step;
  b.min_halving_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, i);
    const int n = uniform_int(rng, 2, 3);
    const FlatMetric metric = random_metric(rng, n);
    const DiscreteLoop x = random_loop(rng, n, samples);
    const DiscreteLoop xi = random_perturbation(rng, n, samples);
    const double eta = uniform(rng, -2.0, 2.0);
    const double d_eta = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.5, 1.5);
    GradientTrial t;
    t.at_step = action_gradient_check(x, eta, metric, xi, d_eta, step);
    t.coarse = action_gradient_check(x, eta, metric, xi, d_eta, GradientBattery::kCoarseStep);
    t.halved = action_gradient_check(x, eta, metric, xi, d_eta, GradientBattery::kCoarseStep / 2);
    t.halving_ratio = t.halved.error > 0.0 ? t.coarse.error / t.halved.error
                                           : std::numeric_limits<double>::infinity();
    b.max_relative_error = std::max(b.max_relative_error, t.at_step.relative_error);
    b.max_relative_error_without_eta =
        std::max(b.max_relative_error_without_eta, t.at_step.relative_error_without_eta);
    b.min_halving_ratio = std::min(b.min_halving_ratio, t.halving_ratio);
    b.max_halving_ratio = std::max(b.max_halving_ratio, t.halving_ratio);
    b.max_eta_error = std::max({b.max_eta_error, t.at_step.eta_error, t.coarse.eta_error});
    b.results.push_back(t);
  }
  return b;
}

}  // namespace rfh::numeric
