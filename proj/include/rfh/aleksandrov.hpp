#pragma once

// Maximum principle with a Neumann-type inner boundary on planar annulus
// sectors, and the conformal transport between half-cylinders and annuli.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rfh::elliptic {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// {1 < |z| < outer_radius, |arg z| < half_angle}. The inner arc |z| = 1 is
// the Neumann part; the outer arc and the two radial edges form the rest.
struct AnnularSector {
  double outer_radius = 2.0;
  double half_angle = 0.8;

  void validate() const;
  bool contains(Point p) const;
  Point inner_arc(double theta) const;
  // Boundary without the inner arc, parametrized by s in [0, 3]: lower edge,
  // outer arc, upper edge.
  Point dirichlet_boundary(double s) const;
  // Upper bound on the diameter from dense boundary sampling.
  double diameter_bound() const;
};

// sum_{j,k <= order} of the four products of cos/sin(j w x) and cos/sin(k w y).
class TrigField {
 public:
  static constexpr int kMaxOrder = 8;

  TrigField() = default;
  TrigField(int order, double frequency);

  static TrigField constant(double c);
  static TrigField random(std::mt19937_64& rng, int order, double frequency, double scale);

  int order() const { return order_; }
  double frequency() const { return frequency_; }
  // Coefficient of cos(j w x) cos(k w y), cos sin, sin cos, sin sin.
  double& coef(int kind, int j, int k) { return coefs_[index(kind, j, k)]; }
  double coef(int kind, int j, int k) const { return coefs_[index(kind, j, k)]; }

  struct Jet {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double laplacian = 0.0;
  };
  Jet jet(Point p) const;

  // Evaluation along a horizontal row y = const; x varies per call.
  class Row {
   public:
    Row(const TrigField& field, double y);
    Jet at(double x) const;

   private:
    const TrigField* field_;
    std::vector<double> cx_, sx_, cx_y_, sx_y_, cx_kk_, sx_kk_;
  };

 private:
  std::size_t index(int kind, int j, int k) const {
    return static_cast<std::size_t>((kind * (order_ + 1) + j) * (order_ + 1) + k);
  }

  int order_ = 0;
  double frequency_ = 1.0;
  std::vector<double> coefs_ = std::vector<double>(4, 0.0);
};

// u = field + ramp * (|z| - 1) with drift b = (b1, b2). Derivatives are exact.
struct EllipticSample {
  AnnularSector domain;
  TrigField u;
  double ramp = 0.0;
  TrigField b1;
  TrigField b2;

  double value(Point p) const;
  double radial_derivative(Point p) const;
};

struct AleksandrovConfig {
  double h = 1.0 / 128.0;
  double tolerance = 1e-6;
  double grid_constant = 0.0;  // tol = tolerance + grid_constant * h^2
  int boundary_samples = 4096;
};

struct AleksandrovReport {
  double sup_domain = 0.0;
  double sup_boundary = 0.0;
  double f_minus_norm = 0.0;
  double b_norm_squared = 0.0;
  double diameter = 0.0;
  double constant = 0.0;
  double margin = 0.0;  // sup_domain - sup_boundary - constant * f_minus_norm
  double min_radial_derivative = 0.0;
  std::size_t grid_points = 0;
  bool neumann_ok = false;
  bool pass = false;
};

AleksandrovReport check_aleksandrov(const EllipticSample& sample, const AleksandrovConfig& config);

// Random sample with the inner-arc condition enforced by the ramp. Returns
// nullopt if no admissible sample was found within the attempt budget.
std::optional<EllipticSample> random_sample(std::mt19937_64& rng, int attempts = 10);

struct AleksandrovBattery {
  std::size_t trials = 0;
  std::size_t skipped = 0;
  double max_margin = 0.0;
  double tolerance = 0.0;
  std::vector<AleksandrovReport> reports;
  bool pass = false;
};

AleksandrovBattery run_aleksandrov_battery(std::uint64_t seed, std::size_t trials,
                                           const AleksandrovConfig& config);

// Field on [0, length] x R/Z sampled at s_i = i * length / s_intervals,
// t_j = j / t_samples.
struct CylinderGrid {
  double length = 0.1;
  int s_intervals = 32;
  int t_samples = 256;
  std::vector<double> values;  // (s_intervals + 1) * t_samples, row-major in s

  double& at(int i, int j) { return values[static_cast<std::size_t>(i * t_samples + j)]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i * t_samples + j)]; }
  // Cubic Lagrange interpolation, periodic in t.
  double interpolate(double s, double t) const;
};

template <class F>
CylinderGrid sample_cylinder(double length, int s_intervals, int t_samples, F&& f) {
  CylinderGrid g{length, s_intervals, t_samples, {}};
  g.values.resize(static_cast<std::size_t>((s_intervals + 1) * t_samples));
  for (int i = 0; i <= s_intervals; ++i) {
    for (int j = 0; j < t_samples; ++j) {
      g.at(i, j) = f(length * i / s_intervals, static_cast<double>(j) / t_samples);
    }
  }
  return g;
}

// Square grid over [-R, R]^2 with R = exp(2 pi length); NaN off the annulus.
struct AnnulusGrid {
  double h = 1.0 / 256.0;
  double origin = 0.0;  // coordinate of index 0 on both axes
  int size = 0;
  double outer_radius = 1.0;
  std::vector<double> values;

  Point point(int i, int j) const { return {origin + i * h, origin + j * h}; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i * size + j)]; }
  bool inside(int i, int j) const;
};

// u~ = u o phi^{-1} with phi(s, t) = exp(2 pi (s + i t)).
AnnulusGrid cylinder_annulus_transport(const CylinderGrid& u, double h);

// Cylinder point of z (inverse of phi), t in [0, 1).
void annulus_to_cylinder(Point z, double& s, double& t);
// Gradient on the cylinder from the annulus gradient: 2 pi conj(z) grad u~.
Point cylinder_gradient(Point z, Point annulus_gradient);
// b~ = z b / (2 pi |z|^2) as complex numbers.
Point transported_drift(Point z, Point b);
// f~ = f / (4 pi^2 |z|^2).
double transported_source(Point z, double f);
// Constant c with ||f||/c <= ||f~|| <= c ||f||.
double norm_equivalence_constant(double length);

}  // namespace rfh::elliptic
