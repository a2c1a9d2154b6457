#include "rfh/aleksandrov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "rfh/errors.hpp"
#include "rfh/numeric_checks.hpp"

namespace rfh::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double norm(Point p) { return std::hypot(p.x, p.y); }

// cos(j a), sin(j a) for j = 0..order by the angle-addition recurrence.
void harmonics(double a, int order, std::vector<double>& c, std::vector<double>& s) {
  c.assign(static_cast<std::size_t>(order + 1), 0.0);
  s.assign(static_cast<std::size_t>(order + 1), 0.0);
  c[0] = 1.0;
  if (order == 0) return;
  const double c1 = std::cos(a);
  const double s1 = std::sin(a);
  c[1] = c1;
  s[1] = s1;
  for (int j = 2; j <= order; ++j) {
    c[j] = c[j - 1] * c1 - s[j - 1] * s1;
    s[j] = s[j - 1] * c1 + c[j - 1] * s1;
  }
}

}  // namespace

void AnnularSector::validate() const {
  if (!std::isfinite(outer_radius) || !(outer_radius > 1.0)) {
    throw InputError("annular sector: outer radius must exceed 1");
  }
  if (!(half_angle > 0.0 && half_angle < kPi)) {
    throw InputError("annular sector: half angle must lie in (0, pi)");
  }
}

bool AnnularSector::contains(Point p) const {
  const double r = norm(p);
  return r > 1.0 && r < outer_radius && std::abs(std::atan2(p.y, p.x)) < half_angle;
}

Point AnnularSector::inner_arc(double theta) const { return {std::cos(theta), std::sin(theta)}; }

Point AnnularSector::dirichlet_boundary(double s) const {
  s = std::clamp(s, 0.0, 3.0);
  if (s <= 1.0) {
    const double r = 1.0 + s * (outer_radius - 1.0);
    return {r * std::cos(half_angle), -r * std::sin(half_angle)};
  }
  if (s <= 2.0) {
    const double theta = -half_angle + (s - 1.0) * 2.0 * half_angle;
    return {outer_radius * std::cos(theta), outer_radius * std::sin(theta)};
  }
  const double r = outer_radius - (s - 2.0) * (outer_radius - 1.0);
  return {r * std::cos(half_angle), r * std::sin(half_angle)};
}

double AnnularSector::diameter_bound() const {
  constexpr int kPerPiece = 512;
  std::vector<Point> pts;
  pts.reserve(4 * kPerPiece + 4);
  for (int i = 0; i <= 3 * kPerPiece; ++i) {
    pts.push_back(dirichlet_boundary(3.0 * i / (3 * kPerPiece)));
  }
  for (int i = 0; i <= kPerPiece; ++i) {
    pts.push_back(inner_arc(-half_angle + 2.0 * half_angle * i / kPerPiece));
  }
  double spacing = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    spacing = std::max(spacing, std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y));
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    }
  }
  return best + 2.0 * spacing;
}

TrigField::TrigField(int order, double frequency)
    : order_(order),
      frequency_(frequency),
      coefs_(static_cast<std::size_t>(4 * (order + 1) * (order + 1)), 0.0) {
  if (order < 0 || order > kMaxOrder) throw InputError("trigonometric field: order out of range");
}

TrigField TrigField::constant(double c) {
  TrigField f(0, 1.0);
  f.coef(0, 0, 0) = c;
  return f;
}

TrigField TrigField::random(std::mt19937_64& rng, int order, double frequency, double scale) {
  TrigField f(order, frequency);
  for (int kind = 0; kind < 4; ++kind) {
    for (int j = 0; j <= order; ++j) {
      for (int k = 0; k <= order; ++k) {
        const bool unused = (kind >= 2 && j == 0) || (kind % 2 == 1 && k == 0);
        if (!unused) f.coef(kind, j, k) = scale * uniform(rng, -1.0, 1.0) / ((1 + j + k) * (1 + j + k));
      }
    }
  }
  return f;
}

TrigField::Row::Row(const TrigField& field, double y) : field_(&field) {
  const int n = field.order_;
  const double w = field.frequency_;
  std::vector<double> cy, sy;
  harmonics(w * y, n, cy, sy);
  const auto size = static_cast<std::size_t>(n + 1);
  cx_.assign(size, 0.0);
  sx_.assign(size, 0.0);
  cx_y_.assign(size, 0.0);
  sx_y_.assign(size, 0.0);
  cx_kk_.assign(size, 0.0);
  sx_kk_.assign(size, 0.0);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      const double cc = field.coef(0, j, k);
      const double cs = field.coef(1, j, k);
      const double sc = field.coef(2, j, k);
      const double ss = field.coef(3, j, k);
      const double kw = k * w;
      cx_[j] += cc * cy[k] + cs * sy[k];
      sx_[j] += sc * cy[k] + ss * sy[k];
      cx_y_[j] += kw * (-cc * sy[k] + cs * cy[k]);
      sx_y_[j] += kw * (-sc * sy[k] + ss * cy[k]);
      cx_kk_[j] += kw * kw * (cc * cy[k] + cs * sy[k]);
      sx_kk_[j] += kw * kw * (sc * cy[k] + ss * sy[k]);
    }
  }
}

TrigField::Jet TrigField::Row::at(double x) const {
  const int n = field_->order_;
  const double w = field_->frequency_;
  std::array<double, kMaxOrder + 1> cx{};
  std::array<double, kMaxOrder + 1> sx{};
  cx[0] = 1.0;
  if (n > 0) {
    cx[1] = std::cos(w * x);
    sx[1] = std::sin(w * x);
    for (int j = 2; j <= n; ++j) {
      cx[j] = cx[j - 1] * cx[1] - sx[j - 1] * sx[1];
      sx[j] = sx[j - 1] * cx[1] + cx[j - 1] * sx[1];
    }
  }
  Jet jet;
  for (int j = 0; j <= n; ++j) {
    const double jw = j * w;
    jet.value += cx_[j] * cx[j] + sx_[j] * sx[j];
    jet.dx += jw * (-cx_[j] * sx[j] + sx_[j] * cx[j]);
    jet.dy += cx_y_[j] * cx[j] + sx_y_[j] * sx[j];
    jet.laplacian -= jw * jw * (cx_[j] * cx[j] + sx_[j] * sx[j]) + cx_kk_[j] * cx[j] +
                     sx_kk_[j] * sx[j];
  }
  return jet;
}

TrigField::Jet TrigField::jet(Point p) const { return Row(*this, p.y).at(p.x); }

double EllipticSample::value(Point p) const { return u.jet(p).value + ramp * (norm(p) - 1.0); }

double EllipticSample::radial_derivative(Point p) const {
  const auto j = u.jet(p);
  const double r = norm(p);
  return (j.dx * p.x + j.dy * p.y) / r + ramp;
}

namespace {

// Golden-section maximization of g on [lo, hi].
template <class G>
double maximize_1d(G&& g, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 60; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return std::max({g(lo), g(hi), gc, gd});
}

// Dense sampling of a parametrized curve on [lo, hi] followed by local
// refinement around the best sample.
template <class G>
double sup_on_curve(G&& g, double lo, double hi, int samples) {
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= samples; ++i) {
    const double v = g(lo + (hi - lo) * i / samples);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double step = (hi - lo) / samples;
  const double a = std::max(lo, lo + (best_i - 1) * step);
  const double b = std::min(hi, lo + (best_i + 1) * step);
  return std::max(best, maximize_1d(g, a, b));
}

// Projected gradient ascent inside the closed sector, starting at p.
double local_sup(const EllipticSample& s, Point p) {
  const AnnularSector& dom = s.domain;
  auto project = [&](Point q) {
    double r = std::clamp(norm(q), 1.0, dom.outer_radius);
    double th = std::clamp(std::atan2(q.y, q.x), -dom.half_angle, dom.half_angle);
    return Point{r * std::cos(th), r * std::sin(th)};
  };
  double value = s.value(p);
  double step = 0.05;
  for (int it = 0; it < 200 && step > 1e-14; ++it) {
    const auto jet = s.u.jet(p);
    const double r = norm(p);
    const Point grad{jet.dx + s.ramp * p.x / r, jet.dy + s.ramp * p.y / r};
    const Point next = project({p.x + step * grad.x, p.y + step * grad.y});
    const double v = s.value(next);
    if (v > value) {
      p = next;
      value = v;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return value;
}

}  // namespace

AleksandrovReport check_aleksandrov(const EllipticSample& sample, const AleksandrovConfig& config) {
  const AnnularSector& dom = sample.domain;
  dom.validate();
  if (!(config.h > 0.0 && config.h < 1.0)) throw InputError("Aleksandrov: grid step must lie in (0, 1)");
  AleksandrovReport rep;

  const int arc_samples = std::max(config.boundary_samples, 16);
  rep.min_radial_derivative = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= arc_samples; ++i) {
    const double theta = -dom.half_angle + 2.0 * dom.half_angle * i / arc_samples;
    rep.min_radial_derivative =
        std::min(rep.min_radial_derivative, sample.radial_derivative(dom.inner_arc(theta)));
  }
  rep.neumann_ok = rep.min_radial_derivative >= 0.0;

  const double h = config.h;
  const double ymax = dom.half_angle < kPi / 2 ? dom.outer_radius * std::sin(dom.half_angle)
                                               : dom.outer_radius;
  const double xmin = dom.half_angle < kPi / 2 ? std::cos(dom.half_angle)
                                               : dom.outer_radius * std::cos(dom.half_angle);
  const double xmax = dom.outer_radius;
  const int nx = static_cast<int>(std::ceil((xmax - xmin) / h));
  const int ny = static_cast<int>(std::ceil(2.0 * ymax / h));

  double b_sq = 0.0;
  double f_minus_sq = 0.0;
  struct Candidate {
    double value;
    Point p;
  };
  std::vector<Candidate> best;
  auto consider = [&](double v, Point p) {
    if (best.size() < 5) {
      best.push_back({v, p});
    } else {
      auto worst = std::min_element(best.begin(), best.end(),
                                    [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
      if (v > worst->value) *worst = {v, p};
    }
  };

  for (int iy = 0; iy < ny; ++iy) {
    const double y = -ymax + (iy + 0.5) * h;
    const TrigField::Row urow(sample.u, y);
    const TrigField::Row b1row(sample.b1, y);
    const TrigField::Row b2row(sample.b2, y);
    for (int ix = 0; ix < nx; ++ix) {
      const Point p{xmin + (ix + 0.5) * h, y};
      if (!dom.contains(p)) continue;
      ++rep.grid_points;
      const double r = norm(p);
      const auto u = urow.at(p.x);
      const double ux = u.dx + sample.ramp * p.x / r;
      const double uy = u.dy + sample.ramp * p.y / r;
      const double lap = u.laplacian + sample.ramp / r;
      const double b1 = b1row.at(p.x).value;
      const double b2 = b2row.at(p.x).value;
      const double f = lap + b1 * ux + b2 * uy;
      b_sq += b1 * b1 + b2 * b2;
      if (f < 0.0) f_minus_sq += f * f;
      consider(u.value + sample.ramp * (r - 1.0), p);
    }
  }
  rep.b_norm_squared = b_sq * h * h;
  rep.f_minus_norm = std::sqrt(f_minus_sq * h * h);

  auto on_dirichlet = [&](double s) { return sample.value(dom.dirichlet_boundary(s)); };
  auto on_inner = [&](double theta) { return sample.value(dom.inner_arc(theta)); };
  const int per_piece = config.boundary_samples;
  rep.sup_boundary = std::max({sup_on_curve(on_dirichlet, 0.0, 1.0, per_piece),
                               sup_on_curve(on_dirichlet, 1.0, 2.0, per_piece),
                               sup_on_curve(on_dirichlet, 2.0, 3.0, per_piece)});
  rep.sup_domain = std::max(rep.sup_boundary,
                            sup_on_curve(on_inner, -dom.half_angle, dom.half_angle, per_piece));
  for (const auto& c : best) rep.sup_domain = std::max(rep.sup_domain, local_sup(sample, c.p));

  rep.diameter = dom.diameter_bound();
  rep.constant = rep.diameter * std::exp((rep.b_norm_squared + 1.0) / (4.0 * kPi));
  rep.margin = rep.sup_domain - rep.sup_boundary - rep.constant * rep.f_minus_norm;
  rep.pass = rep.neumann_ok && rep.margin <= config.tolerance + config.grid_constant * h * h;
  return rep;
}

std::optional<EllipticSample> random_sample(std::mt19937_64& rng, int attempts) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    EllipticSample s;
    s.domain.outer_radius = uniform(rng, 1.5, 2.5);
    s.domain.half_angle = uniform(rng, 0.3, 1.2);
    s.u = TrigField::random(rng, 3, uniform(rng, 1.0, 3.0), 1.0);
    const double b_scale = uniform(rng, 0.0, 1.0) < 0.2 ? 0.0 : uniform(rng, 0.1, 1.5);
    s.b1 = TrigField::random(rng, 2, uniform(rng, 0.5, 2.0), b_scale);
    s.b2 = TrigField::random(rng, 2, uniform(rng, 0.5, 2.0), b_scale);

    constexpr int kArc = 4096;
    double min_dr = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kArc; ++i) {
      const double theta = -s.domain.half_angle + 2.0 * s.domain.half_angle * i / kArc;
      min_dr = std::min(min_dr, s.radial_derivative(s.domain.inner_arc(theta)));
    }
    s.ramp = std::max(0.0, -min_dr) + uniform(rng, 0.01, 0.5);

    bool admissible = true;
    for (int i = 0; i <= kArc && admissible; ++i) {
      const double theta = -s.domain.half_angle + 2.0 * s.domain.half_angle * i / kArc;
      admissible = s.radial_derivative(s.domain.inner_arc(theta)) >= 0.0;
    }
    if (admissible) return s;
  }
  return std::nullopt;
}

AleksandrovBattery run_aleksandrov_battery(std::uint64_t seed, std::size_t trials,
                                           const AleksandrovConfig& config) {
  AleksandrovBattery out;
  out.trials = trials;
  out.tolerance = config.tolerance + config.grid_constant * config.h * config.h;
  out.max_margin = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = numeric::trial_rng(seed, i);
    auto sample = random_sample(rng);
    if (!sample) {
      ++out.skipped;
      continue;
    }
    auto rep = check_aleksandrov(*sample, config);
    out.max_margin = std::max(out.max_margin, rep.margin);
    ok = ok && rep.pass;
    out.reports.push_back(rep);
  }
  out.pass = ok && !out.reports.empty();
  return out;
}

double CylinderGrid::interpolate(double s, double t) const {
  if (s_intervals < 3 || t_samples < 4) throw InputError("cylinder grid too coarse for cubic interpolation");
  const double ds = length / s_intervals;
  const double us = s / ds;
  const int i0 = std::clamp(static_cast<int>(std::floor(us)) - 1, 0, s_intervals - 3);
  const double vt = (t - std::floor(t)) * t_samples;
  const int j0 = static_cast<int>(std::floor(vt)) - 1;

  auto weights = [](double x, double w[4]) {
    // Lagrange basis on nodes 0, 1, 2, 3.
    w[0] = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    w[1] = x * (x - 2.0) * (x - 3.0) / 2.0;
    w[2] = -x * (x - 1.0) * (x - 3.0) / 2.0;
    w[3] = x * (x - 1.0) * (x - 2.0) / 6.0;
  };
  double ws[4];
  double wt[4];
  weights(us - i0, ws);
  weights(vt - j0, wt);
  double total = 0.0;
  for (int a = 0; a < 4; ++a) {
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      const int j = ((j0 + b) % t_samples + t_samples) % t_samples;
      row += wt[b] * at(i0 + a, j);
    }
    total += ws[a] * row;
  }
  return total;
}

bool AnnulusGrid::inside(int i, int j) const {
  return i >= 0 && j >= 0 && i < size && j < size && !std::isnan(at(i, j));
}

void annulus_to_cylinder(Point z, double& s, double& t) {
  s = std::log(norm(z)) / kTwoPi;
  t = std::atan2(z.y, z.x) / kTwoPi;
  if (t < 0.0) t += 1.0;
}

AnnulusGrid cylinder_annulus_transport(const CylinderGrid& u, double h) {
  if (!(h > 0.0)) throw InputError("annulus grid step must be positive");
  AnnulusGrid g;
  g.h = h;
  g.outer_radius = std::exp(kTwoPi * u.length);
  const int half = static_cast<int>(std::ceil(g.outer_radius / h));
  g.origin = -half * h;
  g.size = 2 * half + 1;
  g.values.assign(static_cast<std::size_t>(g.size) * static_cast<std::size_t>(g.size),
                  std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < g.size; ++i) {
    for (int j = 0; j < g.size; ++j) {
      const Point z = g.point(i, j);
      const double r = norm(z);
      if (r < 1.0 || r > g.outer_radius) continue;
      double s = 0.0;
      double t = 0.0;
      annulus_to_cylinder(z, s, t);
      g.values[static_cast<std::size_t>(i * g.size + j)] = u.interpolate(s, t);
    }
  }
  return g;
}

Point cylinder_gradient(Point z, Point g) {
  return {kTwoPi * (z.x * g.x + z.y * g.y), kTwoPi * (z.x * g.y - z.y * g.x)};
}

Point transported_drift(Point z, Point b) {
  const double scale = 1.0 / (kTwoPi * (z.x * z.x + z.y * z.y));
  return {scale * (z.x * b.x - z.y * b.y), scale * (z.x * b.y + z.y * b.x)};
}

double transported_source(Point z, double f) {
  return f / (4.0 * kPi * kPi * (z.x * z.x + z.y * z.y));
}

double norm_equivalence_constant(double length) { return kTwoPi * std::exp(kTwoPi * length); }

}  // namespace rfh::elliptic
