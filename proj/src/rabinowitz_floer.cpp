#include "rfh/rabinowitz_floer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace rfh::rf {

using f2::F2SparseMatrix;
using f2::F2Vector;

std::string plus_id(const std::string& gamma) { return "Z+(" + gamma + ")"; }
std::string minus_id(const std::string& gamma) { return "Z-(" + gamma + ")"; }

std::string RfModel::negate(const std::string& klass) const {
  auto it = class_negation.find(klass);
  return it == class_negation.end() ? klass : it->second;
}

const char* to_string(ModelErrorKind kind) {
  switch (kind) {
    case ModelErrorKind::Census: return "grading census mismatch";
    case ModelErrorKind::DSquared: return "boundary does not square to zero";
    case ModelErrorKind::Filtration: return "filtration violated";
    case ModelErrorKind::ConstantStratum: return "constant-stratum constraint violated";
    case ModelErrorKind::Coefficients: return "invalid map coefficients";
  }
  return "model error";
}

namespace {

// Per-generator data of the Morse complexes.
struct PointInfo {
  bool constant = false;
  int ind_plus = 0;
  int ind_minus = 0;
  double energy = 0.0;
  double value = 0.0;
  std::string klass;
};

using Images = std::map<std::string, std::vector<std::string>>;

std::map<std::string, PointInfo> index_points(const RfModel& m) {
  std::map<std::string, PointInfo> info;
  const int n = m.dimension();
  for (const auto& cp : m.constant.critical_points) {
    info[cp.id] = {true, cp.index, n - cp.index, 0.0, cp.value, m.contractible_class};
  }
  for (const auto& o : m.orbits) {
    if (o.id.empty()) throw InputError("model: empty orbit id");
    if (!(o.energy > 0.0) || !std::isfinite(o.energy)) {
      throw InputError("model: orbit '" + o.id + "' must have positive finite energy");
    }
    if (o.ind_plus < 0 || o.ind_minus < 0) {
      throw InputError("model: orbit '" + o.id + "' has a negative index");
    }
    if (!info.emplace(o.id, PointInfo{false, o.ind_plus, o.ind_minus, o.energy, o.value, o.klass})
             .second) {
      throw InputError("model: duplicate critical point id '" + o.id + "'");
    }
  }
  for (const auto& [c, neg] : m.class_negation) {
    if (m.negate(neg) != c) {
      throw InputError("model: class negation is not an involution at '" + c + "'");
    }
  }
  return info;
}

int rf_degree_plus(const PointInfo& p) { return p.ind_plus; }
int rf_degree_minus(const PointInfo& p) { return 1 - p.ind_minus; }

GeneratorLabel morse_label(const PointInfo& p) {
  GeneratorLabel l;
  l.action = std::sqrt(p.energy);
  l.value = p.value;
  l.klass = p.klass;
  return l;
}

double action_of(const GradedF2Complex& c, const std::string& id) {
  return c.label(id).action.value_or(0.0);
}
double value_of(const GradedF2Complex& c, const std::string& id) {
  return c.label(id).value.value_or(0.0);
}
const std::string& class_of(const GradedF2Complex& c, const std::string& id) {
  static const std::string none;
  const auto& k = c.label(id).klass;
  return k ? *k : none;
}

void check_d_squared(const GradedF2Complex& c, const char* which) {
  if (auto w = d_squared_witness(c)) {
    throw ModelError(ModelErrorKind::DSquared,
                     std::string(which) + " at '" + w->generator + "'", w->generator);
  }
}

template <class Less>
void check_filtration(const GradedF2Complex& c, const char* which, Less less) {
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    for (const auto& id : c.ids(k)) {
      for (const auto& t : c.boundary_of(id)) {
        if (!less(t, id)) {
          throw ModelError(ModelErrorKind::Filtration,
                           std::string(which) + ": '" + id + "' hits '" + t + "'", id);
        }
        if (class_of(c, t) != class_of(c, id)) {
          throw ModelError(ModelErrorKind::Filtration,
                           std::string(which) + ": '" + id + "' changes class via '" + t + "'", id);
        }
      }
    }
  }
}

std::set<std::string> as_set(std::vector<std::string> v) { return {v.begin(), v.end()}; }

}  // namespace

bool rf_precedes(const GradedF2Complex& rf, const std::string& a, const std::string& b) {
  return std::make_tuple(action_of(rf, a), value_of(rf, a), std::string_view(a)) <
         std::make_tuple(action_of(rf, b), value_of(rf, b), std::string_view(b));
}

bool morse_precedes(const GradedF2Complex& m, const std::string& a, const std::string& b) {
  const double ea = action_of(m, a);
  const double eb = action_of(m, b);
  return std::make_tuple(ea * ea, -value_of(m, a), std::string_view(b)) <
         std::make_tuple(eb * eb, -value_of(m, b), std::string_view(a));
}

RfComplexes build_complexes(const RfModel& model) {
  validate(model.constant);
  const auto info = index_points(model);
  const std::string qmin = model.constant.minimum().id;
  const std::string qmax = model.constant.maximum().id;

  // Morse complex of the energy plus the auxiliary function.
  GradedF2Complex::Builder mb;
  GradedF2Complex::Builder cb;
  for (const auto& [id, p] : info) {
    mb.add_generator(id, p.ind_plus, morse_label(p));
    cb.add_generator(id, 1 - p.ind_minus, morse_label(p));
  }
  for (const auto& [q, t] : model.constant.boundary) mb.set_boundary(q, t);
  for (const auto& [g, t] : model.morse_boundary) {
    auto it = info.find(g);
    if (it == info.end() || it->second.constant) {
      throw InputError("model: Morse boundary given for '" + g + "', which is not an orbit");
    }
    mb.set_boundary(g, t);
  }

  // Dual complex: the constant part is the Morse differential read backwards.
  std::map<std::string, std::vector<std::string>> delta;
  for (const auto& [q, t] : model.constant.boundary) delta[q] = t;
  for (const auto& [g, t] : model.comorse_boundary) {
    auto it = info.find(g);
    if (it == info.end()) throw InputError("model: coboundary given for unknown '" + g + "'");
    for (const auto& b : t) {
      auto jt = info.find(b);
      if (jt != info.end() && jt->second.constant && it->second.constant) {
        throw InputError("model: coboundary of '" + g +
                         "' lists constant loop '" + b + "'; that part is fixed by the Morse data");
      }
      delta[g].push_back(b);
    }
  }
  for (auto& [g, t] : delta) cb.set_boundary(g, t);

  auto morse = share(mb.build());
  auto comorse = share(cb.build());
  check_d_squared(*morse, "Morse complex");
  check_d_squared(*comorse, "dual Morse complex");
  auto energy_value = [](const GradedF2Complex& c, const std::string& id) {
    const double a = action_of(c, id);
    return std::make_pair(a * a, value_of(c, id));
  };
  check_filtration(*morse, "Morse complex", [&](const std::string& a, const std::string& b) {
    return energy_value(*morse, a) < energy_value(*morse, b);
  });
  check_filtration(*comorse, "dual Morse complex", [&](const std::string& a, const std::string& b) {
    auto [ea, va] = energy_value(*comorse, a);
    auto [eb, vb] = energy_value(*comorse, b);
    return std::make_pair(ea, -va) > std::make_pair(eb, -vb);
  });

  // Census: count generators per degree from the indices and compare with
  // the supplied grading.
  std::map<std::string, int> degree;
  std::map<std::string, GeneratorLabel> labels;
  std::map<int, std::size_t> census;
  for (const auto& [id, p] : info) {
    const double root = std::sqrt(p.energy);
    GeneratorLabel plus;
    GeneratorLabel minus;
    plus.action = root;
    minus.action = -root;
    plus.value = p.constant ? p.value + 0.5 : p.value;
    minus.value = p.value;
    plus.klass = p.klass;
    minus.klass = model.negate(p.klass);
    degree[plus_id(id)] = rf_degree_plus(p);
    degree[minus_id(id)] = rf_degree_minus(p);
    labels[plus_id(id)] = plus;
    labels[minus_id(id)] = minus;
  }
  for (const auto& [id, p] : info) {
    // Degree k >= 2 holds Z+ of plus index k; degree 1 and 0 mix both kinds;
    // degree k <= -1 holds Z- of minus index 1 - k.
    ++census[p.ind_plus];
    ++census[1 - p.ind_minus];
  }
  if (!model.rf_degrees.empty()) {
    std::map<int, std::size_t> supplied;
    for (const auto& [id, k] : model.rf_degrees) {
      auto it = degree.find(id);
      if (it == degree.end()) {
        throw ModelError(ModelErrorKind::Census, "unknown generator '" + id + "'", id);
      }
      if (it->second != k) {
        throw ModelError(ModelErrorKind::Census,
                         "'" + id + "' has degree " + std::to_string(k) + ", the indices give " +
                             std::to_string(it->second),
                         id);
      }
      ++supplied[k];
    }
    if (supplied != census) {
      std::string missing;
      for (const auto& [id, k] : degree) {
        if (!model.rf_degrees.count(id)) {
          missing = id;
          break;
        }
      }
      throw ModelError(ModelErrorKind::Census, "generator '" + missing + "' has no degree",
                       missing);
    }
  }

  GradedF2Complex::Builder rb;
  for (const auto& [id, k] : degree) rb.add_generator(id, k, labels[id]);
  for (const auto& [id, t] : model.rf_boundary) rb.set_boundary(id, t);
  auto rf = share(rb.build());
  check_d_squared(*rf, "Rabinowitz-Floer complex");
  check_filtration(*rf, "Rabinowitz-Floer complex", [&](const std::string& a, const std::string& b) {
    return rf_precedes(*rf, a, b);
  });

  // On the constant loops the differential is fixed modulo negative action.
  const int chi = model.euler_parity();
  for (const auto& cp : model.constant.critical_points) {
    auto zero_part = [&](const std::string& id) {
      std::set<std::string> out;
      for (const auto& t : rf->boundary_of(id)) {
        if (action_of(*rf, t) >= 0.0) out.insert(t);
      }
      return out;
    };
    std::set<std::string> want_plus;
    std::set<std::string> want_minus;
    auto it = model.constant.boundary.find(cp.id);
    if (it != model.constant.boundary.end()) {
      for (const auto& t : it->second) {
        want_plus.insert(plus_id(t));
        want_minus.insert(minus_id(t));
      }
    }
    if (cp.id == qmax) {
      want_minus.clear();
      if (chi) want_minus.insert(plus_id(qmin));
    }
    if (zero_part(plus_id(cp.id)) != want_plus) {
      throw ModelError(ModelErrorKind::ConstantStratum,
                       "boundary of '" + plus_id(cp.id) + "' modulo negative action", plus_id(cp.id));
    }
    if (zero_part(minus_id(cp.id)) != want_minus) {
      throw ModelError(ModelErrorKind::ConstantStratum,
                       "boundary of '" + minus_id(cp.id) + "' modulo negative action",
                       minus_id(cp.id));
    }
  }

  // Phi = Z+ plus lower terms in the same class and degree.
  Images phi_img;
  for (const auto& [id, p] : info) phi_img[id] = {plus_id(id)};
  for (const auto& [g, terms] : model.phi_terms) {
    auto it = info.find(g);
    if (it == info.end()) throw InputError("model: Phi terms given for unknown '" + g + "'");
    const std::string lead = plus_id(g);
    for (const auto& w : terms) {
      if (!rf->find(w)) throw InputError("model: Phi term '" + w + "' is not a generator");
      if (degree.at(w) != degree.at(lead) || !rf_precedes(*rf, w, lead) ||
          class_of(*rf, w) != it->second.klass ||
          (it->second.constant && action_of(*rf, w) >= 0.0)) {
        throw ModelError(ModelErrorKind::Coefficients,
                         "Phi(" + g + ") may not contain '" + w + "'", g);
      }
      phi_img[g].push_back(w);
    }
  }

  // Psi(Z-(gamma)) = gamma plus larger terms; Psi(Z+) arbitrary.
  Images psi_img;
  for (const auto& [id, p] : info) psi_img[minus_id(id)] = {id};
  for (const auto& [z, terms] : model.psi_terms) {
    auto zref = rf->find(z);
    if (!zref) throw InputError("model: Psi terms given for unknown '" + z + "'");
    const bool minus = z.rfind("Z-(", 0) == 0;
    const std::string gamma = z.substr(3, z.size() - 4);
    for (const auto& b : terms) {
      auto bref = comorse->find(b);
      if (!bref) throw InputError("model: Psi term '" + b + "' is not a critical point");
      bool ok = bref->degree == zref->degree && class_of(*comorse, b) == model.negate(class_of(*rf, z));
      if (minus) {
        ok = ok && morse_precedes(*comorse, gamma, b) &&
             !(info.at(gamma).constant && info.at(b).constant);
      }
      if (!ok) {
        throw ModelError(ModelErrorKind::Coefficients,
                         "Psi(" + z + ") may not contain '" + b + "'", z);
      }
      psi_img[z].push_back(b);
    }
  }

  RfComplexes cx{morse, comorse, rf, GradedMap::from_images(morse, rf, 0, phi_img),
                 GradedMap::from_images(rf, comorse, 0, psi_img)};
  if (auto r = verify_chain_map(cx.phi); !r) {
    throw ModelError(ModelErrorKind::Coefficients,
                     "Phi is not a chain map at '" + r.witness->generator + "'",
                     r.witness->generator);
  }
  if (auto r = verify_chain_map(cx.psi); !r) {
    throw ModelError(ModelErrorKind::Coefficients,
                     "Psi is not a chain map at '" + r.witness->generator + "'",
                     r.witness->generator);
  }
  return cx;
}

GradedMap derive_phi_hat(const RfModel& model, const RfComplexes& cx) {
  const auto& rf = *cx.rf;
  std::vector<std::string> order;
  for (int k = rf.min_degree(); k <= rf.max_degree(); ++k) {
    for (const auto& id : rf.ids(k)) order.push_back(id);
  }
  std::sort(order.begin(), order.end(),
            [&](const std::string& a, const std::string& b) { return rf_precedes(rf, a, b); });

  std::map<std::string, std::set<std::string>> value;
  for (const auto& z : order) {
    auto& out = value[z];
    if (z.rfind("Z+(", 0) != 0) continue;
    const std::string gamma = z.substr(3, z.size() - 4);
    out.insert(gamma);
    auto it = model.phi_terms.find(gamma);
    if (it == model.phi_terms.end()) continue;
    for (const auto& w : it->second) {
      for (const auto& x : value.at(w)) {
        if (!out.erase(x)) out.insert(x);
      }
    }
  }
  Images img;
  for (auto& [z, s] : value) img[z] = {s.begin(), s.end()};
  return GradedMap::from_images(cx.rf, cx.morse, 0, img);
}

GradedMap derive_psi_hat(const RfModel& model, const RfComplexes& cx) {
  const auto& m = *cx.comorse;
  std::vector<std::string> order;
  for (int k = m.min_degree(); k <= m.max_degree(); ++k) {
    for (const auto& id : m.ids(k)) order.push_back(id);
  }
  std::sort(order.begin(), order.end(),
            [&](const std::string& a, const std::string& b) { return morse_precedes(m, a, b); });

  auto terms_of = [&](const std::string& gamma) -> const std::vector<std::string>& {
    static const std::vector<std::string> none;
    auto it = model.psi_terms.find(minus_id(gamma));
    return it == model.psi_terms.end() ? none : it->second;
  };

  Images img;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const std::string& gamma = order[p];
    // parity[beta] accumulates sum over chosen alpha of n(alpha, beta).
    std::set<std::string> parity;
    std::set<std::string> direct = as_set(terms_of(gamma));
    std::vector<std::string> out{minus_id(gamma)};
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const std::string& beta = order[q];
      const bool coefficient = (direct.count(beta) > 0) != (parity.count(beta) > 0);
      if (!coefficient) continue;
      out.push_back(minus_id(beta));
      for (const auto& next : terms_of(beta)) {
        if (!parity.erase(next)) parity.insert(next);
      }
    }
    img[gamma] = std::move(out);
  }
  return GradedMap::from_images(cx.comorse, cx.rf, 0, img);
}

std::optional<HomotopyResult> derive_homotopy(const RfModel& model, const RfComplexes& cx) {
  const std::string qmin = model.constant.minimum().id;
  auto positive = [&](const GradedMap& p) {
    for (const auto& t : p.image_of(qmin)) {
      if (action_of(*cx.comorse, t) <= 0.0) return false;
    }
    return true;
  };
  if (model.homotopy) {
    auto p = GradedMap::from_images(cx.morse, cx.comorse, 1, *model.homotopy);
    return HomotopyResult{p, positive(p)};
  }
  const GradedMap psi_phi = compose(cx.psi, cx.phi);
  const GradedMap zero(cx.morse, cx.comorse, 0);
  auto degree_zero = [&](const std::string& src, const std::string&) {
    return cx.morse->at(src).degree == 0;
  };
  auto strict = [&](const std::string& src, const std::string& dst) {
    return degree_zero(src, dst) && (src != qmin || action_of(*cx.comorse, dst) > 0.0);
  };
  if (auto p = solve_chain_homotopy(psi_phi, zero, strict)) return HomotopyResult{*p, true};
  if (auto p = solve_chain_homotopy(psi_phi, zero, degree_zero)) {
    return HomotopyResult{*p, positive(*p)};
  }
  return std::nullopt;
}

namespace {

CheckResult first_failure(std::initializer_list<std::pair<const char*, CheckResult>> parts) {
  for (const auto& [note, r] : parts) {
    if (!r.ok) {
      CheckResult out = r;
      if (out.witness) out.witness->note = note;
      return out;
    }
  }
  return {};
}

CheckResult check_zero(const GradedMap& f) { return verify_equal(f, GradedMap(f.source(), f.target(), f.shift())); }

CheckResult check_image_is_kernel(const GradedMap& theta, const GradedMap& psi) {
  const auto& y = *theta.target();
  for (int k = y.min_degree(); k <= y.max_degree(); ++k) {
    const auto image = theta.matrix(k).columns();
    const auto kernel = f2::kernel_basis(psi.matrix(k));
    if (!f2::same_span(image, kernel, y.dim(k))) {
      return {false, Witness{y.dim(k) ? y.id(k, 0) : std::string(), k, {}, "degree mismatch"}};
    }
  }
  return {};
}

}  // namespace

MainIdentityReport verify_main(const RfModel& model) {
  RfComplexes cx = build_complexes(model);
  const GradedMap phi_hat = derive_phi_hat(model, cx);
  const GradedMap psi_hat = derive_psi_hat(model, cx);

  auto hp = derive_homotopy(model, cx);
  const GradedMap p = hp ? hp->homotopy : GradedMap(cx.morse, cx.comorse, 1);
  const GradedMap d_m = differential(cx.morse);
  const GradedMap d_rf = differential(cx.rf);

  const GradedMap psi_hat_p = compose(psi_hat, p);
  const GradedMap theta = cx.phi + compose(psi_hat_p, d_m) + compose(d_rf, psi_hat_p);
  const GradedMap correction = compose(phi_hat, compose(d_rf, compose(psi_hat_p, phi_hat)));
  const GradedMap theta_hat = phi_hat + correction;
  const GradedMap d_psi_hat = compose(d_rf, psi_hat);
  const GradedMap delta = compose(theta_hat, d_psi_hat);

  MainIdentityReport r{cx, phi_hat, psi_hat, p, theta, theta_hat, delta, !model.homotopy,
                      hp && hp->minimum_positive_energy, {}, {}, 0};

  const GradedMap psi_phi = compose(cx.psi, cx.phi);
  CheckResult p_exists = hp ? CheckResult{} : CheckResult{false, Witness{"", 0, {}, "no homotopy supported in degree zero"}};
  r.identities.add(
      "(i) Theta is a chain map homotopic to Phi",
      first_failure({{"no homotopy P", p_exists},
                     {"Psi Phi = P d + d P", verify_chain_homotopy(psi_phi, GradedMap(cx.morse, cx.comorse, 0), p)},
                     {"Theta is a chain map", verify_chain_map(theta)},
                     {"Phi + Theta = d H + H d", verify_chain_homotopy(cx.phi, theta, psi_hat_p)}}));
  r.identities.add("(ii) Phi_hat d Psi_hat P Phi_hat d Psi_hat = 0",
                   check_zero(compose(correction, d_psi_hat)));
  r.identities.add("(iii) Theta_hat Theta = id",
                   verify_equal(compose(theta_hat, theta), GradedMap::identity(cx.morse)));
  r.identities.add("(iv) Psi Theta = 0", check_zero(compose(cx.psi, theta)));
  r.identities.add("(v) im Theta = ker Psi", check_image_is_kernel(theta, cx.psi));
  r.identities.add("(vi) Theta Theta_hat + Psi_hat Psi = id",
                   verify_equal(compose(theta, theta_hat) + compose(psi_hat, cx.psi),
                                GradedMap::identity(cx.rf)));
  r.identities.add("(vii) Theta_hat d Psi_hat = Phi_hat d Psi_hat",
                   verify_equal(delta, compose(phi_hat, d_psi_hat)));
  Images expected;
  if (model.euler_parity()) {
    expected[model.constant.maximum().id] = {model.constant.minimum().id};
  }
  r.identities.add("(viii) connecting map is Euler bit times q_max -> q_min",
                   verify_equal(delta, GradedMap::from_images(cx.comorse, cx.morse, -1, expected)));

  SplitShortExactSequence seq{theta, cx.psi, theta_hat, psi_hat};
  for (auto& c : verify_splitting(seq).checks) r.sequence.add("splitting: " + c.name, c.result);
  const auto les = long_exact_sequence(seq);
  r.les_nodes = les.nodes.size();
  CheckResult exact;
  for (const auto& node : les.nodes) {
    if (!node.exact) {
      exact = {false, Witness{"", node.degree, {}, "not exact at H(" + node.space + ")"}};
      break;
    }
  }
  r.sequence.add("long exact sequence is exact", exact);
  auto cone = cone_equivalence(seq);
  for (auto& c : cone.checks.checks) r.sequence.add("cone: " + c.name, c.result);
  return r;
}

bool ActionWindow::contains(double a) const {
  const bool above = lower_inclusive ? a >= lower : a > lower;
  const bool below = upper_inclusive ? a <= upper : a < upper;
  return above && below;
}

GradedF2Complex filter_by_action(const GradedF2Complex& c, const ActionWindow& window) {
  return restrict_to(c, [&](const std::string& id) { return window.contains(action_of(c, id)); });
}

GradedMap window_map(const ComplexPtr& c, const ActionWindow& from, const ActionWindow& to) {
  if (from.lower > to.lower || from.upper > to.upper) {
    throw InputError("window map: both endpoints must move up");
  }
  auto src = share(filter_by_action(*c, from));
  auto dst = share(filter_by_action(*c, to));
  Images img;
  for (int k = src->min_degree(); k <= src->max_degree(); ++k) {
    for (const auto& id : src->ids(k)) {
      if (dst->find(id)) img[id] = {id};
    }
  }
  return GradedMap::from_images(src, dst, 0, img);
}

namespace {

GradedMap project_map(const GradedMap& f, const ComplexPtr& src, const ComplexPtr& dst) {
  Images img;
  for (int k = src->min_degree(); k <= src->max_degree(); ++k) {
    for (const auto& id : src->ids(k)) {
      std::vector<std::string> kept;
      for (const auto& t : f.image_of(id)) {
        if (dst->find(t)) kept.push_back(t);
      }
      img[id] = std::move(kept);
    }
  }
  return GradedMap::from_images(src, dst, f.shift(), img);
}

CheckResult check_isomorphism(const GradedMap& f) {
  if (auto r = verify_chain_map(f); !r) return r;
  const auto& s = *f.source();
  const auto& t = *f.target();
  const int lo = std::min(s.min_degree(), t.min_degree());
  const int hi = std::max(s.max_degree(), t.max_degree());
  for (int k = lo; k <= hi; ++k) {
    if (s.dim(k) != t.dim(k) || f2::rank(f.matrix(k)) != s.dim(k)) {
      return {false, Witness{"", k, {}, "not invertible"}};
    }
  }
  return {};
}

}  // namespace

CheckList action_isomorphisms(const RfModel& /*model*/, const RfComplexes& cx) {
  auto positive = [](const ComplexPtr& c) {
    return share(restrict_to(*c, [&](const std::string& id) { return action_of(*c, id) > 0.0; }));
  };
  auto negative = [](const ComplexPtr& c) {
    return share(restrict_to(*c, [&](const std::string& id) { return action_of(*c, id) < 0.0; }));
  };
  CheckList out;
  out.add("Phi: positive energy -> positive action",
          check_isomorphism(project_map(cx.phi, positive(cx.morse), positive(cx.rf))));
  out.add("Psi: negative action -> positive energy",
          check_isomorphism(project_map(cx.psi, negative(cx.rf), positive(cx.comorse))));
  return out;
}

bool HrfClassTable::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const HrfRow& r) {
    return !r.expected || *r.expected == static_cast<long long>(r.computed);
  });
}

bool HrfReport::ok() const {
  return std::all_of(classes.begin(), classes.end(), [](const HrfClassTable& t) { return t.ok(); });
}

HrfReport hrf_table(const RfModel& model, const ActionWindow& window) {
  const RfComplexes cx = build_complexes(model);
  const auto filtered = filter_by_action(*cx.rf, window);
  const bool full = filtered.total_dim() == cx.rf->total_dim();

  std::set<std::string> classes;
  for (const auto* c : {cx.rf.get(), cx.morse.get(), cx.comorse.get()}) {
    for (int k = c->min_degree(); k <= c->max_degree(); ++k) {
      for (const auto& id : c->ids(k)) classes.insert(class_of(*c, id));
    }
  }

  HrfReport report;
  for (const auto& klass : classes) {
    auto in_class = [&](const GradedF2Complex& c) {
      return restrict_to(c, [&](const std::string& id) { return class_of(c, id) == klass; });
    };
    const auto h_rf = homology(in_class(filtered));
    const auto h_m = homology(in_class(*cx.morse));
    const auto h_c = homology(restrict_to(*cx.comorse, [&](const std::string& id) {
      return class_of(*cx.comorse, id) == model.negate(klass);
    }));
    const long long r = (klass == model.contractible_class) ? model.euler_parity() : 0;

    HrfClassTable table{klass, {}};
    const int lo = std::min({cx.rf->min_degree(), cx.morse->min_degree(), cx.comorse->min_degree()});
    const int hi = std::max({cx.rf->max_degree(), cx.morse->max_degree(), cx.comorse->max_degree()});
    for (int k = lo; k <= hi; ++k) {
      HrfRow row{k, h_rf.betti_at(k), std::nullopt};
      if (full) {
        const auto bm = static_cast<long long>(h_m.betti_at(k));
        const auto bc = static_cast<long long>(h_c.betti_at(k));
        if (k >= 2) {
          row.expected = bm;
        } else if (k <= -1) {
          row.expected = bc;
        } else {
          row.expected = bm + bc - r;
        }
      }
      table.rows.push_back(row);
    }
    report.classes.push_back(std::move(table));
  }
  return report;
}

}  // namespace rfh::rf
