#include "rfh/rf_synthesis.hpp"

#include <algorithm>
#include <set>

namespace rfh::rf {

namespace {

using Sets = std::map<std::string, std::set<std::string>>;

void toggle(std::set<std::string>& s, const std::string& x) {
  if (!s.erase(x)) s.insert(x);
}

void toggle_all(std::set<std::string>& s, const std::set<std::string>& xs) {
  for (const auto& x : xs) toggle(s, x);
}

std::vector<std::string> to_vector(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

RfModel synthesize_model(const ModelSkeleton& sk, const SynthesisOptions& options) {
  RfModel m;
  m.constant = sk.constant;
  m.orbits = sk.orbits;
  m.contractible_class = sk.contractible_class;
  m.class_negation = sk.class_negation;
  m.morse_boundary = sk.morse_boundary;
  m.comorse_boundary = sk.comorse_boundary;

  const std::string qmin = m.constant.minimum().id;
  const std::string qmax = m.constant.maximum().id;

  // Base differential: both Morse complexes glued by the Euler bit.
  Sets d;
  for (const auto& [q, targets] : m.constant.boundary) {
    for (const auto& t : targets) {
      d[plus_id(q)].insert(plus_id(t));
      d[minus_id(q)].insert(minus_id(t));
    }
  }
  for (const auto& [g, targets] : m.morse_boundary) {
    for (const auto& t : targets) d[plus_id(g)].insert(plus_id(t));
  }
  for (const auto& [g, targets] : m.comorse_boundary) {
    for (const auto& t : targets) d[minus_id(g)].insert(minus_id(t));
  }
  if (m.euler_parity()) d[minus_id(qmax)].insert(plus_id(qmin));
  for (const auto& [z, s] : d) m.rf_boundary[z] = to_vector(s);

  // Validates the skeleton and provides gradings, labels and orders.
  const RfComplexes base = build_complexes(m);
  const auto& morse = *base.morse;
  const auto& comorse = *base.comorse;
  const auto& rf0 = *base.rf;

  std::vector<std::string> points;
  for (int k = morse.min_degree(); k <= morse.max_degree(); ++k) {
    for (const auto& id : morse.ids(k)) points.push_back(id);
  }

  Sets phi;  // Phi(gamma)
  Sets psi;  // Psi(z)
  for (const auto& g : points) {
    phi[g] = {plus_id(g)};
    psi[minus_id(g)] = {g};
    psi[plus_id(g)];
  }

  if (sk.homotopy_target) {
    const std::string& beta = *sk.homotopy_target;
    auto ref = comorse.find(beta);
    if (!ref || ref->degree != 1 || comorse.label(beta).klass != sk.contractible_class ||
        comorse.label(beta).action.value_or(0.0) <= 0.0) {
      throw InputError("synthesis: homotopy target '" + beta +
                       "' must be a contractible orbit of minus index zero");
    }
    // Psi += d K + K d with K(Z+(q_min)) = beta.
    const std::string zmin = plus_id(qmin);
    for (const auto& t : comorse.boundary_of(beta)) toggle(psi[zmin], t);
    for (auto& [z, targets] : d) {
      if (targets.count(zmin)) toggle(psi[z], beta);
    }
  }

  // Filtered change of basis: a -> a + b with b below a in the same degree
  // and class; zero-action generators only absorb negative action.
  std::mt19937_64 rng(options.seed);
  std::vector<std::string> rf_ids;
  for (int k = rf0.min_degree(); k <= rf0.max_degree(); ++k) {
    for (const auto& id : rf0.ids(k)) rf_ids.push_back(id);
  }
  for (std::size_t move = 0; move < options.basis_moves && !rf_ids.empty(); ++move) {
    const std::string& a = rf_ids[pick(rng, rf_ids.size())];
    const auto ka = rf0.at(a).degree;
    const double action_a = rf0.label(a).action.value_or(0.0);
    std::vector<std::string> below;
    for (const auto& b : rf0.ids(ka)) {
      if (b == a || !rf_precedes(rf0, b, a)) continue;
      if (rf0.label(b).klass != rf0.label(a).klass) continue;
      if (action_a == 0.0 && rf0.label(b).action.value_or(0.0) >= 0.0) continue;
      below.push_back(b);
    }
    if (below.empty()) continue;
    const std::string& b = below[pick(rng, below.size())];

    for (auto& [g, s] : phi) {
      if (s.count(a)) toggle(s, b);
    }
    toggle_all(psi[a], psi[b]);
    const std::set<std::string> db = d[b];
    for (auto& [x, s] : d) {
      if (s.count(a)) toggle(s, b);
    }
    // d'(a) = E(d a + d b); the loop above already applied E to d a.
    std::set<std::string> eb = db;
    if (eb.count(a)) toggle(eb, b);
    toggle_all(d[a], eb);
  }

  for (const auto& id : rf_ids) m.rf_degrees[id] = rf0.at(id).degree;
  m.rf_boundary.clear();
  for (auto& [z, s] : d) {
    if (!s.empty()) m.rf_boundary[z] = to_vector(s);
  }
  for (auto& [g, s] : phi) {
    s.erase(plus_id(g));
    if (!s.empty()) m.phi_terms[g] = to_vector(s);
  }
  for (auto& [z, s] : psi) {
    if (z.rfind("Z-(", 0) == 0) s.erase(z.substr(3, z.size() - 4));
    if (!s.empty()) m.psi_terms[z] = to_vector(s);
  }
  return m;
}

MorseData random_morse_data(std::mt19937_64& rng, int n) {
  MorseData data;
  data.dimension = n;
  std::map<int, std::vector<std::string>> by_index;
  auto add = [&](int index) {
    std::string id = "q" + std::to_string(index) + "_" + std::to_string(by_index[index].size());
    data.critical_points.push_back({id, index, static_cast<double>(index)});
    by_index[index].push_back(id);
    return id;
  };
  add(0);
  add(n);
  std::map<std::string, std::set<std::string>> d;
  // Extra homology in mirrored degrees keeps the Betti numbers palindromic.
  for (int k = 1; 2 * k <= n; ++k) {
    const int extra = static_cast<int>(pick(rng, 3));
    for (int i = 0; i < extra; ++i) {
      add(k);
      if (2 * k != n) add(n - k);
    }
  }
  // Cancelling pairs live strictly between the minimum and the maximum.
  for (int k = 2; k <= n - 1; ++k) {
    const int pairs = static_cast<int>(pick(rng, 3));
    for (int i = 0; i < pairs; ++i) {
      const std::string hi = add(k);
      const std::string lo = add(k - 1);
      d[hi].insert(lo);
    }
  }
  // Elementary changes of basis inside each middle degree.
  for (int k = 1; k <= n - 1; ++k) {
    auto& ids = by_index[k];
    if (ids.size() < 2) continue;
    const std::size_t moves = 2 * ids.size();
    for (std::size_t mv = 0; mv < moves; ++mv) {
      const std::string& i = ids[pick(rng, ids.size())];
      const std::string& j = ids[pick(rng, ids.size())];
      if (i == j) continue;
      // New basis vector j + i.
      toggle_all(d[j], d[i]);
      for (auto& [x, s] : d) {
        if (s.count(j)) toggle(s, i);
      }
    }
  }
  for (auto& [x, s] : d) {
    if (!s.empty()) data.boundary[x] = to_vector(s);
  }
  int parity = 0;
  for (const auto& cp : data.critical_points) parity ^= (cp.index & 1);
  data.euler_parity = parity;
  return data;
}

ModelSkeleton random_skeleton(std::mt19937_64& rng) {
  ModelSkeleton sk;
  const int n = 2 + static_cast<int>(pick(rng, 2));
  sk.constant = random_morse_data(rng, n);
  sk.class_negation = {{"a", "-a"}, {"-a", "a"}};
  const std::vector<std::string> classes{"0", "a", "-a", "b"};
  const std::vector<double> energies{1.0, 2.0, 4.0};

  const std::size_t count = 4 + pick(rng, 8);
  for (std::size_t i = 0; i < count; ++i) {
    Orbit o;
    o.id = "g" + std::to_string(i);
    o.klass = classes[pick(rng, classes.size())];
    o.energy = energies[pick(rng, energies.size())];
    o.value = static_cast<double>(pick(rng, 4));
    o.ind_plus = static_cast<int>(pick(rng, 5));
    o.ind_minus = static_cast<int>(pick(rng, 5));
    sk.orbits.push_back(o);
  }
  // Guarantee a contractible orbit of minus index zero for the homotopy.
  Orbit target{"h0", static_cast<int>(pick(rng, 3)), 0, 1.0, 0.0, "0"};
  sk.orbits.push_back(target);
  sk.homotopy_target = target.id;

  auto below = [](const Orbit& a, const Orbit& b) {  // a strictly below b for E then e
    return std::make_pair(a.energy, a.value) < std::make_pair(b.energy, b.value);
  };
  std::set<std::string> used_m;
  std::set<std::string> used_c;
  for (const auto& a : sk.orbits) {
    for (const auto& b : sk.orbits) {
      if (a.klass != b.klass || &a == &b) continue;
      if (!used_m.count(a.id) && !used_m.count(b.id) && a.ind_plus == b.ind_plus + 1 &&
          below(b, a) && pick(rng, 2) == 0) {
        sk.morse_boundary[a.id] = {b.id};
        used_m.insert(a.id);
        used_m.insert(b.id);
      }
      const bool above = std::make_pair(b.energy, -b.value) > std::make_pair(a.energy, -a.value);
      if (!used_c.count(a.id) && !used_c.count(b.id) && b.ind_minus == a.ind_minus + 1 && above &&
          b.id != target.id && a.id != target.id && pick(rng, 2) == 0) {
        sk.comorse_boundary[a.id] = {b.id};
        used_c.insert(a.id);
        used_c.insert(b.id);
      }
    }
  }
  return sk;
}

}  // namespace rfh::rf
