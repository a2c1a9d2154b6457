#include "rfh/morse_gysin.hpp"

#include <algorithm>
#include <cmath>

#include "rfh/errors.hpp"

namespace rfh {

namespace {

const CriticalPoint& unique_of_index(const MorseData& d, int index, const char* what) {
  const CriticalPoint* found = nullptr;
  for (const auto& cp : d.critical_points) {
    if (cp.index != index) continue;
    if (found) throw InputError(std::string("Morse data: more than one ") + what);
    found = &cp;
  }
  if (!found) throw InputError(std::string("Morse data: no ") + what);
  return *found;
}

}  // namespace

const CriticalPoint& MorseData::minimum() const { return unique_of_index(*this, 0, "minimum"); }
const CriticalPoint& MorseData::maximum() const {
  return unique_of_index(*this, dimension, "maximum");
}

GradedF2Complex build_morse_complex(const MorseData& data) {
  GradedF2Complex::Builder b;
  b.window(0, std::max(data.dimension, 0));
  for (const auto& cp : data.critical_points) {
    if (cp.index < 0 || cp.index > data.dimension) {
      throw InputError("Morse data: critical point '" + cp.id + "' has index " +
                       std::to_string(cp.index) + " outside [0, n]");
    }
    GeneratorLabel label;
    label.value = cp.value;
    b.add_generator(cp.id, cp.index, label);
  }
  for (const auto& [q, targets] : data.boundary) b.set_boundary(q, targets);
  return b.build();
}

void validate(const MorseData& data) {
  if (data.dimension < 2) {
    throw InputError("Morse data: the manifold dimension must be at least 2");
  }
  if (data.euler_parity != 0 && data.euler_parity != 1) {
    throw InputError("Morse data: the Euler bit must be 0 or 1");
  }
  data.minimum();
  data.maximum();
  for (const auto& cp : data.critical_points) {
    if (std::abs(cp.value - cp.index) > 1e-12) {
      throw InputError("Morse data: '" + cp.id + "' has value " + std::to_string(cp.value) +
                       " but index " + std::to_string(cp.index) + " (not self-indexing)");
    }
  }
  const GradedF2Complex c = build_morse_complex(data);
  rfh::validate(c);
  const auto h = homology(c);
  if (h.betti_at(0) != 1 || h.betti_at(data.dimension) != 1) {
    throw InputError("Morse data: b_0 and b_n must both equal 1");
  }
  int parity = 0;
  for (const auto& cp : data.critical_points) parity ^= (cp.index & 1);
  if (parity != data.euler_parity) {
    throw InputError("Morse data: Euler bit " + std::to_string(data.euler_parity) +
                     " disagrees with the alternating count of critical points");
  }
}

std::string sphere_plus_id(const std::string& q) { return "x+(" + q + ")"; }
std::string sphere_minus_id(const std::string& q) { return "x-(" + q + ")"; }

GradedF2Complex build_sphere_bundle_complex(const MorseData& data) {
  validate(data);
  const int n = data.dimension;
  const std::string qmin = data.minimum().id;
  const std::string qmax = data.maximum().id;

  GradedF2Complex::Builder b;
  b.window(0, 2 * n - 1);
  for (const auto& cp : data.critical_points) {
    GeneratorLabel minus;
    minus.value = cp.value;
    GeneratorLabel plus;
    plus.value = cp.value + 0.5;
    b.add_generator(sphere_minus_id(cp.id), cp.index, minus);
    b.add_generator(sphere_plus_id(cp.id), cp.index + n - 1, plus);
  }
  for (const auto& cp : data.critical_points) {
    auto it = data.boundary.find(cp.id);
    std::vector<std::string> plus;
    std::vector<std::string> minus;
    if (it != data.boundary.end()) {
      for (const auto& t : it->second) {
        plus.push_back(sphere_plus_id(t));
        minus.push_back(sphere_minus_id(t));
      }
    }
    if (cp.id == qmax) {
      // The top cell of the base is a cycle; its lift sees the Euler class.
      minus.clear();
      if (data.euler_parity) minus.push_back(sphere_plus_id(qmin));
    }
    b.set_boundary(sphere_plus_id(cp.id), std::move(plus));
    b.set_boundary(sphere_minus_id(cp.id), std::move(minus));
  }
  GradedF2Complex c = b.build();
  rfh::validate(c);
  return c;
}

GysinModel gysin_model(const MorseData& data) {
  const int n = data.dimension;
  auto base = share(build_morse_complex(data));
  auto bundle = share(build_sphere_bundle_complex(data));

  std::map<std::string, std::vector<std::string>> phi_img;
  std::map<std::string, std::vector<std::string>> psi_img;
  std::map<std::string, std::vector<std::string>> phi_hat_img;
  std::map<std::string, std::vector<std::string>> psi_hat_img;
  for (const auto& cp : data.critical_points) {
    phi_img[cp.id] = {sphere_plus_id(cp.id)};
    psi_img[sphere_minus_id(cp.id)] = {cp.id};
    phi_hat_img[sphere_plus_id(cp.id)] = {cp.id};
    psi_hat_img[cp.id] = {sphere_minus_id(cp.id)};
  }

  GysinModel m{base, bundle, GradedMap::from_images(base, bundle, n - 1, phi_img),
               GradedMap::from_images(bundle, base, 0, psi_img),
               {GradedMap(base, base, 0), GradedMap(base, base, 0), GradedMap(base, base, 0),
                GradedMap(base, base, 0)}};

  auto y = share(shift_degrees(*bundle, -(n - 1)));
  auto z = share(shift_degrees(*base, -(n - 1)));
  m.sequence.theta = GradedMap::from_images(base, y, 0, phi_img);
  m.sequence.psi = GradedMap::from_images(y, z, 0, psi_img);
  m.sequence.theta_hat = GradedMap::from_images(y, base, 0, phi_hat_img);
  m.sequence.psi_hat = GradedMap::from_images(z, y, 0, psi_hat_img);
  return m;
}

std::vector<std::size_t> sphere_bundle_homology_table(const std::vector<std::size_t>& base_betti,
                                                      int dimension, int euler_parity) {
  if (dimension < 2) throw InputError("sphere bundle table: dimension must be at least 2");
  const int n = dimension;
  auto b = [&](int k) -> std::size_t {
    return k >= 0 && k < static_cast<int>(base_betti.size()) ? base_betti[static_cast<std::size_t>(k)]
                                                             : 0;
  };
  const std::size_t extra = euler_parity ? 0 : 1;
  std::vector<std::size_t> table;
  for (int k = 0; k <= 2 * n - 1; ++k) {
    if (k <= n - 2) {
      table.push_back(b(k));
    } else if (k == n - 1) {
      table.push_back(b(n - 1) + extra);
    } else if (k == n) {
      table.push_back(b(1) + extra);
    } else {
      table.push_back(b(k - n + 1));
    }
  }
  return table;
}

}  // namespace rfh
