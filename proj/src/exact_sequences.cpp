#include "rfh/exact_sequences.hpp"

#include <algorithm>

#include "rfh/errors.hpp"

namespace rfh {

using f2::F2SparseMatrix;
using f2::F2Vector;

bool CheckList::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.result.ok; });
}

const NamedCheck* CheckList::first_failure() const {
  for (const auto& c : checks) {
    if (!c.result.ok) return &c;
  }
  return nullptr;
}

namespace {

void require_degree_zero(const SplitShortExactSequence& seq) {
  if (seq.theta.shift() != 0 || seq.psi.shift() != 0 || seq.theta_hat.shift() != 0 ||
      seq.psi_hat.shift() != 0) {
    throw InputError("split sequence: all maps must have degree zero");
  }
}

CheckResult check_exact_middle(const SplitShortExactSequence& seq) {
  const auto& y = *seq.y();
  for (int k = y.min_degree(); k <= y.max_degree(); ++k) {
    const F2SparseMatrix t = seq.theta.matrix(k);
    const auto image = t.columns();
    const auto kernel = f2::kernel_basis(seq.psi.matrix(k));
    if (!f2::same_span(image, kernel, y.dim(k))) {
      std::string gen = y.dim(k) ? y.id(k, 0) : std::string();
      return {false, Witness{gen, k, {}, {}}};
    }
  }
  return {};
}

CheckResult check_injective(const GradedMap& f) {
  const auto& c = *f.source();
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    auto ker = f2::kernel_basis(f.matrix(k));
    if (!ker.empty()) return {false, Witness{c.ids_of(k, ker.front()).front(), k, {}, {}}};
  }
  return {};
}

CheckResult check_surjective(const GradedMap& f) {
  const auto& t = *f.target();
  for (int k = t.min_degree(); k <= t.max_degree(); ++k) {
    if (f2::rank(f.matrix(k - f.shift())) != t.dim(k)) {
      return {false, Witness{t.dim(k) ? t.id(k, 0) : std::string(), k, {}, {}}};
    }
  }
  return {};
}

}  // namespace

CheckList verify_splitting(const SplitShortExactSequence& seq) {
  require_degree_zero(seq);
  CheckList out;
  out.add("theta is a chain map", verify_chain_map(seq.theta));
  out.add("psi is a chain map", verify_chain_map(seq.psi));
  out.add("theta injective", check_injective(seq.theta));
  out.add("psi surjective", check_surjective(seq.psi));
  out.add("im theta = ker psi", check_exact_middle(seq));
  out.add("theta_hat theta = id",
          verify_equal(compose(seq.theta_hat, seq.theta), GradedMap::identity(seq.x())));
  out.add("psi psi_hat = id",
          verify_equal(compose(seq.psi, seq.psi_hat), GradedMap::identity(seq.z())));
  out.add("theta theta_hat + psi_hat psi = id",
          verify_equal(compose(seq.theta, seq.theta_hat) + compose(seq.psi_hat, seq.psi),
                       GradedMap::identity(seq.y())));
  return out;
}

GradedMap connecting_map(const SplitShortExactSequence& seq) {
  require_degree_zero(seq);
  return compose(seq.theta_hat, compose(differential(seq.y()), seq.psi_hat));
}

bool LongExactSequence::exact() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const LesNode& n) { return n.exact; });
}

std::size_t LongExactSequence::connecting_rank(int k) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].space == "Z" && nodes[i].degree == k) {
      return i < maps.size() ? f2::rank(maps[i]) : 0;
    }
  }
  return 0;
}

LongExactSequence long_exact_sequence(const SplitShortExactSequence& seq) {
  require_degree_zero(seq);
  const auto hx = homology(*seq.x());
  const auto hy = homology(*seq.y());
  const auto hz = homology(*seq.z());
  const auto theta_star = induced_map_on_homology(seq.theta, hx, hy);
  const auto psi_star = induced_map_on_homology(seq.psi, hy, hz);
  const auto delta_star = induced_map_on_homology(connecting_map(seq), hz, hx);

  int lo = 0;
  int hi = -1;
  bool any = false;
  for (const auto* c : {seq.x().get(), seq.y().get(), seq.z().get()}) {
    if (c->empty()) continue;
    lo = any ? std::min(lo, c->min_degree()) : c->min_degree();
    hi = any ? std::max(hi, c->max_degree()) : c->max_degree();
    any = true;
  }

  auto block = [](const std::map<int, F2SparseMatrix>& m, int k, std::size_t rows,
                  std::size_t cols) {
    auto it = m.find(k);
    return it != m.end() ? it->second : F2SparseMatrix(rows, cols);
  };

  LongExactSequence les;
  for (int k = hi; k >= lo && any; --k) {
    les.nodes.push_back({"X", k, hx.betti_at(k), false});
    les.nodes.push_back({"Y", k, hy.betti_at(k), false});
    les.nodes.push_back({"Z", k, hz.betti_at(k), false});
    les.maps.push_back(block(theta_star, k, hy.betti_at(k), hx.betti_at(k)));
    les.maps.push_back(block(psi_star, k, hz.betti_at(k), hy.betti_at(k)));
    if (k > lo) les.maps.push_back(block(delta_star, k, hx.betti_at(k - 1), hz.betti_at(k)));
  }
  // The tail map out of the last node lands in H_{lo-1} X, which is zero.
  for (std::size_t i = 0; i < les.nodes.size(); ++i) {
    const std::size_t dim = les.nodes[i].dim;
    const F2SparseMatrix in = i > 0 ? les.maps[i - 1] : F2SparseMatrix(dim, 0);
    const F2SparseMatrix out = i < les.maps.size() ? les.maps[i] : F2SparseMatrix(0, dim);
    const auto kernel = f2::kernel_basis(out);
    les.nodes[i].exact = f2::same_span(in.columns(), kernel, dim);
  }
  return les;
}

ConeEquivalence cone_equivalence(const SplitShortExactSequence& seq) {
  require_degree_zero(seq);
  MappingCone cone = mapping_cone(seq.psi);
  auto xplus = share(suspension(*seq.x()));
  const auto& x = *seq.x();
  const auto& z = *seq.z();
  const auto& c = cone.cone;
  const GradedMap delta = connecting_map(seq);

  std::map<std::string, std::vector<std::string>> sigma_img;
  for (int k = x.min_degree(); k <= x.max_degree(); ++k) {
    for (const auto& id : x.ids(k)) {
      std::vector<std::string> t;
      for (const auto& w : seq.theta.image_of(id)) t.push_back(cone_source_id(w));
      sigma_img[id] = std::move(t);
    }
  }
  std::map<std::string, std::vector<std::string>> rho_img;
  std::map<std::string, std::vector<std::string>> tau_img;
  for (int k = z.min_degree(); k <= z.max_degree(); ++k) {
    for (const auto& id : z.ids(k)) {
      rho_img[cone_target_id(id)] = delta.image_of(id);
      std::vector<std::string> t;
      for (const auto& w : seq.psi_hat.image_of(id)) t.push_back(cone_source_id(w));
      tau_img[cone_target_id(id)] = std::move(t);
    }
  }
  const auto& y = *seq.y();
  for (int k = y.min_degree(); k <= y.max_degree(); ++k) {
    for (const auto& id : y.ids(k)) rho_img[cone_source_id(id)] = seq.theta_hat.image_of(id);
  }

  ConeEquivalence eq{cone,
                     xplus,
                     GradedMap::from_images(xplus, c, 0, sigma_img),
                     GradedMap::from_images(c, xplus, 0, rho_img),
                     GradedMap::from_images(c, c, 1, tau_img),
                     {}};

  auto& checks = eq.checks;
  checks.add("sigma is a chain map", verify_chain_map(eq.sigma));
  checks.add("rho is a chain map", verify_chain_map(eq.rho));
  checks.add("rho sigma = id", verify_equal(compose(eq.rho, eq.sigma), GradedMap::identity(xplus)));
  checks.add("id + sigma rho = tau d + d tau",
             verify_chain_homotopy(GradedMap::identity(c), compose(eq.sigma, eq.rho), eq.tau));
  checks.add("rho iota = connecting map",
             verify_equal(compose(eq.rho, cone.inclusion), shift_map(delta, seq.z(), xplus)));
  checks.add("pi sigma = theta",
             verify_equal(compose(cone.projection, eq.sigma),
                          shift_map(seq.theta, xplus, cone.suspended_source)));

  const auto hc = homology(*c);
  const auto hxp = homology(*xplus);
  CheckResult same_betti;
  const int lo = std::min(hc.min_degree, hxp.min_degree);
  const int hi = std::max(hc.max_degree(), hxp.max_degree());
  for (int k = lo; k <= hi; ++k) {
    if (hc.betti_at(k) != hxp.betti_at(k)) {
      same_betti = {false, Witness{"", k, {}, {}}};
      break;
    }
  }
  checks.add("H(C) = H(X+)", same_betti);
  return eq;
}

}  // namespace rfh
