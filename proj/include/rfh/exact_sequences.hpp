#pragma once

#include <string>
#include <vector>

#include "rfh/chain_complex.hpp"

namespace rfh {

// 0 -> X --theta--> Y --psi--> Z -> 0 with linear splittings theta_hat and
// psi_hat. All four maps have degree zero; only theta and psi need to be
// chain maps.
struct SplitShortExactSequence {
  GradedMap theta;
  GradedMap psi;
  GradedMap theta_hat;
  GradedMap psi_hat;

  const ComplexPtr& x() const { return theta.source(); }
  const ComplexPtr& y() const { return theta.target(); }
  const ComplexPtr& z() const { return psi.target(); }
};

struct NamedCheck {
  std::string name;
  CheckResult result;
};

struct CheckList {
  std::vector<NamedCheck> checks;
  bool ok() const;
  const NamedCheck* first_failure() const;
  void add(std::string name, CheckResult r) { checks.push_back({std::move(name), std::move(r)}); }
};

CheckList verify_splitting(const SplitShortExactSequence& seq);

// theta_hat d psi_hat, a chain map Z -> X of degree -1.
GradedMap connecting_map(const SplitShortExactSequence& seq);

struct LesNode {
  std::string space;  // "X", "Y" or "Z"
  int degree = 0;
  std::size_t dim = 0;
  bool exact = false;
};

// Nodes run H_k X, H_k Y, H_k Z, H_{k-1} X, ... from the top degree down;
// maps[i] goes from nodes[i] to nodes[i + 1].
struct LongExactSequence {
  std::vector<LesNode> nodes;
  std::vector<f2::F2SparseMatrix> maps;
  bool exact() const;
  // Rank of the connecting map out of H_k Z.
  std::size_t connecting_rank(int k) const;
};

LongExactSequence long_exact_sequence(const SplitShortExactSequence& seq);

// Comparison between the cone of psi and the suspension of X.
struct ConeEquivalence {
  MappingCone cone;
  ComplexPtr suspended_x;
  GradedMap sigma;  // X+ -> C
  GradedMap rho;    // C -> X+
  GradedMap tau;    // C -> C, degree +1
  CheckList checks;
};

ConeEquivalence cone_equivalence(const SplitShortExactSequence& seq);

}  // namespace rfh
