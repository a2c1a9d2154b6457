#pragma once

// Morse complexes of self-indexing functions on closed manifolds and the
// Morse model of the unit sphere bundle, together with the split sequence
// that realises the Gysin sequence.

#include <map>
#include <string>
#include <vector>

#include "rfh/chain_complex.hpp"
#include "rfh/exact_sequences.hpp"

namespace rfh {

struct CriticalPoint {
  std::string id;
  int index = 0;
  double value = 0.0;
};

struct MorseData {
  int dimension = 0;
  std::vector<CriticalPoint> critical_points;
  // boundary[q] lists the critical points q' of index ind(q) - 1 with an odd
  // number of flow lines from q to q'.
  std::map<std::string, std::vector<std::string>> boundary;
  int euler_parity = 0;

  const CriticalPoint& minimum() const;
  const CriticalPoint& maximum() const;
};

// Rejects dimension < 2, a non-unique minimum or maximum, values that are not
// self-indexing, d^2 != 0, b_0 or b_n different from one, and an Euler bit
// that disagrees with the alternating count of critical points.
void validate(const MorseData& data);

GradedF2Complex build_morse_complex(const MorseData& data);

std::string sphere_plus_id(const std::string& q);
std::string sphere_minus_id(const std::string& q);

// Generators x_q^- in degree ind q and x_q^+ in degree ind q + n - 1.
GradedF2Complex build_sphere_bundle_complex(const MorseData& data);

struct GysinModel {
  ComplexPtr base;           // Morse complex of the base
  ComplexPtr sphere_bundle;  // Morse complex of the sphere bundle
  GradedMap phi;             // base -> sphere bundle, degree n - 1
  GradedMap psi;             // sphere bundle -> base, degree 0
  // The same data regraded so that every map has degree zero:
  // X = base, Y = sphere bundle shifted down by n - 1, Z = base shifted down by n - 1.
  SplitShortExactSequence sequence;
};

GysinModel gysin_model(const MorseData& data);

// H_k of the sphere bundle predicted from the Betti numbers of the base,
// indexed by k = 0 .. 2n - 1.
std::vector<std::size_t> sphere_bundle_homology_table(const std::vector<std::size_t>& base_betti,
                                                      int dimension, int euler_parity);

}  // namespace rfh
