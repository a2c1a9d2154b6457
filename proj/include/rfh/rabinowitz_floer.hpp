#pragma once

// Finite algebraic models of the Rabinowitz-Floer complex of the unit
// cotangent bundle, built from the critical points of the energy functional
// on the free loop space and an auxiliary Morse function on its critical
// manifolds.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfh/chain_complex.hpp"
#include "rfh/errors.hpp"
#include "rfh/exact_sequences.hpp"
#include "rfh/morse_gysin.hpp"

namespace rfh::rf {

// Critical point of the energy with positive energy.
struct Orbit {
  std::string id;
  int ind_plus = 0;   // Morse index for E plus the auxiliary function
  int ind_minus = 0;  // Morse index for E minus the auxiliary function
  double energy = 1.0;
  double value = 0.0;  // auxiliary Morse value
  std::string klass = "0";
};

struct RfModel {
  MorseData constant;  // auxiliary function restricted to the constant loops
  std::vector<Orbit> orbits;
  std::string contractible_class = "0";
  std::map<std::string, std::string> class_negation;  // missing tags are self-inverse

  // Differential of the Morse complex on the orbits (the constant part comes
  // from `constant`).
  std::map<std::string, std::vector<std::string>> morse_boundary;
  // Coboundary terms of the dual Morse complex beyond the constant part.
  std::map<std::string, std::vector<std::string>> comorse_boundary;

  // Rabinowitz-Floer complex, keyed by plus_id / minus_id.
  std::map<std::string, int> rf_degrees;  // optional; checked against the indices
  std::map<std::string, std::vector<std::string>> rf_boundary;

  // Phi(gamma) = Z+(gamma) + phi_terms[gamma].
  std::map<std::string, std::vector<std::string>> phi_terms;
  // Psi(Z-(gamma)) = gamma + psi_terms[Z-(gamma)]; Psi(Z+(gamma)) = psi_terms[Z+(gamma)].
  std::map<std::string, std::vector<std::string>> psi_terms;
  // Homotopy from Psi Phi to zero; derived when absent.
  std::optional<std::map<std::string, std::vector<std::string>>> homotopy;

  int dimension() const { return constant.dimension; }
  int euler_parity() const { return constant.euler_parity; }
  std::string negate(const std::string& klass) const;
};

std::string plus_id(const std::string& gamma);
std::string minus_id(const std::string& gamma);

enum class ModelErrorKind {
  Census,
  DSquared,
  Filtration,
  ConstantStratum,
  Coefficients,
};

const char* to_string(ModelErrorKind kind);

class ModelError : public VerificationError {
 public:
  ModelError(ModelErrorKind kind, const std::string& what, std::string generator)
      : VerificationError(std::string(to_string(kind)) + ": " + what, std::move(generator)),
        kind_(kind) {}
  ModelErrorKind kind() const noexcept { return kind_; }

 private:
  ModelErrorKind kind_;
};

struct RfComplexes {
  ComplexPtr morse;    // graded by the plus index
  ComplexPtr comorse;  // graded by one minus the minus index
  ComplexPtr rf;
  GradedMap phi;  // morse -> rf
  GradedMap psi;  // rf -> comorse
};

// Builds and validates the three complexes and the maps between them.
// Throws ModelError naming the first violated constraint.
RfComplexes build_complexes(const RfModel& model);

// Total order on generators of the Rabinowitz-Floer complex: action, then
// auxiliary value, then id.
bool rf_precedes(const GradedF2Complex& rf, const std::string& a, const std::string& b);
// Order on generators of the Morse complexes used by Psi: energy, then minus
// the auxiliary value, then id descending. a precedes b iff Z-(b) precedes Z-(a).
bool morse_precedes(const GradedF2Complex& m, const std::string& a, const std::string& b);

// Left inverse of Phi vanishing on the span of the Z- generators.
GradedMap derive_phi_hat(const RfModel& model, const RfComplexes& cx);
// Right inverse of Psi with image the span of the Z- generators.
GradedMap derive_psi_hat(const RfModel& model, const RfComplexes& cx);

struct HomotopyResult {
  GradedMap homotopy;           // morse -> comorse, degree +1
  bool minimum_positive_energy;  // P(q_min) avoids the constant loops
};

// Solves Psi Phi = P d + d P with P supported in degree zero.
std::optional<HomotopyResult> derive_homotopy(const RfModel& model, const RfComplexes& cx);

struct MainIdentityReport {
  RfComplexes complexes;
  GradedMap phi_hat;
  GradedMap psi_hat;
  GradedMap homotopy;
  GradedMap theta;
  GradedMap theta_hat;
  GradedMap delta;  // comorse -> morse, degree -1
  bool homotopy_derived = true;
  bool minimum_positive_energy = false;
  CheckList identities;   // the eight identities, in order
  CheckList sequence;     // splitting, exactness and cone comparison
  std::size_t les_nodes = 0;
  bool ok() const { return identities.ok() && sequence.ok(); }
};

MainIdentityReport verify_main(const RfModel& model);

struct ActionWindow {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_inclusive = true;
  bool upper_inclusive = true;
  bool contains(double a) const;
};

// Subquotient spanned by generators whose action lies in the window.
GradedF2Complex filter_by_action(const GradedF2Complex& c, const ActionWindow& window);
// Natural map between windows whose endpoints both move up (or stay).
GradedMap window_map(const ComplexPtr& c, const ActionWindow& from, const ActionWindow& to);

// Positive-action part of Phi and negative-action part of Psi, each an
// isomorphism of complexes.
CheckList action_isomorphisms(const RfModel& model, const RfComplexes& cx);

struct HrfRow {
  int degree = 0;
  std::size_t computed = 0;
  std::optional<long long> expected;  // only when the window holds every generator
};

struct HrfClassTable {
  std::string klass;
  std::vector<HrfRow> rows;
  bool ok() const;
};

struct HrfReport {
  std::vector<HrfClassTable> classes;
  bool ok() const;
};

// Homology of the Rabinowitz-Floer complex per class, compared with the
// values predicted from the two Morse complexes and the Euler bit.
HrfReport hrf_table(const RfModel& model, const ActionWindow& window = {});

}  // namespace rfh::rf
