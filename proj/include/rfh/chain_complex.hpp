#pragma once

// Finite graded chain complexes over GF(2) with named generators, maps
// between them, homology, and the cone and suspension constructions.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rfh/f2_linalg.hpp"

namespace rfh {

struct GeneratorLabel {
  std::optional<double> action;
  std::optional<std::string> klass;  // free homotopy class tag
  std::optional<double> value;       // auxiliary Morse value used for tie-breaking
  bool operator==(const GeneratorLabel&) const = default;
};

struct GeneratorRef {
  int degree = 0;
  std::size_t index = 0;
};

class GradedF2Complex {
 public:
  class Builder {
   public:
    // Forces degrees lo..hi into the window even when they hold no generators.
    Builder& window(int lo, int hi);
    Builder& add_generator(std::string id, int degree, GeneratorLabel label = {});
    Builder& set_boundary(const std::string& id, std::vector<std::string> targets);
    // Checks ids, degrees and boundary targets; does not check d^2 = 0.
    GradedF2Complex build() const;

   private:
    struct Entry {
      std::string id;
      int degree;
      GeneratorLabel label;
    };
    std::vector<Entry> entries_;
    std::map<std::string, std::vector<std::string>> boundary_;
    std::optional<std::pair<int, int>> window_;
  };

  GradedF2Complex() = default;

  bool empty() const { return max_degree_ < min_degree_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }
  std::size_t dim(int k) const;
  std::size_t total_dim() const;

  const std::vector<std::string>& ids(int k) const;
  const std::string& id(int k, std::size_t i) const { return ids(k).at(i); }
  std::optional<GeneratorRef> find(std::string_view id) const;
  GeneratorRef at(std::string_view id) const;
  const GeneratorLabel& label(int k, std::size_t i) const;
  const GeneratorLabel& label(std::string_view id) const;

  // Differential C_k -> C_{k-1}; zero outside the window.
  f2::F2SparseMatrix boundary(int k) const;
  std::vector<std::string> boundary_of(std::string_view id) const;

  f2::F2Vector basis_vector(std::string_view id) const;
  f2::F2Vector vector_of(int k, const std::vector<std::string>& ids) const;
  std::vector<std::string> ids_of(int k, const f2::F2Vector& v) const;

  // Same generators in the same degrees and order.
  bool same_generators(const GradedF2Complex& other) const;
  bool operator==(const GradedF2Complex& other) const;

 private:
  std::size_t slot(int k) const { return static_cast<std::size_t>(k - min_degree_); }
  bool in_window(int k) const { return k >= min_degree_ && k <= max_degree_; }

  int min_degree_ = 0;
  int max_degree_ = -1;
  std::vector<std::vector<std::string>> ids_;
  std::vector<std::vector<GeneratorLabel>> labels_;
  std::vector<f2::F2SparseMatrix> boundary_;  // boundary_[slot(k)] : C_k -> C_{k-1}
  std::unordered_map<std::string, GeneratorRef> index_;
};

using ComplexPtr = std::shared_ptr<const GradedF2Complex>;

inline ComplexPtr share(GradedF2Complex c) {
  return std::make_shared<const GradedF2Complex>(std::move(c));
}

// Degree-shifting linear map: C_k -> D_{k+shift}. Chain maps, homotopies and
// splittings all use this type; the chain condition is checked separately.
class GradedMap {
 public:
  GradedMap(ComplexPtr source, ComplexPtr target, int shift);

  static GradedMap from_images(ComplexPtr source, ComplexPtr target, int shift,
                               const std::map<std::string, std::vector<std::string>>& images);
  static GradedMap from_matrices(ComplexPtr source, ComplexPtr target, int shift,
                                 std::map<int, f2::F2SparseMatrix> blocks);
  static GradedMap identity(ComplexPtr c);

  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& target() const { return target_; }
  int shift() const { return shift_; }

  // Block C_k -> D_{k+shift}.
  f2::F2SparseMatrix matrix(int k) const;
  f2::F2Vector apply(int k, const f2::F2Vector& v) const;
  std::vector<std::string> image_of(std::string_view id) const;
  // Nonzero images only, keyed by source id.
  std::map<std::string, std::vector<std::string>> images() const;
  bool is_zero() const;

  bool operator==(const GradedMap& other) const;

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  int shift_;
  std::map<int, f2::F2SparseMatrix> blocks_;
};

using ChainMap = GradedMap;
using ChainHomotopy = GradedMap;

GradedMap compose(const GradedMap& outer, const GradedMap& inner);
GradedMap operator+(const GradedMap& a, const GradedMap& b);
// The differential of c as a map of degree -1.
GradedMap differential(const ComplexPtr& c);

struct Witness {
  std::string generator;
  int degree = 0;
  std::vector<std::string> discrepancy;  // nonzero part of the failing identity
  std::string note;
};

struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return ok; }
};

// First generator whose boundary has nonzero boundary, if any.
std::optional<Witness> d_squared_witness(const GradedF2Complex& c);
// Throws VerificationError naming the first generator with d^2 != 0.
void validate(const GradedF2Complex& c);

// Checks d f = f d on every generator.
CheckResult verify_chain_map(const GradedMap& f);
// Checks f + g = d h + h d on every generator.
CheckResult verify_chain_homotopy(const GradedMap& f, const GradedMap& g, const GradedMap& h);
// Checks a == b on every generator.
CheckResult verify_equal(const GradedMap& a, const GradedMap& b);

// Restricts which coefficients a homotopy may use: (source id, target id).
using HomotopySupport = std::function<bool(const std::string&, const std::string&)>;

// Solves f + g = d h + h d for h as a linear system over GF(2).
std::optional<GradedMap> solve_chain_homotopy(const GradedMap& f, const GradedMap& g,
                                              const HomotopySupport& support = {});

struct HomologySummary {
  int min_degree = 0;
  std::vector<std::size_t> betti;
  // Cycles whose classes form a basis of H_k.
  std::vector<std::vector<f2::F2Vector>> representatives;
  // Basis of the boundaries B_k.
  std::vector<std::vector<f2::F2Vector>> boundaries;
  std::vector<std::size_t> chain_dims;

  int max_degree() const { return min_degree + static_cast<int>(betti.size()) - 1; }
  std::size_t betti_at(int k) const;
  std::size_t total() const;
  // Coordinates of the class of a cycle in the representative basis.
  std::optional<f2::F2Vector> class_of(int k, const f2::F2Vector& cycle) const;
};

HomologySummary homology(const GradedF2Complex& c);

// Matrix of f_* : H_k(C) -> H_{k+shift}(D) for every source degree k.
std::map<int, f2::F2SparseMatrix> induced_map_on_homology(const GradedMap& f,
                                                          const HomologySummary& source,
                                                          const HomologySummary& target);
std::map<int, f2::F2SparseMatrix> induced_map_on_homology(const GradedMap& f);

// Same generators and boundary with every degree moved by offset.
GradedF2Complex shift_degrees(const GradedF2Complex& c, int offset);
inline GradedF2Complex suspension(const GradedF2Complex& c) { return shift_degrees(c, 1); }
// The map f between the shifted copies of its source and target.
GradedMap shift_map(const GradedMap& f, const ComplexPtr& source, const ComplexPtr& target);

// Subcomplex or subquotient on the generators accepted by keep. The induced
// differential is the projection of the original one; it is a differential
// whenever the kept set is a difference of two subcomplexes.
GradedF2Complex restrict_to(const GradedF2Complex& c,
                            const std::function<bool(const std::string&)>& keep);

struct MappingCone {
  ComplexPtr cone;
  ComplexPtr target;             // Z
  ComplexPtr suspended_source;   // Y shifted up by one
  GradedMap inclusion;           // Z -> C
  GradedMap projection;          // C -> Y shifted
};

inline std::string cone_target_id(const std::string& id) { return "z:" + id; }
inline std::string cone_source_id(const std::string& id) { return "y:" + id; }

// Cone of a degree-zero chain map psi : Y -> Z, graded as Z_k + Y_{k-1}.
MappingCone mapping_cone(const GradedMap& psi);

}  // namespace rfh
