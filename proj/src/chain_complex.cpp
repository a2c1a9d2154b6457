#include "rfh/chain_complex.hpp"

#include <algorithm>
#include <set>

#include "rfh/errors.hpp"

namespace rfh {

using f2::F2SparseMatrix;
using f2::F2Vector;

namespace {

const std::vector<std::string>& empty_ids() {
  static const std::vector<std::string> none;
  return none;
}

void require_unique(const std::vector<std::string>& ids, const std::string& context) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw InputError(context + ": repeated generator '" + id + "'");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Builder

GradedF2Complex::Builder& GradedF2Complex::Builder::window(int lo, int hi) {
  if (lo > hi) throw InputError("complex window: lower degree exceeds upper degree");
  window_ = {lo, hi};
  return *this;
}

GradedF2Complex::Builder& GradedF2Complex::Builder::add_generator(std::string id, int degree,
                                                                  GeneratorLabel label) {
  entries_.push_back({std::move(id), degree, std::move(label)});
  return *this;
}

GradedF2Complex::Builder& GradedF2Complex::Builder::set_boundary(const std::string& id,
                                                                 std::vector<std::string> targets) {
  boundary_[id] = std::move(targets);
  return *this;
}

GradedF2Complex GradedF2Complex::Builder::build() const {
  GradedF2Complex c;
  if (entries_.empty() && !window_) return c;

  int lo = window_ ? window_->first : entries_.front().degree;
  int hi = window_ ? window_->second : entries_.front().degree;
  for (const auto& e : entries_) {
    lo = std::min(lo, e.degree);
    hi = std::max(hi, e.degree);
  }
  c.min_degree_ = lo;
  c.max_degree_ = hi;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  c.ids_.assign(width, {});
  c.labels_.assign(width, {});

  for (const auto& e : entries_) {
    if (e.id.empty()) throw InputError("complex: empty generator id");
    const std::size_t s = c.slot(e.degree);
    GeneratorRef ref{e.degree, c.ids_[s].size()};
    if (!c.index_.emplace(e.id, ref).second) {
      throw InputError("complex: duplicate generator id '" + e.id + "'");
    }
    c.ids_[s].push_back(e.id);
    c.labels_[s].push_back(e.label);
  }

  c.boundary_.resize(width);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> entries(width);
  for (const auto& [id, targets] : boundary_) {
    auto src = c.find(id);
    if (!src) throw InputError("complex: boundary given for unknown generator '" + id + "'");
    require_unique(targets, "boundary of '" + id + "'");
    for (const auto& t : targets) {
      auto dst = c.find(t);
      if (!dst) {
        throw InputError("complex: boundary of '" + id + "' names unknown generator '" + t + "'");
      }
      if (dst->degree != src->degree - 1) {
        throw InputError("complex: boundary of '" + id + "' (degree " +
                         std::to_string(src->degree) + ") contains '" + t + "' of degree " +
                         std::to_string(dst->degree));
      }
      entries[c.slot(src->degree)].emplace_back(dst->index, src->index);
    }
  }
  for (int k = lo; k <= hi; ++k) {
    const std::size_t s = c.slot(k);
    c.boundary_[s] = F2SparseMatrix::from_entries(c.dim(k - 1), c.dim(k), entries[s]);
  }
  return c;
}

// ---------------------------------------------------------------------------
// GradedF2Complex

std::size_t GradedF2Complex::dim(int k) const {
  return in_window(k) ? ids_[slot(k)].size() : 0;
}

std::size_t GradedF2Complex::total_dim() const { return index_.size(); }

const std::vector<std::string>& GradedF2Complex::ids(int k) const {
  return in_window(k) ? ids_[slot(k)] : empty_ids();
}

std::optional<GeneratorRef> GradedF2Complex::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GeneratorRef GradedF2Complex::at(std::string_view id) const {
  auto ref = find(id);
  if (!ref) throw InputError("unknown generator '" + std::string(id) + "'");
  return *ref;
}

const GeneratorLabel& GradedF2Complex::label(int k, std::size_t i) const {
  return labels_.at(slot(k)).at(i);
}

const GeneratorLabel& GradedF2Complex::label(std::string_view id) const {
  auto ref = at(id);
  return label(ref.degree, ref.index);
}

F2SparseMatrix GradedF2Complex::boundary(int k) const {
  if (in_window(k)) return boundary_[slot(k)];
  return F2SparseMatrix(dim(k - 1), dim(k));
}

std::vector<std::string> GradedF2Complex::boundary_of(std::string_view id) const {
  auto ref = at(id);
  return ids_of(ref.degree - 1, boundary_[slot(ref.degree)].column(ref.index));
}

F2Vector GradedF2Complex::basis_vector(std::string_view id) const {
  auto ref = at(id);
  return F2Vector::unit(dim(ref.degree), ref.index);
}

F2Vector GradedF2Complex::vector_of(int k, const std::vector<std::string>& ids) const {
  std::vector<std::size_t> positions;
  for (const auto& id : ids) {
    auto ref = at(id);
    if (ref.degree != k) {
      throw InputError("generator '" + id + "' has degree " + std::to_string(ref.degree) +
                       ", expected " + std::to_string(k));
    }
    positions.push_back(ref.index);
  }
  return F2Vector::from_positions(dim(k), std::move(positions));
}

std::vector<std::string> GradedF2Complex::ids_of(int k, const F2Vector& v) const {
  std::vector<std::string> out;
  const auto& names = ids(k);
  for (std::size_t i : v.support()) out.push_back(names.at(i));
  return out;
}

bool GradedF2Complex::same_generators(const GradedF2Complex& other) const {
  if (this == &other) return true;
  if (total_dim() != other.total_dim()) return false;
  const int lo = std::min(min_degree_, other.min_degree_);
  const int hi = std::max(max_degree_, other.max_degree_);
  for (int k = lo; k <= hi; ++k) {
    if (ids(k) != other.ids(k)) return false;
  }
  return true;
}

bool GradedF2Complex::operator==(const GradedF2Complex& other) const {
  if (min_degree_ != other.min_degree_ || max_degree_ != other.max_degree_) return false;
  return ids_ == other.ids_ && labels_ == other.labels_ && boundary_ == other.boundary_;
}

// ---------------------------------------------------------------------------
// GradedMap

GradedMap::GradedMap(ComplexPtr source, ComplexPtr target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  if (!source_ || !target_) throw InputError("GradedMap: null complex");
  for (int k = source_->min_degree(); k <= source_->max_degree(); ++k) {
    blocks_.emplace(k, F2SparseMatrix(target_->dim(k + shift_), source_->dim(k)));
  }
}

GradedMap GradedMap::from_images(ComplexPtr source, ComplexPtr target, int shift,
                                 const std::map<std::string, std::vector<std::string>>& images) {
  GradedMap m(std::move(source), std::move(target), shift);
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  for (const auto& [id, targets] : images) {
    auto src = m.source_->find(id);
    if (!src) throw InputError("map: image given for unknown generator '" + id + "'");
    require_unique(targets, "image of '" + id + "'");
    for (const auto& t : targets) {
      auto dst = m.target_->find(t);
      if (!dst) throw InputError("map: image of '" + id + "' names unknown generator '" + t + "'");
      if (dst->degree != src->degree + shift) {
        throw InputError("map: image of '" + id + "' (degree " + std::to_string(src->degree) +
                         ") contains '" + t + "' of degree " + std::to_string(dst->degree) +
                         " but the shift is " + std::to_string(shift));
      }
      entries[src->degree].emplace_back(dst->index, src->index);
    }
  }
  for (auto& [k, e] : entries) {
    m.blocks_[k] = F2SparseMatrix::from_entries(m.target_->dim(k + shift), m.source_->dim(k), e);
  }
  return m;
}

GradedMap GradedMap::from_matrices(ComplexPtr source, ComplexPtr target, int shift,
                                   std::map<int, F2SparseMatrix> blocks) {
  GradedMap m(std::move(source), std::move(target), shift);
  for (auto& [k, block] : blocks) {
    if (block.cols() != m.source_->dim(k) || block.rows() != m.target_->dim(k + shift)) {
      throw InputError("map: block in degree " + std::to_string(k) + " has the wrong shape");
    }
    if (m.blocks_.count(k)) m.blocks_[k] = std::move(block);
  }
  return m;
}

GradedMap GradedMap::identity(ComplexPtr c) {
  GradedMap m(c, c, 0);
  for (auto& [k, block] : m.blocks_) block = F2SparseMatrix::identity(c->dim(k));
  return m;
}

F2SparseMatrix GradedMap::matrix(int k) const {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return it->second;
  return F2SparseMatrix(target_->dim(k + shift_), source_->dim(k));
}

F2Vector GradedMap::apply(int k, const F2Vector& v) const {
  auto it = blocks_.find(k);
  if (it == blocks_.end()) {
    if (!v.is_zero()) throw InputError("map applied outside its source window");
    return F2Vector(target_->dim(k + shift_));
  }
  return it->second * v;
}

std::vector<std::string> GradedMap::image_of(std::string_view id) const {
  auto ref = source_->at(id);
  return target_->ids_of(ref.degree + shift_,
                         blocks_.at(ref.degree).column(ref.index));
}

std::map<std::string, std::vector<std::string>> GradedMap::images() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [k, block] : blocks_) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (!block.column(j).is_zero()) {
        out[source_->id(k, j)] = target_->ids_of(k + shift_, block.column(j));
      }
    }
  }
  return out;
}

bool GradedMap::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

bool GradedMap::operator==(const GradedMap& other) const {
  return shift_ == other.shift_ && source_->same_generators(*other.source_) &&
         target_->same_generators(*other.target_) && blocks_ == other.blocks_;
}

GradedMap compose(const GradedMap& outer, const GradedMap& inner) {
  if (!inner.target()->same_generators(*outer.source())) {
    throw InputError("compose: target of the inner map is not the source of the outer map");
  }
  std::map<int, F2SparseMatrix> blocks;
  const auto& src = *inner.source();
  for (int k = src.min_degree(); k <= src.max_degree(); ++k) {
    blocks[k] = outer.matrix(k + inner.shift()) * inner.matrix(k);
  }
  return GradedMap::from_matrices(inner.source(), outer.target(), inner.shift() + outer.shift(),
                                  std::move(blocks));
}

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
  if (a.shift() != b.shift() || !a.source()->same_generators(*b.source()) ||
      !a.target()->same_generators(*b.target())) {
    throw InputError("map sum: source, target or shift differ");
  }
  std::map<int, F2SparseMatrix> blocks;
  const auto& src = *a.source();
  for (int k = src.min_degree(); k <= src.max_degree(); ++k) {
    blocks[k] = a.matrix(k) + b.matrix(k);
  }
  return GradedMap::from_matrices(a.source(), a.target(), a.shift(), std::move(blocks));
}

GradedMap differential(const ComplexPtr& c) {
  std::map<int, F2SparseMatrix> blocks;
  for (int k = c->min_degree(); k <= c->max_degree(); ++k) blocks[k] = c->boundary(k);
  return GradedMap::from_matrices(c, c, -1, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Checks

std::optional<Witness> d_squared_witness(const GradedF2Complex& c) {
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    const F2SparseMatrix dd = c.boundary(k - 1) * c.boundary(k);
    for (std::size_t j = 0; j < dd.cols(); ++j) {
      if (!dd.column(j).is_zero()) {
        return Witness{c.id(k, j), k, c.ids_of(k - 2, dd.column(j)), {}};
      }
    }
  }
  return std::nullopt;
}

void validate(const GradedF2Complex& c) {
  if (auto w = d_squared_witness(c)) {
    std::string what = "boundary does not square to zero at '" + w->generator + "':";
    for (const auto& id : w->discrepancy) what += " " + id;
    throw VerificationError(what, w->generator);
  }
}

namespace {

// Compares two families of blocks indexed by source degree.
CheckResult compare_blocks(const GradedF2Complex& source, const GradedF2Complex& target,
                           int target_shift,
                           const std::function<F2SparseMatrix(int)>& lhs,
                           const std::function<F2SparseMatrix(int)>& rhs) {
  for (int k = source.min_degree(); k <= source.max_degree(); ++k) {
    const F2SparseMatrix diff = lhs(k) + rhs(k);
    for (std::size_t j = 0; j < diff.cols(); ++j) {
      if (!diff.column(j).is_zero()) {
        return {false, Witness{source.id(k, j), k, target.ids_of(k + target_shift, diff.column(j)), {}}};
      }
    }
  }
  return {};
}

}  // namespace

CheckResult verify_chain_map(const GradedMap& f) {
  const auto& c = *f.source();
  const auto& d = *f.target();
  const int s = f.shift();
  return compare_blocks(
      c, d, s - 1, [&](int k) { return d.boundary(k + s) * f.matrix(k); },
      [&](int k) { return f.matrix(k - 1) * c.boundary(k); });
}

CheckResult verify_chain_homotopy(const GradedMap& f, const GradedMap& g, const GradedMap& h) {
  if (f.shift() != g.shift() || h.shift() != f.shift() + 1) {
    throw InputError("homotopy check: inconsistent shifts");
  }
  const auto& c = *f.source();
  const auto& d = *f.target();
  const int s = f.shift();
  return compare_blocks(
      c, d, s, [&](int k) { return f.matrix(k) + g.matrix(k); },
      [&](int k) { return d.boundary(k + s + 1) * h.matrix(k) + h.matrix(k - 1) * c.boundary(k); });
}

CheckResult verify_equal(const GradedMap& a, const GradedMap& b) {
  if (a.shift() != b.shift()) throw InputError("map comparison: shifts differ");
  return compare_blocks(
      *a.source(), *a.target(), a.shift(), [&](int k) { return a.matrix(k); },
      [&](int k) { return b.matrix(k); });
}

std::optional<GradedMap> solve_chain_homotopy(const GradedMap& f, const GradedMap& g,
                                              const HomotopySupport& support) {
  if (f.shift() != g.shift()) throw InputError("homotopy solve: shifts differ");
  const auto& c = *f.source();
  const auto& d = *f.target();
  const int s = f.shift();
  const int lo = c.min_degree();
  const int hi = c.max_degree();
  if (c.empty()) return GradedMap(f.source(), f.target(), s + 1);

  // Equation (k, r, j): entry (r, j) of the degree-k identity, r in D_{k+s}, j in C_k.
  std::map<int, std::size_t> eq_offset;
  std::size_t n_eq = 0;
  for (int k = lo; k <= hi; ++k) {
    eq_offset[k] = n_eq;
    n_eq += d.dim(k + s) * c.dim(k);
  }
  auto eq_index = [&](int k, std::size_t r, std::size_t j) {
    return eq_offset.at(k) + r * c.dim(k) + j;
  };

  struct Unknown {
    int k;
    std::size_t row;
    std::size_t col;
  };
  std::vector<Unknown> unknowns;
  std::vector<F2Vector> columns;
  for (int k = lo; k <= hi; ++k) {
    const F2SparseMatrix d_target = d.boundary(k + s + 1);
    const F2SparseMatrix d_source_t = c.boundary(k + 1).transpose();
    for (std::size_t i = 0; i < d.dim(k + s + 1); ++i) {
      for (std::size_t j = 0; j < c.dim(k); ++j) {
        if (support && !support(c.id(k, j), d.id(k + s + 1, i))) continue;
        std::vector<std::size_t> rows;
        for (std::size_t r : d_target.column(i).support()) rows.push_back(eq_index(k, r, j));
        if (k + 1 <= hi) {
          for (std::size_t col : d_source_t.column(j).support()) {
            rows.push_back(eq_index(k + 1, i, col));
          }
        }
        unknowns.push_back({k, i, j});
        columns.push_back(F2Vector::from_positions(n_eq, std::move(rows)));
      }
    }
  }

  std::vector<std::size_t> rhs;
  for (int k = lo; k <= hi; ++k) {
    const F2SparseMatrix target = f.matrix(k) + g.matrix(k);
    for (std::size_t j = 0; j < target.cols(); ++j) {
      for (std::size_t r : target.column(j).support()) rhs.push_back(eq_index(k, r, j));
    }
  }

  const auto system = F2SparseMatrix::from_columns(n_eq, std::move(columns));
  auto x = f2::solve(system, F2Vector::from_positions(n_eq, std::move(rhs)));
  if (!x) return std::nullopt;

  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  for (std::size_t u : x->support()) {
    entries[unknowns[u].k].emplace_back(unknowns[u].row, unknowns[u].col);
  }
  std::map<int, F2SparseMatrix> blocks;
  for (auto& [k, e] : entries) {
    blocks[k] = F2SparseMatrix::from_entries(d.dim(k + s + 1), c.dim(k), e);
  }
  return GradedMap::from_matrices(f.source(), f.target(), s + 1, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Homology

std::size_t HomologySummary::betti_at(int k) const {
  if (k < min_degree || k > max_degree()) return 0;
  return betti[static_cast<std::size_t>(k - min_degree)];
}

std::size_t HomologySummary::total() const {
  std::size_t t = 0;
  for (auto b : betti) t += b;
  return t;
}

std::optional<F2Vector> HomologySummary::class_of(int k, const F2Vector& cycle) const {
  if (k < min_degree || k > max_degree()) {
    if (!cycle.is_zero()) return std::nullopt;
    return F2Vector(0);
  }
  const auto s = static_cast<std::size_t>(k - min_degree);
  std::vector<F2Vector> cols = boundaries[s];
  const std::size_t nb = cols.size();
  cols.insert(cols.end(), representatives[s].begin(), representatives[s].end());
  auto x = f2::solve(F2SparseMatrix::from_columns(chain_dims[s], std::move(cols)), cycle);
  if (!x) return std::nullopt;
  std::vector<std::size_t> coords;
  for (std::size_t i : x->support()) {
    if (i >= nb) coords.push_back(i - nb);
  }
  return F2Vector::from_positions(betti[s], std::move(coords));
}

HomologySummary homology(const GradedF2Complex& c) {
  HomologySummary h;
  if (c.empty()) return h;
  h.min_degree = c.min_degree();
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    const std::size_t n = c.dim(k);
    std::vector<F2Vector> cycles = f2::kernel_basis(c.boundary(k));
    std::vector<F2Vector> bounds = f2::image_basis(c.boundary(k + 1));

    std::vector<F2Vector> cols = bounds;
    cols.insert(cols.end(), cycles.begin(), cycles.end());
    const auto red = f2::reduce_columns(F2SparseMatrix::from_columns(n, cols));
    std::vector<F2Vector> reps;
    for (std::size_t j = bounds.size(); j < cols.size(); ++j) {
      if (!red.reduced[j].is_zero()) reps.push_back(cols[j]);
    }
    h.betti.push_back(reps.size());
    h.representatives.push_back(std::move(reps));
    h.boundaries.push_back(std::move(bounds));
    h.chain_dims.push_back(n);
  }
  return h;
}

std::map<int, F2SparseMatrix> induced_map_on_homology(const GradedMap& f,
                                                      const HomologySummary& source,
                                                      const HomologySummary& target) {
  std::map<int, F2SparseMatrix> out;
  const int s = f.shift();
  for (int k = source.min_degree; k <= source.max_degree(); ++k) {
    const auto& reps = source.representatives[static_cast<std::size_t>(k - source.min_degree)];
    std::vector<F2Vector> cols;
    for (const auto& r : reps) {
      auto cls = target.class_of(k + s, f.apply(k, r));
      if (!cls) {
        throw VerificationError("induced map: image of a cycle is not a cycle",
                                f.source()->ids_of(k, r).empty() ? std::string()
                                                                 : f.source()->ids_of(k, r).front());
      }
      cols.push_back(std::move(*cls));
    }
    out[k] = F2SparseMatrix::from_columns(target.betti_at(k + s), std::move(cols));
  }
  return out;
}

std::map<int, F2SparseMatrix> induced_map_on_homology(const GradedMap& f) {
  return induced_map_on_homology(f, homology(*f.source()), homology(*f.target()));
}

// ---------------------------------------------------------------------------
// Constructions

GradedF2Complex shift_degrees(const GradedF2Complex& c, int offset) {
  GradedF2Complex::Builder b;
  if (c.empty()) return b.build();
  b.window(c.min_degree() + offset, c.max_degree() + offset);
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    for (std::size_t i = 0; i < c.dim(k); ++i) b.add_generator(c.id(k, i), k + offset, c.label(k, i));
  }
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    for (const auto& id : c.ids(k)) b.set_boundary(id, c.boundary_of(id));
  }
  return b.build();
}

namespace {

int degree_offset(const GradedF2Complex& original, const GradedF2Complex& shifted) {
  for (int k = original.min_degree(); k <= original.max_degree(); ++k) {
    if (original.dim(k) > 0) return shifted.at(original.id(k, 0)).degree - k;
  }
  return shifted.min_degree() - original.min_degree();
}

}  // namespace

GradedMap shift_map(const GradedMap& f, const ComplexPtr& source, const ComplexPtr& target) {
  const int a = degree_offset(*f.source(), *source);
  const int b = degree_offset(*f.target(), *target);
  return GradedMap::from_images(source, target, f.shift() + b - a, f.images());
}

GradedF2Complex restrict_to(const GradedF2Complex& c,
                            const std::function<bool(const std::string&)>& keep) {
  GradedF2Complex::Builder b;
  if (c.empty()) return b.build();
  b.window(c.min_degree(), c.max_degree());
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    for (std::size_t i = 0; i < c.dim(k); ++i) {
      if (keep(c.id(k, i))) b.add_generator(c.id(k, i), k, c.label(k, i));
    }
  }
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    for (const auto& id : c.ids(k)) {
      if (!keep(id)) continue;
      std::vector<std::string> kept;
      for (auto& t : c.boundary_of(id)) {
        if (keep(t)) kept.push_back(std::move(t));
      }
      b.set_boundary(id, std::move(kept));
    }
  }
  return b.build();
}

MappingCone mapping_cone(const GradedMap& psi) {
  if (psi.shift() != 0) throw InputError("mapping cone: the map must have degree zero");
  if (auto check = verify_chain_map(psi); !check) {
    throw VerificationError("mapping cone: the map is not a chain map at '" +
                                check.witness->generator + "'",
                            check.witness->generator);
  }
  const auto& y = *psi.source();
  const auto& z = *psi.target();

  GradedF2Complex::Builder b;
  std::optional<int> lo, hi;
  auto widen = [&](int l, int h) {
    lo = lo ? std::min(*lo, l) : l;
    hi = hi ? std::max(*hi, h) : h;
  };
  if (!z.empty()) widen(z.min_degree(), z.max_degree());
  if (!y.empty()) widen(y.min_degree() + 1, y.max_degree() + 1);
  if (lo) b.window(*lo, *hi);

  std::map<std::string, std::vector<std::string>> incl;
  std::map<std::string, std::vector<std::string>> proj;
  if (lo) {
    for (int k = *lo; k <= *hi; ++k) {
      for (std::size_t i = 0; i < z.dim(k); ++i) {
        const auto& id = z.id(k, i);
        b.add_generator(cone_target_id(id), k, z.label(k, i));
        incl[id] = {cone_target_id(id)};
      }
      for (std::size_t i = 0; i < y.dim(k - 1); ++i) {
        const auto& id = y.id(k - 1, i);
        b.add_generator(cone_source_id(id), k, y.label(k - 1, i));
        proj[cone_source_id(id)] = {id};
      }
    }
  }
  for (int k = z.min_degree(); k <= z.max_degree(); ++k) {
    for (const auto& id : z.ids(k)) {
      std::vector<std::string> t;
      for (const auto& x : z.boundary_of(id)) t.push_back(cone_target_id(x));
      b.set_boundary(cone_target_id(id), std::move(t));
    }
  }
  for (int k = y.min_degree(); k <= y.max_degree(); ++k) {
    for (const auto& id : y.ids(k)) {
      std::vector<std::string> t;
      for (const auto& x : psi.image_of(id)) t.push_back(cone_target_id(x));
      for (const auto& x : y.boundary_of(id)) t.push_back(cone_source_id(x));
      b.set_boundary(cone_source_id(id), std::move(t));
    }
  }

  auto cone = share(b.build());
  auto ysusp = share(suspension(y));
  return MappingCone{cone, psi.target(), ysusp,
                     GradedMap::from_images(psi.target(), cone, 0, incl),
                     GradedMap::from_images(cone, ysusp, 0, proj)};
}

}  // namespace rfh
