#include "rfh/f2_linalg.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "rfh/errors.hpp"

namespace rfh::f2 {

namespace {

void check_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw InputError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

F2Vector F2Vector::from_positions(std::size_t dim, std::vector<std::size_t> positions) {
  std::sort(positions.begin(), positions.end());
  F2Vector v(dim);
  for (std::size_t i = 0; i < positions.size();) {
    std::size_t j = i;
    while (j < positions.size() && positions[j] == positions[i]) ++j;
    if (positions[i] >= dim) {
      throw InputError("F2Vector: position " + std::to_string(positions[i]) +
                       " out of range for dimension " + std::to_string(dim));
    }
    if ((j - i) % 2 == 1) v.support_.push_back(positions[i]);
    i = j;
  }
  return v;
}

F2Vector F2Vector::unit(std::size_t dim, std::size_t i) {
  if (i >= dim) throw InputError("F2Vector::unit: index out of range");
  F2Vector v(dim);
  v.support_.push_back(i);
  return v;
}

bool F2Vector::test(std::size_t i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

std::optional<std::size_t> F2Vector::low() const {
  if (support_.empty()) return std::nullopt;
  return support_.back();
}

void F2Vector::flip(std::size_t i) {
  if (i >= dim_) throw InputError("F2Vector::flip: index out of range");
  auto it = std::lower_bound(support_.begin(), support_.end(), i);
  if (it != support_.end() && *it == i) {
    support_.erase(it);
  } else {
    support_.insert(it, i);
  }
}

bool F2Vector::dot(const F2Vector& other) const {
  check_dim(dim_, other.dim_, "F2Vector::dot");
  std::size_t count = 0;
  auto a = support_.begin();
  auto b = other.support_.begin();
  while (a != support_.end() && b != other.support_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count % 2 == 1;
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  check_dim(dim_, other.dim_, "F2Vector::operator+=");
  if (other.support_.empty()) return *this;
  std::vector<std::size_t> merged;
  merged.reserve(support_.size() + other.support_.size());
  std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(),
                                other.support_.end(), std::back_inserter(merged));
  support_ = std::move(merged);
  return *this;
}

F2SparseMatrix::F2SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols, F2Vector(rows)) {}

F2SparseMatrix F2SparseMatrix::from_entries(
    std::size_t rows, std::size_t cols,
    std::span<const std::pair<std::size_t, std::size_t>> entries) {
  std::vector<std::vector<std::size_t>> per_col(cols);
  for (auto [i, j] : entries) {
    if (i >= rows || j >= cols) {
      throw InputError("F2SparseMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                       ") out of range");
    }
    per_col[j].push_back(i);
  }
  F2SparseMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    auto& p = per_col[j];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    m.cols_[j] = F2Vector::from_positions(rows, std::move(p));
  }
  return m;
}

F2SparseMatrix F2SparseMatrix::from_columns(std::size_t rows, std::vector<F2Vector> columns) {
  for (const auto& c : columns) check_dim(c.dim(), rows, "F2SparseMatrix::from_columns");
  F2SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = std::move(columns);
  return m;
}

F2SparseMatrix F2SparseMatrix::identity(std::size_t n) {
  F2SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.cols_[j] = F2Vector::unit(n, j);
  return m;
}

std::size_t F2SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& c : cols_) total += c.weight();
  return total;
}

bool F2SparseMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const F2Vector& c) { return c.is_zero(); });
}

F2SparseMatrix F2SparseMatrix::transpose() const {
  std::vector<std::vector<std::size_t>> rows(rows_);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    for (std::size_t i : cols_[j].support()) rows[i].push_back(j);
  }
  F2SparseMatrix t(cols_.size(), rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    t.cols_[i] = F2Vector::from_positions(cols_.size(), std::move(rows[i]));
  }
  return t;
}

F2Vector F2SparseMatrix::operator*(const F2Vector& v) const {
  check_dim(v.dim(), cols_.size(), "F2SparseMatrix * F2Vector");
  F2Vector out(rows_);
  for (std::size_t j : v.support()) out += cols_[j];
  return out;
}

F2SparseMatrix F2SparseMatrix::operator*(const F2SparseMatrix& rhs) const {
  check_dim(cols_.size(), rhs.rows_, "F2SparseMatrix * F2SparseMatrix");
  F2SparseMatrix out(rows_, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) out.cols_[j] = (*this) * rhs.cols_[j];
  return out;
}

F2SparseMatrix F2SparseMatrix::operator+(const F2SparseMatrix& rhs) const {
  check_dim(rows_, rhs.rows_, "F2SparseMatrix + (rows)");
  check_dim(cols_.size(), rhs.cols_.size(), "F2SparseMatrix + (cols)");
  F2SparseMatrix out = *this;
  for (std::size_t j = 0; j < cols_.size(); ++j) out.cols_[j] += rhs.cols_[j];
  return out;
}

ColumnReduction reduce_columns(const F2SparseMatrix& m) {
  ColumnReduction r;
  const std::size_t n = m.cols();
  r.reduced.reserve(n);
  r.transform.reserve(n);
  r.pivot_of_row.assign(m.rows(), std::nullopt);
  for (std::size_t j = 0; j < n; ++j) {
    F2Vector col = m.column(j);
    F2Vector tr = F2Vector::unit(n, j);
    while (auto low = col.low()) {
      auto pivot = r.pivot_of_row[*low];
      if (!pivot) break;
      col += r.reduced[*pivot];
      tr += r.transform[*pivot];
    }
    if (auto low = col.low()) {
      r.pivot_of_row[*low] = j;
      ++r.rank;
    }
    r.reduced.push_back(std::move(col));
    r.transform.push_back(std::move(tr));
  }
  return r;
}

std::size_t rank(const F2SparseMatrix& m) { return reduce_columns(m).rank; }

std::vector<F2Vector> kernel_basis(const F2SparseMatrix& m) {
  auto r = reduce_columns(m);
  std::vector<F2Vector> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (r.reduced[j].is_zero()) basis.push_back(std::move(r.transform[j]));
  }
  return basis;
}

std::optional<F2Vector> solve(const F2SparseMatrix& m, const F2Vector& b) {
  check_dim(b.dim(), m.rows(), "solve");
  auto r = reduce_columns(m);
  F2Vector rest = b;
  F2Vector x(m.cols());
  while (auto low = rest.low()) {
    auto pivot = r.pivot_of_row[*low];
    if (!pivot) return std::nullopt;
    rest += r.reduced[*pivot];
    x += r.transform[*pivot];
  }
  return x;
}

std::size_t span_rank(std::span<const F2Vector> vectors, std::size_t dim) {
  return rank(F2SparseMatrix::from_columns(dim, {vectors.begin(), vectors.end()}));
}

bool span_contains(std::span<const F2Vector> vectors, std::size_t dim, const F2Vector& v) {
  return solve(F2SparseMatrix::from_columns(dim, {vectors.begin(), vectors.end()}), v)
      .has_value();
}

bool same_span(std::span<const F2Vector> a, std::span<const F2Vector> b, std::size_t dim) {
  std::vector<F2Vector> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = span_rank(a, dim);
  return ra == span_rank(b, dim) && ra == span_rank(both, dim);
}

std::vector<F2Vector> image_basis(const F2SparseMatrix& m) {
  auto r = reduce_columns(m);
  std::vector<F2Vector> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!r.reduced[j].is_zero()) basis.push_back(m.column(j));
  }
  return basis;
}

}  // namespace rfh::f2
