#pragma once

// Sparse linear algebra over the two-element field.
//
// Vectors store the sorted set of coordinates equal to one; matrices store
// one such vector per column. Addition is symmetric difference, so every
// kernel here is a sorted merge.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rfh::f2 {

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t dim) : dim_(dim) {}

  // Positions are summed over GF(2): a position listed twice cancels.
  static F2Vector from_positions(std::size_t dim, std::vector<std::size_t> positions);
  static F2Vector unit(std::size_t dim, std::size_t i);

  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& support() const { return support_; }
  std::size_t weight() const { return support_.size(); }
  bool is_zero() const { return support_.empty(); }
  bool test(std::size_t i) const;
  // Largest coordinate equal to one.
  std::optional<std::size_t> low() const;
  void flip(std::size_t i);
  bool dot(const F2Vector& other) const;

  F2Vector& operator+=(const F2Vector& other);
  friend F2Vector operator+(F2Vector a, const F2Vector& b) {
    a += b;
    return a;
  }
  friend bool operator==(const F2Vector&, const F2Vector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> support_;
};

class F2SparseMatrix {
 public:
  F2SparseMatrix() = default;
  F2SparseMatrix(std::size_t rows, std::size_t cols);

  // Entries are a set: repeated positions collapse to a single one.
  static F2SparseMatrix from_entries(std::size_t rows, std::size_t cols,
                                     std::span<const std::pair<std::size_t, std::size_t>> entries);
  static F2SparseMatrix from_columns(std::size_t rows, std::vector<F2Vector> columns);
  static F2SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const F2Vector& column(std::size_t j) const { return cols_.at(j); }
  const std::vector<F2Vector>& columns() const { return cols_; }
  bool entry(std::size_t i, std::size_t j) const { return cols_.at(j).test(i); }
  std::size_t nnz() const;
  bool is_zero() const;

  F2SparseMatrix transpose() const;
  F2Vector operator*(const F2Vector& v) const;
  F2SparseMatrix operator*(const F2SparseMatrix& rhs) const;
  F2SparseMatrix operator+(const F2SparseMatrix& rhs) const;
  friend bool operator==(const F2SparseMatrix&, const F2SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<F2Vector> cols_;
};

// Column reduction with lowest-one pivots. reduced[j] = M * transform[j];
// zero reduced columns give the kernel through their transform.
struct ColumnReduction {
  std::vector<F2Vector> reduced;
  std::vector<F2Vector> transform;
  std::vector<std::optional<std::size_t>> pivot_of_row;
  std::size_t rank = 0;
};

ColumnReduction reduce_columns(const F2SparseMatrix& m);

std::size_t rank(const F2SparseMatrix& m);
std::vector<F2Vector> kernel_basis(const F2SparseMatrix& m);
// Some x with m x = b, or nothing when b is outside the column space.
std::optional<F2Vector> solve(const F2SparseMatrix& m, const F2Vector& b);

// Rank of the span of a family of vectors of dimension dim.
std::size_t span_rank(std::span<const F2Vector> vectors, std::size_t dim);
bool span_contains(std::span<const F2Vector> vectors, std::size_t dim, const F2Vector& v);
// Equality of spans via rank[A|B] = rank A = rank B.
bool same_span(std::span<const F2Vector> a, std::span<const F2Vector> b, std::size_t dim);
// Basis of the column space, taken from the original columns.
std::vector<F2Vector> image_basis(const F2SparseMatrix& m);

}  // namespace rfh::f2
