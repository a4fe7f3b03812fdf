#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ci0/field.hpp"

namespace ci0 {

using Vec = std::vector<Scalar>;

Vec zero_vec(Field f, std::size_t n);
bool is_zero_vec(const Vec& v);
/// y += c * x
void axpy(Vec& y, const Scalar& c, const Vec& x);
Vec scaled(const Vec& v, const Scalar& c);
/// Index of the first nonzero entry, or v.size().
std::size_t leading_index(const Vec& v);

/// Incrementally maintained reduced row echelon form of a subspace of K^n.
/// Rows are sorted by pivot column and every pivot column is zero in all
/// other rows, so two equal subspaces have identical row lists.
class Echelon {
 public:
  Echelon() = default;
  Echelon(Field f, std::size_t dim) : field_(f), dim_(dim) {}

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds v to the span; returns true when the rank grew.
  bool insert(Vec v);
  /// Remainder of v after clearing every pivot column.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains_all(const Echelon& o) const;

  friend bool operator==(const Echelon& a, const Echelon& b);

 private:
  Field field_;
  std::size_t dim_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solution set of sum_i c_i * columns[i] = rhs.
struct LinearSolution {
  std::optional<Vec> particular;  // coefficients c, when solvable
  std::vector<Vec> kernel;        // basis of homogeneous solutions
};

/// Linear system given by its columns in K^rows.
LinearSolution solve_columns(Field f, const std::vector<Vec>& columns, std::size_t rows,
                             const Vec* rhs);

/// Basis of {c : sum_i c_i * columns[i] = 0}.
std::vector<Vec> kernel_of_columns(Field f, const std::vector<Vec>& columns, std::size_t rows);

}  // namespace ci0
