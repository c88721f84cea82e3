#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zplie/scalar.hpp"

namespace zplie {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero() const;

  Vector operator*(const Vector& v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);
  friend Matrix operator*(const Scalar& s, Matrix m) { return m *= s; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

/// Incremental row echelon form over the integers.
///
/// Rational rows are cleared of denominators on entry; elimination is
/// fraction-free (cross-multiplication followed by division by the row
/// content), so intermediate entries stay integral and small. Rows are
/// stored sparsely because the constraint systems built by the solver are
/// mostly zero.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols);

  /// Adds a row; returns the column of the new pivot if the rank grew.
  std::optional<std::size_t> add(const Vector& row);

  /// True iff `row` lies in the current row space.
  bool contains(const Vector& row) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t> pivot_columns() const;

  /// Reduced row echelon form: rank() rows, sorted by pivot column, each
  /// with a unit pivot and zeros in every other pivot column.
  Matrix rref() const;

 private:
  struct SparseRow {
    std::vector<std::size_t> idx;
    std::vector<mpz_class> val;
  };

  SparseRow to_integer_row(const Vector& row) const;
  SparseRow reduce(SparseRow row) const;
  static SparseRow combine(const mpz_class& a, const SparseRow& x, const mpz_class& b, const SparseRow& y);
  static void normalize(SparseRow& row);

  std::size_t cols_;
  std::vector<SparseRow> rows_;
  std::map<std::size_t, std::size_t> pivot_of_col_;
};

/// Basis of {x : A x = 0}, one vector per free column, in column order.
std::vector<Vector> nullspace(const Matrix& a);

std::size_t rank(const std::vector<Vector>& rows, std::size_t cols);

/// True iff span(a) == span(b) (both given as lists of vectors of length `cols`).
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t cols);

class InconsistentSystem : public Error {
 public:
  InconsistentSystem(std::size_t witness_row, const std::string& what)
      : Error(what), witness_row_(witness_row) {}
  std::size_t witness_row() const { return witness_row_; }

 private:
  std::size_t witness_row_;
};

struct AffineSolution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// Accumulates equations a·x = b one at a time and solves them exactly.
class AffineSystem {
 public:
  explicit AffineSystem(std::size_t unknowns);

  void add_equation(const Vector& coeffs, const Scalar& rhs);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return equations_; }
  bool consistent() const { return !inconsistent_at_.has_value(); }
  std::optional<std::size_t> first_inconsistent_equation() const { return inconsistent_at_; }

  /// Particular solution (free variables zero) and kernel basis.
  /// Throws InconsistentSystem naming the first equation that broke consistency.
  AffineSolution solve() const;

 private:
  std::size_t unknowns_;
  std::size_t equations_ = 0;
  RowReducer reducer_;
  std::optional<std::size_t> inconsistent_at_;
};

}  // namespace zplie
