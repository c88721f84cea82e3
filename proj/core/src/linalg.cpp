#include "zplie/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace zplie {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionMismatch("ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) {
  if (cols.empty()) return {};
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vector Matrix::row(std::size_t r) const {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
  return Vector(first, first + static_cast<std::ptrdiff_t>(cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw DimensionMismatch("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Scalar Matrix::trace() const {
  Scalar t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const { return zplie::is_zero(data_); }

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector out = zero_vector(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0) out[r] += a * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("matrix product size mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix sum size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix difference size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix m = *this;
  return m += other;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix m = *this;
  return m -= other;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  return m *= Scalar(-1);
}

// ---------------------------------------------------------------------------

RowReducer::RowReducer(std::size_t cols) : cols_(cols) {}

RowReducer::SparseRow RowReducer::to_integer_row(const Vector& row) const {
  if (row.size() != cols_) throw DimensionMismatch("row length mismatch");
  mpz_class lcm = 1;
  for (const auto& x : row)
    if (sgn(x) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  SparseRow out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (sgn(row[i]) == 0) continue;
    out.idx.push_back(i);
    out.val.push_back(row[i].get_num() * (lcm / row[i].get_den()));
  }
  normalize(out);
  return out;
}

void RowReducer::normalize(SparseRow& row) {
  if (row.val.empty()) return;
  mpz_class g = 0;
  for (const auto& v : row.val) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.val.front()) < 0) g = -g;
  if (g != 1)
    for (auto& v : row.val) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y, dropping cancelled entries.
RowReducer::SparseRow RowReducer::combine(const mpz_class& a, const SparseRow& x, const mpz_class& b,
                                          const SparseRow& y) {
  SparseRow out;
  out.idx.reserve(x.idx.size() + y.idx.size());
  out.val.reserve(x.idx.size() + y.idx.size());
  std::size_t i = 0, j = 0;
  mpz_class t;
  while (i < x.idx.size() || j < y.idx.size()) {
    if (j == y.idx.size() || (i < x.idx.size() && x.idx[i] < y.idx[j])) {
      out.idx.push_back(x.idx[i]);
      out.val.push_back(a * x.val[i]);
      ++i;
    } else if (i == x.idx.size() || y.idx[j] < x.idx[i]) {
      out.idx.push_back(y.idx[j]);
      out.val.push_back(-b * y.val[j]);
      ++j;
    } else {
      t = a * x.val[i] - b * y.val[j];
      if (sgn(t) != 0) {
        out.idx.push_back(x.idx[i]);
        out.val.push_back(t);
      }
      ++i;
      ++j;
    }
  }
  return out;
}

RowReducer::SparseRow RowReducer::reduce(SparseRow row) const {
  // Pivot rows have their leading entry at the pivot column and nothing to
  // the left, so eliminating in increasing column order terminates.
  std::size_t start = 0;
  while (!row.idx.empty()) {
    auto pos = std::lower_bound(row.idx.begin(), row.idx.end(), start);
    bool eliminated = false;
    for (; pos != row.idx.end(); ++pos) {
      auto it = pivot_of_col_.find(*pos);
      if (it == pivot_of_col_.end()) continue;
      const SparseRow& p = rows_[it->second];
      std::size_t k = static_cast<std::size_t>(pos - row.idx.begin());
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.val.front().get_mpz_t(), row.val[k].get_mpz_t());
      mpz_class a = p.val.front() / g;
      mpz_class b = row.val[k] / g;
      start = *pos + 1;
      row = combine(a, row, b, p);
      normalize(row);
      eliminated = true;
      break;
    }
    if (!eliminated) break;
  }
  return row;
}

std::optional<std::size_t> RowReducer::add(const Vector& row) {
  SparseRow r = reduce(to_integer_row(row));
  if (r.idx.empty()) return std::nullopt;
  // Leading entry must not sit in an occupied pivot column after reduction.
  std::size_t lead = r.idx.front();
  assert(!pivot_of_col_.count(lead));
  pivot_of_col_[lead] = rows_.size();
  rows_.push_back(std::move(r));
  return lead;
}

bool RowReducer::contains(const Vector& row) const { return reduce(to_integer_row(row)).idx.empty(); }

std::vector<std::size_t> RowReducer::pivot_columns() const {
  std::vector<std::size_t> cols;
  cols.reserve(pivot_of_col_.size());
  for (const auto& [c, _] : pivot_of_col_) cols.push_back(c);
  return cols;
}

Matrix RowReducer::rref() const {
  std::vector<SparseRow> sorted;
  std::vector<std::size_t> lead;
  for (const auto& [c, i] : pivot_of_col_) {
    sorted.push_back(rows_[i]);
    lead.push_back(c);
  }
  const std::size_t k = sorted.size();
  for (std::size_t ii = k; ii-- > 0;) {
    SparseRow& r = sorted[ii];
    for (std::size_t jj = ii + 1; jj < k; ++jj) {
      auto pos = std::lower_bound(r.idx.begin(), r.idx.end(), lead[jj]);
      if (pos == r.idx.end() || *pos != lead[jj]) continue;
      const SparseRow& p = sorted[jj];
      std::size_t at = static_cast<std::size_t>(pos - r.idx.begin());
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.val.front().get_mpz_t(), r.val[at].get_mpz_t());
      mpz_class a = p.val.front() / g;
      mpz_class b = r.val[at] / g;
      r = combine(a, r, b, p);
      normalize(r);
    }
  }
  Matrix out(k, cols_);
  for (std::size_t i = 0; i < k; ++i) {
    const SparseRow& r = sorted[i];
    const mpz_class& pivot = r.val.front();
    for (std::size_t t = 0; t < r.idx.size(); ++t) out(i, r.idx[t]) = Scalar(r.val[t], pivot);
    for (std::size_t t = 0; t < r.idx.size(); ++t) out(i, r.idx[t]).canonicalize();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Vector> nullspace(const Matrix& a) {
  RowReducer red(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) red.add(a.row(r));
  Matrix rr = red.rref();
  auto pivots = red.pivot_columns();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rr(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const std::vector<Vector>& rows, std::size_t cols) {
  RowReducer red(cols);
  for (const auto& r : rows) red.add(r);
  return red.rank();
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t cols) {
  RowReducer ra(cols), rb(cols);
  for (const auto& v : a) ra.add(v);
  for (const auto& v : b) rb.add(v);
  if (ra.rank() != rb.rank()) return false;
  return std::all_of(b.begin(), b.end(), [&](const Vector& v) { return ra.contains(v); }) &&
         std::all_of(a.begin(), a.end(), [&](const Vector& v) { return rb.contains(v); });
}

// ---------------------------------------------------------------------------

AffineSystem::AffineSystem(std::size_t unknowns) : unknowns_(unknowns), reducer_(unknowns + 1) {}

void AffineSystem::add_equation(const Vector& coeffs, const Scalar& rhs) {
  if (coeffs.size() != unknowns_) throw DimensionMismatch("equation length mismatch");
  Vector row = coeffs;
  row.push_back(rhs);
  auto pivot = reducer_.add(row);
  if (pivot && *pivot == unknowns_ && !inconsistent_at_) inconsistent_at_ = equations_;
  ++equations_;
}

AffineSolution AffineSystem::solve() const {
  if (inconsistent_at_) {
    throw InconsistentSystem(*inconsistent_at_,
                             "inconsistent linear system (equation " + std::to_string(*inconsistent_at_) + ")");
  }
  Matrix rr = reducer_.rref();
  auto pivots = reducer_.pivot_columns();
  std::vector<bool> is_pivot(unknowns_, false);
  for (auto c : pivots) is_pivot[c] = true;

  AffineSolution sol;
  sol.particular = zero_vector(unknowns_);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = rr(i, unknowns_);
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(unknowns_);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rr(i, f);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace zplie
