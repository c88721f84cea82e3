#include "zplie/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace zplie {

namespace {

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

std::string unit_label(std::size_t i, std::size_t j, std::size_t size) {
  if (size < 10) return "E_" + std::to_string(i + 1) + std::to_string(j + 1);
  return "E_" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

Element& Element::operator+=(const Element& o) {
  check_same(dim(), o.dim(), "element sum");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same(dim(), o.dim(), "element difference");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Element& Element::operator*=(const Scalar& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

Algebra::Algebra(std::string name, std::vector<std::string> labels, std::vector<std::vector<SparseVec>> table,
                 Element unit, std::optional<std::vector<std::size_t>> block_sizes)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
  const std::size_t d = labels_.size();
  if (d == 0) throw Error("algebra must have positive dimension");
  check_same(table_.size(), d, "structure table rows");
  for (const auto& row : table_) check_same(row.size(), d, "structure table columns");
  check_same(unit_.dim(), d, "unit length");
  for (auto& row : table_)
    for (auto& entry : row) {
      for (const auto& [k, _] : entry)
        if (k >= d) throw Error("structure constant index out of range");
      std::sort(entry.begin(), entry.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::erase_if(entry, [](const auto& kv) { return sgn(kv.second) == 0; });
    }
  if (block_sizes) {
    std::size_t offset = 0;
    for (auto s : *block_sizes) {
      if (s == 0) throw Error("block sizes must be positive");
      blocks_.push_back({s, offset});
      offset += s * s;
    }
    if (offset != d) throw Error("block sizes do not match algebra dimension");
  }
}

std::vector<std::size_t> Algebra::block_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& b : blocks_) s.push_back(b.size);
  return s;
}

std::size_t Algebra::space_dim() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0},
                         [](std::size_t acc, const Block& b) { return acc + b.size; });
}

Matrix Algebra::block_matrix(const Element& a, std::size_t block) const {
  check_same(a.dim(), dim(), "element dimension");
  const Block& b = blocks_.at(block);
  Matrix m(b.size, b.size);
  for (std::size_t i = 0; i < b.size; ++i)
    for (std::size_t j = 0; j < b.size; ++j) m(i, j) = a[b.offset + i * b.size + j];
  return m;
}

Element Algebra::embed(const Matrix& m, std::size_t block) const {
  const Block& b = blocks_.at(block);
  if (m.rows() != b.size || m.cols() != b.size) throw DimensionMismatch("block matrix size mismatch");
  Element e(dim());
  for (std::size_t i = 0; i < b.size; ++i)
    for (std::size_t j = 0; j < b.size; ++j) e[b.offset + i * b.size + j] = m(i, j);
  return e;
}

std::size_t Algebra::unit_index(std::size_t block, std::size_t i, std::size_t j) const {
  const Block& b = blocks_.at(block);
  return b.offset + i * b.size + j;
}

Element Algebra::block_identity(std::size_t block) const {
  return embed(Matrix::identity(blocks_.at(block).size), block);
}

std::optional<std::string> Algebra::validate() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    Element bi = basis(i);
    if (multiply(*this, unit_, bi) != bi || multiply(*this, bi, unit_) != bi)
      return "unit law fails on basis element " + labels_[i];
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Element ij = multiply(*this, basis(i), basis(j));
      for (std::size_t k = 0; k < d; ++k) {
        Element left = multiply(*this, ij, basis(k));
        Element right = multiply(*this, basis(i), multiply(*this, basis(j), basis(k)));
        if (left != right)
          return "associativity fails on (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")";
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Algebra build_block_diagonal(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw Error("block_diagonal needs at least one block");
  if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) throw Error("block sizes must be positive");
  std::size_t d = 0;
  for (auto s : sizes) d += s * s;

  std::vector<std::string> labels;
  std::vector<std::vector<Algebra::SparseVec>> table(d, std::vector<Algebra::SparseVec>(d));
  Element unit(d);
  std::size_t offset = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    const std::size_t n = sizes[b];
    const std::string prefix = sizes.size() > 1 ? "K" + std::to_string(b + 1) + ":" : "";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) labels.push_back(prefix + unit_label(i, j, n));
    // E_ij E_jl = E_il
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          table[offset + i * n + j][offset + j * n + l].emplace_back(offset + i * n + l, Scalar(1));
    for (std::size_t i = 0; i < n; ++i) unit[offset + i * n + i] = 1;
    offset += n * n;
  }

  std::string name = "blocks:";
  for (std::size_t b = 0; b < sizes.size(); ++b) name += (b ? "," : "") + std::to_string(sizes[b]);
  return Algebra(name, std::move(labels), std::move(table), std::move(unit), sizes);
}

Algebra build_matrix_algebra(std::size_t d) {
  if (d == 0) throw Error("matrix algebra size must be positive");
  Algebra blocks = build_block_diagonal({d});
  std::vector<std::vector<Algebra::SparseVec>> table(blocks.dim(), std::vector<Algebra::SparseVec>(blocks.dim()));
  for (std::size_t i = 0; i < blocks.dim(); ++i)
    for (std::size_t j = 0; j < blocks.dim(); ++j) table[i][j] = blocks.product(i, j);
  return Algebra("matrix:" + std::to_string(d), blocks.labels(), std::move(table), blocks.unit(),
                 std::vector<std::size_t>{d});
}

Element multiply(const Algebra& alg, const Element& a, const Element& b) {
  check_same(a.dim(), alg.dim(), "left factor");
  check_same(b.dim(), alg.dim(), "right factor");
  Element out(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (sgn(b[j]) == 0) continue;
      const auto& prod = alg.product(i, j);
      if (prod.empty()) continue;
      Scalar ab = a[i] * b[j];
      for (const auto& [k, c] : prod) out[k] += ab * c;
    }
  }
  return out;
}

Element xi_bracket(const Algebra& alg, const Element& a, const Element& b, const Scalar& xi) {
  Element ab = multiply(alg, a, b);
  if (sgn(xi) == 0) return ab;
  return ab - xi * multiply(alg, b, a);
}

Matrix left_multiplication(const Algebra& alg, const Element& a) {
  Matrix m(alg.dim(), alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) m.set_column(j, multiply(alg, a, alg.basis(j)).coords());
  return m;
}

Matrix right_multiplication(const Algebra& alg, const Element& a) {
  Matrix m(alg.dim(), alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) m.set_column(j, multiply(alg, alg.basis(j), a).coords());
  return m;
}

std::vector<Element> center(const Algebra& alg) {
  const std::size_t d = alg.dim();
  // Rows: for each basis b_i and output coordinate k, (Z b_i - b_i Z)_k = 0.
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix diff = right_multiplication(alg, alg.basis(i)) - left_multiplication(alg, alg.basis(i));
    for (std::size_t k = 0; k < d; ++k) rows.push_back(diff.row(k));
  }
  std::vector<Element> out;
  for (auto& v : nullspace(Matrix::from_rows(rows))) out.emplace_back(std::move(v));
  return out;
}

bool is_central(const Algebra& alg, const Element& z) {
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!commutator(alg, z, alg.basis(i)).is_zero()) return false;
  return true;
}

std::vector<Element> right_annihilator(const Algebra& alg, const Element& a) {
  std::vector<Element> out;
  for (auto& v : nullspace(left_multiplication(alg, a))) out.emplace_back(std::move(v));
  return out;
}

Scalar dot(const Vector& a, const Vector& b) {
  check_same(a.size(), b.size(), "dot product");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Element rank_one(const Algebra& alg, const RankOneSpec& spec) {
  if (spec.block >= alg.blocks().size()) throw Error("rank_one: block index out of range");
  const std::size_t n = alg.blocks()[spec.block].size;
  check_same(spec.x.size(), n, "rank_one vector");
  check_same(spec.f.size(), n, "rank_one covector");
  if (is_zero(spec.x) || is_zero(spec.f)) throw Error("rank_one: x and f must be nonzero");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = spec.x[i] * spec.f[j];
  return alg.embed(m, spec.block);
}

Vector dual_pick(const Vector& x) {
  auto it = std::find_if(x.begin(), x.end(), [](const Scalar& s) { return sgn(s) != 0; });
  if (it == x.end()) throw Error("dual_pick: vector must be nonzero");
  Vector f = zero_vector(x.size());
  f[static_cast<std::size_t>(it - x.begin())] = 1 / *it;
  return f;
}

Vector dual_pick(const Algebra& alg, std::size_t block, const Vector& x) {
  if (block >= alg.blocks().size()) throw Error("dual_pick: block index out of range");
  check_same(x.size(), alg.blocks()[block].size, "dual_pick vector");
  return dual_pick(x);
}

std::vector<std::pair<Scalar, Element>> idempotent_decompose(const Algebra& alg, const RankOneSpec& r) {
  Scalar lambda = dot(r.f, r.x);
  if (sgn(lambda) != 0) {
    RankOneSpec scaled = r;
    for (auto& v : scaled.x) v /= lambda;
    return {{lambda, rank_one(alg, scaled)}};
  }
  // f(x) = 0: with f(y) = 1, x(x)f = (x+y)(x)f - y(x)f and both parts are idempotent.
  Vector y = dual_pick(r.f);
  RankOneSpec shifted{r.block, r.x, r.f};
  for (std::size_t i = 0; i < y.size(); ++i) shifted.x[i] += y[i];
  RankOneSpec base{r.block, y, r.f};
  return {{Scalar(1), rank_one(alg, shifted)}, {Scalar(-1), rank_one(alg, base)}};
}

std::vector<RankOneSpec> rank_decompose(const Algebra& alg, const Element& a) {
  if (!alg.has_blocks()) throw Error("rank_decompose requires block metadata");
  std::vector<RankOneSpec> parts;
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    Matrix m = alg.block_matrix(a, b);
    RowReducer red(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
    Matrix rr = red.rref();
    auto pivots = red.pivot_columns();
    // m = C * R with C the pivot columns of m and R the nonzero rows of rref(m).
    for (std::size_t i = 0; i < pivots.size(); ++i) parts.push_back({b, m.column(pivots[i]), rr.row(i)});
  }
  return parts;
}

std::vector<Element> diagonal_idempotents(const Algebra& alg) {
  if (!alg.has_blocks()) throw Error("diagonal idempotents require block metadata");
  std::vector<std::size_t> diag;
  for (std::size_t b = 0; b < alg.blocks().size(); ++b)
    for (std::size_t i = 0; i < alg.blocks()[b].size; ++i) diag.push_back(alg.unit_index(b, i, i));
  if (diag.size() > 20) throw Error("too many diagonal units to enumerate idempotents");
  std::vector<Element> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << diag.size()); ++mask) {
    Element p(alg.dim());
    for (std::size_t k = 0; k < diag.size(); ++k)
      if (mask & (std::size_t{1} << k)) p[diag[k]] = 1;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace zplie
