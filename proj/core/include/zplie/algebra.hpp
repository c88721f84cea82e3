#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zplie/linalg.hpp"
#include "zplie/scalar.hpp"

namespace zplie {

/// An element of a finite-dimensional algebra, as coordinates in its basis.
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t dim) : coords_(dim, Scalar(0)) {}
  explicit Element(Vector coords) : coords_(std::move(coords)) {}

  static Element basis(std::size_t dim, std::size_t i) {
    Element e(dim);
    e.coords_[i] = 1;
    return e;
  }

  std::size_t dim() const { return coords_.size(); }
  const Vector& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  bool is_zero() const { return zplie::is_zero(coords_); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }
  Element operator-() const { return Scalar(-1) * *this; }
  bool operator==(const Element& o) const = default;

 private:
  Vector coords_;
};

/// A contiguous diagonal block of a block-diagonal model: the basis
/// elements [offset, offset + size*size) are the matrix units E_ij of the
/// block in row-major order.
struct Block {
  std::size_t size = 0;
  std::size_t offset = 0;
};

/// Finite-dimensional unital associative algebra over the rationals given
/// by structure constants. Block-diagonal models (direct sums of full
/// matrix algebras) also carry their block layout.
class Algebra {
 public:
  using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

  Algebra(std::string name, std::vector<std::string> labels, std::vector<std::vector<SparseVec>> table,
          Element unit, std::optional<std::vector<std::size_t>> block_sizes = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Element& unit() const { return unit_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

  bool has_blocks() const { return !blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<std::size_t> block_sizes() const;
  /// Side length m of the underlying space Q^m (sum of block sizes).
  std::size_t space_dim() const;

  Element zero() const { return Element(dim()); }
  Element basis(std::size_t i) const { return Element::basis(dim(), i); }

  /// Block component of `a` as a size x size matrix.
  Matrix block_matrix(const Element& a, std::size_t block) const;
  /// Element that equals `m` on `block` and vanishes elsewhere.
  Element embed(const Matrix& m, std::size_t block) const;
  /// Basis index of the matrix unit E_ij (0-based) of `block`.
  std::size_t unit_index(std::size_t block, std::size_t i, std::size_t j) const;
  /// Identity of a single block, embedded.
  Element block_identity(std::size_t block) const;

  /// Checks associativity on all basis triples and the two-sided unit law.
  /// Returns a description of the first failure, if any.
  std::optional<std::string> validate() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVec>> table_;
  Element unit_;
  std::vector<Block> blocks_;
};

/// A rank-one operator x (x) f living inside one block.
struct RankOneSpec {
  std::size_t block = 0;
  Vector x;
  Vector f;
};

Algebra build_matrix_algebra(std::size_t d);
Algebra build_block_diagonal(const std::vector<std::size_t>& sizes);

Element multiply(const Algebra& alg, const Element& a, const Element& b);
/// a*b - xi*b*a.
Element xi_bracket(const Algebra& alg, const Element& a, const Element& b, const Scalar& xi);
inline Element commutator(const Algebra& alg, const Element& a, const Element& b) {
  return xi_bracket(alg, a, b, Scalar(1));
}

/// Matrix of y -> a*y (column j is a*b_j).
Matrix left_multiplication(const Algebra& alg, const Element& a);
/// Matrix of y -> y*a.
Matrix right_multiplication(const Algebra& alg, const Element& a);

std::vector<Element> center(const Algebra& alg);
bool is_central(const Algebra& alg, const Element& z);
std::vector<Element> right_annihilator(const Algebra& alg, const Element& a);

Element rank_one(const Algebra& alg, const RankOneSpec& spec);
/// Covector f with f(x) = 1: the first nonzero coordinate of x, inverted.
Vector dual_pick(const Vector& x);
Vector dual_pick(const Algebra& alg, std::size_t block, const Vector& x);

/// Writes x (x) f as a combination of idempotents.
std::vector<std::pair<Scalar, Element>> idempotent_decompose(const Algebra& alg, const RankOneSpec& r);
/// Rank factorization of every block of `a` into rank-one parts.
std::vector<RankOneSpec> rank_decompose(const Algebra& alg, const Element& a);

/// All idempotents that are sums of diagonal matrix units (block models only).
std::vector<Element> diagonal_idempotents(const Algebra& alg);

Scalar dot(const Vector& a, const Vector& b);

}  // namespace zplie
