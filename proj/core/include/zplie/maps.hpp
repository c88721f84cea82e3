#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zplie/algebra.hpp"
#include "zplie/linalg.hpp"

namespace zplie {

/// Linear self-map of an algebra; column j of the matrix is the image of b_j.
class LinMap {
 public:
  LinMap() = default;
  explicit LinMap(Matrix m);

  static LinMap identity(std::size_t dim) { return LinMap(Matrix::identity(dim)); }
  static LinMap zero(std::size_t dim) { return LinMap(Matrix(dim, dim)); }
  static LinMap from_function(const Algebra& alg, const std::function<Element(const Element&)>& f);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  Element operator()(const Element& a) const;
  Element image_of_basis(std::size_t j) const { return Element(m_.column(j)); }

  /// (*this) o other
  LinMap after(const LinMap& other) const { return LinMap(m_ * other.m_); }

  LinMap& operator+=(const LinMap& o);
  LinMap& operator-=(const LinMap& o);
  LinMap& operator*=(const Scalar& s);
  friend LinMap operator+(LinMap a, const LinMap& b) { return a += b; }
  friend LinMap operator-(LinMap a, const LinMap& b) { return a -= b; }
  friend LinMap operator*(const Scalar& s, LinMap a) { return a *= s; }
  bool operator==(const LinMap& o) const = default;

 private:
  Matrix m_;
};

inline Element apply(const LinMap& m, const Element& a) { return m(a); }

/// Truncated family (L_0 = id, L_1, ..., L_N).
class MapFamily {
 public:
  MapFamily() = default;
  /// `levels` starts at L_0, which must be the identity.
  explicit MapFamily(std::vector<LinMap> levels);
  /// Prepends the identity to (L_1, ..., L_N).
  static MapFamily from_higher_levels(std::size_t dim, std::vector<LinMap> higher);
  static MapFamily identity(std::size_t dim, std::size_t order);

  std::size_t order() const { return levels_.size() - 1; }
  std::size_t dim() const { return levels_.front().dim(); }
  const LinMap& operator[](std::size_t n) const { return levels_.at(n); }
  const std::vector<LinMap>& levels() const { return levels_; }

  /// Family with levels 0..n.
  MapFamily truncated(std::size_t n) const;
  MapFamily extended(LinMap next) const;

  bool operator==(const MapFamily& o) const = default;

 private:
  std::vector<LinMap> levels_;
};

/// Generator sequence (a_1, ..., a_N) for an inner higher derivation.
struct GeneratorSequence {
  std::vector<Element> gens;

  /// Block models: one matrix sequence per block. Blocks are mutually
  /// orthogonal, so acting blockwise is the same as acting with the sum of
  /// the embedded generators.
  static GeneratorSequence from_blocks(const Algebra& alg, const std::vector<std::vector<Matrix>>& per_block);
};

/// (d * e)_n = sum_{i+j=n} d_i o e_j.
MapFamily convolve(const MapFamily& d, const MapFamily& e);
MapFamily convolve_inverse(const MapFamily& d);

/// The family [a, k] evaluated at level n: identity at n = 0, zero unless
/// k | n, and x -> a^r x - a^(r-1) x a for n = k r.
LinMap bracket_power_map(const Algebra& alg, const Element& a, std::size_t k, std::size_t n);

/// Delta(a)_n = ([a_1,1] * [a_2,2] * ... * [a_n,n])_n for n <= gens.size().
MapFamily inner_higher(const Algebra& alg, const GeneratorSequence& gens);

struct Violation {
  enum class Kind { BasisPair, Witness };
  Kind kind = Kind::BasisPair;
  std::size_t level = 0;
  /// Basis indices (BasisPair) or the witness index in both slots (Witness).
  std::size_t left = 0;
  std::size_t right = 0;
  Element discrepancy;

  std::string describe(const Algebra& alg) const;
};

struct CheckResult {
  bool ok = true;
  std::optional<Violation> violation;
  explicit operator bool() const { return ok; }
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// L_k(xy) = sum L_i(x) L_j(y) on all basis pairs and levels.
CheckResult is_higher_derivation(const Algebra& alg, const MapFamily& f);
/// L_k([x,y]) = sum [L_i(x), L_j(y)] on all basis pairs and levels.
CheckResult is_lie_higher_derivation(const Algebra& alg, const MapFamily& f);
/// L_k(xy) = sum L_i(x) d_j(y); throws PreconditionFailed if `d` is not a higher derivation.
CheckResult is_generalized_higher_derivation(const Algebra& alg, const MapFamily& f, const MapFamily& d);

using ElementPair = std::pair<Element, Element>;

/// L_k([A,B]_xi) = sum [L_i(A), L_j(B)]_xi on each witness pair (A, B).
/// Throws PreconditionFailed if some witness has A*B != 0.
CheckResult xi_condition_on_zero_products(const Algebra& alg, const MapFamily& f, const Scalar& xi,
                                          const std::vector<ElementPair>& witnesses);

/// L_k([A,F]) = [L_k(A),F] + sum_{0<i,j<k} [L_i(A), L_j(F)] + [A, L_k(F)] on all basis pairs:
/// the unrestricted Lie identity (every element is finite rank here).
inline CheckResult finite_rank_lie_identity(const Algebra& alg, const MapFamily& f) {
  return is_lie_higher_derivation(alg, f);
}

/// First level n with L_n(I) outside the center, if any.
std::optional<std::size_t> first_noncentral_unit_image(const Algebra& alg, const MapFamily& f);

}  // namespace zplie
