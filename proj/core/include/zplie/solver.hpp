#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "zplie/algebra.hpp"
#include "zplie/linalg.hpp"
#include "zplie/maps.hpp"

namespace zplie {

/// Linearly independent tensors sum c_pq b_p (x) b_q, each equal to A (x) B
/// for a stored pair with A*B = 0. Their span is the constraint index set of
/// the zero-product condition.
struct TensorSpanBasis {
  std::size_t alg_dim = 0;
  std::vector<Matrix> vectors;           // c_pq
  std::vector<ElementPair> certificates;  // vectors[i] == certificates[i].first (x) certificates[i].second
  std::vector<std::string> provenance;    // "basis-pair", "idempotent-pair" or "saturation"
  std::uint64_t seed = 0;
  std::size_t saturation_draws = 0;

  std::size_t size() const { return vectors.size(); }
};

struct SpanOptions {
  std::size_t stable_window = 25;
  std::size_t max_draws = 20000;
  /// Additional draws after stabilization (used by the tightness probe).
  std::size_t extra_draws = 0;
};

/// Outer product A (x) B as a d x d coefficient matrix.
Matrix tensor(const Element& a, const Element& b);

TensorSpanBasis zero_product_span(const Algebra& alg, std::uint64_t seed, const SpanOptions& opts = {});

/// Where an equation of the level system came from.
struct EquationOrigin {
  std::size_t span_vector = 0;
  std::size_t coordinate = 0;
};

/// Linear system for the unknown matrix of L_n: unknown r*d + s is
/// coordinate r of L_n(b_s).
struct LevelSystem {
  std::size_t level = 0;
  Scalar xi;
  std::size_t alg_dim = 0;
  std::size_t span_dim = 0;
  std::uint64_t seed = 0;
  AffineSystem system{0};
  std::vector<EquationOrigin> origins;
};

class InconsistentLevel : public Error {
 public:
  InconsistentLevel(std::size_t level, EquationOrigin origin, const std::string& what)
      : Error(what), level_(level), origin_(origin) {}
  std::size_t level() const { return level_; }
  EquationOrigin origin() const { return origin_; }

 private:
  std::size_t level_;
  EquationOrigin origin_;
};

/// Constraints on L_n, n = prefix.order() + 1: for every span tensor,
///   L_n([A,B]_xi) - [L_n(A),B]_xi - [A,L_n(B)]_xi = sum_{0<i,j<n} [L_i(A), L_j(B)]_xi
/// extended bilinearly.
LevelSystem assemble_level_system(const Algebra& alg, const MapFamily& prefix, const Scalar& xi,
                                  const TensorSpanBasis& span);

struct SolutionSpace {
  std::size_t level = 0;
  Scalar xi;
  LinMap particular;
  std::vector<LinMap> homogeneous_basis;
  std::size_t constraint_count = 0;
  std::size_t span_dim = 0;
  std::uint64_t seed = 0;

  std::size_t dimension() const { return homogeneous_basis.size(); }
};

/// Throws InconsistentLevel with the first offending constraint.
SolutionSpace solve_level(const LevelSystem& system);

LinMap map_from_unknowns(std::size_t d, const Vector& x);
Vector unknowns_from_map(const LinMap& m);

struct ChooseParticular {};
struct ChooseRandom {
  std::uint64_t seed = 0;
};
struct ChooseExplicit {
  LinMap map;
};
using ExtensionChoice = std::variant<ChooseParticular, ChooseRandom, ChooseExplicit>;

/// True iff `m` is particular + (combination of the homogeneous basis).
bool contains(const SolutionSpace& space, const LinMap& m);

/// Picks a member of `space`; throws Error when an explicit map is not in it.
LinMap choose_extension(const SolutionSpace& space, const ExtensionChoice& choice);

/// Appends one admissible L_n; throws InconsistentLevel, or Error when an
/// explicit map is not admissible.
MapFamily extend_family(const Algebra& alg, const MapFamily& prefix, const Scalar& xi, const TensorSpanBasis& span,
                        const ExtensionChoice& choice);

/// Random pairs (A, B) with A*B = 0, independent of the span generators.
std::vector<ElementPair> sample_zero_product_pairs(const Algebra& alg, std::size_t count, std::uint64_t seed);

}  // namespace zplie
