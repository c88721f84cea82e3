#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zplie/algebra.hpp"
#include "zplie/maps.hpp"

namespace zplie {

/// How a delta sequence composes with the family it generates:
///   A: (n+1) L_{n+1} = sum_k L_{n-k} o delta_{k+1}
///   B: (n+1) L_{n+1} = sum_k delta_{k+1} o L_{n-k}
enum class Ordering { A, B };

struct DeltaSequence {
  std::vector<LinMap> deltas;  // delta_1 .. delta_N
  Ordering ordering = Ordering::A;

  bool operator==(const DeltaSequence&) const = default;
};

DeltaSequence transfer_to_delta(const MapFamily& f, Ordering ordering);
MapFamily rebuild_from_delta(const DeltaSequence& d);

class CentralityFailure : public Error {
 public:
  using Error::Error;
};

struct StandardParts {
  Element s;
  Element tau_of_p;
};

/// For an idempotent P: S = [delta(P), I-P] and tau(P) = P delta(P) P + (I-P) delta(P) (I-P),
/// so that delta(P) = [P, S] + tau(P). Throws CentralityFailure when tau(P) is not central.
StandardParts lie_standard_parts(const Algebra& alg, const LinMap& delta, const Element& p);

/// Operator R_K on block K with d(F) = R_K F - F R_K for the derivation part
/// d of `delta` on the block's matrix units. Throws DecompositionFailure
/// when no such R_K reproduces d.
Matrix extract_inner_generator(const Algebra& alg, const LinMap& delta, std::size_t block);

class DecompositionFailure : public Error {
 public:
  DecompositionFailure(std::size_t block, std::size_t level, const std::string& what)
      : Error(what), block_(block), level_(level) {}
  std::size_t block() const { return block_; }
  std::size_t level() const { return level_; }

 private:
  std::size_t block_;
  std::size_t level_;
};

struct BlockDecomposition {
  std::vector<Matrix> t;   // T_{K1} .. T_{KN}, trace zero
  std::vector<Vector> h;   // h_{K1} .. h_{KN} as covectors on the algebra basis
};

struct Decomposition {
  std::vector<BlockDecomposition> blocks;
  std::size_t verified_pairs = 0;
};

/// L_n(A) restricted to block K equals Delta(T_K)_n(A) + h_{Kn}(A) I_K.
/// `verification` pairs must have zero product; every h_{Kn} is checked to
/// annihilate their commutators.
Decomposition decompose_family(const Algebra& alg, const MapFamily& f, const std::vector<ElementPair>& verification);

/// The Delta(T)_{Kn} maps as a family on the block's own matrix algebra
/// M_size (whose basis matches the block's basis order).
MapFamily block_inner_family(std::size_t block_size, const std::vector<Matrix>& t);

/// Block component of `a` as an element of M_size.
Element block_component(const Algebra& alg, const Element& a, std::size_t block);

/// Reassembles the block-n component: Delta(T_K)_n(A_K) + h_{Kn}(A) I_K.
Matrix reconstruct_block(const Algebra& alg, const Decomposition& dec, std::size_t block, std::size_t level,
                         const Element& a);

struct GeneralizedTransfer {
  DeltaSequence gamma;
  DeltaSequence tau;
};

/// gamma from `f` and tau from `associate` (both ordering B); verifies
/// gamma_n(xy) = gamma_n(x) y + x tau_n(y) on all basis pairs.
GeneralizedTransfer generalized_transfer(const Algebra& alg, const MapFamily& f, const MapFamily& associate);
/// Same, computing the associate: tau_n = gamma_n - gamma_n(I) * (.).
GeneralizedTransfer generalized_transfer(const Algebra& alg, const MapFamily& f);

/// Associate higher derivation of a generalized higher derivation built by
/// the tau recursion: tau_n(A) = gamma_n(A) - gamma_n(I) A, d = rebuild(tau).
MapFamily associated_higher_derivation(const Algebra& alg, const MapFamily& f);

enum class Verdict { HigherDerivation, GeneralizedHigherDerivation, NotClassified };
std::string to_string(Verdict v);

struct XiClassification {
  Verdict verdict = Verdict::NotClassified;
  std::optional<MapFamily> associated;
  std::vector<std::string> witnesses;
};

/// Requires xi != 1 and that `f` satisfies the xi-condition on `verification`
/// (PreconditionFailed otherwise).
XiClassification classify_xi_family(const Algebra& alg, const MapFamily& f, const Scalar& xi,
                                    const std::vector<ElementPair>& verification);

}  // namespace zplie
