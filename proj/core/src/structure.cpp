#include "zplie/structure.hpp"

namespace zplie {

namespace {

LinMap compose_in_order(const LinMap& delta, const LinMap& l, Ordering o) {
  return o == Ordering::A ? l.after(delta) : delta.after(l);
}

Element block_unit(const Algebra& alg, std::size_t block, std::size_t i, std::size_t j) {
  return alg.basis(alg.unit_index(block, i, j));
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::optional<Scalar> scalar_multiple_of_identity(const Matrix& m) {
  const Scalar c = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? c : Scalar(0))) return std::nullopt;
  return c;
}

}  // namespace

DeltaSequence transfer_to_delta(const MapFamily& f, Ordering ordering) {
  DeltaSequence out;
  out.ordering = ordering;
  for (std::size_t n = 0; n < f.order(); ++n) {
    // delta_{n+1} = (n+1) L_{n+1} - sum_{k<n} (L_{n-k} with delta_{k+1})
    LinMap next = Scalar(static_cast<long>(n + 1)) * f[n + 1];
    for (std::size_t k = 0; k < n; ++k) next -= compose_in_order(out.deltas[k], f[n - k], ordering);
    out.deltas.push_back(std::move(next));
  }
  return out;
}

MapFamily rebuild_from_delta(const DeltaSequence& d) {
  if (d.deltas.empty()) throw Error("rebuild_from_delta needs at least one delta");
  const std::size_t dim = d.deltas.front().dim();
  std::vector<LinMap> levels{LinMap::identity(dim)};
  for (std::size_t n = 0; n < d.deltas.size(); ++n) {
    LinMap sum = LinMap::zero(dim);
    for (std::size_t k = 0; k <= n; ++k) sum += compose_in_order(d.deltas[k], levels[n - k], d.ordering);
    levels.push_back(Scalar(1, static_cast<unsigned long>(n + 1)) * sum);
  }
  return MapFamily(std::move(levels));
}

StandardParts lie_standard_parts(const Algebra& alg, const LinMap& delta, const Element& p) {
  if (multiply(alg, p, p) != p) throw Error("lie_standard_parts: P is not idempotent");
  const Element q = alg.unit() - p;
  const Element dp = delta(p);
  StandardParts parts;
  parts.s = zplie::commutator(alg, dp, q);
  parts.tau_of_p = multiply(alg, multiply(alg, p, dp), p) + multiply(alg, multiply(alg, q, dp), q);
  if (zplie::commutator(alg, p, parts.s) + parts.tau_of_p != dp)
    throw Error("lie_standard_parts: delta(P) != [P,S] + tau(P)");
  if (!is_central(alg, parts.tau_of_p)) throw CentralityFailure("tau(P) is not central");
  return parts;
}

Matrix extract_inner_generator(const Algebra& alg, const LinMap& delta, std::size_t block) {
  if (!alg.has_blocks()) throw Error("extract_inner_generator requires block metadata");
  const std::size_t s = alg.blocks().at(block).size;

  // Derivation part on the block's matrix units: delta minus its central part,
  // which vanishes on off-diagonal units (they are commutators) and is tau(E_uu)
  // on diagonal ones.
  auto derivation_part = [&](std::size_t u, std::size_t v) {
    Element e = block_unit(alg, block, u, v);
    Element out = delta(e);
    if (u == v) out -= lie_standard_parts(alg, delta, e).tau_of_p;
    return alg.block_matrix(out, block);
  };

  // x_K = e_1, f_K = dual_pick(e_1) = e_1^T, so x (x) f_K = sum_i x_i E_i1 and
  // R_K(e_i) = d(E_i1) e_1.
  Matrix r(s, s);
  for (std::size_t i = 0; i < s; ++i) r.set_column(i, derivation_part(i, 0).column(0));

  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = 0; v < s; ++v) {
      Matrix unit(s, s);
      unit(u, v) = 1;
      if (derivation_part(u, v) != commutator(r, unit))
        throw DecompositionFailure(block, 1,
                                   "inner generator does not reproduce the derivation part on " +
                                       alg.labels()[alg.unit_index(block, u, v)]);
    }
  return r;
}

Element block_component(const Algebra& alg, const Element& a, std::size_t block) {
  const Block& b = alg.blocks().at(block);
  Element out(b.size * b.size);
  for (std::size_t k = 0; k < b.size * b.size; ++k) out[k] = a[b.offset + k];
  return out;
}

MapFamily block_inner_family(std::size_t block_size, const std::vector<Matrix>& t) {
  const Algebra mk = build_matrix_algebra(block_size);
  GeneratorSequence gens;
  for (const auto& m : t) gens.gens.push_back(mk.embed(m, 0));
  return inner_higher(mk, gens);
}

Matrix reconstruct_block(const Algebra& alg, const Decomposition& dec, std::size_t block, std::size_t level,
                         const Element& a) {
  const BlockDecomposition& bd = dec.blocks.at(block);
  const std::size_t s = alg.blocks().at(block).size;
  const Algebra mk = build_matrix_algebra(s);
  std::vector<Matrix> prefix(bd.t.begin(), bd.t.begin() + static_cast<std::ptrdiff_t>(level));
  const Element inner = block_inner_family(s, prefix)[level](block_component(alg, a, block));
  Matrix out = mk.block_matrix(inner, 0);
  const Scalar h = dot(bd.h.at(level - 1), a.coords());
  for (std::size_t i = 0; i < s; ++i) out(i, i) += h;
  return out;
}

namespace {

// Solves L_n(A)_K - known_n(A_K) = [T, A_K] + h(A) I_K for trace-zero T and
// the covector h, over all basis elements A.
Matrix solve_block_generator(const Algebra& alg, const MapFamily& f, std::size_t block, std::size_t level,
                             const std::vector<Matrix>& lower) {
  const std::size_t d = alg.dim();
  const std::size_t s = alg.blocks()[block].size;
  const Algebra mk = build_matrix_algebra(s);
  std::vector<Matrix> gens = lower;
  gens.emplace_back(s, s);
  const LinMap known = block_inner_family(s, gens)[level];

  const std::size_t unknowns = s * s + d;  // T entries (row-major), then h
  AffineSystem sys(unknowns);
  for (std::size_t a = 0; a < d; ++a) {
    const Element ab = block_component(alg, alg.basis(a), block);
    const Matrix am = mk.block_matrix(ab, 0);
    const Matrix lhs = alg.block_matrix(f[level].image_of_basis(a), block) - mk.block_matrix(known(ab), 0);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        // ([T, A_K])_ij = sum_k T_ik A_kj - A_ik T_kj
        Vector row = zero_vector(unknowns);
        for (std::size_t k = 0; k < s; ++k) {
          row[i * s + k] += am(k, j);
          row[k * s + j] -= am(i, k);
        }
        if (i == j) row[s * s + a] = 1;
        sys.add_equation(row, lhs(i, j));
      }
  }
  Vector trace_row = zero_vector(unknowns);
  for (std::size_t i = 0; i < s; ++i) trace_row[i * s + i] = 1;
  sys.add_equation(trace_row, 0);

  if (!sys.consistent())
    throw DecompositionFailure(block, level,
                               "level " + std::to_string(level) + " residual is not scalar on block K" +
                                   std::to_string(block + 1));
  const Vector x = sys.solve().particular;
  Matrix t(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) t(i, j) = x[i * s + j];
  return t;
}

}  // namespace

Decomposition decompose_family(const Algebra& alg, const MapFamily& f, const std::vector<ElementPair>& verification) {
  if (!alg.has_blocks()) throw Error("decompose_family requires block metadata");
  if (f.dim() != alg.dim()) throw DimensionMismatch("family does not act on this algebra");
  for (const auto& [a, b] : verification)
    if (!multiply(alg, a, b).is_zero()) throw PreconditionFailed("verification pair is not a zero-product pair");

  Decomposition dec;
  dec.verified_pairs = verification.size();
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    const std::size_t s = alg.blocks()[b].size;
    BlockDecomposition bd;
    for (std::size_t n = 1; n <= f.order(); ++n) {
      Matrix t;
      if (n == 1) {
        try {
          t = extract_inner_generator(alg, f[1], b);
        } catch (const CentralityFailure& e) {
          throw DecompositionFailure(b, 1, "level 1 residual is not scalar on block K" + std::to_string(b + 1) +
                                               " (" + e.what() + ")");
        }
        const Scalar shift = t.trace() / Scalar(static_cast<long>(s));
        for (std::size_t i = 0; i < s; ++i) t(i, i) -= shift;
      } else {
        t = solve_block_generator(alg, f, b, n, bd.t);
      }
      bd.t.push_back(std::move(t));

      // h_{Kn}(b_a) is the scalar residual on the block.
      const LinMap inner = block_inner_family(s, bd.t)[n];
      const Algebra mk = build_matrix_algebra(s);
      Vector h = zero_vector(alg.dim());
      for (std::size_t a = 0; a < alg.dim(); ++a) {
        const Matrix residual = alg.block_matrix(f[n].image_of_basis(a), b) -
                                mk.block_matrix(inner(block_component(alg, alg.basis(a), b)), 0);
        auto c = scalar_multiple_of_identity(residual);
        if (!c)
          throw DecompositionFailure(b, n,
                                     "level " + std::to_string(n) + " residual is not scalar on block K" +
                                         std::to_string(b + 1) + " at " + alg.labels()[a]);
        h[a] = *c;
      }
      for (std::size_t w = 0; w < verification.size(); ++w) {
        const Element comm = zplie::commutator(alg, verification[w].first, verification[w].second);
        if (sgn(dot(h, comm.coords())) != 0)
          throw DecompositionFailure(b, n,
                                     "h_K" + std::to_string(b + 1) + "," + std::to_string(n) +
                                         " does not vanish on the commutator of verification pair #" +
                                         std::to_string(w));
      }
      bd.h.push_back(std::move(h));
    }
    dec.blocks.push_back(std::move(bd));
  }
  return dec;
}

// ---------------------------------------------------------------------------

namespace {

void verify_generalized_derivations(const Algebra& alg, const GeneralizedTransfer& g) {
  for (std::size_t n = 0; n < g.gamma.deltas.size(); ++n) {
    const LinMap& gamma = g.gamma.deltas[n];
    const LinMap& tau = g.tau.deltas[n];
    for (std::size_t p = 0; p < alg.dim(); ++p)
      for (std::size_t q = 0; q < alg.dim(); ++q) {
        const Element x = alg.basis(p), y = alg.basis(q);
        Element diff = gamma(multiply(alg, x, y)) - multiply(alg, gamma(x), y) - multiply(alg, x, tau(y));
        if (!diff.is_zero())
          throw Error("gamma_" + std::to_string(n + 1) + " is not a generalized derivation with associate tau_" +
                      std::to_string(n + 1) + " at (" + alg.labels()[p] + ", " + alg.labels()[q] + ")");
      }
  }
}

DeltaSequence tau_from_gamma(const Algebra& alg, const DeltaSequence& gamma) {
  DeltaSequence tau;
  tau.ordering = Ordering::B;
  for (const auto& g : gamma.deltas) tau.deltas.push_back(g - LinMap(left_multiplication(alg, g(alg.unit()))));
  return tau;
}

}  // namespace

GeneralizedTransfer generalized_transfer(const Algebra& alg, const MapFamily& f, const MapFamily& associate) {
  if (associate.order() < f.order()) throw PreconditionFailed("associate has lower order than the family");
  GeneralizedTransfer out{transfer_to_delta(f, Ordering::B),
                          transfer_to_delta(associate.truncated(f.order()), Ordering::B)};
  verify_generalized_derivations(alg, out);
  return out;
}

GeneralizedTransfer generalized_transfer(const Algebra& alg, const MapFamily& f) {
  GeneralizedTransfer out;
  out.gamma = transfer_to_delta(f, Ordering::B);
  out.tau = tau_from_gamma(alg, out.gamma);
  verify_generalized_derivations(alg, out);
  return out;
}

MapFamily associated_higher_derivation(const Algebra& alg, const MapFamily& f) {
  if (f.order() == 0) return f;
  return rebuild_from_delta(tau_from_gamma(alg, transfer_to_delta(f, Ordering::B)));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HigherDerivation:
      return "HigherDerivation";
    case Verdict::GeneralizedHigherDerivation:
      return "GeneralizedHigherDerivation";
    case Verdict::NotClassified:
      break;
  }
  return "NotClassified";
}

XiClassification classify_xi_family(const Algebra& alg, const MapFamily& f, const Scalar& xi,
                                    const std::vector<ElementPair>& verification) {
  if (xi == 1) throw Error("classification is undefined at xi = 1; decompose the family instead");
  if (auto r = xi_condition_on_zero_products(alg, f, xi, verification); !r)
    throw PreconditionFailed("family violates the xi-condition on zero products: " + r.violation->describe(alg));

  XiClassification out;
  if (sgn(xi) != 0) {
    if (auto r = is_higher_derivation(alg, f); r) {
      out.verdict = Verdict::HigherDerivation;
    } else {
      out.witnesses.push_back("higher derivation identity fails: " + r.violation->describe(alg));
    }
    return out;
  }

  const DeltaSequence gamma = transfer_to_delta(f, Ordering::B);
  for (std::size_t n = 0; n < gamma.deltas.size(); ++n) {
    if (!is_central(alg, gamma.deltas[n](alg.unit())))
      out.witnesses.push_back("gamma_" + std::to_string(n + 1) + "(I) is not central");
  }
  if (auto n = first_noncentral_unit_image(alg, f)) out.witnesses.push_back("L_" + std::to_string(*n) + "(I) is not central");
  if (!out.witnesses.empty()) return out;

  MapFamily d = associated_higher_derivation(alg, f);
  if (auto r = is_higher_derivation(alg, d); !r) {
    out.witnesses.push_back("associate is not a higher derivation: " + r.violation->describe(alg));
    return out;
  }
  if (auto r = is_generalized_higher_derivation(alg, f, d); !r) {
    out.witnesses.push_back("generalized identity fails: " + r.violation->describe(alg));
    return out;
  }
  out.verdict = Verdict::GeneralizedHigherDerivation;
  out.associated = std::move(d);
  return out;
}

}  // namespace zplie
