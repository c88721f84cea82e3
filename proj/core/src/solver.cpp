#include "zplie/solver.hpp"

#include "zplie/random.hpp"

namespace zplie {

namespace {

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

class SpanBuilder {
 public:
  SpanBuilder(std::size_t d, std::uint64_t seed) : reducer_(d * d) {
    out_.alg_dim = d;
    out_.seed = seed;
  }

  bool add(const Element& a, const Element& b, const char* provenance) {
    Matrix t = tensor(a, b);
    if (t.is_zero() || !reducer_.add(flatten(t))) return false;
    out_.vectors.push_back(std::move(t));
    out_.certificates.emplace_back(a, b);
    out_.provenance.emplace_back(provenance);
    return true;
  }

  TensorSpanBasis& result() { return out_; }

 private:
  RowReducer reducer_;
  TensorSpanBasis out_;
};

}  // namespace

Matrix tensor(const Element& a, const Element& b) {
  Matrix t(a.dim(), b.dim());
  for (std::size_t p = 0; p < a.dim(); ++p) {
    if (sgn(a[p]) == 0) continue;
    for (std::size_t q = 0; q < b.dim(); ++q)
      if (sgn(b[q]) != 0) t(p, q) = a[p] * b[q];
  }
  return t;
}

TensorSpanBasis zero_product_span(const Algebra& alg, std::uint64_t seed, const SpanOptions& opts) {
  const std::size_t d = alg.dim();
  SpanBuilder span(d, seed);

  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      if (alg.product(p, q).empty()) span.add(alg.basis(p), alg.basis(q), "basis-pair");

  if (alg.has_blocks()) {
    // P(I-P) = 0, (A-AP)P = 0, AP(I-P) = 0 for every idempotent P.
    for (const auto& p : diagonal_idempotents(alg)) {
      const Element q = alg.unit() - p;
      span.add(p, q, "idempotent-pair");
      for (std::size_t i = 0; i < d; ++i) {
        const Element ap = multiply(alg, alg.basis(i), p);
        span.add(alg.basis(i) - ap, p, "idempotent-pair");
        span.add(ap, q, "idempotent-pair");
      }
    }
  }

  Rng rng(seed);
  std::size_t stable = 0;
  std::size_t extra = 0;
  std::size_t& draws = span.result().saturation_draws;
  while (draws < opts.max_draws) {
    if (stable >= opts.stable_window) {
      if (extra >= opts.extra_draws) break;
      ++extra;
    }
    auto a = random_zero_divisor(alg, rng);
    if (!a) break;
    ++draws;
    bool grew = false;
    for (const auto& b : right_annihilator(alg, *a)) grew = span.add(*a, b, "saturation") || grew;
    stable = grew ? 0 : stable + 1;
  }
  return std::move(span.result());
}

// ---------------------------------------------------------------------------

LevelSystem assemble_level_system(const Algebra& alg, const MapFamily& prefix, const Scalar& xi,
                                  const TensorSpanBasis& span) {
  const std::size_t d = alg.dim();
  if (prefix.dim() != d || span.alg_dim != d) throw DimensionMismatch("prefix/span do not match the algebra");
  const std::size_t n = prefix.order() + 1;

  LevelSystem sys;
  sys.level = n;
  sys.xi = xi;
  sys.alg_dim = d;
  sys.span_dim = span.size();
  sys.seed = span.seed;
  sys.system = AffineSystem(d * d);

  std::vector<Element> basis;
  for (std::size_t p = 0; p < d; ++p) basis.push_back(alg.basis(p));

  for (std::size_t v = 0; v < span.size(); ++v) {
    const Matrix& c = span.vectors[v];
    Matrix coeff(d, d * d);
    Element rhs(d);

    // w = sum c_pq [b_p, b_q]_xi contributes L_n(w).
    Element w(d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        if (sgn(c(p, q)) != 0) w += c(p, q) * xi_bracket(alg, basis[p], basis[q], xi);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t s = 0; s < d; ++s)
        if (sgn(w[s]) != 0) coeff(r, r * d + s) += w[s];

    for (std::size_t p = 0; p < d; ++p) {
      // -sum_p [L_n(b_p), g_p]_xi with g_p = sum_q c_pq b_q
      const Element g(c.row(p));
      if (g.is_zero()) continue;
      for (std::size_t r = 0; r < d; ++r) {
        const Element br = xi_bracket(alg, basis[r], g, xi);
        for (std::size_t out = 0; out < d; ++out)
          if (sgn(br[out]) != 0) coeff(out, r * d + p) -= br[out];
      }
      // interior terms: sum_{0<i<n} [L_i(b_p), L_{n-i}(g_p)]_xi
      for (std::size_t i = 1; i < n; ++i)
        rhs += xi_bracket(alg, prefix[i].image_of_basis(p), prefix[n - i](g), xi);
    }
    for (std::size_t q = 0; q < d; ++q) {
      // -sum_q [h_q, L_n(b_q)]_xi with h_q = sum_p c_pq b_p
      const Element h(c.column(q));
      if (h.is_zero()) continue;
      for (std::size_t r = 0; r < d; ++r) {
        const Element hr = xi_bracket(alg, h, basis[r], xi);
        for (std::size_t out = 0; out < d; ++out)
          if (sgn(hr[out]) != 0) coeff(out, r * d + q) -= hr[out];
      }
    }

    for (std::size_t out = 0; out < d; ++out) {
      sys.system.add_equation(coeff.row(out), rhs[out]);
      sys.origins.push_back({v, out});
    }
  }
  return sys;
}

LinMap map_from_unknowns(std::size_t d, const Vector& x) {
  if (x.size() != d * d) throw DimensionMismatch("unknown vector length mismatch");
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) m(r, s) = x[r * d + s];
  return LinMap(std::move(m));
}

Vector unknowns_from_map(const LinMap& m) { return flatten(m.matrix()); }

SolutionSpace solve_level(const LevelSystem& sys) {
  if (auto bad = sys.system.first_inconsistent_equation()) {
    const EquationOrigin origin = sys.origins.at(*bad);
    throw InconsistentLevel(sys.level, origin,
                            "level " + std::to_string(sys.level) + " is inconsistent at span vector " +
                                std::to_string(origin.span_vector) + ", coordinate " +
                                std::to_string(origin.coordinate));
  }
  AffineSolution sol = sys.system.solve();
  SolutionSpace out;
  out.level = sys.level;
  out.xi = sys.xi;
  out.particular = map_from_unknowns(sys.alg_dim, sol.particular);
  for (const auto& k : sol.kernel) out.homogeneous_basis.push_back(map_from_unknowns(sys.alg_dim, k));
  out.constraint_count = sys.system.equations();
  out.span_dim = sys.span_dim;
  out.seed = sys.seed;
  return out;
}

bool contains(const SolutionSpace& space, const LinMap& m) {
  const std::size_t n = space.particular.dim() * space.particular.dim();
  RowReducer red(n);
  for (const auto& h : space.homogeneous_basis) red.add(unknowns_from_map(h));
  return red.contains(unknowns_from_map(m - space.particular));
}

LinMap choose_extension(const SolutionSpace& space, const ExtensionChoice& choice) {
  LinMap next = space.particular;
  if (const auto* r = std::get_if<ChooseRandom>(&choice)) {
    Rng rng(r->seed);
    for (const auto& h : space.homogeneous_basis) next += random_scalar(rng) * h;
  } else if (const auto* e = std::get_if<ChooseExplicit>(&choice)) {
    if (!contains(space, e->map))
      throw Error("explicit map is not an admissible level-" + std::to_string(space.level) + " solution");
    next = e->map;
  }
  return next;
}

MapFamily extend_family(const Algebra& alg, const MapFamily& prefix, const Scalar& xi, const TensorSpanBasis& span,
                        const ExtensionChoice& choice) {
  return prefix.extended(choose_extension(solve_level(assemble_level_system(alg, prefix, xi, span)), choice));
}

std::vector<ElementPair> sample_zero_product_pairs(const Algebra& alg, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ElementPair> pairs;
  while (pairs.size() < count) {
    auto a = random_zero_divisor(alg, rng);
    if (!a) break;
    auto ann = right_annihilator(alg, *a);
    Element b = alg.zero();
    for (const auto& v : ann) b += random_scalar(rng) * v;
    if (b.is_zero()) b = ann.front();
    pairs.emplace_back(std::move(*a), std::move(b));
  }
  return pairs;
}

}  // namespace zplie
