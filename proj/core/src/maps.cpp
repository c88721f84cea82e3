#include "zplie/maps.hpp"

#include <sstream>

namespace zplie {

LinMap::LinMap(Matrix m) : m_(std::move(m)) {
  if (!m_.square()) throw DimensionMismatch("linear map matrix must be square");
}

LinMap LinMap::from_function(const Algebra& alg, const std::function<Element(const Element&)>& f) {
  Matrix m(alg.dim(), alg.dim());
  for (std::size_t j = 0; j < alg.dim(); ++j) m.set_column(j, f(alg.basis(j)).coords());
  return LinMap(std::move(m));
}

Element LinMap::operator()(const Element& a) const {
  if (a.dim() != dim()) throw DimensionMismatch("map/element dimension mismatch");
  return Element(m_ * a.coords());
}

LinMap& LinMap::operator+=(const LinMap& o) {
  m_ += o.m_;
  return *this;
}

LinMap& LinMap::operator-=(const LinMap& o) {
  m_ -= o.m_;
  return *this;
}

LinMap& LinMap::operator*=(const Scalar& s) {
  m_ *= s;
  return *this;
}

MapFamily::MapFamily(std::vector<LinMap> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error("map family needs at least level 0");
  const std::size_t d = levels_.front().dim();
  for (const auto& l : levels_)
    if (l.dim() != d) throw DimensionMismatch("map family levels differ in dimension");
  if (levels_.front() != LinMap::identity(d)) throw Error("level 0 of a map family must be the identity");
}

MapFamily MapFamily::from_higher_levels(std::size_t dim, std::vector<LinMap> higher) {
  higher.insert(higher.begin(), LinMap::identity(dim));
  return MapFamily(std::move(higher));
}

MapFamily MapFamily::identity(std::size_t dim, std::size_t order) {
  std::vector<LinMap> levels(order + 1, LinMap::zero(dim));
  levels[0] = LinMap::identity(dim);
  return MapFamily(std::move(levels));
}

MapFamily MapFamily::truncated(std::size_t n) const {
  if (n > order()) throw Error("cannot truncate above the family order");
  return MapFamily(std::vector<LinMap>(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(n + 1)));
}

MapFamily MapFamily::extended(LinMap next) const {
  auto levels = levels_;
  levels.push_back(std::move(next));
  return MapFamily(std::move(levels));
}

GeneratorSequence GeneratorSequence::from_blocks(const Algebra& alg,
                                                 const std::vector<std::vector<Matrix>>& per_block) {
  if (per_block.size() != alg.blocks().size()) throw DimensionMismatch("one generator sequence per block expected");
  std::size_t n = 0;
  for (const auto& seq : per_block) n = std::max(n, seq.size());
  GeneratorSequence out;
  out.gens.assign(n, alg.zero());
  for (std::size_t b = 0; b < per_block.size(); ++b)
    for (std::size_t k = 0; k < per_block[b].size(); ++k) out.gens[k] += alg.embed(per_block[b][k], b);
  return out;
}

// ---------------------------------------------------------------------------

MapFamily convolve(const MapFamily& d, const MapFamily& e) {
  if (d.order() != e.order()) throw Error("convolution needs families of equal order");
  if (d.dim() != e.dim()) throw DimensionMismatch("convolution of families on different algebras");
  std::vector<LinMap> out;
  out.reserve(d.order() + 1);
  for (std::size_t n = 0; n <= d.order(); ++n) {
    LinMap sum = LinMap::zero(d.dim());
    for (std::size_t i = 0; i <= n; ++i) sum += d[i].after(e[n - i]);
    out.push_back(std::move(sum));
  }
  return MapFamily(std::move(out));
}

MapFamily convolve_inverse(const MapFamily& d) {
  // e_0 = id, e_n = -sum_{j<n} d_{n-j} o e_j
  std::vector<LinMap> e{LinMap::identity(d.dim())};
  for (std::size_t n = 1; n <= d.order(); ++n) {
    LinMap sum = LinMap::zero(d.dim());
    for (std::size_t j = 0; j < n; ++j) sum -= d[n - j].after(e[j]);
    e.push_back(std::move(sum));
  }
  return MapFamily(std::move(e));
}

LinMap bracket_power_map(const Algebra& alg, const Element& a, std::size_t k, std::size_t n) {
  if (k == 0) throw Error("bracket_power_map: k must be positive");
  if (n == 0) return LinMap::identity(alg.dim());
  if (n % k != 0) return LinMap::zero(alg.dim());
  const std::size_t r = n / k;
  Element power = alg.unit();  // a^(r-1)
  for (std::size_t i = 1; i < r; ++i) power = multiply(alg, power, a);
  const Element top = multiply(alg, power, a);  // a^r
  return LinMap::from_function(
      alg, [&](const Element& x) { return multiply(alg, top, x) - multiply(alg, multiply(alg, power, x), a); });
}

MapFamily inner_higher(const Algebra& alg, const GeneratorSequence& gens) {
  const std::size_t order = gens.gens.size();
  if (order == 0) throw Error("inner_higher needs at least one generator");
  // Factors [a_k, k] with k > n vanish on levels 1..n, so the full product
  // agrees with the n-factor product at level n.
  MapFamily product = MapFamily::identity(alg.dim(), order);
  for (std::size_t k = 1; k <= order; ++k) {
    std::vector<LinMap> factor;
    for (std::size_t n = 0; n <= order; ++n) factor.push_back(bracket_power_map(alg, gens.gens[k - 1], k, n));
    product = convolve(product, MapFamily(std::move(factor)));
  }
  return product;
}

// ---------------------------------------------------------------------------

std::string Violation::describe(const Algebra& alg) const {
  std::ostringstream os;
  os << "level " << level << ", ";
  if (kind == Kind::BasisPair) {
    os << "basis pair (" << alg.labels().at(left) << ", " << alg.labels().at(right) << ")";
  } else {
    os << "witness #" << left;
  }
  os << ", discrepancy [";
  for (std::size_t i = 0; i < discrepancy.dim(); ++i) os << (i ? " " : "") << format_scalar(discrepancy[i]);
  os << "]";
  return os.str();
}

namespace {

using Images = std::vector<std::vector<Element>>;  // images[level][basis]

Images basis_images(const Algebra& alg, const MapFamily& f) {
  Images img(f.order() + 1);
  for (std::size_t n = 0; n <= f.order(); ++n)
    for (std::size_t p = 0; p < alg.dim(); ++p) img[n].push_back(f[n].image_of_basis(p));
  return img;
}

void check_dim(const Algebra& alg, const MapFamily& f) {
  if (f.dim() != alg.dim()) throw DimensionMismatch("family does not act on this algebra");
}

// Lexicographic (level, p, q) scan of  f_k(b_p . b_q) == sum_{i+j=k} op(g_i(b_p), h_j(b_q)).
template <class Op>
CheckResult scan_basis_pairs(const Algebra& alg, const MapFamily& f, const Images& left, const Images& right,
                             Op op) {
  const std::size_t d = alg.dim();
  std::vector<std::vector<Element>> products(d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) products[p].push_back(op(alg.basis(p), alg.basis(q)));
  for (std::size_t k = 1; k <= f.order(); ++k) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        Element diff = f[k](products[p][q]);
        for (std::size_t i = 0; i <= k; ++i) diff -= op(left[i][p], right[k - i][q]);
        if (!diff.is_zero()) return {false, Violation{Violation::Kind::BasisPair, k, p, q, std::move(diff)}};
      }
    }
  }
  return {};
}

}  // namespace

CheckResult is_higher_derivation(const Algebra& alg, const MapFamily& f) {
  check_dim(alg, f);
  Images img = basis_images(alg, f);
  return scan_basis_pairs(alg, f, img, img, [&](const Element& x, const Element& y) { return multiply(alg, x, y); });
}

CheckResult is_lie_higher_derivation(const Algebra& alg, const MapFamily& f) {
  check_dim(alg, f);
  Images img = basis_images(alg, f);
  return scan_basis_pairs(alg, f, img, img,
                          [&](const Element& x, const Element& y) { return commutator(alg, x, y); });
}

CheckResult is_generalized_higher_derivation(const Algebra& alg, const MapFamily& f, const MapFamily& d) {
  check_dim(alg, f);
  check_dim(alg, d);
  if (d.order() < f.order()) throw PreconditionFailed("associated family has lower order than the family");
  if (auto r = is_higher_derivation(alg, d); !r) {
    throw PreconditionFailed("associated family is not a higher derivation: " + r.violation->describe(alg));
  }
  return scan_basis_pairs(alg, f, basis_images(alg, f), basis_images(alg, d),
                          [&](const Element& x, const Element& y) { return multiply(alg, x, y); });
}

CheckResult xi_condition_on_zero_products(const Algebra& alg, const MapFamily& f, const Scalar& xi,
                                          const std::vector<ElementPair>& witnesses) {
  check_dim(alg, f);
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    if (!multiply(alg, witnesses[w].first, witnesses[w].second).is_zero())
      throw PreconditionFailed("witness #" + std::to_string(w) + " is not a zero-product pair");
  }
  std::vector<std::vector<Element>> a_img(witnesses.size()), b_img(witnesses.size());
  for (std::size_t w = 0; w < witnesses.size(); ++w)
    for (std::size_t n = 0; n <= f.order(); ++n) {
      a_img[w].push_back(f[n](witnesses[w].first));
      b_img[w].push_back(f[n](witnesses[w].second));
    }
  for (std::size_t k = 1; k <= f.order(); ++k) {
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      Element diff = f[k](xi_bracket(alg, witnesses[w].first, witnesses[w].second, xi));
      for (std::size_t i = 0; i <= k; ++i) diff -= xi_bracket(alg, a_img[w][i], b_img[w][k - i], xi);
      if (!diff.is_zero()) return {false, Violation{Violation::Kind::Witness, k, w, w, std::move(diff)}};
    }
  }
  return {};
}

std::optional<std::size_t> first_noncentral_unit_image(const Algebra& alg, const MapFamily& f) {
  check_dim(alg, f);
  for (std::size_t n = 1; n <= f.order(); ++n)
    if (!is_central(alg, f[n](alg.unit()))) return n;
  return std::nullopt;
}

}  // namespace zplie
