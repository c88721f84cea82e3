#include "zplie/random.hpp"

namespace zplie {

std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = Rng::max() - Rng::max() % span;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Scalar random_scalar(Rng& rng, int bound) {
  Scalar s(static_cast<long>(random_int(rng, -bound, bound)));
  if (random_int(rng, 0, 3) == 0) s /= 2;
  return s;
}

Element random_element(const Algebra& alg, Rng& rng, int bound) {
  Element e(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) e[i] = random_scalar(rng, bound);
  return e;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, int bound) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(rng, bound);
  return m;
}

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(random_int(rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

// Per-block random ranks, at least one block rank-deficient.
Element random_low_rank(const Algebra& alg, Rng& rng) {
  const auto& blocks = alg.blocks();
  std::vector<std::size_t> ranks;
  for (const auto& b : blocks) ranks.push_back(pick(rng, 0, b.size));
  std::size_t forced = pick(rng, 0, blocks.size() - 1);
  ranks[forced] = pick(rng, 0, blocks[forced].size - 1);
  Element a(alg.dim());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (ranks[b] == 0) continue;
    Matrix left = random_matrix(blocks[b].size, ranks[b], rng);
    Matrix right = random_matrix(ranks[b], blocks[b].size, rng);
    a += alg.embed(left * right, b);
  }
  return a;
}

}  // namespace

std::optional<Element> random_zero_divisor(const Algebra& alg, Rng& rng) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    Element a(alg.dim());
    if (alg.has_blocks()) {
      a = random_low_rank(alg, rng);
      if (!a.is_zero()) return a;
      continue;
    }
    // Generic algebras: sparse random combinations, every other attempt
    // multiplied by a random basis element.
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (random_int(rng, 0, 2) == 0) a[i] = random_scalar(rng);
    if (attempt % 2 == 1) a = multiply(alg, a, alg.basis(pick(rng, 0, alg.dim() - 1)));
    if (!a.is_zero() && !right_annihilator(alg, a).empty()) return a;
  }
  return std::nullopt;
}

}  // namespace zplie
