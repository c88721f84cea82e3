#include "doctest.h"
#include "support/gen.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"
#include "zplie/maps.hpp"

using namespace zplie;
using oracle::Mat;

namespace {

LinMap ad(const Algebra& alg, const Element& t) {
  return LinMap::from_function(alg, [&](const Element& x) { return commutator(alg, t, x); });
}

LinMap transpose_map(const oracle::Layout& l) {
  return testutil::map_of(l, [](const Mat& a) {
    Mat t = oracle::zeros(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
    return t;
  });
}

LinMap trace_times_identity(const oracle::Layout& l) {
  return testutil::map_of(l, [](const Mat& a) {
    oracle::Q tr = 0;
    for (std::size_t i = 0; i < a.size(); ++i) tr += a[i][i];
    return oracle::scale(tr, oracle::identity(a.size()));
  });
}

std::vector<Mat> levels_of(const MapFamily& f) {
  std::vector<Mat> out;
  for (const auto& m : f.levels()) out.push_back(testutil::to_oracle(m.matrix()));
  return out;
}

}  // namespace

TEST_CASE("apply") {
  const Algebra m2 = build_matrix_algebra(2);
  gen::Gen g(1);
  const Element a = g.element(m2);
  CHECK(apply(LinMap::identity(4), a) == a);
  CHECK(apply(LinMap::zero(4), a).is_zero());
  const Element e11 = m2.basis(0), e12 = m2.basis(1);
  CHECK(apply(ad(m2, e11), e12) == e12);
  CHECK_THROWS_AS(apply(LinMap::identity(3), a), DimensionMismatch);
}

TEST_CASE("map families require the identity at level 0") {
  CHECK_THROWS_AS(MapFamily({LinMap::zero(2)}), Error);
  CHECK_THROWS_AS(MapFamily(std::vector<LinMap>{}), Error);
  const MapFamily f = MapFamily::identity(3, 2);
  CHECK(f.order() == 2);
  CHECK(f[2] == LinMap::zero(3));
  CHECK(f.truncated(1).order() == 1);
}

TEST_CASE("convolution: examples") {
  gen::Gen g(2);
  const MapFamily f = g.family(4, 3);
  CHECK(convolve(f, MapFamily::identity(4, 3)) == f);
  CHECK(convolve(g.family(4, 3), f)[0] == LinMap::identity(4));
  const LinMap p = g.linmap(4), q = g.linmap(4);
  const MapFamily pq = convolve(MapFamily::from_higher_levels(4, {p}), MapFamily::from_higher_levels(4, {q}));
  CHECK(pq[1] == p + q);
  CHECK_THROWS_AS(convolve(f, MapFamily::identity(4, 2)), Error);
}

TEST_CASE("convolution inverse: examples") {
  CHECK(convolve_inverse(MapFamily::identity(4, 3)) == MapFamily::identity(4, 3));
  gen::Gen g(3);
  const LinMap p = g.linmap(4);
  CHECK(convolve_inverse(MapFamily::from_higher_levels(4, {p}))[1] == Scalar(-1) * p);
}

TEST_CASE("convolution agrees with the naive oracle and forms a group (property)") {
  gen::Gen g(4);
  for (int t = 0; t < 50; ++t) {
    const MapFamily a = g.family(4, 4), b = g.family(4, 4), c = g.family(4, 4);
    CHECK(levels_of(convolve(a, b)) == oracle::convolve(levels_of(a), levels_of(b)));
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
    CHECK(convolve(a, MapFamily::identity(4, 4)) == a);
    CHECK(convolve(MapFamily::identity(4, 4), a) == a);
    const MapFamily inv = convolve_inverse(a);
    CHECK(convolve(a, inv) == MapFamily::identity(4, 4));
    CHECK(convolve(inv, a) == MapFamily::identity(4, 4));
  }
}

TEST_CASE("bracket power maps") {
  const Algebra m2 = build_matrix_algebra(2);
  const oracle::Layout l{{2}};
  gen::Gen g(5);
  const Element a = g.element(m2);
  const Mat am = testutil::matrix(l, a);
  CHECK(bracket_power_map(m2, a, 2, 3) == LinMap::zero(4));
  CHECK(bracket_power_map(m2, a, 2, 0) == LinMap::identity(4));
  CHECK(bracket_power_map(m2, a, 1, 1) == ad(m2, a));
  CHECK(bracket_power_map(m2, a, 3, 6) ==
        testutil::map_of(l, [&](const Mat& x) { return oracle::sub(oracle::mul(oracle::pow(am, 2), x), oracle::mul(oracle::mul(am, x), am)); }));
  CHECK_THROWS_AS(bracket_power_map(m2, a, 0, 1), Error);
}

TEST_CASE("inner higher derivations match the displayed expansions") {
  gen::Gen g(6);
  for (std::size_t n : {2u, 3u}) {
    const Algebra alg = build_matrix_algebra(n);
    const oracle::Layout l{{n}};
    for (int t = 0; t < 10; ++t) {
      const GeneratorSequence gens = g.generators(alg, 3);
      const MapFamily f = inner_higher(alg, gens);
      const Mat t1 = testutil::matrix(l, gens.gens[0]), t2 = testutil::matrix(l, gens.gens[1]),
                t3 = testutil::matrix(l, gens.gens[2]);
      CHECK(f[1] == testutil::map_of(l, [&](const Mat& a) { return oracle::inner_level1(t1, a); }));
      CHECK(f[2] == testutil::map_of(l, [&](const Mat& a) { return oracle::inner_level2(t1, t2, a); }));
      CHECK(f[3] == testutil::map_of(l, [&](const Mat& a) { return oracle::inner_level3(t1, t2, t3, a); }));
    }
  }
}

TEST_CASE("inner higher derivations on block algebras act blockwise") {
  const Algebra alg = build_block_diagonal({2, 3});
  gen::Gen g(7);
  std::vector<std::vector<Matrix>> per_block{{g.matrix(2, 2), g.matrix(2, 2)}, {g.matrix(3, 3), g.matrix(3, 3)}};
  const GeneratorSequence gens = GeneratorSequence::from_blocks(alg, per_block);
  CHECK(gens.gens.size() == 2);
  const MapFamily f = inner_higher(alg, gens);
  CHECK(is_higher_derivation(alg, f));
  for (std::size_t k = 0; k < 2; ++k) {
    const Algebra mk = build_matrix_algebra(alg.blocks()[k].size);
    GeneratorSequence local;
    for (const auto& m : per_block[k]) local.gens.push_back(mk.embed(m, 0));
    const MapFamily fk = inner_higher(mk, local);
    for (std::size_t p = 0; p < mk.dim(); ++p) {
      const Element a = alg.embed(mk.block_matrix(mk.basis(p), 0), k);
      for (std::size_t n = 1; n <= 2; ++n) CHECK(alg.block_matrix(f[n](a), k) == mk.block_matrix(fk[n](mk.basis(p)), 0));
    }
  }
}

TEST_CASE("inner higher derivations with a single generator") {
  const Algebra m3 = build_matrix_algebra(3);
  const oracle::Layout l{{3}};
  gen::Gen g(8);
  for (int t = 0; t < 5; ++t) {
    GeneratorSequence gens{{g.element(m3), m3.zero(), m3.zero(), m3.zero()}};
    const Mat a1 = testutil::matrix(l, gens.gens[0]);
    const MapFamily f = inner_higher(m3, gens);
    for (std::size_t n = 1; n <= 4; ++n)
      CHECK(f[n] == testutil::map_of(l, [&](const Mat& x) {
              return oracle::sub(oracle::mul(oracle::pow(a1, n), x), oracle::mul(oracle::mul(oracle::pow(a1, n - 1), x), a1));
            }));
  }
}

TEST_CASE("higher derivation checks: examples") {
  const Algebra m2 = build_matrix_algebra(2);
  const oracle::Layout l{{2}};
  gen::Gen g(9);
  CHECK(is_higher_derivation(m2, inner_higher(m2, g.generators(m2, 3))));
  CHECK(is_higher_derivation(m2, MapFamily::from_higher_levels(4, {ad(m2, g.element(m2))})));

  const MapFamily tr = MapFamily::from_higher_levels(4, {transpose_map(l)});
  const CheckResult r = is_higher_derivation(m2, tr);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violation.has_value());
  CHECK(r.violation->level == 1);
  // First failing pair in lexicographic order.
  CHECK(r.violation->left == 0);
  CHECK(r.violation->right == 0);
  CHECK(r.violation->describe(m2).find("(E_11, E_11)") != std::string::npos);

  const CheckResult lie = is_lie_higher_derivation(m2, tr);
  CHECK_FALSE(lie.ok);
  REQUIRE(lie.violation.has_value());
  CHECK(lie.violation->level == 1);

  CHECK(is_lie_higher_derivation(m2, MapFamily::from_higher_levels(4, {trace_times_identity(l)})));
  CHECK_FALSE(is_higher_derivation(m2, MapFamily::from_higher_levels(4, {trace_times_identity(l)})));
}

TEST_CASE("transpose fails Leibniz on (E_11, E_12)") {
  const Algebra m2 = build_matrix_algebra(2);
  const oracle::Layout l{{2}};
  const LinMap t = transpose_map(l);
  const Element e11 = m2.basis(0), e12 = m2.basis(1);
  CHECK(t(multiply(m2, e11, e12)) != multiply(m2, t(e11), e12) + multiply(m2, e11, t(e12)));
}

TEST_CASE("higher derivations are Lie higher derivations (property)") {
  gen::Gen g(10);
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{2}, {3}, {2, 2}}) {
    const Algebra alg = build_block_diagonal(sizes);
    for (int t = 0; t < 10; ++t) {
      const MapFamily f = inner_higher(alg, g.generators(alg, 3));
      CHECK(is_higher_derivation(alg, f));
      CHECK(is_lie_higher_derivation(alg, f));
      // A random family is almost never either.
      const MapFamily junk = g.family(alg.dim(), 2);
      if (is_higher_derivation(alg, junk)) CHECK(is_lie_higher_derivation(alg, junk));
    }
  }
}

TEST_CASE("generalized higher derivation checks") {
  const Algebra m2 = build_matrix_algebra(2);
  gen::Gen g(11);
  const MapFamily d = inner_higher(m2, g.generators(m2, 2));
  CHECK(is_generalized_higher_derivation(m2, d, d));

  const Element t = g.element(m2);
  const LinMap delta = ad(m2, t);
  const Scalar c = Scalar(5, 2);
  const LinMap f1 = delta + LinMap(c * left_multiplication(m2, m2.unit()));
  CHECK(is_generalized_higher_derivation(m2, MapFamily::from_higher_levels(4, {f1}), MapFamily::from_higher_levels(4, {delta})));

  Element noncentral = m2.basis(1);  // E_12
  const LinMap right = LinMap(right_multiplication(m2, noncentral));
  CHECK_FALSE(is_generalized_higher_derivation(m2, MapFamily::from_higher_levels(4, {right}),
                                               MapFamily::from_higher_levels(4, {delta})));

  const oracle::Layout l{{2}};
  CHECK_THROWS_AS(is_generalized_higher_derivation(m2, MapFamily::from_higher_levels(4, {f1}),
                                                   MapFamily::from_higher_levels(4, {transpose_map(l)})),
                  PreconditionFailed);
}

TEST_CASE("xi-condition on zero products") {
  const Algebra m2 = build_matrix_algebra(2);
  const oracle::Layout l{{2}};
  gen::Gen g(12);
  const Element e11 = m2.basis(0), e12 = m2.basis(1), e21 = m2.basis(2), e22 = m2.basis(3);
  std::vector<ElementPair> w{{e11, e21}, {e12, e12}, {e11 + e21, e22}, {e12, e11}};
  for (const auto& [a, b] : w) REQUIRE(multiply(m2, a, b).is_zero());

  const MapFamily hd = inner_higher(m2, g.generators(m2, 3));
  CHECK(xi_condition_on_zero_products(m2, hd, 1, w));
  CHECK(xi_condition_on_zero_products(m2, MapFamily::from_higher_levels(4, {trace_times_identity(l)}), 1, w));
  CHECK(xi_condition_on_zero_products(m2, MapFamily::from_higher_levels(4, {LinMap::identity(4)}), 0, {{e11, e21}}));

  CHECK_FALSE(xi_condition_on_zero_products(m2, MapFamily::from_higher_levels(4, {transpose_map(l)}), 1, w));
  CHECK_THROWS_AS(xi_condition_on_zero_products(m2, hd, 1, {{e11, e11}}), PreconditionFailed);
}

TEST_CASE("unit images") {
  const Algebra m2 = build_matrix_algebra(2);
  const oracle::Layout l{{2}};
  CHECK_FALSE(first_noncentral_unit_image(m2, MapFamily::from_higher_levels(4, {trace_times_identity(l)})).has_value());
  CHECK(first_noncentral_unit_image(m2, MapFamily::from_higher_levels(4, {LinMap::zero(4), LinMap(left_multiplication(m2, m2.basis(1)))})) ==
        std::optional<std::size_t>(2));
}
