#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "zplie/algebra.hpp"

namespace zplie {

/// The one generator used for every randomized routine; seeded from the CLI.
using Rng = std::mt19937_64;

/// Small rational: an integer in [-bound, bound], divided by 2 about one time in four.
Scalar random_scalar(Rng& rng, int bound = 3);
/// Uniform integer in [lo, hi]; avoids std::uniform_int_distribution so that
/// streams agree across standard libraries.
std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi);

Element random_element(const Algebra& alg, Rng& rng, int bound = 3);
Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, int bound = 3);

/// A random element with a nontrivial right annihilator, or nullopt when
/// none was found (e.g. the algebra is a field).
std::optional<Element> random_zero_divisor(const Algebra& alg, Rng& rng);

}  // namespace zplie
