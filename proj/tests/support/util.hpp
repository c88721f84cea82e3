#pragma once

#include <vector>

#include "oracle.hpp"
#include "zplie/algebra.hpp"
#include "zplie/maps.hpp"

namespace testutil {

inline oracle::Layout layout_of(const zplie::Algebra& alg) { return oracle::Layout{alg.block_sizes()}; }

inline oracle::Vec flatten(const zplie::LinMap& m) {
  oracle::Vec v;
  const std::size_t d = m.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) v.push_back(m.matrix()(r, s));
  return v;
}

inline std::vector<oracle::Vec> flatten(const std::vector<zplie::LinMap>& ms) {
  std::vector<oracle::Vec> out;
  for (const auto& m : ms) out.push_back(flatten(m));
  return out;
}

inline oracle::Mat to_oracle(const zplie::Matrix& m) {
  oracle::Mat out = oracle::zeros(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline zplie::Element element(const oracle::Layout& l, const oracle::Mat& m) { return zplie::Element(l.to_coords(m)); }

inline oracle::Mat matrix(const oracle::Layout& l, const zplie::Element& e) { return l.to_matrix(e.coords()); }

// Maps A -> f(A) built on full matrices, as a library LinMap.
template <class F>
zplie::LinMap map_of(const oracle::Layout& l, F f) {
  const std::size_t d = l.dim();
  zplie::Matrix m(d, d);
  for (std::size_t s = 0; s < d; ++s) {
    const oracle::Vec img = l.to_coords(f(l.basis_matrix(s)));
    for (std::size_t r = 0; r < d; ++r) m(r, s) = img[r];
  }
  return zplie::LinMap(m);
}

}  // namespace testutil
