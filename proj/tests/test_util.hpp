#pragma once

#include <random>
#include <vector>

#include "z2n/graded_linear.hpp"

namespace z2n::testing {

inline CMatrix rand_c(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> n01;
  CMatrix m(r, c);
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) {
      const double re = n01(rng);
      m(i, j) = cplx(re, n01(rng));
    }
  }
  return m;
}

inline GradedSpace rand_space(std::mt19937_64& rng, int rank, int max_dim) {
  std::uniform_int_distribution<int> pick(0, max_dim);
  std::vector<int> dims(std::size_t{1} << rank);
  int total = 0;
  for (auto& d : dims) total += (d = pick(rng));
  if (total == 0) dims[0] = 1;
  return GradedSpace(rank, dims);
}

inline GammaInnerSpace rand_inner(std::mt19937_64& rng, const GradedSpace& v) {
  std::vector<CMatrix> grams;
  for (std::size_t c = 0; c < v.dims().size(); ++c) {
    const int k = v.dims()[c];
    const CMatrix a = rand_c(rng, k, k);
    grams.push_back(a * a.adjoint() + CMatrix::Identity(k, k));
  }
  return GammaInnerSpace(v, grams);
}

inline Degree rand_degree(std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<unsigned> pick(0, (1u << rank) - 1);
  return Degree(rank, pick(rng));
}

/// Random matrix with the block pattern of degree a.
inline CMatrix rand_pattern(std::mt19937_64& rng, const GradedSpace& src, const GradedSpace& dst,
                            const Degree& a) {
  CMatrix m = CMatrix::Zero(dst.total_dim(), src.total_dim());
  for (const Degree& b : src.support()) {
    const Degree ab = a * b;
    if (dst.dim(ab) == 0) continue;
    m.block(dst.offset(ab), src.offset(b), dst.dim(ab), src.dim(b)) =
        rand_c(rng, dst.dim(ab), src.dim(b));
  }
  return m;
}

inline HomogeneousMap rand_map(std::mt19937_64& rng, const GradedSpace& v, const Degree& a) {
  return HomogeneousMap(v, v, a, rand_pattern(rng, v, v, a));
}

inline CVector rand_homogeneous(std::mt19937_64& rng, const GradedSpace& v, const Degree& a) {
  CVector x = CVector::Zero(v.total_dim());
  if (v.dim(a) > 0) x.segment(v.offset(a), v.dim(a)) = rand_c(rng, v.dim(a), 1);
  return x;
}

inline double rel_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(1.0, std::max(a.norm(), b.norm()));
}

}  // namespace z2n::testing
