#pragma once

// Bundled pairs and representations: u(V) and gl(V) with their defining
// representations, the Clifford pair for n = 1, the n = 2 pair with no
// extension, and seeded random data.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "z2n/color_lie.hpp"
#include "z2n/hc_pair.hpp"
#include "z2n/hc_rep.hpp"

namespace z2n {

/// A color Lie algebra given as the real span of homogeneous matrices that
/// is closed under the superbracket.  matrices follow the canonical basis.
struct MatrixAlgebra {
  ColorLieAlgebra algebra;
  GradedSpace space;
  std::vector<CMatrix> matrices;
};

/// Throws std::invalid_argument if the span is not closed under brackets or
/// the matrices are linearly dependent over the reals.
MatrixAlgebra matrix_real_form(const GradedSpace& v, const std::vector<BasisElement>& basis,
                               const std::vector<CMatrix>& matrices, double tol = 1e-9);

/// Real coordinates of m in the real span of `basis` and the fit residual.
RVector real_coordinates(const std::vector<CMatrix>& basis, const CMatrix& m,
                         double* residual = nullptr);

/// u(V): operators X with X^dagger = -X for the standard inner product.
MatrixAlgebra unitary_algebra(const GradedSpace& v);

/// Ad matrix of conjugation by u on a matrix algebra.
RMatrix conjugation_ad(const MatrixAlgebra& m, const CMatrix& u);

/// Pair over a matrix algebra with one extra generator per unitary.
HCPair matrix_pair(const MatrixAlgebra& m, const std::vector<CMatrix>& extra_unitaries);

/// The defining representation of a matrix pair on V with the standard inner product.
UnitaryRep defining_rep(const HCPair& pair, const MatrixAlgebra& m,
                        const std::vector<CMatrix>& extra_unitaries);

/// gl(V) acting on V by its matrix units (not unitary; for cross-checks).
Representation glV_defining(const GradedSpace& v);

/// n = 1: z in degree 0, x in degree 1, [x, x] = 2z, on a (1|1) space with
/// rho(z) = -i, rho(x) = [[0, -i], [1, 0]].
MatrixAlgebra clifford_algebra();
UnitaryRep clifford_rep();
CVector clifford_cyclic_vector();

/// n = 2: one generator of degree (1,1), trivial group.
ColorLieAlgebra counterexample_algebra();
HCPair counterexample_pair();
/// Pre-representation on a degree-0 line with the (1,1) generator undefined.
PartialRep counterexample_prerep();

struct RandomRepOptions {
  int rank = 1;
  std::vector<int> dims;  // per degree code; empty: random
  int max_total_dim = 4;
  int extra_generators = 1;
  bool plus_trivial = false;
  bool require_perfect = false;
};

struct RandomRep {
  UnitaryRep rep;
  CVector cyclic;  // degree-0 cyclic vector
  GradedSpace base_space;
};

/// u(V) defining representation conjugated by a random degree-preserving
/// change of basis (the inner product is transported), optionally plus the
/// trivial representation.  Deterministic for a fixed seed.
RandomRep random_rep(std::uint64_t seed, const RandomRepOptions& opt = {});

/// Random degree-preserving unitary for the standard inner product.
CMatrix random_graded_unitary(std::mt19937_64& rng, const GradedSpace& v);
CMatrix random_complex(std::mt19937_64& rng, int rows, int cols);

/// [y_i, y_j] = A^{-1}[A y_i, A y_j] for a degree-preserving invertible A.
ColorLieAlgebra change_basis(const ColorLieAlgebra& l, const RMatrix& a);
ColorLieAlgebra direct_sum_algebras(const ColorLieAlgebra& a, const ColorLieAlgebra& b);

/// Small random color algebra (dim <= max_dim) assembled from gl(V) for
/// two-dimensional V, Heisenberg-type algebras and abelian summands, in a
/// random degree-preserving basis.
ColorLieAlgebra random_color_algebra(std::mt19937_64& rng, int rank, int max_dim);

}  // namespace z2n
