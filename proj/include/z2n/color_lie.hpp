#pragma once

// Color Lie algebras (Gamma-Lie superalgebras) over the reals, given by a
// graded basis and structure constants [x_i, x_j] = sum_k c_ij^k x_k.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "z2n/graded_linear.hpp"
#include "z2n/grading.hpp"
#include "z2n/report.hpp"

namespace z2n {

struct BasisElement {
  std::string label;
  Degree degree;
};

struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Raised when an operation needs the perfectness hypothesis and an
/// even-like sector is not spanned by brackets of odd-like sectors.
class PerfectnessError : public std::runtime_error {
 public:
  PerfectnessError(const Degree& sector, int rank, int dim);
  const Degree& sector() const { return sector_; }

 private:
  Degree sector_;
};

using SparseVector = std::vector<std::pair<int, double>>;

class ColorLieAlgebra {
 public:
  ColorLieAlgebra() = default;
  /// Reorders the basis canonically (lex degree, then label).  Structure
  /// constants refer to the input order; repeated (i, j, k) entries add up.
  ColorLieAlgebra(int rank, std::vector<BasisElement> basis,
                  const std::vector<StructureConstant>& constants);

  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const Degree& degree(int i) const { return basis_.at(i).degree; }
  const std::string& label(int i) const { return basis_.at(i).label; }
  int index_of(const std::string& label) const;
  /// Canonical index of the element given as input number `i`.
  int canonical_index(int input_index) const { return input_to_canonical_.at(input_index); }

  /// Indices of the degree-a sector (a contiguous range).
  std::pair<int, int> sector_range(const Degree& a) const;
  int sector_dim(const Degree& a) const;
  GradedSpace as_graded_space() const;

  const SparseVector& bracket_of_basis(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * basis_.size() + j];
  }
  double constant(int i, int j, int k) const;
  std::vector<StructureConstant> constants() const;

  RVector bracket(const RVector& x, const RVector& y) const;
  CVector bracket(const CVector& x, const CVector& y) const;
  /// Matrix of ad_x = [x, .] on coefficient vectors.
  RMatrix ad_matrix(const RVector& x) const;
  RVector basis_vector(int i) const;

 private:
  int rank_ = 1;
  std::vector<BasisElement> basis_;
  std::vector<int> input_to_canonical_;
  std::vector<SparseVector> table_;
};

/// gl(V) with matrix-unit basis E_pq and [S, T] = ST - beta(|S|,|T|) TS.
ColorLieAlgebra glV(const GradedSpace& v);
/// Matrix of a gl(V) coefficient vector (for cross-checks).
CMatrix glV_matrix(const GradedSpace& v, const CVector& coefficients);
/// The superbracket of two homogeneous matrices.
CMatrix glV_bracket(const CMatrix& s, const Degree& ds, const CMatrix& t, const Degree& dt);

Report check_axioms(const ColorLieAlgebra& l, double tol = 1e-9);

struct SectorRank {
  Degree sector;
  int dim = 0;
  int rank = 0;
  bool saturated() const { return rank == dim; }
};

struct PerfectnessReport {
  std::vector<SectorRank> sectors;  // every even-like a != 0
  bool passed() const;
  const SectorRank* find(const Degree& a) const;
  Report to_report() const;
};

PerfectnessReport check_perfectness(const ColorLieAlgebra& l);

struct BracketTerm {
  double coefficient = 0.0;
  int left = 0;   // basis index in an odd-like sector b
  int right = 0;  // basis index in an odd-like sector c, bc = a
};

struct BracketDecomposition {
  Degree sector;
  std::vector<BracketTerm> terms;
  double residual = 0.0;
};

enum class DecompositionMethod {
  MinimumNorm,  // complete orthogonal decomposition, minimal-norm solution
  PivotedQR,    // column-pivoted QR basic solution
};

/// Writes x (supported in the even-like sector a != 0) as a combination of
/// brackets of odd-like basis elements.  Throws PerfectnessError when the
/// sector is not saturated.
BracketDecomposition decompose_odd(const ColorLieAlgebra& l, const Degree& a, const RVector& x,
                                   DecompositionMethod method = DecompositionMethod::MinimumNorm);
/// Re-evaluates sum coeff [x_left, x_right].
RVector evaluate(const ColorLieAlgebra& l, const BracketDecomposition& d);

}  // namespace z2n
