#pragma once

// Gamma-graded complex vector spaces, homogeneous maps, tensor products with
// the braiding, and Gamma-inner product spaces with their two adjoints.
//
// Conventions:
//  * The canonical basis of a graded space lists degree components in lex
//    order, each component in its own index order.
//  * The ordinary inner product (v, w) = w^H G v is linear in the first slot.
//  * The Gamma-form is derived: <v, w> = conj(alpha(a)) (v, w) on degree a.

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "z2n/grading.hpp"
#include "z2n/report.hpp"

namespace z2n {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

cplx to_complex(Phase p);
inline cplx to_complex(Sign s) { return cplx(s.value(), 0.0); }

class GradedSpace {
 public:
  GradedSpace() : GradedSpace(1, {0, 0}) {}
  /// dims is indexed by degree code and must have 2^rank entries.
  GradedSpace(int rank, std::vector<int> dims);
  static GradedSpace concentrated(const Degree& a, int dim);
  static GradedSpace trivial(int rank) { return concentrated(Degree::zero(rank), 1); }

  int rank() const { return rank_; }
  int dim(const Degree& a) const;
  int total_dim() const { return total_; }
  /// First canonical index of the degree-a component.
  int offset(const Degree& a) const;
  Degree degree_of(int index) const;
  const std::vector<int>& dims() const { return dims_; }
  std::vector<Degree> support() const;

  bool operator==(const GradedSpace&) const = default;

 private:
  int rank_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// A linear map of pure degree a: component b of the source goes into
/// component a*b of the target.  Stored as one dense matrix in canonical
/// bases whose disallowed blocks are exactly zero.
class HomogeneousMap {
 public:
  HomogeneousMap() = default;
  /// Validates the block pattern; entries outside allowed blocks larger than
  /// tol (relative to the matrix norm) throw, smaller ones are zeroed.
  HomogeneousMap(GradedSpace source, GradedSpace target, Degree degree, CMatrix matrix,
                 double tol = 1e-12);
  static HomogeneousMap zero(const GradedSpace& src, const GradedSpace& dst, const Degree& a);
  static HomogeneousMap identity(const GradedSpace& space);

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  const Degree& degree() const { return degree_; }
  const CMatrix& matrix() const { return matrix_; }
  /// The dims(a*b) x dims(b) block taking component b to component a*b.
  CMatrix block(const Degree& b) const;

  HomogeneousMap operator*(const HomogeneousMap& rhs) const;  // composition
  HomogeneousMap operator*(cplx s) const;
  HomogeneousMap operator+(const HomogeneousMap& rhs) const;
  HomogeneousMap operator-(const HomogeneousMap& rhs) const;

 private:
  GradedSpace source_;
  GradedSpace target_;
  Degree degree_;
  CMatrix matrix_;
};

/// Residual pattern check: largest entry outside the degree-a block pattern.
double off_pattern_norm(const GradedSpace& src, const GradedSpace& dst, const Degree& a,
                        const CMatrix& m);

class GammaInnerSpace {
 public:
  GammaInnerSpace() = default;
  /// grams[code] is the ordinary inner product on component `code`; each must
  /// be Hermitian positive definite.  The twist selects alpha' = chi alpha.
  GammaInnerSpace(GradedSpace space, std::vector<CMatrix> grams,
                  std::optional<Character> twist = std::nullopt);
  static GammaInnerSpace standard(const GradedSpace& space,
                                  std::optional<Character> twist = std::nullopt);

  const GradedSpace& space() const { return space_; }
  const std::vector<CMatrix>& grams() const { return grams_; }
  const CMatrix& gram(const Degree& a) const { return grams_.at(a.code()); }
  const std::optional<Character>& twist() const { return twist_; }
  Phase alpha_of(const Degree& a) const { return alpha(a, twist_); }

  /// Block-diagonal ordinary Gram matrix in the canonical basis.
  const CMatrix& full_gram() const { return full_gram_; }
  const CMatrix& full_gram_inverse() const { return full_gram_inv_; }
  /// The Gamma-form as a matrix: <v, w> = w^H B v.
  CMatrix gamma_gram() const;

  cplx ordinary_inner(const CVector& v, const CVector& w) const;
  /// Sum over components of conj(alpha(a)) (v_a, w_a); zero for homogeneous
  /// vectors of different degree.
  cplx gamma_inner(const CVector& v, const CVector& w) const;
  /// Same space, inner product unchanged, different alpha-variant.
  GammaInnerSpace with_twist(std::optional<Character> twist) const;

 private:
  GradedSpace space_;
  std::vector<CMatrix> grams_;
  std::optional<Character> twist_;
  CMatrix full_gram_;
  CMatrix full_gram_inv_;
};

/// Conditions (i)-(iii) of a Gamma-inner product space checked on the
/// derived Gamma-form, plus non-degeneracy.
Report validate_gamma_inner(const GammaInnerSpace& h, double tol = 1e-12);

/// Component-a projection of a vector.
CVector component(const GradedSpace& space, const CVector& v, const Degree& a);
/// True if v is supported in one degree; returns that degree.
std::optional<Degree> homogeneous_degree(const GradedSpace& space, const CVector& v,
                                         double tol = 0.0);

HomogeneousMap star_adjoint(const GammaInnerSpace& h, const HomogeneousMap& t);
HomogeneousMap dagger_adjoint(const GammaInnerSpace& h, const HomogeneousMap& t);

/// A non-homogeneous endomorphism, split into its homogeneous components.
class GradedMap {
 public:
  GradedMap() = default;
  static GradedMap decompose(const GradedSpace& space, const CMatrix& m);
  void add(const HomogeneousMap& t);
  const std::map<std::uint32_t, HomogeneousMap>& parts() const { return parts_; }
  CMatrix matrix() const;
  /// Conjugate-linear extension of the homogeneous dagger.
  GradedMap dagger(const GammaInnerSpace& h) const;

 private:
  std::optional<GradedSpace> space_;
  std::map<std::uint32_t, HomogeneousMap> parts_;
};

/// Canonical basis of V (x) W: pair (p, q) of canonical indices for each
/// tensor-space index, and the inverse lookup.
struct TensorBasis {
  GradedSpace left;
  GradedSpace right;
  GradedSpace space;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> index_of;  // p * right.total_dim() + q -> tensor index

  int index(int p, int q) const { return index_of[p * right.total_dim() + q]; }
};

TensorBasis tensor_basis(const GradedSpace& v, const GradedSpace& w);
GradedSpace tensor_space(const GradedSpace& v, const GradedSpace& w);
/// The braiding v (x) w -> beta(|v|,|w|) w (x) v.
HomogeneousMap symmetry(const GradedSpace& v, const GradedSpace& w);
/// (f (x) g)(v (x) w) = beta(|g|,|v|) f v (x) g w.
HomogeneousMap tensor_map(const HomogeneousMap& f, const HomogeneousMap& g);
GammaInnerSpace tensor_inner(const GammaInnerSpace& h, const GammaInnerSpace& k);

}  // namespace z2n
