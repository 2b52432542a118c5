#pragma once

// Unitary representations and pre-representations of a Harish-Chandra pair
// on a finite-dimensional Gamma-inner product space, their checkers, the
// stability extension, matrix coefficients and the alpha-twist.

#include <optional>
#include <stdexcept>
#include <vector>

#include "z2n/enveloping.hpp"
#include "z2n/graded_linear.hpp"
#include "z2n/hc_pair.hpp"
#include "z2n/report.hpp"

namespace z2n {

/// rho[i] is the operator of canonical basis element i; an empty matrix marks
/// an undefined sector (pre-representations).  extra_pi holds one unitary per
/// extra generator of the pair; exponential generators act by exp(t rho(x)).
struct Representation {
  HCPair pair;
  GammaInnerSpace space;
  std::vector<CMatrix> rho;
  std::vector<CMatrix> extra_pi;

  int dim() const { return space.space().total_dim(); }
  bool defined(int i) const { return rho.at(i).size() > 0 || dim() == 0; }
  bool sector_defined(const Degree& a) const;
};

using UnitaryRep = Representation;
using PartialRep = Representation;

/// Sectors a pre-representation carries: 0 and every odd-like degree.
bool is_prerep_sector(const Degree& a);

inline constexpr double kRepTol = 1e-9;
inline constexpr double kExtensionTol = 1e-8;

class UndefinedSector : public std::invalid_argument {
 public:
  explicit UndefinedSector(const std::string& label);
};

class InconsistentPreRep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator of sum_k coeffs(k) x_k.
CMatrix rho_vector(const Representation& r, const RVector& coeffs);
CMatrix rho_env(const Representation& r, const EnvElement& d);
CMatrix pi_generator(const Representation& r, int generator, int power = 1);
CMatrix pi(const Representation& r, const GroupWord& g);
CMatrix rho_tilde(const Representation& r, const MonoidElement& s);

Report check_unitary_rep(const Representation& r, double tol = kRepTol);
Report check_pre_rep(const Representation& p, double tol = kRepTol);

/// Drops the even-like sectors a != 0.
PartialRep restrict_to_prerep(const UnitaryRep& r);

struct ExtensionOptions {
  double tol = kExtensionTol;
  bool parallel = false;
  bool validate = true;  // run check_unitary_rep on the result
};

struct ExtensionResult {
  UnitaryRep rep;
  Report report;  // decomposition-independence residuals and validation
};

/// Defines rho on every even-like sector a != 0 by the bracket formula over
/// odd-like decompositions.  Throws PerfectnessError if the algebra is not
/// perfect and InconsistentPreRep if two decompositions disagree beyond tol.
ExtensionResult stability_extend(const PartialRep& p, const ExtensionOptions& opt = {});

/// (pi(g) rho(D) v, w) with the ordinary inner product.
cplx matrix_coefficient(const Representation& r, const CVector& v, const CVector& w,
                        const MonoidElement& s);

/// rho' = chi rho on the same space with alpha' = chi alpha.
UnitaryRep twist_rep(const UnitaryRep& r, const Character& chi);

/// Residual of T rho1(x) = rho2(x) T and T pi1(g) = pi2(g) T over all basis
/// elements and extra generators.
double intertwiner_residual(const Representation& r1, const Representation& r2, const CMatrix& t);

/// The representation U r U^{-1} on the space with Gram transported by U.
/// U must be degree-preserving; it is unitary between the two ordinary
/// inner products by construction.
UnitaryRep conjugate_rep(const UnitaryRep& r, const CMatrix& u, const GammaInnerSpace& target);

/// Direct sum r1 (+) r2 over the same pair; basis reordered canonically.
UnitaryRep direct_sum(const UnitaryRep& r1, const UnitaryRep& r2);

/// Permutation taking the concatenated basis of V (+) W to canonical order.
std::vector<int> direct_sum_order(const GradedSpace& v, const GradedSpace& w);

/// Trivial one-dimensional representation on a degree-0 line.
UnitaryRep trivial_rep(const HCPair& pair);

}  // namespace z2n
