#pragma once

// Positive-definite functions on the monoid S, their Gram matrices, the
// reproducing-kernel (GNS) reconstruction of a cyclic representation, and
// unitary-equivalence certificates.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "z2n/enveloping.hpp"
#include "z2n/hc_rep.hpp"
#include "z2n/report.hpp"

namespace z2n {

/// Monoid elements built by the constructions here keep concatenated,
/// un-normalized words; evaluators must accept any word.
class PDFunction {
 public:
  virtual ~PDFunction() = default;
  virtual const HCPair& pair() const = 0;
  /// Twist of the alpha-cocycle used by the star map.
  virtual std::optional<Character> twist() const { return std::nullopt; }
  virtual cplx operator()(const MonoidElement& s) const = 0;
  /// psi(s* t).  The default forms s* t in S and evaluates it.
  virtual cplx gram_entry(const MonoidElement& s, const MonoidElement& t) const;
  EnvOptions env_options() const;
};

/// phi_{v,w}(g, D) = (pi(g) rho(D) v, w).
class RepCoefficient : public PDFunction {
 public:
  RepCoefficient(UnitaryRep rep, CVector v, CVector w);
  const HCPair& pair() const override { return rep_.pair; }
  std::optional<Character> twist() const override { return rep_.space.twist(); }
  cplx operator()(const MonoidElement& s) const override;
  /// Evaluates s* t as an operator letter by letter, without PBW expansion.
  cplx gram_entry(const MonoidElement& s, const MonoidElement& t) const override;
  const UnitaryRep& rep() const { return rep_; }

 private:
  UnitaryRep rep_;
  CVector v_;
  CVector w_;
};

/// Values on PBW monomials (g, w); extended linearly in the enveloping part.
class TableFunction : public PDFunction {
 public:
  using Key = std::pair<GroupWord, Word>;
  TableFunction(HCPair pair, std::map<Key, cplx> values,
                std::optional<Character> twist = std::nullopt);
  const HCPair& pair() const override { return pair_; }
  std::optional<Character> twist() const override { return twist_; }
  /// Throws std::out_of_range when a needed monomial has no entry.
  cplx operator()(const MonoidElement& s) const override;
  const std::map<Key, cplx>& values() const { return values_; }

 private:
  HCPair pair_;
  std::map<Key, cplx> values_;
  std::optional<Character> twist_;
};

/// lambda * psi.
class ScaledFunction : public PDFunction {
 public:
  ScaledFunction(std::shared_ptr<const PDFunction> base, double lambda);
  const HCPair& pair() const override { return base_->pair(); }
  std::optional<Character> twist() const override { return base_->twist(); }
  cplx operator()(const MonoidElement& s) const override { return lambda_ * (*base_)(s); }
  cplx gram_entry(const MonoidElement& s, const MonoidElement& t) const override {
    return lambda_ * base_->gram_entry(s, t);
  }

 private:
  std::shared_ptr<const PDFunction> base_;
  double lambda_;
};

/// Evaluates the base function on PBW monomials only and records every value,
/// so the recorded table reproduces all evaluations made.
class RecordingFunction : public PDFunction {
 public:
  explicit RecordingFunction(std::shared_ptr<const PDFunction> base);
  const HCPair& pair() const override { return base_->pair(); }
  std::optional<Character> twist() const override { return base_->twist(); }
  cplx operator()(const MonoidElement& s) const override;
  std::map<TableFunction::Key, cplx> table() const;

 private:
  std::shared_ptr<const PDFunction> base_;
  mutable std::mutex mutex_;
  mutable std::map<TableFunction::Key, cplx> table_;
};

struct Sample {
  MonoidElement element;
  Degree degree;
};

using SampleSet = std::vector<Sample>;

/// (g, m) for g in group_samples (the identity is always included) and PBW
/// monomials m of level <= level.
SampleSet pbw_sample_set(const HCPair& pair, const std::vector<GroupWord>& group_samples,
                         int level);

/// Support condition and positive semidefiniteness of psi(s_i* s_j).
Report check_positive_definite(const PDFunction& psi, const SampleSet& samples,
                               double tol = 1e-9);

/// (1, x_k) s, with the enveloping part left un-normalized.
MonoidElement left_letter(const HCPair& pair, int k, const MonoidElement& s);
/// (g, 1) s.
MonoidElement left_group(const GroupWord& g, const MonoidElement& s);

struct Letter {
  enum class Kind { Algebra, Group };
  Kind kind = Kind::Algebra;
  int index = 0;  // basis index or generator index
};

/// Letters for Krylov closures: every basis element, every extra generator,
/// and the exponential generators at the given times.
std::vector<Letter> closure_letters(const HCPair& pair, const std::vector<double>& exp_times);
MonoidElement apply_letter(const HCPair& pair, const Letter& letter, const MonoidElement& s);

class GNSError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GNSOptions {
  int level_cap = kDefaultLevelCap;
  double tol = 1e-9;             // eigenvalue retention, relative to the Gram scale
  double escape_tol = 1e-7;      // relative norm loss under translation
  std::vector<double> exp_times{0.5, 1.0};
  std::optional<unsigned> shuffle_seed;  // permutes the letter order
  int pd_extra_samples = 48;     // rejected candidates kept for the positivity check
};

struct GNSResult {
  UnitaryRep rep;
  CVector cyclic;
  std::vector<double> retained_spectrum;
  std::vector<double> discarded_residuals;
  int level_used = 0;
  std::vector<int> rank_by_level;
  SampleSet basis_samples;  // retained samples, grouped by degree
  SampleSet pd_samples;     // retained plus some rejected candidates
  Report report{"gns_construct"};
};

GNSResult gns_construct(const PDFunction& psi, const GNSOptions& opt = {});

struct CyclicSpan {
  std::vector<MonoidElement> elements;
  CMatrix vectors;  // columns rho~(s) v, linearly independent
  int level_used = 0;
  bool stabilized = false;
};

/// Krylov closure of v under the closure letters.
CyclicSpan cyclic_span(const UnitaryRep& r, const CVector& v, int level_cap = kDefaultLevelCap,
                       double tol = 1e-9, const std::vector<double>& exp_times = {0.5, 1.0});

Report check_cyclic(const UnitaryRep& r, const CVector& v, double tol = 1e-9,
                    int level_cap = kDefaultLevelCap);

class EquivalenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Equivalence {
  CMatrix t;
  Report report{"unitary_equivalence"};
};

/// T: rho~1(s) v1 -> rho~2(s) v2.  Throws EquivalenceError when the matrix
/// coefficients disagree on the sample set.
Equivalence unitary_equivalence(const UnitaryRep& r1, const CVector& v1, const UnitaryRep& r2,
                                const CVector& v2, double tol = 1e-6);

Report gns_roundtrip(const UnitaryRep& r, const CVector& v0, const GNSOptions& opt = {},
                     double equivalence_tol = 1e-6);

/// For retained classes h = psi_b and samples s: (h, K_s) = h(s) with
/// K_s = psi_{s*}.  Returns the largest deviation.
double reproducing_residual(const PDFunction& psi, const GNSResult& result, int max_level = 2);

}  // namespace z2n
