#pragma once

// Algebraic data of a Gamma-Harish-Chandra pair (G_0, g).
//
// G_0 is modelled by a finite generator alphabet: user-supplied extra
// generators (representatives of components of G_0, with their Ad matrices)
// followed by one-parameter samples exp(t x) for every basis element x of
// g_0.  Group elements are reduced words in that alphabet.

#include <compare>
#include <string>
#include <vector>

#include "z2n/color_lie.hpp"

namespace z2n {

struct GroupLetter {
  int generator = 0;
  int power = 1;  // +1 or -1
  auto operator<=>(const GroupLetter&) const = default;
};

class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<GroupLetter> letters);  // reduces
  static GroupWord identity() { return {}; }
  static GroupWord generator(int g, int power = 1) { return GroupWord({{g, power}}); }

  const std::vector<GroupLetter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;
  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<GroupLetter> letters_;
};

struct ExtraGenerator {
  std::string label;
  RMatrix ad;  // degree-preserving bracket automorphism of g
};

struct GroupGenerator {
  enum class Kind { Extra, Exponential };
  std::string label;
  Kind kind = Kind::Extra;
  RMatrix ad;
  RMatrix ad_inverse;
  int basis_index = -1;  // Exponential: the g_0 basis element
  double t = 0.0;        // Exponential: the parameter
};

inline const std::vector<double> kDefaultExpTimes{0.3, 0.5, 1.0};

class HCPair {
 public:
  HCPair() = default;
  /// Throws std::invalid_argument when an extra generator's Ad matrix is not
  /// a degree-preserving bracket automorphism (tolerance 1e-9).
  HCPair(ColorLieAlgebra algebra, std::vector<ExtraGenerator> extras,
         std::vector<double> exp_times = kDefaultExpTimes);

  const ColorLieAlgebra& algebra() const { return algebra_; }
  int rank() const { return algebra_.rank(); }
  const std::vector<GroupGenerator>& generators() const { return generators_; }
  int num_extra() const { return num_extra_; }
  const std::vector<double>& exp_times() const { return exp_times_; }
  /// Index of the generator exp(t x_i); throws if not registered.
  int exp_generator(int basis_index, double t) const;
  /// Generators used as group samples: extras plus exp(t x) for t in times.
  std::vector<int> sample_generators(const std::vector<double>& times) const;

  RMatrix ad(const GroupWord& g) const;
  std::string label(const GroupWord& g) const;

 private:
  ColorLieAlgebra algebra_;
  std::vector<GroupGenerator> generators_;
  int num_extra_ = 0;
  std::vector<double> exp_times_;
};

/// Largest violation of A[x_i, x_j] = [A x_i, A x_j] and of grading.
double automorphism_residual(const ColorLieAlgebra& l, const RMatrix& a);

}  // namespace z2n
