#pragma once

// Universal enveloping algebra U(g_C) in PBW normal form, its star
// anti-automorphism, the adjoint action of G_0, and the involutive monoid
// S = G_0 x U(g_C).

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "z2n/color_lie.hpp"
#include "z2n/graded_linear.hpp"
#include "z2n/hc_pair.hpp"

namespace z2n {

/// Sequence of canonical basis indices.  Sorted words are PBW monomials.
using Word = std::vector<int>;

inline constexpr int kDefaultLevelCap = 6;
inline constexpr double kEnvPruneTol = 1e-14;

class LevelCapExceeded : public std::runtime_error {
 public:
  LevelCapExceeded(int length, int cap);
};

class EnvElement {
 public:
  using Terms = std::map<Word, cplx>;

  EnvElement() = default;
  static EnvElement one();
  static EnvElement generator(int i);
  static EnvElement monomial(Word w, cplx c = 1.0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int level() const;  // longest word
  cplx coefficient(const Word& w) const;

  void add(const Word& w, cplx c);
  EnvElement operator+(const EnvElement& rhs) const;
  EnvElement operator-(const EnvElement& rhs) const;
  EnvElement operator*(cplx c) const;
  /// Largest coefficient difference.
  double distance(const EnvElement& rhs) const;

 private:
  Terms terms_;
};

/// Common degree of all terms; nullopt when mixed.  The zero element has degree 0.
std::optional<Degree> env_degree(const ColorLieAlgebra& l, const EnvElement& d);
Degree word_degree(const ColorLieAlgebra& l, const Word& w);

bool is_pbw(const ColorLieAlgebra& l, const Word& w);

enum class RewriteStrategy { LeftmostInnermost, RightmostInnermost };

struct EnvOptions {
  int level_cap = kDefaultLevelCap;
  RewriteStrategy strategy = RewriteStrategy::LeftmostInnermost;
  std::optional<Character> twist;  // star map uses alpha' = chi alpha
};

EnvElement normal_form(const ColorLieAlgebra& l, const Word& w, const EnvOptions& opt = {});
EnvElement normalize(const ColorLieAlgebra& l, const EnvElement& d, const EnvOptions& opt = {});
EnvElement env_mul(const ColorLieAlgebra& l, const EnvElement& d1, const EnvElement& d2,
                   const EnvOptions& opt = {});
EnvElement env_star(const ColorLieAlgebra& l, const EnvElement& d, const EnvOptions& opt = {});
/// Applies the algebra automorphism `ad` (column j = image of x_j) letterwise.
EnvElement env_ad(const ColorLieAlgebra& l, const RMatrix& ad, const EnvElement& d,
                  const EnvOptions& opt = {});
/// Scalar for the star map on one letter: x* = star_scalar(|x|) x.
cplx star_scalar(const Degree& a, const std::optional<Character>& twist = std::nullopt);

struct MonoidElement {
  GroupWord group;
  EnvElement env = EnvElement::one();

  static MonoidElement one() { return {}; }
  static MonoidElement of_group(GroupWord g) { return {std::move(g), EnvElement::one()}; }
  static MonoidElement of_env(EnvElement d) { return {GroupWord::identity(), std::move(d)}; }
};

EnvElement env_ad(const HCPair& pair, const GroupWord& g, const EnvElement& d,
                  const EnvOptions& opt = {});
MonoidElement s_mul(const HCPair& pair, const MonoidElement& s1, const MonoidElement& s2,
                    const EnvOptions& opt = {});
MonoidElement s_star(const HCPair& pair, const MonoidElement& s, const EnvOptions& opt = {});
/// Max coefficient distance when group parts agree, +infinity otherwise.
double monoid_distance(const MonoidElement& a, const MonoidElement& b);

}  // namespace z2n
