#pragma once

// Sign calculus on the grading group Z_2^n.
//
// A degree is stored as an n-bit code where coordinate a_1 is the most
// significant bit.  With that layout the lexicographic order on degrees is
// plain integer order on the codes, so "degree index" and "lex rank" agree
// everywhere in the library.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace z2n {

inline constexpr int kMaxRank = 16;
inline constexpr int kMaxExhaustiveRank = 8;

class RankMismatch : public std::invalid_argument {
 public:
  RankMismatch(int lhs, int rhs);
};

class Degree {
 public:
  Degree() = default;
  Degree(int rank, std::uint32_t code);

  static Degree zero(int rank) { return Degree(rank, 0); }
  /// Unit vector e_j, 1-based as in a = sum_j a_j e_j.
  static Degree unit(int rank, int j);
  static Degree from_bits(const std::vector<int>& bits);

  int rank() const { return rank_; }
  std::uint32_t code() const { return code_; }
  /// Coordinate a_j, 1-based.
  int bit(int j) const;
  std::vector<int> bits() const;
  bool is_zero() const { return code_ == 0; }

  /// Group composition (componentwise XOR).
  Degree operator*(const Degree& other) const;
  Degree operator+(const Degree& other) const { return *this * other; }

  bool operator==(const Degree&) const = default;
  /// Lexicographic order; ranks must agree.
  std::strong_ordering operator<=>(const Degree& other) const;

  /// "0110"-style string, a_1 first.
  std::string str() const;

 private:
  int rank_ = 1;
  std::uint32_t code_ = 0;
};

/// All 2^n degrees in lexicographic order, gamma_0 = 0 first.
std::vector<Degree> all_degrees(int rank);

class Sign {
 public:
  constexpr Sign() = default;
  constexpr explicit Sign(bool negative) : negative_(negative) {}
  static constexpr Sign plus() { return Sign(false); }
  static constexpr Sign minus() { return Sign(true); }

  constexpr int value() const { return negative_ ? -1 : 1; }
  constexpr bool negative() const { return negative_; }
  constexpr Sign operator*(Sign o) const { return Sign(negative_ != o.negative_); }
  constexpr Sign inverse() const { return *this; }
  constexpr bool operator==(const Sign&) const = default;

 private:
  bool negative_ = false;
};

/// A fourth root of unity i^k, stored exactly by its exponent k mod 4.
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int exponent) : k_(((exponent % 4) + 4) % 4) {}
  static constexpr Phase from_sign(Sign s) { return Phase(s.negative() ? 2 : 0); }

  constexpr int exponent() const { return k_; }
  constexpr Phase operator*(Phase o) const { return Phase(k_ + o.k_); }
  constexpr Phase operator*(Sign s) const { return *this * from_sign(s); }
  constexpr Phase conj() const { return Phase(-k_); }
  constexpr bool operator==(const Phase&) const = default;

  /// Real and imaginary parts, each in {-1, 0, 1}.
  constexpr int re() const { return k_ == 0 ? 1 : (k_ == 2 ? -1 : 0); }
  constexpr int im() const { return k_ == 1 ? 1 : (k_ == 3 ? -1 : 0); }
  std::string str() const;

 private:
  int k_ = 0;
};

/// A homomorphism chi: Gamma -> {+1,-1}.  Every such homomorphism is
/// chi(a) = (-1)^{popcount(a & mask)}, so the mask is the whole state.
class Character {
 public:
  Character() = default;
  Character(int rank, std::uint32_t mask);
  static Character trivial(int rank) { return Character(rank, 0); }
  /// chi(a) = (-1)^{a_j}.
  static Character coordinate(int rank, int j);
  /// Builds a character from its full value table (indexed by degree code);
  /// throws unless the table is multiplicative.
  static Character from_table(int rank, const std::vector<int>& signs);

  int rank() const { return rank_; }
  std::uint32_t mask() const { return mask_; }
  bool is_trivial() const { return mask_ == 0; }
  Sign operator()(const Degree& a) const;
  bool operator==(const Character&) const = default;

 private:
  int rank_ = 1;
  std::uint32_t mask_ = 0;
};

enum class Parity { EvenLike, OddLike };

int bform(const Degree& a, const Degree& b);
Sign beta(const Degree& a, const Degree& b);
int ucount(const Degree& a);
Phase alpha(const Degree& a, const std::optional<Character>& twist = std::nullopt);
Parity parity(const Degree& a);
std::strong_ordering lex_compare(const Degree& a, const Degree& b);

/// Multiplicative check of an identity over all pairs of degrees.
struct PairViolation {
  Degree a;
  Degree b;
  std::string detail;
};

struct IdentityReport {
  std::string identity;
  int rank = 0;
  long long pairs_checked = 0;
  std::vector<PairViolation> violations;
  bool passed() const { return violations.empty(); }
};

IdentityReport verify_alpha_cocycle(int rank, const std::optional<Character>& twist = std::nullopt);

/// The lifting obstruction cocycle delta(a,b) = (-1)^{u(a) u(b)}.
Sign lifting_delta(const Degree& a, const Degree& b);
/// eta(a) = (-1)^{sum_{i<j} a_i a_j}.
Sign lifting_eta(const Degree& a);
IdentityReport verify_lifting_relation(int rank);

}  // namespace z2n
