#include "z2n/grading.hpp"

#include <bit>

namespace z2n {

namespace {

void require_same_rank(const Degree& a, const Degree& b) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
}

void require_exhaustive_rank(int rank) {
  if (rank < 1 || rank > kMaxExhaustiveRank) {
    throw std::invalid_argument("exhaustive checks need 1 <= n <= " +
                                std::to_string(kMaxExhaustiveRank) + ", got " +
                                std::to_string(rank));
  }
}

}  // namespace

RankMismatch::RankMismatch(int lhs, int rhs)
    : std::invalid_argument("rank mismatch: " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs)) {}

Degree::Degree(int rank, std::uint32_t code) : rank_(rank), code_(code) {
  if (rank < 1 || rank > kMaxRank) {
    throw std::invalid_argument("degree rank must be in [1, 16], got " + std::to_string(rank));
  }
  if (code >> rank) throw std::invalid_argument("degree code has bits above rank");
}

Degree Degree::unit(int rank, int j) {
  if (j < 1 || j > rank) throw std::out_of_range("unit degree index out of range");
  return Degree(rank, 1u << (rank - j));
}

Degree Degree::from_bits(const std::vector<int>& bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("degree length must be in [1, 16]");
  std::uint32_t code = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("degree entries must be 0 or 1");
    code = (code << 1) | static_cast<std::uint32_t>(b);
  }
  return Degree(n, code);
}

int Degree::bit(int j) const {
  if (j < 1 || j > rank_) throw std::out_of_range("degree coordinate out of range");
  return static_cast<int>((code_ >> (rank_ - j)) & 1u);
}

std::vector<int> Degree::bits() const {
  std::vector<int> out(rank_);
  for (int j = 1; j <= rank_; ++j) out[j - 1] = bit(j);
  return out;
}

Degree Degree::operator*(const Degree& other) const {
  require_same_rank(*this, other);
  return Degree(rank_, code_ ^ other.code_);
}

std::strong_ordering Degree::operator<=>(const Degree& other) const {
  require_same_rank(*this, other);
  return code_ <=> other.code_;
}

std::string Degree::str() const {
  std::string s;
  for (int j = 1; j <= rank_; ++j) s.push_back(bit(j) ? '1' : '0');
  return s;
}

std::vector<Degree> all_degrees(int rank) {
  Degree::zero(rank);  // validates rank
  std::vector<Degree> out;
  out.reserve(std::size_t{1} << rank);
  for (std::uint32_t c = 0; c < (1u << rank); ++c) out.emplace_back(rank, c);
  return out;
}

std::string Phase::str() const {
  static const char* names[] = {"1", "i", "-1", "-i"};
  return names[k_];
}

Character::Character(int rank, std::uint32_t mask) : rank_(rank), mask_(mask) {
  Degree(rank, mask);  // validates
}

Character Character::coordinate(int rank, int j) {
  return Character(rank, Degree::unit(rank, j).code());
}

Character Character::from_table(int rank, const std::vector<int>& signs) {
  if (signs.size() != (std::size_t{1} << rank)) {
    throw std::invalid_argument("character table must have 2^n entries");
  }
  if (signs[0] != 1) throw std::invalid_argument("character must send 0 to +1");
  std::uint32_t mask = 0;
  for (int j = 1; j <= rank; ++j) {
    const auto e = Degree::unit(rank, j).code();
    if (signs[e] == -1) mask |= e;
    else if (signs[e] != 1) throw std::invalid_argument("character values must be +1 or -1");
  }
  Character chi(rank, mask);
  for (const auto& a : all_degrees(rank)) {
    if (chi(a).value() != signs[a.code()]) {
      throw std::invalid_argument("character table is not multiplicative at degree " + a.str());
    }
  }
  return chi;
}

Sign Character::operator()(const Degree& a) const {
  if (a.rank() != rank_) throw RankMismatch(a.rank(), rank_);
  return Sign(std::popcount(a.code() & mask_) & 1);
}

int bform(const Degree& a, const Degree& b) {
  require_same_rank(a, b);
  return std::popcount(a.code() & b.code()) & 1;
}

Sign beta(const Degree& a, const Degree& b) { return Sign(bform(a, b) == 1); }

int ucount(const Degree& a) { return std::popcount(a.code()); }

Phase alpha(const Degree& a, const std::optional<Character>& twist) {
  Phase p(ucount(a));
  if (twist) p = p * (*twist)(a);
  return p;
}

Parity parity(const Degree& a) {
  return bform(a, a) == 0 ? Parity::EvenLike : Parity::OddLike;
}

std::strong_ordering lex_compare(const Degree& a, const Degree& b) { return a <=> b; }

IdentityReport verify_alpha_cocycle(int rank, const std::optional<Character>& twist) {
  require_exhaustive_rank(rank);
  IdentityReport rep;
  rep.identity = "alpha(bc) = beta(b,c) alpha(b) alpha(c)";
  rep.rank = rank;
  const auto degrees = all_degrees(rank);
  for (const auto& b : degrees) {
    for (const auto& c : degrees) {
      ++rep.pairs_checked;
      const Phase lhs = alpha(b * c, twist);
      const Phase rhs = alpha(b, twist) * alpha(c, twist) * beta(b, c);
      if (!(lhs == rhs)) {
        rep.violations.push_back({b, c, "lhs " + lhs.str() + " rhs " + rhs.str()});
      }
    }
  }
  return rep;
}

Sign lifting_delta(const Degree& a, const Degree& b) {
  require_same_rank(a, b);
  return Sign((ucount(a) * ucount(b)) & 1);
}

Sign lifting_eta(const Degree& a) {
  int s = 0;
  for (int i = 1; i <= a.rank(); ++i) {
    for (int j = i + 1; j <= a.rank(); ++j) s += a.bit(i) * a.bit(j);
  }
  return Sign(s & 1);
}

IdentityReport verify_lifting_relation(int rank) {
  require_exhaustive_rank(rank);
  IdentityReport rep;
  rep.identity = "beta(a,b) delta(a,b)^-1 = eta(a) eta(b) eta(ab)^-1";
  rep.rank = rank;
  const auto degrees = all_degrees(rank);
  for (const auto& a : degrees) {
    for (const auto& b : degrees) {
      ++rep.pairs_checked;
      const Sign lhs = beta(a, b) * lifting_delta(a, b).inverse();
      const Sign rhs = lifting_eta(a) * lifting_eta(b) * lifting_eta(a * b).inverse();
      if (!(lhs == rhs)) {
        rep.violations.push_back({a, b,
                                  "lhs " + std::to_string(lhs.value()) + " rhs " +
                                      std::to_string(rhs.value())});
      }
    }
  }
  return rep;
}

}  // namespace z2n
