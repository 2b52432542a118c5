#include <complex>
#include <vector>

#include "doctest.h"
#include "z2n/grading.hpp"

using namespace z2n;

namespace {

// Independent oracle: degrees as plain 0/1 arrays, a_1 first.
std::vector<int> bits_of(int rank, unsigned code) {
  std::vector<int> b(rank);
  for (int j = 0; j < rank; ++j) b[j] = (code >> (rank - 1 - j)) & 1u;
  return b;
}

int oracle_bform(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s % 2;
}

std::complex<double> oracle_alpha(const std::vector<int>& a) {
  std::complex<double> z = 1.0;
  for (int x : a) {
    if (x) z *= std::complex<double>(0.0, 1.0);
  }
  return z;
}

std::complex<double> as_complex(Phase p) { return {double(p.re()), double(p.im())}; }

}  // namespace

TEST_CASE("bilinear form examples") {
  CHECK(bform(Degree::unit(3, 1), Degree::unit(3, 1)) == 1);
  for (unsigned c = 0; c < 8; ++c) CHECK(bform(Degree::zero(3), Degree(3, c)) == 0);
  const Degree e12 = Degree::unit(3, 1) * Degree::unit(3, 2);
  const Degree e23 = Degree::unit(3, 2) * Degree::unit(3, 3);
  CHECK(bform(e12, e23) == 1);
  CHECK_THROWS_AS(bform(Degree::zero(2), Degree::zero(3)), RankMismatch);
}

TEST_CASE("commutation factor examples") {
  CHECK(beta(Degree::unit(2, 1), Degree::unit(2, 1)) == Sign::minus());
  CHECK(beta(Degree::zero(2), Degree(2, 3)) == Sign::plus());
  CHECK(beta(Degree::unit(2, 1), Degree::unit(2, 2)) == Sign::plus());
}

TEST_CASE("ucount, alpha and parity examples") {
  const Degree a = Degree::from_bits({1, 0, 1, 1});
  CHECK(ucount(a) == 3);
  CHECK(ucount(Degree::zero(4)) == 0);
  CHECK(ucount(Degree::unit(4, 2)) == 1);
  CHECK(alpha(Degree::unit(2, 1)) == Phase(1));
  CHECK(alpha(Degree::zero(2)) == Phase(0));
  CHECK(alpha(Degree::from_bits({1, 1})) == Phase(2));
  CHECK(parity(Degree::unit(2, 1)) == Parity::OddLike);
  CHECK(parity(Degree::zero(2)) == Parity::EvenLike);
  CHECK(parity(Degree::from_bits({1, 1})) == Parity::EvenLike);
}

TEST_CASE("lexicographic order") {
  CHECK(Degree::from_bits({0, 1}) < Degree::from_bits({1, 0}));
  CHECK(lex_compare(Degree(2, 2), Degree(2, 2)) == std::strong_ordering::equal);
  const auto all = all_degrees(2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].str() == "00");
  CHECK(all[1].str() == "01");
  CHECK(all[2].str() == "10");
  CHECK(all[3].str() == "11");
  CHECK_THROWS_AS((void)(Degree::zero(1) < Degree::zero(2)), RankMismatch);
}

TEST_CASE("lex order matches the definition by first differing coordinate") {
  for (int n = 1; n <= 4; ++n) {
    for (unsigned x = 0; x < (1u << n); ++x) {
      for (unsigned y = 0; y < (1u << n); ++y) {
        const auto a = bits_of(n, x), b = bits_of(n, y);
        bool less = false;
        for (int j = 0; j < n; ++j) {
          if (a[j] != b[j]) {
            less = a[j] == 0;
            break;
          }
        }
        CHECK((Degree(n, x) < Degree(n, y)) == less);
      }
    }
  }
}

TEST_CASE("sign calculus against the array oracle") {
  for (int n = 1; n <= 4; ++n) {
    for (unsigned x = 0; x < (1u << n); ++x) {
      const auto a = bits_of(n, x);
      CHECK(as_complex(alpha(Degree(n, x))) == oracle_alpha(a));
      const bool odd = oracle_bform(a, a) == 1;
      CHECK((parity(Degree(n, x)) == Parity::OddLike) == odd);
      CHECK(beta(Degree(n, x), Degree(n, x)).value() == (ucount(Degree(n, x)) % 2 ? -1 : 1));
      for (unsigned y = 0; y < (1u << n); ++y) {
        const auto b = bits_of(n, y);
        CHECK(bform(Degree(n, x), Degree(n, y)) == oracle_bform(a, b));
        CHECK(beta(Degree(n, x), Degree(n, y)) == beta(Degree(n, y), Degree(n, x)));
        for (unsigned z = 0; z < (1u << n); ++z) {
          CHECK(beta(Degree(n, x), Degree(n, y) * Degree(n, z)) ==
                beta(Degree(n, x), Degree(n, y)) * beta(Degree(n, x), Degree(n, z)));
        }
      }
    }
  }
}

TEST_CASE("alpha cocycle identity") {
  CHECK(verify_alpha_cocycle(1).passed());
  CHECK(verify_alpha_cocycle(1).pairs_checked == 4);
  CHECK(verify_alpha_cocycle(2).passed());
  const auto twisted = verify_alpha_cocycle(3, Character::coordinate(3, 1));
  CHECK(twisted.passed());
  CHECK(twisted.pairs_checked == 64);
  for (unsigned mask = 0; mask < 16; ++mask) {
    CHECK(verify_alpha_cocycle(4, Character(4, mask)).passed());
  }
}

TEST_CASE("lifting relation") {
  const Degree e1 = Degree::unit(2, 1), e2 = Degree::unit(2, 2);
  const Sign lhs = beta(e1, e2) * lifting_delta(e1, e2).inverse();
  const Sign rhs = lifting_eta(e1) * lifting_eta(e2) * lifting_eta(e1 * e2).inverse();
  CHECK(lhs == Sign::minus());
  CHECK(rhs == Sign::minus());
  for (unsigned c = 0; c < 4; ++c) {
    const Degree b(2, c);
    CHECK(beta(Degree::zero(2), b) * lifting_delta(Degree::zero(2), b) == Sign::plus());
  }
  CHECK(verify_lifting_relation(3).passed());
  CHECK(verify_lifting_relation(3).pairs_checked == 64);
}

TEST_CASE("characters") {
  const Character chi = Character::coordinate(3, 1);
  CHECK(chi(Degree::from_bits({1, 0, 0})) == Sign::minus());
  CHECK(chi(Degree::from_bits({0, 1, 1})) == Sign::plus());
  CHECK(alpha(Degree::unit(3, 1), chi) == Phase(3));
  CHECK_NOTHROW(Character::from_table(1, {1, -1}));
  CHECK_THROWS(Character::from_table(2, {1, -1, -1, -1}));
}
