#include "doctest.h"
#include "test_util.hpp"
#include "z2n/color_lie.hpp"
#include "z2n/examples.hpp"

using namespace z2n;
using namespace z2n::testing;

namespace {

RVector coords(const ColorLieAlgebra& l, std::initializer_list<std::pair<const char*, double>> xs) {
  RVector v = RVector::Zero(l.dim());
  for (const auto& [label, c] : xs) v(l.index_of(label)) += c;
  return v;
}

// Brute-force rank of the odd-like bracket span in sector a.
int oracle_rank(const ColorLieAlgebra& l, const Degree& a) {
  std::vector<RVector> cols;
  for (int i = 0; i < l.dim(); ++i) {
    for (int j = 0; j < l.dim(); ++j) {
      if (parity(l.degree(i)) != Parity::OddLike || parity(l.degree(j)) != Parity::OddLike) continue;
      if (l.degree(i) * l.degree(j) != a) continue;
      cols.push_back(l.bracket(l.basis_vector(i), l.basis_vector(j)));
    }
  }
  if (cols.empty()) return 0;
  RMatrix m(l.dim(), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(static_cast<int>(c)) = cols[c];
  Eigen::FullPivLU<RMatrix> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

}  // namespace

TEST_CASE("gl(1|1) by hand") {
  const ColorLieAlgebra l = glV(GradedSpace(1, {1, 1}));
  REQUIRE(l.dim() == 4);
  CHECK(l.label(0) == "E0_0");
  CHECK(l.label(1) == "E1_1");
  CHECK(l.degree(2) == Degree::unit(1, 1));
  const RVector e00 = coords(l, {{"E0_0", 1}}), e11 = coords(l, {{"E1_1", 1}});
  const RVector e01 = coords(l, {{"E0_1", 1}}), e10 = coords(l, {{"E1_0", 1}});
  CHECK(l.bracket(e01, e10) == coords(l, {{"E0_0", 1}, {"E1_1", 1}}));
  CHECK(l.bracket(e10, e01) == coords(l, {{"E0_0", 1}, {"E1_1", 1}}));
  CHECK(l.bracket(e01, e01).isZero());
  CHECK(l.bracket(e00, e01) == e01);
  CHECK(l.bracket(e11, e01) == -e01);
  CHECK(l.bracket(e00, e10) == -e10);
  CHECK(l.bracket(e00, e11).isZero());
  CHECK(check_axioms(l).passed());
}

TEST_CASE("ordinary gl(d) for a purely degree-0 space") {
  const ColorLieAlgebra l = glV(GradedSpace(2, {3, 0, 0, 0}));
  const RVector x = coords(l, {{"E0_1", 1}}), y = coords(l, {{"E1_0", 1}});
  CHECK(l.bracket(x, y) == coords(l, {{"E0_0", 1}, {"E1_1", -1}}));
  CHECK(l.bracket(x, y) == -l.bracket(y, x));
}

TEST_CASE("structure constants agree with the matrix superbracket") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 3;
    const GradedSpace v = rand_space(rng, n, 2);
    const ColorLieAlgebra l = glV(v);
    for (int i = 0; i < l.dim(); ++i) {
      for (int j = 0; j < l.dim(); ++j) {
        const CMatrix s = glV_matrix(v, l.basis_vector(i).cast<cplx>());
        const CMatrix t = glV_matrix(v, l.basis_vector(j).cast<cplx>());
        const CMatrix want = s * t - double(beta(l.degree(i), l.degree(j)).value()) * t * s;
        CHECK(rel_diff(glV_matrix(v, l.bracket(l.basis_vector(i), l.basis_vector(j)).cast<cplx>()),
                       want) < 1e-12);
        CHECK(rel_diff(glV_bracket(s, l.degree(i), t, l.degree(j)), want) < 1e-12);
      }
    }
  }
}

TEST_CASE("n=2 gl(V) with one dimension per degree") {
  const GradedSpace v(2, {1, 1, 1, 1});
  const ColorLieAlgebra l = glV(v);
  CHECK(l.dim() == 16);
  const Degree e1 = Degree::unit(2, 1);
  // rows/cols 0..3 have degrees 00, 01, 10, 11
  CMatrix s = CMatrix::Zero(4, 4), t = CMatrix::Zero(4, 4);
  s(2, 0) = 1.0;
  t(0, 2) = 1.0;
  CHECK(rel_diff(glV_bracket(s, e1, t, e1), s * t + t * s) == 0.0);
  CHECK(check_axioms(l).passed());
  const PerfectnessReport pr = check_perfectness(l);
  for (const SectorRank& sr : pr.sectors) CHECK(sr.rank == oracle_rank(l, sr.sector));
}

TEST_CASE("axioms hold for gl(V) on random spaces") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const Report r = check_axioms(glV(rand_space(rng, n, 2)));
    CHECK(r.passed());
    CHECK(r.max_residual("") < 1e-12);
  }
  CHECK(check_axioms(ColorLieAlgebra(2, {}, {})).passed());
}

TEST_CASE("a flipped structure constant is detected") {
  const ColorLieAlgebra l = glV(GradedSpace(1, {1, 1}));
  std::vector<StructureConstant> cs = l.constants();
  bool flipped = false;
  for (auto& c : cs) {
    if (l.label(c.i) == "E0_1" && l.label(c.j) == "E1_0" && l.label(c.k) == "E0_0") {
      c.value = -c.value;
      flipped = true;
    }
  }
  REQUIRE(flipped);
  const ColorLieAlgebra bad(1, l.basis(), cs);
  const Report r = check_axioms(bad);
  CHECK_FALSE(r.passed());
  const Check* anti = r.find("beta_antisymmetry");
  REQUIRE(anti != nullptr);
  CHECK_FALSE(anti->passed);
  CHECK(anti->detail.find("E0_1") != std::string::npos);
}

TEST_CASE("grading violations are detected") {
  const ColorLieAlgebra bad(1, {{"z", Degree::zero(1)}, {"x", Degree::unit(1, 1)}},
                            {{0, 0, 1, 1.0}});
  const Report r = check_axioms(bad);
  CHECK_FALSE(r.find("grading")->passed);
}

TEST_CASE("canonical basis order") {
  const ColorLieAlgebra l(1, {{"x", Degree::unit(1, 1)}, {"b", Degree::zero(1)}, {"a", Degree::zero(1)}},
                          {{0, 0, 2, 2.0}});
  CHECK(l.label(0) == "a");
  CHECK(l.label(1) == "b");
  CHECK(l.label(2) == "x");
  CHECK(l.canonical_index(0) == 2);
  CHECK(l.constant(2, 2, 0) == 2.0);
  CHECK(check_axioms(l).passed());
}

TEST_CASE("bracket is bilinear and vanishes on abelian algebras") {
  const ColorLieAlgebra ab(1, {{"a", Degree::zero(1)}, {"b", Degree::unit(1, 1)}}, {});
  CHECK(ab.bracket(RVector(RVector::Ones(2)), RVector(RVector::Ones(2))).isZero());
  std::mt19937_64 rng(47);
  const ColorLieAlgebra l = glV(GradedSpace(2, {1, 1, 0, 1}));
  std::normal_distribution<double> n01;
  RVector x(l.dim()), y(l.dim()), z(l.dim());
  for (int i = 0; i < l.dim(); ++i) x(i) = n01(rng), y(i) = n01(rng), z(i) = n01(rng);
  CHECK((l.bracket(RVector(2 * x + y), z) - 2 * l.bracket(x, z) - l.bracket(y, z)).norm() < 1e-12);
}

TEST_CASE("counterexample fails perfectness") {
  const ColorLieAlgebra l = counterexample_algebra();
  CHECK(check_axioms(l).passed());
  const PerfectnessReport pr = check_perfectness(l);
  CHECK_FALSE(pr.passed());
  const SectorRank* s = pr.find(Degree::from_bits({1, 1}));
  REQUIRE(s != nullptr);
  CHECK(s->rank == 0);
  CHECK(s->dim == 1);
  CHECK_THROWS_AS(decompose_odd(l, Degree::from_bits({1, 1}), RVector::Ones(1)), PerfectnessError);
}

TEST_CASE("vacuous perfectness") {
  const ColorLieAlgebra l = glV(GradedSpace(2, {1, 1, 0, 0}));
  // 00 and 01 only; the even-like nonzero sector 11 is empty
  CHECK(check_perfectness(l).passed());
}

TEST_CASE("decompose_odd") {
  const ColorLieAlgebra l = glV(GradedSpace(1, {2, 1}));
  const PerfectnessReport pr = check_perfectness(l);
  CHECK(pr.passed());  // no even-like nonzero sector for n=1

  const GradedSpace v(2, {1, 1, 1, 1});
  const ColorLieAlgebra g = glV(v);
  const Degree a = Degree::from_bits({1, 1});
  REQUIRE(check_perfectness(g).find(a)->saturated());
  const auto [lo, hi] = g.sector_range(a);

  const BracketDecomposition zero = decompose_odd(g, a, RVector::Zero(g.dim()));
  CHECK(zero.terms.empty());

  int yi = -1, zi = -1;
  for (int i = 0; i < g.dim() && yi < 0; ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      if (parity(g.degree(i)) == Parity::OddLike && parity(g.degree(j)) == Parity::OddLike &&
          g.degree(i) * g.degree(j) == a && !g.bracket(g.basis_vector(i), g.basis_vector(j)).isZero()) {
        yi = i;
        zi = j;
        break;
      }
    }
  }
  REQUIRE(yi >= 0);
  const RVector x = g.bracket(g.basis_vector(yi), g.basis_vector(zi));
  for (auto method : {DecompositionMethod::MinimumNorm, DecompositionMethod::PivotedQR}) {
    const BracketDecomposition d = decompose_odd(g, a, x, method);
    CHECK(d.residual < 1e-12);
    CHECK((evaluate(g, d) - x).norm() < 1e-12);
  }

  std::mt19937_64 rng(53);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    RVector r = RVector::Zero(g.dim());
    for (int i = lo; i < hi; ++i) r(i) = n01(rng);
    for (auto method : {DecompositionMethod::MinimumNorm, DecompositionMethod::PivotedQR}) {
      const BracketDecomposition d = decompose_odd(g, a, r, method);
      CHECK(d.residual < 1e-9);
      CHECK((evaluate(g, d) - r).norm() < 1e-9);
      for (const BracketTerm& t : d.terms) {
        CHECK(parity(g.degree(t.left)) == Parity::OddLike);
        CHECK(parity(g.degree(t.right)) == Parity::OddLike);
      }
    }
  }
}

TEST_CASE("perfectness is monotone under adding odd-like generators") {
  std::mt19937_64 rng(59);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 2;
    const ColorLieAlgebra l = random_color_algebra(rng, n, 8);
    REQUIRE(check_axioms(l).passed());
    const bool before = check_perfectness(l).passed();
    for (const Degree& b : all_degrees(n)) {
      if (parity(b) != Parity::OddLike) continue;
      const ColorLieAlgebra extra(n, {{"w", b}}, {});
      const ColorLieAlgebra bigger = direct_sum_algebras(l, extra);
      CHECK(check_axioms(bigger).passed());
      if (before) {
        CHECK(check_perfectness(bigger).passed());
        ++checked;
      }
    }
    // rank oracle on the random algebra
    for (const SectorRank& s : check_perfectness(l).sectors) CHECK(s.rank == oracle_rank(l, s.sector));
  }
  CHECK(checked > 0);
}

TEST_CASE("basis change preserves the axioms") {
  std::mt19937_64 rng(61);
  const ColorLieAlgebra l = glV(GradedSpace(1, {1, 2}));
  RMatrix a = RMatrix::Identity(l.dim(), l.dim());
  std::normal_distribution<double> n01;
  for (int i = 0; i < l.dim(); ++i) {
    for (int j = 0; j < l.dim(); ++j) {
      if (l.degree(i) == l.degree(j)) a(i, j) += 0.3 * n01(rng);
    }
  }
  const ColorLieAlgebra m = change_basis(l, a);
  CHECK(check_axioms(m).passed());
  for (int i = 0; i < l.dim(); ++i) {
    for (int j = 0; j < l.dim(); ++j) {
      const RVector lhs = a * m.bracket(m.basis_vector(i), m.basis_vector(j));
      const RVector rhs = l.bracket(RVector(a * l.basis_vector(i)), RVector(a * l.basis_vector(j)));
      CHECK((lhs - rhs).norm() < 1e-10);
    }
  }
}
