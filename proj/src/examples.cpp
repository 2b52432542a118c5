#include "z2n/examples.hpp"

#include <algorithm>
#include <stdexcept>

namespace z2n {

namespace {

RVector flatten(const CMatrix& m) {
  const Eigen::Index n = m.size();
  RVector out(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out(k) = m.data()[k].real();
    out(n + k) = m.data()[k].imag();
  }
  return out;
}

RMatrix stacked(const std::vector<CMatrix>& basis) {
  if (basis.empty()) return RMatrix(0, 0);
  RMatrix a(2 * basis[0].size(), static_cast<int>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) a.col(static_cast<int>(k)) = flatten(basis[k]);
  return a;
}

}  // namespace

RVector real_coordinates(const std::vector<CMatrix>& basis, const CMatrix& m, double* residual) {
  const RMatrix a = stacked(basis);
  const RVector b = flatten(m);
  const RVector x = a.colPivHouseholderQr().solve(b);
  if (residual) *residual = (a * x - b).norm();
  return x;
}

MatrixAlgebra matrix_real_form(const GradedSpace& v, const std::vector<BasisElement>& basis,
                               const std::vector<CMatrix>& matrices, double tol) {
  if (basis.size() != matrices.size()) {
    throw std::invalid_argument("matrix_real_form: basis and matrices differ in length");
  }
  const int n = static_cast<int>(basis.size());
  const RMatrix a = stacked(matrices);
  Eigen::ColPivHouseholderQR<RMatrix> qr(a);
  if (n > 0 && qr.rank() < n) {
    throw std::invalid_argument("matrix_real_form: matrices are linearly dependent over R");
  }
  std::vector<StructureConstant> constants;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix br =
          glV_bracket(matrices[i], basis[i].degree, matrices[j], basis[j].degree);
      const RVector b = flatten(br);
      if (b.isZero(0.0)) continue;
      const RVector x = qr.solve(b);
      const double res = (a * x - b).norm();
      if (res > tol * std::max(1.0, b.norm())) {
        throw std::invalid_argument("matrix_real_form: bracket [" + basis[i].label + "," +
                                    basis[j].label + "] leaves the span");
      }
      for (int k = 0; k < n; ++k) {
        if (std::abs(x(k)) > 1e-13) constants.push_back({i, j, k, x(k)});
      }
    }
  }
  MatrixAlgebra out{ColorLieAlgebra(v.rank(), basis, constants), v, {}};
  out.matrices.resize(n);
  for (int i = 0; i < n; ++i) out.matrices[out.algebra.canonical_index(i)] = matrices[i];
  return out;
}

MatrixAlgebra unitary_algebra(const GradedSpace& v) {
  const int d = v.total_dim();
  std::vector<BasisElement> basis;
  std::vector<CMatrix> mats;
  const cplx i(0.0, 1.0);
  for (int p = 0; p < d; ++p) {
    CMatrix m = CMatrix::Zero(d, d);
    m(p, p) = i;
    basis.push_back({"D" + std::to_string(p), Degree::zero(v.rank())});
    mats.push_back(m);
    for (int q = p + 1; q < d; ++q) {
      const Degree a = v.degree_of(p) * v.degree_of(q);
      const cplx al = to_complex(alpha(a));
      for (const cplx z : {cplx(1.0), i}) {
        // z E_pq - alpha(a) conj(z) E_qp is skew for the dagger
        CMatrix x = CMatrix::Zero(d, d);
        x(p, q) = z;
        x(q, p) = -al * std::conj(z);
        basis.push_back({std::string(z == cplx(1.0) ? "R" : "I") + std::to_string(p) + "_" +
                             std::to_string(q),
                         a});
        mats.push_back(x);
      }
    }
  }
  return matrix_real_form(v, basis, mats);
}

RMatrix conjugation_ad(const MatrixAlgebra& m, const CMatrix& u) {
  const int n = m.algebra.dim();
  const RMatrix a = stacked(m.matrices);
  Eigen::ColPivHouseholderQR<RMatrix> qr(a);
  const CMatrix u_inv = u.inverse();
  RMatrix ad(n, n);
  for (int i = 0; i < n; ++i) ad.col(i) = qr.solve(flatten(u * m.matrices[i] * u_inv));
  for (Eigen::Index k = 0; k < ad.size(); ++k) {
    if (std::abs(ad.data()[k]) < 1e-14) ad.data()[k] = 0.0;
  }
  return ad;
}

HCPair matrix_pair(const MatrixAlgebra& m, const std::vector<CMatrix>& extra_unitaries) {
  std::vector<ExtraGenerator> extras;
  for (std::size_t g = 0; g < extra_unitaries.size(); ++g) {
    extras.push_back({"u" + std::to_string(g), conjugation_ad(m, extra_unitaries[g])});
  }
  return HCPair(m.algebra, std::move(extras));
}

UnitaryRep defining_rep(const HCPair& pair, const MatrixAlgebra& m,
                        const std::vector<CMatrix>& extra_unitaries) {
  return UnitaryRep{pair, GammaInnerSpace::standard(m.space), m.matrices, extra_unitaries};
}

Representation glV_defining(const GradedSpace& v) {
  ColorLieAlgebra l = glV(v);
  const int d = v.total_dim();
  Representation r{HCPair(l, {}), GammaInnerSpace::standard(v), {}, {}};
  for (int c = 0; c < r.pair.algebra().dim(); ++c) {
    CVector e = CVector::Zero(r.pair.algebra().dim());
    e(c) = 1.0;
    r.rho.push_back(glV_matrix(v, e));
  }
  (void)d;
  return r;
}

MatrixAlgebra clifford_algebra() {
  const GradedSpace v(1, {1, 1});
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = z(1, 1) = cplx(0.0, -1.0);
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = cplx(0.0, -1.0);
  x(1, 0) = 1.0;
  return matrix_real_form(v, {{"z", Degree(1, 0)}, {"x", Degree(1, 1)}}, {z, x});
}

UnitaryRep clifford_rep() {
  const MatrixAlgebra m = clifford_algebra();
  return defining_rep(HCPair(m.algebra, {}), m, {});
}

CVector clifford_cyclic_vector() {
  CVector v = CVector::Zero(2);
  v(0) = 1.0;
  return v;
}

ColorLieAlgebra counterexample_algebra() {
  return ColorLieAlgebra(2, {{"y", Degree(2, 0b11)}}, {});
}

HCPair counterexample_pair() { return HCPair(counterexample_algebra(), {}); }

PartialRep counterexample_prerep() {
  const HCPair pair = counterexample_pair();
  return PartialRep{pair, GammaInnerSpace::standard(GradedSpace::trivial(2)), {CMatrix()}, {}};
}

// ---------------------------------------------------------------------------

CMatrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

CMatrix random_graded_unitary(std::mt19937_64& rng, const GradedSpace& v) {
  const int d = v.total_dim();
  CMatrix u = CMatrix::Zero(d, d);
  for (const Degree& a : v.support()) {
    const int k = v.dim(a);
    Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, k, k));
    u.block(v.offset(a), v.offset(a), k, k) = qr.householderQ() * CMatrix::Identity(k, k);
  }
  return u;
}

namespace {

GradedSpace random_space(std::mt19937_64& rng, const RandomRepOptions& opt) {
  const std::size_t ncodes = std::size_t{1} << opt.rank;
  if (!opt.dims.empty()) return GradedSpace(opt.rank, opt.dims);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(ncodes) - 1);
  std::vector<int> dims(ncodes, 0);
  dims[0] = 1;
  int total = 1;
  if (opt.require_perfect && opt.rank >= 2) {
    // every degree occupied keeps the odd-like brackets surjective
    for (std::size_t c = 1; c < ncodes && total < opt.max_total_dim; ++c) {
      ++dims[c];
      ++total;
    }
  }
  std::uniform_int_distribution<int> target(total, std::max(total, opt.max_total_dim));
  const int want = target(rng);
  while (total < want) {
    ++dims[pick(rng)];
    ++total;
  }
  return GradedSpace(opt.rank, dims);
}

}  // namespace

RandomRep random_rep(std::uint64_t seed, const RandomRepOptions& opt) {
  std::mt19937_64 rng(seed);
  GradedSpace v = random_space(rng, opt);
  MatrixAlgebra m = unitary_algebra(v);
  for (int attempt = 0; opt.require_perfect && !check_perfectness(m.algebra).passed(); ++attempt) {
    if (attempt > 50) throw std::runtime_error("random_rep: no perfect algebra found");
    v = random_space(rng, opt);
    m = unitary_algebra(v);
  }
  std::vector<CMatrix> extras;
  for (int g = 0; g < opt.extra_generators; ++g) extras.push_back(random_graded_unitary(rng, v));
  const HCPair pair = matrix_pair(m, extras);
  const UnitaryRep base = defining_rep(pair, m, extras);

  const int d = v.total_dim();
  CMatrix s = CMatrix::Zero(d, d);
  std::vector<CMatrix> grams(std::size_t{1} << v.rank());
  for (const Degree& a : all_degrees(v.rank())) {
    const int k = v.dim(a);
    if (k == 0) {
      grams[a.code()] = CMatrix(0, 0);
      continue;
    }
    const CMatrix block = CMatrix::Identity(k, k) + 0.4 * random_complex(rng, k, k);
    s.block(v.offset(a), v.offset(a), k, k) = block;
    const CMatrix inv = block.inverse();
    grams[a.code()] = inv.adjoint() * inv;
  }
  const GammaInnerSpace target(v, grams);
  RandomRep out{conjugate_rep(base, s, target), CVector(), v};
  CVector e = CVector::Zero(d);
  const int k0 = v.dim(Degree::zero(v.rank()));
  e.segment(v.offset(Degree::zero(v.rank())), k0) = random_complex(rng, k0, 1);
  e /= e.norm();
  out.cyclic = s * e;
  if (opt.plus_trivial) {
    const UnitaryRep triv = trivial_rep(pair);
    const std::vector<int> order = direct_sum_order(v, triv.space.space());
    CVector concat(d + 1);
    concat.head(d) = out.cyclic;
    concat(d) = 1.0;
    CVector cyc(d + 1);
    for (int k = 0; k <= d; ++k) cyc(k) = concat(order[k]);
    out.rep = direct_sum(out.rep, triv);
    out.cyclic = cyc;
  }
  return out;
}

// ---------------------------------------------------------------------------

ColorLieAlgebra change_basis(const ColorLieAlgebra& l, const RMatrix& a) {
  const int n = l.dim();
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("change_basis: shape mismatch");
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (l.degree(j) != l.degree(k) && a(k, j) != 0.0) {
        throw std::invalid_argument("change_basis: matrix mixes degrees");
      }
    }
  }
  Eigen::FullPivLU<RMatrix> lu(a);
  if (!lu.isInvertible()) throw std::invalid_argument("change_basis: matrix is singular");
  std::vector<StructureConstant> constants;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const RVector w = lu.solve(l.bracket(RVector(a.col(i)), RVector(a.col(j))));
      for (int k = 0; k < n; ++k) {
        if (std::abs(w(k)) > 1e-13) constants.push_back({i, j, k, w(k)});
      }
    }
  }
  return ColorLieAlgebra(l.rank(), l.basis(), constants);
}

ColorLieAlgebra direct_sum_algebras(const ColorLieAlgebra& a, const ColorLieAlgebra& b) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
  std::vector<BasisElement> basis;
  for (const auto& e : a.basis()) basis.push_back({"1:" + e.label, e.degree});
  for (const auto& e : b.basis()) basis.push_back({"2:" + e.label, e.degree});
  std::vector<StructureConstant> constants = a.constants();
  for (auto c : b.constants()) {
    c.i += a.dim();
    c.j += a.dim();
    c.k += a.dim();
    constants.push_back(c);
  }
  return ColorLieAlgebra(a.rank(), basis, constants);
}

namespace {

ColorLieAlgebra heisenberg(const Degree& a, const Degree& b) {
  const int rank = a.rank();
  if (a == b) {
    // requires a odd-like: [p, p] = z
    return ColorLieAlgebra(rank, {{"p", a}, {"z", Degree::zero(rank)}}, {{0, 0, 1, 1.0}});
  }
  return ColorLieAlgebra(rank, {{"p", a}, {"q", b}, {"z", a * b}},
                         {{0, 1, 2, 1.0}, {1, 0, 2, -static_cast<double>(beta(b, a).value())}});
}

}  // namespace

ColorLieAlgebra random_color_algebra(std::mt19937_64& rng, int rank, int max_dim) {
  const int ncodes = 1 << rank;
  std::uniform_int_distribution<int> pick_code(0, ncodes - 1);
  std::uniform_int_distribution<int> pick_kind(0, 2);
  auto deg = [&] { return Degree(rank, static_cast<std::uint32_t>(pick_code(rng))); };
  ColorLieAlgebra l;
  bool have = false;
  for (int tries = 0; tries < 20 && !have; ++tries) {
    const int kind = pick_kind(rng);
    if (kind == 0 && max_dim >= 4) {
      std::vector<int> dims(ncodes, 0);
      ++dims[pick_code(rng)];
      ++dims[pick_code(rng)];
      l = glV(GradedSpace(rank, dims));
      have = true;
    } else if (kind == 1 && max_dim >= 3) {
      Degree a = deg(), b = deg();
      if (a == b) continue;
      l = heisenberg(a, b);
      have = true;
    } else if (kind == 2 && max_dim >= 2) {
      Degree a = deg();
      if (parity(a) != Parity::OddLike) continue;
      l = heisenberg(a, a);
      have = true;
    }
  }
  if (!have) l = ColorLieAlgebra(rank, {{"a", deg()}}, {});
  std::uniform_int_distribution<int> extra(0, std::max(0, max_dim - l.dim()));
  const int add = extra(rng);
  for (int k = 0; k < add; ++k) {
    l = direct_sum_algebras(l, ColorLieAlgebra(rank, {{"c" + std::to_string(k), deg()}}, {}));
  }
  std::normal_distribution<double> n01(0.0, 1.0);
  const int n = l.dim();
  RMatrix a = RMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (l.degree(j) == l.degree(k)) a(k, j) = (j == k ? 1.0 : 0.0) + 0.5 * n01(rng);
    }
  }
  return change_basis(l, a);
}

}  // namespace z2n
