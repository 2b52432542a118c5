#include "z2n/color_lie.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace z2n {

PerfectnessError::PerfectnessError(const Degree& sector, int rank, int dim)
    : std::runtime_error(
          "perfectness hypothesis fails at even-like sector " + sector.str() +
          ": brackets [g_b, g_c] over odd-like b, c with bc = " + sector.str() +
          " span rank " + std::to_string(rank) + " < dim " + std::to_string(dim) +
          "; every even-like a != 0 needs g_a = sum [g_b, g_c]"),
      sector_(sector) {}

ColorLieAlgebra::ColorLieAlgebra(int rank, std::vector<BasisElement> basis,
                                 const std::vector<StructureConstant>& constants)
    : rank_(rank) {
  Degree::zero(rank);
  const int n = static_cast<int>(basis.size());
  std::set<std::string> labels;
  for (const auto& b : basis) {
    if (b.degree.rank() != rank) throw RankMismatch(b.degree.rank(), rank);
    if (!labels.insert(b.label).second) {
      throw std::invalid_argument("duplicate basis label '" + b.label + "'");
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (basis[x].degree != basis[y].degree) return basis[x].degree < basis[y].degree;
    return basis[x].label < basis[y].label;
  });
  input_to_canonical_.assign(n, 0);
  for (int c = 0; c < n; ++c) {
    input_to_canonical_[order[c]] = c;
    basis_.push_back(basis[order[c]]);
  }
  std::vector<std::map<int, double>> dense(static_cast<std::size_t>(n) * n);
  for (const auto& sc : constants) {
    if (sc.i < 0 || sc.i >= n || sc.j < 0 || sc.j >= n || sc.k < 0 || sc.k >= n) {
      throw std::out_of_range("structure constant index out of range");
    }
    const int i = input_to_canonical_[sc.i], j = input_to_canonical_[sc.j],
              k = input_to_canonical_[sc.k];
    dense[static_cast<std::size_t>(i) * n + j][k] += sc.value;
  }
  table_.resize(dense.size());
  for (std::size_t p = 0; p < dense.size(); ++p) {
    for (const auto& [k, v] : dense[p]) {
      if (v != 0.0) table_[p].emplace_back(k, v);
    }
  }
}

int ColorLieAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i) {
    if (basis_[i].label == label) return i;
  }
  throw std::out_of_range("no basis element labelled '" + label + "'");
}

std::pair<int, int> ColorLieAlgebra::sector_range(const Degree& a) const {
  auto lo = std::lower_bound(basis_.begin(), basis_.end(), a,
                             [](const BasisElement& e, const Degree& d) { return e.degree < d; });
  auto hi = std::upper_bound(basis_.begin(), basis_.end(), a,
                             [](const Degree& d, const BasisElement& e) { return d < e.degree; });
  return {static_cast<int>(lo - basis_.begin()), static_cast<int>(hi - basis_.begin())};
}

int ColorLieAlgebra::sector_dim(const Degree& a) const {
  const auto [lo, hi] = sector_range(a);
  return hi - lo;
}

GradedSpace ColorLieAlgebra::as_graded_space() const {
  std::vector<int> dims(std::size_t{1} << rank_, 0);
  for (const auto& b : basis_) ++dims[b.degree.code()];
  return GradedSpace(rank_, std::move(dims));
}

double ColorLieAlgebra::constant(int i, int j, int k) const {
  for (const auto& [kk, v] : bracket_of_basis(i, j)) {
    if (kk == k) return v;
  }
  return 0.0;
}

std::vector<StructureConstant> ColorLieAlgebra::constants() const {
  std::vector<StructureConstant> out;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      for (const auto& [k, v] : bracket_of_basis(i, j)) out.push_back({i, j, k, v});
    }
  }
  return out;
}

namespace {

template <typename Vec>
Vec bracket_impl(const ColorLieAlgebra& l, const Vec& x, const Vec& y) {
  Vec out = Vec::Zero(l.dim());
  for (int i = 0; i < l.dim(); ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < l.dim(); ++j) {
      if (y(j) == 0.0) continue;
      for (const auto& [k, c] : l.bracket_of_basis(i, j)) out(k) += x(i) * y(j) * c;
    }
  }
  return out;
}

}  // namespace

RVector ColorLieAlgebra::bracket(const RVector& x, const RVector& y) const {
  return bracket_impl(*this, x, y);
}

CVector ColorLieAlgebra::bracket(const CVector& x, const CVector& y) const {
  return bracket_impl(*this, x, y);
}

RMatrix ColorLieAlgebra::ad_matrix(const RVector& x) const {
  RMatrix m = RMatrix::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j) m.col(j) = bracket(x, basis_vector(j));
  return m;
}

RVector ColorLieAlgebra::basis_vector(int i) const {
  RVector e = RVector::Zero(dim());
  e(i) = 1.0;
  return e;
}

// ---------------------------------------------------------------------------
// gl(V)

namespace {

std::string padded(int value, int width) {
  std::string s = std::to_string(value);
  return std::string(std::max(0, width - static_cast<int>(s.size())), '0') + s;
}

}  // namespace

ColorLieAlgebra glV(const GradedSpace& v) {
  const int d = v.total_dim();
  if (d < 1) throw std::invalid_argument("glV needs total dimension >= 1");
  const int width = static_cast<int>(std::to_string(d - 1).size());
  std::vector<BasisElement> basis;
  auto unit = [d](int p, int q) { return p * d + q; };
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      basis.push_back({"E" + padded(p, width) + "_" + padded(q, width),
                       v.degree_of(p) * v.degree_of(q)});
    }
  }
  std::vector<StructureConstant> constants;
  // [E_pq, E_rs] = delta_qr E_ps - beta delta_sp E_rq
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const Degree dpq = v.degree_of(p) * v.degree_of(q);
      for (int r = 0; r < d; ++r) {
        for (int s = 0; s < d; ++s) {
          const Degree drs = v.degree_of(r) * v.degree_of(s);
          if (q == r) constants.push_back({unit(p, q), unit(r, s), unit(p, s), 1.0});
          if (s == p) {
            constants.push_back(
                {unit(p, q), unit(r, s), unit(r, q), -static_cast<double>(beta(dpq, drs).value())});
          }
        }
      }
    }
  }
  return ColorLieAlgebra(v.rank(), std::move(basis), constants);
}

CMatrix glV_matrix(const GradedSpace& v, const CVector& coefficients) {
  const ColorLieAlgebra l = glV(v);
  const int d = v.total_dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (int c = 0; c < l.dim(); ++c) {
    const std::string& lab = l.label(c);
    const auto us = lab.find('_');
    const int p = std::stoi(lab.substr(1, us - 1));
    const int q = std::stoi(lab.substr(us + 1));
    m(p, q) += coefficients(c);
  }
  return m;
}

CMatrix glV_bracket(const CMatrix& s, const Degree& ds, const CMatrix& t, const Degree& dt) {
  return s * t - to_complex(beta(ds, dt)) * t * s;
}

// ---------------------------------------------------------------------------
// Axioms

Report check_axioms(const ColorLieAlgebra& l, double tol) {
  Report rep("check_axioms");
  const int n = l.dim();
  double grading = 0.0, antisym = 0.0, jacobi = 0.0;
  std::string grading_at, antisym_at, jacobi_at;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Degree dij = l.degree(i) * l.degree(j);
      for (const auto& [k, c] : l.bracket_of_basis(i, j)) {
        if (l.degree(k) != dij && std::abs(c) > grading) {
          grading = std::abs(c);
          grading_at = "[" + l.label(i) + "," + l.label(j) + "] -> " + l.label(k);
        }
      }
      // antisymmetry: c_ij^k + beta(a,b) c_ji^k = 0
      const double b = beta(l.degree(i), l.degree(j)).value();
      std::map<int, double> sum;
      for (const auto& [k, c] : l.bracket_of_basis(i, j)) sum[k] += c;
      for (const auto& [k, c] : l.bracket_of_basis(j, i)) sum[k] += b * c;
      for (const auto& [k, v] : sum) {
        if (std::abs(v) > antisym) {
          antisym = std::abs(v);
          antisym_at = "(" + l.label(i) + "," + l.label(j) + ") at " + l.label(k);
        }
      }
    }
  }
  // Jacobi: [x,[y,z]] - [[x,y],z] + beta(a,b) beta(a,c) [y,[z,x]] = 0
  std::vector<double> acc(n, 0.0);
  std::vector<int> touched;
  touched.reserve(64);
  auto accumulate = [&](const SparseVector& inner, auto&& outer, double scale) {
    for (const auto& [m, c] : inner) {
      for (const auto& [k, d] : outer(m)) {
        if (acc[k] == 0.0) touched.push_back(k);
        acc[k] += scale * c * d;
      }
    }
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double bab = beta(l.degree(i), l.degree(j)).value();
      for (int k = 0; k < n; ++k) {
        const double bac = beta(l.degree(i), l.degree(k)).value();
        touched.clear();
        accumulate(l.bracket_of_basis(j, k),
                   [&](int m) -> const SparseVector& { return l.bracket_of_basis(i, m); }, 1.0);
        accumulate(l.bracket_of_basis(i, j),
                   [&](int m) -> const SparseVector& { return l.bracket_of_basis(m, k); }, -1.0);
        accumulate(l.bracket_of_basis(k, i),
                   [&](int m) -> const SparseVector& { return l.bracket_of_basis(j, m); },
                   bab * bac);
        for (int t : touched) {
          if (std::abs(acc[t]) > jacobi) {
            jacobi = std::abs(acc[t]);
            jacobi_at = "(" + l.label(i) + "," + l.label(j) + "," + l.label(k) + ")";
          }
          acc[t] = 0.0;
        }
      }
    }
  }
  rep.add("grading", grading, tol, grading_at);
  rep.add("beta_antisymmetry", antisym, tol, antisym_at);
  rep.add("beta_jacobi", jacobi, tol, jacobi_at);
  return rep;
}

// ---------------------------------------------------------------------------
// Perfectness

namespace {

struct OddPairs {
  std::vector<std::pair<int, int>> pairs;
  RMatrix spans;  // sector-a coordinates of each [x_i, x_j], one column per pair
};

OddPairs odd_bracket_pairs(const ColorLieAlgebra& l, const Degree& a) {
  OddPairs out;
  const auto [lo, hi] = l.sector_range(a);
  for (const auto& b : all_degrees(l.rank())) {
    if (parity(b) != Parity::OddLike) continue;
    const Degree c = a * b;
    if (parity(c) != Parity::OddLike || !(b < c)) continue;
    const auto [blo, bhi] = l.sector_range(b);
    const auto [clo, chi] = l.sector_range(c);
    for (int i = blo; i < bhi; ++i) {
      for (int j = clo; j < chi; ++j) out.pairs.emplace_back(i, j);
    }
  }
  out.spans = RMatrix::Zero(hi - lo, static_cast<int>(out.pairs.size()));
  for (int p = 0; p < static_cast<int>(out.pairs.size()); ++p) {
    for (const auto& [k, c] : l.bracket_of_basis(out.pairs[p].first, out.pairs[p].second)) {
      if (k >= lo && k < hi) out.spans(k - lo, p) += c;
    }
  }
  return out;
}

int numerical_rank(const RMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double thr = 1e-9 * s(0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s(i) > thr ? 1 : 0;
  return r;
}

}  // namespace

bool PerfectnessReport::passed() const {
  return std::all_of(sectors.begin(), sectors.end(),
                     [](const SectorRank& s) { return s.saturated(); });
}

const SectorRank* PerfectnessReport::find(const Degree& a) const {
  for (const auto& s : sectors) {
    if (s.sector == a) return &s;
  }
  return nullptr;
}

Report PerfectnessReport::to_report() const {
  Report rep("check_perfectness");
  for (const auto& s : sectors) {
    rep.add_flag("sector " + s.sector.str() + " saturated", s.saturated(),
                 "rank " + std::to_string(s.rank) + " / dim " + std::to_string(s.dim));
  }
  if (sectors.empty()) rep.note("no even-like nonzero degrees: hypothesis holds vacuously");
  return rep;
}

PerfectnessReport check_perfectness(const ColorLieAlgebra& l) {
  PerfectnessReport rep;
  for (const auto& a : all_degrees(l.rank())) {
    if (a.is_zero() || parity(a) != Parity::EvenLike) continue;
    const OddPairs op = odd_bracket_pairs(l, a);
    rep.sectors.push_back({a, l.sector_dim(a), numerical_rank(op.spans)});
  }
  return rep;
}

BracketDecomposition decompose_odd(const ColorLieAlgebra& l, const Degree& a, const RVector& x,
                                   DecompositionMethod method) {
  if (a.is_zero() || parity(a) != Parity::EvenLike) {
    throw std::invalid_argument("decompose_odd: sector " + a.str() + " is not even-like nonzero");
  }
  if (x.size() != l.dim()) throw std::invalid_argument("decompose_odd: coefficient size mismatch");
  const auto [lo, hi] = l.sector_range(a);
  for (int i = 0; i < l.dim(); ++i) {
    if ((i < lo || i >= hi) && x(i) != 0.0) {
      throw std::invalid_argument("decompose_odd: input has components outside sector " + a.str());
    }
  }
  const OddPairs op = odd_bracket_pairs(l, a);
  const int rank = numerical_rank(op.spans);
  if (rank < hi - lo) throw PerfectnessError(a, rank, hi - lo);

  BracketDecomposition out;
  out.sector = a;
  const RVector target = x.segment(lo, hi - lo);
  if (target.norm() == 0.0) return out;
  RVector coef;
  if (method == DecompositionMethod::MinimumNorm) {
    Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(op.spans);
    cod.setThreshold(1e-9);
    coef = cod.solve(target);
  } else {
    Eigen::ColPivHouseholderQR<RMatrix> qr(op.spans);
    qr.setThreshold(1e-9);
    coef = qr.solve(target);
  }
  for (int p = 0; p < coef.size(); ++p) {
    if (std::abs(coef(p)) > 1e-14) {
      out.terms.push_back({coef(p), op.pairs[p].first, op.pairs[p].second});
    }
  }
  out.residual = (op.spans * coef - target).norm();
  return out;
}

RVector evaluate(const ColorLieAlgebra& l, const BracketDecomposition& d) {
  RVector out = RVector::Zero(l.dim());
  for (const auto& t : d.terms) {
    for (const auto& [k, c] : l.bracket_of_basis(t.left, t.right)) out(k) += t.coefficient * c;
  }
  return out;
}

}  // namespace z2n
