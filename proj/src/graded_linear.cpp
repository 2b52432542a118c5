#include "z2n/graded_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace z2n {

cplx to_complex(Phase p) { return cplx(p.re(), p.im()); }

// ---------------------------------------------------------------------------
// GradedSpace

GradedSpace::GradedSpace(int rank, std::vector<int> dims) : rank_(rank), dims_(std::move(dims)) {
  Degree::zero(rank);
  if (dims_.size() != (std::size_t{1} << rank)) {
    throw std::invalid_argument("graded space needs 2^n component dimensions, got " +
                                std::to_string(dims_.size()));
  }
  offsets_.resize(dims_.size());
  for (std::size_t c = 0; c < dims_.size(); ++c) {
    if (dims_[c] < 0) throw std::invalid_argument("negative component dimension");
    offsets_[c] = total_;
    total_ += dims_[c];
  }
}

GradedSpace GradedSpace::concentrated(const Degree& a, int dim) {
  std::vector<int> dims(std::size_t{1} << a.rank(), 0);
  dims[a.code()] = dim;
  return GradedSpace(a.rank(), std::move(dims));
}

int GradedSpace::dim(const Degree& a) const {
  if (a.rank() != rank_) throw RankMismatch(a.rank(), rank_);
  return dims_[a.code()];
}

int GradedSpace::offset(const Degree& a) const {
  if (a.rank() != rank_) throw RankMismatch(a.rank(), rank_);
  return offsets_[a.code()];
}

Degree GradedSpace::degree_of(int index) const {
  if (index < 0 || index >= total_) throw std::out_of_range("basis index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  std::uint32_t code = static_cast<std::uint32_t>(it - offsets_.begin()) - 1;
  while (dims_[code] == 0) --code;  // skip empty components sharing the offset
  return Degree(rank_, code);
}

std::vector<Degree> GradedSpace::support() const {
  std::vector<Degree> out;
  for (const auto& a : all_degrees(rank_)) {
    if (dims_[a.code()] > 0) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// HomogeneousMap

double off_pattern_norm(const GradedSpace& src, const GradedSpace& dst, const Degree& a,
                        const CMatrix& m) {
  double worst = 0.0;
  for (int j = 0; j < src.total_dim(); ++j) {
    const Degree target_deg = a * src.degree_of(j);
    for (int i = 0; i < dst.total_dim(); ++i) {
      if (dst.degree_of(i) != target_deg) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

HomogeneousMap::HomogeneousMap(GradedSpace source, GradedSpace target, Degree degree,
                               CMatrix matrix, double tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      degree_(degree),
      matrix_(std::move(matrix)) {
  if (source_.rank() != target_.rank()) throw RankMismatch(source_.rank(), target_.rank());
  if (degree_.rank() != source_.rank()) throw RankMismatch(degree_.rank(), source_.rank());
  if (matrix_.rows() != target_.total_dim() || matrix_.cols() != source_.total_dim()) {
    throw std::invalid_argument("homogeneous map: matrix shape does not match spaces");
  }
  const double scale = std::max(1.0, matrix_.norm());
  for (int j = 0; j < source_.total_dim(); ++j) {
    const Degree target_deg = degree_ * source_.degree_of(j);
    for (int i = 0; i < target_.total_dim(); ++i) {
      if (target_.degree_of(i) == target_deg) continue;
      if (std::abs(matrix_(i, j)) > tol * scale) {
        throw std::invalid_argument("map is not homogeneous of degree " + degree_.str() +
                                    ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") lies outside the allowed blocks");
      }
      matrix_(i, j) = 0.0;
    }
  }
}

HomogeneousMap HomogeneousMap::zero(const GradedSpace& src, const GradedSpace& dst,
                                    const Degree& a) {
  return HomogeneousMap(src, dst, a, CMatrix::Zero(dst.total_dim(), src.total_dim()));
}

HomogeneousMap HomogeneousMap::identity(const GradedSpace& space) {
  const int d = space.total_dim();
  return HomogeneousMap(space, space, Degree::zero(space.rank()), CMatrix::Identity(d, d));
}

CMatrix HomogeneousMap::block(const Degree& b) const {
  const Degree ab = degree_ * b;
  return matrix_.block(target_.offset(ab), source_.offset(b), target_.dim(ab), source_.dim(b));
}

HomogeneousMap HomogeneousMap::operator*(const HomogeneousMap& rhs) const {
  if (!(rhs.target_ == source_)) throw std::invalid_argument("composition: space mismatch");
  return HomogeneousMap(rhs.source_, target_, degree_ * rhs.degree_, matrix_ * rhs.matrix_);
}

HomogeneousMap HomogeneousMap::operator*(cplx s) const {
  HomogeneousMap out = *this;
  out.matrix_ *= s;
  return out;
}

HomogeneousMap HomogeneousMap::operator+(const HomogeneousMap& rhs) const {
  if (!(rhs.source_ == source_ && rhs.target_ == target_ && rhs.degree_ == degree_)) {
    throw std::invalid_argument("sum of homogeneous maps needs equal spaces and degree");
  }
  HomogeneousMap out = *this;
  out.matrix_ += rhs.matrix_;
  return out;
}

HomogeneousMap HomogeneousMap::operator-(const HomogeneousMap& rhs) const {
  return *this + rhs * cplx(-1.0);
}

// ---------------------------------------------------------------------------
// GammaInnerSpace

GammaInnerSpace::GammaInnerSpace(GradedSpace space, std::vector<CMatrix> grams,
                                 std::optional<Character> twist)
    : space_(std::move(space)), grams_(std::move(grams)), twist_(twist) {
  if (twist_ && twist_->rank() != space_.rank()) throw RankMismatch(twist_->rank(), space_.rank());
  if (grams_.size() != space_.dims().size()) {
    throw std::invalid_argument("need one gram matrix per degree");
  }
  const int d = space_.total_dim();
  full_gram_ = CMatrix::Zero(d, d);
  full_gram_inv_ = CMatrix::Zero(d, d);
  for (const auto& a : all_degrees(space_.rank())) {
    auto& g = grams_[a.code()];
    const int m = space_.dim(a);
    if (g.rows() != m || g.cols() != m) {
      throw std::invalid_argument("gram for degree " + a.str() + " has wrong shape");
    }
    if (m == 0) continue;
    const double scale = std::max(1.0, g.norm());
    if ((g - g.adjoint()).norm() > 1e-12 * scale) {
      throw std::invalid_argument("gram for degree " + a.str() + " is not Hermitian");
    }
    g = (0.5 * (g + g.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
      throw std::invalid_argument("gram for degree " + a.str() +
                                  " is not positive definite (min eigenvalue " +
                                  std::to_string(es.eigenvalues().minCoeff()) + ")");
    }
    const int off = space_.offset(a);
    full_gram_.block(off, off, m, m) = g;
    full_gram_inv_.block(off, off, m, m) = g.llt().solve(CMatrix::Identity(m, m));
  }
}

GammaInnerSpace GammaInnerSpace::standard(const GradedSpace& space,
                                          std::optional<Character> twist) {
  std::vector<CMatrix> grams;
  for (int m : space.dims()) grams.push_back(CMatrix::Identity(m, m));
  return GammaInnerSpace(space, std::move(grams), twist);
}

CMatrix GammaInnerSpace::gamma_gram() const {
  CMatrix b = full_gram_;
  for (const auto& a : space_.support()) {
    const int off = space_.offset(a), m = space_.dim(a);
    b.block(off, off, m, m) *= std::conj(to_complex(alpha_of(a)));
  }
  return b;
}

cplx GammaInnerSpace::ordinary_inner(const CVector& v, const CVector& w) const {
  return w.dot(full_gram_ * v);  // Eigen's dot conjugates the left factor
}

cplx GammaInnerSpace::gamma_inner(const CVector& v, const CVector& w) const {
  cplx sum = 0.0;
  for (const auto& a : space_.support()) {
    const int off = space_.offset(a), m = space_.dim(a);
    const cplx part = w.segment(off, m).dot(gram(a) * v.segment(off, m));
    sum += std::conj(to_complex(alpha_of(a))) * part;
  }
  return sum;
}

GammaInnerSpace GammaInnerSpace::with_twist(std::optional<Character> twist) const {
  GammaInnerSpace out = *this;
  if (twist && twist->rank() != space_.rank()) throw RankMismatch(twist->rank(), space_.rank());
  out.twist_ = twist;
  return out;
}

Report validate_gamma_inner(const GammaInnerSpace& h, double tol) {
  Report rep("validate_gamma_inner");
  const CMatrix b = h.gamma_gram();
  const auto& space = h.space();
  // (i): distinct degrees orthogonal
  double cross = 0.0;
  for (int i = 0; i < space.total_dim(); ++i) {
    for (int j = 0; j < space.total_dim(); ++j) {
      if (space.degree_of(i) != space.degree_of(j)) cross = std::max(cross, std::abs(b(i, j)));
    }
  }
  rep.add("condition (i) orthogonality of distinct degrees", cross, tol);
  double sym = 0.0, imag = 0.0, min_eig = INFINITY, scale = 1.0;
  for (const auto& a : space.support()) {
    const int off = space.offset(a), m = space.dim(a);
    const CMatrix ba = b.block(off, off, m, m);
    scale = std::max(scale, ba.norm());
    // (ii): <w,v> = beta(a,a) conj(<v,w>), i.e. B^T = beta conj(B)
    const double s = beta(a, a).value();
    sym = std::max(sym, (ba.transpose() - s * ba.conjugate()).cwiseAbs().maxCoeff());
    // (iii): alpha(a) B is Hermitian positive
    const CMatrix pa = to_complex(h.alpha_of(a)) * ba;
    imag = std::max(imag, (pa - pa.adjoint()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (pa + pa.adjoint()), Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  rep.add("condition (ii) beta(a,a)-Hermitian symmetry", sym, tol * scale);
  rep.add("condition (iii) alpha(a)<v,v> real", imag, tol * scale);
  if (space.total_dim() > 0) {
    rep.add("condition (iii) alpha(a)<v,v> >= 0", std::max(0.0, -min_eig), tol * scale);
    rep.add_flag("non-degenerate", min_eig > 0.0,
                 "min eigenvalue " + std::to_string(min_eig));
  }
  return rep;
}

CVector component(const GradedSpace& space, const CVector& v, const Degree& a) {
  CVector out = CVector::Zero(v.size());
  const int off = space.offset(a), m = space.dim(a);
  out.segment(off, m) = v.segment(off, m);
  return out;
}

std::optional<Degree> homogeneous_degree(const GradedSpace& space, const CVector& v,
                                         double tol) {
  std::optional<Degree> found;
  for (const auto& a : space.support()) {
    const double nrm = v.segment(space.offset(a), space.dim(a)).norm();
    if (nrm > tol) {
      if (found) return std::nullopt;
      found = a;
    }
  }
  return found ? found : std::optional<Degree>(Degree::zero(space.rank()));
}

// ---------------------------------------------------------------------------
// Adjoints

HomogeneousMap star_adjoint(const GammaInnerSpace& h, const HomogeneousMap& t) {
  if (!(t.source() == h.space() && t.target() == h.space())) {
    throw std::invalid_argument("adjoint: map does not act on this space");
  }
  // (Tv, w) = (v, T* w)  <=>  T* = G^{-1} T^H G
  CMatrix m = h.full_gram_inverse() * t.matrix().adjoint() * h.full_gram();
  return HomogeneousMap(h.space(), h.space(), t.degree(), std::move(m), 1e-9);
}

HomogeneousMap dagger_adjoint(const GammaInnerSpace& h, const HomogeneousMap& t) {
  return star_adjoint(h, t) * to_complex(h.alpha_of(t.degree()));
}

GradedMap GradedMap::decompose(const GradedSpace& space, const CMatrix& m) {
  GradedMap out;
  out.space_ = space;
  for (const auto& a : all_degrees(space.rank())) {
    CMatrix part = CMatrix::Zero(m.rows(), m.cols());
    bool any = false;
    for (int j = 0; j < space.total_dim(); ++j) {
      const Degree tgt = a * space.degree_of(j);
      const int off = space.offset(tgt), d = space.dim(tgt);
      if (d == 0) continue;
      part.block(off, j, d, 1) = m.block(off, j, d, 1);
      any = any || part.block(off, j, d, 1).norm() > 0.0;
    }
    if (any) out.parts_.emplace(a.code(), HomogeneousMap(space, space, a, std::move(part)));
  }
  return out;
}

void GradedMap::add(const HomogeneousMap& t) {
  if (!(t.source() == t.target())) throw std::invalid_argument("graded map must be an endomorphism");
  if (space_ && !(*space_ == t.source())) throw std::invalid_argument("graded map: space mismatch");
  space_ = t.source();
  auto it = parts_.find(t.degree().code());
  if (it == parts_.end()) parts_.emplace(t.degree().code(), t);
  else it->second = it->second + t;
}

CMatrix GradedMap::matrix() const {
  if (!space_) return CMatrix();
  CMatrix m = CMatrix::Zero(space_->total_dim(), space_->total_dim());
  for (const auto& [code, part] : parts_) m += part.matrix();
  return m;
}

GradedMap GradedMap::dagger(const GammaInnerSpace& h) const {
  GradedMap out;
  for (const auto& [code, part] : parts_) out.add(dagger_adjoint(h, part));
  if (parts_.empty()) out.space_ = space_;
  return out;
}

// ---------------------------------------------------------------------------
// Tensor products

TensorBasis tensor_basis(const GradedSpace& v, const GradedSpace& w) {
  if (v.rank() != w.rank()) throw RankMismatch(v.rank(), w.rank());
  const int rank = v.rank();
  std::vector<std::vector<std::pair<int, int>>> by_degree(std::size_t{1} << rank);
  for (int p = 0; p < v.total_dim(); ++p) {
    for (int q = 0; q < w.total_dim(); ++q) {
      by_degree[(v.degree_of(p) * w.degree_of(q)).code()].emplace_back(p, q);
    }
  }
  std::vector<int> dims;
  TensorBasis tb{v, w, GradedSpace(), {}, std::vector<int>(v.total_dim() * w.total_dim(), -1)};
  for (auto& list : by_degree) {
    dims.push_back(static_cast<int>(list.size()));
    for (auto& pq : list) {
      tb.index_of[pq.first * w.total_dim() + pq.second] = static_cast<int>(tb.pairs.size());
      tb.pairs.push_back(pq);
    }
  }
  tb.space = GradedSpace(rank, std::move(dims));
  return tb;
}

GradedSpace tensor_space(const GradedSpace& v, const GradedSpace& w) {
  if (v.rank() != w.rank()) throw RankMismatch(v.rank(), w.rank());
  std::vector<int> dims(v.dims().size(), 0);
  for (const auto& b : all_degrees(v.rank())) {
    for (const auto& c : all_degrees(v.rank())) dims[(b * c).code()] += v.dim(b) * w.dim(c);
  }
  return GradedSpace(v.rank(), std::move(dims));
}

HomogeneousMap symmetry(const GradedSpace& v, const GradedSpace& w) {
  const TensorBasis src = tensor_basis(v, w);
  const TensorBasis dst = tensor_basis(w, v);
  CMatrix m = CMatrix::Zero(dst.space.total_dim(), src.space.total_dim());
  for (int k = 0; k < static_cast<int>(src.pairs.size()); ++k) {
    const auto [p, q] = src.pairs[k];
    m(dst.index(q, p), k) = to_complex(beta(v.degree_of(p), w.degree_of(q)));
  }
  return HomogeneousMap(src.space, dst.space, Degree::zero(v.rank()), std::move(m));
}

HomogeneousMap tensor_map(const HomogeneousMap& f, const HomogeneousMap& g) {
  const TensorBasis src = tensor_basis(f.source(), g.source());
  const TensorBasis dst = tensor_basis(f.target(), g.target());
  CMatrix m = CMatrix::Zero(dst.space.total_dim(), src.space.total_dim());
  const CMatrix& fm = f.matrix();
  const CMatrix& gm = g.matrix();
  for (int k = 0; k < static_cast<int>(src.pairs.size()); ++k) {
    const auto [p, q] = src.pairs[k];
    const cplx sign = to_complex(beta(g.degree(), f.source().degree_of(p)));
    for (int p2 = 0; p2 < fm.rows(); ++p2) {
      if (fm(p2, p) == 0.0) continue;
      for (int q2 = 0; q2 < gm.rows(); ++q2) {
        if (gm(q2, q) == 0.0) continue;
        m(dst.index(p2, q2), k) += sign * fm(p2, p) * gm(q2, q);
      }
    }
  }
  return HomogeneousMap(src.space, dst.space, f.degree() * g.degree(), std::move(m));
}

GammaInnerSpace tensor_inner(const GammaInnerSpace& h, const GammaInnerSpace& k) {
  if (h.twist() != k.twist()) throw std::invalid_argument("tensor_inner: alpha variants differ");
  const TensorBasis tb = tensor_basis(h.space(), k.space());
  const CMatrix bh = h.gamma_gram();
  const CMatrix bk = k.gamma_gram();
  const GradedSpace& hs = h.space();
  const GradedSpace& ks = k.space();
  std::vector<CMatrix> grams;
  for (const auto& a : all_degrees(hs.rank())) {
    const int m = tb.space.dim(a), off = tb.space.offset(a);
    CMatrix g = CMatrix::Zero(m, m);
    const cplx alpha_a = to_complex(alpha(a, h.twist()));
    for (int r = 0; r < m; ++r) {
      const auto [p2, q2] = tb.pairs[off + r];
      for (int c = 0; c < m; ++c) {
        const auto [p, q] = tb.pairs[off + c];
        // <v_p (x) w_q, v_p2 (x) w_q2> = beta(|w_q|, |v_p2|) <v_p, v_p2> <w_q, w_q2>,
        // with <x, y> = y^H B x, so <e_i, e_j> = B(j, i).
        const cplx form = to_complex(beta(ks.degree_of(q), hs.degree_of(p2))) * bh(p2, p) *
                          bk(q2, q);
        g(r, c) = alpha_a * form;  // ordinary (x, y) = alpha(a) <x, y>
      }
    }
    grams.push_back(std::move(g));
  }
  try {
    return GammaInnerSpace(tb.space, std::move(grams), h.twist());
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("tensor_inner: induced form fails positivity: ") + e.what());
  }
}

}  // namespace z2n
