#include "z2n/gns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace z2n {

namespace {

constexpr int kProductLevelCap = 64;

Degree element_degree(const HCPair& pair, const MonoidElement& s) {
  const auto d = env_degree(pair.algebra(), s.env);
  if (!d) throw GNSError("monoid element has mixed degree");
  return *d;
}

}  // namespace

EnvOptions PDFunction::env_options() const {
  EnvOptions opt;
  opt.level_cap = kProductLevelCap;
  opt.twist = twist();
  return opt;
}

cplx PDFunction::gram_entry(const MonoidElement& s, const MonoidElement& t) const {
  const EnvOptions opt = env_options();
  return (*this)(s_mul(pair(), s_star(pair(), s, opt), t, opt));
}

// ---------------------------------------------------------------------------

RepCoefficient::RepCoefficient(UnitaryRep rep, CVector v, CVector w)
    : rep_(std::move(rep)), v_(std::move(v)), w_(std::move(w)) {
  if (v_.size() != rep_.dim() || w_.size() != rep_.dim()) {
    throw std::invalid_argument("RepCoefficient: vector size does not match the representation");
  }
}

cplx RepCoefficient::operator()(const MonoidElement& s) const {
  return matrix_coefficient(rep_, v_, w_, s);
}

cplx RepCoefficient::gram_entry(const MonoidElement& s, const MonoidElement& t) const {
  const ColorLieAlgebra& l = rep_.pair.algebra();
  const int d = rep_.dim();
  // s* t = (g_s^-1 g_t, Ad(g_t^-1 g_s)(D_s*) D_t)
  const GroupWord k = t.group.inverse() * s.group;
  const RMatrix ad = rep_.pair.ad(k);
  std::map<int, CMatrix> letter_ops;
  auto letter = [&](int i) -> const CMatrix& {
    auto it = letter_ops.find(i);
    if (it == letter_ops.end()) {
      const CMatrix op = star_scalar(l.degree(i), twist()) * rho_vector(rep_, ad.col(i));
      it = letter_ops.emplace(i, op).first;
    }
    return it->second;
  };
  CMatrix a = CMatrix::Zero(d, d);
  for (const auto& [w, c] : s.env.terms()) {
    CMatrix m = CMatrix::Identity(d, d);
    for (auto it = w.rbegin(); it != w.rend(); ++it) m = m * letter(*it);
    a += std::conj(c) * m;
  }
  const CMatrix op = pi(rep_, s.group.inverse() * t.group) * a * rho_env(rep_, t.env);
  return rep_.space.ordinary_inner(op * v_, w_);
}

TableFunction::TableFunction(HCPair pair, std::map<Key, cplx> values,
                             std::optional<Character> twist)
    : pair_(std::move(pair)), values_(std::move(values)), twist_(twist) {}

cplx TableFunction::operator()(const MonoidElement& s) const {
  const EnvElement d = normalize(pair_.algebra(), s.env, env_options());
  cplx out{};
  for (const auto& [w, c] : d.terms()) {
    auto it = values_.find({s.group, w});
    if (it == values_.end()) {
      std::string word;
      for (int i : w) word += (word.empty() ? "" : " ") + pair_.algebra().label(i);
      throw std::out_of_range("table has no value at (" + pair_.label(s.group) + ", [" + word +
                              "])");
    }
    out += c * it->second;
  }
  return out;
}

ScaledFunction::ScaledFunction(std::shared_ptr<const PDFunction> base, double lambda)
    : base_(std::move(base)), lambda_(lambda) {}

RecordingFunction::RecordingFunction(std::shared_ptr<const PDFunction> base)
    : base_(std::move(base)) {}

cplx RecordingFunction::operator()(const MonoidElement& s) const {
  const EnvElement d = normalize(pair().algebra(), s.env, env_options());
  cplx out{};
  for (const auto& [w, c] : d.terms()) {
    const TableFunction::Key key{s.group, w};
    cplx value;
    {
      std::lock_guard lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) {
        out += c * it->second;
        continue;
      }
    }
    value = (*base_)(MonoidElement{s.group, EnvElement::monomial(w)});
    {
      std::lock_guard lock(mutex_);
      table_.emplace(key, value);
    }
    out += c * value;
  }
  return out;
}

std::map<TableFunction::Key, cplx> RecordingFunction::table() const {
  std::lock_guard lock(mutex_);
  return table_;
}

// ---------------------------------------------------------------------------

SampleSet pbw_sample_set(const HCPair& pair, const std::vector<GroupWord>& group_samples,
                         int level) {
  const ColorLieAlgebra& l = pair.algebra();
  std::vector<Word> monomials;
  Word cur;
  auto rec = [&](auto&& self, int start) -> void {
    monomials.push_back(cur);
    if (static_cast<int>(cur.size()) == level) return;
    for (int i = start; i < l.dim(); ++i) {
      if (!cur.empty() && cur.back() == i && beta(l.degree(i), l.degree(i)).negative()) continue;
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<GroupWord> groups{GroupWord::identity()};
  for (const auto& g : group_samples) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  SampleSet out;
  for (const auto& g : groups) {
    for (const auto& m : monomials) {
      out.push_back({MonoidElement{g, EnvElement::monomial(m)}, word_degree(l, m)});
    }
  }
  return out;
}

Report check_positive_definite(const PDFunction& psi, const SampleSet& samples, double tol) {
  Report rep("check_positive_definite");
  if (samples.empty()) throw std::invalid_argument("check_positive_definite: empty sample set");
  const int m = static_cast<int>(samples.size());
  const Degree zero = Degree::zero(psi.pair().rank());
  double support = 0.0;
  std::string support_at;
  for (const auto& s : samples) {
    if (s.degree == zero) continue;
    const double v = std::abs(psi(s.element));
    if (v > support || support_at.empty()) {
      support = std::max(support, v);
      support_at = "degree " + s.degree.str();
    }
  }
  rep.add("support", support, tol, support_at);
  CMatrix g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g(i, j) = psi.gram_entry(samples[i].element, samples[j].element);
  }
  const double scale = std::max(1.0, g.norm());
  double cross = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (samples[i].degree != samples[j].degree) cross = std::max(cross, std::abs(g(i, j)));
    }
  }
  rep.add("degree_orthogonality", cross / scale, tol);
  rep.add("hermitian", (g - g.adjoint()).cwiseAbs().maxCoeff() / scale, tol);
  const CMatrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  rep.add("min_eigenvalue", std::max(0.0, -min_eig) / scale, tol,
          "min eigenvalue " + std::to_string(min_eig) + ", ||G|| " + std::to_string(g.norm()) +
              ", " + std::to_string(m) + " samples");
  rep.note("verified on sample set");
  return rep;
}

// ---------------------------------------------------------------------------

MonoidElement left_letter(const HCPair& pair, int k, const MonoidElement& s) {
  // (1, x)(g, D) = (g, Ad(g^-1)(x) D)
  const ColorLieAlgebra& l = pair.algebra();
  RVector x = l.basis_vector(k);
  if (!s.group.is_identity()) x = pair.ad(s.group.inverse()) * x;
  EnvElement out;
  for (int m = 0; m < l.dim(); ++m) {
    if (x(m) == 0.0) continue;
    for (const auto& [w, c] : s.env.terms()) {
      Word word{m};
      word.insert(word.end(), w.begin(), w.end());
      out.add(word, x(m) * c);
    }
  }
  return {s.group, out};
}

MonoidElement left_group(const GroupWord& g, const MonoidElement& s) {
  return {g * s.group, s.env};
}

std::vector<Letter> closure_letters(const HCPair& pair, const std::vector<double>& exp_times) {
  std::vector<Letter> out;
  for (int k = 0; k < pair.algebra().dim(); ++k) out.push_back({Letter::Kind::Algebra, k});
  for (int g : pair.sample_generators(exp_times)) out.push_back({Letter::Kind::Group, g});
  return out;
}

MonoidElement apply_letter(const HCPair& pair, const Letter& letter, const MonoidElement& s) {
  if (letter.kind == Letter::Kind::Algebra) return left_letter(pair, letter.index, s);
  return left_group(GroupWord::generator(letter.index), s);
}

// ---------------------------------------------------------------------------

GNSResult gns_construct(const PDFunction& psi, const GNSOptions& opt) {
  const HCPair& pair = psi.pair();
  const ColorLieAlgebra& l = pair.algebra();
  const int rank = pair.rank();
  std::vector<Letter> letters = closure_letters(pair, opt.exp_times);
  if (opt.shuffle_seed) {
    std::mt19937 rng(*opt.shuffle_seed);
    std::shuffle(letters.begin(), letters.end(), rng);
  }

  GNSResult res;
  Report& rep = res.report;
  const std::size_t ncodes = std::size_t{1} << rank;
  std::vector<std::vector<int>> members(ncodes);  // retained sample indices per degree
  std::vector<CMatrix> grams(ncodes);
  SampleSet retained;
  SampleSet rejected;
  double scale = 0.0;

  auto try_add = [&](const MonoidElement& c) {
    if (c.env.is_zero()) return false;
    const Degree a = element_degree(pair, c);
    const auto& mem = members[a.code()];
    const double cc = psi.gram_entry(c, c).real();
    const double s_now = std::max(scale, std::abs(cc));
    double r = cc;
    CVector g(static_cast<int>(mem.size()));
    for (std::size_t i = 0; i < mem.size(); ++i) {
      g(static_cast<int>(i)) = psi.gram_entry(retained[mem[i]].element, c);
    }
    if (!mem.empty()) r = cc - g.dot(grams[a.code()].ldlt().solve(g)).real();
    if (r < -opt.tol * std::max(1.0, s_now) * 10.0) {
      throw GNSError("positivity failure: Gram Schur complement " + std::to_string(r) +
                     " at degree " + a.str());
    }
    if (s_now > 0.0 && r > opt.tol * s_now) {
      const int m = static_cast<int>(mem.size());
      CMatrix grown(m + 1, m + 1);
      if (m > 0) grown.topLeftCorner(m, m) = grams[a.code()];
      grown.block(0, m, m, 1) = g;
      grown.block(m, 0, 1, m) = g.adjoint();
      grown(m, m) = cc;
      grams[a.code()] = grown;
      members[a.code()].push_back(static_cast<int>(retained.size()));
      retained.push_back({c, a});
      scale = s_now;
      return true;
    }
    res.discarded_residuals.push_back(s_now > 0.0 ? r / s_now : 0.0);
    if (static_cast<int>(rejected.size()) < opt.pd_extra_samples) rejected.push_back({c, a});
    return false;
  };

  std::vector<MonoidElement> frontier;
  if (try_add(MonoidElement::one())) frontier.push_back(MonoidElement::one());
  res.rank_by_level.push_back(static_cast<int>(retained.size()));
  bool stabilized = frontier.empty();
  const int cap = std::max(1, opt.level_cap);
  for (int level = 1; level <= cap && !stabilized; ++level) {
    std::vector<MonoidElement> next;
    for (const auto& b : frontier) {
      for (const auto& letter : letters) {
        MonoidElement c = apply_letter(pair, letter, b);
        if (try_add(c)) next.push_back(std::move(c));
      }
    }
    res.rank_by_level.push_back(static_cast<int>(retained.size()));
    if (next.empty()) {
      stabilized = true;
      res.level_used = level - 1;
    }
    frontier = std::move(next);
  }
  rep.add_flag("rank_stabilized", stabilized,
               "rank " + std::to_string(retained.size()) + " after level " +
                   std::to_string(res.rank_by_level.size() - 1));
  if (!stabilized) {
    throw GNSError("Gram rank fails to stabilize by level cap " + std::to_string(opt.level_cap) +
                   " (rank still growing: " + std::to_string(retained.size()) + ")");
  }

  // orthonormal bases per degree: C = Q Lambda^{-1/2}
  std::vector<int> dims(ncodes, 0);
  std::vector<CMatrix> coeffs(ncodes);
  for (std::size_t a = 0; a < ncodes; ++a) {
    if (members[a].empty()) continue;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(grams[a]);
    const double thresh = opt.tol * std::max(scale, grams[a].norm());
    std::vector<int> keep;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      const double lam = es.eigenvalues()(k);
      if (lam > thresh) {
        keep.push_back(k);
        res.retained_spectrum.push_back(lam);
      } else {
        res.discarded_residuals.push_back(lam / std::max(scale, 1e-300));
      }
    }
    CMatrix c(grams[a].rows(), static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      c.col(static_cast<int>(k)) =
          es.eigenvectors().col(keep[k]) / std::sqrt(es.eigenvalues()(keep[k]));
    }
    coeffs[a] = c;
    dims[a] = static_cast<int>(keep.size());
  }
  const GradedSpace space(rank, dims);
  const int total = space.total_dim();
  for (std::size_t a = 0; a < ncodes; ++a) {
    for (int i : members[a]) res.basis_samples.push_back(retained[i]);
  }
  res.pd_samples = res.basis_samples;
  res.pd_samples.insert(res.pd_samples.end(), rejected.begin(), rejected.end());

  // translation operators in the orthonormal basis
  double escape = 0.0;
  std::string escape_at;
  auto compress = [&](const Degree& src, const Degree& dst, auto&& translate,
                      const std::string& name) {
    CMatrix block = CMatrix::Zero(dims[dst.code()], dims[src.code()]);
    const auto& ms = members[src.code()];
    const auto& md = members[dst.code()];
    CMatrix m = CMatrix::Zero(static_cast<int>(md.size()), static_cast<int>(ms.size()));
    for (std::size_t j = 0; j < ms.size(); ++j) {
      const MonoidElement t = translate(retained[ms[j]].element);
      const double full = t.env.is_zero() ? 0.0 : psi.gram_entry(t, t).real();
      for (std::size_t i = 0; i < md.size(); ++i) {
        m(static_cast<int>(i), static_cast<int>(j)) = psi.gram_entry(retained[md[i]].element, t);
      }
      double kept = 0.0;
      if (!md.empty()) kept = (coeffs[dst.code()].adjoint() * m.col(static_cast<int>(j))).squaredNorm();
      const double loss = std::max(0.0, full - kept) / std::max(1.0, std::max(full, scale));
      if (loss > escape || escape_at.empty()) {
        escape = std::max(escape, loss);
        escape_at = name;
      }
    }
    if (!md.empty() && !ms.empty()) {
      block = coeffs[dst.code()].adjoint() * m * coeffs[src.code()];
    }
    return block;
  };

  UnitaryRep out{pair, GammaInnerSpace::standard(space, psi.twist()), {}, {}};
  for (int k = 0; k < l.dim(); ++k) {
    CMatrix op = CMatrix::Zero(total, total);
    for (std::size_t a = 0; a < ncodes; ++a) {
      if (dims[a] == 0) continue;
      const Degree src(rank, static_cast<std::uint32_t>(a));
      const Degree dst = src * l.degree(k);
      const CMatrix block = compress(
          src, dst, [&](const MonoidElement& b) { return left_letter(pair, k, b); }, l.label(k));
      if (dims[dst.code()] > 0) {
        op.block(space.offset(dst), space.offset(src), dims[dst.code()], dims[a]) = block;
      }
    }
    out.rho.push_back(op);
  }
  for (int g = 0; g < pair.num_extra(); ++g) {
    CMatrix op = CMatrix::Zero(total, total);
    const GroupWord gw = GroupWord::generator(g);
    for (std::size_t a = 0; a < ncodes; ++a) {
      if (dims[a] == 0) continue;
      const Degree src(rank, static_cast<std::uint32_t>(a));
      const CMatrix block = compress(
          src, src, [&](const MonoidElement& b) { return left_group(gw, b); },
          pair.generators()[g].label);
      op.block(space.offset(src), space.offset(src), dims[a], dims[a]) = block;
    }
    out.extra_pi.push_back(op);
  }
  rep.add("translation_escape", escape, opt.escape_tol, escape_at);
  if (escape > opt.escape_tol) {
    throw GNSError("translation operator escapes the stabilized span at " + escape_at +
                   " (relative norm loss " + std::to_string(escape) + ")");
  }

  // cyclic vector: class of psi_1
  res.cyclic = CVector::Zero(total);
  const Degree zero = Degree::zero(rank);
  if (dims[0] > 0) {
    CVector m(static_cast<int>(members[0].size()));
    for (std::size_t i = 0; i < members[0].size(); ++i) {
      m(static_cast<int>(i)) = psi.gram_entry(retained[members[0][i]].element, MonoidElement::one());
    }
    res.cyclic.segment(space.offset(zero), dims[0]) = coeffs[0].adjoint() * m;
  }
  res.rep = std::move(out);

  std::ostringstream spec;
  spec << "dimension " << total << ", retained eigenvalues [";
  for (std::size_t k = 0; k < res.retained_spectrum.size(); ++k) {
    spec << (k ? ", " : "") << res.retained_spectrum[k];
  }
  spec << "], " << res.discarded_residuals.size() << " candidates discarded";
  rep.note(spec.str());
  rep.merge(check_unitary_rep(res.rep, 1e-8), "reconstruction.");
  if (total > 0) rep.merge(check_cyclic(res.rep, res.cyclic), "reconstruction.");
  return res;
}

// ---------------------------------------------------------------------------

CyclicSpan cyclic_span(const UnitaryRep& r, const CVector& v, int level_cap, double tol,
                       const std::vector<double>& exp_times) {
  CyclicSpan out;
  const int d = r.dim();
  const CMatrix& gram = r.space.full_gram();
  auto gnorm = [&](const CVector& x) { return std::sqrt(std::max(0.0, x.dot(gram * x).real())); };
  CMatrix q(d, 0);  // G-orthonormal columns
  std::vector<CVector> kept;
  const double vnorm = gnorm(v);
  auto try_add = [&](const MonoidElement& s) {
    const CVector u = rho_tilde(r, s) * v;
    CVector res = u;
    for (int pass = 0; pass < 2; ++pass) {
      if (q.cols() > 0) res -= q * (q.adjoint() * (gram * res));
    }
    const double n = gnorm(res);
    if (n <= tol * std::max(vnorm, gnorm(u)) || n == 0.0) return false;
    q.conservativeResize(d, q.cols() + 1);
    q.col(q.cols() - 1) = res / n;
    out.elements.push_back(s);
    kept.push_back(u);
    return true;
  };
  std::vector<MonoidElement> frontier;
  if (vnorm > 0.0 && try_add(MonoidElement::one())) frontier.push_back(MonoidElement::one());
  const std::vector<Letter> letters = closure_letters(r.pair, exp_times);
  out.stabilized = frontier.empty();
  for (int level = 1; level <= std::max(1, level_cap) && !out.stabilized; ++level) {
    std::vector<MonoidElement> next;
    for (const auto& b : frontier) {
      for (const auto& letter : letters) {
        if (static_cast<int>(kept.size()) == d) break;
        MonoidElement c = apply_letter(r.pair, letter, b);
        if (try_add(c)) next.push_back(std::move(c));
      }
    }
    if (next.empty() || static_cast<int>(kept.size()) == d) {
      out.stabilized = true;
      out.level_used = next.empty() ? level - 1 : level;
    }
    frontier = std::move(next);
  }
  out.vectors = CMatrix(d, static_cast<int>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) out.vectors.col(static_cast<int>(k)) = kept[k];
  return out;
}

Report check_cyclic(const UnitaryRep& r, const CVector& v, double tol, int level_cap) {
  Report rep("check_cyclic");
  const CyclicSpan span = cyclic_span(r, v, level_cap, tol);
  const int rank = static_cast<int>(span.elements.size());
  rep.add_flag("cyclic", rank == r.dim() && span.stabilized,
               "span rank " + std::to_string(rank) + " of dimension " + std::to_string(r.dim()) +
                   " at level " + std::to_string(span.level_used));
  return rep;
}

Equivalence unitary_equivalence(const UnitaryRep& r1, const CVector& v1, const UnitaryRep& r2,
                                const CVector& v2, double tol) {
  Equivalence eq;
  Report& rep = eq.report;
  const CyclicSpan span = cyclic_span(r1, v1);
  const int m = static_cast<int>(span.elements.size());
  const CMatrix& x1 = span.vectors;
  CMatrix x2(r2.dim(), m);
  for (int k = 0; k < m; ++k) x2.col(k) = rho_tilde(r2, span.elements[k]) * v2;
  const CMatrix g1 = x1.adjoint() * r1.space.full_gram() * x1;
  const CMatrix g2 = x2.adjoint() * r2.space.full_gram() * x2;
  const double gscale = std::max(1.0, g1.cwiseAbs().maxCoeff());
  double coeff = m > 0 ? (g1 - g2).cwiseAbs().maxCoeff() / gscale : 0.0;
  for (const auto& s : span.elements) {
    const cplx a = matrix_coefficient(r1, v1, v1, s);
    const cplx b = matrix_coefficient(r2, v2, v2, s);
    coeff = std::max(coeff, std::abs(a - b) / gscale);
  }
  rep.add("matrix_coefficients_agree", coeff, tol);
  if (!(coeff <= tol)) {
    throw EquivalenceError("matrix coefficients disagree on the sample set (deviation " +
                           std::to_string(coeff) + " > tol " + std::to_string(tol) + ")");
  }
  rep.add_flag("source_cyclic", m == r1.dim(),
               "span rank " + std::to_string(m) + " of " + std::to_string(r1.dim()));
  {
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(x2);
    rep.add_flag("target_cyclic", cod.rank() == r2.dim(),
                 "span rank " + std::to_string(cod.rank()) + " of " + std::to_string(r2.dim()));
  }
  // T x1 = x2  <=>  x1^H T^H = x2^H
  CMatrix t = CMatrix::Zero(r2.dim(), r1.dim());
  if (m > 0) {
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(x1.adjoint());
    t = cod.solve(CMatrix(x2.adjoint())).adjoint();
  }
  const double xs = std::max(1.0, x2.norm());
  rep.add("well_defined", m > 0 ? (t * x1 - x2).norm() / xs : 0.0, tol);
  rep.add("isometric",
          (t.adjoint() * r2.space.full_gram() * t - r1.space.full_gram()).norm() /
              std::max(1.0, r1.space.full_gram().norm()),
          tol);
  rep.add("grading_preserving",
          off_pattern_norm(r1.space.space(), r2.space.space(), Degree::zero(r1.pair.rank()), t),
          tol);
  rep.add("intertwining", intertwiner_residual(r1, r2, t), tol);
  rep.add("maps_cyclic_vector", (t * v1 - v2).norm() / std::max(1.0, v2.norm()), tol);
  eq.t = t;
  return eq;
}

double reproducing_residual(const PDFunction& psi, const GNSResult& result, int max_level) {
  const EnvOptions opt = psi.env_options();
  double worst = 0.0;
  const double scale = std::max(1.0, std::abs(psi(MonoidElement::one())));
  for (const auto& s : result.basis_samples) {
    if (s.element.env.level() > max_level) continue;
    const MonoidElement ks = s_star(psi.pair(), s.element, opt);
    for (const auto& b : result.basis_samples) {
      const cplx inner = psi.gram_entry(ks, b.element);  // (psi_b, psi_{s*})
      const cplx value = psi(s_mul(psi.pair(), s.element, b.element, opt));
      worst = std::max(worst, std::abs(inner - value) / scale);
    }
  }
  return worst;
}

Report gns_roundtrip(const UnitaryRep& r, const CVector& v0, const GNSOptions& opt,
                     double equivalence_tol) {
  Report rep("gns_roundtrip");
  const auto deg = homogeneous_degree(r.space.space(), v0, 0.0);
  rep.add_flag("cyclic_vector_degree_zero", deg && *deg == Degree::zero(r.pair.rank()),
               deg ? "degree " + deg->str() : "not homogeneous");
  rep.merge(check_unitary_rep(r), "input.");
  rep.merge(check_cyclic(r, v0), "input.");
  const CyclicSpan span = cyclic_span(r, v0, opt.level_cap);
  const RepCoefficient psi(r, v0, v0);
  GNSResult res = gns_construct(psi, opt);
  rep.merge(check_positive_definite(psi, res.pd_samples, 1e-8), "positive_definite.");
  rep.merge(res.report, "gns.");
  const int recon = res.rep.dim();
  const int cyc = static_cast<int>(span.elements.size());
  rep.add_flag("dimension_matches_cyclic_span", recon == cyc,
               "reconstruction " + std::to_string(recon) + ", cyclic span " + std::to_string(cyc));
  rep.add("reproducing_property", reproducing_residual(psi, res), 1e-8);
  const Equivalence eq = unitary_equivalence(r, v0, res.rep, res.cyclic, equivalence_tol);
  rep.merge(eq.report, "equivalence.");
  return rep;
}

}  // namespace z2n
