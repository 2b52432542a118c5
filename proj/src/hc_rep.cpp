#include "z2n/hc_rep.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace z2n {

UndefinedSector::UndefinedSector(const std::string& label)
    : std::invalid_argument("representation is undefined on basis element '" + label + "'") {}

bool is_prerep_sector(const Degree& a) {
  return a == Degree::zero(a.rank()) || parity(a) == Parity::OddLike;
}

bool Representation::sector_defined(const Degree& a) const {
  const auto [lo, hi] = pair.algebra().sector_range(a);
  for (int i = lo; i < hi; ++i) {
    if (!defined(i)) return false;
  }
  return true;
}

namespace {

const CMatrix& rho_at(const Representation& r, int i) {
  if (!r.defined(i)) throw UndefinedSector(r.pair.algebra().label(i));
  return r.rho[i];
}

double rel(const CMatrix& diff, double scale) { return diff.norm() / std::max(1.0, scale); }

/// alpha(a) G^{-1} T^H G, without validating the block pattern.
CMatrix raw_dagger(const GammaInnerSpace& h, const CMatrix& t, const Degree& a) {
  return to_complex(h.alpha_of(a)) * (h.full_gram_inverse() * t.adjoint() * h.full_gram());
}

CMatrix raw_star(const GammaInnerSpace& h, const CMatrix& t) {
  return h.full_gram_inverse() * t.adjoint() * h.full_gram();
}

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& w) {
    if (v > value || (std::isnan(v) && !std::isnan(value))) {
      value = v;
      where = w;
    }
  }
};

void run_checks(const Representation& r, double tol, bool partial, Report& rep) {
  const ColorLieAlgebra& l = r.pair.algebra();
  const GradedSpace& v = r.space.space();
  const int n = l.dim();
  const int d = r.dim();
  rep.merge(validate_gamma_inner(r.space), "inner_product.");

  // shapes and grading of the rho operators
  bool shapes_ok = static_cast<int>(r.rho.size()) == n &&
                   static_cast<int>(r.extra_pi.size()) == r.pair.num_extra();
  rep.add_flag("operator_count", shapes_ok,
               "rho entries " + std::to_string(r.rho.size()) + " for dim g " + std::to_string(n) +
                   ", pi entries " + std::to_string(r.extra_pi.size()) + " for " +
                   std::to_string(r.pair.num_extra()) + " extra generators");
  if (!shapes_ok) return;
  std::vector<int> used;
  Worst pattern;
  for (int i = 0; i < n; ++i) {
    if (!r.defined(i)) {
      if (!partial) {
        rep.add_flag("defined." + l.label(i), false, "operator missing");
      } else if (is_prerep_sector(l.degree(i))) {
        rep.note("pre-representation leaves " + l.label(i) + " (degree " + l.degree(i).str() +
                 ") undefined");
      }
      continue;
    }
    if (r.rho[i].rows() != d || r.rho[i].cols() != d) {
      rep.add_flag("shape." + l.label(i), false, "operator is not " + std::to_string(d) + "x" +
                                                     std::to_string(d));
      return;
    }
    used.push_back(i);
    pattern.update(off_pattern_norm(v, v, l.degree(i), r.rho[i]) /
                       std::max(1.0, r.rho[i].norm()),
                   l.label(i));
  }
  rep.add("rho_homogeneous", pattern.value, tol, pattern.where);
  for (std::size_t g = 0; g < r.extra_pi.size(); ++g) {
    if (r.extra_pi[g].rows() != d || r.extra_pi[g].cols() != d) {
      rep.add_flag("shape." + r.pair.generators()[g].label, false, "pi has wrong shape");
      return;
    }
  }

  // group unitarity and grading
  Worst unitary, grading;
  const CMatrix& gram = r.space.full_gram();
  for (std::size_t g = 0; g < r.extra_pi.size(); ++g) {
    const CMatrix& p = r.extra_pi[g];
    const std::string& name = r.pair.generators()[g].label;
    unitary.update(rel(p.adjoint() * gram * p - gram, gram.norm()), name);
    grading.update(off_pattern_norm(v, v, Degree::zero(v.rank()), p), name);
  }
  rep.add("pi_unitary", unitary.value, tol, unitary.where);
  rep.add("pi_grading", grading.value, tol, grading.where);

  // bracket homomorphism
  Worst hom;
  for (int i : used) {
    for (int j : used) {
      const SparseVector& br = l.bracket_of_basis(i, j);
      if (std::any_of(br.begin(), br.end(), [&](const auto& kc) { return !r.defined(kc.first); })) {
        continue;
      }
      CMatrix lhs = CMatrix::Zero(d, d);
      for (const auto& [k, c] : br) lhs += c * r.rho[k];
      const double b = beta(l.degree(i), l.degree(j)).value();
      const CMatrix rhs = r.rho[i] * r.rho[j] - b * r.rho[j] * r.rho[i];
      hom.update(rel(lhs - rhs, std::max(1.0, r.rho[i].norm() * r.rho[j].norm())),
                 "[" + l.label(i) + "," + l.label(j) + "]");
    }
  }
  rep.add("bracket_homomorphism", hom.value, tol, hom.where);

  // one-parameter groups of g_0 act unitarily
  Worst even_skew;
  const Degree zero = Degree::zero(l.rank());
  for (int i : used) {
    if (l.degree(i) != zero) continue;
    even_skew.update(rel(raw_star(r.space, r.rho[i]) + r.rho[i], r.rho[i].norm()), l.label(i));
  }
  rep.add("even_skew_star", even_skew.value, tol, even_skew.where);
  rep.note("exp(t rho(x)), x in g_0, defines the identity component; smoothness and the "
           "derived-representation domain conditions hold by construction in finite dimensions");

  // skew-adjointness for the dagger
  Worst skew;
  for (int i : used) {
    skew.update(rel(raw_dagger(r.space, r.rho[i], l.degree(i)) + r.rho[i], r.rho[i].norm()),
                l.label(i));
  }
  rep.add("skew_dagger", skew.value, tol, skew.where);

  // equivariance under G_0
  Worst equi;
  auto check_equivariance = [&](const CMatrix& p, const CMatrix& p_inv, const RMatrix& ad,
                                const std::string& name) {
    for (int i : used) {
      CMatrix target = CMatrix::Zero(d, d);
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        if (ad(k, i) == 0.0) continue;
        if (!r.defined(k)) {
          ok = false;
          break;
        }
        target += ad(k, i) * r.rho[k];
      }
      if (!ok) continue;
      equi.update(rel(p * r.rho[i] * p_inv - target, r.rho[i].norm()),
                  name + " on " + l.label(i));
    }
  };
  for (int g = 0; g < r.pair.num_extra(); ++g) {
    const auto& gen = r.pair.generators()[g];
    check_equivariance(r.extra_pi[g], r.extra_pi[g].inverse(), gen.ad, gen.label);
  }
  for (int i : used) {
    if (l.degree(i) != zero) continue;
    const RMatrix adx = l.ad_matrix(l.basis_vector(i));
    for (double t : {0.3, 1.0}) {
      const CMatrix p = (t * r.rho[i]).exp();
      const CMatrix p_inv = (-t * r.rho[i]).exp();
      std::ostringstream os;
      os << "exp(" << t << "*" << l.label(i) << ")";
      check_equivariance(p, p_inv, (t * adx).exp(), os.str());
    }
  }
  rep.add("equivariance", equi.value, tol, equi.where);
}

}  // namespace

CMatrix rho_vector(const Representation& r, const RVector& coeffs) {
  CMatrix out = CMatrix::Zero(r.dim(), r.dim());
  for (int k = 0; k < coeffs.size(); ++k) {
    if (coeffs(k) != 0.0) out += coeffs(k) * rho_at(r, k);
  }
  return out;
}

CMatrix rho_env(const Representation& r, const EnvElement& d) {
  const int n = r.dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& [w, c] : d.terms()) {
    CMatrix m = CMatrix::Identity(n, n);
    for (int i : w) m = m * rho_at(r, i);
    out += c * m;
  }
  return out;
}

CMatrix pi_generator(const Representation& r, int generator, int power) {
  const auto& gen = r.pair.generators().at(generator);
  if (gen.kind == GroupGenerator::Kind::Extra) {
    const CMatrix& p = r.extra_pi.at(generator);
    return power > 0 ? p : CMatrix(p.inverse());
  }
  return (static_cast<double>(power) * gen.t * rho_at(r, gen.basis_index)).exp();
}

CMatrix pi(const Representation& r, const GroupWord& g) {
  CMatrix m = CMatrix::Identity(r.dim(), r.dim());
  for (const auto& letter : g.letters()) m = m * pi_generator(r, letter.generator, letter.power);
  return m;
}

CMatrix rho_tilde(const Representation& r, const MonoidElement& s) {
  return pi(r, s.group) * rho_env(r, s.env);
}

Report check_unitary_rep(const Representation& r, double tol) {
  Report rep("check_unitary_rep");
  run_checks(r, tol, false, rep);
  return rep;
}

Report check_pre_rep(const Representation& p, double tol) {
  Report rep("check_pre_rep");
  run_checks(p, tol, true, rep);
  rep.note("operator domain conditions are vacuous in finite dimensions (domain = whole space)");
  return rep;
}

PartialRep restrict_to_prerep(const UnitaryRep& r) {
  PartialRep p = r;
  for (int i = 0; i < r.pair.algebra().dim(); ++i) {
    if (!is_prerep_sector(r.pair.algebra().degree(i))) p.rho[i] = CMatrix();
  }
  return p;
}

ExtensionResult stability_extend(const PartialRep& p, const ExtensionOptions& opt) {
  const ColorLieAlgebra& l = p.pair.algebra();
  const PerfectnessReport perf = check_perfectness(l);
  for (const auto& s : perf.sectors) {
    if (!s.saturated()) throw PerfectnessError(s.sector, s.rank, s.dim);
  }
  for (int i = 0; i < l.dim(); ++i) {
    if (is_prerep_sector(l.degree(i)) && !p.defined(i)) throw UndefinedSector(l.label(i));
  }
  struct SectorResult {
    std::vector<std::pair<int, CMatrix>> rho;
    double worst = 0.0;
    std::string where;
  };
  auto realize = [&](const BracketDecomposition& dec) {
    CMatrix out = CMatrix::Zero(p.dim(), p.dim());
    for (const auto& t : dec.terms) {
      const CMatrix& y = rho_at(p, t.left);
      const CMatrix& z = rho_at(p, t.right);
      const double b = beta(l.degree(t.left), l.degree(t.right)).value();
      out += t.coefficient * (y * z - b * z * y);
    }
    return out;
  };
  auto extend_sector = [&](const Degree& a) {
    SectorResult res;
    const auto [lo, hi] = l.sector_range(a);
    for (int i = lo; i < hi; ++i) {
      const RVector x = l.basis_vector(i);
      const CMatrix m1 = realize(decompose_odd(l, a, x, DecompositionMethod::MinimumNorm));
      const CMatrix m2 = realize(decompose_odd(l, a, x, DecompositionMethod::PivotedQR));
      const double dev = rel(m1 - m2, m1.norm());
      if (res.where.empty() || dev > res.worst) {
        res.worst = dev;
        res.where = l.label(i);
      }
      res.rho.emplace_back(i, m1);
    }
    return res;
  };
  std::vector<Degree> sectors;
  for (const Degree& a : all_degrees(l.rank())) {
    if (!is_prerep_sector(a) && l.sector_dim(a) > 0) sectors.push_back(a);
  }
  std::vector<SectorResult> results(sectors.size());
  if (opt.parallel) {
    std::vector<std::future<SectorResult>> futures;
    for (const auto& a : sectors) futures.push_back(std::async(std::launch::async, extend_sector, a));
    for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < sectors.size(); ++k) results[k] = extend_sector(sectors[k]);
  }
  ExtensionResult out{p, Report("stability_extend")};
  Worst dep;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    dep.update(results[k].worst, results[k].where);
    for (auto& [i, m] : results[k].rho) out.rep.rho[i] = std::move(m);
  }
  out.report.add("decomposition_independence", dep.value, opt.tol, dep.where);
  out.report.note(std::to_string(sectors.size()) + " even-like sector(s) extended");
  if (dep.value > opt.tol) {
    throw InconsistentPreRep("two bracket decompositions of " + dep.where +
                             " give operators differing by " + std::to_string(dep.value) +
                             " > tol " + std::to_string(opt.tol) +
                             "; the partial data is not a pre-representation");
  }
  if (opt.validate) out.report.merge(check_unitary_rep(out.rep), "extended.");
  return out;
}

cplx matrix_coefficient(const Representation& r, const CVector& v, const CVector& w,
                        const MonoidElement& s) {
  return r.space.ordinary_inner(rho_tilde(r, s) * v, w);
}

UnitaryRep twist_rep(const UnitaryRep& r, const Character& chi) {
  UnitaryRep out = r;
  const std::uint32_t base = r.space.twist() ? r.space.twist()->mask() : 0u;
  const std::uint32_t mask = base ^ chi.mask();
  std::optional<Character> twist;
  if (mask != 0) twist = Character(chi.rank(), mask);
  out.space = r.space.with_twist(twist);
  for (int i = 0; i < r.pair.algebra().dim(); ++i) {
    if (r.defined(i) && chi(r.pair.algebra().degree(i)).negative()) out.rho[i] = -r.rho[i];
  }
  return out;
}

double intertwiner_residual(const Representation& r1, const Representation& r2, const CMatrix& t) {
  double worst = 0.0;
  const double scale = std::max(1.0, t.norm());
  for (int i = 0; i < r1.pair.algebra().dim(); ++i) {
    if (!r1.defined(i) || !r2.defined(i)) continue;
    worst = std::max(worst, (t * r1.rho[i] - r2.rho[i] * t).norm() /
                                std::max(scale, scale * r1.rho[i].norm()));
  }
  for (int g = 0; g < r1.pair.num_extra(); ++g) {
    worst = std::max(worst, (t * r1.extra_pi[g] - r2.extra_pi[g] * t).norm() / scale);
  }
  return worst;
}

UnitaryRep conjugate_rep(const UnitaryRep& r, const CMatrix& u, const GammaInnerSpace& target) {
  UnitaryRep out = r;
  out.space = target;
  const CMatrix u_inv = u.inverse();
  for (auto& m : out.rho) {
    if (m.size() > 0) m = u * m * u_inv;
  }
  for (auto& m : out.extra_pi) m = u * m * u_inv;
  return out;
}

std::vector<int> direct_sum_order(const GradedSpace& v, const GradedSpace& w) {
  const int dv = v.total_dim(), dw = w.total_dim();
  std::vector<int> order(dv + dw);
  std::iota(order.begin(), order.end(), 0);
  auto deg = [&](int k) { return k < dv ? v.degree_of(k) : w.degree_of(k - dv); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg(a) < deg(b); });
  return order;
}

UnitaryRep direct_sum(const UnitaryRep& r1, const UnitaryRep& r2) {
  const GradedSpace& v = r1.space.space();
  const GradedSpace& w = r2.space.space();
  if (v.rank() != w.rank()) throw RankMismatch(v.rank(), w.rank());
  if (r1.space.twist() != r2.space.twist()) {
    throw std::invalid_argument("direct_sum: spaces use different alpha twists");
  }
  std::vector<int> dims(v.dims().size());
  std::vector<CMatrix> grams(v.dims().size());
  for (std::size_t c = 0; c < dims.size(); ++c) {
    dims[c] = v.dims()[c] + w.dims()[c];
    const CMatrix& g1 = r1.space.grams()[c];
    const CMatrix& g2 = r2.space.grams()[c];
    CMatrix g = CMatrix::Zero(dims[c], dims[c]);
    g.topLeftCorner(g1.rows(), g1.cols()) = g1;
    g.bottomRightCorner(g2.rows(), g2.cols()) = g2;
    grams[c] = g;
  }
  const std::vector<int> order = direct_sum_order(v, w);
  const int total = static_cast<int>(order.size());
  CMatrix perm = CMatrix::Zero(total, total);  // canonical <- concatenated
  for (int k = 0; k < total; ++k) perm(k, order[k]) = 1.0;
  auto block_sum = [&](const CMatrix& a, const CMatrix& b) {
    CMatrix m = CMatrix::Zero(total, total);
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return CMatrix(perm * m * perm.transpose());
  };
  UnitaryRep out{r1.pair,
                 GammaInnerSpace(GradedSpace(v.rank(), dims), grams, r1.space.twist()),
                 {},
                 {}};
  for (std::size_t i = 0; i < r1.rho.size(); ++i) {
    const bool d1 = r1.defined(static_cast<int>(i)), d2 = r2.defined(static_cast<int>(i));
    if (d1 != d2) throw std::invalid_argument("direct_sum: summands define different sectors");
    out.rho.push_back(d1 ? block_sum(r1.rho[i], r2.rho[i]) : CMatrix());
  }
  for (std::size_t g = 0; g < r1.extra_pi.size(); ++g) {
    out.extra_pi.push_back(block_sum(r1.extra_pi[g], r2.extra_pi[g]));
  }
  return out;
}

UnitaryRep trivial_rep(const HCPair& pair) {
  const GradedSpace line = GradedSpace::trivial(pair.rank());
  UnitaryRep r{pair, GammaInnerSpace::standard(line), {}, {}};
  r.rho.assign(pair.algebra().dim(), CMatrix::Zero(1, 1));
  r.extra_pi.assign(pair.num_extra(), CMatrix::Identity(1, 1));
  return r;
}

}  // namespace z2n
