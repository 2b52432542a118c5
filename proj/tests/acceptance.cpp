// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "z2n/color_lie.hpp"
#include "z2n/enveloping.hpp"
#include "z2n/examples.hpp"
#include "z2n/gns.hpp"
#include "z2n/graded_linear.hpp"
#include "z2n/grading.hpp"
#include "z2n/hc_rep.hpp"

using namespace z2n;
using namespace z2n::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double rel(const CMatrix& a, const CMatrix& b) {
  const double s = std::max(a.norm(), b.norm());
  return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

double env_rel(const EnvElement& a, const EnvElement& b) {
  const double s = std::max({1.0, a.distance(EnvElement()), b.distance(EnvElement())});
  return a.distance(b) / s;
}

Word rand_word(std::mt19937_64& rng, int dim, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, dim - 1);
  Word w(len(rng));
  for (int& x : w) x = letter(rng);
  return w;
}

EnvElement rand_env(std::mt19937_64& rng, int dim, int max_len, int terms = 3) {
  std::normal_distribution<double> n01;
  EnvElement d;
  for (int t = 0; t < terms; ++t) {
    const double re = n01(rng);
    d.add(rand_word(rng, dim, max_len), cplx(re, n01(rng)));
  }
  return d;
}

CMatrix word_product(const Representation& r, const Word& w) {
  CMatrix m = CMatrix::Identity(r.dim(), r.dim());
  for (int i : w) m = m * r.rho[i];
  return m;
}

// Rank of the span of v under repeated rho(x), pi and pi^{-1}.
int span_rank(const UnitaryRep& r, const CVector& v) {
  std::vector<CMatrix> ops;
  for (const CMatrix& m : r.rho) ops.push_back(m);
  for (const CMatrix& p : r.extra_pi) {
    ops.push_back(p);
    ops.push_back(p.inverse());
  }
  CMatrix span = v;
  int rank = v.norm() > 0 ? 1 : 0;
  for (int round = 0; round < r.dim() + 1; ++round) {
    CMatrix next = span;
    for (const CMatrix& op : ops) {
      const CMatrix img = op * span;
      CMatrix joined(next.rows(), next.cols() + img.cols());
      joined << next, img;
      next = joined;
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(next);
    qr.setThreshold(1e-10);
    const int new_rank = static_cast<int>(qr.rank());
    span = (qr.householderQ() * CMatrix::Identity(next.rows(), new_rank)).eval();
    if (new_rank == rank && round > 0) break;
    rank = new_rank;
  }
  return rank;
}

std::vector<CMatrix> transported_grams(const GammaInnerSpace& h, const CMatrix& s) {
  const GradedSpace& v = h.space();
  const CMatrix s_inv = s.inverse();
  std::vector<CMatrix> grams;
  for (const Degree& a : all_degrees(v.rank())) {
    const int k = v.dim(a);
    if (k == 0) {
      grams.push_back(CMatrix(0, 0));
      continue;
    }
    const CMatrix b = s_inv.block(v.offset(a), v.offset(a), k, k);
    grams.push_back(b.adjoint() * h.gram(a) * b);
  }
  return grams;
}

// ---------------------------------------------------------------------------

Outcome sign_calculus() {
  long long pairs = 0, bad = 0;
  for (int n = 1; n <= 4; ++n) {
    const IdentityReport r = verify_alpha_cocycle(n);
    pairs += r.pairs_checked;
    bad += static_cast<long long>(r.violations.size());
    if (r.pairs_checked != (1ll << (2 * n))) return {false, "n=" + std::to_string(n) + " checked too few pairs"};
  }
  return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " violations"};
}

Outcome lifting() {
  long long pairs = 0, bad = 0;
  for (int n = 1; n <= 3; ++n) {
    const IdentityReport r = verify_lifting_relation(n);
    pairs += r.pairs_checked;
    bad += static_cast<long long>(r.violations.size());
    if (r.pairs_checked != (1ll << (2 * n))) return {false, "n=" + std::to_string(n) + " checked too few pairs"};
  }
  return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " violations"};
}

Outcome adjoints() {
  std::mt19937_64 rng(3001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const GammaInnerSpace h = rand_inner(rng, rand_space(rng, n, 3));
    const Degree a = rand_degree(rng, n), b = rand_degree(rng, n);
    const HomogeneousMap s = rand_map(rng, h.space(), a), t = rand_map(rng, h.space(), b);
    const HomogeneousMap sd = dagger_adjoint(h, s), td = dagger_adjoint(h, t);
    worst = std::max(worst, rel(dagger_adjoint(h, td).matrix(), t.matrix()));
    worst = std::max(worst, rel(dagger_adjoint(h, s * t).matrix(),
                                double(beta(a, b).value()) * (td * sd).matrix()));
    worst = std::max(worst, rel(star_adjoint(h, t).matrix(), std::conj(to_complex(alpha(b))) * td.matrix()));
  }
  return {worst < 1e-12, "200 maps, max relative residual " + fmt(worst)};
}

Outcome glv_axioms() {
  std::mt19937_64 rng(3002);
  double worst = 0.0;
  int largest = 0;
  int failed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const GradedSpace v = rand_space(rng, n, 2);
    const ColorLieAlgebra l = glV(v);
    largest = std::max(largest, l.dim());
    const Report r = check_axioms(l, 1e-10);
    if (!r.passed()) ++failed;
    for (const Check& c : r.checks) worst = std::max(worst, c.residual);
  }
  return {failed == 0 && worst < 1e-10, "50 spaces, largest dim " + std::to_string(largest) +
                                             ", max residual " + fmt(worst) + ", failures " +
                                             std::to_string(failed)};
}

Outcome tensor_positivity() {
  std::mt19937_64 rng(3003);
  double min_eig = std::numeric_limits<double>::infinity();
  double worst_iii = 0.0;
  int failed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const GammaInnerSpace h = rand_inner(rng, rand_space(rng, n, 2));
    const GammaInnerSpace k = rand_inner(rng, rand_space(rng, n, 2));
    const GammaInnerSpace hk = tensor_inner(h, k);
    const Report r = validate_gamma_inner(hk, 1e-12);
    if (!r.passed()) ++failed;
    for (const Check& c : r.checks) {
      if (c.name.find("(iii)") != std::string::npos) worst_iii = std::max(worst_iii, c.residual);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hk.full_gram());
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff() / std::max(1.0, es.eigenvalues().maxCoeff()));
  }
  return {failed == 0 && min_eig > 0.0 && worst_iii <= 1e-12,
          "100 pairs, min relative gram eigenvalue " + fmt(min_eig) + ", condition (iii) residual " +
              fmt(worst_iii) + ", failures " + std::to_string(failed)};
}

Outcome pbw() {
  std::mt19937_64 rng(3004);
  EnvOptions right;
  right.strategy = RewriteStrategy::RightmostInnermost;
  double worst_conf = 0.0, worst_gl = 0.0;
  int algebras = 0, words = 0, gl_words = 0;
  while (algebras < 20) {
    const int n = 1 + algebras % 3;
    const ColorLieAlgebra l = random_color_algebra(rng, n, 6);
    if (l.dim() == 0) continue;
    if (!check_axioms(l).passed()) return {false, "random algebra failed verification"};
    ++algebras;
    for (int k = 0; k < 25; ++k, ++words) {
      const Word w = rand_word(rng, l.dim(), 6);
      worst_conf = std::max(worst_conf, env_rel(normal_form(l, w), normal_form(l, w, right)));
    }
  }
  for (int trial = 0; gl_words < 500; ++trial) {
    const int n = 1 + trial % 3;
    const GradedSpace v = rand_space(rng, n, 2);
    if (v.total_dim() > 3) continue;
    const Representation r = glV_defining(v);
    const ColorLieAlgebra& l = r.pair.algebra();
    for (int k = 0; k < 25; ++k, ++gl_words) {
      const Word w = rand_word(rng, l.dim(), 6);
      worst_gl = std::max(worst_gl, rel(rho_env(r, normal_form(l, w)), word_product(r, w)));
    }
  }
  return {worst_conf < 1e-8 && worst_gl < 1e-9,
          std::to_string(words) + " words over " + std::to_string(algebras) +
              " algebras, strategy gap " + fmt(worst_conf) + "; " + std::to_string(gl_words) +
              " gl(V) words, matrix gap " + fmt(worst_gl)};
}

Outcome star_monoid() {
  std::vector<HCPair> pairs;
  for (std::uint64_t seed = 1; pairs.size() < 5; ++seed) {
    pairs.push_back(random_rep(seed, {.rank = 1 + static_cast<int>(seed % 2), .max_total_dim = 3,
                                      .extra_generators = 2})
                        .rep.pair);
  }
  std::mt19937_64 rng(3005);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const HCPair& pair = pairs[trial % pairs.size()];
    const ColorLieAlgebra& l = pair.algebra();
    std::uniform_int_distribution<int> gen(0, static_cast<int>(pair.generators().size()) - 1);
    std::uniform_int_distribution<int> pow(0, 2);
    auto letter = [&] {
      const int p = pow(rng);
      return p == 0 ? GroupWord::identity() : GroupWord::generator(gen(rng), p == 1 ? 1 : -1);
    };
    auto rand_s = [&] {
      GroupWord g = letter() * letter();
      return MonoidElement{g, rand_env(rng, l.dim(), 2, 2)};
    };
    const EnvElement d1 = rand_env(rng, l.dim(), 3), d2 = rand_env(rng, l.dim(), 2);
    worst = std::max(worst, env_rel(env_star(l, env_star(l, d1)), normalize(l, d1)));
    worst = std::max(worst, env_rel(env_star(l, env_mul(l, d1, d2)),
                                    env_mul(l, env_star(l, d2), env_star(l, d1))));
    const MonoidElement s = rand_s(), t = rand_s(), u = rand_s();
    const MonoidElement st_star = s_star(pair, s_mul(pair, s, t));
    const MonoidElement ts = s_mul(pair, s_star(pair, t), s_star(pair, s));
    if (!(st_star.group == ts.group)) return {false, "(st)* group part differs"};
    worst = std::max(worst, env_rel(st_star.env, ts.env));
    const MonoidElement left = s_mul(pair, s_mul(pair, s, t), u);
    const MonoidElement right = s_mul(pair, s, s_mul(pair, t, u));
    if (!(left.group == right.group)) return {false, "associativity group part differs"};
    worst = std::max(worst, env_rel(left.env, right.env));
  }
  return {worst < 1e-10, "200 samples, max relative residual " + fmt(worst)};
}

Outcome stability() {
  double worst_rec = 0.0, worst_dep = 0.0;
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomRepOptions opt;
    opt.rank = seed % 4 == 0 ? 1 : 2;
    opt.max_total_dim = 4 + static_cast<int>(seed % 5);
    opt.require_perfect = true;
    const RandomRep rr = random_rep(seed, opt);
    const ColorLieAlgebra& l = rr.rep.pair.algebra();
    const ExtensionResult ext = stability_extend(restrict_to_prerep(rr.rep));
    bool any = false;
    for (int i = 0; i < l.dim(); ++i) {
      if (is_prerep_sector(l.degree(i))) continue;
      any = true;
      worst_rec = std::max(worst_rec, rel(ext.rep.rho[i], rr.rep.rho[i]));
    }
    nontrivial += any;
    worst_dep = std::max(worst_dep, ext.report.max_residual("decomposition_independence"));
  }
  return {worst_rec < 1e-8 && worst_dep < 1e-8,
          "20 reps (" + std::to_string(nontrivial) + " with even-like sectors), recovery " +
              fmt(worst_rec) + ", decomposition independence " + fmt(worst_dep)};
}

Outcome negative_control() {
  const PerfectnessReport pr = check_perfectness(counterexample_algebra());
  const SectorRank* s = pr.find(Degree::from_bits({1, 1}));
  if (!s) return {false, "sector 11 missing from the perfectness report"};
  const bool exact = s->rank == 0 && s->dim == 1 && !pr.passed();
  std::string msg;
  bool refused = false;
  try {
    stability_extend(counterexample_prerep());
  } catch (const PerfectnessError& e) {
    refused = e.sector() == Degree::from_bits({1, 1});
    msg = e.what();
  }
  const bool cites = msg.find("hypothesis") != std::string::npos;
  return {exact && refused && cites, "sector 11 rank " + std::to_string(s->rank) + " vs dim " +
                                         std::to_string(s->dim) + "; extension " +
                                         (refused ? "refused" : "not refused") +
                                         (cites ? " citing the hypothesis" : "")};
}

Outcome gns_roundtrips() {
  struct Case {
    UnitaryRep rep;
    CVector v0;
  };
  std::vector<Case> cases;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomRepOptions opt;
    opt.rank = 1 + static_cast<int>(seed % 2);
    opt.plus_trivial = seed % 3 == 0;
    opt.max_total_dim = (opt.plus_trivial ? 11 : 12) - static_cast<int>(seed % 4) * 2;
    opt.extra_generators = static_cast<int>(seed % 3);
    const RandomRep rr = random_rep(seed + 100, opt);
    cases.push_back({rr.rep, rr.cyclic});
  }
  cases.push_back({clifford_rep(), clifford_cyclic_vector()});

  double worst_pd = 0.0, worst_eq = 0.0, worst_v0 = 0.0, worst_entry = 0.0;
  int dim_mismatch = 0, largest = 0;
  for (const Case& c : cases) {
    largest = std::max(largest, c.rep.dim());
    const RepCoefficient psi(c.rep, c.v0, c.v0);
    const GNSResult res = gns_construct(psi);

    std::vector<GroupWord> groups;
    for (int g = 0; g < c.rep.pair.num_extra(); ++g) groups.push_back(GroupWord::generator(g));
    const SampleSet level1 = pbw_sample_set(c.rep.pair, groups, 1);
    SampleSet samples = res.pd_samples;
    const std::size_t stride = std::max<std::size_t>(1, level1.size() / 100);
    for (std::size_t k = 0; k < level1.size(); k += stride) samples.push_back(level1[k]);
    const int m = static_cast<int>(samples.size());
    std::vector<CVector> images;
    for (const Sample& s : samples) images.push_back(rho_tilde(c.rep, s.element) * c.v0);
    CMatrix g(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        g(i, j) = psi.gram_entry(samples[i].element, samples[j].element);
        const cplx direct = c.rep.space.ordinary_inner(images[j], images[i]);
        worst_entry = std::max(worst_entry, std::abs(g(i, j) - direct) / (1.0 + std::abs(direct)));
      }
    }
    const CMatrix herm = 0.5 * (g + g.adjoint());
    const double scale = std::max(1e-300, herm.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    worst_pd = std::max(worst_pd, -es.eigenvalues().minCoeff() / scale);

    if (res.rep.dim() != span_rank(c.rep, c.v0)) ++dim_mismatch;

    const Equivalence eq = unitary_equivalence(c.rep, c.v0, res.rep, res.cyclic, 1e-6);
    const CyclicSpan span = cyclic_span(c.rep, c.v0);
    const CMatrix& b = span.vectors;
    const CMatrix iso = (eq.t * b).adjoint() * res.rep.space.full_gram() * (eq.t * b);
    const CMatrix base = b.adjoint() * c.rep.space.full_gram() * b;
    worst_eq = std::max({worst_eq, intertwiner_residual(c.rep, res.rep, eq.t), rel(iso, base)});
    worst_v0 = std::max(worst_v0, (eq.t * c.v0 - res.cyclic).norm() / std::max(1e-300, res.cyclic.norm()));
  }
  const bool ok = worst_pd <= 1e-8 && worst_entry < 1e-9 && dim_mismatch == 0 && worst_eq < 1e-6 && worst_v0 < 1e-6;
  return {ok, std::to_string(cases.size()) + " reps (largest dim " + std::to_string(largest) +
                  "), gram min eigenvalue >= -" + fmt(worst_pd) + "*|G|, gram entry gap " +
                  fmt(worst_entry) + ", dimension mismatches " +
                  std::to_string(dim_mismatch) + ", equivalence residual " + fmt(worst_eq) +
                  ", cyclic vector residual " + fmt(worst_v0)};
}

Outcome support() {
  std::mt19937_64 rng(3011);
  double worst = 0.0;
  long long checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const RandomRep rr = random_rep(seed + 200, {.rank = 1 + static_cast<int>(seed % 2), .max_total_dim = 4,
                                                 .extra_generators = 2});
    const GradedSpace& v = rr.rep.space.space();
    std::vector<GroupWord> groups{GroupWord::generator(0), GroupWord::generator(0, -1) * GroupWord::generator(1)};
    const SampleSet samples = pbw_sample_set(rr.rep.pair, groups, 2);
    for (const Degree& b : v.support()) {
      CVector x = rand_homogeneous(rng, v, b);
      x /= x.norm();
      const RepCoefficient psi(rr.rep, x, x);
      for (const Sample& s : samples) {
        if (s.degree.is_zero()) continue;
        worst = std::max(worst, std::abs(psi(s.element)));
        ++checked;
      }
    }
  }
  return {worst < 1e-10, std::to_string(checked) + " evaluations, max |phi| " + fmt(worst)};
}

Outcome twist_functor() {
  std::mt19937_64 rng(3012);
  int preserved = 0, nontrivial = 0;
  std::set<std::string> flipped;
  double worst_int = 0.0;
  bool exact = true;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const RandomRep rr = random_rep(300 + trial, {.rank = n, .max_total_dim = 4, .extra_generators = 1});
    const UnitaryRep& r = rr.rep;
    std::uniform_int_distribution<unsigned> pick(0, (1u << n) - 1);
    const Character chi(n, pick(rng));
    nontrivial += !chi.is_trivial();
    const UnitaryRep tw = twist_rep(r, chi);

    const Report before = check_unitary_rep(r);
    const Report after = check_unitary_rep(tw);
    bool same = before.checks.size() == after.checks.size();
    for (const Check& c : before.checks) {
      const Check* d = after.find(c.name);
      if (!d || d->passed != c.passed) {
        same = false;
        flipped.insert(c.name);
      }
    }
    preserved += same;

    const CMatrix s = CMatrix::Identity(r.dim(), r.dim()) +
                      0.3 * rand_pattern(rng, r.space.space(), r.space.space(), Degree::zero(n));
    const UnitaryRep r2 = conjugate_rep(r, s, GammaInnerSpace(r.space.space(), transported_grams(r.space, s)));
    worst_int = std::max(worst_int, intertwiner_residual(twist_rep(r, chi), twist_rep(r2, chi), s));

    const UnitaryRep back = twist_rep(tw, chi);
    exact &= back.space.twist() == r.space.twist() && back.space.full_gram() == r.space.full_gram();
    for (std::size_t i = 0; i < r.rho.size(); ++i) exact &= back.rho[i] == r.rho[i];
    for (std::size_t g = 0; g < r.extra_pi.size(); ++g) exact &= back.extra_pi[g] == r.extra_pi[g];
  }
  std::string names;
  for (const std::string& f : flipped) names += (names.empty() ? "" : ", ") + f;
  return {preserved == 10 && worst_int < 1e-9 && exact,
          "verdicts preserved " + std::to_string(preserved) + "/10 (" + std::to_string(nontrivial) +
              " nontrivial characters" + (names.empty() ? "" : "; flipped: " + names) +
              "), intertwiner residual " + fmt(worst_int) + ", double twist " +
              (exact ? "exact" : "not exact")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sign_calculus", 1.0, sign_calculus},
      {2, "lifting_relation", 1.0, lifting},
      {3, "adjoints", 5.0, adjoints},
      {4, "glV_axioms", 30.0, glv_axioms},
      {5, "tensor_positivity", 10.0, tensor_positivity},
      {6, "pbw_confluence", 60.0, pbw},
      {7, "star_monoid", 10.0, star_monoid},
      {8, "stability_roundtrip", 60.0, stability},
      {9, "negative_control", 1.0, negative_control},
      {10, "gns_roundtrip", 120.0, gns_roundtrips},
      {11, "support_condition", 5.0, support},
      {12, "twist_functor", 10.0, twist_functor},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.ok && in_time;
    failures += !ok;
    std::printf("%s %2d %-20s %s [%.2fs of %.0fs%s]\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
