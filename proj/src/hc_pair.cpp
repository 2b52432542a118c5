#include "z2n/hc_pair.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace z2n {

GroupWord::GroupWord(std::vector<GroupLetter> letters) {
  for (const auto& l : letters) {
    if (l.power != 1 && l.power != -1) throw std::invalid_argument("group letter power must be +-1");
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().power == -l.power) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

GroupWord GroupWord::inverse() const {
  std::vector<GroupLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.power = -l.power;
  return GroupWord(std::move(out));
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<GroupLetter> all = letters_;
  all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(std::move(all));
}

double automorphism_residual(const ColorLieAlgebra& l, const RMatrix& a) {
  const int n = l.dim();
  if (a.rows() != n || a.cols() != n) throw std::invalid_argument("Ad matrix has wrong shape");
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (l.degree(k) != l.degree(j)) worst = std::max(worst, std::abs(a(k, j)));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const RVector lhs = a * l.bracket(l.basis_vector(i), l.basis_vector(j));
      const RVector rhs = l.bracket(RVector(a.col(i)), RVector(a.col(j)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

HCPair::HCPair(ColorLieAlgebra algebra, std::vector<ExtraGenerator> extras,
               std::vector<double> exp_times)
    : algebra_(std::move(algebra)), exp_times_(std::move(exp_times)) {
  const int n = algebra_.dim();
  for (auto& e : extras) {
    const double res = automorphism_residual(algebra_, e.ad);
    if (!(res <= 1e-9)) {
      throw std::invalid_argument("extra generator '" + e.label +
                                  "': Ad is not a degree-preserving bracket automorphism "
                                  "(residual " + std::to_string(res) + ")");
    }
    Eigen::FullPivLU<RMatrix> lu(e.ad);
    if (!lu.isInvertible()) {
      throw std::invalid_argument("extra generator '" + e.label + "': Ad is not invertible");
    }
    GroupGenerator g;
    g.label = e.label;
    g.kind = GroupGenerator::Kind::Extra;
    g.ad = e.ad;
    g.ad_inverse = lu.inverse();
    generators_.push_back(std::move(g));
  }
  num_extra_ = static_cast<int>(generators_.size());
  const Degree zero = Degree::zero(algebra_.rank());
  const auto [lo, hi] = algebra_.sector_range(zero);
  for (int i = lo; i < hi; ++i) {
    const RMatrix adx = algebra_.ad_matrix(algebra_.basis_vector(i));
    for (double t : exp_times_) {
      GroupGenerator g;
      std::ostringstream os;
      os << "exp(" << t << "*" << algebra_.label(i) << ")";
      g.label = os.str();
      g.kind = GroupGenerator::Kind::Exponential;
      g.basis_index = i;
      g.t = t;
      g.ad = (t * adx).exp();
      g.ad_inverse = (-t * adx).exp();
      generators_.push_back(std::move(g));
    }
  }
  (void)n;
}

int HCPair::exp_generator(int basis_index, double t) const {
  for (int g = num_extra_; g < static_cast<int>(generators_.size()); ++g) {
    if (generators_[g].basis_index == basis_index && generators_[g].t == t) return g;
  }
  throw std::out_of_range("no exponential generator for basis element " +
                          std::to_string(basis_index) + " at t = " + std::to_string(t));
}

std::vector<int> HCPair::sample_generators(const std::vector<double>& times) const {
  std::vector<int> out;
  for (int g = 0; g < num_extra_; ++g) out.push_back(g);
  for (int g = num_extra_; g < static_cast<int>(generators_.size()); ++g) {
    for (double t : times) {
      if (generators_[g].t == t) out.push_back(g);
    }
  }
  return out;
}

RMatrix HCPair::ad(const GroupWord& g) const {
  const int n = algebra_.dim();
  RMatrix m = RMatrix::Identity(n, n);
  for (const auto& l : g.letters()) {
    const auto& gen = generators_.at(l.generator);
    m = m * (l.power > 0 ? gen.ad : gen.ad_inverse);
  }
  return m;
}

std::string HCPair::label(const GroupWord& g) const {
  if (g.is_identity()) return "1";
  std::string s;
  for (const auto& l : g.letters()) {
    if (!s.empty()) s += "*";
    s += generators_.at(l.generator).label;
    if (l.power < 0) s += "^-1";
  }
  return s;
}

}  // namespace z2n
