#include "z2n/enveloping.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace z2n {

LevelCapExceeded::LevelCapExceeded(int length, int cap)
    : std::runtime_error("word of length " + std::to_string(length) + " exceeds level cap " +
                         std::to_string(cap)) {}

EnvElement EnvElement::one() { return monomial({}); }

EnvElement EnvElement::generator(int i) { return monomial({i}); }

EnvElement EnvElement::monomial(Word w, cplx c) {
  EnvElement e;
  e.add(w, c);
  return e;
}

int EnvElement::level() const {
  int out = 0;
  for (const auto& [w, c] : terms_) out = std::max(out, static_cast<int>(w.size()));
  return out;
}

cplx EnvElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? cplx{} : it->second;
}

void EnvElement::add(const Word& w, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kEnvPruneTol) terms_.erase(it);
}

EnvElement EnvElement::operator+(const EnvElement& rhs) const {
  EnvElement out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add(w, c);
  return out;
}

EnvElement EnvElement::operator-(const EnvElement& rhs) const { return *this + rhs * cplx{-1.0}; }

EnvElement EnvElement::operator*(cplx c) const {
  EnvElement out;
  for (const auto& [w, v] : terms_) out.add(w, v * c);
  return out;
}

double EnvElement::distance(const EnvElement& rhs) const {
  double worst = 0.0;
  for (const auto& [w, c] : terms_) worst = std::max(worst, std::abs(c - rhs.coefficient(w)));
  for (const auto& [w, c] : rhs.terms_) {
    if (!terms_.contains(w)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

Degree word_degree(const ColorLieAlgebra& l, const Word& w) {
  Degree d = Degree::zero(l.rank());
  for (int i : w) d = d * l.degree(i);
  return d;
}

std::optional<Degree> env_degree(const ColorLieAlgebra& l, const EnvElement& d) {
  std::optional<Degree> out;
  for (const auto& [w, c] : d.terms()) {
    const Degree dw = word_degree(l, w);
    if (out && *out != dw) return std::nullopt;
    out = dw;
  }
  return out ? out : std::optional<Degree>(Degree::zero(l.rank()));
}

namespace {

bool reducible_at(const ColorLieAlgebra& l, const Word& w, std::size_t k) {
  if (w[k] > w[k + 1]) return true;
  return w[k] == w[k + 1] && beta(l.degree(w[k]), l.degree(w[k])).negative();
}

class Normalizer {
 public:
  Normalizer(const ColorLieAlgebra& l, RewriteStrategy s) : l_(l), strategy_(s) {}

  const EnvElement& operator()(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    EnvElement out = compute(w);
    return memo_.emplace(w, std::move(out)).first->second;
  }

 private:
  EnvElement compute(const Word& w) {
    for (int i : w) {
      if (i < 0 || i >= l_.dim()) throw std::out_of_range("word letter out of range");
    }
    std::optional<std::size_t> pos;
    if (w.size() >= 2) {
      if (strategy_ == RewriteStrategy::LeftmostInnermost) {
        for (std::size_t k = 0; k + 1 < w.size() && !pos; ++k) {
          if (reducible_at(l_, w, k)) pos = k;
        }
      } else {
        for (std::size_t k = w.size() - 1; k-- > 0 && !pos;) {
          if (reducible_at(l_, w, k)) pos = k;
        }
      }
    }
    if (!pos) return EnvElement::monomial(w);
    const std::size_t k = *pos;
    const int j = w[k], i = w[k + 1];
    EnvElement out;
    auto contracted = [&](int m) {
      Word c(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      c.push_back(m);
      c.insert(c.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
      return c;
    };
    if (j == i) {
      // x x = 1/2 [x, x] when beta(a, a) = -1
      for (const auto& [m, c] : l_.bracket_of_basis(j, i)) {
        const EnvElement& sub = (*this)(contracted(m));
        for (const auto& [u, v] : sub.terms()) out.add(u, 0.5 * c * v);
      }
      return out;
    }
    // x_j x_i = beta x_i x_j + [x_j, x_i]
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    const double b = beta(l_.degree(j), l_.degree(i)).value();
    {
      const EnvElement& sub = (*this)(swapped);
      for (const auto& [u, v] : sub.terms()) out.add(u, b * v);
    }
    for (const auto& [m, c] : l_.bracket_of_basis(j, i)) {
      const EnvElement& sub = (*this)(contracted(m));
      for (const auto& [u, v] : sub.terms()) out.add(u, c * v);
    }
    return out;
  }

  const ColorLieAlgebra& l_;
  RewriteStrategy strategy_;
  std::map<Word, EnvElement> memo_;
};

void check_cap(const Word& w, const EnvOptions& opt) {
  if (static_cast<int>(w.size()) > opt.level_cap) {
    throw LevelCapExceeded(static_cast<int>(w.size()), opt.level_cap);
  }
}

}  // namespace

bool is_pbw(const ColorLieAlgebra& l, const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (reducible_at(l, w, k)) return false;
  }
  return true;
}

EnvElement normal_form(const ColorLieAlgebra& l, const Word& w, const EnvOptions& opt) {
  check_cap(w, opt);
  Normalizer nf(l, opt.strategy);
  return nf(w);
}

EnvElement normalize(const ColorLieAlgebra& l, const EnvElement& d, const EnvOptions& opt) {
  Normalizer nf(l, opt.strategy);
  EnvElement out;
  for (const auto& [w, c] : d.terms()) {
    check_cap(w, opt);
    for (const auto& [u, v] : nf(w).terms()) out.add(u, c * v);
  }
  return out;
}

EnvElement env_mul(const ColorLieAlgebra& l, const EnvElement& d1, const EnvElement& d2,
                   const EnvOptions& opt) {
  EnvElement raw;
  for (const auto& [w1, c1] : d1.terms()) {
    for (const auto& [w2, c2] : d2.terms()) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      raw.add(w, c1 * c2);
    }
  }
  return normalize(l, raw, opt);
}

cplx star_scalar(const Degree& a, const std::optional<Character>& twist) {
  return -std::conj(to_complex(alpha(a, twist)));
}

EnvElement env_star(const ColorLieAlgebra& l, const EnvElement& d, const EnvOptions& opt) {
  EnvElement raw;
  for (const auto& [w, c] : d.terms()) {
    cplx scale = std::conj(c);
    for (int i : w) scale *= star_scalar(l.degree(i), opt.twist);
    raw.add(Word(w.rbegin(), w.rend()), scale);
  }
  return normalize(l, raw, opt);
}

EnvElement env_ad(const ColorLieAlgebra& l, const RMatrix& ad, const EnvElement& d,
                  const EnvOptions& opt) {
  if (ad.rows() != l.dim() || ad.cols() != l.dim()) {
    throw std::invalid_argument("env_ad: matrix shape does not match the algebra");
  }
  EnvElement raw;
  Word cur;
  for (const auto& [w, c] : d.terms()) {
    // multilinear expansion of prod_k (sum_m ad(m, w_k) x_m)
    auto expand = [&](auto&& self, std::size_t pos, cplx coeff) -> void {
      if (pos == w.size()) {
        raw.add(cur, coeff);
        return;
      }
      for (int m = 0; m < l.dim(); ++m) {
        const double a = ad(m, w[pos]);
        if (a == 0.0) continue;
        cur.push_back(m);
        self(self, pos + 1, coeff * a);
        cur.pop_back();
      }
    };
    expand(expand, 0, c);
  }
  return normalize(l, raw, opt);
}

EnvElement env_ad(const HCPair& pair, const GroupWord& g, const EnvElement& d,
                  const EnvOptions& opt) {
  if (g.is_identity()) return normalize(pair.algebra(), d, opt);
  return env_ad(pair.algebra(), pair.ad(g), d, opt);
}

MonoidElement s_mul(const HCPair& pair, const MonoidElement& s1, const MonoidElement& s2,
                    const EnvOptions& opt) {
  const EnvElement moved = env_ad(pair, s2.group.inverse(), s1.env, opt);
  return {s1.group * s2.group, env_mul(pair.algebra(), moved, s2.env, opt)};
}

MonoidElement s_star(const HCPair& pair, const MonoidElement& s, const EnvOptions& opt) {
  return {s.group.inverse(), env_ad(pair, s.group, env_star(pair.algebra(), s.env, opt), opt)};
}

double monoid_distance(const MonoidElement& a, const MonoidElement& b) {
  if (a.group != b.group) return std::numeric_limits<double>::infinity();
  return a.env.distance(b.env);
}

}  // namespace z2n
