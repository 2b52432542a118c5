#include "z2n/io.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace z2n::io {

namespace {

const json& need(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw InputError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(ctx + "." + key + ": missing field");
  return *it;
}

void expect_schema(const json& doc, const std::string& want, const std::string& ctx) {
  const json& s = need(doc, "schema", ctx);
  if (!s.is_string() || s.get<std::string>() != want) {
    throw InputError(ctx + ".schema: expected \"" + want + "\"");
  }
}

int read_rank(const json& doc, const std::string& ctx) {
  const json& r = need(doc, "rank", ctx);
  if (!r.is_number_integer() || r.get<int>() < 1 || r.get<int>() > 16) {
    throw InputError(ctx + ".rank: expected an integer in [1, 16]");
  }
  return r.get<int>();
}

double read_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field + ": expected a number");
  return j.get<double>();
}

std::string read_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw InputError(field + ": expected a string");
  return j.get<std::string>();
}

int lookup(const ColorLieAlgebra& l, const std::string& label) {
  for (int i = 0; i < l.dim(); ++i) {
    if (l.label(i) == label) return i;
  }
  return -1;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": parse error: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write");
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Numbers and matrices

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(field + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw InputError(rf + ": expected a row of length " + std::to_string(cols));
    }
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k], rf + "[" + std::to_string(k) + "]");
  }
  return m;
}

json rmatrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix rmatrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw InputError(rf + ": expected a row of length " + std::to_string(cols));
    }
    for (int k = 0; k < cols; ++k) m(i, k) = read_number(j[i][k], rf + "[" + std::to_string(k) + "]");
  }
  return m;
}

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector cvector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array");
  CVector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<int>(i)) = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json degree_to_json(const Degree& a) { return a.bits(); }

Degree degree_from_json(const json& j, int rank, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank) {
    throw InputError(field + ": expected " + std::to_string(rank) + " entries in {0, 1}");
  }
  std::vector<int> bits;
  for (const auto& b : j) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
      throw InputError(field + ": expected " + std::to_string(rank) + " entries in {0, 1}");
    }
    bits.push_back(b.get<int>());
  }
  return Degree::from_bits(bits);
}

// ---------------------------------------------------------------------------
// Algebras and pairs

json algebra_to_json(const ColorLieAlgebra& l) {
  json basis = json::array();
  for (const auto& b : l.basis()) basis.push_back({{"label", b.label}, {"degree", degree_to_json(b.degree)}});
  json brackets = json::array();
  for (const auto& c : l.constants()) {
    brackets.push_back({{"i", l.label(c.i)}, {"j", l.label(c.j)}, {"k", l.label(c.k)}, {"value", c.value}});
  }
  return {{"schema", kAlgebraSchema}, {"rank", l.rank()}, {"basis", basis}, {"brackets", brackets}};
}

ColorLieAlgebra algebra_from_json(const json& doc, bool validate) {
  const std::string ctx = "algebra";
  expect_schema(doc, kAlgebraSchema, ctx);
  const int rank = read_rank(doc, ctx);
  const json& basis = need(doc, "basis", ctx);
  if (!basis.is_array()) throw InputError(ctx + ".basis: expected an array");
  std::vector<BasisElement> elems;
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string f = ctx + ".basis[" + std::to_string(i) + "]";
    const std::string label = read_string(need(basis[i], "label", f), f + ".label");
    if (label.empty()) throw InputError(f + ".label: empty");
    if (index.contains(label)) throw InputError(f + ".label: duplicate \"" + label + "\"");
    index[label] = static_cast<int>(i);
    elems.push_back({label, degree_from_json(need(basis[i], "degree", f), rank, f + ".degree")});
  }
  std::vector<StructureConstant> constants;
  if (doc.contains("brackets")) {
    const json& br = doc["brackets"];
    if (!br.is_array()) throw InputError(ctx + ".brackets: expected an array");
    for (std::size_t t = 0; t < br.size(); ++t) {
      const std::string f = ctx + ".brackets[" + std::to_string(t) + "]";
      auto idx = [&](const char* key) {
        const std::string label = read_string(need(br[t], key, f), f + "." + key);
        auto it = index.find(label);
        if (it == index.end()) throw InputError(f + "." + key + ": unknown label \"" + label + "\"");
        return it->second;
      };
      constants.push_back({idx("i"), idx("j"), idx("k"), read_number(need(br[t], "value", f), f + ".value")});
    }
  }
  ColorLieAlgebra l(rank, std::move(elems), constants);
  if (validate) {
    const Report r = check_axioms(l);
    if (!r.passed()) throw InputError(ctx + ": axiom check failed\n" + r.text());
  }
  return l;
}

ColorLieAlgebra load_algebra(const std::filesystem::path& path, bool validate) {
  return algebra_from_json(read_json(path), validate);
}

json pair_to_json(const HCPair& pair) {
  json extras = json::array();
  for (int g = 0; g < pair.num_extra(); ++g) {
    const auto& gen = pair.generators()[g];
    extras.push_back({{"label", gen.label}, {"ad", rmatrix_to_json(gen.ad)}});
  }
  return {{"schema", kPairSchema},
          {"rank", pair.algebra().rank()},
          {"algebra", algebra_to_json(pair.algebra())},
          {"extra_generators", extras},
          {"exp_times", pair.exp_times()}};
}

HCPair pair_from_json(const json& doc, bool validate) {
  const std::string ctx = "pair";
  expect_schema(doc, kPairSchema, ctx);
  const int rank = read_rank(doc, ctx);
  ColorLieAlgebra l = algebra_from_json(need(doc, "algebra", ctx), validate);
  if (l.rank() != rank) throw InputError(ctx + ".algebra.rank: differs from pair rank");
  std::vector<ExtraGenerator> extras;
  if (doc.contains("extra_generators")) {
    const json& ex = doc["extra_generators"];
    if (!ex.is_array()) throw InputError(ctx + ".extra_generators: expected an array");
    for (std::size_t g = 0; g < ex.size(); ++g) {
      const std::string f = ctx + ".extra_generators[" + std::to_string(g) + "]";
      const RMatrix ad = rmatrix_from_json(need(ex[g], "ad", f), f + ".ad");
      if (ad.rows() != l.dim() || ad.cols() != l.dim()) {
        throw InputError(f + ".ad: expected a " + std::to_string(l.dim()) + "x" + std::to_string(l.dim()) +
                         " matrix");
      }
      extras.push_back({read_string(need(ex[g], "label", f), f + ".label"), ad});
    }
  }
  std::vector<double> times = kDefaultExpTimes;
  if (doc.contains("exp_times")) {
    times.clear();
    for (const auto& t : doc["exp_times"]) times.push_back(read_number(t, ctx + ".exp_times"));
  }
  try {
    return HCPair(std::move(l), std::move(extras), times);
  } catch (const std::invalid_argument& e) {
    throw InputError(ctx + ".extra_generators: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Representations

json rep_to_json(const Representation& r, const std::optional<CVector>& cyclic, bool partial) {
  const GammaInnerSpace& h = r.space;
  json grams = json::array();
  for (const CMatrix& g : h.grams()) grams.push_back(cmatrix_to_json(g));
  json space = {{"dims", h.space().dims()},
                {"gram", grams},
                {"twist_mask", h.twist() ? h.twist()->mask() : 0u}};
  json rho = json::array();
  const ColorLieAlgebra& l = r.pair.algebra();
  for (int i = 0; i < l.dim(); ++i) {
    rho.push_back({{"label", l.label(i)},
                   {"matrix", r.defined(i) && r.rho[i].size() > 0 ? cmatrix_to_json(r.rho[i]) : json(nullptr)}});
  }
  json pis = json::array();
  for (const CMatrix& p : r.extra_pi) pis.push_back(cmatrix_to_json(p));
  json doc = {{"schema", partial ? kPreRepSchema : kRepSchema},
              {"rank", l.rank()},
              {"pair", pair_to_json(r.pair)},
              {"space", space},
              {"rho", rho},
              {"extra_pi", pis}};
  if (cyclic) doc["cyclic_vector"] = cvector_to_json(*cyclic);
  return doc;
}

LoadedRep rep_from_json(const json& doc, bool validate) {
  const std::string ctx = "rep";
  const std::string schema = read_string(need(doc, "schema", ctx), ctx + ".schema");
  if (schema != kRepSchema && schema != kPreRepSchema) {
    throw InputError(ctx + ".schema: expected \"" + std::string(kRepSchema) + "\" or \"" + kPreRepSchema +
                     "\"");
  }
  const bool partial = schema == kPreRepSchema;
  const int rank = read_rank(doc, ctx);
  HCPair pair = pair_from_json(need(doc, "pair", ctx), validate);
  if (pair.algebra().rank() != rank) throw InputError(ctx + ".pair.rank: differs from rep rank");

  const json& sp = need(doc, "space", ctx);
  const json& dims_j = need(sp, "dims", ctx + ".space");
  if (!dims_j.is_array() || dims_j.size() != (std::size_t{1} << rank)) {
    throw InputError(ctx + ".space.dims: expected " + std::to_string(1 << rank) + " entries");
  }
  std::vector<int> dims;
  for (const auto& d : dims_j) {
    if (!d.is_number_integer() || d.get<int>() < 0) throw InputError(ctx + ".space.dims: expected nonnegative integers");
    dims.push_back(d.get<int>());
  }
  const GradedSpace v(rank, dims);
  std::vector<CMatrix> grams;
  if (sp.contains("gram")) {
    const json& gj = sp["gram"];
    if (!gj.is_array() || gj.size() != dims.size()) {
      throw InputError(ctx + ".space.gram: expected one matrix per degree");
    }
    for (std::size_t c = 0; c < dims.size(); ++c) {
      const std::string f = ctx + ".space.gram[" + std::to_string(c) + "]";
      CMatrix g = cmatrix_from_json(gj[c], f);
      if (dims[c] == 0 && g.size() == 0) g.resize(0, 0);
      if (g.rows() != dims[c] || g.cols() != dims[c]) {
        throw InputError(f + ": expected a " + std::to_string(dims[c]) + "x" + std::to_string(dims[c]) + " matrix");
      }
      grams.push_back(std::move(g));
    }
  } else {
    for (int d : dims) grams.push_back(CMatrix::Identity(d, d));
  }
  std::optional<Character> twist;
  if (sp.contains("twist_mask")) {
    const json& m = sp["twist_mask"];
    if (!m.is_number_integer() || m.get<long long>() < 0 || m.get<long long>() >= (1ll << rank)) {
      throw InputError(ctx + ".space.twist_mask: expected an integer below 2^rank");
    }
    if (m.get<unsigned>() != 0) twist = Character(rank, m.get<unsigned>());
  }
  GammaInnerSpace space;
  try {
    space = GammaInnerSpace(v, grams, twist);
  } catch (const std::exception& e) {
    throw InputError(ctx + ".space.gram: " + e.what());
  }

  const int d = v.total_dim();
  const ColorLieAlgebra& l = pair.algebra();
  std::vector<CMatrix> rho(l.dim());
  std::vector<bool> seen(l.dim(), false);
  const json& rj = need(doc, "rho", ctx);
  if (!rj.is_array()) throw InputError(ctx + ".rho: expected an array");
  for (std::size_t t = 0; t < rj.size(); ++t) {
    const std::string f = ctx + ".rho[" + std::to_string(t) + "]";
    const std::string label = read_string(need(rj[t], "label", f), f + ".label");
    const int i = lookup(l, label);
    if (i < 0) throw InputError(f + ".label: unknown basis element \"" + label + "\"");
    if (seen[i]) throw InputError(f + ".label: duplicate \"" + label + "\"");
    seen[i] = true;
    const json& mj = need(rj[t], "matrix", f);
    if (mj.is_null()) {
      if (!partial) throw InputError(f + ".matrix: null is only allowed in " + kPreRepSchema);
      continue;
    }
    CMatrix m = cmatrix_from_json(mj, f + ".matrix");
    if (d == 0 && m.size() == 0) m.resize(0, 0);
    if (m.rows() != d || m.cols() != d) {
      throw InputError(f + ".matrix: expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    rho[i] = std::move(m);
  }
  for (int i = 0; i < l.dim(); ++i) {
    if (!seen[i] && !partial) throw InputError(ctx + ".rho: missing entry for \"" + l.label(i) + "\"");
  }

  std::vector<CMatrix> pis;
  const json empty = json::array();
  const json& pj = doc.contains("extra_pi") ? doc["extra_pi"] : empty;
  if (!pj.is_array() || static_cast<int>(pj.size()) != pair.num_extra()) {
    throw InputError(ctx + ".extra_pi: expected " + std::to_string(pair.num_extra()) + " matrices");
  }
  for (std::size_t g = 0; g < pj.size(); ++g) {
    const std::string f = ctx + ".extra_pi[" + std::to_string(g) + "]";
    CMatrix m = cmatrix_from_json(pj[g], f);
    if (m.rows() != d || m.cols() != d) {
      throw InputError(f + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    pis.push_back(std::move(m));
  }

  LoadedRep out{Representation{std::move(pair), std::move(space), std::move(rho), std::move(pis)},
                std::nullopt};
  if (doc.contains("cyclic_vector")) {
    CVector c = cvector_from_json(doc["cyclic_vector"], ctx + ".cyclic_vector");
    if (c.size() != d) throw InputError(ctx + ".cyclic_vector: expected " + std::to_string(d) + " entries");
    out.cyclic = std::move(c);
  }
  return out;
}

LoadedRep load_rep(const std::filesystem::path& path, bool validate) {
  return rep_from_json(read_json(path), validate);
}

// ---------------------------------------------------------------------------
// Tables and reports

json table_to_json(const TableFunction& t) {
  const HCPair& pair = t.pair();
  const ColorLieAlgebra& l = pair.algebra();
  json entries = json::array();
  for (const auto& [key, value] : t.values()) {
    json group = json::array();
    for (const auto& letter : key.first.letters()) {
      group.push_back(json::array({pair.generators()[letter.generator].label, letter.power}));
    }
    json word = json::array();
    for (int i : key.second) word.push_back(l.label(i));
    entries.push_back({{"group", group}, {"word", word}, {"value", complex_to_json(value)}});
  }
  return {{"schema", kTableSchema},
          {"rank", l.rank()},
          {"pair", pair_to_json(pair)},
          {"twist_mask", t.twist() ? t.twist()->mask() : 0u},
          {"entries", entries}};
}

TableFunction table_from_json(const json& doc, bool validate) {
  const std::string ctx = "table";
  expect_schema(doc, kTableSchema, ctx);
  const int rank = read_rank(doc, ctx);
  HCPair pair = pair_from_json(need(doc, "pair", ctx), validate);
  if (pair.algebra().rank() != rank) throw InputError(ctx + ".pair.rank: differs from table rank");
  const ColorLieAlgebra& l = pair.algebra();
  std::map<std::string, int> gen_index;
  for (std::size_t g = 0; g < pair.generators().size(); ++g) gen_index[pair.generators()[g].label] = static_cast<int>(g);

  std::optional<Character> twist;
  if (doc.contains("twist_mask")) {
    const json& m = doc["twist_mask"];
    if (!m.is_number_integer() || m.get<long long>() < 0 || m.get<long long>() >= (1ll << rank)) {
      throw InputError(ctx + ".twist_mask: expected an integer below 2^rank");
    }
    if (m.get<unsigned>() != 0) twist = Character(rank, m.get<unsigned>());
  }
  std::map<TableFunction::Key, cplx> values;
  const json& ej = need(doc, "entries", ctx);
  if (!ej.is_array()) throw InputError(ctx + ".entries: expected an array");
  for (std::size_t t = 0; t < ej.size(); ++t) {
    const std::string f = ctx + ".entries[" + std::to_string(t) + "]";
    std::vector<GroupLetter> letters;
    const json& gj = need(ej[t], "group", f);
    if (!gj.is_array()) throw InputError(f + ".group: expected an array of [label, power]");
    for (const auto& lt : gj) {
      if (!lt.is_array() || lt.size() != 2 || !lt[0].is_string() || !lt[1].is_number_integer() ||
          std::abs(lt[1].get<int>()) != 1) {
        throw InputError(f + ".group: expected [label, +1 or -1] letters");
      }
      auto it = gen_index.find(lt[0].get<std::string>());
      if (it == gen_index.end()) throw InputError(f + ".group: unknown generator \"" + lt[0].get<std::string>() + "\"");
      letters.push_back({it->second, lt[1].get<int>()});
    }
    Word w;
    const json& wj = need(ej[t], "word", f);
    if (!wj.is_array()) throw InputError(f + ".word: expected an array of labels");
    for (const auto& x : wj) {
      const std::string label = read_string(x, f + ".word");
      const int i = lookup(l, label);
      if (i < 0) throw InputError(f + ".word: unknown basis element \"" + label + "\"");
      w.push_back(i);
    }
    if (!is_pbw(l, w)) throw InputError(f + ".word: not a PBW monomial in canonical order");
    values[{GroupWord(letters), w}] = complex_from_json(need(ej[t], "value", f), f + ".value");
  }
  return TableFunction(std::move(pair), std::move(values), twist);
}

json report_to_json(const Report& r, int rank) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", number(c.residual)},
                      {"tolerance", number(c.tolerance)},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  return {{"schema", kReportSchema},
          {"rank", rank},
          {"operation", r.operation},
          {"passed", r.passed()},
          {"checks", checks},
          {"notes", r.notes}};
}

}  // namespace z2n::io
