#pragma once

// JSON documents for algebras, pairs, representations, tables and reports.
// Every document carries "schema" and "rank"; complex numbers are [re, im].

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "z2n/color_lie.hpp"
#include "z2n/gns.hpp"
#include "z2n/hc_rep.hpp"
#include "z2n/report.hpp"

namespace z2n::io {

using json = nlohmann::json;

inline constexpr const char* kAlgebraSchema = "z2n.algebra/1";
inline constexpr const char* kPairSchema = "z2n.pair/1";
inline constexpr const char* kRepSchema = "z2n.rep/1";
inline constexpr const char* kPreRepSchema = "z2n.prerep/1";
inline constexpr const char* kTableSchema = "z2n.table/1";
inline constexpr const char* kReportSchema = "z2n.report/1";

/// Malformed or inconsistent input.  The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& field);
json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j, const std::string& field);
json rmatrix_to_json(const RMatrix& m);
RMatrix rmatrix_from_json(const json& j, const std::string& field);
json cvector_to_json(const CVector& v);
CVector cvector_from_json(const json& j, const std::string& field);
json degree_to_json(const Degree& a);
Degree degree_from_json(const json& j, int rank, const std::string& field);

json algebra_to_json(const ColorLieAlgebra& l);
/// Throws InputError on schema violations and, when validate is set, on
/// axiom failures (the report text pinpoints the triple).
ColorLieAlgebra algebra_from_json(const json& doc, bool validate = true);
ColorLieAlgebra load_algebra(const std::filesystem::path& path, bool validate = true);

json pair_to_json(const HCPair& pair);
HCPair pair_from_json(const json& doc, bool validate = true);

struct LoadedRep {
  Representation rep;
  std::optional<CVector> cyclic;
};

/// Unitary representations use kRepSchema; kPreRepSchema allows null rho
/// entries for undefined basis elements.
json rep_to_json(const Representation& r, const std::optional<CVector>& cyclic = std::nullopt,
                 bool partial = false);
LoadedRep rep_from_json(const json& doc, bool validate = true);
LoadedRep load_rep(const std::filesystem::path& path, bool validate = true);

json table_to_json(const TableFunction& t);
TableFunction table_from_json(const json& doc, bool validate = true);

json report_to_json(const Report& r, int rank);

}  // namespace z2n::io
