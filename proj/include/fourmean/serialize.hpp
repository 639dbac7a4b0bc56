#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourmean/extremal.hpp"
#include "fourmean/matrix.hpp"
#include "fourmean/pseudospectra.hpp"
#include "fourmean/tuples.hpp"

namespace fourmean {

using json = nlohmann::json;

// Every CLI output embeds the manifest that produced it; identical manifests
// reproduce identical bytes.
struct RunManifest {
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
};

inline void to_json(json& j, const RunManifest& m) {
  j = json{{"command", m.command},
           {"config", m.config},
           {"seed", m.seed},
           {"tool_version", m.tool_version},
           {"timestamp", m.timestamp}};
}

inline void from_json(const json& j, RunManifest& m) {
  j.at("command").get_to(m.command);
  m.config = j.at("config");
  j.at("seed").get_to(m.seed);
  j.at("tool_version").get_to(m.tool_version);
  j.at("timestamp").get_to(m.timestamp);
}

// --- tuples ----------------------------------------------------------------

inline void to_json(json& j, const NonnegTuple& t) { j = t.values(); }

inline void from_json(const json& j, NonnegTuple& t) {
  t = NonnegTuple(j.get<std::vector<double>>());
}

inline void to_json(json& j, const MeanSignature& s) {
  j = json{{"n", s.n}, {"sum", s.s}, {"product", s.p}, {"codim1", s.e}};
}

inline void from_json(const json& j, MeanSignature& s) {
  j.at("n").get_to(s.n);
  j.at("sum").get_to(s.s);
  j.at("product").get_to(s.p);
  j.at("codim1").get_to(s.e);
}

inline void to_json(json& j, const BoundVerdict& v) {
  j = json{{"level", v.level}, {"bound", v.bound}, {"ratio", v.ratio},
           {"status", to_string(v.status)}};
}

// --- matrices and polynomials ----------------------------------------------

inline void to_json(json& j, const ComplexMatrix& m) {
  std::vector<double> re, im;
  re.reserve(m.entries().size());
  im.reserve(m.entries().size());
  for (const cdouble& v : m.entries()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j = json{{"n", m.size()}, {"re", re}, {"im", im}};
}

inline void from_json(const json& j, ComplexMatrix& m) {
  const int n = j.at("n").get<int>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw std::invalid_argument("ComplexMatrix json: re/im length mismatch");
  std::vector<cdouble> entries(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) entries[i] = cdouble(re[i], im[i]);
  m = ComplexMatrix(n, std::move(entries));
}

inline void to_json(json& j, const Polynomial& p) {
  j = json::array();
  for (const cdouble& c : p.coeffs()) j.push_back(json::array({c.real(), c.imag()}));
}

inline void from_json(const json& j, Polynomial& p) {
  std::vector<cdouble> coeffs;
  for (const auto& pair : j) coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  p = Polynomial(std::move(coeffs));
}

// --- extremal --------------------------------------------------------------

inline void to_json(json& j, const ExtremalResult& r) {
  j = json{{"value", r.value},
           {"witness_x", r.witness_x},
           {"witness_y", r.witness_y},
           {"method", to_string(r.method)},
           {"certificate", r.certificate},
           {"expected", r.expected},
           {"certified", r.certified}};
}

inline void to_json(json& j, const CandidateProfile& p) {
  j = json{{"x1", p.x1}, {"u", p.u}, {"v", p.v}, {"r", p.r}, {"n", p.n}};
}

inline void to_json(json& j, const FLemmaReport& r) {
  j = json{{"n", r.n},
           {"f_at_1", r.f_at_1},
           {"df_at_1", r.df_at_1},
           {"ddf_at_1", r.ddf_at_1},
           {"dddf_at_1", r.dddf_at_1},
           {"descartes_count", r.descartes_count},
           {"quotient", r.quotient},
           {"max_division_remainder", r.max_division_remainder},
           {"quotient_sign_changes", r.quotient_sign_changes},
           {"sturm_positive_roots", r.sturm_positive_roots},
           {"pass", r.pass},
           {"detail", r.detail}};
}

inline void to_json(json& j, const GLemmaReport& r) {
  json violations = json::array();
  for (const GLemmaViolation& v : r.violations)
    violations.push_back(json{{"u", v.u}, {"v", v.v}, {"value", v.value}, {"kind", v.kind}});
  j = json{{"n", r.n},
           {"r", r.r},
           {"mesh", r.mesh},
           {"min_interior", r.min_interior},
           {"min_diag", r.min_diag},
           {"max_abs_diag", r.max_abs_diag},
           {"min_dv", r.min_dv},
           {"diag_identically_zero", r.diag_identically_zero},
           {"violations", violations},
           {"pass", r.pass}};
}

// --- pseudospectra ----------------------------------------------------------

inline void to_json(json& j, const SuperIdenticalReport& r) {
  j = json{{"num_points", r.num_points},
           {"max_scaled_deviation", r.max_scaled_deviation},
           {"worst_point", json::array({r.worst_point.real(), r.worst_point.imag()})},
           {"mode", r.mode == CertificateMode::singular_values ? "singular_values" : "gram_coeffs"},
           {"tol", r.tol},
           {"pass", r.pass}};
}

inline void to_json(json& j, const MeanIdentityReport& r) {
  j = json{{"sig_a", r.sig_a},
           {"sig_b", r.sig_b},
           {"sum_residual", r.sum_residual},
           {"prod_residual", r.prod_residual},
           {"codim1_residual", r.codim1_residual},
           {"tol", r.tol},
           {"pass", r.pass}};
}

inline void to_json(json& j, const NormBoundReport& r) {
  j = json{{"norm_a", r.norm_a},   {"norm_b", r.norm_b},       {"ratio", r.ratio},
           {"reciprocal", r.reciprocal}, {"bound", r.bound},   {"zero_case", r.zero_case},
           {"tol", r.tol},         {"pass", r.pass}};
}

inline void to_json(json& j, const SquareRatioReport& r) {
  j = json{{"r1", r.r1},
           {"r2", r.r2},
           {"expected_r1", r.expected_r1},
           {"expected_r2", r.expected_r2},
           {"max_ratio_deviation", r.max_ratio_deviation},
           {"max_closed_form_deviation", r.max_closed_form_deviation},
           {"pass", r.pass}};
}

inline void to_json(json& j, const SimilarityBound& b) {
  j = json{{"lower", b.lower},
           {"achieving_poly", b.achieving_poly},
           {"achieving_index", b.achieving_index},
           {"rank_mismatch", b.rank_mismatch}};
}

inline void to_json(json& j, const GridSpec& g) {
  j = json{{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
           {"im_max", g.im_max}, {"nx", g.nx},         {"ny", g.ny},
           {"eps_levels", g.eps_levels}};
}

inline void from_json(const json& j, GridSpec& g) {
  j.at("re_min").get_to(g.re_min);
  j.at("re_max").get_to(g.re_max);
  j.at("im_min").get_to(g.im_min);
  j.at("im_max").get_to(g.im_max);
  j.at("nx").get_to(g.nx);
  j.at("ny").get_to(g.ny);
  if (j.contains("eps_levels")) j.at("eps_levels").get_to(g.eps_levels);
  g.validate();
}

inline void to_json(json& j, const ContourDataset& d) {
  json segments = json::array();
  for (const ContourSegment& s : d.segments)
    segments.push_back(json::array({s.x1, s.y1, s.x2, s.y2}));
  j = json{{"eps", d.eps}, {"nx", d.nx}, {"ny", d.ny}, {"mask", d.mask}, {"segments", segments}};
}

// --- field CSV ---------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Columns: re, im, s1..sn; rows im-major ascending. The manifest rides along
// as a leading comment line.
inline std::string field_to_csv(const SingularField& field, const RunManifest& manifest) {
  std::string out = "# manifest: " + json(manifest).dump() + "\n";
  out += "re,im";
  for (int j = 1; j <= field.n; ++j) out += ",s" + std::to_string(j);
  out += "\n";
  for (int iy = 0; iy < field.grid.ny; ++iy) {
    for (int ix = 0; ix < field.grid.nx; ++ix) {
      out += format_double(field.grid.re_at(ix)) + "," + format_double(field.grid.im_at(iy));
      for (double s : field.at(ix, iy)) out += "," + format_double(s);
      out += "\n";
    }
  }
  return out;
}

inline json field_to_json(const SingularField& field) {
  json rows = json::array();
  for (int iy = 0; iy < field.grid.ny; ++iy)
    for (int ix = 0; ix < field.grid.nx; ++ix) {
      json row = json::array({field.grid.re_at(ix), field.grid.im_at(iy)});
      for (double s : field.at(ix, iy)) row.push_back(s);
      rows.push_back(std::move(row));
    }
  return json{{"grid", field.grid}, {"n", field.n}, {"rows", rows}};
}

}  // namespace fourmean
