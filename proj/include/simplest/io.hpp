// Copyright 2026 The simplest-scenario Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simplest/bloch.hpp"
#include "simplest/errors.hpp"
#include "simplest/jones.hpp"
#include "simplest/ontic.hpp"
#include "simplest/witness.hpp"

namespace simplest {

using Json = nlohmann::ordered_json;

/// Ingested intensities round to few decimals, so their pair sums are
/// checked against a wider tolerance than simulated data.
inline constexpr double kIngestProbTolerance = 5e-3;

/// Estimated Stokes pairs may land slightly outside the unit disk; the
/// ingest default admits a few percent of excess in x^2 + y^2 while still
/// rejecting clearly unphysical points.
inline constexpr double kIngestDiskTolerance = 0.03;

/// Measurement basis of one intensity record.
enum class Basis { da, rl, hv };

inline const char* to_string(Basis b) {
  switch (b) {
    case Basis::da: return "DA";
    case Basis::rl: return "RL";
    case Basis::hv: return "HV";
  }
  return "??";
}

inline Basis basis_from_string(std::string_view s) {
  if (s == "DA") return Basis::da;
  if (s == "RL") return Basis::rl;
  if (s == "HV") return Basis::hv;
  fail(ErrorCode::UnknownBasis,
       "unknown basis '" + std::string(s) + "' (expected DA/RL/HV)");
}

/// One row of an intensity file. After parsing, i1 and i2 hold the
/// port intensities normalized by their sum.
struct IntensityRecord {
  PrepLabel prep = PrepLabel::p00;
  Basis basis = Basis::da;
  double i1 = 0.0;
  double i2 = 0.0;
};

/// Rounds to 6 significant digits through the decimal representation, so
/// emitted values are short and reparse to themselves.
inline double sig6(double v) {
  if (v == 0.0) return 0.0;  // normalizes -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

inline double parse_number(const std::string& field, int line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(ErrorCode::ParseError,
         "line " + std::to_string(line_no) + ": '" + field + "' is not a number");
  return v;
}

inline std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace detail

/// Parses the intensity CSV: header `prep,basis,i1,i2`, one record per
/// line, intensities in arbitrary units. Records come back normalized.
inline std::vector<IntensityRecord> parse_intensities(const std::string& text) {
  std::vector<std::string> lines = detail::split(text, '\n');
  for (std::string& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (lines.empty() || lines[0] != "prep,basis,i1,i2")
    fail(ErrorCode::ParseError, "line 1: expected header 'prep,basis,i1,i2'");

  std::vector<IntensityRecord> records;
  std::vector<bool> seen(12, false);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string& line = lines[k];
    int line_no = static_cast<int>(k) + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split(line, ',');
    if (fields.size() != 4)
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                      std::to_string(fields.size()));
    IntensityRecord rec;
    rec.prep = prep_label_from_string(fields[0]);
    rec.basis = basis_from_string(fields[1]);
    rec.i1 = detail::parse_number(fields[2], line_no);
    rec.i2 = detail::parse_number(fields[3], line_no);
    if (rec.i1 < 0.0 || rec.i2 < 0.0)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": negative intensity");
    double total = rec.i1 + rec.i2;
    if (!(total > 0.0))
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": intensities sum to zero");
    rec.i1 /= total;
    rec.i2 /= total;
    std::size_t slot = static_cast<std::size_t>(rec.prep) * 3 +
                       static_cast<std::size_t>(rec.basis);
    if (seen[slot])
      fail(ErrorCode::DuplicateRecord,
           "line " + std::to_string(line_no) + ": duplicate record for " +
               std::string(to_string(rec.prep)) + "," + to_string(rec.basis));
    seen[slot] = true;
    records.push_back(rec);
  }
  return records;
}

/// Serializes records in the same CSV schema, normalized, 6 significant
/// digits. serialize(parse(serialize(x))) == serialize(x).
inline std::string emit_intensities(const std::vector<IntensityRecord>& records) {
  std::string out = "prep,basis,i1,i2\n";
  for (const IntensityRecord& r : records) {
    out += to_string(r.prep);
    out += ',';
    out += to_string(r.basis);
    out += ',';
    out += detail::format_g6(r.i1);
    out += ',';
    out += detail::format_g6(r.i2);
    out += '\n';
  }
  return out;
}

/// Quad plus the optional z-coordinate sanity values from HV records.
struct IngestResult {
  PreparationQuad quad;
  std::array<std::optional<double>, 4> s_z{};  // indexed by PrepLabel
};

/// Builds the quad from DA and RL records of all four labels. HV records,
/// when present, only populate the s_z report and never enter the quad.
inline IngestResult quad_from_records(const std::vector<IntensityRecord>& records,
                                      double tol_prob = kIngestProbTolerance,
                                      double tol_geom = kIngestDiskTolerance) {
  std::array<std::array<const IntensityRecord*, 3>, 4> table{};
  for (const IntensityRecord& r : records)
    table[static_cast<int>(r.prep)][static_cast<int>(r.basis)] = &r;

  IngestResult out;
  for (PrepLabel l : kPrepLabels) {
    const auto& row = table[static_cast<int>(l)];
    const IntensityRecord* da = row[static_cast<int>(Basis::da)];
    const IntensityRecord* rl = row[static_cast<int>(Basis::rl)];
    const IntensityRecord* hv = row[static_cast<int>(Basis::hv)];
    if (!da || !rl)
      fail(ErrorCode::MissingBasis, "preparation " + std::string(to_string(l)) +
                                        " lacks a " + (da ? "RL" : "DA") + " record");
    out.quad[l] = stokes_from_probs(da->i1, da->i2, rl->i1, rl->i2, tol_prob, tol_geom);
    if (hv) out.s_z[static_cast<int>(l)] = hv->i1 - hv->i2;
  }
  return out;
}

/// One evaluated point of the depolarizing sweep for one preparation.
struct SweepPoint {
  PrepLabel label = PrepLabel::p00;
  double a = 0.0;
  double delta = 0.0;
  PrepVector vector;
  bool pusey_depol = false;
  bool parity_depol = false;
  bool marvian = false;
};

/// Sweeps the scrambler offset beta over `steps` values 0, step, 2*step,
/// ... degrees for every preparation (label-major). Verdicts use the
/// depolarizing-noise bounds at each point's own delta; a bound whose
/// domain excludes delta counts as not violated.
inline std::vector<SweepPoint> beta_sweep(int steps, double beta_step_deg) {
  if (steps < 1)
    fail(ErrorCode::OutOfRange, "sweep needs at least one step");
  if (!(beta_step_deg >= 0.0))
    fail(ErrorCode::OutOfRange, "beta step must be nonnegative");
  std::vector<SweepPoint> points;
  points.reserve(4 * static_cast<std::size_t>(steps));
  for (PrepLabel l : kPrepLabels) {
    PrepVector pure = stokes_xy(prepare(l));
    for (int k = 0; k < steps; ++k) {
      SweepPoint pt;
      pt.label = l;
      double beta = static_cast<double>(k) * beta_step_deg * kPi / 180.0;
      pt.a = beta_to_a(beta);
      pt.vector = depolarize(pure, pt.a);
      pt.delta = operational_distance(pt.vector, ideal_vector(l));
      pt.pusey_depol = pt.delta < 1.0 / kSqrt2 && pusey_depol_bound(pt.delta) > 0.0;
      pt.parity_depol = pt.delta < 1.0 / (2.0 * kSqrt2) &&
                        parity_depol_condition(pt.delta).violated;
      pt.marvian = pt.delta < kSqrt2 / 4.0 && marvian_noise_bound(pt.delta) > 0.0;
      points.push_back(pt);
    }
  }
  return points;
}

inline std::string emit_sweep(const std::vector<SweepPoint>& points) {
  std::string out = "label,a,delta,x,y,pusey_depol,parity_depol,marvian\n";
  for (const SweepPoint& pt : points) {
    out += to_string(pt.label);
    out += ',';
    out += detail::format_g6(pt.a);
    out += ',';
    out += detail::format_g6(pt.delta);
    out += ',';
    out += detail::format_g6(pt.vector.x);
    out += ',';
    out += detail::format_g6(pt.vector.y);
    out += ',';
    out += pt.pusey_depol ? '1' : '0';
    out += ',';
    out += pt.parity_depol ? '1' : '0';
    out += ',';
    out += pt.marvian ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace detail {

inline Json json_vector(PrepVector v) {
  return Json{{"x", sig6(v.x)}, {"y", sig6(v.y)}};
}

inline Json json_quad(const PreparationQuad& quad) {
  Json j;
  for (PrepLabel l : kPrepLabels) j[to_string(l)] = json_vector(quad[l]);
  return j;
}

inline Json json_optional(const std::optional<double>& v) {
  return v ? Json(sig6(*v)) : Json(nullptr);
}

inline Json json_rational(const Rational& r) {
  return Json{{"fraction", to_fraction_string(r)}, {"value", sig6(to_double(r))}};
}

inline Json json_weights(const EquivalenceWeights& w) {
  return Json{{"p", sig6(w.p)},
              {"q", sig6(w.q)},
              {"c", json_vector(w.c)},
              {"residual", sig6(w.residual)}};
}

inline Json json_model(const std::array<OnticDistribution, 4>& model) {
  Json j;
  for (PrepLabel l : kPrepLabels) {
    Json masses = Json::array();
    for (const Rational& m : model[static_cast<int>(l)].mass)
      masses.push_back(json_rational(m));
    j[to_string(l)] = masses;
  }
  return j;
}

inline Json json_oracle(const OracleReport& o) {
  Json j;
  j["feasible"] = o.feasible;
  j["min_parity_tv"] = json_rational(o.min_tv);
  j["parity_distance"] = json_rational(o.parity_distance);
  j["bodp_gap"] = json_rational(o.gap);
  j["pusey_raw_exact"] = json_rational(o.pusey_raw_exact);
  j["weights"] = Json{{"p", json_rational(o.weights.p)}, {"q", json_rational(o.weights.q)}};
  j["nc_model"] = o.nc_model ? json_model(*o.nc_model) : Json(nullptr);
  j["tv_model"] = json_model(o.model);
  return j;
}

}  // namespace detail

/// Inputs and outputs of one `simulate` invocation.
struct SimulationResult {
  std::string label;  // preparation label or "custom"
  double qwp_deg = 0.0;
  double hwp_deg = 0.0;
  double a = 0.0;
  SixProbs probs;  // after depolarization
  double x = 0.0, y = 0.0, z = 0.0;
};

inline std::string emit_simulation(const SimulationResult& s) {
  Json j;
  j["label"] = s.label;
  j["qwp_deg"] = sig6(s.qwp_deg);
  j["hwp_deg"] = sig6(s.hwp_deg);
  j["depol_a"] = sig6(s.a);
  j["probs"] = Json{{"h", sig6(s.probs.p_h)}, {"v", sig6(s.probs.p_v)},
                    {"d", sig6(s.probs.p_d)}, {"a", sig6(s.probs.p_a)},
                    {"r", sig6(s.probs.p_r)}, {"l", sig6(s.probs.p_l)}};
  j["stokes"] = Json{{"x", sig6(s.x)}, {"y", sig6(s.y)}, {"z", sig6(s.z)}};
  return j.dump(2) + "\n";
}

inline std::string emit_ingest(const IngestResult& r) {
  Json j;
  j["quad"] = detail::json_quad(r.quad);
  Json sz;
  for (PrepLabel l : kPrepLabels)
    sz[to_string(l)] = detail::json_optional(r.s_z[static_cast<int>(l)]);
  j["s_z"] = sz;
  return j.dump(2) + "\n";
}

/// Full witness report, optionally with the exact-oracle block. Field
/// order is fixed; reals carry 6 significant digits.
inline std::string emit_report(const WitnessReport& r, const PreparationQuad& quad,
                               const OracleReport* oracle = nullptr) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["quad"] = detail::json_quad(quad);
  j["weights"] = detail::json_weights(r.weights);
  Json rows = Json::array();
  for (const WitnessRow& row : r.rows) {
    rows.push_back(Json{{"label", to_string(row.label)},
                        {"x", sig6(row.v.x)},
                        {"y", sig6(row.v.y)},
                        {"d", sig6(row.d)},
                        {"s_bound", sig6(row.s_bound)},
                        {"c_bound", detail::json_optional(row.c_bound)}});
  }
  j["rows"] = rows;
  j["delta"] = sig6(r.delta);
  j["s_raw"] = sig6(r.s_raw);
  j["s_bound"] = sig6(r.s_bound);
  j["c_prep_bound"] = detail::json_optional(r.c_prep_bound);
  j["parity_margin"] = detail::json_optional(r.parity_margin);
  j["parity_violated"] = r.parity_violated;
  if (r.depol) {
    j["depol"] = Json{{"pusey_value", detail::json_optional(r.depol->pusey_value)},
                      {"parity_margin", detail::json_optional(r.depol->parity_margin)}};
  } else {
    j["depol"] = nullptr;
  }
  j["verdicts"] = Json{{"pusey_raw", r.verdicts.pusey_raw},
                       {"pusey_bound", r.verdicts.pusey_bound},
                       {"marvian", r.verdicts.marvian},
                       {"parity", r.verdicts.parity}};
  Thresholds t = solve_thresholds();
  j["thresholds"] = Json{{"pusey", sig6(t.pusey)},
                         {"marvian", sig6(t.marvian)},
                         {"parity", sig6(t.parity)},
                         {"pusey_depol", sig6(t.pusey_depol)},
                         {"parity_depol", sig6(t.parity_depol)},
                         {"delta_below",
                          Json{{"pusey", r.delta <= t.pusey},
                               {"marvian", r.delta <= t.marvian},
                               {"parity", r.delta <= t.parity},
                               {"pusey_depol", r.delta <= t.pusey_depol},
                               {"parity_depol", r.delta <= t.parity_depol}}}};
  j["oracle"] = oracle ? detail::json_oracle(*oracle) : Json(nullptr);
  return j.dump(2) + "\n";
}

inline std::string emit_verdict(const OracleReport& o) {
  return detail::json_oracle(o).dump(2) + "\n";
}

inline std::string emit_thresholds(const Thresholds& t) {
  Json j{{"pusey", sig6(t.pusey)},
         {"marvian", sig6(t.marvian)},
         {"parity", sig6(t.parity)},
         {"pusey_depol", sig6(t.pusey_depol)},
         {"parity_depol", sig6(t.parity_depol)}};
  return j.dump(2) + "\n";
}

}  // namespace simplest
