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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "simplest/bloch.hpp"
#include "simplest/io.hpp"
#include "simplest/jones.hpp"
#include "simplest/ontic.hpp"
#include "simplest/witness.hpp"

namespace {

using namespace simplest;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot open file '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorCode::ParseError, "failed writing file '" + path + "'");
}

struct QuadSource {
  std::string file;
  bool ideal = false;

  PreparationQuad load(double tol_prob, double tol_geom, bool verbose) const {
    if (ideal) return ideal_quad();
    if (file.empty()) fail(ErrorCode::ParseError, "need --file or --ideal");
    IngestResult r = quad_from_records(parse_intensities(read_file(file)),
                                       tol_prob, tol_geom);
    if (verbose) std::cerr << "loaded quad from " << file << "\n";
    return r.quad;
  }
};

void add_quad_source(CLI::App* cmd, QuadSource& src) {
  auto* file = cmd->add_option("--file", src.file, "intensity CSV to ingest");
  auto* ideal = cmd->add_flag("--ideal", src.ideal, "use the ideal preparations");
  file->excludes(ideal);
  ideal->excludes(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplest-scenario preparation-contextuality toolkit"};
  app.require_subcommand(1);
  double tol_prob = kIngestProbTolerance;
  double tol_geom = kIngestDiskTolerance;
  bool verbose = false;
  app.add_option("--tol-prob", tol_prob,
                 "probability-pair normalization tolerance")
      ->capture_default_str();
  app.add_option("--tol-geom", tol_geom, "Bloch-disk membership tolerance")
      ->capture_default_str();
  app.add_flag("--verbose", verbose, "human-readable summary on stderr");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "run one preparation circuit and print its tomography");
  std::string sim_prep;
  double sim_qwp = 0.0, sim_hwp = 0.0, sim_a = 0.0;
  bool sim_listed = false;
  auto* prep_opt = simulate->add_option("--prep", sim_prep,
                                        "preparation label (00/01/10/11)");
  auto* qwp_opt = simulate->add_option("--qwp", sim_qwp,
                                       "quarter-wave-plate angle in degrees");
  auto* hwp_opt = simulate->add_option("--hwp", sim_hwp,
                                       "half-wave-plate angle in degrees");
  simulate->add_option("--depol", sim_a, "depolarization strength a in [0, 1]");
  simulate->add_flag("--listed", sim_listed,
                     "use the hardware-table row order for the label's angles");
  qwp_opt->needs(hwp_opt);
  hwp_opt->needs(qwp_opt);
  qwp_opt->excludes(prep_opt);
  simulate->callback([&]() {
    SimulationResult out;
    PlateAngles angles;
    if (qwp_opt->count()) {
      angles = {sim_qwp * kPi / 180.0, sim_hwp * kPi / 180.0};
      out.label = "custom";
    } else if (prep_opt->count()) {
      PrepLabel l = prep_label_from_string(sim_prep);
      angles = sim_listed ? listed_angles(l) : assigned_angles(l);
      out.label = to_string(l);
    } else {
      fail(ErrorCode::ParseError, "need --prep or --qwp/--hwp");
    }
    out.qwp_deg = angles.qwp * 180.0 / kPi;
    out.hwp_deg = angles.hwp * 180.0 / kPi;
    out.a = sim_a;
    SixProbs pure = tomography(prepare(angles));
    if (!(sim_a >= 0.0 && sim_a <= 1.0))
      fail(ErrorCode::OutOfRange, "depolarization strength outside [0, 1]");
    auto mix = [&](double p) { return (1.0 - sim_a) * p + sim_a * 0.5; };
    out.probs = {mix(pure.p_h), mix(pure.p_v), mix(pure.p_d),
                 mix(pure.p_a), mix(pure.p_r), mix(pure.p_l)};
    out.x = out.probs.p_d - out.probs.p_a;
    out.y = out.probs.p_r - out.probs.p_l;
    out.z = out.probs.p_h - out.probs.p_v;
    if (verbose)
      std::cerr << "stokes (" << out.x << ", " << out.y << ", " << out.z << ")\n";
    std::cout << emit_simulation(out);
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse an intensity CSV and print the quad");
  std::string ingest_file;
  ingest->add_option("--file", ingest_file, "intensity CSV")->required();
  ingest->callback([&]() {
    IngestResult r = quad_from_records(parse_intensities(read_file(ingest_file)),
                                       tol_prob, tol_geom);
    if (verbose) std::cerr << "quad built from " << ingest_file << "\n";
    std::cout << emit_ingest(r);
  });

  // witness
  auto* witness = app.add_subcommand(
      "witness", "evaluate all nonclassicality witnesses on a quad");
  QuadSource witness_src;
  bool depol_mode = false;
  add_quad_source(witness, witness_src);
  witness->add_flag("--depol-mode", depol_mode,
                    "drive verdicts with the depolarizing-noise bounds");
  witness->callback([&]() {
    PreparationQuad quad = witness_src.load(tol_prob, tol_geom, verbose);
    EquivalenceWeights w = find_equivalence(quad);
    WitnessReport report = build_report(
        quad, w, depol_mode ? WitnessMode::depolarizing : WitnessMode::plain);
    OracleReport oracle = lp_verdict(quad, w);
    if (verbose)
      std::cerr << "delta " << report.delta << ", s_raw " << report.s_raw
                << ", feasible " << (oracle.feasible ? "yes" : "no") << "\n";
    std::cout << emit_report(report, quad, &oracle);
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "decide noncontextual-model existence by exact LP");
  QuadSource oracle_src;
  bool dump_lp = false;
  add_quad_source(oracle_cmd, oracle_src);
  oracle_cmd->add_flag("--dump-lp", dump_lp,
                       "print the LP tableaus instead of the verdict");
  oracle_cmd->callback([&]() {
    PreparationQuad quad = oracle_src.load(tol_prob, tol_geom, verbose);
    EquivalenceWeights w = find_equivalence(quad);
    if (dump_lp) {
      std::cout << lp_dump(quad, w);
      return;
    }
    OracleReport report = lp_verdict(quad, w);
    if (verbose)
      std::cerr << "feasible " << (report.feasible ? "yes" : "no") << ", min TV "
                << to_fraction_string(report.min_tv) << "\n";
    std::cout << emit_verdict(report);
  });

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "depolarizing sweep dataset over all four preparations");
  int sweep_steps = 0;
  double sweep_beta = 0.0;
  std::string sweep_out;
  sweep->add_option("--steps", sweep_steps, "number of beta steps (k = 0..N-1)")
      ->required();
  sweep->add_option("--beta-step", sweep_beta, "beta increment in degrees")
      ->required();
  sweep->add_option("--out", sweep_out, "output CSV path ('-' for stdout)")
      ->required();
  sweep->callback([&]() {
    std::vector<SweepPoint> points = beta_sweep(sweep_steps, sweep_beta);
    write_file(sweep_out, emit_sweep(points));
    if (verbose)
      std::cerr << points.size() << " sweep rows written to " << sweep_out << "\n";
  });

  // thresholds
  auto* thresholds = app.add_subcommand(
      "thresholds", "solve the five witness noise thresholds");
  thresholds->callback([&]() {
    Thresholds t = solve_thresholds();
    if (verbose) std::cerr << "bisection tolerance 1e-9\n";
    std::cout << emit_thresholds(t);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[ParseError] " << e.what() << "\n";
    return 1;
  } catch (const simplest::Error& e) {
    std::cerr << "error[" << name(e.code()) << "] " << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error[Internal] " << e.what() << "\n";
    return 1;
  }
  return 0;
}
