// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: fold / exact / repeat / sweep / rmsd.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfold/qfold.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

#ifndef QFOLD_DEFAULT_MJ_TABLE
#define QFOLD_DEFAULT_MJ_TABLE "data/mj_contact_energies.txt"
#endif

struct CommonOptions {
  std::string instance_path;
  std::string mj_table_path = QFOLD_DEFAULT_MJ_TABLE;
  double penalty_chiral = 10.0;
  double penalty_back = 10.0;
  double penalty_1 = 10.0;
  std::string algorithm = "cvar_vqe";
  double alpha = 0.01;
  std::uint64_t shots = 8192;
  int reps = 1;
  std::string entanglement = "full";
  int p = 2;
  int iterations = 50;
  std::string noise_json;
  std::string mitigate = "off";
  std::uint64_t calibration_shots = 8192;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int threads = 1;
  double lattice_constant = 1.0;
};

void add_instance_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--instance", o.instance_path, "peptide instance JSON file")->required();
  cmd->add_option("--mj-table", o.mj_table_path, "interaction table file");
  cmd->add_option("--penalty-chiral", o.penalty_chiral, "chirality penalty");
  cmd->add_option("--penalty-back", o.penalty_back, "fold-back penalty");
  cmd->add_option("--penalty-1", o.penalty_1, "contact overlap penalty");
  cmd->add_option("--out", o.out_dir, "output directory");
}

void add_run_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--algorithm", o.algorithm, "vqe | qaoa | cvar_vqe | cvar_qaoa");
  cmd->add_option("--alpha", o.alpha, "CVaR tail fraction in (0,1]");
  cmd->add_option("--shots", o.shots, "measurement shots per evaluation");
  cmd->add_option("--reps", o.reps, "RealAmplitudes repetitions");
  cmd->add_option("--entanglement", o.entanglement, "full | linear");
  cmd->add_option("--p", o.p, "QAOA depth");
  cmd->add_option("--iterations", o.iterations, "optimizer evaluations");
  cmd->add_option("--noise", o.noise_json, "readout noise JSON, e.g. {\"p01\":0.05,\"p10\":0.05}");
  cmd->add_option("--mitigate", o.mitigate, "off | full | tensored");
  cmd->add_option("--calibration-shots", o.calibration_shots, "shots per calibration state");
  cmd->add_option("--seed", o.seed, "base random seed");
  cmd->add_option("--threads", o.threads, "worker thread cap");
}

qfold::Peptide load_instance(const CommonOptions& o) {
  std::ifstream in(o.instance_path);
  if (!in) throw qfold::ValidationError("cannot open instance file: " + o.instance_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw qfold::ValidationError("instance file is not valid JSON: " + std::string(e.what()));
  }
  return qfold::Peptide::from_json(j);
}

qfold::FoldingProblem load_problem(const CommonOptions& o) {
  qfold::PenaltyConfig penalties{o.penalty_chiral, o.penalty_back, o.penalty_1};
  penalties.validate();
  return qfold::FoldingProblem::create(load_instance(o),
                                       penalties,
                                       qfold::InteractionTable::load_file(o.mj_table_path));
}

qfold::RunSpec make_run_spec(const CommonOptions& o, int num_qubits) {
  qfold::RunSpec spec;
  spec.algorithm = qfold::algorithm_from_string(o.algorithm);
  spec.objective.kind = qfold::is_cvar(spec.algorithm)
                            ? qfold::ObjectiveSpec::Kind::Cvar
                            : qfold::ObjectiveSpec::Kind::Expectation;
  spec.objective.alpha = o.alpha;
  spec.ansatz.reps = o.reps;
  spec.ansatz.entanglement = qfold::entanglement_from_string(o.entanglement);
  spec.ansatz.p = o.p;
  spec.shots = o.shots;
  spec.iterations = o.iterations;
  spec.seed = o.seed;
  spec.calibration_shots = o.calibration_shots;
  if (!o.noise_json.empty()) {
    json nj;
    try {
      nj = json::parse(o.noise_json);
    } catch (const json::exception& e) {
      throw qfold::ValidationError("--noise is not valid JSON: " + std::string(e.what()));
    }
    spec.noise = qfold::ReadoutNoise::from_json(nj, num_qubits);
  }
  if (o.mitigate == "off") spec.mitigation = qfold::MitigationMode::Off;
  else if (o.mitigate == "full") spec.mitigation = qfold::MitigationMode::Full;
  else if (o.mitigate == "tensored") spec.mitigation = qfold::MitigationMode::Tensored;
  else throw qfold::ValidationError("unknown mitigation mode: " + o.mitigate);
  if (o.iterations < 1) throw qfold::ValidationError("--iterations must be >= 1");
  if (o.shots < 1) throw qfold::ValidationError("--shots must be >= 1");
  return spec;
}

json run_config_json(const CommonOptions& o) {
  return json{{"instance", o.instance_path},
              {"algorithm", o.algorithm},
              {"alpha", o.alpha},
              {"shots", o.shots},
              {"reps", o.reps},
              {"entanglement", o.entanglement},
              {"p", o.p},
              {"iterations", o.iterations},
              {"penalty_chiral", o.penalty_chiral},
              {"penalty_back", o.penalty_back},
              {"penalty_1", o.penalty_1},
              {"noise", o.noise_json},
              {"mitigate", o.mitigate},
              {"seed", o.seed}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qfold::ComputeError("cannot write " + path.string());
  out << text;
}

std::string bitstring_of(std::uint64_t bits, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q) {
    if ((bits >> q) & 1) s[static_cast<std::size_t>(width - 1 - q)] = '1';
  }
  return s;
}

int cmd_fold(const CommonOptions& o) {
  qfold::FoldingProblem problem = load_problem(o);
  qfold::RunSpec spec = make_run_spec(o, problem.op.num_qubits());
  qfold::DecodeContext decode{&problem.peptide, &problem.map};
  qfold::FoldingResult result = qfold::run_algorithm(spec, problem.op, decode);

  fs::create_directories(o.out_dir);
  json counts = json::object();
  json energies = json::object();
  for (const auto& [bits, count] : result.final_samples.counts) {
    const std::string key = result.final_samples.bitstring(bits);
    counts[key] = count;
    energies[key] = result.energy_per_bitstring.at(bits);
  }
  json trace = json::array();
  for (const auto& ev : result.trace.iterations) trace.push_back(ev.value);
  json out{{"config", run_config_json(o)},
           {"num_qubits", problem.op.num_qubits()},
           {"best", {{"energy", result.best_energy},
                     {"bitstring", result.final_samples.bitstring(result.best_bitstring)},
                     {"turn_string", result.turn_string},
                     {"overlap", !result.overlap->self_avoiding()}}},
           {"best_objective", result.trace.best_value},
           {"evaluations", result.trace.evaluations},
           {"objective_trace", trace},
           {"counts", counts},
           {"energies", energies}};
  if (result.mitigated) {
    json m = json::object();
    for (const auto& [bits, w] : *result.mitigated) {
      m[bitstring_of(bits, problem.op.num_qubits())] = w;
    }
    out["mitigated"] = m;
  }
  write_text(fs::path(o.out_dir) / "result.json", out.dump(2) + "\n");

  const qfold::StructurePoints points =
      qfold::to_points(*result.decoded, problem.peptide, o.lattice_constant);
  std::ostringstream xyz;
  qfold::write_xyz(xyz, points, "YPYFIP-style lattice fold, turn string " + result.turn_string);
  write_text(fs::path(o.out_dir) / "structure.xyz", xyz.str());
  std::ostringstream pdb;
  qfold::write_pdb(pdb, points);
  write_text(fs::path(o.out_dir) / "structure.pdb", pdb.str());

  std::printf("%s %.6g\n", o.algorithm.c_str(), result.best_energy);
  return 0;
}

int cmd_exact(const CommonOptions& o, bool with_spectrum) {
  qfold::FoldingProblem problem = load_problem(o);
  qfold::ExactSolution sol = qfold::exact_ground_state(problem.op, with_spectrum);
  fs::create_directories(o.out_dir);

  qfold::FoldingEncoding enc(problem.peptide);
  json argmins = json::array();
  for (std::uint64_t bits : sol.argmin_bitstrings) {
    qfold::TurnSequence turns = enc.read_turns(problem.map.lift(bits));
    qfold::Conformation conf = qfold::turns_to_coordinates(turns, problem.peptide);
    argmins.push_back({{"bitstring", bitstring_of(bits, problem.op.num_qubits())},
                       {"turn_string", qfold::turn_string(turns, problem.peptide)},
                       {"overlap", !qfold::detect_overlap(conf).self_avoiding()}});
  }
  json out{{"min_energy", sol.min_energy},
           {"num_qubits", problem.op.num_qubits()},
           {"full_register_width", problem.full_op.num_qubits()},
           {"argmin", argmins}};
  write_text(fs::path(o.out_dir) / "exact.json", out.dump(2) + "\n");

  if (with_spectrum) {
    std::ostringstream csv;
    csv << "bitstring,energy\n";
    char buf[64];
    for (std::uint64_t b = 0; b < sol.full_spectrum->size(); ++b) {
      std::snprintf(buf, sizeof buf, "%.9g", (*sol.full_spectrum)[b]);
      csv << bitstring_of(b, problem.op.num_qubits()) << "," << buf << "\n";
    }
    write_text(fs::path(o.out_dir) / "spectrum.csv", csv.str());
  }
  std::printf("exact %.6g (%zu minimizers, %d qubits)\n", sol.min_energy,
              sol.argmin_bitstrings.size(), problem.op.num_qubits());
  return 0;
}

int cmd_repeat(const CommonOptions& o, int trials) {
  if (trials < 1) throw qfold::ValidationError("--trials must be >= 1");
  qfold::FoldingProblem problem = load_problem(o);
  qfold::RunSpec spec = make_run_spec(o, problem.op.num_qubits());
  qfold::RepeatabilityReport report =
      qfold::repeat_experiment(problem, spec, trials, o.seed, o.threads);

  fs::create_directories(o.out_dir);
  json energy_hist = json::object();
  char buf[64];
  for (const auto& [e, c] : report.energy_histogram) {
    std::snprintf(buf, sizeof buf, "%.9g", e);
    energy_hist[buf] = c;
  }
  json structure_hist = json::object();
  for (const auto& [s, c] : report.structure_histogram) structure_hist[s] = c;
  json out{{"config", run_config_json(o)},
           {"trials", report.trials},
           {"exact_minimum", report.exact_minimum},
           {"convergence_rate", report.convergence_rate},
           {"overlap_fraction", report.overlap_fraction},
           {"energy_histogram", energy_hist},
           {"structure_histogram", structure_hist}};
  write_text(fs::path(o.out_dir) / "repeat.json", out.dump(2) + "\n");

  std::ostringstream ecsv;
  ecsv << "energy,count\n";
  for (const auto& [e, c] : report.energy_histogram) {
    std::snprintf(buf, sizeof buf, "%.9g", e);
    ecsv << buf << "," << c << "\n";
  }
  write_text(fs::path(o.out_dir) / "energy_histogram.csv", ecsv.str());
  std::ostringstream scsv;
  scsv << "structure,count\n";
  for (const auto& [s, c] : report.structure_histogram) scsv << s << "," << c << "\n";
  write_text(fs::path(o.out_dir) / "structure_histogram.csv", scsv.str());

  std::printf("repeat trials=%d convergence=%.4f overlap=%.4f\n", report.trials,
              report.convergence_rate, report.overlap_fraction);
  return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& param, const std::string& grid_csv,
              int trials) {
  if (trials < 1) throw qfold::ValidationError("--trials must be >= 1");
  std::vector<double> grid;
  {
    std::istringstream ss(grid_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        grid.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw qfold::ValidationError("bad grid value: " + tok);
      }
    }
  }
  if (grid.empty()) throw qfold::ValidationError("--grid must list at least one value");

  qfold::SweepResult sweep;
  if (param == "p") {
    qfold::FoldingProblem problem = load_problem(o);
    qfold::RunSpec spec = make_run_spec(o, problem.op.num_qubits());
    std::vector<int> depths;
    for (double g : grid) depths.push_back(static_cast<int>(g));
    sweep = qfold::depth_sweep(problem, depths, spec, trials, o.seed, o.threads);
  } else {
    qfold::PenaltyConfig penalties{o.penalty_chiral, o.penalty_back, o.penalty_1};
    qfold::Peptide peptide = load_instance(o);
    qfold::InteractionTable table = qfold::InteractionTable::load_file(o.mj_table_path);
    qfold::FoldingProblem probe = qfold::FoldingProblem::create(peptide, penalties, table);
    qfold::RunSpec spec = make_run_spec(o, probe.op.num_qubits());
    sweep = qfold::penalty_sweep(peptide, table, penalties, param, grid, spec, trials,
                                 o.seed, o.threads);
  }

  fs::create_directories(o.out_dir);
  json out{{"config", run_config_json(o)},
           {"parameter", sweep.parameter},
           {"metric", sweep.metric},
           {"grid", sweep.grid},
           {"values", sweep.values}};
  write_text(fs::path(o.out_dir) / "sweep.json", out.dump(2) + "\n");
  std::ostringstream csv;
  csv << sweep.parameter << "," << sweep.metric << "\n";
  char buf[64];
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g", sweep.grid[i], sweep.values[i]);
    csv << buf << "\n";
  }
  write_text(fs::path(o.out_dir) / "sweep.csv", csv.str());
  std::printf("sweep %s: %zu points\n", sweep.parameter.c_str(), sweep.grid.size());
  return 0;
}

int cmd_rmsd(const std::string& file_a, const std::string& file_b) {
  qfold::StructurePoints a = qfold::read_structure_file(file_a);
  qfold::StructurePoints b = qfold::read_structure_file(file_b);
  if (a.points.size() != b.points.size()) {
    throw qfold::ValidationError("structures have different bead counts");
  }
  std::printf("%.4f\n", qfold::kabsch_rmsd(a.points, b.points));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse-grained lattice protein folding with variational quantum algorithms"};
  app.require_subcommand(1);

  CommonOptions o;
  int trials = 512;
  bool with_spectrum = false;
  std::string sweep_param = "penalty_back";
  std::string sweep_grid = "0.1,1,10,100,1000";
  std::string rmsd_a, rmsd_b;

  CLI::App* fold = app.add_subcommand("fold", "run one variational folding experiment");
  add_instance_options(fold, o);
  add_run_options(fold, o);
  fold->add_option("--lattice-constant", o.lattice_constant,
                   "Angstrom per lattice unit in exported structures");

  CLI::App* exact = app.add_subcommand("exact", "exhaustive enumeration oracle");
  add_instance_options(exact, o);
  exact->add_flag("--spectrum", with_spectrum, "also write the full spectrum CSV");

  CLI::App* repeat = app.add_subcommand("repeat", "repeatability study over seeded trials");
  add_instance_options(repeat, o);
  add_run_options(repeat, o);
  repeat->add_option("--trials", trials, "number of independent trials");

  CLI::App* sweep = app.add_subcommand("sweep", "penalty or QAOA-depth sweep");
  add_instance_options(sweep, o);
  add_run_options(sweep, o);
  sweep->add_option("--param", sweep_param, "penalty_chiral | penalty_back | penalty_1 | p");
  sweep->add_option("--grid", sweep_grid, "comma-separated grid values");
  sweep->add_option("--trials", trials, "trials per grid point");

  CLI::App* rmsd = app.add_subcommand("rmsd", "Kabsch RMSD between two structure files");
  rmsd->add_option("file_a", rmsd_a, "first structure (.xyz or .pdb)")->required();
  rmsd->add_option("file_b", rmsd_b, "second structure (.xyz or .pdb)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(fold)) return cmd_fold(o);
    if (app.got_subcommand(exact)) return cmd_exact(o, with_spectrum);
    if (app.got_subcommand(repeat)) return cmd_repeat(o, trials);
    if (app.got_subcommand(sweep)) return cmd_sweep(o, sweep_param, sweep_grid, trials);
    if (app.got_subcommand(rmsd)) return cmd_rmsd(rmsd_a, rmsd_b);
  } catch (const qfold::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const qfold::DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const qfold::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
