// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qfold/exact.hpp"
#include "qfold/problem.hpp"
#include "qfold/solver.hpp"

namespace qfold {

/// Tolerance for "converged to the lowest energy state": reported energy
/// within this distance of the enumerated minimum.
inline constexpr double kConvergenceTolerance = 0.01;

struct RepeatabilityReport {
  int trials = 0;
  std::map<double, int> energy_histogram;        // reported eigenvalue -> trials
  std::map<std::string, int> structure_histogram;  // per-trial top structure -> trials
  double overlap_fraction = 0.0;    // trials whose top structure self-overlaps
  double convergence_rate = 0.0;    // trials within tolerance of the exact minimum
  double exact_minimum = 0.0;
  std::vector<double> reported_energies;  // per trial, in trial order
};

namespace detail {

inline void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Most frequent decoded structure of a sample set: counts aggregated per
/// turn string, so interaction-bit variants of one conformation pool
/// together.
inline std::pair<std::string, TurnSequence> top_structure(const SampleSet& samples,
                                                          const FoldingProblem& problem) {
  FoldingEncoding enc(problem.peptide);
  std::map<std::string, std::uint64_t> by_structure;
  std::map<std::string, TurnSequence> turns_of;
  for (const auto& [bits, count] : samples.counts) {
    TurnSequence turns = enc.read_turns(problem.map.lift(bits));
    std::string key = turn_string(turns, problem.peptide);
    by_structure[key] += count;
    turns_of.emplace(key, std::move(turns));
  }
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [key, count] : by_structure) {
    if (count > best_count) {
      best_count = count;
      best = key;
    }
  }
  return {best, turns_of.at(best)};
}

}  // namespace detail

/// Runs `trials` independently seeded folding runs and aggregates the
/// reported-eigenvalue distribution, the per-trial top-structure
/// distribution, the overlap fraction, and the convergence rate against the
/// enumeration oracle.
inline RepeatabilityReport repeat_experiment(const FoldingProblem& problem, RunSpec spec,
                                             int trials, std::uint64_t base_seed,
                                             int threads = 1) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  RepeatabilityReport report;
  report.trials = trials;
  report.exact_minimum = exact_ground_state(problem.op).min_energy;
  report.reported_energies.resize(static_cast<std::size_t>(trials));
  std::vector<std::string> tops(static_cast<std::size_t>(trials));
  std::vector<bool> overlaps(static_cast<std::size_t>(trials));

  detail::parallel_for(trials, threads, [&](int t) {
    RunSpec trial_spec = spec;
    trial_spec.seed = base_seed + static_cast<std::uint64_t>(t);
    DecodeContext decode{&problem.peptide, &problem.map};
    FoldingResult result = run_algorithm(trial_spec, problem.op, decode);
    report.reported_energies[static_cast<std::size_t>(t)] = result.best_energy;
    auto [key, turns] = detail::top_structure(result.final_samples, problem);
    tops[static_cast<std::size_t>(t)] = key;
    Conformation conf = turns_to_coordinates(turns, problem.peptide);
    overlaps[static_cast<std::size_t>(t)] = !detect_overlap(conf).self_avoiding();
  });

  int converged = 0, overlapped = 0;
  for (int t = 0; t < trials; ++t) {
    ++report.energy_histogram[report.reported_energies[static_cast<std::size_t>(t)]];
    ++report.structure_histogram[tops[static_cast<std::size_t>(t)]];
    if (std::abs(report.reported_energies[static_cast<std::size_t>(t)] -
                 report.exact_minimum) <= kConvergenceTolerance) {
      ++converged;
    }
    if (overlaps[static_cast<std::size_t>(t)]) ++overlapped;
  }
  report.convergence_rate = static_cast<double>(converged) / trials;
  report.overlap_fraction = static_cast<double>(overlapped) / trials;
  return report;
}

/// One sweep experiment: a named parameter, its grid, and one metric value
/// per grid point.
struct SweepResult {
  std::string parameter;
  std::string metric;
  std::vector<double> grid;
  std::vector<double> values;
};

/// Probability of the most frequent structure as one penalty coefficient is
/// varied; the Hamiltonian is rebuilt at each grid value.
inline SweepResult penalty_sweep(const Peptide& peptide, const InteractionTable& table,
                                 PenaltyConfig penalties, const std::string& penalty_name,
                                 const std::vector<double>& grid, RunSpec spec,
                                 int trials_per_point, std::uint64_t base_seed,
                                 int threads = 1) {
  if (grid.empty()) throw ValidationError("sweep grid must be non-empty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) throw ValidationError("sweep grid must be strictly increasing");
  }
  for (double g : grid) {
    if (g <= 0.0) throw ValidationError("penalty grid values must be positive");
  }
  SweepResult sweep;
  sweep.parameter = penalty_name;
  sweep.metric = "top_structure_probability";
  sweep.grid = grid;
  for (double value : grid) {
    PenaltyConfig p = penalties;
    if (penalty_name == "penalty_chiral") p.chiral = value;
    else if (penalty_name == "penalty_back") p.back = value;
    else if (penalty_name == "penalty_1") p.one = value;
    else throw ValidationError("unknown penalty parameter: " + penalty_name);
    FoldingProblem problem = FoldingProblem::create(peptide, p, table);
    RepeatabilityReport report =
        repeat_experiment(problem, spec, trials_per_point, base_seed, threads);
    int top = 0;
    for (const auto& [key, count] : report.structure_histogram) top = std::max(top, count);
    sweep.values.push_back(static_cast<double>(top) / report.trials);
  }
  return sweep;
}

/// Median reported energy of QAOA as the depth p is varied.
inline SweepResult depth_sweep(const FoldingProblem& problem, const std::vector<int>& depths,
                               RunSpec spec, int trials_per_point, std::uint64_t base_seed,
                               int threads = 1) {
  if (depths.empty()) throw ValidationError("depth grid must be non-empty");
  for (int p : depths) {
    if (p < 1) throw ValidationError("QAOA depth must be >= 1");
  }
  SweepResult sweep;
  sweep.parameter = "p";
  sweep.metric = "median_best_energy";
  for (int p : depths) {
    sweep.grid.push_back(p);
    RunSpec point = spec;
    if (!is_qaoa(point.algorithm)) point.algorithm = Algorithm::Qaoa;
    point.ansatz.p = p;
    RepeatabilityReport report =
        repeat_experiment(problem, point, trials_per_point, base_seed, threads);
    std::vector<double> energies = report.reported_energies;
    std::sort(energies.begin(), energies.end());
    const std::size_t n = energies.size();
    const double median =
        n % 2 == 1 ? energies[n / 2] : 0.5 * (energies[n / 2 - 1] + energies[n / 2]);
    sweep.values.push_back(median);
  }
  return sweep;
}

}  // namespace qfold
