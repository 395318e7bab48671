#include <catch2/catch_amalgamated.hpp>

#include "qfold/exact.hpp"
#include "qfold/solver.hpp"
#include "test_helpers.hpp"

using namespace qfold;
using qfold_test::problem6;

TEST_CASE("vqe finds the single-qubit ground state") {
  DiagonalOperator op(1, {{ZMask::bit(0), 1.0}});
  RunSpec spec;
  spec.algorithm = Algorithm::Vqe;
  spec.shots = 4096;
  spec.iterations = 50;
  spec.seed = 17;
  FoldingResult result = run_algorithm(spec, op);
  CHECK(result.trace.best_value == Catch::Approx(-1.0).margin(0.05));
  CHECK(result.best_energy == Catch::Approx(-1.0).margin(1e-12));
  CHECK(result.best_bitstring == 1);
}

TEST_CASE("identical seeds give identical results") {
  const FoldingProblem& p = problem6();
  RunSpec spec;
  spec.algorithm = Algorithm::CvarVqe;
  spec.seed = 5;
  spec.iterations = 25;
  DecodeContext decode{&p.peptide, &p.map};
  FoldingResult a = run_algorithm(spec, p.op, decode);
  FoldingResult b = run_algorithm(spec, p.op, decode);
  CHECK(a.best_energy == b.best_energy);
  CHECK(a.best_bitstring == b.best_bitstring);
  CHECK(a.final_samples.counts == b.final_samples.counts);
  CHECK(a.trace.best_value == b.trace.best_value);
  REQUIRE(a.trace.iterations.size() == b.trace.iterations.size());
  for (std::size_t i = 0; i < a.trace.iterations.size(); ++i) {
    CHECK(a.trace.iterations[i].value == b.trace.iterations[i].value);
  }
  CHECK(a.turn_string == b.turn_string);

  spec.seed = 6;
  FoldingResult c = run_algorithm(spec, p.op, decode);
  CHECK(a.final_samples.counts != c.final_samples.counts);
}

TEST_CASE("decoded structure derives from the best sampled bitstring") {
  const FoldingProblem& p = problem6();
  RunSpec spec;
  spec.algorithm = Algorithm::CvarQaoa;
  spec.seed = 11;
  DecodeContext decode{&p.peptide, &p.map};
  FoldingResult r = run_algorithm(spec, p.op, decode);
  REQUIRE(r.decoded.has_value());
  REQUIRE(r.overlap.has_value());
  CHECK(r.decoded->main_coords.size() == 6);
  CHECK(r.turn_string.size() == 3);
  // reported energy minimizes over the sampled energies
  for (const auto& [bits, e] : r.energy_per_bitstring) CHECK(r.best_energy <= e + 1e-12);
  // trial run without decode context leaves the structure empty
  FoldingResult bare = run_algorithm(spec, p.op);
  CHECK_FALSE(bare.decoded.has_value());
}

TEST_CASE("all four algorithm/objective combinations run") {
  const FoldingProblem& p = problem6();
  for (Algorithm alg : {Algorithm::Vqe, Algorithm::Qaoa, Algorithm::CvarVqe,
                        Algorithm::CvarQaoa}) {
    RunSpec spec;
    spec.algorithm = alg;
    spec.iterations = 10;
    spec.shots = 1024;
    spec.seed = 3;
    FoldingResult r = run_algorithm(spec, p.op);
    CHECK(std::isfinite(r.best_energy));
    CHECK(r.trace.evaluations == 10);
  }
  // expectation objective on a cvar-named algorithm is forced to CVaR,
  // cvar objective on a plain algorithm is honored: both valid
  RunSpec mixed;
  mixed.algorithm = Algorithm::Vqe;
  mixed.objective.kind = ObjectiveSpec::Kind::Cvar;
  mixed.objective.alpha = 0.05;
  mixed.iterations = 8;
  mixed.seed = 1;
  CHECK_NOTHROW(run_algorithm(mixed, p.op));
}

TEST_CASE("cvar variants hit the exact minimum quickly on the bundled instance") {
  const FoldingProblem& p = problem6();
  const double exact = exact_ground_state(p.op).min_energy;
  int converged = 0;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    RunSpec spec;
    spec.algorithm = Algorithm::CvarVqe;
    spec.seed = seed;
    FoldingResult r = run_algorithm(spec, p.op);
    if (std::abs(r.best_energy - exact) <= 0.01) ++converged;
  }
  CHECK(converged >= 9);
}

TEST_CASE("variational bound: sampled energies never undercut the spectrum") {
  const FoldingProblem& p = problem6();
  const double exact = exact_ground_state(p.op).min_energy;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RunSpec spec;
    spec.algorithm = Algorithm::Qaoa;
    spec.seed = seed;
    spec.iterations = 15;
    FoldingResult r = run_algorithm(spec, p.op);
    CHECK(r.best_energy >= exact - 1e-12);
    CHECK(r.trace.best_value >= exact - 1e-12);
  }
}

TEST_CASE("solver capacity and validation errors") {
  DiagonalOperator wide(27, {});
  RunSpec spec;
  CHECK_THROWS_AS(run_algorithm(spec, wide), CapacityError);

  const FoldingProblem& p = problem6();
  RunSpec bad;
  bad.mitigation = MitigationMode::Full;  // no noise channel configured
  CHECK_THROWS_AS(run_algorithm(bad, p.op), ValidationError);
}
