#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qfold/analysis.hpp"
#include "qfold/exact.hpp"
#include "qfold/kabsch.hpp"
#include "qfold/structure_io.hpp"
#include "test_helpers.hpp"

using namespace qfold;
using qfold_test::problem6;

TEST_CASE("exact_ground_state") {
  SECTION("bundled instance hits the published anchor") {
    ExactSolution sol = exact_ground_state(problem6().op, true);
    CHECK(sol.min_energy == Catch::Approx(-1.019).margin(0.01));
    REQUIRE(sol.argmin_bitstrings.size() == 1);
    REQUIRE(sol.full_spectrum.has_value());
    CHECK(sol.full_spectrum->size() == 64);
    // the unique minimizer decodes to the turn string 310
    FoldingEncoding enc(problem6().peptide);
    TurnSequence turns = enc.read_turns(problem6().map.lift(sol.argmin_bitstrings[0]));
    CHECK(turn_string(turns, problem6().peptide) == "310");
  }
  SECTION("single Z term") {
    DiagonalOperator op(3, {{ZMask::bit(0), 1.0}});
    ExactSolution sol = exact_ground_state(op);
    CHECK(sol.min_energy == Catch::Approx(-1.0));
    CHECK(sol.argmin_bitstrings.size() == 4);
    for (std::uint64_t b : sol.argmin_bitstrings) CHECK((b & 1) == 1);
  }
  SECTION("empty operator") {
    DiagonalOperator op(4, {});
    ExactSolution sol = exact_ground_state(op);
    CHECK(sol.min_energy == 0.0);
    CHECK(sol.argmin_bitstrings.size() == 16);
  }
  SECTION("enumeration guard") {
    DiagonalOperator op(25, {{ZMask::bit(24), 1.0}});
    CHECK_THROWS_AS(exact_ground_state(op), CapacityError);
  }
}

TEST_CASE("kabsch rmsd") {
  auto points = [](std::initializer_list<Point3> p) { return std::vector<Point3>(p); };
  std::vector<Point3> a = points({{0, 0, 0}, {1, 1, 1}, {0, 2, 2}, {-1, 1, 3}, {2, -1, 0}});
  SECTION("identical structures") {
    CHECK(kabsch_rmsd(a, a) == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("rigid motion gives zero") {
    // rotate 90 degrees about z and translate
    std::vector<Point3> b;
    for (const auto& p : a) b.push_back({-p[1] + 4.0, p[0] - 2.0, p[2] + 1.5});
    CHECK(kabsch_rmsd(a, b) == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("pseudometric: symmetric and non-negative") {
    std::vector<Point3> b = a;
    b[0] = {3, 3, 3};
    const double ab = kabsch_rmsd(a, b), ba = kabsch_rmsd(b, a);
    CHECK(ab >= 0.0);
    CHECK(ab == Catch::Approx(ba).margin(1e-9));
  }
  SECTION("aligned never exceeds unaligned") {
    std::mt19937_64 rng(6);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int t = 0; t < 50; ++t) {
      std::vector<Point3> x, y;
      for (int i = 0; i < 6; ++i) {
        x.push_back({u() * 4, u() * 4, u() * 4});
        y.push_back({u() * 4, u() * 4, u() * 4});
      }
      CHECK(kabsch_rmsd(x, y) <= rmsd_unaligned(x, y) + 1e-9);
    }
  }
  SECTION("collinear inputs are handled") {
    std::vector<Point3> line1{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
    std::vector<Point3> line2{{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 3, 0}};
    CHECK(kabsch_rmsd(line1, line2) == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("count mismatch") {
    std::vector<Point3> b{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
    CHECK_THROWS_AS(kabsch_rmsd(a, b), ValidationError);
  }
  SECTION("bundled paper fixtures reproduce 0.6357 A") {
    StructurePoints qaoa130 =
        read_structure_file(qfold_test::data_path("fixtures/structure_qaoa_130.xyz"));
    StructurePoints vqe310 =
        read_structure_file(qfold_test::data_path("fixtures/structure_vqe_310.xyz"));
    CHECK(kabsch_rmsd(qaoa130.points, vqe310.points) == Catch::Approx(0.6357).margin(0.2));
  }
}

TEST_CASE("repeat_experiment aggregates seeded trials") {
  const FoldingProblem& p = problem6();
  RunSpec spec;
  spec.algorithm = Algorithm::CvarQaoa;
  spec.iterations = 50;

  SECTION("single trial puts all mass on one outcome") {
    RepeatabilityReport r = repeat_experiment(p, spec, 1, 9001);
    CHECK(r.trials == 1);
    CHECK(r.energy_histogram.size() == 1);
    CHECK(r.structure_histogram.size() == 1);
  }
  SECTION("reports are reproducible and thread-count independent") {
    RepeatabilityReport a = repeat_experiment(p, spec, 12, 31, 1);
    RepeatabilityReport b = repeat_experiment(p, spec, 12, 31, 2);
    CHECK(a.energy_histogram == b.energy_histogram);
    CHECK(a.structure_histogram == b.structure_histogram);
    CHECK(a.convergence_rate == b.convergence_rate);
    CHECK(a.overlap_fraction == b.overlap_fraction);
  }
  SECTION("trial validation") {
    CHECK_THROWS_AS(repeat_experiment(p, spec, 0, 1), ValidationError);
  }
}

TEST_CASE("repeatability statistics match the published distributions") {
  const FoldingProblem& p = problem6();
  const int trials = 512;

  SECTION("cvar_qaoa: eigenvalue convergence ~0.988, top structure ~0.088") {
    RunSpec spec;
    spec.algorithm = Algorithm::CvarQaoa;
    RepeatabilityReport r = repeat_experiment(p, spec, trials, 42, 2);
    CHECK(r.convergence_rate == Catch::Approx(0.988).margin(0.05));
    int top = 0;
    std::string top_key;
    for (const auto& [k, c] : r.structure_histogram) {
      if (c > top) {
        top = c;
        top_key = k;
      }
    }
    CHECK(static_cast<double>(top) / trials == Catch::Approx(0.088).margin(0.05));
    // the second-ranked predicted structure folds back onto itself
    int second = 0;
    std::string second_key;
    for (const auto& [k, c] : r.structure_histogram) {
      if (k != top_key && c > second) {
        second = c;
        second_key = k;
      }
    }
    TurnSequence second_turns;
    second_turns.main = {kFixedTurn0, kFixedTurn1};
    for (char c : second_key) second_turns.main.push_back(c - '0');
    second_turns.side.resize(static_cast<std::size_t>(p.peptide.length()));
    Conformation conf = turns_to_coordinates(second_turns, p.peptide);
    CHECK_FALSE(detect_overlap(conf).self_avoiding());
    // predicted structures frequently overlap at all
    CHECK(r.overlap_fraction > 0.1);
  }

  SECTION("vqe: convergence ~0.30, top structure ~0.16") {
    RunSpec spec;
    spec.algorithm = Algorithm::Vqe;
    RepeatabilityReport r = repeat_experiment(p, spec, trials, 42, 2);
    CHECK(r.convergence_rate == Catch::Approx(0.30).margin(0.10));
    int top = 0;
    for (const auto& [k, c] : r.structure_histogram) top = std::max(top, c);
    CHECK(static_cast<double>(top) / trials == Catch::Approx(0.16).margin(0.10));
  }
}

TEST_CASE("oracle supremacy: no trial reports below the enumerated minimum") {
  const FoldingProblem& p = problem6();
  const double exact = exact_ground_state(p.op).min_energy;
  for (Algorithm alg : {Algorithm::Vqe, Algorithm::CvarVqe, Algorithm::CvarQaoa}) {
    RunSpec spec;
    spec.algorithm = alg;
    spec.iterations = 20;
    RepeatabilityReport r = repeat_experiment(p, spec, 20, 77, 2);
    for (double e : r.reported_energies) CHECK(e >= exact - 1e-12);
  }
}

TEST_CASE("penalty sweep") {
  const FoldingProblem& p = problem6();
  RunSpec spec;
  spec.algorithm = Algorithm::CvarVqe;
  spec.iterations = 25;

  SECTION("single grid point") {
    SweepResult s = penalty_sweep(p.peptide, p.table, p.penalties, "penalty_back", {10.0},
                                  spec, 3, 5, 2);
    CHECK(s.grid.size() == 1);
    CHECK(s.values.size() == 1);
  }
  SECTION("five-point default grid emits five metric points") {
    SweepResult s = penalty_sweep(p.peptide, p.table, p.penalties, "penalty_back",
                                  {0.1, 1.0, 10.0, 100.0, 1000.0}, spec, 2, 5, 2);
    CHECK(s.values.size() == 5);
    for (double v : s.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  SECTION("grid validation") {
    CHECK_THROWS_AS(penalty_sweep(p.peptide, p.table, p.penalties, "penalty_back",
                                  {1.0, 1.0}, spec, 1, 5),
                    ValidationError);
    CHECK_THROWS_AS(penalty_sweep(p.peptide, p.table, p.penalties, "penalty_back",
                                  {-1.0, 1.0}, spec, 1, 5),
                    ValidationError);
    CHECK_THROWS_AS(penalty_sweep(p.peptide, p.table, p.penalties, "bogus", {1.0}, spec, 1, 5),
                    ValidationError);
  }
  SECTION("doubling all penalties preserves the feasible argmin set") {
    PenaltyConfig doubled{20.0, 20.0, 20.0};
    FoldingProblem p2 = FoldingProblem::create(p.peptide, doubled, p.table);
    ExactSolution a = exact_ground_state(p.op);
    ExactSolution b = exact_ground_state(p2.op);
    CHECK(a.min_energy == Catch::Approx(b.min_energy).margin(1e-9));
    CHECK(a.argmin_bitstrings == b.argmin_bitstrings);
  }
}

TEST_CASE("depth sweep") {
  const FoldingProblem& p = problem6();
  RunSpec spec;
  spec.algorithm = Algorithm::Qaoa;

  SECTION("three depths give three points") {
    SweepResult s = depth_sweep(p, {1, 2, 3}, spec, 2, 11, 2);
    CHECK(s.grid == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(s.values.size() == 3);
  }
  SECTION("single trial per point is well-formed") {
    SweepResult s = depth_sweep(p, {2}, spec, 1, 3, 1);
    CHECK(s.values.size() == 1);
    CHECK(std::isfinite(s.values[0]));
  }
  SECTION("median best energy at p=2 does not exceed p=1") {
    SweepResult s = depth_sweep(p, {1, 2}, spec, 20, 2024, 2);
    CHECK(s.values[1] <= s.values[0] + 1e-12);
  }
}
