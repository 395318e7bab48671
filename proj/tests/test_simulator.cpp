#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "qfold/circuit.hpp"
#include "qfold/sampling.hpp"
#include "qfold/statevector.hpp"
#include "test_helpers.hpp"

using namespace qfold;

namespace {

// Dense matrix tools for the independent reference route.
using CMat = std::vector<std::vector<std::complex<double>>>;

CMat cmat(std::size_t n) { return CMat(n, std::vector<std::complex<double>>(n)); }

CMat matmul(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat c = cmat(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> aik = a[i][k];
      if (aik == std::complex<double>{}) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
    }
  }
  return c;
}

/// Matrix exponential by scaling-and-squaring with a Taylor series.
CMat expm(CMat a) {
  const std::size_t n = a.size();
  double norm = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (const auto& v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& row : a) {
    for (auto& v : row) v *= scale;
  }
  CMat result = cmat(n), term = cmat(n);
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0;
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, a);
    const double inv = 1.0 / k;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        term[i][j] *= inv;
        result[i][j] += term[i][j];
      }
    }
  }
  for (int s = 0; s < squarings; ++s) result = matmul(result, result);
  return result;
}

std::vector<std::complex<double>> apply(const CMat& m,
                                        const std::vector<std::complex<double>>& v) {
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

}  // namespace

TEST_CASE("real amplitudes ansatz structure") {
  SECTION("n=6 reps=1 full: 12 parameters, 15 CX gates") {
    Circuit c = build_real_amplitudes(6, 1, Entanglement::Full);
    CHECK(c.num_parameters() == 12);
    int cx = 0;
    for (const auto& g : c.gates()) cx += g.kind == Circuit::Gate::Kind::Cx;
    CHECK(cx == 15);
  }
  SECTION("n=2 reps=0: 2 parameters, no CX") {
    Circuit c = build_real_amplitudes(2, 0);
    CHECK(c.num_parameters() == 2);
    for (const auto& g : c.gates()) CHECK(g.kind != Circuit::Gate::Kind::Cx);
  }
  SECTION("all parameters zero gives the all-zeros state") {
    Circuit c = build_real_amplitudes(5, 1);
    std::vector<double> zeros(static_cast<std::size_t>(c.num_parameters()), 0.0);
    Statevector s = run_circuit(c, zeros);
    CHECK(std::abs(s[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
    for (std::size_t i = 1; i < s.dim(); ++i) CHECK(std::abs(s[i]) < 1e-12);
  }
  SECTION("amplitudes stay real; a single layer stays non-negative on [0, pi]") {
    std::mt19937_64 rng(4);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int t = 0; t < 20; ++t) {
      Circuit c = build_real_amplitudes(4, 2);
      std::vector<double> params(static_cast<std::size_t>(c.num_parameters()));
      for (auto& p : params) p = (2.0 * u() - 1.0) * 6.0;
      Statevector s = run_circuit(c, params);
      for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(s[i].imag()) < 1e-12);
    }
    for (int t = 0; t < 20; ++t) {
      Circuit c = build_real_amplitudes(4, 0);
      std::vector<double> params(static_cast<std::size_t>(c.num_parameters()));
      for (auto& p : params) p = u() * 3.14159265358979;
      Statevector s = run_circuit(c, params);
      double sum = 0.0;
      for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(s[i].real() > -1e-12);
        sum += s[i].real();
      }
      CHECK(sum >= 0.0);
    }
  }
}

TEST_CASE("qaoa circuit structure") {
  DiagonalOperator cost(6, {{ZMask::bit(0), 1.0}, {ZMask::bit(3) ^ ZMask::bit(5), -0.5}});
  SECTION("p=2 has 4 parameters") {
    Circuit c = build_qaoa_circuit(cost, 2);
    CHECK(c.num_parameters() == 4);
  }
  SECTION("zero angles keep the uniform superposition") {
    Circuit c = build_qaoa_circuit(cost, 3);
    std::vector<double> zeros(6, 0.0);
    Statevector s = run_circuit(c, zeros);
    const double amp = 1.0 / std::sqrt(64.0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      CHECK(std::abs(s[i] - std::complex<double>(amp, 0.0)) < 1e-12);
    }
  }
  SECTION("identity cost term only shifts the global phase") {
    DiagonalOperator ident(3, {{ZMask{}, 2.5}});
    Circuit c = build_qaoa_circuit(ident, 1);
    Statevector a = run_circuit(c, std::vector<double>{0.7, 0.3});
    Statevector b = run_circuit(c, std::vector<double>{0.0, 0.3});
    for (std::size_t i = 0; i < a.dim(); ++i) {
      CHECK(std::abs(std::norm(a[i]) - std::norm(b[i])) < 1e-12);
    }
  }
  SECTION("diagonal phases never change measurement probabilities") {
    Circuit c = build_qaoa_circuit(cost, 1);
    Statevector phased = run_circuit(c, std::vector<double>{1.3, 0.0});
    Statevector plain = run_circuit(c, std::vector<double>{0.0, 0.0});
    for (std::size_t i = 0; i < phased.dim(); ++i) {
      CHECK(std::norm(phased[i]) == Catch::Approx(std::norm(plain[i])).margin(1e-12));
    }
  }
}

TEST_CASE("run_circuit basics") {
  SECTION("empty circuit") {
    Circuit c(3);
    Statevector s = run_circuit(c, {});
    CHECK(std::abs(s[0] - std::complex<double>(1, 0)) < 1e-15);
  }
  SECTION("RY(pi) flips a qubit") {
    Circuit c(1);
    c.ry(0, c.new_parameter());
    Statevector s = run_circuit(c, std::vector<double>{3.14159265358979323846});
    CHECK(std::abs(s[1] - std::complex<double>(1, 0)) < 1e-12);
  }
  SECTION("double CX is the identity") {
    Circuit c(2);
    c.ry(0, c.new_parameter());
    c.ry(1, c.new_parameter());
    Statevector before = run_circuit(c, std::vector<double>{0.4, 1.1});
    c.cx(0, 1);
    c.cx(0, 1);
    Statevector after = run_circuit(c, std::vector<double>{0.4, 1.1});
    for (std::size_t i = 0; i < after.dim(); ++i) {
      CHECK(std::abs(after[i] - before[i]) < 1e-14);
    }
  }
  SECTION("parameter count mismatch") {
    Circuit c(1);
    c.ry(0, c.new_parameter());
    CHECK_THROWS_AS(run_circuit(c, {}), ValidationError);
  }
  SECTION("statevector capacity guard") {
    CHECK_THROWS_AS(Statevector(27), CapacityError);
  }
}

TEST_CASE("QAOA layer matches a dense matrix-exponential reference") {
  // 3-qubit synthetic diagonal cost
  DiagonalOperator cost(3, {{ZMask::bit(0), 0.8},
                            {ZMask::bit(1) ^ ZMask::bit(2), -1.3},
                            {ZMask::bit(0) ^ ZMask::bit(1) ^ ZMask::bit(2), 0.45},
                            {ZMask{}, 0.2}});
  const double gamma = 0.73, beta = -0.41;
  Circuit circuit = build_qaoa_circuit(cost, 1);
  Statevector fast = run_circuit(circuit, std::vector<double>{gamma, beta});

  const std::size_t dim = 8;
  // H_C as a dense diagonal matrix assembled from Pauli-Z products
  CMat hc = cmat(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (const auto& term : cost.terms()) {
      int parity = term.mask.overlap_parity(ZMask::from_bits(b));
      e += parity ? -term.coeff : term.coeff;
    }
    hc[b][b] = e;
  }
  // H_B = sum_i X_i
  CMat hb = cmat(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    for (int q = 0; q < 3; ++q) hb[b][b ^ (std::size_t{1} << q)] += 1.0;
  }
  auto scaled = [&](const CMat& m, std::complex<double> f) {
    CMat out = m;
    for (auto& row : out) {
      for (auto& v : row) v *= f;
    }
    return out;
  };
  CMat uc = expm(scaled(hc, std::complex<double>(0, -gamma)));
  CMat ub = expm(scaled(hb, std::complex<double>(0, -beta)));

  std::vector<std::complex<double>> ref(dim, 1.0 / std::sqrt(8.0));
  ref = apply(uc, ref);
  ref = apply(ub, ref);

  for (std::size_t i = 0; i < dim; ++i) {
    CHECK(std::abs(ref[i] - fast[i]) < 1e-8);
  }
}

TEST_CASE("norm preservation at 17 qubits") {
  const DiagonalOperator& op = qfold_test::problem17().op;
  REQUIRE(op.num_qubits() == 17);
  Circuit c = build_real_amplitudes(17, 1, Entanglement::Linear);
  std::mt19937_64 rng(8);
  std::vector<double> params(static_cast<std::size_t>(c.num_parameters()));
  for (auto& p : params) p = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 6.28;
  Statevector s = run_circuit(c, params);
  CHECK(std::abs(s.norm() - 1.0) < 1e-10);

  Circuit q = build_qaoa_circuit(op, 2);
  std::vector<double> qp{0.35, -0.8, 1.2, 0.15};
  Statevector s2 = run_circuit(q, qp);
  CHECK(std::abs(s2.norm() - 1.0) < 1e-10);
}

TEST_CASE("sampling") {
  SECTION("basis state gives a point mass") {
    Circuit c(3);
    c.ry(0, c.new_parameter());
    c.ry(2, c.new_parameter());
    Statevector s = run_circuit(c, std::vector<double>{3.14159265358979323846,
                                                       3.14159265358979323846});
    SampleSet samples = sample(s, 1000, std::nullopt, 42);
    REQUIRE(samples.counts.size() == 1);
    CHECK(samples.counts.begin()->first == 0b101);
    CHECK(samples.counts.begin()->second == 1000);
    CHECK(samples.bitstring(0b101) == "101");
  }
  SECTION("certain readout flip") {
    Statevector s(1);  // |0>
    ReadoutNoise noise = ReadoutNoise::uniform(1, 1.0, 0.0);
    SampleSet samples = sample(s, 500, noise, 7);
    REQUIRE(samples.counts.size() == 1);
    CHECK(samples.counts.begin()->first == 1);
  }
  SECTION("uniform two-qubit state within 5 sigma") {
    Circuit c(2);
    c.h(0);
    c.h(1);
    Statevector s = run_circuit(c, {});
    SampleSet samples = sample(s, 8192, std::nullopt, 123);
    const double sigma = std::sqrt(8192.0 * 0.25 * 0.75);
    for (std::uint64_t b = 0; b < 4; ++b) {
      const double count = static_cast<double>(samples.counts[b]);
      CHECK(std::abs(count - 2048.0) <= 5.0 * sigma);
    }
  }
  SECTION("seeded sampling is reproducible bit for bit") {
    Circuit c = build_real_amplitudes(5, 1);
    std::vector<double> params(static_cast<std::size_t>(c.num_parameters()), 0.37);
    Statevector s = run_circuit(c, params);
    SampleSet a = sample(s, 4096, std::nullopt, 2024);
    SampleSet b = sample(s, 4096, std::nullopt, 2024);
    CHECK(a.counts == b.counts);
    SampleSet c2 = sample(s, 4096, std::nullopt, 2025);
    CHECK(a.counts != c2.counts);
    ReadoutNoise noise = ReadoutNoise::uniform(5, 0.05, 0.02);
    SampleSet d = sample(s, 4096, noise, 99);
    SampleSet e = sample(s, 4096, noise, 99);
    CHECK(d.counts == e.counts);
  }
  SECTION("shot count is conserved") {
    Circuit c = build_real_amplitudes(4, 1);
    std::vector<double> params(static_cast<std::size_t>(c.num_parameters()), 1.0);
    Statevector s = run_circuit(c, params);
    SampleSet samples = sample(s, 8192, std::nullopt, 5);
    std::uint64_t total = 0;
    for (const auto& [k, v] : samples.counts) total += v;
    CHECK(total == 8192);
  }
}
