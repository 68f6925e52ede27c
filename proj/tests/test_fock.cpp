#include "zfstar/fock.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace zfstar;
using namespace zfstar::fock;

namespace {

// Independent Poisson oracle, via log-gamma rather than the amplitude
// recurrence the implementation uses.
double poisson_pmf(int n, double lambda) {
  if (lambda == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + n * std::log(lambda) - std::lgamma(n + 1.0));
}

FockState equal_superposition(std::vector<int> ns, int n_max) {
  std::vector<FockState> states;
  std::vector<std::complex<double>> coeffs;
  for (int n : ns) {
    states.push_back(number_state(n, n_max));
    coeffs.emplace_back(1.0, 0.0);
  }
  return superpose(states, coeffs);
}

}  // namespace

TEST_CASE("number states") {
  FockState vacuum = number_state(0, 10);
  CHECK(expected_number(vacuum) == 0.0);
  CHECK(number_variance(vacuum) == 0.0);

  FockState three = number_state(3, 10);
  CHECK(number_distribution(three)[3] == 1.0);
  CHECK(expected_number(three) == 3.0);

  for (int n = 0; n <= 6; ++n)
    CHECK(is_number_eigenstate(number_state(n, 6), 1e-9).definite);

  CHECK_THROWS_AS(number_state(4, 3), error);
  CHECK_THROWS_AS(number_state(-1, 3), error);
}

TEST_CASE("coherent amplitudes follow the closed form") {
  FockState z1 = coherent(1.0, 30);
  CHECK(std::abs(z1.amplitudes()[0].real() - std::exp(-0.5)) < 1e-12);
  CHECK(std::abs(z1.amplitudes()[0].real() - 0.606531) < 1e-6);
  CHECK(std::abs(number_distribution(z1)[0] - poisson_pmf(0, 1.0)) < 1e-12);
  CHECK(std::abs(number_distribution(z1)[0] - 0.367879) < 1e-6);

  FockState z2 = coherent(2.0, 40);
  CHECK(std::abs(z2.squared_norm() - 1.0) < 1e-9);

  FockState zero = coherent(0.0, 5);
  CHECK(zero.amplitudes()[0] == std::complex<double>{1.0});
  CHECK(expected_number(zero) == 0.0);

  // A complex amplitude carries the same photon statistics as its modulus.
  FockState zc = coherent({1.0, 1.0}, 40);
  CHECK(std::abs(expected_number(zc) - 2.0) < 1e-9);

  CHECK_THROWS_AS(coherent(3.0, 5), error);  // truncation too tight
}

TEST_CASE("coherent statistics are Poisson across the grid") {
  for (double z : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    FockState state = coherent(z, 60);
    double lambda = z * z;
    auto p = number_distribution(state);
    for (int n = 0; n <= 60; ++n)
      CHECK(std::abs(p[n] - poisson_pmf(n, lambda)) <= 1e-10);
    CHECK(std::abs(expected_number(state) - lambda) <= 1e-6);
    CHECK(std::abs(number_variance(state) - lambda) <= 1e-6);
  }
}

TEST_CASE("superpositions") {
  FockState s = equal_superposition({0, 2}, 5);
  CHECK(std::abs(expected_number(s) - 1.0) < 1e-12);
  CHECK(std::abs(number_variance(s) - 1.0) < 1e-12);
  CHECK_FALSE(is_number_eigenstate(s, 1e-3).definite);

  CHECK_THROWS_AS(superpose({number_state(0, 3), number_state(0, 4)},
                            {{1.0, 0.0}, {1.0, 0.0}}),
                  error);  // truncation mismatch
  CHECK_THROWS_AS(superpose({number_state(0, 3)}, {{0.0, 0.0}}), error);
  CHECK_THROWS_AS(superpose({number_state(0, 3), number_state(0, 3)},
                            {{1.0, 0.0}, {-1.0, 0.0}}),
                  error);  // cancels to zero
}

TEST_CASE("ladder operators") {
  // a† |n> = sqrt(n+1) |n+1>
  auto up = apply_creation(number_state(2, 6));
  CHECK(std::abs(up.state.amplitudes()[3].real() - std::sqrt(3.0)) < 1e-12);
  CHECK(up.leakage == 0.0);

  // a |0> = 0, flagged rather than rejected.
  auto down = apply_annihilation(number_state(0, 6));
  CHECK(down.zero);
  CHECK(down.state.squared_norm() == 0.0);

  // Creation at the truncation edge drops the top row and reports it.
  auto clipped = apply_creation(number_state(6, 6));
  CHECK(clipped.zero);
  CHECK(std::abs(clipped.leakage - 7.0) < 1e-12);

  // <z| a†a |z> = |z|^2, via the ladder route.
  FockState z = coherent(1.5, 40);
  auto lowered = apply_annihilation(z);
  CHECK(std::abs(lowered.state.squared_norm() - 2.25) < 1e-6);
}

TEST_CASE("the ladder route reproduces expected_number") {
  std::vector<FockState> battery = {
      number_state(0, 20), number_state(5, 20), coherent(1.0, 20),
      equal_superposition({0, 2}, 20), equal_superposition({1, 2, 7}, 20)};
  for (const FockState& s : battery) {
    double direct = expected_number(s);
    double quadratic = apply_annihilation(s).state.squared_norm();
    CHECK(std::abs(direct - quadratic) < 1e-9);
  }
}

TEST_CASE("mode energy") {
  CHECK(mode_energy(number_state(0, 5), 1.0) == 0.5);
  CHECK(mode_energy(number_state(2, 5), 1.0) == 2.5);
  CHECK(std::abs(mode_energy(coherent(2.0, 60), 1.0) - 4.5) < 1e-6);
  FockState s = coherent(1.3, 40);
  CHECK(mode_energy(s, 2.5) == 2.5 * (expected_number(s) + 0.5));
}

TEST_CASE("eigenstate detection") {
  CHECK_FALSE(is_number_eigenstate(coherent(1.0, 40), 1e-3).definite);
  // Max Poisson weight at |z|^2 = 1 is e^-1, far from 1.
  CHECK(std::abs(is_number_eigenstate(coherent(1.0, 40), 1e-3).probability -
                 std::exp(-1.0)) < 1e-9);
  auto nearly_vacuum = is_number_eigenstate(coherent(1e-6, 10), 1e-3);
  CHECK(nearly_vacuum.definite);
  CHECK(nearly_vacuum.n == 0);
}

TEST_CASE("normalization is enforced and restorable") {
  FockState half({{0.5, 0.0}}, "half");
  CHECK_THROWS_AS(number_distribution(half), error);
  CHECK_THROWS_AS(expected_number(half), error);
  FockState fixed = half.renormalized();
  CHECK(std::abs(fixed.squared_norm() - 1.0) < 1e-12);
  double total = 0.0;
  for (double p : number_distribution(fixed)) total += p;
  CHECK(std::abs(total - 1.0) < 1e-9);
  CHECK_THROWS_AS(FockState({}, "empty"), error);
}

TEST_CASE("bridge: number states become cantorian wholes") {
  for (int n : {0, 1, 5}) {
    BridgeResult bridge = to_structure(number_state(n, 10));
    CHECK(bridge.definite_number);
    CHECK(bridge.photon_count == n);
    CHECK(bridge.structure.validate().empty());
    CHECK(check_axioms(bridge.structure).all_pass());
    // Verified through the mereology layer.
    auto result = is_cantorian(bridge.structure, "alpha");
    CHECK(result.positive);
    CHECK(cardinal(bridge.structure, "alpha") ==
          static_cast<std::size_t>(n) + 1);
    CHECK(bridge.report.positive);
  }
}

TEST_CASE("bridge: indefinite states become non-cantorian wholes") {
  for (const FockState& s : {coherent(2.0, 60), equal_superposition({0, 2}, 5)}) {
    BridgeResult bridge = to_structure(s);
    CHECK_FALSE(bridge.definite_number);
    CHECK(bridge.structure.set_list().empty());
    CHECK(bridge.structure.validate().empty());
    CHECK(check_axioms(bridge.structure).all_pass());
    CHECK_FALSE(is_cantorian(bridge.structure, "alpha").positive);
    CHECK(cardinal(bridge.structure, "alpha") == std::nullopt);
    CHECK_FALSE(bridge.report.positive);
    CHECK(!bridge.interpretation.empty());
  }
  CHECK(to_structure(coherent(2.0, 60)).photon_count == 4);
}

TEST_CASE("bridge rounds mean occupation half-to-even") {
  CHECK(to_structure(equal_superposition({0, 1}, 3)).photon_count == 0);
  CHECK(to_structure(equal_superposition({1, 2}, 3)).photon_count == 2);
  CHECK(to_structure(equal_superposition({0, 2}, 3)).photon_count == 1);
}

TEST_CASE("bridge verdict matches the eigenstate flag across a battery") {
  std::vector<FockState> battery = {
      number_state(0, 8),  number_state(3, 8),
      coherent(0.5, 40),   coherent(1.0, 40),
      coherent(1e-6, 10),  equal_superposition({0, 2}, 8),
      equal_superposition({2, 3, 4}, 8)};
  for (const FockState& s : battery) {
    bool definite = is_number_eigenstate(s, 1e-9).definite;
    BridgeResult bridge = to_structure(s, 1e-9);
    CHECK(is_cantorian(bridge.structure, "alpha").positive == definite);
  }
}

TEST_CASE("distribution CSV") {
  std::ostringstream out;
  write_distribution_csv(number_state(1, 2), out);
  CHECK(out.str() == "n,probability\n0,0\n1,1\n2,0\n");

  std::ostringstream coherent_out;
  write_distribution_csv(coherent(1.0, 30), coherent_out);
  std::string text = coherent_out.str();
  CHECK(text.substr(0, 14) == "n,probability\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 32);  // header + 31 rows
}
