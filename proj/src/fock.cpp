#include "zfstar/fock.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace zfstar::fock {

namespace {

std::string format_complex(std::complex<double> z) {
  std::ostringstream out;
  out << z.real();
  if (z.imag() != 0.0) out << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return out.str();
}

void require_normalized(const FockState& s, double tol) {
  double deficit = std::abs(1.0 - s.squared_norm());
  if (deficit > tol)
    throw error("state '" + s.label() + "' is not normalized (|1 - norm^2| = " +
                std::to_string(deficit) + " exceeds tolerance)");
}

// Ties to even; exact halves coming out of float arithmetic land a few ulp
// off, so anything within 1e-9 of .5 counts as a tie.
double round_half_even(double x) {
  double floor = std::floor(x);
  double frac = x - floor;
  if (std::abs(frac - 0.5) > 1e-9) return frac > 0.5 ? floor + 1.0 : floor;
  return std::fmod(floor, 2.0) == 0.0 ? floor : floor + 1.0;
}

}  // namespace

FockState::FockState(std::vector<std::complex<double>> amplitudes,
                     std::string label)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  if (amplitudes_.empty())
    throw error("a state needs at least the vacuum amplitude");
}

double FockState::squared_norm() const {
  double total = 0.0;
  for (const auto& c : amplitudes_) total += std::norm(c);
  return total;
}

FockState FockState::renormalized() const {
  double norm = std::sqrt(squared_norm());
  if (norm == 0.0) throw error("cannot renormalize the zero vector");
  auto amps = amplitudes_;
  for (auto& c : amps) c /= norm;
  return FockState(std::move(amps), label_);
}

FockState number_state(int n, int n_max) {
  if (n < 0 || n_max < 0 || n > n_max)
    throw error("number state needs 0 <= n <= n_max, got n = " +
                std::to_string(n) + ", n_max = " + std::to_string(n_max));
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(n_max) + 1);
  amps[static_cast<std::size_t>(n)] = 1.0;
  return FockState(std::move(amps), "number:" + std::to_string(n));
}

FockState coherent(std::complex<double> z, int n_max, double epsilon) {
  if (n_max < 0) throw error("n_max must be nonnegative");
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(n_max) + 1);
  amps[0] = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n <= n_max; ++n)
    amps[static_cast<std::size_t>(n)] =
        amps[static_cast<std::size_t>(n - 1)] * z / std::sqrt(double(n));
  FockState state(std::move(amps), "coherent:" + format_complex(z));
  if (state.truncation_deficit() > epsilon)
    throw error("truncation at n_max = " + std::to_string(n_max) +
                " leaves a norm deficit of " +
                std::to_string(state.truncation_deficit()) +
                ", above the requested " + std::to_string(epsilon));
  return state;
}

FockState superpose(const std::vector<FockState>& states,
                    const std::vector<std::complex<double>>& coefficients) {
  if (states.empty() || states.size() != coefficients.size())
    throw error("superpose needs one coefficient per state");
  const int n_max = states.front().truncation();
  for (const auto& s : states)
    if (s.truncation() != n_max)
      throw error("superpose needs matching truncations (" +
                  std::to_string(s.truncation()) + " vs " +
                  std::to_string(n_max) + ")");
  bool any = false;
  for (const auto& c : coefficients)
    if (c != std::complex<double>{}) any = true;
  if (!any) throw error("superpose coefficients must not all be zero");

  std::vector<std::complex<double>> amps(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t n = 0; n < amps.size(); ++n)
      amps[n] += coefficients[i] * states[i].amplitudes()[n];

  std::string label = "superpose(";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) label += ", ";
    label += states[i].label();
  }
  label += ")";
  FockState combined(std::move(amps), std::move(label));
  if (combined.squared_norm() == 0.0)
    throw error("superposition cancels to the zero vector");
  return combined.renormalized();
}

LadderResult apply_creation(const FockState& s) {
  const auto& c = s.amplitudes();
  std::vector<std::complex<double>> out(c.size());
  for (std::size_t n = 0; n + 1 < c.size(); ++n)
    out[n + 1] = std::sqrt(double(n + 1)) * c[n];
  double leakage = double(c.size()) * std::norm(c.back());
  FockState state(std::move(out), "create(" + s.label() + ")");
  return {state, leakage, state.squared_norm() == 0.0};
}

LadderResult apply_annihilation(const FockState& s) {
  const auto& c = s.amplitudes();
  std::vector<std::complex<double>> out(c.size());
  for (std::size_t n = 1; n < c.size(); ++n)
    out[n - 1] = std::sqrt(double(n)) * c[n];
  FockState state(std::move(out), "annihilate(" + s.label() + ")");
  return {state, 0.0, state.squared_norm() == 0.0};
}

std::vector<double> number_distribution(const FockState& s, double tol) {
  require_normalized(s, tol);
  std::vector<double> p(s.amplitudes().size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm(s.amplitudes()[n]);
  return p;
}

double expected_number(const FockState& s, double tol) {
  auto p = number_distribution(s, tol);
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += double(n) * p[n];
  return mean;
}

double number_variance(const FockState& s, double tol) {
  auto p = number_distribution(s, tol);
  double mean = 0.0, second = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    mean += double(n) * p[n];
    second += double(n) * double(n) * p[n];
  }
  return second - mean * mean;
}

double mode_energy(const FockState& s, double omega, double tol) {
  return omega * (expected_number(s, tol) + 0.5);
}

EigenstateVerdict is_number_eigenstate(const FockState& s, double tol) {
  auto p = number_distribution(s);
  std::size_t best = 0;
  for (std::size_t n = 1; n < p.size(); ++n)
    if (p[n] > p[best]) best = n;
  EigenstateVerdict verdict;
  verdict.probability = p[best];
  verdict.definite = p[best] >= 1.0 - tol;
  verdict.n = verdict.definite ? static_cast<int>(best) : -1;
  return verdict;
}

BridgeResult to_structure(const FockState& s, double tol) {
  EigenstateVerdict verdict = is_number_eigenstate(s, tol);
  int photons = verdict.definite
                    ? verdict.n
                    : static_cast<int>(round_half_even(expected_number(s)));

  std::vector<std::string> elements = {"alpha"};
  std::vector<Structure::Pair> parthood = {{"alpha", "alpha"}};
  for (int i = 1; i <= photons; ++i) {
    std::string p = "p" + std::to_string(i);
    parthood.emplace_back(p, p);
    parthood.emplace_back(p, "alpha");
    elements.push_back(std::move(p));
  }
  std::vector<std::string> sets;
  std::vector<Structure::Pair> membership;
  if (verdict.definite) {
    // Collect the parts of alpha (alpha itself included) into one set.
    for (const auto& name : elements) membership.emplace_back(name, "s_parts");
    elements.push_back("s_parts");
    sets.push_back("s_parts");
  }

  BridgeResult result{
      Structure(std::move(elements), std::move(sets), std::move(membership),
                std::move(parthood)),
      {}, verdict.definite, photons, {}};
  result.report = classify(result.structure, "alpha");
  result.interpretation =
      verdict.definite
          ? "definite particle number: the state is a number eigenstate "
            "within tolerance, so the parts of alpha form a set"
          : "undefined particle number: the state superposes distinct number "
            "eigenstates and is treated as a single whole with no definite "
            "photon count, not as a statistical mixture; the photon PT count "
            "is the rounded mean occupation and carries no structural "
            "meaning";
  return result;
}

void write_distribution_csv(const FockState& s, std::ostream& out) {
  out << "n,probability\n";
  auto p = number_distribution(s);
  char buf[64];
  for (std::size_t n = 0; n < p.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n, p[n]);
    out << buf;
  }
}

}  // namespace zfstar::fock
