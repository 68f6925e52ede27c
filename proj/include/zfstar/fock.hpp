#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "zfstar/mereology.hpp"
#include "zfstar/model.hpp"

namespace zfstar::fock {

inline constexpr double kNormTolerance = 1e-9;

// Truncated single-mode state: amplitudes c_0..c_{n_max} over the number
// basis. Immutable.
class FockState {
 public:
  FockState(std::vector<std::complex<double>> amplitudes, std::string label);

  int truncation() const { return static_cast<int>(amplitudes_.size()) - 1; }
  const std::vector<std::complex<double>>& amplitudes() const {
    return amplitudes_;
  }
  const std::string& label() const { return label_; }

  double squared_norm() const;
  double truncation_deficit() const { return 1.0 - squared_norm(); }

  FockState renormalized() const;  // error on the zero vector

 private:
  std::vector<std::complex<double>> amplitudes_;
  std::string label_;
};

// |n> on a basis truncated at n_max; requires 0 <= n <= n_max.
FockState number_state(int n, int n_max);

// Coherent state: c_n = exp(-|z|^2/2) z^n / sqrt(n!), kept unrenormalized.
// Fails when the truncated squared norm falls short of 1 by more than
// epsilon; truncation_deficit() reports the shortfall.
FockState coherent(std::complex<double> z, int n_max,
                   double epsilon = kNormTolerance);

// Normalized linear combination. States must share a truncation and the
// combination must not vanish.
FockState superpose(const std::vector<FockState>& states,
                    const std::vector<std::complex<double>>& coefficients);

// Ladder results are unnormalized. Creation drops the amplitude pushed past
// the truncation and reports its squared weight as leakage; annihilating the
// vacuum yields the zero vector, flagged rather than rejected.
struct LadderResult {
  FockState state;
  double leakage = 0.0;
  bool zero = false;
};

LadderResult apply_creation(const FockState& s);
LadderResult apply_annihilation(const FockState& s);

// P(n) = |c_n|^2. The state must be normalized to within tol.
std::vector<double> number_distribution(const FockState& s,
                                        double tol = kNormTolerance);
double expected_number(const FockState& s, double tol = kNormTolerance);
double number_variance(const FockState& s, double tol = kNormTolerance);

// omega * (<N> + 1/2), in units of hbar*omega.
double mode_energy(const FockState& s, double omega,
                   double tol = kNormTolerance);

struct EigenstateVerdict {
  bool definite = false;
  int n = -1;          // dominant occupation when definite
  double probability = 0.0;  // its probability either way
};

// Definite particle number up to tol: some n holds probability >= 1 - tol.
EigenstateVerdict is_number_eigenstate(const FockState& s, double tol = 1e-9);

// The state rendered as a finite structure: a whole PT "alpha" with one
// photon PT per quantum ("p1".."pk", each a part of alpha, parthood
// reflexive). When the state has definite particle number n, k = n and a
// set "s_parts" collects exactly the parts of alpha, so alpha is cantorian
// with cardinal n + 1 (alpha is a part of itself). Otherwise k is the
// rounded mean occupation (half-to-even), no collecting set exists, and
// alpha is non-cantorian with no cardinal. The report comes from the
// mereology layer, not from the eigenstate flag.
struct BridgeResult {
  Structure structure;
  ClassificationReport report;
  bool definite_number = false;
  int photon_count = 0;
  std::string interpretation;  // annotation only, no structural meaning
};

BridgeResult to_structure(const FockState& s, double tol = 1e-9);

// CSV with header "n,probability", one row per basis state.
void write_distribution_csv(const FockState& s, std::ostream& out);

}  // namespace zfstar::fock
