#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fibgirth/report.hpp"
#include "fibgirth/word.hpp"

namespace fibgirth {

inline constexpr int kMaxUnitaryDim = 8;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Complex matrices of dimension at most kMaxUnitaryDim, stack allocated.
using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxUnitaryDim,
                                    kMaxUnitaryDim>;

/// An element of SU(k): ||U*U - I|| <= 1e-10 and |det U - 1| <= 1e-10.
class UnitaryMatrix {
 public:
  /// Throws std::invalid_argument if the matrix violates either contract.
  explicit UnitaryMatrix(ComplexMatrix m);
  static UnitaryMatrix identity(int k);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  UnitaryMatrix adjoint() const;
  friend UnitaryMatrix operator*(const UnitaryMatrix& x, const UnitaryMatrix& y);

 private:
  struct Unchecked {};
  UnitaryMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;
  friend UnitaryMatrix project_su(const ComplexMatrix& m);
};

double operator_norm(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& m);  // ||M*M - I||

/// Nearest-direction projection onto SU(k): QR with positive diagonal, then
/// the determinant phase is divided out.
UnitaryMatrix project_su(const ComplexMatrix& m);

/// Substitutes a -> u, b -> v and multiplies left to right; inverses are
/// conjugate transposes. Throws std::invalid_argument on dimension mismatch.
UnitaryMatrix word_map(const Word& w, const UnitaryMatrix& u, const UnitaryMatrix& v);

/// ||I - m|| in the operator norm.
double dist_identity(const UnitaryMatrix& m);
double dist_identity(const ComplexMatrix& m);

/// Haar-distributed element of SU(k).
UnitaryMatrix random_su(int k, std::mt19937_64& rng);

/// Independent generator for sample `index` of a run with master seed `seed`.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

struct SamplingOptions {
  std::uint64_t budget = 1000;  // Haar starting pairs
  int refine = 0;               // hill-climbing steps per pair
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Sampled lower estimate of L_k(w) = max ||1 - w(u, v)|| over SU(k)^2.
/// Deterministic given the seed, independent of the thread count, and
/// nondecreasing in the budget.
double estimate_L(const Word& w, int k, const SamplingOptions& options);

/// Threshold a seed word must meet; a margin below 1/3.
inline constexpr double kSeedThreshold = 0.30;

struct SeedSearchResult {
  bool found = false;
  Word w, v;
  double estimate_w = 0, estimate_v = 0;
  std::uint64_t words_examined = 0;
  std::uint64_t words_surviving_screen = 0;
  double smallest_screened_max = 0;  // best certified lower bound seen among rejected words
  Word smallest_screened_word;
  bool free_certified = false;  // [w, v] != e in F2, so <w, v> is free of rank 2
  bool free_heuristic = false;  // no short relation is near the identity numerically
  std::string message;
};

/// Searches canonical words up to length_cap for two with sampled L_k <= 0.30
/// that generate a free subgroup. Every rejection is certified (an explicit
/// pair with ||1 - w(u,v)|| > 0.30); an acceptance is only a sampled bound.
/// Throws std::invalid_argument for k < 2.
SeedSearchResult find_seed_pair(int k, std::size_t length_cap, const SamplingOptions& options);

/// True unless some nontrivial word r of length <= max_length in two letters
/// has ||1 - r(w(u,v), v(u,v))|| <= 1e-6 on every one of `reps` Haar pairs.
bool free_subgroup_heuristic(const Word& w, const Word& v, int k, std::size_t max_length, int reps,
                             std::uint64_t seed);

struct DecayRow {
  int n = 0;
  std::uint64_t word_length = 0;  // l(a_n(w, v)) after reduction
  double L_hat = 0;
  std::optional<double> neg_log;  // -log(2 L_hat)
  std::uint64_t samples = 0;
  bool below_float_range = false;
};

struct DecayReport {
  int k = 2;
  std::uint64_t seed = 0;
  Word w, v;
  std::vector<DecayRow> rows;
  /// Largest C with L_hat <= exp(-C l^{log2 phi}) on every row with n >= 2.
  std::optional<double> fitted_C;
  /// Largest D with -log(2 L_hat) >= D phi^n on every row with n >= 2.
  std::optional<double> fitted_D;
};

/// Rows for w_n = a_n(w, v), n = 0..n_max. Values are computed through the
/// commutator recursion on I + Delta representations, which keeps tiny
/// distances accurate down to the double underflow threshold.
DecayReport decay_report(int k, int n_max, const Word& w, const Word& v, const SamplingOptions& options);

/// Fibonacci recursion -log(2 L_n) >= -log(2 L_{n-1}) - log(2 L_{n-2}) on rows
/// where all three values are representable, and strict decrease of L_hat
/// from n = 2 on.
Report check_decay(const DecayReport& report);

/// ||1 - a_n(w(u,v), v(u,v))|| for n = 0..n_max at one point, via the same
/// recursion as decay_report.
std::vector<double> construction_distances(const Word& w, const Word& v, const UnitaryMatrix& u,
                                           const UnitaryMatrix& x, int n_max);
std::vector<double> construction_distances_b(const Word& w, const Word& v, const UnitaryMatrix& u,
                                             const UnitaryMatrix& x, int n_max);

struct ContractionCheck {
  std::uint64_t samples = 0;
  std::uint64_t holding = 0;
  double worst_margin = 0;  // min over samples of bound - lhs
};

/// ||1 - [u,v]|| <= min(2, 2 ||1-u|| ||1-v||) + 1e-9 on Haar pairs and on
/// pairs drawn near the identity (half each).
ContractionCheck check_commutator_contraction(int k, std::uint64_t samples, std::uint64_t seed);

struct ProductFormCounterexample {
  double lhs = 0;  // ||1 - u1 u2||
  double rhs = 0;  // 2 ||1 - u1|| ||1 - u2||
  bool refutes = false;
};

/// Evaluates ||1 - u1 u2|| <= 2 ||1 - u1|| ||1 - u2|| at u2 = I.
ProductFormCounterexample product_form_counterexample(int k, std::uint64_t seed);

}  // namespace fibgirth
