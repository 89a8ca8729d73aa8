#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibgirth/magnus.hpp"
#include "fibgirth/report.hpp"
#include "fibgirth/word.hpp"

namespace fibgirth {

enum class Variant { Standard, Primed };
enum class Which { A, B };

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

inline constexpr int kDefaultMaxLevel = 24;

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The pair (a_n, b_n). Standard starts from a_0 = b^-1, b_0 = aba^-1; Primed
/// from a_0 = a, b_0 = b. Both follow a_n = a_{n-1} b_{n-1},
/// b_n = a_{n-1}^-1 b_{n-1}^-1.
struct ConstructionPair {
  int level = 0;
  Variant variant = Variant::Standard;
  Word a;
  Word b;
  std::uint64_t predicted_len_a = 0;
  std::uint64_t predicted_len_b = 0;
  std::uint64_t depth_bound = 0;
};

/// Throws SizeError when n exceeds max_level.
ConstructionPair build_pair(int n, Variant variant = Variant::Standard, int max_level = kDefaultMaxLevel);

/// All pairs for levels 0..n_max, built incrementally.
std::vector<ConstructionPair> build_levels(int n_max, Variant variant = Variant::Standard,
                                           int max_level = kDefaultMaxLevel);

/// Closed-form word lengths; exact for n <= 58.
std::uint64_t predicted_length(int n, Which which, Variant variant = Variant::Standard);

/// f_0 = 0, f_1 = 1, f_{m+2} = f_{m+1} + f_m. Throws std::overflow_error past f_93.
std::uint64_t fibonacci(int m);

/// f_{n+2}: a_n lies in this term of the lower central series.
std::uint64_t depth_lower_bound(int n);

/// Lower bound for the depth of the primed words: g_0 = g_1 = 1,
/// g_n = g_{n-1} + g_{n-2}.
std::uint64_t primed_depth_lower_bound(int n);

/// The automorphisms a -> a^-1, b -> b^-1 and a -> a, b -> b^-1.
Word sigma(const Word& w);
Word tau(const Word& w);

/// Structural identities of the standard construction at level n.
Report verify_level(int n);

/// [w1, w2] = [w1 w2^n, w2] = [w1, w2 w1^n] for n in -3..3 on `samples`
/// random pairs of reduced words of length <= 12.
Report verify_commutator_shifts(int samples = 40, std::uint64_t seed = 1);

enum class DepthMode { Bound, Magnus };
DepthMode parse_depth_mode(const std::string& text);

struct ExponentRow {
  int n = 0;
  Variant variant = Variant::Standard;
  std::uint64_t len_a = 0;
  std::uint64_t len_b = 0;
  std::uint64_t depth_bound = 0;
  std::optional<DepthResult> depth_exact;  // Magnus mode only
  std::uint64_t depth_hat = 0;             // depth used for the estimate
  std::optional<double> estimate;          // log(depth_hat) / log(len_a); absent when len_a < 2
  bool flagged = false;                    // estimate rests on a bound, not an exact depth
  std::string label;                       // set for rows of arbitrary words
};

std::vector<ExponentRow> exponent_table(int n_max, DepthMode mode, int cap = kDefaultMagnusCap);

/// log(depth) / log(length) for an arbitrary word, with depth from Magnus.
ExponentRow exponent_row_for(const Word& w, int cap = kDefaultMagnusCap);

}  // namespace fibgirth
