#include "fibgirth/unitary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "fibgirth/construction.hpp"
#include "fibgirth/girth.hpp"

namespace fibgirth {
namespace {

using Complex = std::complex<double>;
constexpr std::size_t kRenormalizeEvery = 1000;
constexpr std::uint64_t kScreenSamples = 64;

ComplexMatrix eye(int k) { return ComplexMatrix::Identity(k, k); }

ComplexMatrix gaussian(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double re = normal(rng);
      double im = normal(rng);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return z;
}

ComplexMatrix project_raw(const ComplexMatrix& m) {
  const int k = static_cast<int>(m.rows());
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < k; ++j) {
    Complex d = r(j, j);
    double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  Complex det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / k);
  return q;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

ComplexMatrix evaluate_raw(std::span<const Letter> letters, const ComplexMatrix& u, const ComplexMatrix& v) {
  const int k = static_cast<int>(u.rows());
  const ComplexMatrix images[4] = {u, u.adjoint(), v, v.adjoint()};
  ComplexMatrix acc = eye(k);
  std::size_t since_check = 0;
  for (Letter x : letters) {
    acc = acc * images[index(x)];
    if (++since_check >= kRenormalizeEvery) {
      since_check = 0;
      if (unitarity_defect(acc) > kUnitaryTolerance) acc = project_raw(acc);
    }
  }
  return acc;
}

// An element I + d of SU(k) with the offset d kept explicitly.
struct NearIdentity {
  ComplexMatrix m;
  ComplexMatrix d;

  static NearIdentity from(const ComplexMatrix& u) { return {u, u - eye(static_cast<int>(u.rows()))}; }
  NearIdentity inv() const { return {m.adjoint(), d.adjoint()}; }
};

NearIdentity make(ComplexMatrix d) {
  ComplexMatrix m = eye(static_cast<int>(d.rows())) + d;
  return {std::move(m), std::move(d)};
}

// [P, Q] - I = (PQ - QP) P^-1 Q^-1 = (dP dQ - dQ dP) P* Q*.
NearIdentity comm(const NearIdentity& p, const NearIdentity& q) {
  return make((p.d * q.d - q.d * p.d) * p.m.adjoint() * q.m.adjoint());
}

// P Q P^-1 - I = P dQ P*.
NearIdentity conj(const NearIdentity& p, const NearIdentity& q) { return make(p.m * q.d * p.m.adjoint()); }

struct Levels {
  std::vector<NearIdentity> a, b;
};

Levels construction_levels(const ComplexMatrix& x, const ComplexMatrix& y, int n_max) {
  Levels out;
  // references into earlier levels are held across push_back below
  out.a.reserve(n_max + 1);
  out.b.reserve(n_max + 1);
  const NearIdentity nx = NearIdentity::from(x), ny = NearIdentity::from(y);
  out.a.push_back(ny.inv());       // a_0 = b^-1
  out.b.push_back(conj(nx, ny));   // b_0 = a b a^-1
  if (n_max >= 1) {
    out.a.push_back(comm(ny.inv(), nx));  // a_1 = [b^-1, a]
    out.b.push_back(comm(ny, nx));        // b_1 = [b, a]
  }
  for (int n = 2; n <= n_max; ++n) {
    const NearIdentity& a2 = out.a[n - 2];
    const NearIdentity& b2 = out.b[n - 2];
    out.a.push_back(comm(a2, b2));              // a_n = [a_{n-2}, b_{n-2}]
    out.b.push_back(comm(b2.inv(), a2.inv()));  // b_n = [b_{n-2}^-1, a_{n-2}^-1]
  }
  return out;
}

using Objective = std::function<double(const ComplexMatrix&, const ComplexMatrix&)>;

// Value of one sample: a Haar starting pair, then `refine` steps of random
// perturbation hill climbing with the step halved after each rejection.
double sample_value(int k, std::uint64_t seed, std::uint64_t index, int refine, const Objective& f) {
  std::mt19937_64 rng = sample_stream(seed, index);
  ComplexMatrix u = random_su(k, rng).matrix();
  ComplexMatrix v = random_su(k, rng).matrix();
  double best = f(u, v);
  double scale = 0.5;
  for (int step = 0; step < refine; ++step) {
    ComplexMatrix u2 = project_raw(u + scale * gaussian(k, rng));
    ComplexMatrix v2 = project_raw(v + scale * gaussian(k, rng));
    double value = f(u2, v2);
    if (value > best) {
      best = value;
      u = std::move(u2);
      v = std::move(v2);
    } else {
      scale *= 0.5;
    }
  }
  return best;
}

// Maximum over sample indices [first, last); each index has its own stream,
// so the result does not depend on how indices are split across threads.
double sampled_max(int k, const SamplingOptions& options, const Objective& f, std::uint64_t first = 0) {
  const std::uint64_t last = first + options.budget;
  const unsigned threads = std::max(1u, options.threads);
  std::vector<double> partial(threads, 0.0);
  std::atomic<std::uint64_t> next{first};
  constexpr std::uint64_t kChunk = 64;
  auto worker = [&](unsigned id) {
    for (std::uint64_t start = next.fetch_add(kChunk); start < last; start = next.fetch_add(kChunk))
      for (std::uint64_t i = start; i < std::min(last, start + kChunk); ++i)
        partial[id] = std::max(partial[id], sample_value(k, options.seed, i, options.refine, f));
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  return *std::max_element(partial.begin(), partial.end());
}

void check_k(int k) {
  if (k < 1 || k > kMaxUnitaryDim) throw std::invalid_argument("k must lie in 1.." + std::to_string(kMaxUnitaryDim));
}

void check_dims(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1 || m_.rows() > kMaxUnitaryDim)
    throw std::invalid_argument("unitary matrices must be square with dimension 1.." +
                                std::to_string(kMaxUnitaryDim));
  if (unitarity_defect(m_) > kUnitaryTolerance) throw std::invalid_argument("matrix is not unitary");
  if (std::abs(m_.determinant() - Complex(1.0)) > kUnitaryTolerance)
    throw std::invalid_argument("matrix does not have determinant 1");
}

UnitaryMatrix UnitaryMatrix::identity(int k) {
  check_k(k);
  return UnitaryMatrix(eye(k));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), Unchecked{}); }

UnitaryMatrix operator*(const UnitaryMatrix& x, const UnitaryMatrix& y) {
  check_dims(x, y);
  return UnitaryMatrix(x.m_ * y.m_, UnitaryMatrix::Unchecked{});
}

double operator_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double unitarity_defect(const ComplexMatrix& m) {
  return operator_norm(m.adjoint() * m - eye(static_cast<int>(m.rows())));
}

UnitaryMatrix project_su(const ComplexMatrix& m) { return UnitaryMatrix(project_raw(m), UnitaryMatrix::Unchecked{}); }

UnitaryMatrix word_map(const Word& w, const UnitaryMatrix& u, const UnitaryMatrix& v) {
  check_dims(u, v);
  return project_su(evaluate_raw(w.letters(), u.matrix(), v.matrix()));
}

double dist_identity(const ComplexMatrix& m) { return operator_norm(eye(static_cast<int>(m.rows())) - m); }
double dist_identity(const UnitaryMatrix& m) { return dist_identity(m.matrix()); }

UnitaryMatrix random_su(int k, std::mt19937_64& rng) {
  check_k(k);
  if (k == 1) return UnitaryMatrix::identity(1);
  return project_su(gaussian(k, rng));
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xd1342543de82ef95ull + 1)));
}

double estimate_L(const Word& w, int k, const SamplingOptions& options) {
  check_k(k);
  if (options.budget < 1) throw std::invalid_argument("sampling budget must be at least 1");
  if (w.empty()) return 0.0;
  const auto letters = w.letters();
  return sampled_max(k, options, [letters](const ComplexMatrix& u, const ComplexMatrix& v) {
    return dist_identity(evaluate_raw(letters, u, v));
  });
}

bool free_subgroup_heuristic(const Word& w, const Word& v, int k, std::size_t max_length, int reps,
                             std::uint64_t seed) {
  constexpr double kRelationTolerance = 1e-6;
  // Relations still consistent with every representation tried so far.
  std::vector<Word> suspects;
  for (int rep = 0; rep < reps; ++rep) {
    std::mt19937_64 rng = sample_stream(seed ^ 0xf4ee, static_cast<std::uint64_t>(rep));
    const ComplexMatrix u0 = random_su(k, rng).matrix();
    const ComplexMatrix v0 = random_su(k, rng).matrix();
    const ComplexMatrix x = evaluate_raw(w.letters(), u0, v0);
    const ComplexMatrix y = evaluate_raw(v.letters(), u0, v0);
    const ComplexMatrix images[4] = {x, x.adjoint(), y, y.adjoint()};
    if (rep == 0) {
      std::vector<Letter> buf;
      auto dfs = [&](auto&& self, const ComplexMatrix& acc) -> void {
        if (!buf.empty() && dist_identity(acc) <= kRelationTolerance) suspects.push_back(Word::reduce(buf));
        if (buf.size() == max_length) return;
        for (Letter l : {Letter::a, Letter::A, Letter::b, Letter::B}) {
          if (!buf.empty() && is_inverse_pair(buf.back(), l)) continue;
          buf.push_back(l);
          self(self, acc * images[index(l)]);
          buf.pop_back();
        }
      };
      dfs(dfs, eye(k));
    } else {
      std::erase_if(suspects, [&](const Word& r) {
        ComplexMatrix acc = eye(k);
        for (Letter l : r.letters()) acc = acc * images[index(l)];
        return dist_identity(acc) > kRelationTolerance;
      });
    }
    if (suspects.empty()) return true;
  }
  return suspects.empty();
}

SeedSearchResult find_seed_pair(int k, std::size_t length_cap, const SamplingOptions& options) {
  if (k < 2) throw std::invalid_argument("SU(1) is trivial: every word is an exact law, no seed pair is needed");
  check_k(k);
  SeedSearchResult result;
  result.smallest_screened_max = std::numeric_limits<double>::infinity();
  SamplingOptions screen = options;
  screen.budget = std::min<std::uint64_t>(kScreenSamples, options.budget);
  screen.refine = 0;

  std::vector<std::pair<Word, double>> accepted;
  for (std::size_t length = 1; length <= length_cap; ++length) {
    for (const Word& w : enumerate_canonical(static_cast<int>(length))) {
      ++result.words_examined;
      double screened = estimate_L(w, k, screen);
      if (screened > kSeedThreshold) {
        if (screened < result.smallest_screened_max) {
          result.smallest_screened_max = screened;
          result.smallest_screened_word = w;
        }
        continue;
      }
      ++result.words_surviving_screen;
      double full = estimate_L(w, k, options);
      if (full <= kSeedThreshold) accepted.emplace_back(w, full);
    }
  }

  // L_k is invariant under the letter symmetries, so orbit images of an
  // accepted word are accepted too.
  std::vector<std::pair<Word, double>> pool;
  for (const auto& [w, value] : accepted)
    for (const auto& g : letter_map_group(Symmetries::all())) {
      std::vector<Letter> image;
      for (Letter x : w.letters()) image.push_back(g[index(x)]);
      pool.emplace_back(Word::reduce(image), value);
    }
  for (std::size_t i = 0; i < pool.size() && !result.found; ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Word& w = pool[i].first;
      const Word& v = pool[j].first;
      if (commutator(w, v).empty()) continue;
      if (!free_subgroup_heuristic(w, v, k, 8, 1000, options.seed)) continue;
      result.found = true;
      result.w = w;
      result.v = v;
      result.estimate_w = pool[i].second;
      result.estimate_v = pool[j].second;
      result.free_certified = true;
      result.free_heuristic = true;
      result.message = "sampled bound only: L estimates are maxima over " + std::to_string(options.budget) +
                       " refined Haar samples, not certified maxima";
      break;
    }
  if (!result.found) {
    result.message = "no word of length <= " + std::to_string(length_cap) + " has sampled L_" +
                     std::to_string(k) + " <= " + std::to_string(kSeedThreshold) + "; every rejected word has a " +
                     "certified value above the threshold";
    if (std::isfinite(result.smallest_screened_max))
      result.message += " (smallest: " + std::to_string(result.smallest_screened_max) + " for " +
                        format(result.smallest_screened_word) + ")";
    result.message += ". Seed pairs exist but are not known constructively; try a larger --length-cap.";
  }
  return result;
}

std::vector<double> construction_distances(const Word& w, const Word& v, const UnitaryMatrix& u,
                                           const UnitaryMatrix& x, int n_max) {
  check_dims(u, x);
  Levels levels = construction_levels(evaluate_raw(w.letters(), u.matrix(), x.matrix()),
                                      evaluate_raw(v.letters(), u.matrix(), x.matrix()), n_max);
  std::vector<double> out;
  for (const auto& a : levels.a) out.push_back(operator_norm(a.d));
  return out;
}

std::vector<double> construction_distances_b(const Word& w, const Word& v, const UnitaryMatrix& u,
                                             const UnitaryMatrix& x, int n_max) {
  check_dims(u, x);
  Levels levels = construction_levels(evaluate_raw(w.letters(), u.matrix(), x.matrix()),
                                      evaluate_raw(v.letters(), u.matrix(), x.matrix()), n_max);
  std::vector<double> out;
  for (const auto& b : levels.b) out.push_back(operator_norm(b.d));
  return out;
}

DecayReport decay_report(int k, int n_max, const Word& w, const Word& v, const SamplingOptions& options) {
  check_k(k);
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (options.budget < 1) throw std::invalid_argument("sampling budget must be at least 1");
  DecayReport report;
  report.k = k;
  report.seed = options.seed;
  report.w = w;
  report.v = v;
  const auto levels = build_levels(n_max);
  const double log2_phi = std::log2((1.0 + std::sqrt(5.0)) / 2.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto wl = w.letters();
  const auto vl = v.letters();
  for (int n = 0; n <= n_max; ++n) {
    DecayRow row;
    row.n = n;
    row.word_length = apply_endomorphism(levels[n].a, w, v).length();
    row.samples = options.budget;
    row.L_hat = sampled_max(k, options, [&, n](const ComplexMatrix& a, const ComplexMatrix& b) {
      Levels lv = construction_levels(evaluate_raw(wl, a, b), evaluate_raw(vl, a, b), n);
      return operator_norm(lv.a[n].d);
    });
    row.below_float_range = !(row.L_hat >= std::numeric_limits<double>::min());
    if (row.L_hat > 0) row.neg_log = -std::log(2.0 * row.L_hat);
    report.rows.push_back(row);
  }
  for (const auto& row : report.rows) {
    if (row.n < 2 || !row.neg_log || row.below_float_range) continue;
    double c = -std::log(row.L_hat) / std::pow(static_cast<double>(row.word_length), log2_phi);
    double d = *row.neg_log / std::pow(phi, row.n);
    report.fitted_C = report.fitted_C ? std::min(*report.fitted_C, c) : c;
    report.fitted_D = report.fitted_D ? std::min(*report.fitted_D, d) : d;
  }
  return report;
}

Report check_decay(const DecayReport& report) {
  Report out;
  const auto& rows = report.rows;
  auto usable = [](const DecayRow& r) { return !r.below_float_range && r.neg_log.has_value(); };
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const DecayRow &r = rows[i], &p = rows[i - 1], &q = rows[i - 2];
    if (!usable(r) || !usable(p) || !usable(q)) continue;
    const double rhs = *p.neg_log + *q.neg_log;
    out.add("decay recursion at n=" + std::to_string(r.n), *r.neg_log >= rhs,
            fmt::format("{:.6g} >= {:.6g}", *r.neg_log, rhs));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const DecayRow &r = rows[i], &p = rows[i - 1];
    if (p.n < 2) continue;
    if (r.below_float_range && p.below_float_range) continue;
    out.add("L_hat strictly decreasing at n=" + std::to_string(r.n), r.L_hat < p.L_hat,
            fmt::format("{:.6g} < {:.6g}", r.L_hat, p.L_hat));
  }
  return out;
}

ContractionCheck check_commutator_contraction(int k, std::uint64_t samples, std::uint64_t seed) {
  ContractionCheck check;
  check.worst_margin = std::numeric_limits<double>::infinity();
  std::uniform_real_distribution<double> exponent(0.0, 3.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_stream(seed, i);
    ComplexMatrix u, v;
    if (i % 2 == 0) {
      u = random_su(k, rng).matrix();
      v = random_su(k, rng).matrix();
    } else {
      double su = std::pow(10.0, -exponent(rng));
      double sv = std::pow(10.0, -exponent(rng));
      u = project_raw(eye(k) + su * gaussian(k, rng));
      v = project_raw(eye(k) + sv * gaussian(k, rng));
    }
    const double lhs = dist_identity(u * v * u.adjoint() * v.adjoint());
    const double bound = std::min(2.0, 2.0 * dist_identity(u) * dist_identity(v));
    const double margin = bound - lhs;
    ++check.samples;
    if (margin >= -1e-9) ++check.holding;
    check.worst_margin = std::min(check.worst_margin, margin);
  }
  return check;
}

ProductFormCounterexample product_form_counterexample(int k, std::uint64_t seed) {
  std::mt19937_64 rng = sample_stream(seed, 0);
  const UnitaryMatrix u1 = random_su(k, rng);
  const UnitaryMatrix u2 = UnitaryMatrix::identity(k);
  ProductFormCounterexample c;
  c.lhs = dist_identity(u1 * u2);
  c.rhs = 2.0 * dist_identity(u1) * dist_identity(u2);
  c.refutes = c.lhs > c.rhs + 1e-12;
  return c;
}

}  // namespace fibgirth
