#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fibgirth/construction.hpp"
#include "fibgirth/unitary.hpp"

using namespace fibgirth;
using Complex = std::complex<double>;

namespace {

UnitaryMatrix diag_phase(double theta) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, theta);
  m(1, 1) = std::polar(1.0, -theta);
  return UnitaryMatrix(m);
}

}  // namespace

TEST(Unitary, ContractEnforced) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryMatrix{m}, std::invalid_argument);
  ComplexMatrix u1 = ComplexMatrix::Identity(2, 2);
  u1(0, 0) = Complex(0, 1);  // unitary, det = i
  EXPECT_THROW(UnitaryMatrix{u1}, std::invalid_argument);
  EXPECT_THROW(UnitaryMatrix::identity(9), std::invalid_argument);
  EXPECT_THROW(word_map(parse("a"), UnitaryMatrix::identity(2), UnitaryMatrix::identity(3)), std::invalid_argument);
}

TEST(DistIdentity, Examples) {
  EXPECT_DOUBLE_EQ(dist_identity(UnitaryMatrix::identity(3)), 0.0);
  for (double theta : {0.1, 0.7, 1.5, 2.9, 3.1}) EXPECT_NEAR(dist_identity(diag_phase(theta)), 2 * std::abs(std::sin(theta / 2)), 1e-12);
  for (int k : {2, 4, 6}) EXPECT_NEAR(dist_identity(ComplexMatrix(-ComplexMatrix::Identity(k, k))), 2.0, 1e-12);
}

TEST(RandomSU, Invariants) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(random_su(1, rng).matrix()(0, 0), Complex(1.0));
  for (int k = 2; k <= 8; ++k)
    for (int i = 0; i < 20; ++i) {
      const UnitaryMatrix u = random_su(k, rng);
      EXPECT_LE(unitarity_defect(u.matrix()), 1e-10);
      EXPECT_LE(std::abs(u.matrix().determinant() - 1.0), 1e-10);
    }
  EXPECT_THROW(random_su(0, rng), std::invalid_argument);
}

TEST(RandomSU, HaarTraceMean) {
  // On SU(2), tr U = 2 cos t with density (2/pi) sin^2 t on [0, pi]:
  // E|tr U| = 8/(3 pi) and E|tr U|^2 = 1.
  std::mt19937_64 rng(2024);
  const int n = 10000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double t = std::abs(random_su(2, rng).matrix().trace());
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / n;
  const double expected = 8.0 / (3.0 * std::numbers::pi);
  const double se = std::sqrt((1.0 - expected * expected) / n);
  EXPECT_NEAR(mean, expected, 3 * se);
  EXPECT_NEAR(sum_sq / n, 1.0, 0.05);
}

TEST(RandomSU, StreamsReproducible) {
  auto r1 = sample_stream(7, 3), r2 = sample_stream(7, 3), r3 = sample_stream(7, 4);
  EXPECT_EQ(r1(), r2());
  EXPECT_NE(sample_stream(7, 3)(), r3());
}

TEST(WordMap, MatchesHandProduct) {
  std::mt19937_64 rng(3);
  const UnitaryMatrix u = random_su(3, rng), v = random_su(3, rng);
  const ComplexMatrix expected = u.matrix() * v.matrix() * u.matrix().adjoint() * v.matrix().adjoint();
  EXPECT_LE(operator_norm(word_map(parse("abAB"), u, v).matrix() - expected), 1e-12);
  EXPECT_LE(dist_identity(word_map(Word{}, u, v)), 1e-15);
  // long word: drift stays inside the contract
  const Word long_word = build_pair(12).a;
  const UnitaryMatrix w = word_map(long_word, u, v);
  EXPECT_LE(unitarity_defect(w.matrix()), 1e-10);
}

TEST(WordMap, CyclicInvariance) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const int k = 2 + i % 4;
    const UnitaryMatrix u = random_su(k, rng), v = random_su(k, rng);
    EXPECT_NEAR(dist_identity(u * v), dist_identity(v * u), 1e-9);
  }
}

TEST(EstimateL, Examples) {
  SamplingOptions o;
  o.budget = 10000;
  o.seed = 5;
  EXPECT_EQ(estimate_L(Word{}, 2, o), 0.0);
  const double la = estimate_L(parse("a"), 2, o);
  EXPECT_GT(la, 1.99);
  EXPECT_LE(la, 2.0 + 1e-12);
  const double lc = estimate_L(parse("abAB"), 2, o);
  EXPECT_GT(lc, 1.0);
  EXPECT_LE(lc, 2.0 + 1e-12);
  o.budget = 0;
  EXPECT_THROW(estimate_L(parse("a"), 2, o), std::invalid_argument);
}

TEST(EstimateL, MonotoneDeterministicThreadIndependent) {
  SamplingOptions o;
  o.seed = 9;
  o.refine = 3;
  const Word w = build_pair(2).a;
  double previous = 0;
  for (std::uint64_t budget : {1, 10, 100, 400}) {
    o.budget = budget;
    o.threads = 1;
    const double one = estimate_L(w, 2, o);
    EXPECT_EQ(one, estimate_L(w, 2, o));
    o.threads = 3;
    EXPECT_EQ(one, estimate_L(w, 2, o));
    EXPECT_GE(one, previous);
    previous = one;
  }
}

TEST(Construction, DeltaRecursionMatchesWordMap) {
  std::mt19937_64 rng(6);
  const Word w = parse("a"), v = parse("b");
  for (int i = 0; i < 20; ++i) {
    const UnitaryMatrix u = random_su(2, rng), x = random_su(2, rng);
    const auto da = construction_distances(w, v, u, x, 8);
    const auto db = construction_distances_b(w, v, u, x, 8);
    for (int n = 0; n <= 8; ++n) {
      const auto p = build_pair(n);
      EXPECT_NEAR(da[n], dist_identity(word_map(p.a, u, x)), 1e-9) << n;
      EXPECT_NEAR(db[n], dist_identity(word_map(p.b, u, x)), 1e-9) << n;
    }
  }
  // substituted seed words: compare with the reduced composed word
  const Word sw = parse("abAB"), sv = parse("aBAb");
  const UnitaryMatrix u = random_su(2, rng), x = random_su(2, rng);
  const auto d = construction_distances(sw, sv, u, x, 5);
  for (int n = 0; n <= 5; ++n)
    EXPECT_NEAR(d[n], dist_identity(word_map(apply_endomorphism(build_pair(n).a, sw, sv), u, x)), 1e-9);
}

TEST(Construction, PointwiseNormEquality) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const UnitaryMatrix u = random_su(2, rng), x = random_su(2, rng);
    const auto da = construction_distances(parse("a"), parse("b"), u, x, 6);
    const auto db = construction_distances_b(parse("a"), parse("b"), u, x, 6);
    for (int n = 0; n <= 6; ++n) EXPECT_NEAR(da[n], db[n], 1e-9);
  }
}

TEST(Construction, TinyDistancesStayAccurate) {
  // near the identity the recursion keeps relative accuracy where I - W loses it
  const ComplexMatrix g = (ComplexMatrix(2, 2) << Complex(0, 1), 1, -1, Complex(0, -1)).finished();
  const UnitaryMatrix u = project_su(ComplexMatrix::Identity(2, 2) + 1e-3 * g);
  const ComplexMatrix h = (ComplexMatrix(2, 2) << Complex(0, 2), Complex(0, 1), Complex(0, 1), Complex(0, -2)).finished();
  const UnitaryMatrix x = project_su(ComplexMatrix::Identity(2, 2) + 1e-3 * h);
  const auto d = construction_distances(parse("a"), parse("b"), u, x, 8);
  for (int n = 3; n <= 8; ++n) {
    EXPECT_GT(d[n], 0.0) << n;
    EXPECT_LT(d[n], d[n - 1]) << n;
  }
  EXPECT_LT(d[8], 1e-30);
}

TEST(Contraction, CommutatorFormHolds) {
  const ContractionCheck c = check_commutator_contraction(2, 10000, 11);
  EXPECT_EQ(c.samples, 10000u);
  EXPECT_EQ(c.holding, c.samples);
  EXPECT_GE(c.worst_margin, -1e-9);
  EXPECT_EQ(check_commutator_contraction(3, 500, 12).holding, 500u);
}

TEST(Contraction, PrintedProductFormFails) {
  const ProductFormCounterexample c = product_form_counterexample(2, 1);
  EXPECT_TRUE(c.refutes);
  EXPECT_EQ(c.rhs, 0.0);
  EXPECT_GT(c.lhs, 0.0);
}

TEST(SeedSearch, RejectsTrivialGroupAndReportsFailure) {
  SamplingOptions o;
  o.budget = 200;
  EXPECT_THROW(find_seed_pair(1, 4, o), std::invalid_argument);
  const SeedSearchResult r = find_seed_pair(2, 4, o);
  EXPECT_FALSE(r.found);
  EXPECT_GT(r.words_examined, 0u);
  EXPECT_GT(r.smallest_screened_max, kSeedThreshold);
  EXPECT_NE(r.message.find("--length-cap"), std::string::npos);
}

TEST(SeedSearch, FreenessHeuristic) {
  EXPECT_TRUE(free_subgroup_heuristic(parse("a"), parse("b"), 2, 6, 20, 1));
  EXPECT_TRUE(free_subgroup_heuristic(parse("abAB"), parse("aBAb"), 2, 6, 20, 1));
  // w = v^2 satisfies the relation a B B
  EXPECT_FALSE(free_subgroup_heuristic(parse("bb"), parse("b"), 2, 4, 20, 1));
}

TEST(Decay, RowsAndChecks) {
  SamplingOptions o;
  o.budget = 200;
  o.seed = 3;
  const DecayReport r = decay_report(2, 6, parse("a"), parse("b"), o);
  ASSERT_EQ(r.rows.size(), 7u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.word_length, build_pair(row.n).a.length());
    EXPECT_GE(row.L_hat, 0.0);
    EXPECT_LE(row.L_hat, 2.0 + 1e-12);
    EXPECT_EQ(row.samples, 200u);
  }
  o.threads = 3;
  const DecayReport threaded = decay_report(2, 6, parse("a"), parse("b"), o);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(threaded.rows[n].L_hat, r.rows[n].L_hat) << n;

  DecayReport synthetic;
  for (int n = 0; n <= 5; ++n) {
    DecayRow row;
    row.n = n;
    row.L_hat = 0.5 * std::exp(-std::pow(2.0, n));
    row.neg_log = -std::log(2 * row.L_hat);
    synthetic.rows.push_back(row);
  }
  EXPECT_TRUE(check_decay(synthetic).ok());
  synthetic.rows[4].L_hat = 0.3;
  synthetic.rows[4].neg_log = -std::log(0.6);
  EXPECT_FALSE(check_decay(synthetic).ok());
}
