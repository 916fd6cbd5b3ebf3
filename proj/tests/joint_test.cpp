#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "markov_fuzzy/connectives.hpp"
#include "markov_fuzzy/joint.hpp"
#include "oracles.hpp"

using namespace markov_fuzzy;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(MakeJoint, SinglePredicate) {
  auto d = make_joint(1, {0.25, 0.75});
  EXPECT_EQ(d.arity(), 1u);
  EXPECT_DOUBLE_EQ(d.prob_true(0), 0.75);
}

TEST(MakeJoint, SimplexPoint) {
  auto d = make_joint(2, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[3], 0.4);
}

TEST(MakeJoint, Rejections) {
  EXPECT_EQ(code_of([] { make_joint(2, {0.5, 0.6, 0.2, -0.3}); }), ErrorCode::NegativeMass);
  EXPECT_EQ(code_of([] { make_joint(2, {0.5, 0.6, 0.2, 0.3}); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { make_joint(2, {0.5, 0.5}); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([] { make_joint(25, {}); }), ErrorCode::ArityTooLarge);
}

TEST(MakeJoint, ToleranceRepair) {
  auto d = make_joint(1, {-1e-12, 1.0 + 1e-12});
  EXPECT_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(IndependentProduct, Examples) {
  auto sym = independent_product({0.5, 0.5});
  for (double v : sym.probs()) EXPECT_DOUBLE_EQ(v, 0.25);

  auto certain = independent_product({1.0, 0.3});
  EXPECT_DOUBLE_EQ(certain[0b11], 0.3);
  EXPECT_DOUBLE_EQ(certain[0b01], 0.7);
  EXPECT_EQ(certain[0b00], 0.0);
  EXPECT_EQ(certain[0b10], 0.0);

  auto d = independent_product({0.7, 0.6});
  const auto ref = oracle::independent({0.7, 0.6});
  for (std::uint32_t a = 0; a < 4; ++a) EXPECT_NEAR(d[a], ref[a], 1e-15);
  EXPECT_NEAR(d[3], 0.42, 1e-15);
}

TEST(Marginal, Examples) {
  EXPECT_NEAR(marginal(independent_product({0.7, 0.6}), {0}).prob_true(0), 0.7, 1e-15);
  EXPECT_NEAR(marginal(pair_from_pq(0.7, 0.6, 0.1), {1}).prob_true(0), 0.6, 1e-15);
  auto d = make_joint(2, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(marginal(d, {0, 1}), d);
}

TEST(Marginal, ReordersCoordinates) {
  auto d = make_joint(2, {0.1, 0.2, 0.3, 0.4});
  auto swapped = marginal(d, {1, 0});
  EXPECT_DOUBLE_EQ(swapped[0b01], 0.3);
  EXPECT_DOUBLE_EQ(swapped[0b10], 0.2);
  EXPECT_EQ(code_of([&] { marginal(d, {2}); }), ErrorCode::BadCoordinate);
  EXPECT_EQ(code_of([&] { marginal(d, {0, 0}); }), ErrorCode::BadCoordinate);
}

TEST(PairFromPq, Examples) {
  // Index order [FF, TF, FT, TT], first letter for predicate 1.
  auto d = pair_from_pq(0.7, 0.6, 0.1);
  EXPECT_NEAR(d[0b00], 0.1, 1e-15);
  EXPECT_NEAR(d[0b10], 0.2, 1e-15);
  EXPECT_NEAR(d[0b01], 0.3, 1e-15);
  EXPECT_NEAR(d[0b11], 0.4, 1e-15);

  auto c = pair_from_pq(1.0, 0.3, 0.0);
  EXPECT_NEAR(c[0b11], 0.3, 1e-15);
  EXPECT_EQ(c[0b00], 0.0);
  EXPECT_EQ(c[0b10], 0.0);

  EXPECT_EQ(code_of([] { pair_from_pq(0.5, 0.5, 0.9); }), ErrorCode::InfeasibleQ);
}

TEST(PairFromPq, MarginalConsistencyGrid) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double p1 = i / 20.0, p2 = j / 20.0;
      const QBounds b = q_bounds(p1, p2);
      for (int k = 0; k <= 10; ++k) {
        const double q = b.q_min + (b.q_max - b.q_min) * k / 10.0;
        auto d = pair_from_pq(p1, p2, q);
        EXPECT_NEAR(marginal(d, {0}).prob_true(0), p1, 1e-12);
        EXPECT_NEAR(marginal(d, {1}).prob_true(0), p2, 1e-12);
        EXPECT_NEAR(d[0], q, 1e-12);
      }
    }
  }
}

TEST(Pushforward, Examples) {
  auto d = make_joint(2, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(pushforward(d, BooleanFunction::identity(2)), d);
  EXPECT_NEAR(pushforward(pair_from_pq(0.7, 0.6, 0.1), BooleanFunction::conjunction())[1], 0.4,
              1e-15);

  const double p1 = 0.7, p2 = 0.6, q = 0.2;
  auto neg = pushforward(pair_from_pq(p1, p2, q),
                         product(BooleanFunction::negation(), BooleanFunction::negation()));
  EXPECT_NEAR(neg[0b00], p1 + p2 + q - 1.0, 1e-15);
  EXPECT_NEAR(neg[0b11], q, 1e-15);
}

TEST(Pushforward, ArityMismatch) {
  auto d = make_joint(1, {0.5, 0.5});
  EXPECT_EQ(code_of([&] { pushforward(d, BooleanFunction::conjunction()); }),
            ErrorCode::ArityMismatch);
}

TEST(Pushforward, AgreesWithOracleAndConservesMass) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    const auto probs = oracle::random_simplex(rng, std::size_t{1} << n);
    const auto table = oracle::random_table(rng, n, m);
    auto d = make_joint(n, probs);
    auto out = pushforward(d, BooleanFunction(n, m, table));
    const auto ref = oracle::pushforward(std::vector<double>(d.probs().begin(), d.probs().end()),
                                         table, m);
    double in_mass = 0.0, out_mass = 0.0;
    for (double v : d.probs()) in_mass += v;
    for (std::size_t y = 0; y < ref.size(); ++y) {
      EXPECT_NEAR(out[static_cast<std::uint32_t>(y)], ref[y], 1e-15);
      out_mass += out[static_cast<std::uint32_t>(y)];
    }
    EXPECT_NEAR(out_mass, in_mass, 4e-16 * (std::size_t{1} << n));
  }
}

TEST(Pushforward, Functoriality) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4, k = 1 + rng() % 4;
    auto d = make_joint(n, oracle::random_simplex(rng, std::size_t{1} << n));
    BooleanFunction f(n, m, oracle::random_table(rng, n, m));
    BooleanFunction g(m, k, oracle::random_table(rng, m, k));
    auto two_step = pushforward(pushforward(d, f), g);
    auto one_step = pushforward(d, compose(g, f));
    for (std::uint32_t y = 0; y < two_step.size(); ++y) EXPECT_NEAR(two_step[y], one_step[y], 1e-12);
  }
}

TEST(Pushforward, Deterministic) {
  std::mt19937_64 rng(3);
  auto d = make_joint(4, oracle::random_simplex(rng, 16));
  BooleanFunction f(4, 2, oracle::random_table(rng, 4, 2));
  EXPECT_EQ(pushforward(d, f), pushforward(d, f));
}

TEST(IndependentProduct, MarginalRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Belief> ps;
    for (std::size_t i = 0; i < n; ++i) ps.emplace_back(u(rng));
    auto d = independent_product(ps);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(marginal(d, {i}).prob_true(0), ps[i], 4e-16);
    }
  }
}

TEST(PushforwardFinite, BernoulliSum) {
  // Bit 0 is coin 1 heads, bit 1 coin 2 heads; q = P(both heads).
  const std::vector<int> values = {0, 2, -2, 0};
  const double p = 0.5, q = 0.3;
  auto d = make_joint(2, {1.0 - 2.0 * p + q, p - q, p - q, q});
  auto r = pushforward_finite<int>(d, values);
  EXPECT_NEAR(r.probability(2), 0.2, 1e-15);
  EXPECT_NEAR(r.probability(0), 0.6, 1e-15);
  EXPECT_NEAR(r.probability(-2), 0.2, 1e-15);
  EXPECT_EQ(r.probability(7), 0.0);
}

TEST(PushforwardFinite, ConstantAndDegenerate) {
  auto d = make_joint(2, {0.1, 0.2, 0.3, 0.4});
  const std::vector<std::string> same(4, "x");
  auto r = pushforward_finite<std::string>(d, same);
  ASSERT_EQ(r.alphabet().size(), 1u);
  EXPECT_DOUBLE_EQ(r.probability("x"), 1.0);

  // p = q = 0.5: the coins always agree.
  auto same_face = make_joint(2, {0.5, 0.0, 0.0, 0.5});
  const std::vector<int> values = {0, 2, -2, 0};
  EXPECT_DOUBLE_EQ(pushforward_finite<int>(same_face, values).probability(0), 1.0);
}
