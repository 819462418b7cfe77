#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "arp/errors.hpp"
#include "arp/optimizers.hpp"
#include "fixtures.hpp"

namespace arp {
namespace {

const Instance& small_instance() {
  static const Instance inst = testing::synthetic_instance(6, 42);
  return inst;
}

void expect_valid_history(const RunHistory& h, int budget, int n) {
  ASSERT_EQ(static_cast<int>(h.size()), budget);
  const auto best = h.best_so_far();
  for (std::size_t k = 0; k < h.size(); ++k) {
    const HistoryEntry& e = h.entries()[k];
    EXPECT_EQ(e.eval, static_cast<int>(k) + 1);
    EXPECT_EQ(e.order.size(), n);
    EXPECT_DOUBLE_EQ(e.f, scalarize(e.dv, e.T));
    if (k > 0) {
      EXPECT_LE(best[k], best[k - 1]);
      EXPECT_GE(e.wall_ms, h.entries()[k - 1].wall_ms);
    }
  }
  EXPECT_EQ(best.back(), h.best().f);
}

std::vector<std::vector<int>> orders(const RunHistory& h) {
  std::vector<std::vector<int>> out;
  for (const auto& e : h.entries()) out.push_back(e.order.values());
  return out;
}

TEST(Evaluator, BudgetCacheAndRepresentation) {
  const Instance& inst = small_instance();
  Evaluator eval(inst, Representation::Rank, 3);
  const Permutation rank({2, 0, 1, 5, 4, 3});
  const double f1 = eval(rank);
  EXPECT_EQ(eval.history().entries()[0].order, inverse(rank));
  EXPECT_DOUBLE_EQ(f1, evaluate_sequence(inst, inverse(rank)).first.f);
  EXPECT_TRUE(eval.seen(rank));
  EXPECT_FALSE(eval.seen(inverse(rank)));
  EXPECT_EQ(eval(rank), f1);  // cached but counted
  EXPECT_EQ(eval.used(), 2);
  eval(Permutation::identity(6));
  EXPECT_TRUE(eval.exhausted());
  EXPECT_THROW(eval(Permutation::identity(6)), DomainError);
}

TEST(History, CsvRoundTrip) {
  RunHistory h;
  h.add({1, Permutation({2, 0, 1}), 12.345678901234567, 10.1, 33.5, 0.25});
  h.add({2, Permutation({0, 1, 2}), 11.0, 9.0, 30.0, 1.5});
  std::stringstream buf;
  write_history_csv(buf, h);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "eval,perm,f,dv,T,wall_ms");
  EXPECT_NE(text.find("1,2-0-1,12.345678901234567,10.1,33.5,0.250"), std::string::npos);
  const RunHistory back = read_history_csv(buf);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.entries()[0].f, 12.345678901234567);
  EXPECT_EQ(back.entries()[0].order, Permutation({2, 0, 1}));
  EXPECT_EQ(back.best().eval, 2);
}

TEST(Greedy, CoOrbitalVisitsByIncreasingPhase) {
  // All bodies share Earth's circular orbit, so relative phases never change
  // and the nearest unvisited body is always the next one ahead.
  const Instance inst = testing::make_instance(
      {testing::circular(1.0, 0.9), testing::circular(1.0, 0.2), testing::circular(1.0, 0.5)});
  const GreedyResult g = greedy_nn(inst);
  EXPECT_EQ(g.order, Permutation({1, 2, 0}));
  EXPECT_EQ(g.evaluation.f, evaluate_full(inst, g.order, g.times).f);
  EXPECT_EQ(g.evaluation.f, evaluate_sequence(inst, g.order).first.f);
}

TEST(Greedy, Deterministic) {
  const Instance inst = testing::synthetic_instance(10, 73);
  const GreedyResult a = greedy_nn(inst);
  const GreedyResult b = greedy_nn(inst);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.evaluation.f, b.evaluation.f);
}

TEST(RandomSearch, BudgetAndDeterminism) {
  const RunConfig config{25, Representation::Order, 10, 7, false};
  const RunHistory a = random_search(small_instance(), config);
  expect_valid_history(a, 25, 6);
  EXPECT_EQ(orders(a), orders(random_search(small_instance(), config)));
  RunConfig other = config;
  other.seed = 8;
  EXPECT_NE(orders(a), orders(random_search(small_instance(), other)));
}

TEST(Umm, BudgetDeterminismAndInit) {
  const Instance& inst = small_instance();
  for (Representation repr : {Representation::Order, Representation::Rank}) {
    const RunConfig config{30, repr, 10, 3, false};
    Rng rng(derive_seed(3, 0));
    const auto init = maxmin_design(6, 10, rng);
    const RunHistory a = umm(inst, config, init);
    expect_valid_history(a, 30, 6);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(a.entries()[k].order, to_order(init[k], repr));
    EXPECT_EQ(orders(a), orders(umm(inst, config, init)));
    UmmOptions linear;
    linear.weights = UmmWeights::Linear;
    expect_valid_history(umm(inst, config, init, linear), 30, 6);
  }
}

TEST(Umm, BudgetEqualToInitEvaluatesOnlyInit) {
  const RunConfig config{10, Representation::Rank, 10, 3, false};
  Rng rng(1);
  const auto init = maxmin_design(6, 10, rng);
  const RunHistory h = umm(small_instance(), config, init);
  ASSERT_EQ(h.size(), 10u);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(h.entries()[k].order, to_order(init[k], Representation::Rank));
}

TEST(Umm, RejectsBadOptions) {
  const RunConfig config{20, Representation::Order, 10, 3, false};
  Rng rng(1);
  const auto init = maxmin_design(6, 10, rng);
  UmmOptions bad;
  bad.decay = 0.0;
  EXPECT_THROW(umm(small_instance(), config, init, bad), DomainError);
  const RunConfig too_small{5, Representation::Order, 10, 3, false};
  EXPECT_THROW(too_small.validate(), DomainError);
}

TEST(Cego, BudgetDeterminismAndNoRepeats) {
  const Instance& inst = small_instance();
  CegoOptions options;
  options.ga.evaluations = 1000;
  const RunConfig config{25, Representation::Order, 10, 5, false};
  Rng rng(derive_seed(5, 0));
  const auto init = maxmin_design(6, 10, rng);
  const RunHistory a = cego(inst, config, init, options);
  expect_valid_history(a, 25, 6);
  const auto oa = orders(a);
  EXPECT_EQ(std::set<std::vector<int>>(oa.begin(), oa.end()).size(), oa.size());
  EXPECT_EQ(oa, orders(cego(inst, config, init, options)));
  EXPECT_EQ(a.surrogate_fallbacks, 0);
}

TEST(Cego, BudgetEqualToInitEvaluatesOnlyInit) {
  const RunConfig config{10, Representation::Order, 10, 5, false};
  Rng rng(2);
  const auto init = maxmin_design(6, 10, rng);
  const RunHistory h = cego(small_instance(), config, init);
  ASSERT_EQ(h.size(), 10u);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(h.entries()[k].order, init[k]);
}

}  // namespace
}  // namespace arp
