#include <doctest.h>

#include <numeric>
#include <random>

#include "hsp/errors.hpp"
#include "hsp/solution.hpp"
#include "test_support.hpp"

using namespace hsp;

namespace {

void check_against_fresh(const WeightedGraph& g, const SolutionState& s, double rel = 1e-9) {
  const auto members = s.sorted_members();
  const SolutionState fresh(g, members);
  CHECK(testing::rel_close(s.objective(), fresh.objective(), rel));
  for (NodeId x = 0; x < g.node_count(); ++x) CHECK(testing::rel_close(s.gain(x), fresh.gain(x), rel));
  double twice = 0.0;
  for (auto x : s.members()) twice += s.gain(x);
  CHECK(testing::rel_close(2.0 * s.objective(), twice, rel));
}

}  // namespace

TEST_CASE("objective_of: triangle and singletons") {
  const std::vector<Edge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  const auto g = build_graph(tri, false);
  const std::vector<NodeId> all{0, 1, 2};
  CHECK(objective_of(g, all) == 3.0);
  const std::vector<NodeId> one{1};
  CHECK(objective_of(g, one) == 0.0);
  const std::vector<NodeId> bad{0, 7};
  CHECK_THROWS_AS(objective_of(g, bad), ValidationError);
}

TEST_CASE("objective_of: equals the pairwise double loop") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto raw = testing::random_instance(8, 0.6, 0, seed);
    const auto g = build_graph(raw.edges, false, raw.n);
    const auto m = testing::dense(raw);
    std::vector<NodeId> perm(8);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<NodeId> subset(perm.begin(), perm.begin() + 4);
    CHECK(testing::rel_close(objective_of(g, subset), testing::pairwise_objective(m, subset)));
    // order of enumeration does not matter
    std::reverse(subset.begin(), subset.end());
    CHECK(testing::rel_close(objective_of(g, subset), testing::pairwise_objective(m, subset)));
  }
}

TEST_CASE("init_state: path and whole vertex set") {
  const std::vector<Edge> path{{0, 1, 1.0}};
  const auto g = build_graph(path, false);
  const std::vector<NodeId> h{0};
  const SolutionState s(g, h);
  CHECK(s.gain(0) == 0.0);
  CHECK(s.gain(1) == 1.0);
  CHECK(s.objective() == 0.0);

  const auto raw = testing::random_instance(12, 0.5, 5, 4);
  const auto g2 = build_graph(raw.edges, false, raw.n);
  std::vector<NodeId> all(12);
  std::iota(all.begin(), all.end(), NodeId{0});
  const SolutionState full(g2, all);
  for (NodeId i = 0; i < 12; ++i) CHECK(full.gain(i) == g2.strength(i));
  CHECK(full.objective() == g2.total_weight());
}

TEST_CASE("init_state: rejects empty or repeated members") {
  const std::vector<Edge> tri{{0, 1, 1.0}, {1, 2, 1.0}};
  const auto g = build_graph(tri, false);
  CHECK_THROWS_AS(SolutionState(g, std::vector<NodeId>{}), ValidationError);
  CHECK_THROWS_AS(SolutionState(g, std::vector<NodeId>{1, 1}), ValidationError);
  CHECK_THROWS_AS(SolutionState(g, std::vector<NodeId>{3}), ValidationError);
}

TEST_CASE("swap_delta: symmetric triangle is neutral, isolated node loses the member's gain") {
  const std::vector<Edge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  const auto g = build_graph(tri, false, 4);  // node 3 isolated
  const std::vector<NodeId> h{0, 1};
  const SolutionState s(g, h);
  CHECK(s.swap_delta(1, 2) == 0.0);
  CHECK(s.swap_delta(1, 3) == -s.gain(1));
  CHECK_THROWS_AS(s.swap_delta(2, 3), LogicError);
  CHECK_THROWS_AS(s.swap_delta(0, 1), LogicError);
}

TEST_CASE("swap_delta matches from-scratch difference; apply keeps the tables exact") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto raw = testing::random_instance(20, 0.4, seed % 2 == 0 ? 9 : 0, seed);
    const auto g = build_graph(raw.edges, false, raw.n);
    const auto m = testing::dense(raw);
    std::vector<NodeId> perm(20);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    SolutionState s(g, std::vector<NodeId>(perm.begin(), perm.begin() + 7));

    for (int step = 0; step < 100; ++step) {
      const auto members = s.members();
      const NodeId out = members[std::uniform_int_distribution<std::size_t>(0, 6)(rng)];
      NodeId in;
      do {
        in = std::uniform_int_distribution<NodeId>(0, 19)(rng);
      } while (s.contains(in));

      auto after = s.sorted_members();
      std::replace(after.begin(), after.end(), out, in);
      const double expected =
          testing::pairwise_objective(m, after) - testing::pairwise_objective(m, s.sorted_members());
      CHECK(testing::rel_close(s.swap_delta(out, in), expected));
      s.apply_swap(out, in);
      CHECK(testing::rel_close(s.objective(), testing::pairwise_objective(m, s.sorted_members())));
      if (seed % 2 == 0) CHECK(s.objective() == testing::pairwise_objective(m, s.sorted_members()));
    }
    check_against_fresh(g, s);
  }
}

TEST_CASE("apply_swap: reverse swap restores the state") {
  const auto raw = testing::random_instance(15, 0.5, 0, 8);
  const auto g = build_graph(raw.edges, false, raw.n);
  const std::vector<NodeId> h{0, 3, 5, 9};
  SolutionState s(g, h);
  const double before = s.objective();
  const auto gains_before = std::vector<double>(s.gains().begin(), s.gains().end());
  s.apply_swap(3, 7);
  s.apply_swap(7, 3);
  CHECK(testing::rel_close(s.objective(), before));
  for (NodeId x = 0; x < g.node_count(); ++x) CHECK(testing::rel_close(s.gain(x), gains_before[x]));
  CHECK(s.sorted_members() == std::vector<NodeId>{0, 3, 5, 9});
}

TEST_CASE("apply_swap on a dense complete graph matches init_state of the new set") {
  std::vector<Edge> edges;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.0, 100.0);
  for (NodeId u = 0; u < 40; ++u)
    for (NodeId v = u + 1; v < 40; ++v) edges.push_back({u, v, w(rng)});
  const auto g = build_graph(edges, false);
  std::vector<NodeId> h(10);
  std::iota(h.begin(), h.end(), NodeId{0});
  SolutionState s(g, h);
  for (NodeId i = 0; i < 10; ++i) s.apply_swap(i, static_cast<NodeId>(30 + i));
  check_against_fresh(g, s);
}
