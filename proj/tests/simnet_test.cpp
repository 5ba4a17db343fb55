#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "teds/simnet.hpp"

using namespace teds;

TEST(Grid, DefaultDegrees) {
  const Topology t = build_grid_topology(10, 10, 150.0, 250.0);
  EXPECT_EQ(t.size(), 100u);
  // 150 m orthogonal and 212 m diagonal links; 300 m is out of range
  EXPECT_EQ(t.neighbors(t.node_at(5, 5)).size(), 8u);
  EXPECT_EQ(t.neighbors(t.node_at(0, 0)).size(), 3u);
  EXPECT_EQ(t.neighbors(t.node_at(0, 5)).size(), 5u);
  EXPECT_EQ(t.edge_count(), 2u * 10 * 9 + 2u * 9 * 9);
  EXPECT_FALSE(t.adjacent(t.node_at(0, 0), t.node_at(0, 2)));
}

TEST(Grid, SymmetricSortedAdjacency) {
  const Topology t = build_grid_topology(7, 9, 150.0, 250.0);
  for (NodeId a = 0; a < t.size(); ++a) {
    const auto& nb = t.neighbors(a);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (NodeId b : nb) {
      EXPECT_NE(a, b);
      EXPECT_TRUE(t.adjacent(b, a));
    }
  }
}

TEST(Grid, ColumnsAndInterior) {
  const Topology t = build_grid_topology(10, 10, 150.0, 250.0);
  const auto left = t.left_column();
  const auto right = t.right_column();
  ASSERT_EQ(left.size(), 10u);
  for (NodeId n : left) EXPECT_EQ(t.col_of(n), 0);
  for (NodeId n : right) EXPECT_EQ(t.col_of(n), 9);
  EXPECT_EQ(t.interior_columns().size(), 80u);
  EXPECT_EQ(t.row_of(t.node_at(3, 4)), 3);
}

TEST(Grid, RejectsBadShape) {
  EXPECT_THROW(build_grid_topology(0, 5, 150, 250), std::invalid_argument);
  EXPECT_THROW(build_grid_topology(5, 5, 0, 250), std::invalid_argument);
}

TEST(EventQueue, TimeThenFifoOrder) {
  EventQueue<int> q;
  q.schedule(2.0, 1);
  q.schedule(1.0, 2);
  q.schedule(2.0, 3);
  q.schedule(1.0, 4);
  std::vector<int> order;
  while (!q.empty()) order.push_back(q.pop().payload);
  EXPECT_EQ(order, (std::vector<int>{2, 4, 1, 3}));
  EXPECT_EQ(q.now(), 2.0);
}

TEST(EventQueue, PastSchedulingRejected) {
  EventQueue<int> q;
  q.schedule(5.0, 1);
  q.pop();
  EXPECT_THROW(q.schedule(4.9, 2), std::logic_error);
  EXPECT_NO_THROW(q.schedule(5.0, 3));
}

TEST(EventQueue, ClockNeverDecreases) {
  EventQueue<int> q;
  RngStream r(1);
  for (int i = 0; i < 1000; ++i) q.schedule(r.uniform(0, 100), i);
  double last = 0.0;
  while (!q.empty()) {
    auto e = q.pop();
    EXPECT_GE(e.time, last);
    last = e.time;
    if (e.payload % 3 == 0 && e.payload < 1000) q.schedule(last + r.uniform(0, 1), e.payload + 1000);
  }
}

TEST(Rng, StreamsAreDeterministicAndIndependent) {
  RngStream a(42, RngConcern::Endpoints), b(42, RngConcern::Endpoints), c(42, RngConcern::LinkLoss);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, IndexInRangeAndRoughlyUniform) {
  RngStream r(9);
  std::vector<int> hist(10);
  for (int i = 0; i < 100000; ++i) {
    const auto k = r.index(10);
    ASSERT_LT(k, 10u);
    ++hist[k];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  EXPECT_THROW(r.index(0), std::invalid_argument);
}

TEST(Medium, DeliversToEveryNeighbourAfterLatency) {
  const Topology t = build_grid_topology(3, 3, 150.0, 250.0);
  BroadcastMedium m(t, 0.002, 0.0, RngStream(1));
  std::vector<NodeId> got;
  m.transmit(4, 1.0, [&](NodeId nb, SimTime at) {
    got.push_back(nb);
    EXPECT_DOUBLE_EQ(at, 1.002);
  });
  EXPECT_EQ(got, t.neighbors(4));
}

TEST(Medium, LossIsBinomial) {
  const Topology t = build_grid_topology(1, 2, 150.0, 250.0);
  BroadcastMedium m(t, 0.002, 0.1, RngStream(77, RngConcern::LinkLoss));
  int delivered = 0;
  for (int i = 0; i < 10000; ++i) delivered += static_cast<int>(m.transmit(0, 0.0, [](NodeId, SimTime) {}));
  // mean 9000, sd 30
  EXPECT_NEAR(delivered, 9000, 90);
}

TEST(Medium, RejectsBadParameters) {
  const Topology t = build_grid_topology(2, 2, 150.0, 250.0);
  EXPECT_THROW(BroadcastMedium(t, 0.0, 0.0, RngStream(1)), std::invalid_argument);
  EXPECT_THROW(BroadcastMedium(t, 0.002, 1.5, RngStream(1)), std::invalid_argument);
}

TEST(Cbr, SendTimes) {
  Flow f;
  f.start_time = 30.0;
  const auto times = cbr_send_times(f, 300.0);
  ASSERT_EQ(times.size(), 300u);
  EXPECT_DOUBLE_EQ(times.front(), 30.0);
  EXPECT_DOUBLE_EQ(times.back(), 104.75);
  f.start_time = 250.0;
  EXPECT_EQ(cbr_send_times(f, 300.0).size(), 201u);
}

TEST(Flows, EndpointsOnOppositeColumnsAndStartsInWindow) {
  const Topology t = build_grid_topology(10, 10, 150.0, 250.0);
  RngStream e(3, RngConcern::Endpoints), s(3, RngConcern::FlowStarts);
  const auto flows = generate_flows(t, FlowGenerationParams{}, e, s);
  ASSERT_EQ(flows.size(), 10u);
  for (const auto& f : flows) {
    EXPECT_EQ(t.col_of(f.source), 0);
    EXPECT_EQ(t.col_of(f.destination), 9);
    EXPECT_GE(f.start_time, 30.0);
    EXPECT_LT(f.start_time, 200.0);
  }
}

TEST(Adversaries, InteriorDistinctAndNested) {
  const Topology t = build_grid_topology(10, 10, 150.0, 250.0);
  std::set<NodeId> prev;
  for (int count : {0, 4, 8, 12, 16, 80}) {
    RngStream r(5, RngConcern::Adversaries);
    const auto adv = place_adversaries(t, count, r);
    const std::set<NodeId> cur(adv.begin(), adv.end());
    EXPECT_EQ(cur.size(), static_cast<std::size_t>(count));
    for (NodeId n : cur) {
      EXPECT_NE(t.col_of(n), 0);
      EXPECT_NE(t.col_of(n), 9);
    }
    for (NodeId n : prev) EXPECT_TRUE(cur.contains(n));
    prev = cur;
  }
  RngStream r(5);
  EXPECT_THROW(place_adversaries(t, 81, r), std::invalid_argument);
}
