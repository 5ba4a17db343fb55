#include <gtest/gtest.h>

#include <map>
#include <random>

#include "teds/watchdog.hpp"

using namespace teds;

TEST(Watchdog, RejectsNonPositiveGrace) {
  EXPECT_THROW(Watchdog(0.0), std::invalid_argument);
  EXPECT_THROW(Watchdog(-1.0), std::invalid_argument);
}

TEST(Watchdog, OverheardForwardClearsEntry) {
  Watchdog w;
  ASSERT_TRUE(w.record_sent(5, 100, 1.0, 9));
  EXPECT_NE(w.find(100), nullptr);
  EXPECT_TRUE(w.record_overheard(5, 100, 1.002));
  EXPECT_EQ(w.find(100), nullptr);
  const auto s = w.interval_stats();
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.at(5), (ForwardingStats{1, 1}));
}

TEST(Watchdog, NextHopIsDestinationIsNotWatched) {
  Watchdog w;
  EXPECT_FALSE(w.record_sent(9, 100, 1.0, 9));
  EXPECT_EQ(w.live_entries(), 0u);
  EXPECT_TRUE(w.interval_stats().empty());
}

TEST(Watchdog, OnlyDesignatedNextHopCounts) {
  Watchdog w;
  w.record_sent(5, 100, 1.0, 9);
  EXPECT_FALSE(w.record_overheard(6, 100, 1.1));
  EXPECT_FALSE(w.record_overheard(5, 101, 1.1));
  EXPECT_EQ(w.live_entries(), 1u);
}

TEST(Watchdog, DuplicateLivePacketIsAnError) {
  Watchdog w;
  w.record_sent(5, 100, 1.0, 9);
  EXPECT_THROW(w.record_sent(6, 100, 1.5, 9), std::logic_error);
}

TEST(Watchdog, ExpiresAfterGrace) {
  Watchdog w(2.0);
  w.record_sent(5, 1, 10.0, 9);
  w.record_sent(5, 2, 11.0, 9);
  EXPECT_EQ(w.expire(11.9), 0u);
  EXPECT_EQ(w.expire(12.0), 1u);
  EXPECT_EQ(w.live_entries(), 1u);
  EXPECT_EQ(w.expire(20.0), 1u);
  EXPECT_EQ(w.interval_stats().at(5), (ForwardingStats{2, 0}));
}

TEST(Watchdog, LateOverhearAfterExpiryIgnored) {
  Watchdog w(2.0);
  w.record_sent(5, 1, 10.0, 9);
  w.expire(12.0);
  EXPECT_FALSE(w.record_overheard(5, 1, 12.5));
  EXPECT_EQ(w.interval_stats().at(5), (ForwardingStats{1, 0}));
}

TEST(Watchdog, PendingEntriesCarryToNextInterval) {
  Watchdog w(2.0);
  w.record_sent(5, 1, 18.0, 9);
  w.record_sent(5, 2, 19.5, 9);
  w.record_overheard(5, 1, 18.002);
  w.expire(20.0);
  auto first = w.interval_stats();
  EXPECT_EQ(first.at(5), (ForwardingStats{1, 1}));
  w.record_overheard(5, 2, 20.1);  // heard just after the boundary
  auto second = w.interval_stats();
  EXPECT_EQ(second.at(5), (ForwardingStats{1, 1}));
  EXPECT_TRUE(w.interval_stats().empty());
}

TEST(Watchdog, PendingOnlyNeighbourOmitted) {
  Watchdog w(2.0);
  w.record_sent(5, 1, 19.5, 9);
  w.expire(20.0);
  EXPECT_TRUE(w.interval_stats().empty());
  EXPECT_EQ(w.counters(5), (ForwardingStats{1, 0}));
}

TEST(Watchdog, EveryEntryResolvedExactlyOnce) {
  Watchdog w(2.0);
  std::map<PacketId, int> resolutions;
  w.set_resolution_listener([&](const WatchEntry& e, WatchResolution, SimTime) { ++resolutions[e.packet_id]; });
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uint64_t sent = 0, heard = 0;
  double t = 0.0;
  for (PacketId id = 1; id <= 5000; ++id) {
    t += 0.05;
    const NodeId nb = static_cast<NodeId>(g() % 4);
    w.record_sent(nb, id, t, 99);
    ++sent;
    if (u(g) < 0.7) {
      EXPECT_TRUE(w.record_overheard(nb, id, t + 0.002));
      ++heard;
    }
    w.expire(t);
  }
  w.expire(t + 10.0);
  EXPECT_EQ(w.live_entries(), 0u);
  EXPECT_EQ(resolutions.size(), 5000u);
  for (const auto& [id, n] : resolutions) EXPECT_EQ(n, 1) << id;
  std::uint64_t s = 0, o = 0;
  for (const auto& [nb, st] : w.interval_stats()) {
    EXPECT_LE(st.overheard, st.sent);
    s += st.sent;
    o += st.overheard;
  }
  EXPECT_EQ(s, sent);
  EXPECT_EQ(o, heard);
}

TEST(Watchdog, OverheardNeverExceedsSentAcrossIntervals) {
  Watchdog w(2.0);
  std::mt19937_64 g(8);
  PacketId id = 0;
  for (int interval = 1; interval <= 20; ++interval) {
    const double end = interval * 5.0;
    for (double t = end - 5.0; t < end; t += 0.25) {
      const NodeId nb = static_cast<NodeId>(g() % 3);
      w.record_sent(nb, ++id, t, 99);
      if (g() % 2) w.record_overheard(nb, id, t + 0.5 + static_cast<double>(g() % 3));
      w.expire(t);
    }
    w.expire(end);
    for (const auto& [nb, st] : w.interval_stats()) EXPECT_LE(st.overheard, st.sent);
  }
}
