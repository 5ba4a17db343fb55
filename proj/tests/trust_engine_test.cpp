#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "teds/trust_engine.hpp"

using namespace teds;

namespace {

// Reference values computed independently at 40 significant digits.
constexpr double kEntropy09 = 0.46899559358928122;
constexpr double kTrust09 = 0.76550220320535939;
constexpr double kTrust03 = 0.44064544961534631;
constexpr double kTrust07 = 0.55935455038465369;

// Focal sets as bitmasks over {T, UT}: 1 = {T}, 2 = {UT}, 3 = {T, UT}.
std::array<double, 3> brute_force_combine(const BeliefMass& a, const BeliefMass& b) {
  const std::array<double, 4> ma{0.0, a.trusted(), a.untrusted(), a.uncertain()};
  const std::array<double, 4> mb{0.0, b.trusted(), b.untrusted(), b.uncertain()};
  std::array<double, 4> acc{};
  for (int x = 1; x <= 3; ++x) {
    for (int y = 1; y <= 3; ++y) acc[static_cast<std::size_t>(x & y)] += ma[x] * mb[y];
  }
  const double norm = 1.0 - acc[0];
  return {acc[1] / norm, acc[2] / norm, acc[3] / norm};
}

BeliefMass random_mass(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(g), b = u(g);
  if (a > b) std::swap(a, b);
  return BeliefMass(a, b - a, 1.0 - b);
}

}  // namespace

TEST(ForwardingProbability, RatioOfOverheardToSent) {
  EXPECT_DOUBLE_EQ(forwarding_probability({10, 9}), 0.9);
  EXPECT_EQ(forwarding_probability({4, 0}), 0.0);
  EXPECT_EQ(forwarding_probability({4, 4}), 1.0);
}

TEST(ForwardingProbability, RejectsEmptyAndInconsistentCounts) {
  EXPECT_THROW(forwarding_probability({0, 0}), ZeroSampleError);
  EXPECT_THROW(forwarding_probability({3, 4}), TrustError);
}

TEST(BinaryEntropy, Endpoints) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(0.9), kEntropy09, 1e-15);
}

TEST(BinaryEntropy, SymmetricAboutOneHalf) {
  for (int i = 0; i <= 1000; ++i) {
    const double p = i / 1000.0;
    EXPECT_NEAR(binary_entropy(p), binary_entropy(1.0 - p), 1e-15);
  }
}

TEST(EntropyTrust, ExactPoints) {
  EXPECT_EQ(entropy_trust(1.0).value(), 1.0);
  EXPECT_EQ(entropy_trust(0.0).value(), 0.0);
  EXPECT_EQ(entropy_trust(0.5).value(), 0.5);
}

TEST(EntropyTrust, ReferenceValues) {
  EXPECT_NEAR(entropy_trust(0.9).value(), kTrust09, 1e-15);
  EXPECT_NEAR(entropy_trust(0.3).value(), kTrust03, 1e-15);
  EXPECT_NEAR(entropy_trust(0.7).value(), kTrust07, 1e-15);
}

TEST(EntropyTrust, MonotoneAndInUnitInterval) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = entropy_trust(i / 1000.0).value();
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    EXPECT_GE(t, prev) << "at p = " << i / 1000.0;
    prev = t;
  }
}

TEST(EntropyTrust, PointSymmetry) {
  // T(p) + T(1 - p) = 1
  for (int i = 0; i <= 1000; ++i) {
    const double p = i / 1000.0;
    EXPECT_NEAR(entropy_trust(p).value() + entropy_trust(1.0 - p).value(), 1.0, 1e-15);
  }
}

TEST(Smoothing, AlphaFromSampleCount) {
  EXPECT_NEAR(smoothing_alpha(2), 0.667, 5e-4);
  EXPECT_DOUBLE_EQ(smoothing_alpha(1), 1.0);
  EXPECT_DOUBLE_EQ(smoothing_alpha(9), 0.2);
  EXPECT_THROW(smoothing_alpha(0), TrustError);
}

TEST(Smoothing, EwmaUpdate) {
  EXPECT_NEAR(ewma_update(TrustValue(0.0), TrustValue(0.5), 0.667).value(), 0.1665, 1e-15);
  EXPECT_EQ(ewma_update(TrustValue(0.3), TrustValue(0.9), 1.0).value(), 0.3);
  EXPECT_THROW(ewma_update(TrustValue(0.3), TrustValue(0.9), 0.0), TrustError);
  EXPECT_THROW(ewma_update(TrustValue(0.3), TrustValue(0.9), 1.5), TrustError);
}

TEST(Smoothing, ResultBetweenInputs) {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double c = u(g), p = u(g), a = std::max(1e-6, u(g));
    const double v = ewma_update(TrustValue(c), TrustValue(p), a).value();
    EXPECT_GE(v, std::min(c, p));
    EXPECT_LE(v, std::max(c, p));
  }
}

TEST(IndirectTrust, WorkedExample) {
  EXPECT_NEAR(indirect_trust(TrustValue(0.667), TrustValue(0.3)).value(), 0.2, 1e-3);
  EXPECT_EQ(indirect_trust(TrustValue(1.0), TrustValue(0.3)).value(), 0.3);
  EXPECT_EQ(indirect_trust(TrustValue(0.0), TrustValue(0.9)).value(), 0.0);
}

TEST(TrustValue, RejectsOutOfRange) {
  EXPECT_THROW(TrustValue(-0.01), TrustError);
  EXPECT_THROW(TrustValue(1.01), TrustError);
  EXPECT_THROW(TrustValue(std::nan("")), TrustError);
  EXPECT_EQ(TrustValue().value(), kInitialTrust);
}

TEST(BeliefMass, Validation) {
  EXPECT_THROW(BeliefMass(0.5, 0.5, 0.5), TrustError);
  EXPECT_THROW(BeliefMass(-0.1, 0.6, 0.5), TrustError);
  EXPECT_EQ(BeliefMass(), BeliefMass(0.0, 0.0, 1.0));
  EXPECT_EQ(BeliefMass::vacuous().uncertain(), 1.0);
}

TEST(Bpa, TrustedAndUntrustedSides) {
  const BeliefMass hi = bpa_from_trust(TrustValue(0.8));
  EXPECT_EQ(hi.trusted(), 0.8);
  EXPECT_EQ(hi.untrusted(), 0.0);
  EXPECT_NEAR(hi.uncertain(), 0.2, 1e-15);
  const BeliefMass lo = bpa_from_trust(TrustValue(0.3));
  EXPECT_EQ(lo.trusted(), 0.0);
  EXPECT_NEAR(lo.untrusted(), 0.7, 1e-15);
  EXPECT_EQ(lo.uncertain(), 0.3);
  const BeliefMass mid = bpa_from_trust(TrustValue(0.5));
  EXPECT_EQ(mid, BeliefMass(0.5, 0.0, 0.5));
}

TEST(Bpa, PignisticRoundTrip) {
  // overall_trust(bpa(t)) recovers the classification of t
  for (int i = 0; i <= 1000; ++i) {
    const TrustValue t(i / 1000.0);
    EXPECT_EQ(classify(overall_trust(bpa_from_trust(t))), classify(t)) << t.value();
  }
}

TEST(Dempster, ConflictingPairReference) {
  const BeliefMass m = dempster_combine(BeliefMass(0.6, 0.0, 0.4), BeliefMass(0.0, 0.7, 0.3));
  EXPECT_NEAR(m.trusted(), 0.31034482758620690, 1e-15);
  EXPECT_NEAR(m.untrusted(), 0.48275862068965517, 1e-15);
  EXPECT_NEAR(m.uncertain(), 0.20689655172413793, 1e-15);
  EXPECT_NEAR(overall_trust(m).value(), 0.41379310344827586, 1e-15);
}

TEST(Dempster, AgreeingPairReference) {
  const BeliefMass m = dempster_combine(BeliefMass(0.6, 0.0, 0.4), BeliefMass(0.8, 0.0, 0.2));
  EXPECT_NEAR(m.trusted(), 0.92, 1e-15);
  EXPECT_EQ(m.untrusted(), 0.0);
  EXPECT_NEAR(m.uncertain(), 0.08, 1e-15);
}

TEST(Dempster, TotalConflictThrows) {
  EXPECT_THROW(dempster_combine(BeliefMass(1.0, 0.0, 0.0), BeliefMass(0.0, 1.0, 0.0)), TotalConflictError);
}

TEST(Dempster, MatchesBruteForceOracle) {
  std::mt19937_64 g(20240601);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const BeliefMass a = random_mass(g), b = random_mass(g);
    const BeliefMass m = dempster_combine(a, b);
    const auto ref = brute_force_combine(a, b);
    worst = std::max({worst, std::abs(m.trusted() - ref[0]), std::abs(m.untrusted() - ref[1]),
                      std::abs(m.uncertain() - ref[2])});
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Dempster, VacuousIsIdentity) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 10000; ++i) {
    const BeliefMass a = random_mass(g);
    EXPECT_EQ(dempster_combine(a, BeliefMass::vacuous()), a);
    EXPECT_EQ(dempster_combine(BeliefMass::vacuous(), a), a);
  }
}

TEST(Dempster, CommutativeAndNormalised) {
  std::mt19937_64 g(11);
  for (int i = 0; i < 10000; ++i) {
    const BeliefMass a = random_mass(g), b = random_mass(g);
    const BeliefMass ab = dempster_combine(a, b);
    EXPECT_EQ(ab, dempster_combine(b, a));
    EXPECT_NEAR(ab.trusted() + ab.untrusted() + ab.uncertain(), 1.0, 1e-12);
  }
}

TEST(Dempster, AssociativeWithinTolerance) {
  std::mt19937_64 g(12);
  for (int i = 0; i < 2000; ++i) {
    const BeliefMass a = random_mass(g), b = random_mass(g), c = random_mass(g);
    const BeliefMass l = dempster_combine(dempster_combine(a, b), c);
    const BeliefMass r = dempster_combine(a, dempster_combine(b, c));
    EXPECT_NEAR(l.trusted(), r.trusted(), 1e-9);
    EXPECT_NEAR(l.untrusted(), r.untrusted(), 1e-9);
  }
}

TEST(Classify, Threshold) {
  EXPECT_EQ(classify(TrustValue(0.5)), TrustClass::Trusted);
  EXPECT_EQ(classify(TrustValue(std::nextafter(0.5, 0.0))), TrustClass::Untrusted);
  EXPECT_STREQ(to_string(TrustClass::Untrusted), "untrusted");
}

TEST(DetectionChain, SilentNeighbourFallsBelowThreshold) {
  // One interval of zero forwarding from the initial trust.
  const TrustValue dt = ewma_update(entropy_trust(forwarding_probability({8, 0})), TrustValue(), smoothing_alpha(2));
  EXPECT_NEAR(dt.value(), 1.0 / 6.0, 1e-12);
  const TrustValue overall = overall_trust(bpa_from_trust(dt));
  EXPECT_NEAR(overall.value(), 1.0 / 12.0, 1e-12);
  EXPECT_EQ(classify(overall), TrustClass::Untrusted);
}
