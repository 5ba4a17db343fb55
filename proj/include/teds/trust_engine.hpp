#pragma once

// Trust arithmetic for the entropy / Dempster-Shafer trust model.
//
// Everything here is a pure function over small value types. Range and
// contract violations throw; the two contract errors callers are expected to
// handle (an interval with no forwarding samples, and totally conflicting
// evidence) have their own exception types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace teds {

/// Tolerance used for mass normalisation and range checks.
inline constexpr double kMassTolerance = 1e-9;

/// Trust at or above this value is classified as trusted.
inline constexpr double kTrustThreshold = 0.5;

/// Trust every node assigns to a neighbor it has no evidence about.
inline constexpr double kInitialTrust = 0.5;

struct TrustError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Forwarding probability requested for a neighbor that was never handed a
/// packet. Callers skip the update instead of inventing a value.
struct ZeroSampleError : TrustError {
  ZeroSampleError() : TrustError("forwarding probability undefined: no packets sent") {}
};

/// Dempster combination with conflict K == 1.
struct TotalConflictError : TrustError {
  TotalConflictError() : TrustError("dempster combination undefined: total conflict (K = 1)") {}
};

namespace detail {

inline void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw TrustError(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace detail

/// A trust rating in [0, 1].
class TrustValue {
 public:
  constexpr TrustValue() = default;
  explicit TrustValue(double v) : value_(v) { detail::require_unit(v, "trust value"); }

  constexpr double value() const { return value_; }
  constexpr explicit operator double() const { return value_; }

  friend constexpr auto operator<=>(const TrustValue&, const TrustValue&) = default;

 private:
  double value_ = kInitialTrust;
};

/// Packets handed to a neighbor for forwarding, and how many of those were
/// heard being retransmitted.
struct ForwardingStats {
  std::uint64_t sent = 0;
  std::uint64_t overheard = 0;

  friend constexpr bool operator==(const ForwardingStats&, const ForwardingStats&) = default;
};

/// Basic probability assignment over the frame {T, UT}. Mass on the empty
/// set is always zero and is not stored.
class BeliefMass {
 public:
  /// Vacuous assignment: all mass on {T, UT}.
  constexpr BeliefMass() = default;

  BeliefMass(double trusted, double untrusted, double uncertain)
      : t_(trusted), ut_(untrusted), tu_(uncertain) {
    detail::require_unit(t_, "mass on {T}");
    detail::require_unit(ut_, "mass on {UT}");
    detail::require_unit(tu_, "mass on {T,UT}");
    if (std::abs(t_ + ut_ + tu_ - 1.0) > kMassTolerance) {
      throw TrustError("belief masses must sum to 1");
    }
  }

  static constexpr BeliefMass vacuous() { return BeliefMass(); }

  constexpr double trusted() const { return t_; }
  constexpr double untrusted() const { return ut_; }
  constexpr double uncertain() const { return tu_; }

  friend constexpr bool operator==(const BeliefMass&, const BeliefMass&) = default;

 private:
  double t_ = 0.0;
  double ut_ = 0.0;
  double tu_ = 1.0;
};

enum class TrustClass { Trusted, Untrusted };

inline const char* to_string(TrustClass c) {
  return c == TrustClass::Trusted ? "trusted" : "untrusted";
}

/// Fraction of packets sent to a neighbor that were overheard being
/// forwarded. Throws ZeroSampleError when nothing was sent.
inline double forwarding_probability(const ForwardingStats& stats) {
  if (stats.overheard > stats.sent) {
    throw TrustError("overheard count exceeds sent count");
  }
  if (stats.sent == 0) throw ZeroSampleError();
  return static_cast<double>(stats.overheard) / static_cast<double>(stats.sent);
}

/// Shannon binary entropy in bits, with 0 log 0 = 0.
inline double binary_entropy(double p) {
  detail::require_unit(p, "probability");
  if (p == 0.0 || p == 1.0) return 0.0;
  const double q = 1.0 - p;
  return -p * std::log2(p) - q * std::log2(q);
}

/// Direct trust from a forwarding probability: 1 - H/2 above one half,
/// H/2 below it.
inline TrustValue entropy_trust(double p) {
  const double h = binary_entropy(p);
  const double t = p >= 0.5 ? 1.0 - 0.5 * h : 0.5 * h;
  return TrustValue(std::clamp(t, 0.0, 1.0));
}

/// EWMA smoothing factor matching the average data age of an n-sample SMA.
inline double smoothing_alpha(int n) {
  if (n < 1) throw TrustError("smoothing sample count must be >= 1");
  return 2.0 / (static_cast<double>(n) + 1.0);
}

inline TrustValue ewma_update(TrustValue current, TrustValue previous, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw TrustError("smoothing factor must lie in (0, 1]");
  }
  const double c = current.value();
  const double p = previous.value();
  double v = alpha * c + (1.0 - alpha) * p;
  // Keep the result a convex combination under rounding.
  v = std::clamp(v, std::min(c, p), std::max(c, p));
  return TrustValue(v);
}

/// Recommendation discounted by the trustor's trust in the recommender.
inline TrustValue indirect_trust(TrustValue recommender, TrustValue reported) {
  return TrustValue(recommender.value() * reported.value());
}

/// BPA for a scalar trust. Trusted values put their strength on {T};
/// untrusted values put 1 - t on {UT}. The remainder is uncertainty.
inline BeliefMass bpa_from_trust(TrustValue t) {
  const double v = t.value();
  if (v >= kTrustThreshold) return BeliefMass(v, 0.0, 1.0 - v);
  return BeliefMass(0.0, 1.0 - v, v);
}

/// Dempster's rule on the frame {T, UT}. Throws TotalConflictError if K == 1.
inline BeliefMass dempster_combine(const BeliefMass& a, const BeliefMass& b) {
  const double conflict = a.trusted() * b.untrusted() + a.untrusted() * b.trusted();
  const double norm = 1.0 - conflict;
  if (!(norm > 0.0)) throw TotalConflictError();

  // Cross terms are summed first so that swapping the operands is exact.
  double t = (a.trusted() * b.trusted() + (a.trusted() * b.uncertain() + a.uncertain() * b.trusted())) / norm;
  double ut =
      (a.untrusted() * b.untrusted() + (a.untrusted() * b.uncertain() + a.uncertain() * b.untrusted())) / norm;
  double tu = (a.uncertain() * b.uncertain()) / norm;
  t = std::clamp(t, 0.0, 1.0);
  ut = std::clamp(ut, 0.0, 1.0);
  tu = std::clamp(tu, 0.0, 1.0);
  return BeliefMass(t, ut, tu);
}

/// Pignistic probability of {T}: belief plus half the uncertainty.
inline TrustValue overall_trust(const BeliefMass& m) {
  return TrustValue(std::clamp(m.trusted() + 0.5 * m.uncertain(), 0.0, 1.0));
}

inline TrustClass classify(TrustValue t) {
  return t.value() >= kTrustThreshold ? TrustClass::Trusted : TrustClass::Untrusted;
}

}  // namespace teds
