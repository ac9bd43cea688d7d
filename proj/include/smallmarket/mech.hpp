#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smallmarket/common.hpp"
#include "smallmarket/dist.hpp"
#include "smallmarket/rational.hpp"

namespace smallmarket {

// ---------------------------------------------------------------------------
// Price: a posted price in S, or the NO_TRADE sentinel standing for infinity.
// NO_TRADE orders above every finite value; "NO_TRADE >= v_s" is false in the
// trade clauses because a price of infinity is a non-offer.
// ---------------------------------------------------------------------------

class Price {
 public:
  Price() = default;
  static Price noTrade() { return Price(); }
  static Price at(Value v) {
    Price p;
    p.finite_ = true;
    p.value_ = std::move(v);
    return p;
  }

  bool isNoTrade() const { return !finite_; }
  const Value& value() const {
    if (!finite_) throw PreconditionError("NO_TRADE price has no value");
    return value_;
  }

  friend bool operator==(const Price& a, const Price& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const Price& a, const Price& b) { return !(a == b); }
  friend bool operator<(const Price& a, const Price& b) {
    if (!a.finite_) return false;           // inf < anything is false
    if (!b.finite_) return true;            // finite < inf
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Price& a, const Price& b) { return a < b || a == b; }
  friend bool operator>(const Price& a, const Price& b) { return b < a; }
  friend bool operator>=(const Price& a, const Price& b) { return b <= a; }

 private:
  bool finite_ = false;
  Value value_{};
};

// A single-parameter price function over the shared support S; values[i] is
// the price charged when the opposing buyer reports S[i].
struct PriceFn {
  std::vector<Price> values;

  bool monotone() const {
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      if (values[i + 1] < values[i]) return false;
    return true;
  }
};

struct CompatPair {
  SupportPtr support;
  PriceFn f1;  // argument axis: buyer-2 value
  PriceFn f2;  // argument axis: buyer-1 value

  std::size_t indexOf(const Value& v) const {
    const Support& s = *support;
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v)
      throw PreconditionError("value " + rat::toString(v) + " is off-support");
    return static_cast<std::size_t>(it - s.begin());
  }

  const Price& price1(const Value& v2) const { return f1.values[indexOf(v2)]; }
  const Price& price2(const Value& v1) const { return f2.values[indexOf(v1)]; }
};

// ---------------------------------------------------------------------------
// Outcome of one run of the mechanism. Payments sum to zero; losers pay 0.
// caseTag records which clause of the six-case definition fired.
// ---------------------------------------------------------------------------

enum class Alloc { Seller, Buyer1, Buyer2 };

inline const char* allocName(Alloc a) {
  switch (a) {
    case Alloc::Seller: return "seller";
    case Alloc::Buyer1: return "buyer1";
    case Alloc::Buyer2: return "buyer2";
  }
  return "?";
}

struct Outcome {
  Alloc alloc = Alloc::Seller;
  Rat paySeller{0};
  Rat payBuyer1{0};
  Rat payBuyer2{0};
  int caseTag = 6;
};

namespace detail {

// Shared clause logic: prices already evaluated, bids may be off-support
// (executeLearned) or on-support (execute).
inline Outcome runClauses(const Value& vs, const Value& v1, const Value& v2, const Price& p1,
                          const Price& p2) {
  auto offer = [&](const Price& p) { return !p.isNoTrade() && p.value() >= vs; };
  Outcome out;
  if (!p1.isNoTrade() && v1 > p1.value() && offer(p1)) {
    out = {Alloc::Buyer1, -p1.value(), p1.value(), Rat(0), 1};
    return out;
  }
  if (!p2.isNoTrade() && v2 > p2.value() && offer(p2)) {
    out = {Alloc::Buyer2, -p2.value(), Rat(0), p2.value(), 2};
    return out;
  }
  bool tie1 = !p1.isNoTrade() && v1 == p1.value() && offer(p1);
  bool tie2 = !p2.isNoTrade() && v2 == p2.value() && offer(p2);
  if (tie1 && tie2) {
    if (v1 >= v2)
      out = {Alloc::Buyer1, -v1, v1, Rat(0), 3};
    else
      out = {Alloc::Buyer2, -v2, Rat(0), v2, 3};
    return out;
  }
  if (tie1) {
    out = {Alloc::Buyer1, -p1.value(), p1.value(), Rat(0), 4};
    return out;
  }
  if (tie2) {
    out = {Alloc::Buyer2, -p2.value(), Rat(0), p2.value(), 5};
    return out;
  }
  return out;  // case 6: no trade, zero payments
}

}  // namespace detail

// Exact execution; buyer bids must lie in S (the seller bid may be anything
// nonnegative, only its comparisons against prices matter).
inline Outcome execute(const CompatPair& pair, const Value& vs, const Value& v1,
                       const Value& v2) {
  return detail::runClauses(vs, v1, v2, pair.price1(v2), pair.price2(v1));
}

// ---------------------------------------------------------------------------
// Validation: compatibility, per-axis monotonicity, tightness after (p1,p2).
// Witnesses are reported for every failed predicate.
// ---------------------------------------------------------------------------

struct ValidationReport {
  bool compatible = true;
  std::optional<std::pair<Value, Value>> compatWitness;  // (v1, v2)
  bool monotone1 = true;
  bool monotone2 = true;
  std::optional<std::pair<Value, Value>> tightFrom;  // the point that was checked
  bool tight = true;
  std::optional<std::pair<Value, Value>> tightWitness;

  bool allOf(bool needTight) const {
    return compatible && monotone1 && monotone2 && (!needTight || tight);
  }
};

inline ValidationReport validatePair(const CompatPair& pair,
                                     std::optional<std::pair<Value, Value>> tightFrom =
                                         std::nullopt) {
  if (pair.f1.values.size() != pair.support->size() ||
      pair.f2.values.size() != pair.support->size())
    throw ValidationError("price function length must equal |S|");
  const Support& s = *pair.support;
  ValidationReport rep;
  rep.monotone1 = pair.f1.monotone();
  rep.monotone2 = pair.f2.monotone();
  for (std::size_t i = 0; i < s.size() && rep.compatible; ++i) {    // v1 = s[i]
    for (std::size_t j = 0; j < s.size() && rep.compatible; ++j) {  // v2 = s[j]
      const Price& a = pair.f1.values[j];
      const Price& b = pair.f2.values[i];
      bool above1 = !a.isNoTrade() && s[i] > a.value();
      bool above2 = !b.isNoTrade() && s[j] > b.value();
      if (above1 && above2) {
        rep.compatible = false;
        rep.compatWitness = {s[i], s[j]};
      }
    }
  }
  if (tightFrom) {
    rep.tightFrom = tightFrom;
    const Value& pb1 = tightFrom->first;
    const Value& pb2 = tightFrom->second;
    for (std::size_t i = 0; i < s.size() && rep.tight; ++i) {
      if (s[i] < pb1) continue;
      for (std::size_t j = 0; j < s.size() && rep.tight; ++j) {
        if (s[j] < pb2) continue;
        const Price& a = pair.f1.values[j];
        const Price& b = pair.f2.values[i];
        bool below1 = a.isNoTrade() || s[i] < a.value();
        bool below2 = b.isNoTrade() || s[j] < b.value();
        if (below1 && below2) {
          rep.tight = false;
          rep.tightWitness = {s[i], s[j]};
        }
      }
    }
  }
  return rep;
}

// Constructs a validated pair; rejects incompatible input with the witness.
inline CompatPair pairFromArrays(SupportPtr support, std::vector<Price> f1,
                                 std::vector<Price> f2) {
  const Support& s = *support;
  if (f1.size() != s.size() || f2.size() != s.size())
    throw ValidationError("price arrays must have length |S|");
  auto checkMember = [&](const Price& p) {
    if (p.isNoTrade()) return;
    if (!std::binary_search(s.begin(), s.end(), p.value()))
      throw ValidationError("price " + rat::toString(p.value()) + " is not in S");
  };
  for (const auto& p : f1) checkMember(p);
  for (const auto& p : f2) checkMember(p);
  CompatPair pair{std::move(support), PriceFn{std::move(f1)}, PriceFn{std::move(f2)}};
  ValidationReport rep = validatePair(pair);
  if (!rep.compatible)
    throw ValidationError("pair is incompatible, witness (v1,v2)=(" +
                          rat::toString(rep.compatWitness->first) + "," +
                          rat::toString(rep.compatWitness->second) + ")");
  return pair;
}

// Construction path for pairs that are compatible by construction (DP
// extraction, overfit mechanisms on large generic sets); skips the O(|S|^2)
// scan. Tests still validate the small instances through validatePair.
inline CompatPair pairUnchecked(SupportPtr support, std::vector<Price> f1,
                                std::vector<Price> f2) {
  return CompatPair{std::move(support), PriceFn{std::move(f1)}, PriceFn{std::move(f2)}};
}

// ---------------------------------------------------------------------------
// LearnedMechanism: a pair plus the rounding rule that extends it from S to
// all of [0,1] (buyer-1 bids round down, buyer-2 bids round up).
// ---------------------------------------------------------------------------

struct LearnedMechanism {
  CompatPair pair;

  // floor index of v in S; pre: S[0] <= v
  std::size_t floorIndex(const Value& v) const {
    const Support& s = *pair.support;
    auto it = std::upper_bound(s.begin(), s.end(), v);
    if (it == s.begin()) throw PreconditionError("bid below the support minimum");
    return static_cast<std::size_t>(it - s.begin()) - 1;
  }

  // ceil index of v in S; pre: v <= S[m-1]
  std::size_t ceilIndex(const Value& v) const {
    const Support& s = *pair.support;
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end()) throw PreconditionError("bid above the support maximum");
    return static_cast<std::size_t>(it - s.begin());
  }
};

// Prices are evaluated at rounded bids (f2 at floor(v1), f1 at ceil(v2));
// the clause comparisons then use the original unrounded bids.
inline Outcome executeLearned(const LearnedMechanism& mech, const Value& vs, const Value& v1,
                              const Value& v2) {
  const Price& p1 = mech.pair.f1.values[mech.ceilIndex(v2)];
  const Price& p2 = mech.pair.f2.values[mech.floorIndex(v1)];
  return detail::runClauses(vs, v1, v2, p1, p2);
}

}  // namespace smallmarket
