#pragma once

#include <utility>
#include <vector>

#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/mech.hpp"

namespace smallmarket {

// Compatibility restriction of f_other on the opposing axis at v:
// max{ w in S : v >= f_other(w) }, or 0 when no such w exists. Finite
// supports turn the sup into a max.
inline Value compatRestriction(const PriceFn& fOther, const Support& s, const Value& v) {
  bool found = false;
  Value best(0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Price& p = fOther.values[k];
    if (!p.isNoTrade() && v >= p.value()) {
      best = s[k];  // s ascending, so the last hit is the max
      found = true;
    }
  }
  return found ? best : Value(0);
}

// Highest price among {r} u {s in S : s >= r} that maximizes the bilateral
// GFT. Between consecutive support points the GFT is constant and dominated
// by the right endpoint, so candidates outside this set never win; when no
// price trades profitably the highest candidate is returned.
inline Value restrictedBestPrice(const Value& r, const FiniteDist& sellerDist,
                                 const FiniteDist& buyerDist, const Support& s) {
  if (r < 0) throw PreconditionError("restriction must be nonnegative");
  Value bestPrice = r;
  Rat bestGft = bilateralGft(r, sellerDist, buyerDist);
  for (const Value& cand : s) {
    if (cand < r) continue;
    Rat g = bilateralGft(cand, sellerDist, buyerDist);
    if (g > bestGft || (g == bestGft && cand > bestPrice)) {
      bestGft = g;
      bestPrice = cand;
    }
  }
  return bestPrice;
}

// The operator g: pointwise restricted best price under the compatibility
// restriction imposed by f_other. Output is monotone non-decreasing and
// compatible with f_other.
inline PriceFn applyG(const PriceFn& fOther, const FiniteDist& sellerDist,
                      const FiniteDist& buyerDist, const Support& s) {
  PriceFn out;
  out.values.reserve(s.size());
  for (const Value& v : s) {
    Value r = compatRestriction(fOther, s, v);
    out.values.push_back(Price::at(restrictedBestPrice(r, sellerDist, buyerDist, s)));
  }
  return out;
}

// Three-step monotonization: f2_hat = g(f1), f1_star = g(f2_hat),
// f2_star = g(f1_star). GFT is non-decreasing at every step and the result
// is monotone, compatible, and tight after the unrestricted best prices.
struct CanonicalizeTrace {
  CompatPair result;
  Rat gftInput{0};
  Rat gftStep1{0};  // (f1, f2_hat)
  Rat gftStep2{0};  // (f1_star, f2_hat)
  Rat gftStep3{0};  // (f1_star, f2_star)
  std::pair<Value, Value> bestPrices{Value(0), Value(0)};
};

inline CanonicalizeTrace canonicalizeTraced(const CompatPair& pair, const ProductPrior& prior) {
  ValidationReport rep = validatePair(pair);
  if (!rep.compatible) throw PreconditionError("canonicalize() needs a compatible pair");
  const Support& s = *pair.support;

  CanonicalizeTrace trace;
  trace.gftInput = expectedGft(pair, prior).total;

  PriceFn f2hat = applyG(pair.f1, prior.seller, prior.buyer2, s);
  CompatPair step1{pair.support, pair.f1, f2hat};
  trace.gftStep1 = expectedGft(step1, prior).total;

  PriceFn f1star = applyG(f2hat, prior.seller, prior.buyer1, s);
  CompatPair step2{pair.support, f1star, f2hat};
  trace.gftStep2 = expectedGft(step2, prior).total;

  PriceFn f2star = applyG(f1star, prior.seller, prior.buyer2, s);
  trace.result = CompatPair{pair.support, std::move(f1star), std::move(f2star)};
  trace.gftStep3 = expectedGft(trace.result, prior).total;

  trace.bestPrices = {restrictedBestPrice(Value(0), prior.seller, prior.buyer1, s),
                      restrictedBestPrice(Value(0), prior.seller, prior.buyer2, s)};
  return trace;
}

inline CompatPair canonicalize(const CompatPair& pair, const ProductPrior& prior) {
  return canonicalizeTraced(pair, prior).result;
}

}  // namespace smallmarket
