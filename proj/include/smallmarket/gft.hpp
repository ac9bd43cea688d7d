#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "smallmarket/dist.hpp"
#include "smallmarket/mech.hpp"
#include "smallmarket/rational.hpp"

namespace smallmarket {

struct GftStats {
  Rat total{0};
  Rat gft1{0};
  Rat gft2{0};
  Rat firstBest{0};
  Rat gap{0};
};

// v_b - v_s if buyer b trades, else 0.
inline Rat realizedGft(const Outcome& outcome, const Value& vs, const Value& v1,
                       const Value& v2) {
  switch (outcome.alloc) {
    case Alloc::Buyer1: return v1 - vs;
    case Alloc::Buyer2: return v2 - vs;
    case Alloc::Seller: return Rat(0);
  }
  return Rat(0);
}

namespace detail {

// Expected GFT for fixed buyer bids (v1, v2) with prices (p1, p2), summed in
// closed form over the seller distribution. Clause k fires on the seller
// down-set {vs <= theta_k} minus the union of earlier down-sets, so the sum
// telescopes over at most five seller intervals. Mirrors runClauses exactly.
struct BuyerCellGft {
  Rat toBuyer1{0};
  Rat toBuyer2{0};
};

inline BuyerCellGft sellerFoldedGft(const FiniteDist& seller, const Value& v1, const Value& v2,
                                    const Price& p1, const Price& p2) {
  struct Clause {
    bool active;
    Rat threshold;  // fires when vs <= threshold
    bool buyer1;
    Rat buyerValue;
  };
  bool eq1 = !p1.isNoTrade() && v1 == p1.value();
  bool eq2 = !p2.isNoTrade() && v2 == p2.value();
  Clause clauses[5] = {
      {!p1.isNoTrade() && v1 > p1.value(), p1.isNoTrade() ? Rat(0) : p1.value(), true, v1},
      {!p2.isNoTrade() && v2 > p2.value(), p2.isNoTrade() ? Rat(0) : p2.value(), false, v2},
      {eq1 && eq2, eq1 && eq2 ? std::min(p1.value(), p2.value()) : Rat(0), v1 >= v2,
       std::max(v1, v2)},
      {eq1, eq1 ? p1.value() : Rat(0), true, v1},
      {eq2, eq2 ? p2.value() : Rat(0), false, v2},
  };
  BuyerCellGft out;
  bool haveCover = false;
  Rat cover(0);  // max threshold among earlier active clauses
  for (const Clause& c : clauses) {
    if (!c.active) continue;
    if (!haveCover || c.threshold > cover) {
      // contribution over vs in (cover, threshold]
      Rat pHi = seller.prLe(c.threshold);
      Rat wHi = seller.wvLe(c.threshold);
      Rat pLo = haveCover ? seller.prLe(cover) : Rat(0);
      Rat wLo = haveCover ? seller.wvLe(cover) : Rat(0);
      Rat g = c.buyerValue * (pHi - pLo) - (wHi - wLo);
      if (c.buyer1)
        out.toBuyer1 += g;
      else
        out.toBuyer2 += g;
      cover = c.threshold;
      haveCover = true;
    } else if (c.threshold > cover) {
      cover = c.threshold;
    }
  }
  return out;
}

// Shared exact evaluator; PriceAt maps a buyer bid to the price it faces.
template <typename PriceAt1, typename PriceAt2>
GftStats expectedGftCore(const ProductPrior& prior, PriceAt1&& price1, PriceAt2&& price2) {
  GftStats stats;
  for (const auto& a1 : prior.buyer1.atoms()) {
    Price p2 = price2(a1.value);
    for (const auto& a2 : prior.buyer2.atoms()) {
      Price p1 = price1(a2.value);
      BuyerCellGft cell = sellerFoldedGft(prior.seller, a1.value, a2.value, p1, p2);
      Rat w = a1.weight * a2.weight;
      stats.gft1 += w * cell.toBuyer1;
      stats.gft2 += w * cell.toBuyer2;
    }
  }
  stats.total = stats.gft1 + stats.gft2;
  return stats;
}

}  // namespace detail

// Expectation of max{v1 - vs, v2 - vs, 0} over the product support.
inline Rat firstBest(const ProductPrior& prior) {
  Rat total(0);
  for (const auto& a1 : prior.buyer1.atoms()) {
    for (const auto& a2 : prior.buyer2.atoms()) {
      const Value& m = std::max(a1.value, a2.value);
      total += a1.weight * a2.weight * (m * prior.seller.prLe(m) - prior.seller.wvLe(m));
    }
  }
  return total;
}

// Exact expected GFT of the pair on the prior, split per buyer.
// pre: pair support contains every prior value.
inline GftStats expectedGft(const CompatPair& pair, const ProductPrior& prior) {
  GftStats stats = detail::expectedGftCore(
      prior, [&](const Value& v2) { return pair.price1(v2); },
      [&](const Value& v1) { return pair.price2(v1); });
  stats.firstBest = firstBest(prior);
  stats.gap = stats.firstBest - stats.total;
  return stats;
}

// Exact expected GFT of a learned mechanism (rounded price lookups) on a
// finite prior whose values need not lie in the learned support.
inline GftStats expectedGftLearned(const LearnedMechanism& mech, const ProductPrior& prior) {
  GftStats stats = detail::expectedGftCore(
      prior, [&](const Value& v2) { return mech.pair.f1.values[mech.ceilIndex(v2)]; },
      [&](const Value& v1) { return mech.pair.f2.values[mech.floorIndex(v1)]; });
  stats.firstBest = firstBest(prior);
  stats.gap = stats.firstBest - stats.total;
  return stats;
}

// Bilateral fixed-price GFT: E[Vb - Vs | Vb >= p >= Vs] * Pr[Vb >= p >= Vs].
inline Rat bilateralGft(const Value& p, const FiniteDist& sellerDist,
                        const FiniteDist& buyerDist) {
  return buyerDist.wvGe(p) * sellerDist.prLe(p) - buyerDist.prGe(p) * sellerDist.wvLe(p);
}

// Monte Carlo estimate of a learned mechanism's GFT under a product sampler;
// deterministic per seed. Returns (mean, 95% normal half-width).
inline std::pair<double, double> monteCarloGft(const LearnedMechanism& mech,
                                               const ProductSampler& sampler, long n,
                                               std::uint64_t seed) {
  if (n < 1) throw PreconditionError("monteCarloGft() needs n >= 1");
  Rng rng(seed);
  double sum = 0.0, sumSq = 0.0;
  for (long i = 0; i < n; ++i) {
    Value vs = sampler.seller.draw(rng);
    Value v1 = sampler.buyer1.draw(rng);
    Value v2 = sampler.buyer2.draw(rng);
    Outcome out = executeLearned(mech, vs, v1, v2);
    double g = rat::toDouble(realizedGft(out, vs, v1, v2));
    sum += g;
    sumSq += g * g;
  }
  double mean = sum / static_cast<double>(n);
  double var = std::max(0.0, sumSq / static_cast<double>(n) - mean * mean);
  double half = n > 1 ? 1.96 * std::sqrt(var / static_cast<double>(n)) : 0.0;
  return {mean, half};
}

}  // namespace smallmarket
