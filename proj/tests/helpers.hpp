#pragma once

// Shared test fixtures: shorthand constructors, random instance generators,
// and independent (naive-enumeration) oracles that the fast implementations
// are checked against.

#include <random>
#include <vector>

#include "smallmarket/smallmarket.hpp"

namespace smtest {

using namespace smallmarket;

inline Rat R(const std::string& s) { return rat::parse(s); }

inline FiniteDist uniformDist(std::initializer_list<const char*> vals) {
  std::vector<Value> values;
  for (const char* v : vals) values.push_back(R(v));
  return uniformOver(values);
}

inline ProductPrior makePrior(FiniteDist s, FiniteDist b1, FiniteDist b2) {
  return ProductPrior::make(std::move(s), std::move(b1), std::move(b2));
}

inline SupportPtr supportOf(std::initializer_list<const char*> vals) {
  auto s = std::make_shared<Support>();
  for (const char* v : vals) s->push_back(R(v));
  return s;
}

inline Price P(const char* v) { return Price::at(R(v)); }
inline Price NT() { return Price::noTrade(); }

// Random rational distribution supported on a subset of the given values.
inline FiniteDist randomDist(const std::vector<Value>& values, std::mt19937_64& rng) {
  std::vector<std::pair<Value, Rat>> atoms;
  for (const auto& v : values)
    if (rng() % 2 == 0) atoms.emplace_back(v, Rat(1 + static_cast<long>(rng() % 8)));
  if (atoms.empty()) {
    const Value& v = values[rng() % values.size()];
    atoms.emplace_back(v, Rat(1));
  }
  return makeFiniteDist(std::move(atoms), WeightMode::Counts);
}

// Random prior whose merged support is exactly {0, interior values..., 1}.
inline ProductPrior randomPrior(const std::vector<Value>& interior, std::mt19937_64& rng) {
  std::vector<Value> values{Rat(0)};
  values.insert(values.end(), interior.begin(), interior.end());
  values.push_back(Rat(1));
  FiniteDist s = randomDist(values, rng);
  FiniteDist b1 = randomDist(values, rng);
  FiniteDist b2 = randomDist(values, rng);
  // pin the extremes onto some agent so the merged support is all of `values`
  auto pin = [&](const Value& v) {
    std::vector<std::pair<Value, Rat>> atoms;
    for (const auto& a : s.atoms()) atoms.emplace_back(a.value, a.weight);
    atoms.emplace_back(v, Rat(1));
    s = makeFiniteDist(std::move(atoms), WeightMode::Counts);
  };
  for (const auto& v : values) {
    if (s.prEq(v) == 0 && b1.prEq(v) == 0 && b2.prEq(v) == 0) pin(v);
  }
  return ProductPrior::make(std::move(s), std::move(b1), std::move(b2));
}

inline Price randomPrice(const Support& s, std::mt19937_64& rng) {
  std::size_t r = rng() % (s.size() + 1);
  return r < s.size() ? Price::at(s[r]) : Price::noTrade();
}

// Random compatible pair: f1 arbitrary, then each f2 value drawn at or above
// the compatibility restriction that f1 imposes.
inline CompatPair randomCompatiblePair(const SupportPtr& support, std::mt19937_64& rng) {
  const Support& s = *support;
  std::vector<Price> f1(s.size());
  for (auto& p : f1) p = randomPrice(s, rng);
  PriceFn f1Fn{f1};
  std::vector<Price> f2(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Value r = compatRestriction(f1Fn, s, s[i]);
    std::vector<Price> allowed;
    for (const auto& v : s)
      if (v >= r) allowed.push_back(Price::at(v));
    allowed.push_back(Price::noTrade());
    f2[i] = allowed[rng() % allowed.size()];
  }
  return pairFromArrays(support, std::move(f1), std::move(f2));
}

// Independent oracle: plain triple enumeration through the executor, summed
// in a different order than the closed-form evaluator.
inline GftStats naiveExpectedGft(const CompatPair& pair, const ProductPrior& prior) {
  GftStats stats;
  for (const auto& a2 : prior.buyer2.atoms())
    for (const auto& as : prior.seller.atoms())
      for (const auto& a1 : prior.buyer1.atoms()) {
        Outcome out = execute(pair, as.value, a1.value, a2.value);
        Rat w = as.weight * a1.weight * a2.weight;
        Rat g = realizedGft(out, as.value, a1.value, a2.value);
        if (out.alloc == Alloc::Buyer1) stats.gft1 += w * g;
        if (out.alloc == Alloc::Buyer2) stats.gft2 += w * g;
      }
  stats.total = stats.gft1 + stats.gft2;
  return stats;
}

inline Rat naiveFirstBest(const ProductPrior& prior) {
  Rat total(0);
  for (const auto& as : prior.seller.atoms())
    for (const auto& a1 : prior.buyer1.atoms())
      for (const auto& a2 : prior.buyer2.atoms()) {
        Rat g1 = a1.value - as.value;
        Rat g2 = a2.value - as.value;
        Rat g = std::max(std::max(g1, g2), Rat(0));
        total += as.weight * a1.weight * a2.weight * g;
      }
  return total;
}

inline Rat naiveBilateralGft(const Value& p, const FiniteDist& seller,
                             const FiniteDist& buyer) {
  Rat total(0);
  for (const auto& ab : buyer.atoms())
    for (const auto& as : seller.atoms())
      if (ab.value >= p && p >= as.value) total += ab.weight * as.weight * (ab.value - as.value);
  return total;
}

}  // namespace smtest
