#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/mech.hpp"

namespace smallmarket {

// ---------------------------------------------------------------------------
// TripleSet: an explicit (possibly correlated) finite distribution over value
// triples. Evaluated by direct weighted sums; never enters the product DP.
// ---------------------------------------------------------------------------

struct Triple {
  Value vs, v1, v2;
};

struct TripleSet {
  std::vector<Triple> triples;
  std::vector<Rat> weights;  // same length as triples, sums to 1

  static TripleSet uniform(std::vector<Triple> triples) {
    if (triples.empty()) throw ValidationError("triple set must be nonempty");
    Rat w(1);
    w /= static_cast<long>(triples.size());
    std::vector<Rat> weights(triples.size(), w);
    return TripleSet{std::move(triples), std::move(weights)};
  }

  static TripleSet weighted(std::vector<Triple> triples, std::vector<Rat> weights) {
    if (triples.empty()) throw ValidationError("triple set must be nonempty");
    if (weights.size() != triples.size())
      throw ValidationError("weights length must match triples");
    Rat total(0);
    for (const auto& w : weights) {
      if (w <= 0) throw ValidationError("triple weights must be positive");
      total += w;
    }
    if (total != 1) throw ValidationError("triple weights must sum to 1");
    return TripleSet{std::move(triples), std::move(weights)};
  }
};

struct GenericityReport {
  bool generic = true;
  std::optional<Value> witness;  // first repeated value
};

// Strong form: all 3n values pairwise distinct. The weak form only requires
// distinctness within each coordinate.
inline GenericityReport isGeneric(const TripleSet& set, bool weakForm = false) {
  GenericityReport rep;
  if (!weakForm) {
    std::map<Value, int> seen;
    for (const auto& t : set.triples) {
      for (const Value* v : {&t.vs, &t.v1, &t.v2}) {
        if (++seen[*v] > 1) {
          rep.generic = false;
          rep.witness = *v;
          return rep;
        }
      }
    }
    return rep;
  }
  for (int coord = 0; coord < 3; ++coord) {
    std::map<Value, int> seen;
    for (const auto& t : set.triples) {
      const Value& v = coord == 0 ? t.vs : coord == 1 ? t.v1 : t.v2;
      if (++seen[v] > 1) {
        rep.generic = false;
        rep.witness = v;
        return rep;
      }
    }
  }
  return rep;
}

// Exact weighted GFT of a pair on a triple set (strict execution: triple
// values must lie in the pair's support).
inline Rat expectedGftOnTriples(const CompatPair& pair, const TripleSet& set) {
  Rat total(0);
  for (std::size_t k = 0; k < set.triples.size(); ++k) {
    const Triple& t = set.triples[k];
    Outcome out = execute(pair, t.vs, t.v1, t.v2);
    total += set.weights[k] * realizedGft(out, t.vs, t.v1, t.v2);
  }
  return total;
}

inline Rat firstBestOnTriples(const TripleSet& set) {
  Rat total(0);
  for (std::size_t k = 0; k < set.triples.size(); ++k) {
    const Triple& t = set.triples[k];
    Rat g1 = t.v1 - t.vs;
    Rat g2 = t.v2 - t.vs;
    Rat g = std::max(std::max(g1, g2), Rat(0));
    total += set.weights[k] * g;
  }
  return total;
}

// The overfit mechanism for a generic set: the higher buyer of each triple is
// offered exactly his own value, keyed on the other buyer's report; all other
// points price at NO_TRADE. Compatible by genericity (each key appears once,
// and a key shared by both functions would need a repeated value), so the
// O(|S|^2) validation scan is skipped; small-set tests validate explicitly.
inline CompatPair overfitMechanism(const TripleSet& set) {
  GenericityReport rep = isGeneric(set);
  if (!rep.generic)
    throw PreconditionError("overfit mechanism needs a generic set, repeated value " +
                            rat::toString(*rep.witness));
  std::vector<Value> grid;
  grid.reserve(set.triples.size() * 3);
  for (const auto& t : set.triples) {
    grid.push_back(t.vs);
    grid.push_back(t.v1);
    grid.push_back(t.v2);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto support = std::make_shared<const Support>(std::move(grid));
  const Support& s = *support;
  auto rankOf = [&](const Value& v) {
    return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), v) - s.begin());
  };
  std::vector<Price> f1(s.size(), Price::noTrade());
  std::vector<Price> f2(s.size(), Price::noTrade());
  for (const auto& t : set.triples) {
    if (t.v2 <= t.v1)
      f1[rankOf(t.v2)] = Price::at(t.v1);  // b1 is the (weakly) higher buyer
    if (t.v1 <= t.v2)
      f2[rankOf(t.v1)] = Price::at(t.v2);
  }
  return pairUnchecked(std::move(support), std::move(f1), std::move(f2));
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration and brute-force optimization. Functions are handled
// as rank vectors (rank m = NO_TRADE); compatibility for a fixed f1 reduces
// to pointwise lower bounds on f2, so only compatible pairs are visited.
// ---------------------------------------------------------------------------

namespace detail {

// minRank[i] = rank of max{ s_j : s_i > f1(s_j) } (0 when the set is empty);
// any f2(s_i) ranked below it would put some (s_i, s_j) strictly above both
// prices, so f2 rank vectors meeting these lower bounds are exactly the
// compatible completions of f1.
inline std::vector<std::size_t> compatLowerBounds(const std::vector<std::size_t>& f1Ranks,
                                                  std::size_t m) {
  std::vector<std::size_t> minRank(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t maxBad = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (f1Ranks[j] < i && j > maxBad) maxBad = j;  // s_i > f1(s_j) <=> rank < i
    }
    minRank[i] = maxBad;
  }
  return minRank;
}

template <typename Fn>
void forEachMonotoneRankVector(std::size_t m, const std::vector<std::size_t>& minRank, Fn&& fn) {
  // monotone non-decreasing vectors r[0..m) with r[i] in [minRank[i], m]
  std::vector<std::size_t> r(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t lo) {
    if (i == m) {
      fn(r);
      return;
    }
    std::size_t start = std::max(lo, minRank[i]);
    for (std::size_t v = start; v <= m; ++v) {
      r[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, 0);
}

inline std::vector<Price> ranksToPrices(const std::vector<std::size_t>& ranks,
                                        const Support& s) {
  std::vector<Price> out(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i)
    out[i] = ranks[i] < s.size() ? Price::at(s[ranks[i]]) : Price::noTrade();
  return out;
}

}  // namespace detail

// Visits every compatible pair of monotone non-decreasing functions
// S -> S u {NO_TRADE}. Deterministic order.
template <typename Visitor>
void forEachMonotonePair(const SupportPtr& support, Visitor&& visit, std::size_t cap = 6) {
  const Support& s = *support;
  const std::size_t m = s.size();
  if (m > cap) throw PreconditionError("support size exceeds the monotone enumeration cap");
  std::vector<std::size_t> noBound(m, 0);
  detail::forEachMonotoneRankVector(m, noBound, [&](const std::vector<std::size_t>& f1Ranks) {
    std::vector<std::size_t> minRank = detail::compatLowerBounds(f1Ranks, m);
    detail::forEachMonotoneRankVector(
        m, minRank, [&](const std::vector<std::size_t>& f2Ranks) {
          visit(pairUnchecked(support, detail::ranksToPrices(f1Ranks, s),
                              detail::ranksToPrices(f2Ranks, s)));
        });
  });
}

inline std::vector<CompatPair> enumerateMonotonePairs(const SupportPtr& support,
                                                      std::size_t cap = 6) {
  std::vector<CompatPair> out;
  forEachMonotonePair(support, [&](CompatPair p) { out.push_back(std::move(p)); }, cap);
  return out;
}

enum class BruteForceMode { Monotone, AllCompatible };

struct BruteForceResult {
  CompatPair pair;
  Rat gft{0};
};

// Ground-truth maximizer by exhaustive search. The cell table U[i][j][a][b]
// pre-folds the seller expectation through the actual executor, so each pair
// costs |S|^2 rational additions.
inline BruteForceResult bruteForceOpt(const ProductPrior& prior, BruteForceMode mode) {
  const Support& s = *prior.support;
  const std::size_t m = s.size();
  const std::size_t capAll = 4, capMono = 6;
  if (mode == BruteForceMode::AllCompatible && m > capAll)
    throw PreconditionError("ALL_COMPATIBLE brute force capped at |S| = 4");
  if (mode == BruteForceMode::Monotone && m > capMono)
    throw PreconditionError("MONOTONE brute force capped at |S| = 6");

  std::vector<Rat> w1(m), w2(m);
  for (std::size_t k = 0; k < m; ++k) {
    w1[k] = prior.buyer1.prEq(s[k]);
    w2[k] = prior.buyer2.prEq(s[k]);
  }
  // U[i][j][a][b]: weighted GFT when v1 = s_i, v2 = s_j, buyer prices ranked
  // a (f1 at s_j) and b (f2 at s_i); rank m = NO_TRADE.
  auto priceOf = [&](std::size_t r) {
    return r < m ? Price::at(s[r]) : Price::noTrade();
  };
  std::vector<Rat> cell(m * m * (m + 1) * (m + 1), Rat(0));
  auto cellAt = [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b) -> Rat& {
    return cell[((i * m + j) * (m + 1) + a) * (m + 1) + b];
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (w1[i] == 0 || w2[j] == 0) continue;  // zero-probability row/column
      for (std::size_t a = 0; a <= m; ++a)
        for (std::size_t b = 0; b <= m; ++b) {
          Rat acc(0);
          for (const auto& atom : prior.seller.atoms()) {
            Outcome out = detail::runClauses(atom.value, s[i], s[j], priceOf(a), priceOf(b));
            acc += atom.weight * realizedGft(out, atom.value, s[i], s[j]);
          }
          cellAt(i, j, a, b) = w1[i] * w2[j] * acc;
        }
    }

  std::optional<BruteForceResult> best;
  auto consider = [&](const std::vector<std::size_t>& f1Ranks,
                      const std::vector<std::size_t>& f2Ranks) {
    Rat g(0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) g += cellAt(i, j, f1Ranks[j], f2Ranks[i]);
    if (!best || g > best->gft) {
      best = BruteForceResult{pairUnchecked(prior.support, detail::ranksToPrices(f1Ranks, s),
                                            detail::ranksToPrices(f2Ranks, s)),
                              std::move(g)};
    }
  };

  if (mode == BruteForceMode::Monotone) {
    std::vector<std::size_t> noBound(m, 0);
    detail::forEachMonotoneRankVector(m, noBound, [&](const std::vector<std::size_t>& f1Ranks) {
      std::vector<std::size_t> minRank = detail::compatLowerBounds(f1Ranks, m);
      detail::forEachMonotoneRankVector(
          m, minRank,
          [&](const std::vector<std::size_t>& f2Ranks) { consider(f1Ranks, f2Ranks); });
    });
  } else {
    // odometer over all rank vectors for f1; f2 constrained pointwise
    std::vector<std::size_t> f1Ranks(m, 0);
    while (true) {
      std::vector<std::size_t> minRank = detail::compatLowerBounds(f1Ranks, m);
      std::vector<std::size_t> f2Ranks(minRank);
      while (true) {
        consider(f1Ranks, f2Ranks);
        std::size_t k = 0;
        while (k < m && f2Ranks[k] == m) ++k;
        if (k == m) break;
        ++f2Ranks[k];
        for (std::size_t l = 0; l < k; ++l) f2Ranks[l] = minRank[l];
      }
      std::size_t k = 0;
      while (k < m && f1Ranks[k] == m) ++k;
      if (k == m) break;
      ++f1Ranks[k];
      for (std::size_t l = 0; l < k; ++l) f1Ranks[l] = 0;
    }
  }
  return std::move(*best);
}

// ---------------------------------------------------------------------------
// Exhaustive incentive audit of an arbitrary executor callback: DSIC under
// unilateral on-grid misreports, plus ex-post IR, SBB, and normalization on
// every triple.
// ---------------------------------------------------------------------------

using Executor = std::function<Outcome(const Value& vs, const Value& v1, const Value& v2)>;

enum class ViolationKind { Dsic, Ir, Sbb, Normalization };

struct Violation {
  ViolationKind kind;
  Triple triple;        // true values
  std::string agent;    // "seller", "buyer1", "buyer2"
  std::optional<Value> misreport;
  std::string detail;
};

namespace detail {

inline Rat utilitySeller(const Outcome& out, const Value& vs) {
  Rat u = -out.paySeller;
  if (out.alloc != Alloc::Seller) u -= vs;
  return u;
}

inline Rat utilityBuyer(const Outcome& out, int b, const Value& vb) {
  if (b == 1) {
    Rat u = -out.payBuyer1;
    if (out.alloc == Alloc::Buyer1) u += vb;
    return u;
  }
  Rat u = -out.payBuyer2;
  if (out.alloc == Alloc::Buyer2) u += vb;
  return u;
}

}  // namespace detail

inline std::vector<Violation> dsicAudit(const Executor& executor,
                                        const std::vector<Value>& grid) {
  std::vector<Violation> violations;
  auto addViolation = [&](ViolationKind kind, const Triple& t, const std::string& agent,
                          std::optional<Value> misreport, std::string detail) {
    violations.push_back({kind, t, agent, std::move(misreport), std::move(detail)});
  };
  for (const Value& vs : grid)
    for (const Value& v1 : grid)
      for (const Value& v2 : grid) {
        Triple t{vs, v1, v2};
        Outcome truthful = executor(vs, v1, v2);
        if (truthful.paySeller + truthful.payBuyer1 + truthful.payBuyer2 != 0)
          addViolation(ViolationKind::Sbb, t, "-", std::nullopt, "payments do not sum to 0");
        if (truthful.alloc != Alloc::Buyer1 && truthful.payBuyer1 != 0)
          addViolation(ViolationKind::Normalization, t, "buyer1", std::nullopt,
                       "losing buyer pays");
        if (truthful.alloc != Alloc::Buyer2 && truthful.payBuyer2 != 0)
          addViolation(ViolationKind::Normalization, t, "buyer2", std::nullopt,
                       "losing buyer pays");
        if (truthful.alloc == Alloc::Seller && truthful.paySeller != 0)
          addViolation(ViolationKind::Normalization, t, "seller", std::nullopt,
                       "non-trading seller pays");
        Rat us = detail::utilitySeller(truthful, vs);
        Rat u1 = detail::utilityBuyer(truthful, 1, v1);
        Rat u2 = detail::utilityBuyer(truthful, 2, v2);
        if (us < 0) addViolation(ViolationKind::Ir, t, "seller", std::nullopt, "negative utility");
        if (u1 < 0) addViolation(ViolationKind::Ir, t, "buyer1", std::nullopt, "negative utility");
        if (u2 < 0) addViolation(ViolationKind::Ir, t, "buyer2", std::nullopt, "negative utility");
        for (const Value& dev : grid) {
          if (dev != vs) {
            Rat uDev = detail::utilitySeller(executor(dev, v1, v2), vs);
            if (uDev > us)
              addViolation(ViolationKind::Dsic, t, "seller", dev, "profitable misreport");
          }
          if (dev != v1) {
            Rat uDev = detail::utilityBuyer(executor(vs, dev, v2), 1, v1);
            if (uDev > u1)
              addViolation(ViolationKind::Dsic, t, "buyer1", dev, "profitable misreport");
          }
          if (dev != v2) {
            Rat uDev = detail::utilityBuyer(executor(vs, v1, dev), 2, v2);
            if (uDev > u2)
              addViolation(ViolationKind::Dsic, t, "buyer2", dev, "profitable misreport");
          }
        }
      }
  return violations;
}

}  // namespace smallmarket
