#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/mech.hpp"
#include "smallmarket/transform.hpp"

namespace smallmarket {

// ---------------------------------------------------------------------------
// The exact dynamic program over the merged support S. The (m+1) x (m+1)
// matrix G is indexed from the best-price box; G[i][j] holds the maximum GFT
// obtainable from the region v1 >= S[i], v2 >= S[j] (weighted by the
// probability of that region), filled by the two-option recurrence. The
// pointer matrix Gp records which option won, RIGHT on ties.
// ---------------------------------------------------------------------------

enum class DpMove : unsigned char { Right, Up, Terminal };

struct DpTables {
  SupportPtr support;
  std::size_t p1Index = 0;  // best price for V_s x V_1
  std::size_t p2Index = 0;  // best price for V_s x V_2
  std::vector<std::vector<Rat>> g;       // (m+1) x (m+1)
  std::vector<std::vector<DpMove>> gp;   // pointers, valid on [p1..m-1] x [p2..m-1]
};

struct SolveResult {
  CompatPair pair;
  GftStats stats;
  DpTables tables;
};

// Step 1: unrestricted best prices per buyer axis, highest-price tie-break.
// Both are members of S because S always contains 0.
inline std::pair<Value, Value> bestPrices(const ProductPrior& prior) {
  const Support& s = *prior.support;
  return {restrictedBestPrice(Value(0), prior.seller, prior.buyer1, s),
          restrictedBestPrice(Value(0), prior.seller, prior.buyer2, s)};
}

// Steps 2+3: boundary row/column at zero, then fill G and the pointers
// descending from (m-1, m-1) to the best-price box. Zero-probability
// conditional terms contribute 0 through the wv/pr products.
inline DpTables fillDp(const ProductPrior& prior, const Value& p1, const Value& p2) {
  const Support& s = *prior.support;
  const std::size_t m = s.size();
  DpTables t;
  t.support = prior.support;
  t.p1Index = static_cast<std::size_t>(
      std::lower_bound(s.begin(), s.end(), p1) - s.begin());
  t.p2Index = static_cast<std::size_t>(
      std::lower_bound(s.begin(), s.end(), p2) - s.begin());
  if (t.p1Index >= m || s[t.p1Index] != p1 || t.p2Index >= m || s[t.p2Index] != p2)
    throw PreconditionError("best prices must be members of S");

  // Per-point marginals. W1[i]/W2[j] are the bilateral factors
  // Pr[Vb >= s]*Pr[Vs <= s]*(E[Vb | Vb >= s] - E[Vs | Vs <= s]) folded into
  // exact products, so each DP cell costs one multiply and one add per option.
  std::vector<Rat> pEq1(m), pEq2(m), w1(m), w2(m);
  for (std::size_t k = 0; k < m; ++k) {
    pEq1[k] = prior.buyer1.prEq(s[k]);
    pEq2[k] = prior.buyer2.prEq(s[k]);
    w1[k] = bilateralGft(s[k], prior.seller, prior.buyer1);
    w2[k] = bilateralGft(s[k], prior.seller, prior.buyer2);
  }

  t.g.assign(m + 1, std::vector<Rat>(m + 1, Rat(0)));
  t.gp.assign(m + 1, std::vector<DpMove>(m + 1, DpMove::Terminal));
  for (std::size_t i = m; i-- > t.p1Index;) {
    for (std::size_t j = m; j-- > t.p2Index;) {
      Rat g1 = pEq1[i] * w2[j] + t.g[i + 1][j];  // f2(s_i) = s_j, continue right
      Rat g2 = pEq2[j] * w1[i] + t.g[i][j + 1];  // f1(s_j) = s_i, continue up
      if (g1 >= g2) {
        t.g[i][j] = std::move(g1);
        t.gp[i][j] = DpMove::Right;
      } else {
        t.g[i][j] = std::move(g2);
        t.gp[i][j] = DpMove::Up;
      }
    }
  }
  return t;
}

// Step 4: constant best prices below the box, then walk the pointers from
// (p1, p2). RIGHT fixes f2 at the current row, UP fixes f1 at the current
// column. Once the walk leaves the matrix through an edge, the remaining
// positions on the other axis get NO_TRADE: the exhausted axis can no longer
// host the trades the recurrence accounted for, and any finite assignment
// there would break compatibility with the staircase already emitted.
inline CompatPair extractPair(const DpTables& t) {
  const Support& s = *t.support;
  const std::size_t m = s.size();
  std::vector<Price> f1(m), f2(m);
  for (std::size_t j = 0; j <= t.p2Index; ++j) f1[j] = Price::at(s[t.p1Index]);
  for (std::size_t i = 0; i <= t.p1Index; ++i) f2[i] = Price::at(s[t.p2Index]);
  std::size_t i = t.p1Index, j = t.p2Index;
  while (i < m || j < m) {
    if (i >= m) {
      f1[j++] = Price::noTrade();
    } else if (j >= m) {
      f2[i++] = Price::noTrade();
    } else if (t.gp[i][j] == DpMove::Right) {
      f2[i++] = Price::at(s[j]);
    } else {
      f1[j++] = Price::at(s[i]);
    }
  }
  return pairUnchecked(t.support, std::move(f1), std::move(f2));
}

// Algorithm entry point: GFT-optimal simple mechanism for the finite product
// prior, exact over all compatible pairs on S.
inline SolveResult solve(const ProductPrior& prior) {
  auto [p1, p2] = bestPrices(prior);
  DpTables tables = fillDp(prior, p1, p2);
  CompatPair pair = extractPair(tables);
  GftStats stats = expectedGft(pair, prior);
  return SolveResult{std::move(pair), std::move(stats), std::move(tables)};
}

}  // namespace smallmarket
