#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/mech.hpp"
#include "smallmarket/optdp.hpp"
#include "smallmarket/oracle.hpp"

namespace smallmarket {

// Tunable constants with the defaults fixed by the design; every experiment
// echoes the values it ran with.
struct LearnConfig {
  double sampleSizeFactor = 4.0;        // F in m = ceil((F/eps^2) ln(4/(eps*delta)))
  double distinguisherFreshFactor = 16.0;  // fresh triples = ceil(factor / c^2)
  long distinguisherSetExtra = 1;       // generic set size T = 6 t^2 + extra
};

struct LearnReport {
  LearnedMechanism mech;
  long sampleCountPerAgent = 0;
  std::uint64_t seed = 0;
  GftStats empiricalGft;                          // exact, on the empirical product
  std::optional<std::pair<double, double>> trueGftEstimate;  // vs a sampler, (mean, half)
};

// Algorithm: draw m(eps, delta) values per agent, build the empirical product
// prior, solve it exactly, and wrap the optimal pair with the rounding rule.
inline LearnReport learnMechanism(const ProductSampler& sampler, double epsilon, double delta,
                                  std::uint64_t seed, const LearnConfig& cfg = {}) {
  long n = sampleSize(epsilon, delta, cfg.sampleSizeFactor);
  SampleSet samples = drawTriples(sampler, n, seed);
  ProductPrior empiricalPrior = ProductPrior::make(
      empirical(samples.seller), empirical(samples.buyer1), empirical(samples.buyer2));
  SolveResult solved = solve(empiricalPrior);
  LearnReport report;
  report.mech = LearnedMechanism{std::move(solved.pair)};
  report.sampleCountPerAgent = n;
  report.seed = seed;
  report.empiricalGft = std::move(solved.stats);
  return report;
}

// ---------------------------------------------------------------------------
// Stability harness: how far the exact GFT of a fixed monotone pair moves
// when the prior is replaced by empirical distributions that verify as
// epsilon-samples. Trials whose samples fail the epsilon-sample check are
// excluded from the bound but counted.
// ---------------------------------------------------------------------------

struct StabilityReport {
  int trials = 0;
  int discarded = 0;          // trials failing the epsilon-sample hypothesis
  Rat maxTotalDiff{0};        // over verified trials
  Rat maxBuyerDiff{0};
  bool totalWithin12Eps = true;
  bool buyersWithin6Eps = true;
};

inline StabilityReport gftStabilityCheck(const CompatPair& pair, const ProductPrior& truePrior,
                                         double epsilon, std::uint64_t seed, int trials,
                                         double delta = 0.1, const LearnConfig& cfg = {}) {
  ValidationReport rep = validatePair(pair);
  if (!rep.compatible || !rep.monotone1 || !rep.monotone2)
    throw PreconditionError("stability check needs a compatible monotone pair");
  long n = sampleSize(epsilon, delta, cfg.sampleSizeFactor);
  Rat eps = rat::fromDouble(epsilon);
  GftStats trueStats = expectedGft(pair, truePrior);
  ProductSampler sampler = ProductSampler::fromPrior(truePrior);
  StabilityReport out;
  out.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    SampleSet samples = drawTriples(sampler, n, deriveSeed(seed, trial));
    bool verified = intervalDiscrepancy(truePrior.seller, samples.seller) <= eps &&
                    intervalDiscrepancy(truePrior.buyer1, samples.buyer1) <= eps &&
                    intervalDiscrepancy(truePrior.buyer2, samples.buyer2) <= eps;
    if (!verified) {
      ++out.discarded;
      continue;
    }
    ProductPrior empiricalPrior = ProductPrior::make(
        empirical(samples.seller), empirical(samples.buyer1), empirical(samples.buyer2));
    GftStats empStats = expectedGft(pair, empiricalPrior);
    Rat dTotal = abs(trueStats.total - empStats.total);
    Rat d1 = abs(trueStats.gft1 - empStats.gft1);
    Rat d2 = abs(trueStats.gft2 - empStats.gft2);
    if (dTotal > out.maxTotalDiff) out.maxTotalDiff = dTotal;
    if (d1 > out.maxBuyerDiff) out.maxBuyerDiff = d1;
    if (d2 > out.maxBuyerDiff) out.maxBuyerDiff = d2;
  }
  out.totalWithin12Eps = out.maxTotalDiff <= 12 * eps;
  out.buyersWithin6Eps = out.maxBuyerDiff <= 6 * eps;
  return out;
}

// ---------------------------------------------------------------------------
// Distinguisher experiment: estimate the first best and a mechanism's GFT on
// fresh triples and compare their difference against the 3c threshold.
// ---------------------------------------------------------------------------

enum class DistinguisherVerdictKind { FirstBestAchievable, Gap };

struct DistinguisherVerdict {
  double gStarC = 0.0;    // first-best estimate on the fresh sample
  double gC = 0.0;        // mechanism GFT estimate on the fresh sample
  double statistic = 0.0;  // gStarC - gC
  double threshold = 0.0;  // 3c
  DistinguisherVerdictKind verdict = DistinguisherVerdictKind::FirstBestAchievable;
  std::string mechanismSource;  // "learned" or "overfit-full-set"
};

inline DistinguisherVerdictKind verdictFor(double statistic, double threshold) {
  return statistic > threshold ? DistinguisherVerdictKind::Gap
                               : DistinguisherVerdictKind::FirstBestAchievable;
}

namespace detail {

template <typename DrawTriple, typename RealizedGft>
DistinguisherVerdict runDistinguisher(DrawTriple&& draw, RealizedGft&& mechGft, long freshCount,
                                      double c, const std::string& source) {
  DistinguisherVerdict v;
  v.threshold = 3.0 * c;
  v.mechanismSource = source;
  double sumStar = 0.0, sumMech = 0.0;
  for (long k = 0; k < freshCount; ++k) {
    Triple t = draw();
    double vs = rat::toDouble(t.vs), v1 = rat::toDouble(t.v1), v2 = rat::toDouble(t.v2);
    sumStar += std::max(std::max(v1 - vs, v2 - vs), 0.0);
    sumMech += mechGft(t);
  }
  v.gStarC = sumStar / static_cast<double>(freshCount);
  v.gC = sumMech / static_cast<double>(freshCount);
  v.statistic = v.gStarC - v.gC;
  v.verdict = verdictFor(v.statistic, v.threshold);
  return v;
}

}  // namespace detail

// Product-sampler regime: learn a mechanism from t sample triples, then
// estimate both quantities on ceil(freshFactor/c^2) fresh triples.
inline DistinguisherVerdict distinguisher(const ProductSampler& sampler, long t, double c,
                                          std::uint64_t seed, const LearnConfig& cfg = {}) {
  if (t < 1) throw PreconditionError("distinguisher needs t >= 1");
  if (!(c > 0)) throw PreconditionError("distinguisher needs c > 0");
  SampleSet train = drawTriples(sampler, t, deriveSeed(seed, 0));
  ProductPrior empiricalPrior = ProductPrior::make(
      empirical(train.seller), empirical(train.buyer1), empirical(train.buyer2));
  LearnedMechanism mech{solve(empiricalPrior).pair};
  long fresh = static_cast<long>(std::ceil(cfg.distinguisherFreshFactor / (c * c)));
  Rng rng(deriveSeed(seed, 1));
  auto draw = [&]() {
    Triple out{sampler.seller.draw(rng), sampler.buyer1.draw(rng), sampler.buyer2.draw(rng)};
    return out;
  };
  auto mechGft = [&](const Triple& tr) {
    Outcome out = executeLearned(mech, tr.vs, tr.v1, tr.v2);
    return rat::toDouble(realizedGft(out, tr.vs, tr.v1, tr.v2));
  };
  return detail::runDistinguisher(draw, mechGft, fresh, c, "learned");
}

// Correlated regime over an explicit generic TripleSet. The gC source is the
// overfit pair tailored to the full set: it prices every triple at its
// higher buyer's value, so its GFT matches the first best triple by triple
// and the experiment exhibits the zero-gap side of the separation.
inline DistinguisherVerdict distinguisherOnTripleSet(const TripleSet& set, double c,
                                                     std::uint64_t seed,
                                                     const LearnConfig& cfg = {}) {
  if (!(c > 0)) throw PreconditionError("distinguisher needs c > 0");
  CompatPair overfit = overfitMechanism(set);
  long fresh = static_cast<long>(std::ceil(cfg.distinguisherFreshFactor / (c * c)));
  Rng rng(deriveSeed(seed, 1));
  auto draw = [&]() { return set.triples[rng.index(set.triples.size())]; };
  auto mechGft = [&](const Triple& tr) {
    Outcome out = execute(overfit, tr.vs, tr.v1, tr.v2);
    return rat::toDouble(realizedGft(out, tr.vs, tr.v1, tr.v2));
  };
  return detail::runDistinguisher(draw, mechGft, fresh, c, "overfit-full-set");
}

// Random generic set of T triples with coordinates on the dyadic unit grid;
// redraws (deterministically) in the vanishingly unlikely event of a repeat.
inline TripleSet randomGenericTripleSet(long T, std::uint64_t seed) {
  if (T < 1) throw PreconditionError("triple set size must be positive");
  for (std::uint64_t nonce = 0;; ++nonce) {
    Rng rng(deriveSeed(seed, nonce));
    std::vector<Triple> triples;
    triples.reserve(T);
    for (long k = 0; k < T; ++k)
      triples.push_back(Triple{rng.unitRat(), rng.unitRat(), rng.unitRat()});
    TripleSet set = TripleSet::uniform(std::move(triples));
    if (isGeneric(set).generic) return set;
  }
}

}  // namespace smallmarket
