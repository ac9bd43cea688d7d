#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace smtest;

namespace {

Triple T3(const char* vs, const char* v1, const char* v2) {
  return Triple{R(vs), R(v1), R(v2)};
}

// deterministic generic set with values k/(3n+1) shuffled across coordinates
TripleSet genericSet(int n, std::mt19937_64& rng) {
  std::vector<Value> values;
  for (int k = 1; k <= 3 * n; ++k) values.push_back(Rat(k, 3 * n + 1));
  std::shuffle(values.begin(), values.end(), rng);
  std::vector<Triple> triples;
  for (int k = 0; k < n; ++k)
    triples.push_back(Triple{values[3 * k], values[3 * k + 1], values[3 * k + 2]});
  return TripleSet::uniform(std::move(triples));
}

}  // namespace

TEST_CASE("isGeneric strong and weak forms", "[oracle]") {
  TripleSet good = TripleSet::uniform({T3("0.1", "0.9", "0.5"), T3("0.6", "0.2", "0.8")});
  CHECK(isGeneric(good).generic);

  TripleSet bad = TripleSet::uniform({T3("0.1", "0.9", "0.5"), T3("0.5", "0.2", "0.8")});
  GenericityReport rep = isGeneric(bad);
  CHECK_FALSE(rep.generic);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == R("0.5"));

  CHECK(isGeneric(TripleSet::uniform({T3("0.1", "0.9", "0.5")})).generic);

  // repeated across coordinates but unique within each one: weak form passes
  CHECK_FALSE(isGeneric(bad).generic);
  CHECK(isGeneric(bad, true).generic);
  TripleSet badWeak = TripleSet::uniform({T3("0.1", "0.9", "0.5"), T3("0.1", "0.2", "0.8")});
  CHECK_FALSE(isGeneric(badWeak, true).generic);
}

TEST_CASE("overfitMechanism on the worked two-triple set", "[oracle]") {
  TripleSet set = TripleSet::uniform({T3("0.1", "0.9", "0.5"), T3("0.6", "0.2", "0.8")});
  CompatPair pair = overfitMechanism(set);
  CHECK(pair.price1(R("0.5")) == P("0.9"));
  CHECK(pair.price2(R("0.2")) == P("0.8"));
  CHECK(pair.price1(R("0.2")) == NT());
  CHECK(pair.price2(R("0.9")) == NT());
  CHECK(validatePair(pair).compatible);

  Outcome first = execute(pair, R("0.1"), R("0.9"), R("0.5"));
  CHECK(realizedGft(first, R("0.1"), R("0.9"), R("0.5")) == R("0.8"));
  Outcome second = execute(pair, R("0.6"), R("0.2"), R("0.8"));
  CHECK(realizedGft(second, R("0.6"), R("0.2"), R("0.8")) == R("0.2"));

  CHECK(expectedGftOnTriples(pair, set) == R("1/2"));
  CHECK(firstBestOnTriples(set) == R("1/2"));

  TripleSet bad = TripleSet::uniform({T3("0.1", "0.9", "0.5"), T3("0.5", "0.2", "0.8")});
  CHECK_THROWS_AS(overfitMechanism(bad), PreconditionError);
}

TEST_CASE("overfit leaves unprofitable triples untraded", "[oracle]") {
  TripleSet set = TripleSet::uniform({T3("0.9", "0.3", "0.2"), T3("0.1", "0.6", "0.4")});
  CompatPair pair = overfitMechanism(set);
  Outcome none = execute(pair, R("0.9"), R("0.3"), R("0.2"));
  CHECK(none.alloc == Alloc::Seller);
  CHECK(expectedGftOnTriples(pair, set) == firstBestOnTriples(set));
}

TEST_CASE("overfit extracts first best on random generic sets", "[oracle]") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 10; ++t) {
    TripleSet set = genericSet(20, rng);
    CompatPair pair = overfitMechanism(set);
    REQUIRE(expectedGftOnTriples(pair, set) == firstBestOnTriples(set));
    REQUIRE(validatePair(pair).compatible);
  }
}

TEST_CASE("monotone map counts", "[oracle]") {
  // |S| = 1: maps {s1} -> {s1, NO_TRADE}; all 4 pairs compatible
  SupportPtr s1 = supportOf({"1/2"});
  std::vector<CompatPair> one = enumerateMonotonePairs(s1);
  CHECK(one.size() == 4);
  bool hasNeverTrade = false;
  for (const auto& p : one)
    if (p.f1.values[0].isNoTrade() && p.f2.values[0].isNoTrade()) hasNeverTrade = true;
  CHECK(hasNeverTrade);

  // |S| = 2: 6 monotone maps per axis, compatible subset of the 36
  SupportPtr s2 = supportOf({"1/4", "3/4"});
  std::vector<CompatPair> two = enumerateMonotonePairs(s2);
  CHECK(two.size() <= 36);
  // cross-check the count against a validatePair filter over all 36
  std::size_t expected = 0;
  std::vector<std::vector<Price>> maps;
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = a; b <= 2; ++b) {
      auto p = [&](std::size_t r) {
        return r < 2 ? Price::at((*s2)[r]) : Price::noTrade();
      };
      maps.push_back({p(a), p(b)});
    }
  REQUIRE(maps.size() == 6);
  for (const auto& f1 : maps)
    for (const auto& f2 : maps) {
      CompatPair pair{s2, PriceFn{f1}, PriceFn{f2}};
      if (validatePair(pair).compatible) ++expected;
    }
  CHECK(two.size() == expected);

  for (const auto& pair : two) {
    ValidationReport rep = validatePair(pair);
    REQUIRE(rep.compatible);
    REQUIRE(rep.monotone1);
    REQUIRE(rep.monotone2);
  }

  CHECK_THROWS_AS(enumerateMonotonePairs(supportOf({"0", "1/4", "1/2", "3/4", "0.9", "0.95",
                                                    "1"})),
                  PreconditionError);
}

TEST_CASE("bruteForceOpt agrees across modes and with solve", "[oracle]") {
  ProductPrior degen = makePrior(uniformDist({"0", "0.5"}), uniformDist({"0.4", "0.8"}),
                                 pointMass(R("0")));
  CHECK(bruteForceOpt(degen, BruteForceMode::AllCompatible).gft == R("3/10"));

  ProductPrior u3 = makePrior(uniformDist({"0", "0.5", "1"}), uniformDist({"0", "0.5", "1"}),
                              uniformDist({"0", "0.5", "1"}));
  CHECK(bruteForceOpt(u3, BruteForceMode::AllCompatible).gft == R("1/3"));

  std::mt19937_64 rng(113);
  for (int t = 0; t < 8; ++t) {
    ProductPrior prior = randomPrior({R("1/3"), R("2/3")}, rng);
    BruteForceResult mono = bruteForceOpt(prior, BruteForceMode::Monotone);
    BruteForceResult all = bruteForceOpt(prior, BruteForceMode::AllCompatible);
    REQUIRE(mono.gft == all.gft);
    REQUIRE(solve(prior).stats.total == all.gft);
    REQUIRE(naiveExpectedGft(all.pair, prior).total == all.gft);
  }

  ProductPrior big = makePrior(uniformDist({"0", "0.2", "0.4", "0.6", "1"}),
                               uniformDist({"0", "1"}), uniformDist({"0", "1"}));
  CHECK_THROWS_AS(bruteForceOpt(big, BruteForceMode::AllCompatible), PreconditionError);
}

TEST_CASE("dsicAudit passes every enumerated pair", "[oracle]") {
  SupportPtr s = supportOf({"0", "1/2", "1"});
  std::size_t audited = 0;
  forEachMonotonePair(s, [&](const CompatPair& pair) {
    auto executor = [&pair](const Value& vs, const Value& v1, const Value& v2) {
      return execute(pair, vs, v1, v2);
    };
    REQUIRE(dsicAudit(executor, *s).empty());
    ++audited;
  });
  CHECK(audited > 0);
}

TEST_CASE("dsicAudit flags corrupted executors", "[oracle]") {
  SupportPtr s = supportOf({"0", "1/2", "1"});
  CompatPair pair = pairFromArrays(*&s, {P("1/2"), P("1/2"), P("1")},
                                   {P("1/2"), P("1"), P("1")});

  // first-price corruption: the winner pays his own bid
  auto firstPrice = [&pair](const Value& vs, const Value& v1, const Value& v2) {
    Outcome out = execute(pair, vs, v1, v2);
    if (out.alloc == Alloc::Buyer1) {
      out.payBuyer1 = v1;
      out.paySeller = -v1;
    }
    return out;
  };
  std::vector<Violation> violations = dsicAudit(firstPrice, *s);
  bool dsicHit = false;
  for (const auto& v : violations) dsicHit = dsicHit || v.kind == ViolationKind::Dsic;
  CHECK(dsicHit);

  // the seller receives less than the buyer pays
  auto skim = [&pair](const Value& vs, const Value& v1, const Value& v2) {
    Outcome out = execute(pair, vs, v1, v2);
    if (out.alloc != Alloc::Seller) out.paySeller = out.paySeller / 2;
    return out;
  };
  violations = dsicAudit(skim, *s);
  bool sbbHit = false;
  for (const auto& v : violations) sbbHit = sbbHit || v.kind == ViolationKind::Sbb;
  CHECK(sbbHit);
}

TEST_CASE("two-sample bilateral set separates fixed prices from first best", "[oracle]") {
  // correlated pairs (0, 0.2) and (0.5, 0.7) with buyer 2 pinned at 0:
  // every fixed price attains 0.1 while the first best is 0.2
  TripleSet set = TripleSet::uniform({T3("0", "0.2", "0"), T3("0.5", "0.7", "0")});
  CHECK(firstBestOnTriples(set) == R("0.2"));
  std::vector<Value> sweep{R("0"),   R("0.1"), R("0.2"), R("0.35"), R("0.5"),
                           R("0.6"), R("0.7"), R("0.9"), R("1")};
  std::vector<Value> gridVals{R("0"), R("0.1"), R("0.2"), R("0.35"), R("0.5"),
                              R("0.6"), R("0.7"), R("0.9"), R("1")};
  auto support = std::make_shared<const Support>(gridVals);
  Rat best(0);
  for (const Value& p : sweep) {
    std::vector<Price> f1(support->size(), Price::at(p));
    std::vector<Price> f2(support->size(), NT());
    CompatPair fixed = pairFromArrays(support, std::move(f1), std::move(f2));
    best = std::max(best, expectedGftOnTriples(fixed, set));
  }
  CHECK(best == R("0.1"));
}
