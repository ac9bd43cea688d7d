#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace smtest;

TEST_CASE("makeFiniteDist construction", "[dist]") {
  FiniteDist d = makeFiniteDist({{R("0"), R("1/2")}, {R("1/2"), R("1/2")}});
  CHECK(d.size() == 2);
  CHECK(d.atoms()[0].value == 0);
  CHECK(d.atoms()[1].weight == R("1/2"));

  // counts mode merges duplicates and renormalizes
  FiniteDist merged = makeFiniteDist({{R("0.5"), Rat(1)}, {R("0.5"), Rat(2)}},
                                     WeightMode::Counts);
  CHECK(merged.size() == 1);
  CHECK(merged.atoms()[0].value == R("1/2"));
  CHECK(merged.atoms()[0].weight == 1);

  CHECK_THROWS_AS(makeFiniteDist({}), ValidationError);
  CHECK_THROWS_AS(makeFiniteDist({{R("0.3"), R("1/2")}}), ValidationError);
  CHECK_THROWS_AS(makeFiniteDist({{R("0.3"), Rat(0)}}, WeightMode::Counts), ValidationError);
}

TEST_CASE("weights sum to exactly one", "[dist]") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    FiniteDist d = randomDist({R("0"), R("1/3"), R("2/3"), R("1")}, rng);
    Rat sum(0);
    for (const auto& a : d.atoms()) sum += a.weight;
    REQUIRE(sum == 1);
  }
}

TEST_CASE("condition filters and renormalizes", "[dist]") {
  FiniteDist u = uniformDist({"0", "0.5", "1"});
  auto atLeast = condition(u, R("0.5"), CondMode::AtLeast);
  REQUIRE(atLeast.has_value());
  CHECK(*atLeast == uniformDist({"0.5", "1"}));

  auto empty = condition(uniformDist({"0", "0.5"}), R("0.9"), CondMode::AtLeast);
  CHECK_FALSE(empty.has_value());

  auto atMost = condition(u, R("0.5"), CondMode::AtMost);
  REQUIRE(atMost.has_value());
  CHECK(*atMost == uniformDist({"0", "0.5"}));

  auto below = condition(u, R("0.5"), CondMode::Below);
  REQUIRE(below.has_value());
  CHECK(*below == pointMass(R("0")));

  // weight sum after conditioning is exactly 1
  Rat sum(0);
  for (const auto& a : atLeast->atoms()) sum += a.weight;
  CHECK(sum == 1);
}

TEST_CASE("empirical distribution counts", "[dist]") {
  FiniteDist d = empirical({R("0.2"), R("0.2"), R("0.8")});
  REQUIRE(d.size() == 2);
  CHECK(d.prEq(R("0.2")) == R("2/3"));
  CHECK(d.prEq(R("0.8")) == R("1/3"));

  CHECK(empirical({R("0.5")}) == pointMass(R("0.5")));
  CHECK(empirical({R("0"), R("1"), R("0"), R("1")}) == uniformDist({"0", "1"}));
  CHECK_THROWS_AS(empirical({}), PreconditionError);
}

TEST_CASE("tail and head queries", "[dist]") {
  FiniteDist u = uniformDist({"0", "0.5", "1"});
  CHECK(u.prGe(R("0.5")) == R("2/3"));
  CHECK(u.prLe(R("0.5")) == R("2/3"));
  CHECK(u.prLt(R("0.5")) == R("1/3"));
  CHECK(u.expGe(R("0.5")) == R("3/4"));
  CHECK(u.expLe(R("0.5")) == R("1/4"));
  CHECK(u.expGe(R("2")) == 0);  // empty conditioning event folds to 0
  CHECK(u.wvGe(R("0.5")) == R("1/2"));
  CHECK(u.wvLe(R("0.5")) == R("1/6"));
}

TEST_CASE("sampleSize formula", "[dist]") {
  CHECK(sampleSize(0.1, 0.1) == 2397);
  CHECK(sampleSize(0.5, 0.4) == 48);  // ceil(16 ln 20)
  CHECK(sampleSize(0.05, 0.1) > sampleSize(0.1, 0.1));
  CHECK(sampleSize(0.1, 0.05) >= sampleSize(0.1, 0.1));
  CHECK_THROWS_AS(sampleSize(0.0, 0.1), PreconditionError);
  CHECK_THROWS_AS(sampleSize(0.1, 0.5), PreconditionError);

  // monotone nonincreasing in both arguments over a grid
  double epsGrid[] = {0.05, 0.1, 0.2, 0.4};
  double deltaGrid[] = {0.05, 0.1, 0.2, 0.4};
  for (double e : epsGrid)
    for (double d : deltaGrid) {
      CHECK(sampleSize(e, d) >= sampleSize(e * 1.5, d));
      CHECK(sampleSize(e, d) >= sampleSize(e, d * 1.2));
    }
}

namespace {

// Independent oracle: evaluate the discrepancy over a dense candidate grid
// (all support points plus midpoints and outside points).
Rat denseScanDiscrepancy(const FiniteDist& ref, const std::vector<Value>& sample) {
  FiniteDist emp = empirical(sample);
  std::vector<Value> pts;
  for (const auto& a : ref.atoms()) pts.push_back(a.value);
  for (const auto& a : emp.atoms()) pts.push_back(a.value);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Value> cand;
  cand.push_back(pts.front() - 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cand.push_back(pts[i]);
    if (i + 1 < pts.size()) cand.push_back((pts[i] + pts[i + 1]) / 2);
  }
  cand.push_back(pts.back() + 1);
  Rat best(0);
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i; j < cand.size(); ++j) {
      Rat d = abs(ref.prInterval(cand[i], cand[j]) - emp.prInterval(cand[i], cand[j]));
      if (d > best) best = d;
    }
  return best;
}

}  // namespace

TEST_CASE("intervalDiscrepancy basics", "[dist]") {
  CHECK(intervalDiscrepancy(uniformDist({"0", "1"}), {R("0"), R("1")}) == 0);
  CHECK(intervalDiscrepancy(pointMass(R("0")), {R("0"), R("1")}) == R("1/2"));

  // dense-scan oracle pins the mixed-support case
  FiniteDist ref = uniformDist({"0", "0.5", "1"});
  std::vector<Value> sample{R("0"), R("0.5"), R("1"), R("1")};
  Rat oracle = denseScanDiscrepancy(ref, sample);
  CHECK(oracle == R("1/6"));
  CHECK(intervalDiscrepancy(ref, sample) == oracle);
}

TEST_CASE("intervalDiscrepancy matches dense scan on random cases", "[dist]") {
  std::mt19937_64 rng(7);
  std::vector<Value> grid{R("0"), R("1/4"), R("1/3"), R("1/2"), R("3/4"), R("1")};
  for (int t = 0; t < 30; ++t) {
    FiniteDist ref = randomDist(grid, rng);
    std::vector<Value> sample;
    int n = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < n; ++k) sample.push_back(grid[rng() % grid.size()]);
    CHECK(intervalDiscrepancy(ref, sample) == denseScanDiscrepancy(ref, sample));
  }
}

TEST_CASE("discrepancy zero iff empirical equals reference", "[dist]") {
  std::mt19937_64 rng(11);
  std::vector<Value> grid{R("0"), R("1/2"), R("1")};
  for (int t = 0; t < 30; ++t) {
    std::vector<Value> sample;
    int n = 1 + static_cast<int>(rng() % 9);
    for (int k = 0; k < n; ++k) sample.push_back(grid[rng() % grid.size()]);
    FiniteDist ref = randomDist(grid, rng);
    bool zero = intervalDiscrepancy(ref, sample) == 0;
    bool equal = empirical(sample) == ref;
    CHECK(zero == equal);
  }
}

TEST_CASE("drawTriples determinism and point mass", "[dist]") {
  ProductSampler point{SamplerSpec::finite(pointMass(R("1/4"))),
                       SamplerSpec::finite(pointMass(R("1/2"))),
                       SamplerSpec::finite(pointMass(R("3/4")))};
  SampleSet s = drawTriples(point, 5, 99);
  REQUIRE(s.seller.size() == 5);
  for (const auto& v : s.seller) CHECK(v == R("1/4"));
  for (const auto& v : s.buyer2) CHECK(v == R("3/4"));

  ProductSampler mixed{SamplerSpec::uniform(R("0"), R("1")),
                       SamplerSpec::finite(uniformDist({"0", "1/2", "1"})),
                       SamplerSpec::mixture({{R("1/4"), R("0"), R("1/2")},
                                             {R("3/4"), R("1/2"), R("3/4")}})};
  SampleSet a = drawTriples(mixed, 64, 123);
  SampleSet b = drawTriples(mixed, 64, 123);
  CHECK(a.seller == b.seller);
  CHECK(a.buyer1 == b.buyer1);
  CHECK(a.buyer2 == b.buyer2);
  SampleSet c = drawTriples(mixed, 64, 124);
  CHECK(a.seller != c.seller);

  CHECK_THROWS_AS(drawTriples(mixed, 0, 1), PreconditionError);
}

TEST_CASE("uniform sampler law of large numbers", "[dist]") {
  ProductSampler cube{SamplerSpec::uniform(R("0"), R("1")),
                      SamplerSpec::uniform(R("0"), R("1")),
                      SamplerSpec::uniform(R("0"), R("1"))};
  SampleSet s = drawTriples(cube, 10000, 2024);
  Rat mean(0);
  for (const auto& v : s.buyer1) mean += v;
  mean /= 10000;
  CHECK(abs(mean - R("1/2")) < R("1/50"));
  for (const auto& v : s.buyer1) {
    REQUIRE(v >= 0);
    REQUIRE(v <= 1);
  }
}

TEST_CASE("epsilon-sample failure rate respects delta", "[dist]") {
  // With n = sampleSize(eps, delta) draws, the fraction of trials whose
  // discrepancy exceeds eps must stay at or below delta + 0.05.
  const double eps = 0.15, delta = 0.2;
  long n = sampleSize(eps, delta);
  FiniteDist ref = makeFiniteDist({{R("0"), R("1/5")},
                                   {R("1/3"), R("3/10")},
                                   {R("2/3"), R("1/5")},
                                   {R("1"), R("3/10")}});
  SamplerSpec sampler = SamplerSpec::finite(ref);
  Rat epsRat = rat::parse("3/20");
  int bad = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Rng rng(deriveSeed(5150, t));
    std::vector<Value> sample;
    sample.reserve(n);
    for (long k = 0; k < n; ++k) sample.push_back(sampler.draw(rng));
    if (intervalDiscrepancy(ref, sample) > epsRat) ++bad;
  }
  CHECK(static_cast<double>(bad) / trials <= delta + 0.05);
}

TEST_CASE("prior support always includes the unit endpoints", "[dist]") {
  ProductPrior p = makePrior(uniformDist({"1/4", "1/2"}), uniformDist({"1/3"}),
                             uniformDist({"2/3"}));
  const Support& s = *p.support;
  CHECK(s.front() == 0);
  CHECK(s.back() == 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) REQUIRE(s[i] < s[i + 1]);
  CHECK(s.size() == 6);
}
