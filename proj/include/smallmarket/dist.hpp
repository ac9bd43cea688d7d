#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "smallmarket/common.hpp"
#include "smallmarket/rational.hpp"

namespace smallmarket {

// ---------------------------------------------------------------------------
// FiniteDist: a finite discrete distribution with exact rational weights.
// Atoms are sorted ascending, values distinct, weights sum to exactly 1.
// ---------------------------------------------------------------------------

struct Atom {
  Value value;
  Rat weight;
};

enum class WeightMode {
  Strict,  // weights must already sum to exactly 1
  Counts,  // raw counts/weights, renormalized after merging duplicates
};

class FiniteDist {
 public:
  static FiniteDist fromAtoms(std::vector<Atom> atoms, WeightMode mode = WeightMode::Strict) {
    if (atoms.empty()) throw ValidationError("distribution needs at least one atom");
    for (const auto& a : atoms) {
      if (a.weight <= 0) throw ValidationError("atom weight must be positive");
      if (a.value < 0) throw ValidationError("atom value must be nonnegative");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    for (auto& a : atoms) {
      if (!merged.empty() && merged.back().value == a.value)
        merged.back().weight += a.weight;
      else
        merged.push_back(std::move(a));
    }
    Rat total = 0;
    for (const auto& a : merged) total += a.weight;
    if (mode == WeightMode::Strict) {
      if (total != 1)
        throw ValidationError("weights sum to " + rat::toString(total) + ", expected 1");
    } else {
      for (auto& a : merged) a.weight /= total;
    }
    return FiniteDist(std::move(merged));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Value& minValue() const { return atoms_.front().value; }
  const Value& maxValue() const { return atoms_.back().value; }

  bool operator==(const FiniteDist& o) const {
    if (atoms_.size() != o.atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].value != o.atoms_[i].value || atoms_[i].weight != o.atoms_[i].weight)
        return false;
    return true;
  }

  Rat prEq(const Value& v) const {
    std::size_t i = lowerBound(v);
    if (i < atoms_.size() && atoms_[i].value == v) return atoms_[i].weight;
    return Rat(0);
  }

  // Pr[X >= v]
  Rat prGe(const Value& v) const { return Rat(1) - wBelow(lowerBound(v)); }
  // Pr[X > v]
  Rat prGt(const Value& v) const { return Rat(1) - wBelow(upperBound(v)); }
  // Pr[X <= v]
  Rat prLe(const Value& v) const { return wBelow(upperBound(v)); }
  // Pr[X < v]
  Rat prLt(const Value& v) const { return wBelow(lowerBound(v)); }

  // E[X | X >= v] as a (value, probability-weight) pair folded to 0 when
  // the conditioning event has probability 0 (the caller multiplies by it).
  Rat expGe(const Value& v) const {
    std::size_t i = lowerBound(v);
    Rat p = Rat(1) - wBelow(i);
    if (p == 0) return Rat(0);
    return (totalWv_ - wvBelow(i)) / p;
  }

  Rat expLe(const Value& v) const {
    std::size_t i = upperBound(v);
    Rat p = wBelow(i);
    if (p == 0) return Rat(0);
    return wvBelow(i) / p;
  }

  Rat mean() const { return totalWv_; }

  // Sum of w*v over atoms with v <= x (resp. >= x); exact building block for
  // the closed-form GFT sums.
  Rat wvLe(const Value& x) const { return wvBelow(upperBound(x)); }
  Rat wvGe(const Value& x) const { return totalWv_ - wvBelow(lowerBound(x)); }

  // Weight on the closed interval [a, b].
  Rat prInterval(const Value& a, const Value& b) const {
    if (b < a) return Rat(0);
    return wBelow(upperBound(b)) - wBelow(lowerBound(a));
  }

 private:
  explicit FiniteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    prefixW_.reserve(atoms_.size() + 1);
    prefixWv_.reserve(atoms_.size() + 1);
    prefixW_.push_back(Rat(0));
    prefixWv_.push_back(Rat(0));
    for (const auto& a : atoms_) {
      prefixW_.push_back(prefixW_.back() + a.weight);
      prefixWv_.push_back(prefixWv_.back() + a.weight * a.value);
    }
    totalWv_ = prefixWv_.back();
  }

  // index of first atom with value >= v
  std::size_t lowerBound(const Value& v) const {
    return std::lower_bound(atoms_.begin(), atoms_.end(), v,
                            [](const Atom& a, const Value& x) { return a.value < x; }) -
           atoms_.begin();
  }
  // index of first atom with value > v
  std::size_t upperBound(const Value& v) const {
    return std::upper_bound(atoms_.begin(), atoms_.end(), v,
                            [](const Value& x, const Atom& a) { return x < a.value; }) -
           atoms_.begin();
  }
  Rat wBelow(std::size_t i) const { return prefixW_[i]; }
  Rat wvBelow(std::size_t i) const { return prefixWv_[i]; }

  std::vector<Atom> atoms_;
  std::vector<Rat> prefixW_;   // prefixW_[i] = sum of weights of atoms_[0..i)
  std::vector<Rat> prefixWv_;  // weighted-value prefix sums
  Rat totalWv_;
};

inline FiniteDist makeFiniteDist(std::vector<std::pair<Value, Rat>> pairs,
                                 WeightMode mode = WeightMode::Strict) {
  std::vector<Atom> atoms;
  atoms.reserve(pairs.size());
  for (auto& [v, w] : pairs) atoms.push_back({std::move(v), std::move(w)});
  return FiniteDist::fromAtoms(std::move(atoms), mode);
}

inline FiniteDist pointMass(const Value& v) { return makeFiniteDist({{v, Rat(1)}}); }

inline FiniteDist uniformOver(const std::vector<Value>& values) {
  std::vector<Atom> atoms;
  for (const auto& v : values) atoms.push_back({v, Rat(1)});
  return FiniteDist::fromAtoms(std::move(atoms), WeightMode::Counts);
}

// ---------------------------------------------------------------------------
// Conditioning. Returns nullopt (EMPTY) when the event has probability 0;
// downstream sums multiply such terms by probability 0, so EMPTY is a value,
// not an error.
// ---------------------------------------------------------------------------

enum class CondMode { AtLeast, Below, AtMost };

inline std::optional<FiniteDist> condition(const FiniteDist& dist, const Value& threshold,
                                           CondMode mode) {
  std::vector<Atom> kept;
  for (const auto& a : dist.atoms()) {
    bool keep = mode == CondMode::AtLeast ? a.value >= threshold
                : mode == CondMode::Below ? a.value < threshold
                                          : a.value <= threshold;
    if (keep) kept.push_back(a);
  }
  if (kept.empty()) return std::nullopt;
  return FiniteDist::fromAtoms(std::move(kept), WeightMode::Counts);
}

// Uniform distribution over a multiset of samples.
inline FiniteDist empirical(const std::vector<Value>& samples) {
  if (samples.empty()) throw PreconditionError("empirical() needs a nonempty sample");
  return uniformOver(samples);
}

// ---------------------------------------------------------------------------
// ProductPrior: independent seller/buyer1/buyer2 distributions plus the
// merged ordered support S (always includes 0 and 1).
// ---------------------------------------------------------------------------

using Support = std::vector<Value>;
using SupportPtr = std::shared_ptr<const Support>;

inline SupportPtr mergedSupport(const std::vector<const FiniteDist*>& dists) {
  std::vector<Value> s{Rat(0), Rat(1)};
  for (const auto* d : dists)
    for (const auto& a : d->atoms()) s.push_back(a.value);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return std::make_shared<const Support>(std::move(s));
}

struct ProductPrior {
  FiniteDist seller;
  FiniteDist buyer1;
  FiniteDist buyer2;
  SupportPtr support;

  static ProductPrior make(FiniteDist seller, FiniteDist buyer1, FiniteDist buyer2) {
    SupportPtr s = mergedSupport({&seller, &buyer1, &buyer2});
    return ProductPrior{std::move(seller), std::move(buyer1), std::move(buyer2), std::move(s)};
  }

  const FiniteDist& buyer(int b) const { return b == 1 ? buyer1 : buyer2; }
};

// ---------------------------------------------------------------------------
// epsilon-sample machinery
// ---------------------------------------------------------------------------

// Sample count m(eps, delta) = ceil((F/eps^2) * ln(4/(eps*delta))) for interval
// range spaces; F defaults to 4 and is exposed as a config override.
inline long sampleSize(double epsilon, double delta, double factor = 4.0) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must be in (0,1)");
  if (!(delta > 0.0 && delta < 0.5)) throw PreconditionError("delta must be in (0,1/2)");
  long double m = (static_cast<long double>(factor) / (static_cast<long double>(epsilon) * epsilon)) *
                  std::log(4.0L / (static_cast<long double>(epsilon) * delta));
  return static_cast<long>(std::ceil(m));
}

// Max over all closed intervals [a,b] of |Pr_ref[a,b] - freq_sample[a,b]|,
// computed exactly by scanning endpoints from the union of supports.
inline Rat intervalDiscrepancy(const FiniteDist& reference, const std::vector<Value>& sample) {
  if (sample.empty()) throw PreconditionError("intervalDiscrepancy() needs a nonempty sample");
  FiniteDist emp = empirical(sample);
  std::vector<Value> endpoints;
  for (const auto& a : reference.atoms()) endpoints.push_back(a.value);
  for (const auto& a : emp.atoms()) endpoints.push_back(a.value);
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  Rat best(0);
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    for (std::size_t j = i; j < endpoints.size(); ++j) {
      Rat d = reference.prInterval(endpoints[i], endpoints[j]) -
              emp.prInterval(endpoints[i], endpoints[j]);
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Deterministic sampling. mt19937_64 has a standard-specified sequence, so
// results are reproducible across platforms for a given seed. Uniform draws
// land on the dyadic grid k/2^53, which keeps the exact-arithmetic core exact.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0,1) with 53 random bits
  Rat unitRat() {
    Rat r(mpz_class(static_cast<unsigned long>(engine_() >> 11)), mpz_class(1) << 53);
    r.canonicalize();
    return r;
  }

  double unitDouble() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  std::uint64_t bits() { return engine_(); }

  // index in [0, n)
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

// Continuous distributions are admitted only as sampler specs; the exact core
// sees only the dyadic rationals they emit.
struct UniformSpec {
  Rat lo, hi;
};

struct MixturePart {
  Rat weight;
  Rat lo, hi;
};

struct MixtureSpec {
  std::vector<MixturePart> parts;  // weights sum to 1
};

class SamplerSpec {
 public:
  using Impl = std::variant<FiniteDist, UniformSpec, MixtureSpec>;

  static SamplerSpec finite(FiniteDist d) { return SamplerSpec(Impl{std::move(d)}); }
  static SamplerSpec uniform(Rat lo, Rat hi) {
    if (hi < lo) throw ValidationError("uniform sampler needs lo <= hi");
    return SamplerSpec(Impl{UniformSpec{std::move(lo), std::move(hi)}});
  }
  static SamplerSpec mixture(std::vector<MixturePart> parts) {
    if (parts.empty()) throw ValidationError("mixture sampler needs at least one part");
    Rat total(0);
    for (const auto& p : parts) {
      if (p.weight <= 0) throw ValidationError("mixture part weight must be positive");
      if (p.hi < p.lo) throw ValidationError("mixture part needs lo <= hi");
      total += p.weight;
    }
    if (total != 1) throw ValidationError("mixture part weights must sum to 1");
    return SamplerSpec(Impl{MixtureSpec{std::move(parts)}});
  }

  Value draw(Rng& rng) const {
    if (const auto* f = std::get_if<FiniteDist>(&impl_)) {
      Rat u = rng.unitRat();
      Rat acc(0);
      for (const auto& a : f->atoms()) {
        acc += a.weight;
        if (u < acc) return a.value;
      }
      return f->atoms().back().value;
    }
    if (const auto* u = std::get_if<UniformSpec>(&impl_)) {
      return u->lo + (u->hi - u->lo) * rng.unitRat();
    }
    const auto& mix = std::get<MixtureSpec>(impl_);
    Rat u = rng.unitRat();
    Rat acc(0);
    for (const auto& p : mix.parts) {
      acc += p.weight;
      if (u < acc) return p.lo + (p.hi - p.lo) * rng.unitRat();
    }
    const auto& last = mix.parts.back();
    return last.lo + (last.hi - last.lo) * rng.unitRat();
  }

  const Impl& impl() const { return impl_; }

 private:
  explicit SamplerSpec(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

struct TripleSet;  // defined in oracle.hpp

// Per-agent independent sampler (the only kind the learner consumes).
struct ProductSampler {
  SamplerSpec seller;
  SamplerSpec buyer1;
  SamplerSpec buyer2;

  static ProductSampler fromPrior(const ProductPrior& prior) {
    return ProductSampler{SamplerSpec::finite(prior.seller), SamplerSpec::finite(prior.buyer1),
                          SamplerSpec::finite(prior.buyer2)};
  }
};

struct SampleSet {
  std::vector<Value> seller;
  std::vector<Value> buyer1;
  std::vector<Value> buyer2;
  long draws = 0;
  std::uint64_t seed = 0;
};

// Equal-weight n-point grid restriction of U[lo, hi]: atoms at
// lo + k*(hi-lo)/(n-1). Mixtures discretize per part and merge, keeping the
// part weights exact.
inline FiniteDist discretizeUniform(const Rat& lo, const Rat& hi, long n) {
  if (n < 2) throw PreconditionError("grid needs at least 2 points");
  std::vector<Atom> atoms;
  Rat w = Rat(1) / n;
  for (long k = 0; k < n; ++k) {
    Rat v = lo + (hi - lo) * Rat(k) / (n - 1);
    v.canonicalize();
    atoms.push_back({std::move(v), w});
  }
  return FiniteDist::fromAtoms(std::move(atoms), WeightMode::Counts);
}

inline FiniteDist discretizeMixture(const std::vector<MixturePart>& parts, long n) {
  if (n < 2) throw PreconditionError("grid needs at least 2 points");
  std::vector<Atom> atoms;
  for (const auto& p : parts) {
    Rat w = p.weight / n;
    for (long k = 0; k < n; ++k) {
      Rat v = p.lo + (p.hi - p.lo) * Rat(k) / (n - 1);
      v.canonicalize();
      atoms.push_back({std::move(v), w});
    }
  }
  return FiniteDist::fromAtoms(std::move(atoms), WeightMode::Counts);
}

// n independent draws per agent; deterministic given seed. Draw order is
// fixed (per triple: seller, buyer1, buyer2) so SampleSets are reproducible.
inline SampleSet drawTriples(const ProductSampler& sampler, long n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("drawTriples() needs n >= 1");
  Rng rng(seed);
  SampleSet out;
  out.draws = n;
  out.seed = seed;
  out.seller.reserve(n);
  out.buyer1.reserve(n);
  out.buyer2.reserve(n);
  for (long i = 0; i < n; ++i) {
    out.seller.push_back(sampler.seller.draw(rng));
    out.buyer1.push_back(sampler.buyer1.draw(rng));
    out.buyer2.push_back(sampler.buyer2.draw(rng));
  }
  return out;
}

}  // namespace smallmarket
