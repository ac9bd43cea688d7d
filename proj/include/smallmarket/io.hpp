#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smallmarket/dist.hpp"
#include "smallmarket/gft.hpp"
#include "smallmarket/learn.hpp"
#include "smallmarket/mech.hpp"
#include "smallmarket/optdp.hpp"
#include "smallmarket/oracle.hpp"
#include "smallmarket/version.hpp"

namespace smallmarket {

// Field order is fixed (ordered_json) so identical runs emit identical bytes.
using Json = nlohmann::ordered_json;

namespace io {

inline Json ratJson(const Rat& r) { return rat::toString(r); }

inline Rat ratFromJson(const Json& j) {
  if (j.is_string()) return rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw ParseError("expected a rational as string or integer, got " + j.dump());
}

inline Json priceJson(const Price& p) {
  return p.isNoTrade() ? Json("inf") : Json(rat::toString(p.value()));
}

inline Price priceFromJson(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Price::noTrade();
  return Price::at(ratFromJson(j));
}

// ---- distributions ---------------------------------------------------------

inline Json distJson(const FiniteDist& d) {
  Json out = Json::array();
  for (const auto& a : d.atoms()) out.push_back(Json::array({ratJson(a.value), ratJson(a.weight)}));
  return out;
}

inline FiniteDist distFromJson(const Json& j, const std::string& agent) {
  if (!j.is_array() || j.empty())
    throw ParseError("distribution for " + agent + " must be a nonempty array");
  std::vector<std::pair<Value, Rat>> pairs;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("distribution entries for " + agent + " must be [value, weight] pairs");
    pairs.emplace_back(ratFromJson(entry[0]), ratFromJson(entry[1]));
  }
  try {
    return makeFiniteDist(std::move(pairs));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(e.what()) + " (agent " + agent + ")");
  }
}

inline Json priorJson(const ProductPrior& prior) {
  Json out;
  out["seller"] = distJson(prior.seller);
  out["buyer1"] = distJson(prior.buyer1);
  out["buyer2"] = distJson(prior.buyer2);
  return out;
}

inline ProductPrior priorFromJson(const Json& j) {
  for (const char* key : {"seller", "buyer1", "buyer2"})
    if (!j.contains(key)) throw ParseError(std::string("prior is missing '") + key + "'");
  return ProductPrior::make(distFromJson(j["seller"], "seller"),
                            distFromJson(j["buyer1"], "buyer1"),
                            distFromJson(j["buyer2"], "buyer2"));
}

// ---- pairs -----------------------------------------------------------------

inline Json pairJson(const CompatPair& pair) {
  Json out;
  Json support = Json::array();
  for (const auto& v : *pair.support) support.push_back(ratJson(v));
  Json f1 = Json::array(), f2 = Json::array();
  for (const auto& p : pair.f1.values) f1.push_back(priceJson(p));
  for (const auto& p : pair.f2.values) f2.push_back(priceJson(p));
  out["support"] = std::move(support);
  out["f1"] = std::move(f1);
  out["f2"] = std::move(f2);
  return out;
}

inline CompatPair pairFromJson(const Json& j) {
  for (const char* key : {"support", "f1", "f2"})
    if (!j.contains(key)) throw ParseError(std::string("pair is missing '") + key + "'");
  std::vector<Value> support;
  for (const auto& v : j["support"]) support.push_back(ratFromJson(v));
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    if (!(support[i] < support[i + 1]))
      throw ValidationError("pair support must be strictly increasing");
  std::vector<Price> f1, f2;
  for (const auto& p : j["f1"]) f1.push_back(priceFromJson(p));
  for (const auto& p : j["f2"]) f2.push_back(priceFromJson(p));
  return pairFromArrays(std::make_shared<const Support>(std::move(support)), std::move(f1),
                        std::move(f2));
}

// ---- samplers --------------------------------------------------------------

inline Json samplerJson(const SamplerSpec& spec) {
  Json out;
  if (const auto* f = std::get_if<FiniteDist>(&spec.impl())) {
    out["kind"] = "finite";
    out["atoms"] = distJson(*f);
  } else if (const auto* u = std::get_if<UniformSpec>(&spec.impl())) {
    out["kind"] = "uniform";
    out["lo"] = ratJson(u->lo);
    out["hi"] = ratJson(u->hi);
  } else {
    const auto& mix = std::get<MixtureSpec>(spec.impl());
    out["kind"] = "mixture";
    Json parts = Json::array();
    for (const auto& p : mix.parts) {
      Json part;
      part["w"] = ratJson(p.weight);
      part["lo"] = ratJson(p.lo);
      part["hi"] = ratJson(p.hi);
      parts.push_back(std::move(part));
    }
    out["parts"] = std::move(parts);
  }
  return out;
}

inline SamplerSpec samplerFromJson(const Json& j) {
  if (!j.contains("kind")) throw ParseError("sampler spec is missing 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "finite") return SamplerSpec::finite(distFromJson(j.at("atoms"), "sampler"));
  if (kind == "uniform")
    return SamplerSpec::uniform(ratFromJson(j.at("lo")), ratFromJson(j.at("hi")));
  if (kind == "mixture") {
    std::vector<MixturePart> parts;
    for (const auto& p : j.at("parts"))
      parts.push_back(MixturePart{ratFromJson(p.at("w")), ratFromJson(p.at("lo")),
                                  ratFromJson(p.at("hi"))});
    return SamplerSpec::mixture(std::move(parts));
  }
  throw ParseError("unknown sampler kind '" + kind + "'");
}

inline ProductSampler productSamplerFromJson(const Json& j) {
  for (const char* key : {"seller", "buyer1", "buyer2"})
    if (!j.contains(key)) throw ParseError(std::string("sampler is missing '") + key + "'");
  return ProductSampler{samplerFromJson(j["seller"]), samplerFromJson(j["buyer1"]),
                        samplerFromJson(j["buyer2"])};
}

// ---- triple sets -----------------------------------------------------------

inline Json tripleSetJson(const TripleSet& set) {
  Json out;
  Json triples = Json::array();
  for (const auto& t : set.triples)
    triples.push_back(Json::array({ratJson(t.vs), ratJson(t.v1), ratJson(t.v2)}));
  out["triples"] = std::move(triples);
  Json weights = Json::array();
  for (const auto& w : set.weights) weights.push_back(ratJson(w));
  out["weights"] = std::move(weights);
  return out;
}

inline TripleSet tripleSetFromJson(const Json& j) {
  if (!j.contains("triples")) throw ParseError("triple set is missing 'triples'");
  std::vector<Triple> triples;
  for (const auto& t : j["triples"]) {
    if (!t.is_array() || t.size() != 3)
      throw ParseError("triples must be [vs, v1, v2] arrays");
    triples.push_back(Triple{ratFromJson(t[0]), ratFromJson(t[1]), ratFromJson(t[2])});
  }
  if (j.contains("weights") && !j["weights"].is_null()) {
    std::vector<Rat> weights;
    for (const auto& w : j["weights"]) weights.push_back(ratFromJson(w));
    return TripleSet::weighted(std::move(triples), std::move(weights));
  }
  return TripleSet::uniform(std::move(triples));
}

// ---- results ---------------------------------------------------------------

inline Json gftStatsJson(const GftStats& stats) {
  Json out;
  out["total"] = ratJson(stats.total);
  out["gft1"] = ratJson(stats.gft1);
  out["gft2"] = ratJson(stats.gft2);
  out["firstBest"] = ratJson(stats.firstBest);
  out["gap"] = ratJson(stats.gap);
  Json approx;
  approx["total"] = rat::toDecimal(stats.total);
  approx["gft1"] = rat::toDecimal(stats.gft1);
  approx["gft2"] = rat::toDecimal(stats.gft2);
  approx["firstBest"] = rat::toDecimal(stats.firstBest);
  approx["gap"] = rat::toDecimal(stats.gap);
  out["approx"] = std::move(approx);
  return out;
}

inline Json solveResultJson(const SolveResult& result) {
  Json out;
  out["pair"] = pairJson(result.pair);
  out["stats"] = gftStatsJson(result.stats);
  const Support& s = *result.tables.support;
  out["bestPrices"] = Json::array(
      {ratJson(s[result.tables.p1Index]), ratJson(s[result.tables.p2Index])});
  return out;
}

inline Json validationJson(const ValidationReport& rep) {
  Json out;
  out["compatible"] = rep.compatible;
  if (rep.compatWitness)
    out["compatWitness"] =
        Json::array({ratJson(rep.compatWitness->first), ratJson(rep.compatWitness->second)});
  out["monotone1"] = rep.monotone1;
  out["monotone2"] = rep.monotone2;
  if (rep.tightFrom) {
    out["tightFrom"] =
        Json::array({ratJson(rep.tightFrom->first), ratJson(rep.tightFrom->second)});
    out["tight"] = rep.tight;
    if (rep.tightWitness)
      out["tightWitness"] =
          Json::array({ratJson(rep.tightWitness->first), ratJson(rep.tightWitness->second)});
  }
  return out;
}

inline Json distinguisherJson(const DistinguisherVerdict& v) {
  Json out;
  out["gStarC"] = v.gStarC;
  out["gC"] = v.gC;
  out["statistic"] = v.statistic;
  out["threshold"] = v.threshold;
  out["verdict"] = v.verdict == DistinguisherVerdictKind::Gap ? "GAP" : "FIRST_BEST_ACHIEVABLE";
  out["mechanismSource"] = v.mechanismSource;
  return out;
}

// ---- files -----------------------------------------------------------------

inline Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
  if (!out) throw PreconditionError("write to '" + path + "' failed");
}

inline void writeJsonFile(const std::string& path, const Json& j) {
  writeTextFile(path, j.dump(2) + "\n");
}

}  // namespace io
}  // namespace smallmarket
