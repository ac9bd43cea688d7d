// Command-line front end: exact solving, evaluation, learning experiments,
// audits, and figure-data generation for 1-seller 2-buyer markets.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smallmarket/smallmarket.hpp"

namespace sm = smallmarket;
using sm::Json;
using sm::Rat;
using sm::Value;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitInternal = 5;

struct RunConfig {
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  double delta = 0.1;
  long grid = 21;
  long trials = 1;
  double sampleSizeFactor = 4.0;
  double distinguisherFreshFactor = 16.0;
  long distinguisherSetExtra = 1;

  sm::LearnConfig learnConfig() const {
    return sm::LearnConfig{sampleSizeFactor, distinguisherFreshFactor, distinguisherSetExtra};
  }

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw sm::ValidationError("epsilon must be in (0,1)");
    if (!(delta > 0.0 && delta < 0.5)) throw sm::ValidationError("delta must be in (0,1/2)");
    if (grid < 2) throw sm::ValidationError("grid size must be at least 2");
    if (trials < 1) throw sm::ValidationError("trials must be at least 1");
    if (sampleSizeFactor <= 0 || distinguisherFreshFactor <= 0)
      throw sm::ValidationError("constant overrides must be positive");
  }

  Json toJson() const {
    Json j;
    j["seed"] = seed;
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    j["grid"] = grid;
    j["trials"] = trials;
    j["sampleSizeFactor"] = sampleSizeFactor;
    j["distinguisherFreshFactor"] = distinguisherFreshFactor;
    j["distinguisherSetExtra"] = distinguisherSetExtra;
    return j;
  }

  void mergeFile(const Json& j) {
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    if (j.contains("epsilon")) epsilon = j["epsilon"].get<double>();
    if (j.contains("delta")) delta = j["delta"].get<double>();
    if (j.contains("grid")) grid = j["grid"].get<long>();
    if (j.contains("trials")) trials = j["trials"].get<long>();
    if (j.contains("sampleSizeFactor")) sampleSizeFactor = j["sampleSizeFactor"].get<double>();
    if (j.contains("distinguisherFreshFactor"))
      distinguisherFreshFactor = j["distinguisherFreshFactor"].get<double>();
    if (j.contains("distinguisherSetExtra"))
      distinguisherSetExtra = j["distinguisherSetExtra"].get<long>();
  }
};

Json artifactHeader(const RunConfig& cfg) {
  Json j;
  j["version"] = sm::kVersion;
  j["config"] = cfg.toJson();
  return j;
}

std::string csvHeader(const RunConfig& cfg) {
  Json meta = artifactHeader(cfg);
  return "# smallmarket " + std::string(sm::kVersion) + "\n# config " +
         meta["config"].dump() + "\n";
}

std::string priceCsv(const sm::Price& p) {
  return p.isNoTrade() ? "inf" : sm::rat::toString(p.value());
}

void printStatsTable(const sm::GftStats& stats) {
  std::cout << "total      " << sm::rat::toString(stats.total) << "  ("
            << sm::rat::toDecimal(stats.total) << ")\n"
            << "firstBest  " << sm::rat::toString(stats.firstBest) << "  ("
            << sm::rat::toDecimal(stats.firstBest) << ")\n"
            << "gap        " << sm::rat::toString(stats.gap) << "  ("
            << sm::rat::toDecimal(stats.gap) << ")\n";
}

int cmdSolve(const RunConfig& cfg, const std::string& priorPath, const std::string& outPath,
             const std::string& dumpGPath) {
  sm::ProductPrior prior = sm::io::priorFromJson(sm::io::readJsonFile(priorPath));
  sm::SolveResult result = sm::solve(prior);
  Json out = artifactHeader(cfg);
  out.update(sm::io::solveResultJson(result));
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  if (!dumpGPath.empty()) {
    std::ostringstream csv;
    csv << csvHeader(cfg);
    const auto& t = result.tables;
    csv << "i,j,G,pointer\n";
    for (std::size_t i = t.p1Index; i < t.support->size(); ++i)
      for (std::size_t j = t.p2Index; j < t.support->size(); ++j)
        csv << i << "," << j << "," << sm::rat::toString(t.g[i][j]) << ","
            << (t.gp[i][j] == sm::DpMove::Right ? "R" : "U") << "\n";
    sm::io::writeTextFile(dumpGPath, csv.str());
  }
  printStatsTable(result.stats);
  return kExitOk;
}

int cmdEval(const RunConfig& cfg, const std::string& priorPath, const std::string& pairPath,
            const std::string& outPath) {
  sm::ProductPrior prior = sm::io::priorFromJson(sm::io::readJsonFile(priorPath));
  sm::CompatPair pair = sm::io::pairFromJson(sm::io::readJsonFile(pairPath));
  sm::GftStats stats = sm::expectedGft(pair, prior);
  Json out = artifactHeader(cfg);
  out["stats"] = sm::io::gftStatsJson(stats);
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  printStatsTable(stats);
  return kExitOk;
}

int cmdLearn(const RunConfig& cfg, const std::string& samplerPath, const std::string& outPath,
             const std::string& csvPath, long mcSamples) {
  sm::ProductSampler sampler =
      sm::io::productSamplerFromJson(sm::io::readJsonFile(samplerPath));
  std::ostringstream csv;
  csv << csvHeader(cfg)
      << "trial,seed,samplesPerAgent,empiricalGft,trueGftEstimate,halfWidth\n";
  Json lastReport;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    std::uint64_t seed = cfg.trials == 1 ? cfg.seed : sm::deriveSeed(cfg.seed, trial);
    sm::LearnReport report =
        sm::learnMechanism(sampler, cfg.epsilon, cfg.delta, seed, cfg.learnConfig());
    auto [est, half] = sm::monteCarloGft(report.mech, sampler, mcSamples,
                                         sm::deriveSeed(seed, 0x5eed));
    report.trueGftEstimate = {est, half};
    csv << trial << "," << seed << "," << report.sampleCountPerAgent << ","
        << sm::rat::toString(report.empiricalGft.total) << "," << est << "," << half << "\n";
    Json j = artifactHeader(cfg);
    j["seed"] = seed;
    j["samplesPerAgent"] = report.sampleCountPerAgent;
    j["pair"] = sm::io::pairJson(report.mech.pair);
    j["empiricalGft"] = sm::io::gftStatsJson(report.empiricalGft);
    j["trueGftEstimate"] = est;
    j["trueGftHalfWidth"] = half;
    lastReport = std::move(j);
  }
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, lastReport);
  if (!csvPath.empty()) sm::io::writeTextFile(csvPath, csv.str());
  std::cout << "learned " << cfg.trials << " mechanism(s), samples/agent "
            << lastReport["samplesPerAgent"].get<long>() << "\n";
  return kExitOk;
}

int cmdStability(const RunConfig& cfg, const std::string& priorPath,
                 const std::string& pairPath, const std::string& outPath) {
  sm::ProductPrior prior = sm::io::priorFromJson(sm::io::readJsonFile(priorPath));
  sm::CompatPair pair = sm::io::pairFromJson(sm::io::readJsonFile(pairPath));
  sm::StabilityReport rep = sm::gftStabilityCheck(pair, prior, cfg.epsilon, cfg.seed,
                                                  static_cast<int>(cfg.trials), cfg.delta,
                                                  cfg.learnConfig());
  Json out = artifactHeader(cfg);
  out["trials"] = rep.trials;
  out["discarded"] = rep.discarded;
  out["maxTotalDiff"] = sm::rat::toString(rep.maxTotalDiff);
  out["maxBuyerDiff"] = sm::rat::toString(rep.maxBuyerDiff);
  out["totalWithin12Eps"] = rep.totalWithin12Eps;
  out["buyersWithin6Eps"] = rep.buyersWithin6Eps;
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  std::cout << "stability: maxTotalDiff " << sm::rat::toDecimal(rep.maxTotalDiff)
            << " (12eps bound " << (rep.totalWithin12Eps ? "ok" : "VIOLATED")
            << "), maxBuyerDiff " << sm::rat::toDecimal(rep.maxBuyerDiff) << " (6eps bound "
            << (rep.buyersWithin6Eps ? "ok" : "VIOLATED") << "), discarded " << rep.discarded
            << "/" << rep.trials << "\n";
  return kExitOk;
}

int cmdOracle(const RunConfig& cfg, const std::string& priorPath, const std::string& mode,
              const std::string& outPath) {
  sm::ProductPrior prior = sm::io::priorFromJson(sm::io::readJsonFile(priorPath));
  sm::BruteForceMode m;
  if (mode == "monotone")
    m = sm::BruteForceMode::Monotone;
  else if (mode == "all")
    m = sm::BruteForceMode::AllCompatible;
  else
    throw sm::ValidationError("mode must be 'monotone' or 'all'");
  sm::BruteForceResult result = sm::bruteForceOpt(prior, m);
  Json out = artifactHeader(cfg);
  out["mode"] = mode;
  out["gft"] = sm::rat::toString(result.gft);
  out["gftApprox"] = sm::rat::toDecimal(result.gft);
  out["pair"] = sm::io::pairJson(result.pair);
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  std::cout << "bruteForceOpt(" << mode << ") gft " << sm::rat::toString(result.gft) << " ("
            << sm::rat::toDecimal(result.gft) << ")\n";
  return kExitOk;
}

int cmdAudit(const RunConfig& cfg, const std::string& priorPath, const std::string& pairPath,
             const std::string& outPath) {
  sm::ProductPrior prior = sm::io::priorFromJson(sm::io::readJsonFile(priorPath));
  Json pairDoc = sm::io::readJsonFile(pairPath);
  if (pairDoc.contains("pair")) pairDoc = pairDoc["pair"];  // accept solve output files
  sm::CompatPair pair = sm::io::pairFromJson(pairDoc);
  auto executor = [&pair](const Value& vs, const Value& v1, const Value& v2) {
    return sm::execute(pair, vs, v1, v2);
  };
  std::vector<sm::Violation> violations = sm::dsicAudit(executor, *prior.support);
  Json out = artifactHeader(cfg);
  out["violations"] = Json::array();
  for (const auto& v : violations) {
    Json vj;
    vj["kind"] = v.kind == sm::ViolationKind::Dsic            ? "DSIC"
                 : v.kind == sm::ViolationKind::Ir            ? "IR"
                 : v.kind == sm::ViolationKind::Sbb           ? "SBB"
                                                              : "NORMALIZATION";
    vj["triple"] = Json::array({sm::rat::toString(v.triple.vs), sm::rat::toString(v.triple.v1),
                                sm::rat::toString(v.triple.v2)});
    vj["agent"] = v.agent;
    if (v.misreport) vj["misreport"] = sm::rat::toString(*v.misreport);
    vj["detail"] = v.detail;
    out["violations"].push_back(std::move(vj));
  }
  out["violationCount"] = violations.size();
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  std::cout << "audit: " << violations.size() << " violation(s)\n";
  return violations.empty() ? kExitOk : kExitValidation;
}

int cmdOverfit(const RunConfig& cfg, const std::string& triplesPath,
               const std::string& outPath) {
  sm::TripleSet set = sm::io::tripleSetFromJson(sm::io::readJsonFile(triplesPath));
  sm::GenericityReport generic = sm::isGeneric(set);
  if (!generic.generic) {
    std::cerr << "triple set is not generic, repeated value "
              << sm::rat::toString(*generic.witness) << "\n";
    return kExitPrecondition;
  }
  sm::CompatPair pair = sm::overfitMechanism(set);
  Rat gft = sm::expectedGftOnTriples(pair, set);
  Rat fb = sm::firstBestOnTriples(set);
  Json out = artifactHeader(cfg);
  out["gft"] = sm::rat::toString(gft);
  out["firstBest"] = sm::rat::toString(fb);
  out["extractsFirstBest"] = (gft == fb);
  out["pair"] = sm::io::pairJson(pair);
  if (!outPath.empty()) sm::io::writeJsonFile(outPath, out);
  std::cout << "overfit gft " << sm::rat::toString(gft) << ", first best "
            << sm::rat::toString(fb) << (gft == fb ? " (equal)" : " (NOT equal)") << "\n";
  return kExitOk;
}

int cmdImpossibility(const RunConfig& cfg, long t, double c, long seeds,
                     const std::string& outPath) {
  std::ostringstream csv;
  csv << csvHeader(cfg)
      << "regime,seed,gStarC,gC,statistic,threshold,verdict,mechanismSource\n";
  sm::LearnConfig lc = cfg.learnConfig();
  long T = 6 * t * t + lc.distinguisherSetExtra;
  for (long k = 0; k < seeds; ++k) {
    std::uint64_t seed = seeds == 1 ? cfg.seed : sm::deriveSeed(cfg.seed, k);
    sm::TripleSet set = sm::randomGenericTripleSet(T, seed);
    sm::DistinguisherVerdict generic = sm::distinguisherOnTripleSet(set, c, seed, lc);
    csv << "generic," << seed << "," << generic.gStarC << "," << generic.gC << ","
        << generic.statistic << "," << generic.threshold << ","
        << (generic.verdict == sm::DistinguisherVerdictKind::Gap ? "GAP"
                                                                 : "FIRST_BEST_ACHIEVABLE")
        << "," << generic.mechanismSource << "\n";
    sm::ProductSampler uniformCube{sm::SamplerSpec::uniform(Rat(0), Rat(1)),
                                   sm::SamplerSpec::uniform(Rat(0), Rat(1)),
                                   sm::SamplerSpec::uniform(Rat(0), Rat(1))};
    sm::DistinguisherVerdict uniform = sm::distinguisher(uniformCube, t, c, seed, lc);
    csv << "uniform," << seed << "," << uniform.gStarC << "," << uniform.gC << ","
        << uniform.statistic << "," << uniform.threshold << ","
        << (uniform.verdict == sm::DistinguisherVerdictKind::Gap ? "GAP"
                                                                 : "FIRST_BEST_ACHIEVABLE")
        << "," << uniform.mechanismSource << "\n";
  }
  if (!outPath.empty()) sm::io::writeTextFile(outPath, csv.str());
  std::cout << csv.str();
  return kExitOk;
}

int cmdFigures(const RunConfig& cfg, const std::string& figureCase, const std::string& outPath) {
  long n = cfg.grid;
  sm::FiniteDist unit = sm::discretizeUniform(Rat(0), Rat(1), n);
  sm::ProductPrior prior = [&]() {
    if (figureCase == "uniform") return sm::ProductPrior::make(unit, unit, unit);
    if (figureCase == "uhalf")
      return sm::ProductPrior::make(unit, unit, sm::discretizeUniform(Rat(0), Rat(1, 2), n));
    if (figureCase == "mixture") {
      sm::FiniteDist b1 = sm::discretizeMixture(
          {{Rat(1, 4), Rat(0), Rat(1, 2)}, {Rat(3, 4), Rat(1, 2), Rat(3, 4)}}, n);
      sm::FiniteDist b2 = sm::discretizeMixture(
          {{Rat(3, 4), Rat(0), Rat(1, 4)}, {Rat(1, 4), Rat(1, 2), Rat(1)}}, n);
      return sm::ProductPrior::make(unit, std::move(b1), std::move(b2));
    }
    throw sm::ValidationError("unknown figures case '" + figureCase + "'");
  }();
  sm::SolveResult result = sm::solve(prior);
  const sm::Support& s = *result.pair.support;
  std::ostringstream csv;
  csv << csvHeader(cfg) << "value,f1,f2\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    csv << sm::rat::toString(s[k]) << "," << priceCsv(result.pair.f1.values[k]) << ","
        << priceCsv(result.pair.f2.values[k]) << "\n";
  if (!outPath.empty()) sm::io::writeTextFile(outPath, csv.str());
  const Value& p1 = s[result.tables.p1Index];
  const Value& p2 = s[result.tables.p2Index];
  std::cout << "case " << figureCase << ": bestPrices (" << sm::rat::toString(p1) << ", "
            << sm::rat::toString(p2) << "), total " << sm::rat::toDecimal(result.stats.total)
            << ", firstBest " << sm::rat::toDecimal(result.stats.firstBest) << "\n";
  if (figureCase == "uhalf") {
    // allocation at the grid triple nearest to (0, 0.4, 0.3)
    auto nearest = [](const sm::FiniteDist& d, const Rat& target) {
      Value best = d.atoms().front().value;
      Rat bestDist = abs(best - target);
      for (const auto& a : d.atoms()) {
        Rat dist = abs(a.value - target);
        if (dist < bestDist) {
          bestDist = dist;
          best = a.value;
        }
      }
      return best;
    };
    Value vs = nearest(prior.seller, Rat(0));
    Value v1 = nearest(prior.buyer1, Rat(2, 5));
    Value v2 = nearest(prior.buyer2, Rat(3, 10));
    sm::Outcome out = sm::execute(result.pair, vs, v1, v2);
    std::cout << "allocation at (" << sm::rat::toString(vs) << ", " << sm::rat::toString(v1)
              << ", " << sm::rat::toString(v2) << "): " << sm::allocName(out.alloc)
              << " (case " << out.caseTag << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smallmarket: GFT-optimal simple mechanisms for 1-seller 2-buyer markets"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string configPath;
  app.add_option("--config", configPath, "JSON config file with defaults");

  std::string priorPath, pairPath, samplerPath, triplesPath, outPath, dumpGPath, csvPath;
  std::string mode = "all", figureCase = "uniform";
  long tSamples = 200, seeds = 1, mcSamples = 100000;
  double cGuess = 0.02;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--epsilon", cfg.epsilon, "accuracy parameter");
    cmd->add_option("--delta", cfg.delta, "failure probability");
    cmd->add_option("--trials", cfg.trials, "number of seeded trials");
    cmd->add_option("--out", outPath, "output file path");
    cmd->add_option("--sample-size-factor", cfg.sampleSizeFactor,
                    "override the sample-size constant");
    cmd->add_option("--fresh-factor", cfg.distinguisherFreshFactor,
                    "override the distinguisher fresh-sample constant");
  };

  CLI::App* solveCmd = app.add_subcommand("solve", "compute a GFT-optimal pair for a prior");
  solveCmd->add_option("--prior", priorPath, "prior JSON")->required();
  solveCmd->add_option("--dump-g", dumpGPath, "write the DP matrix as CSV");
  addCommon(solveCmd);

  CLI::App* evalCmd = app.add_subcommand("eval", "evaluate a pair on a prior");
  evalCmd->add_option("--prior", priorPath, "prior JSON")->required();
  evalCmd->add_option("--pair", pairPath, "pair JSON")->required();
  addCommon(evalCmd);

  CLI::App* learnCmd = app.add_subcommand("learn", "learn a mechanism from samples");
  learnCmd->add_option("--sampler", samplerPath, "per-agent sampler JSON")->required();
  learnCmd->add_option("--csv", csvPath, "batch results CSV (one row per trial)");
  learnCmd->add_option("--mc-samples", mcSamples, "Monte Carlo evaluation sample count");
  addCommon(learnCmd);

  CLI::App* stabilityCmd = app.add_subcommand("stability", "empirical 12-eps stability check");
  stabilityCmd->add_option("--prior", priorPath, "true prior JSON")->required();
  stabilityCmd->add_option("--pair", pairPath, "monotone pair JSON")->required();
  addCommon(stabilityCmd);

  CLI::App* oracleCmd = app.add_subcommand("oracle", "brute-force optimum (small supports)");
  oracleCmd->add_option("--prior", priorPath, "prior JSON")->required();
  oracleCmd->add_option("--mode", mode, "'monotone' or 'all'");
  addCommon(oracleCmd);

  CLI::App* auditCmd = app.add_subcommand("audit", "exhaustive incentive audit of a pair");
  auditCmd->add_option("--prior", priorPath, "prior JSON (defines the audit grid)")->required();
  auditCmd->add_option("--pair", pairPath, "pair JSON or solve output JSON")->required();
  addCommon(auditCmd);

  CLI::App* overfitCmd = app.add_subcommand("overfit", "first-best pair for a generic set");
  overfitCmd->add_option("--triples", triplesPath, "triple set JSON")->required();
  addCommon(overfitCmd);

  CLI::App* impossibilityCmd =
      app.add_subcommand("impossibility", "two-regime distinguisher experiment");
  impossibilityCmd->add_option("--t", tSamples, "training sample count");
  impossibilityCmd->add_option("--c", cGuess, "distinguisher accuracy c");
  impossibilityCmd->add_option("--seeds", seeds, "seeded repetitions per regime");
  addCommon(impossibilityCmd);

  CLI::App* figuresCmd = app.add_subcommand("figures", "solve discretized instances, emit CSV");
  figuresCmd->add_option("--case", figureCase, "'uniform', 'uhalf', or 'mixture'");
  figuresCmd->add_option("--grid", cfg.grid, "grid points per agent");
  addCommon(figuresCmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (configPath.empty()) {
      if (const char* env = std::getenv("SMALLMARKET_CONFIG")) configPath = env;
    }
    if (!configPath.empty()) {
      RunConfig fromFile;
      fromFile.mergeFile(sm::io::readJsonFile(configPath));
      // command-line flags win over the config file
      RunConfig merged = fromFile;
      for (CLI::App* cmd :
           {solveCmd, evalCmd, learnCmd, stabilityCmd, oracleCmd, auditCmd, overfitCmd,
            impossibilityCmd, figuresCmd}) {
        if (!cmd->parsed()) continue;
        if (cmd->count("--seed")) merged.seed = cfg.seed;
        if (cmd->count("--epsilon")) merged.epsilon = cfg.epsilon;
        if (cmd->count("--delta")) merged.delta = cfg.delta;
        if (cmd->count("--trials")) merged.trials = cfg.trials;
        if (cmd->count("--sample-size-factor")) merged.sampleSizeFactor = cfg.sampleSizeFactor;
        if (cmd->count("--fresh-factor"))
          merged.distinguisherFreshFactor = cfg.distinguisherFreshFactor;
        if (cmd->get_option_no_throw("--grid") && cmd->count("--grid"))
          merged.grid = cfg.grid;
      }
      cfg = merged;
    }
    cfg.validate();

    if (solveCmd->parsed()) return cmdSolve(cfg, priorPath, outPath, dumpGPath);
    if (evalCmd->parsed()) return cmdEval(cfg, priorPath, pairPath, outPath);
    if (learnCmd->parsed()) return cmdLearn(cfg, samplerPath, outPath, csvPath, mcSamples);
    if (stabilityCmd->parsed()) return cmdStability(cfg, priorPath, pairPath, outPath);
    if (oracleCmd->parsed()) return cmdOracle(cfg, priorPath, mode, outPath);
    if (auditCmd->parsed()) return cmdAudit(cfg, priorPath, pairPath, outPath);
    if (overfitCmd->parsed()) return cmdOverfit(cfg, triplesPath, outPath);
    if (impossibilityCmd->parsed())
      return cmdImpossibility(cfg, tSamples, cGuess, seeds, outPath);
    if (figuresCmd->parsed()) return cmdFigures(cfg, figureCase, outPath);
    std::cerr << "no subcommand\n";
    return kExitParse;
  } catch (const sm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sm::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sm::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
