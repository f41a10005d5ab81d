#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "splitter/contractibility.hpp"
#include "splitter/free_family.hpp"
#include "splitter/graph.hpp"
#include "splitter/matroid_ops.hpp"
#include "splitter/report.hpp"
#include "splitter/structures.hpp"

namespace splitter {

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitBudget = 3 };

struct RunConfig {
  std::string command;
  std::string corpus = "gen:7";
  int maxN = 7;
  std::string instance;
  std::string minor;
  bool bond = false;
  bool extendedMinors = false;
  int n = 4, m = 4;
  double budgetSeconds = 60;
  double totalSeconds = 3600;
  int workers = 1;
  std::string out;
  std::string counterexampleDir;
  std::string format = "json";
  bool timings = false;
  std::string xs;      ///< reconstruct: comma-separated X labels in H
  std::string via;     ///< analyze: intermediate matroid H for the chain check
  std::string seed;    ///< analyze: seed family "a,b,c;d"
};

struct RunResult {
  int exitCode = kExitPass;
  Json report;
  std::string message;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedMatroid {
  Matroid matroid;
  std::optional<SimpleGraph> graph;
  std::string label;
};

/// "empty", "U<r>,<n>", a named graph, a graph6 string, or a file holding a
/// graph6 line or an explicit matroid ("E n" / "R r" / bases).
inline LoadedMatroid loadSpec(const std::string& spec, bool bond) {
  LoadedMatroid out;
  out.label = spec;
  auto fromGraph = [&](const SimpleGraph& g) {
    out.graph = g;
    out.matroid = bond ? bondMatroid(g) : graphicMatroid(g);
    return out;
  };
  if (spec.empty()) throw UsageError("empty matroid specification");
  if (spec == "empty") {
    out.matroid = Matroid();
    return out;
  }
  if (spec[0] == 'U' && spec.find(',') != std::string::npos) {
    try {
      int r = std::stoi(spec.substr(1, spec.find(',') - 1));
      int n = std::stoi(spec.substr(spec.find(',') + 1));
      if (r < 0 || n < r || n > 24) throw UsageError("bad uniform matroid " + spec);
      out.matroid = uniformMatroid(r, n);
      return out;
    } catch (const std::logic_error&) {
      throw UsageError("bad uniform matroid " + spec);
    }
  }
  if (auto g = graphByName(spec)) return fromGraph(*g);
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::string first;
    while (std::getline(in, first) && (first.empty() || first[0] == '#')) {}
    if (first.rfind("E ", 0) == 0) {
      std::ifstream again(spec);
      try {
        out.matroid = readExplicit(again);
      } catch (const ParseError& e) {
        throw UsageError(spec + ": " + e.what());
      }
      return out;
    }
    try {
      return fromGraph(parseGraph6(first));
    } catch (const ParseError& e) {
      throw UsageError(spec + ": " + e.what());
    }
  }
  try {
    return fromGraph(parseGraph6(spec));
  } catch (const ParseError& e) {
    throw UsageError("cannot interpret '" + spec + "' as a name, file or graph6 string (" + e.what() + ")");
  }
}

inline std::vector<ElementId> parseLabels(const std::string& s) {
  std::vector<ElementId> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::logic_error&) {
      throw UsageError("bad element label '" + tok + "'");
    }
  }
  return out;
}

namespace detail {

inline int exitFromInstances(const Json& instances) {
  bool fail = false, budget = false;
  for (const auto& inst : instances)
    for (const auto& it : inst["items"]) {
      if (it.contains("informational")) continue;
      if (it["status"] == "fail") fail = true;
      if (it["status"] == "budget") budget = true;
    }
  return fail ? kExitFail : budget ? kExitBudget : kExitPass;
}

inline Json header(const RunConfig& cfg) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = cfg.command;
  j["timestamp"] = isoTimestamp();
  return j;
}

inline std::filesystem::path counterexampleRoot(const RunConfig& cfg) {
  if (!cfg.counterexampleDir.empty()) return cfg.counterexampleDir;
  if (!cfg.out.empty()) return cfg.out + ".counterexamples";
  return "counterexamples";
}

inline Json boundsInstance(const std::string& id, const LoadedMatroid& m, const LoadedMatroid& n,
                           const BoundsReport& rep, bool timings) {
  Json inst;
  inst["id"] = id;
  inst["instance"] = m.label;
  inst["minor"] = n.label;
  inst["elements"] = rep.size;
  inst["rankM"] = rep.rankM;
  inst["rankN"] = rep.rankN;
  inst["k"] = rep.k;
  Json items = Json::array();
  for (const LineItem& it : rep.items) items.push_back(lineItemJson(it, timings));
  inst["items"] = items;
  if (rep.build) {
    inst["family"] = familyJson(rep.build->family);
    inst["trace"] = traceJson(rep.build->trace);
  }
  if (rep.failureStage) inst["failureStage"] = *rep.failureStage;
  return inst;
}

/// Writes the counterexample directory for a failing instance and records it.
inline void recordCounterexample(const RunConfig& cfg, Json& inst, const LoadedMatroid& m, const LoadedMatroid& n,
                                 const BoundsReport& rep) {
  auto dir = counterexampleRoot(cfg) / safeName(inst["id"].get<std::string>());
  Json r = inst;
  r["schemaVersion"] = kSchemaVersion;
  std::string bondFlag = cfg.bond ? " --bond" : "";
  r["reproduce"] = "splitter analyze --instance '" + m.label + "' --minor '" + n.label + "'" + bondFlag;
  try {
    writeCounterexample(dir, m.graph, rep.failureMatroid ? *rep.failureMatroid : m.matroid, r);
    inst["counterexample"] = dir.string();
  } catch (const std::exception& e) {
    inst["counterexample"] = std::string("not written: ") + e.what();
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// analyze

inline RunResult runAnalyze(const RunConfig& cfg) {
  RunResult res;
  LoadedMatroid m = loadSpec(cfg.instance, cfg.bond);
  LoadedMatroid n = loadSpec(cfg.minor.empty() ? "empty" : cfg.minor, cfg.bond);
  int k = m.matroid.rank() - n.matroid.rank();
  if (k < 2) throw UsageError("r(M) - r(N) = " + std::to_string(k) + " < 2");
  if (!isTutte3Connected(m.matroid) || !isSimple(m.matroid)) throw UsageError("M is not 3-connected and simple");
  if (n.matroid.size() > 0 && (!isTutte3Connected(n.matroid) || !isSimple(n.matroid)))
    throw UsageError("N is not 3-connected and simple");
  if (n.matroid.size() > 0 && !hasMinor(m.matroid, n.matroid)) throw UsageError("M has no N-minor");
  BoundsOptions opt;
  opt.budgetSeconds = cfg.budgetSeconds;
  BoundsReport rep = verifyBounds(m.matroid, n.matroid, opt);
  if (!cfg.via.empty()) {
    LoadedMatroid h = loadSpec(cfg.via, cfg.bond);
    std::vector<ElementSet> seed;
    std::stringstream ss(cfg.seed);
    std::string part;
    while (std::getline(ss, part, ';')) seed.push_back(ElementSet::of(parseLabels(part)));
    rep.items.push_back(verifyChain(m.matroid, h.matroid, n.matroid, seed, cfg.budgetSeconds));
  }
  Json inst = detail::boundsInstance(cfg.instance + "/" + (cfg.minor.empty() ? "empty" : cfg.minor), m, n, rep, cfg.timings);
  if (rep.anyFail()) detail::recordCounterexample(cfg, inst, m, n, rep);
  res.report = detail::header(cfg);
  res.report["instances"] = Json::array({inst});
  res.report["summary"] = summarize(res.report["instances"]);
  res.exitCode = detail::exitFromInstances(res.report["instances"]);
  return res;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepPair {
  std::string id;
  LoadedMatroid m, n;
};

/// Corpus graphs G and minors H (3-connected, |V(H)| ≤ |V(G)| − 2), plus the
/// empty matroid and the triangle when extended; pairs are kept when k ≥ 2
/// and G has the minor (decided later, in parallel).
inline std::vector<SweepPair> sweepCandidates(const RunConfig& cfg, std::vector<SimpleGraph>& corpus) {
  if (cfg.corpus.rfind("gen:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(cfg.corpus.substr(4));
    } catch (const std::logic_error&) {
      throw UsageError("bad corpus spec " + cfg.corpus);
    }
    corpus = generatedCorpus(std::min(n, cfg.maxN));
  } else {
    try {
      corpus = fileCorpus(cfg.corpus, cfg.maxN);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<LoadedMatroid> minors;
  if (!cfg.minor.empty()) {
    minors.push_back(loadSpec(cfg.minor, cfg.bond));
  } else {
    for (const SimpleGraph& h : corpus) {
      LoadedMatroid l;
      l.graph = h;
      l.label = emitGraph6(h);
      l.matroid = cfg.bond ? bondMatroid(h) : graphicMatroid(h);
      minors.push_back(l);
    }
  }
  if (cfg.extendedMinors) {
    LoadedMatroid e;
    e.label = "empty";
    minors.push_back(e);
    LoadedMatroid t;
    t.label = "K3";
    t.matroid = cfg.bond ? uniformMatroid(2, 3) : graphicMatroid(completeGraph(3));
    if (!cfg.bond) t.graph = completeGraph(3);
    minors.push_back(t);
  }
  std::vector<SweepPair> out;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const SimpleGraph& g = corpus[gi];
    LoadedMatroid lm;
    lm.graph = g;
    lm.label = emitGraph6(g);
    lm.matroid = cfg.bond ? bondMatroid(g) : graphicMatroid(g);
    for (const LoadedMatroid& h : minors) {
      if (h.matroid.size() > lm.matroid.size()) continue;
      if (lm.matroid.rank() - h.matroid.rank() < 2) continue;
      if (h.graph && cfg.minor.empty() && h.label != "K3" && h.graph->vertexCount > g.vertexCount - 2) continue;
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04zu", gi);
      out.push_back({std::string(buf) + ":" + lm.label + "/" + h.label, lm, h});
    }
  }
  return out;
}

inline RunResult runSweep(const RunConfig& cfg) {
  RunResult res;
  std::vector<SimpleGraph> corpus;
  std::vector<SweepPair> cands = sweepCandidates(cfg, corpus);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(cfg.totalSeconds));
  std::vector<std::optional<Json>> rows(cands.size());
  std::atomic<std::size_t> next{0};
  std::mutex ioMutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cands.size()) return;
      const SweepPair& p = cands[i];
      if (std::chrono::steady_clock::now() > deadline) {
        Json inst;
        inst["id"] = p.id;
        inst["items"] = Json::array({lineItemJson({"not-started", LineStatus::Budget, "", "sweep budget exhausted"}, false)});
        rows[i] = inst;
        continue;
      }
      try {
        ScopedBudget guard(cfg.budgetSeconds);
        if (p.n.matroid.size() > 0 && !hasMinor(p.m.matroid, p.n.matroid)) continue;
      } catch (const ResourceError&) {
        Json inst;
        inst["id"] = p.id;
        inst["items"] = Json::array({lineItemJson({"minor-check", LineStatus::Budget, "", "minor check budget exhausted"}, false)});
        rows[i] = inst;
        continue;
      }
      BoundsOptions opt;
      opt.budgetSeconds = cfg.budgetSeconds;
      BoundsReport rep = verifyBounds(p.m.matroid, p.n.matroid, opt);
      Json inst = detail::boundsInstance(p.id, p.m, p.n, rep, cfg.timings);
      if (rep.anyFail()) {
        std::lock_guard<std::mutex> lock(ioMutex);
        detail::recordCounterexample(cfg, inst, p.m, p.n, rep);
      }
      rows[i] = std::move(inst);
    }
  };
  int workers = std::max(1, cfg.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json instances = Json::array();
  for (auto& r : rows)
    if (r) instances.push_back(std::move(*r));
  std::sort(instances.begin(), instances.end(),
            [](const Json& a, const Json& b) { return a["id"].get<std::string>() < b["id"].get<std::string>(); });
  res.report = detail::header(cfg);
  res.report["corpus"] = {{"source", cfg.corpus}, {"maxVertices", cfg.maxN}, {"graphs", corpus.size()},
                          {"bond", cfg.bond}, {"extendedMinors", cfg.extendedMinors}};
  res.report["instances"] = instances;
  res.report["summary"] = summarize(instances);
  res.exitCode = detail::exitFromInstances(instances);
  return res;
}

// ---------------------------------------------------------------------------
// sharpness

inline RunResult runSharpness(const RunConfig& cfg) {
  RunResult res;
  SharpInstance si;
  try {
    si = sharpnessInstance(cfg.n, cfg.m);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Matroid m = bondMatroid(si.G);
  Matroid n = bondMatroid(si.H);
  int k = m.rank() - n.rank();
  int target = familyTarget(k);
  std::vector<LineItem> items;
  auto add = [&](const std::string& name, auto&& fn) { items.push_back(detail::timedItem(name, cfg.budgetSeconds, fn)); };

  add("k-value", [&](LineItem& it) {
    it.status = (k == 2 * cfg.n + 3 && k == si.k) ? LineStatus::Pass : LineStatus::Fail;
    it.witness = "k = " + std::to_string(k);
    it.note = "expected " + std::to_string(2 * cfg.n + 3);
  });

  std::optional<BuildResult> built;
  add("free-family", [&](LineItem& it) {
    try {
      built = buildFreeFamily(m, n);
    } catch (const BuildFailure& f) {
      it.status = LineStatus::Fail;
      it.note = f.what();
      return;
    }
    FamilyValidation v = validateFamily(m, n, built->family.sets());
    bool exact = built->family.size() == target;
    it.status = v.ok && exact ? LineStatus::Pass : LineStatus::Fail;
    it.witness = built->family.toString();
    it.note = "size " + std::to_string(built->family.size()) + ", expected " + std::to_string(target) + (v.ok ? "" : "; " + v.message);
  });

  add("family-members", [&](LineItem& it) {
    if (!built) {
      it.status = LineStatus::Skipped;
      return;
    }
    std::vector<ElementSet> expected = si.Xi;
    for (ElementId e : si.triangleU) expected.push_back(ElementSet::single(e));
    std::vector<ElementSet> got = built->family.sets();
    auto key = [](ElementSet a, ElementSet b) { return lexLess(a, b); };
    std::sort(expected.begin(), expected.end(), key);
    std::sort(got.begin(), got.end(), key);
    it.status = got == expected ? LineStatus::Pass : LineStatus::Fail;
    it.note = "stars of the degree-3 vertices plus the edges of G[U]";
  });

  add("stars-are-triweb-triangles", [&](LineItem& it) {
    auto webs = findTriwebs(m, n);
    int hit = 0;
    for (ElementSet x : si.Xi)
      for (const Triweb& w : webs)
        if (w.filament() == x && isCarambole(m, n, w.xs, w.ys)) {
          ++hit;
          break;
        }
    it.status = hit == static_cast<int>(si.Xi.size()) ? LineStatus::Pass : LineStatus::Fail;
    it.witness = std::to_string(hit) + " of " + std::to_string(si.Xi.size());
  });

  add("family-maximum", [&](LineItem& it) {
    MaxFamilyResult best = exhaustiveMaxFreeFamily(m, n);
    it.status = best.size == target ? LineStatus::Pass : LineStatus::Fail;
    it.witness = "maximum " + std::to_string(best.size);
  });

  add("deletion-destroys-minor", [&](LineItem& it) {
    int bad = 0;
    std::string which;
    for (ElementId e : si.Hpart) {
      if (graphHasMinor(si.G.withoutEdge(e), si.H)) {
        ++bad;
        which += std::to_string(e) + " ";
      }
    }
    it.status = bad == 0 ? LineStatus::Pass : LineStatus::Fail;
    it.witness = std::to_string(si.Hpart.size()) + " edges checked" + (bad ? "; minor kept for " + which : "");
  });

  add("k-part-deletions", [&](LineItem& it) {
    it.counts = false;
    int keep = 0;
    for (ElementId e : si.K)
      if (graphHasMinor(si.G.withoutEdge(e), si.H)) ++keep;
    it.status = LineStatus::Pass;
    it.witness = std::to_string(keep) + " of " + std::to_string(si.K.size()) + " keep the minor";
  });

  Json inst;
  inst["id"] = "sharpness-" + std::to_string(cfg.n) + "-" + std::to_string(cfg.m);
  inst["vertices"] = si.G.vertexCount;
  inst["edges"] = si.G.edgeCount();
  inst["graph6"] = emitGraph6(si.G);
  inst["rankM"] = m.rank();
  inst["rankN"] = n.rank();
  inst["k"] = k;
  inst["target"] = target;
  Json jitems = Json::array();
  for (const auto& it : items) jitems.push_back(lineItemJson(it, cfg.timings));
  inst["items"] = jitems;
  if (built) {
    inst["family"] = familyJson(built->family);
    inst["trace"] = traceJson(built->trace);
  }
  res.report = detail::header(cfg);
  res.report["instances"] = Json::array({inst});
  res.report["summary"] = summarize(res.report["instances"]);
  res.exitCode = detail::exitFromInstances(res.report["instances"]);
  return res;
}

// ---------------------------------------------------------------------------
// reconstruct

/// Without --x: every carambole of the instance M is contracted and rebuilt.
/// With --x: the instance is H, rebuilt through the given corank-2 set X.
inline RunResult runReconstruct(const RunConfig& cfg) {
  RunResult res;
  LoadedMatroid lm = loadSpec(cfg.instance.empty() ? "prism" : cfg.instance, cfg.bond);
  const Matroid& base = lm.matroid;
  Json instances = Json::array();
  auto freshLabels = [](ElementSet used, int count) {
    std::vector<ElementId> out;
    for (ElementId e = 0; e < kMaxElements && static_cast<int>(out.size()) < count; ++e)
      if (!used.contains(e)) out.push_back(e);
    if (static_cast<int>(out.size()) < count) throw UsageError("not enough free labels");
    return out;
  };
  auto run = [&](const std::string& id, const Matroid& h, const std::vector<ElementId>& xs,
                 const std::optional<Matroid>& original) {
    std::vector<LineItem> items;
    std::vector<ElementId> ys = freshLabels(h.ground(), static_cast<int>(xs.size()));
    std::optional<Matroid> rebuilt;
    items.push_back(detail::timedItem("reconstruct", cfg.budgetSeconds, [&](LineItem& it) {
      try {
        rebuilt = reconstruct(h, xs, ys);
        it.status = LineStatus::Pass;
        it.witness = "filament " + ElementSet::of(ys).toString();
      } catch (const DomainError& e) {
        it.status = LineStatus::Fail;
        it.note = e.what();
      }
    }));
    ElementSet l = ElementSet::of(ys);
    items.push_back(detail::timedItem("contract-returns-h", cfg.budgetSeconds, [&](LineItem& it) {
      if (!rebuilt) return;
      it.status = sameRankFunction(rebuilt->contract(l), h.size() <= 24 ? h.toExplicit() : h) ? LineStatus::Pass : LineStatus::Fail;
    }));
    items.push_back(detail::timedItem("filament-detected", cfg.budgetSeconds, [&](LineItem& it) {
      if (!rebuilt) return;
      bool found = false;
      for (const Carambole& k : findCaramboles(*rebuilt, Matroid()))
        if (k.filament() == l) found = true;
      it.status = found ? LineStatus::Pass : LineStatus::Fail;
    }));
    if (original) {
      items.push_back(detail::timedItem("isomorphic-to-original", cfg.budgetSeconds, [&](LineItem& it) {
        if (!rebuilt) return;
        it.status = isIsomorphic(*rebuilt, *original).has_value() ? LineStatus::Pass : LineStatus::Fail;
      }));
    }
    Json inst;
    inst["id"] = id;
    inst["hull"] = xs;
    inst["filament"] = ys;
    Json ji = Json::array();
    for (const auto& it : items) ji.push_back(lineItemJson(it, cfg.timings));
    inst["items"] = ji;
    instances.push_back(inst);
  };

  if (!cfg.xs.empty()) {
    std::vector<ElementId> xs = parseLabels(cfg.xs);
    if (xs.size() < 3) throw UsageError("--x needs at least three labels");
    for (ElementId x : xs)
      if (!base.ground().contains(x)) throw UsageError("label " + std::to_string(x) + " is not in E(H)");
    run(lm.label + "/X=" + cfg.xs, base, xs, std::nullopt);
  } else {
    auto ks = findCaramboles(base, Matroid());
    if (ks.empty()) throw UsageError("instance has no carambole to contract");
    for (const Carambole& k : ks) {
      Matroid h = base.contract(k.filament());
      run(lm.label + "/L=" + k.filament().toString(), h, k.xs, base);
    }
  }
  res.report = detail::header(cfg);
  res.report["instances"] = instances;
  res.report["summary"] = summarize(instances);
  res.exitCode = detail::exitFromInstances(instances);
  return res;
}

// ---------------------------------------------------------------------------
// dispatch

inline RunResult runCommand(const RunConfig& cfg) {
  try {
    if (cfg.budgetSeconds <= 0 || cfg.totalSeconds <= 0) throw UsageError("budgets must be positive");
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
    if (cfg.command == "analyze") return runAnalyze(cfg);
    if (cfg.command == "sweep") return runSweep(cfg);
    if (cfg.command == "sharpness") return runSharpness(cfg);
    if (cfg.command == "reconstruct") return runReconstruct(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    RunResult r;
    r.exitCode = kExitUsage;
    r.message = e.what();
    return r;
  }
}

inline std::string renderReport(const RunConfig& cfg, const Json& report) {
  return cfg.format == "csv" ? reportCsv(report) : report.dump(2) + "\n";
}

/// Parses argv, runs the command, writes the report. Returns the exit status.
inline int runCli(int argc, char** argv) {
  CLI::App app{"Splitter-theorem verification for 3-connected graphs and matroids"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--budget-seconds", cfg.budgetSeconds, "Budget per line item / minor check")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
    sub->add_option("--out", cfg.out, "Report path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    sub->add_option("--counterexamples", cfg.counterexampleDir, "Directory for counterexample artifacts");
    sub->add_flag("--timings", cfg.timings, "Include elapsed times in the report");
    sub->add_flag("--bond", cfg.bond, "Use bond matroids of graph inputs");
  };
  auto* analyze = app.add_subcommand("analyze", "Check every bound on one (M, N) pair");
  analyze->add_option("--instance", cfg.instance, "M: name, graph6, or file")->required();
  analyze->add_option("--minor", cfg.minor, "N: name, graph6, file, or 'empty'");
  analyze->add_option("--via", cfg.via, "H for the chain extension check");
  analyze->add_option("--seed", cfg.seed, "Seed family in H, e.g. '0,1,2;5'");
  common(analyze);
  auto* sweep = app.add_subcommand("sweep", "Check every corpus pair");
  sweep->add_option("--corpus", cfg.corpus, "gen:N or a graph6 file")->capture_default_str();
  sweep->add_option("--max-n", cfg.maxN, "Largest vertex count")->capture_default_str();
  sweep->add_option("--minor", cfg.minor, "Fixed minor instead of corpus minors");
  sweep->add_option("--total-seconds", cfg.totalSeconds, "Budget for the whole sweep")->capture_default_str();
  sweep->add_flag("--extended-minors", cfg.extendedMinors, "Also use the empty matroid and the triangle as minors");
  common(sweep);
  auto* sharp = app.add_subcommand("sharpness", "Reproduce the sharpness construction");
  sharp->add_option("--n", cfg.n, "Degree-3 vertices")->capture_default_str();
  sharp->add_option("--m", cfg.m, "Side of the complete bipartite part")->capture_default_str();
  common(sharp);
  auto* recon = app.add_subcommand("reconstruct", "Carambole contraction and reconstruction round trip");
  recon->add_option("--instance", cfg.instance, "M (or H with --x)");
  recon->add_option("--x", cfg.xs, "Corank-2 set X of H, comma separated");
  common(recon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  RunResult r = runCommand(cfg);
  if (r.exitCode == kExitUsage) {
    std::cerr << "usage error: " << r.message << "\n";
    return kExitUsage;
  }
  std::string text = renderReport(cfg, r.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return kExitUsage;
    }
    out << text;
  }
  const Json& s = r.report["summary"];
  std::cerr << cfg.command << ": " << s["instances"] << " instances, " << s["pass"] << " pass, " << s["fail"]
            << " fail, " << s["budget"] << " budget\n";
  return r.exitCode;
}

}  // namespace splitter
