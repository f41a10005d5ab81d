#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitter/free_family.hpp"
#include "splitter/graph.hpp"
#include "splitter/matroid_ops.hpp"

namespace splitter {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string isoTimestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline Json setJson(ElementSet s) {
  Json a = Json::array();
  for (ElementId e : s) a.push_back(e);
  return a;
}

inline Json lineItemJson(const LineItem& item, bool timings) {
  Json j;
  j["name"] = item.name;
  j["status"] = lineStatusName(item.status);
  j["witness"] = item.witness;
  if (!item.note.empty()) j["note"] = item.note;
  if (!item.counts) j["informational"] = true;
  if (timings) j["elapsedSeconds"] = item.elapsedSeconds;
  return j;
}

inline Json traceJson(const BuildTrace& trace) {
  Json steps = Json::array();
  for (const BuildStep& s : trace.steps) {
    Json j;
    j["case"] = stepKindName(s.kind);
    j["k"] = s.k;
    j["elements"] = s.size;
    if (!s.used.empty()) j["used"] = setJson(s.used);
    if (s.kept >= 0) j["kept"] = s.kept;
    Json fam = Json::array();
    for (ElementSet f : s.family) fam.push_back(setJson(f));
    j["family"] = fam;
    if (!s.lifts.empty()) {
      Json lifts = Json::array();
      for (const LiftOutcome& l : s.lifts) lifts.push_back({{"from", setJson(l.from)}, {"to", setJson(l.to)}, {"how", l.how}});
      j["lifts"] = lifts;
    }
    steps.push_back(j);
  }
  return steps;
}

inline Json familyJson(const FreeFamily& f) {
  Json a = Json::array();
  for (const FamilyMember& m : f.members) {
    Json j;
    j["set"] = setJson(m.set);
    j["kind"] = memberKindName(m.kind);
    if (!m.hull.empty()) j["hull"] = m.hull;
    a.push_back(j);
  }
  return a;
}

/// Status tally over the counted items of every instance.
inline Json summarize(const Json& instances) {
  int pass = 0, fail = 0, budget = 0, skipped = 0;
  for (const auto& inst : instances) {
    for (const auto& it : inst["items"]) {
      if (it.contains("informational")) continue;
      std::string s = it["status"];
      if (s == "pass") ++pass;
      else if (s == "fail") ++fail;
      else if (s == "budget") ++budget;
      else ++skipped;
    }
  }
  return {{"instances", instances.size()}, {"pass", pass}, {"fail", fail}, {"budget", budget}, {"skipped", skipped}};
}

inline std::string csvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// Flat projection: one row per line item.
inline std::string reportCsv(const Json& report) {
  std::ostringstream os;
  os << "instance,item,status,informational,witness,note\n";
  for (const auto& inst : report["instances"]) {
    for (const auto& it : inst["items"]) {
      os << csvEscape(inst["id"].get<std::string>()) << "," << csvEscape(it["name"].get<std::string>()) << ","
         << it["status"].get<std::string>() << "," << (it.contains("informational") ? "1" : "0") << ","
         << csvEscape(it["witness"].get<std::string>()) << "," << csvEscape(it.value("note", std::string())) << "\n";
    }
  }
  return os.str();
}

inline std::string safeName(const std::string& id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

/// Writes instance.g6 (when graphic), matroid.txt (when small enough) and
/// report.json into `dir`.
inline void writeCounterexample(const std::filesystem::path& dir, const std::optional<SimpleGraph>& graph,
                                const Matroid& m, const Json& report) {
  std::filesystem::create_directories(dir);
  if (graph) std::ofstream(dir / "instance.g6") << emitGraph6(*graph) << "\n";
  if (m.size() <= 24) {
    std::ofstream out(dir / "matroid.txt");
    writeExplicit(out, m);
  }
  std::ofstream(dir / "report.json") << report.dump(2) << "\n";
}

}  // namespace splitter
