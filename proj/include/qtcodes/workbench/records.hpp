// JSON-lines persistence for candidate records and JSON views of reports.

#ifndef QTCODES_WORKBENCH_RECORDS_HPP
#define QTCODES_WORKBENCH_RECORDS_HPP

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../search.hpp"
#include "fixtures.hpp"

namespace qtcodes {

using json = nlohmann::ordered_json;

inline json to_json(const CandidateRecord& r) {
  return json{{"key", r.key},
              {"q", r.q},
              {"a", r.a},
              {"N", r.N},
              {"m", r.m},
              {"p", r.p},
              {"t", r.t},
              {"rank_class", r.rank_class},
              {"generator_index", r.generator_index},
              {"blocks", r.blocks},
              {"polys", r.polys},
              {"n", r.n},
              {"k", r.k},
              {"d_low", r.d_low},
              {"d_high", r.d_high},
              {"engine", r.engine},
              {"witness_weight", r.witness_weight},
              {"probe_weight", r.probe_weight},
              {"bklc_d", r.bklc_d},
              {"greedy_score", r.greedy_score},
              {"seed", r.seed},
              {"verdict", r.verdict},
              {"rejected_at_probe", r.rejected_at_probe},
              {"timestamp", r.timestamp}};
}

inline CandidateRecord record_from_json(const json& j) {
  static const std::set<std::string> kFields = {"key", "q", "a", "N", "m", "p", "t", "rank_class", "generator_index", "blocks", "polys",
                                                "n", "k", "d_low", "d_high", "engine", "witness_weight", "probe_weight", "bklc_d",
                                                "greedy_score", "seed", "verdict", "rejected_at_probe", "timestamp"};
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  for (const auto& [k, v] : j.items())
    if (kFields.count(k) == 0) throw std::invalid_argument("unknown record field '" + k + "'");
  for (const auto& f : kFields)
    if (!j.contains(f)) throw std::invalid_argument("record lacks field '" + f + "'");
  CandidateRecord r;
  j.at("key").get_to(r.key);
  j.at("q").get_to(r.q);
  j.at("a").get_to(r.a);
  j.at("N").get_to(r.N);
  j.at("m").get_to(r.m);
  j.at("p").get_to(r.p);
  j.at("t").get_to(r.t);
  j.at("rank_class").get_to(r.rank_class);
  j.at("generator_index").get_to(r.generator_index);
  j.at("blocks").get_to(r.blocks);
  j.at("polys").get_to(r.polys);
  j.at("n").get_to(r.n);
  j.at("k").get_to(r.k);
  j.at("d_low").get_to(r.d_low);
  j.at("d_high").get_to(r.d_high);
  j.at("engine").get_to(r.engine);
  j.at("witness_weight").get_to(r.witness_weight);
  j.at("probe_weight").get_to(r.probe_weight);
  j.at("bklc_d").get_to(r.bklc_d);
  j.at("greedy_score").get_to(r.greedy_score);
  j.at("seed").get_to(r.seed);
  j.at("verdict").get_to(r.verdict);
  j.at("rejected_at_probe").get_to(r.rejected_at_probe);
  j.at("timestamp").get_to(r.timestamp);
  return r;
}

inline void write_record(std::ostream& out, const CandidateRecord& r) { out << to_json(r).dump() << '\n'; }

/// Appends records to `path` (created when missing).
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path) : path_(path), out_(path, std::ios::app) {
    if (!out_) throw std::runtime_error("cannot open record file '" + path + "' for appending");
  }
  void write(const CandidateRecord& r) {
    write_record(out_, r);
    out_.flush();
    if (!out_) throw std::runtime_error("write failed on record file '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

struct ReadOptions {
  bool continue_on_error = false;
  std::function<void(const FormatError&)> on_error;  ///< called for skipped lines
};

inline std::vector<CandidateRecord> read_records(std::istream& in, const std::string& source, const ReadOptions& opt = {}) {
  std::vector<CandidateRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      FormatError err(source, lineno, e.what());
      if (!opt.continue_on_error) throw err;
      if (opt.on_error) opt.on_error(err);
    }
  }
  return out;
}

/// Reads a record file; a missing file is an error, an empty one is not.
inline std::vector<CandidateRecord> read_records(const std::string& path, const ReadOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record file '" + path + "'");
  return read_records(in, path, opt);
}

inline json to_json(const ConventionOutcome& o) {
  json j{{"order", to_string(o.order)}, {"m", o.m}, {"n", o.n}, {"k", o.k}, {"nk_match", o.nk_match}};
  if (o.distance_computed) {
    j["d_low"] = o.d_low;
    j["d_high"] = o.d_high;
    j["witness_weight"] = o.witness_weight;
    j["engine"] = o.engine;
    j["codewords"] = o.codewords;
  }
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

inline json to_json(const VerifyReport& r) {
  json j{{"id", r.id}, {"q", r.q}, {"n", r.n}, {"k", r.k}, {"d", r.d}, {"a", r.a}, {"N", r.N}, {"m", r.m}, {"t", r.t},
         {"verdict", to_string(r.verdict)}};
  if (!r.matched_order.empty()) j["matched_order"] = r.matched_order;
  if (!r.issues.empty()) j["issues"] = r.issues;
  j["outcomes"] = json::array();
  for (const auto& o : r.outcomes) j["outcomes"].push_back(to_json(o));
  if (!r.diagnostic.empty()) {
    j["diagnostic"] = json::array();
    for (const auto& o : r.diagnostic) j["diagnostic"].push_back(to_json(o));
  }
  return j;
}

}  // namespace qtcodes

#endif  // QTCODES_WORKBENCH_RECORDS_HPP
