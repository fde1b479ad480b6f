#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "hodgejac/apprank.hpp"
#include "hodgejac/cayley.hpp"
#include "hodgejac/jacring.hpp"
#include "hodgejac/vanishing.hpp"

// Canonical machine-readable reports: JSON objects with sorted keys, integer
// and string leaves only.  A 64-bit FNV-1a digest of the canonical dump
// (with the timing subtree removed) is embedded so reruns can be compared
// byte-for-byte.

namespace hodgejac {

inline const char* version_string() { return "0.1.0"; }

inline std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

// Digest of the report without its volatile parts.
inline std::string report_digest(nlohmann::json j) {
  j.erase("timing");
  j.erase("digest");
  return fnv1a_hex(j.dump());
}

inline void finalize_report(nlohmann::json& j, double seconds) {
  j["digest"] = report_digest(j);
  j["timing"]["seconds"] = std::to_string(seconds);
}

inline void write_report(const nlohmann::json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open report path " + path);
  os << j.dump(2) << "\n";
}

inline nlohmann::json to_json(const GradedReport& rep) {
  nlohmann::json j;
  j["kind"] = "jacobian-graded-dims";
  j["version"] = version_string();
  j["model"] = rep.model;
  j["section"] = rep.section;
  j["total"] = rep.total;
  j["smoothness"] = to_string(rep.smoothness);
  j["smoothness_note"] = rep.smoothness_note;
  j["degenerate_detected"] = rep.degenerate_detected;
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& e : rep.per_degree) {
    nlohmann::json d;
    d["k"] = e.k;
    d["dim"] = e.dim;
    d["hodge_label"] = e.hodge_label;
    d["certification"] = to_string(e.cert);
    d["generic_dim"] = e.generic_dim;
    d["below_generic"] = e.below_generic;
    d["hypotheses_certified"] = e.hypotheses_certified;
    d["hypotheses"] = e.hypothesis_notes;
    degrees.push_back(d);
  }
  j["per_degree"] = degrees;
  return j;
}

inline nlohmann::json to_json(const VarHodgeReport& rep) {
  nlohmann::json j;
  j["kind"] = "cayley-variable-hodge";
  j["version"] = version_string();
  j["model"] = rep.model;
  j["sections"] = rep.sections;
  j["smoothness_note"] = rep.smoothness_note;
  j["degenerate_detected"] = rep.degenerate_detected;
  j["hypotheses_all_vanish"] = rep.hypotheses_all_vanish;
  j["hypothesis_verdicts"] = rep.hypothesis_verdicts;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& e : rep.per_k) {
    nlohmann::json d;
    d["k"] = e.k;
    d["dim"] = e.dim;
    d["certification"] = to_string(e.cert);
    d["generic_dim"] = e.generic_dim;
    d["below_generic"] = e.below_generic;
    per.push_back(d);
  }
  j["per_k"] = per;
  return j;
}

inline nlohmann::json to_json(const CohomologyResult& c) {
  nlohmann::json j;
  j["kind"] = "bwb-cohomology";
  j["version"] = version_string();
  j["zero"] = c.zero();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : c.entries) {
    nlohmann::json d;
    d["degree"] = e.degree;
    d["highest_weight"] = e.highest_weight.str();
    d["dim"] = e.dim.get_str();
    entries.push_back(d);
  }
  j["entries"] = entries;
  return j;
}

inline nlohmann::json to_json(const VanishingVerdict& v) {
  nlohmann::json j;
  j["status"] = to_string(v.status);
  j["method"] = v.method;
  j["detail"] = v.detail;
  return j;
}

inline nlohmann::json to_json(const RankCheckResult& r) {
  nlohmann::json j;
  j["kind"] = "cy-rank-check";
  j["version"] = version_string();
  j["computed_total"] = r.computed_total.get_str();
  j["expected"] = r.expected.get_str();
  j["agree"] = r.agree;
  j["graded_report"] = to_json(r.report);
  return j;
}

inline nlohmann::json to_json(const MembershipCertificate& c,
                              const std::vector<MultiPoly>& gens) {
  nlohmann::json j;
  j["kind"] = "degree-bound-certificate";
  j["version"] = version_string();
  j["input"] = c.input.str();
  j["member"] = c.member;
  j["max_cofactor_fdegree"] = c.max_cofactor_fdegree;
  nlohmann::json rep = nlohmann::json::array();
  for (const auto& [idx, cof] : c.representation) {
    nlohmann::json d;
    d["generator_index"] = idx;
    d["generator"] = gens[idx].str();
    d["cofactor"] = cof.str();
    rep.push_back(d);
  }
  j["representation"] = rep;
  nlohmann::json res = nlohmann::json::array();
  for (const auto& [mono, coord] : c.residual_coordinates) {
    nlohmann::json d;
    d["monomial"] = MultiPoly::monomial(mono).str();
    d["coordinate"] = coord.get_str();
    res.push_back(d);
  }
  j["residual_coordinates"] = res;
  return j;
}

inline nlohmann::json to_json(const SurjectivityResult& r) {
  nlohmann::json j;
  j["kind"] = "multiplication-surjectivity";
  j["version"] = version_string();
  switch (r.kind) {
    case SurjectivityResult::Kind::Surjective: j["result"] = "Surjective"; break;
    case SurjectivityResult::Kind::NotSurjective: j["result"] = "NotSurjective"; break;
    default: j["result"] = "EmptySource";
  }
  j["rank"] = r.rank;
  j["corank"] = r.corank;
  j["odd_dimension_context"] = r.odd_dimension_context;
  return j;
}

}  // namespace hodgejac
