#pragma once

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pstruct {

using Json = nlohmann::ordered_json;

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> suite;  // empty = everything
  int samples = 1000;
  double tol_identity = 1e-8;
  double tol_rank_rel = 1e-6;
  std::uint64_t seed = 42;
  std::string out_path;
  enum class Format { text, json } format = Format::text;
  int jobs = 0;  // 0 = hardware concurrency

  void validate() const {
    if (samples < 1) throw config_error("samples must be >= 1");
    if (tol_identity <= 0 || tol_rank_rel <= 0) throw config_error("tolerances must be > 0");
  }
};

struct CheckRecord {
  std::string check;
  std::string entry;
  std::string anchor;
  bool pass = false;
  double max_residual = -1.0;  // negative when not applicable
  int observed_rank = -1;
  int predicted_rank = -1;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::string detail;
  double wall_ms = 0.0;  // excluded from determinism comparisons
};

struct VerificationReport {
  std::string version = "phenostruct-report/1";
  std::uint64_t seed = 0;
  RunConfig config;
  std::vector<CheckRecord> checks;

  int n_pass() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
  }
  int n_fail() const { return static_cast<int>(checks.size()) - n_pass(); }
  bool all_pass() const { return n_fail() == 0; }
};

inline Json to_json(const VerificationReport& rep, bool include_timing = true) {
  Json j;
  j["version"] = rep.version;
  j["seed"] = rep.seed;
  j["config"] = Json{{"suite", rep.config.suite},
                     {"samples", rep.config.samples},
                     {"tol_identity", rep.config.tol_identity},
                     {"tol_rank_rel", rep.config.tol_rank_rel},
                     {"seed", rep.config.seed}};
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json jc;
    jc["check"] = c.check;
    jc["entry"] = c.entry;
    jc["anchor"] = c.anchor;
    jc["pass"] = c.pass;
    if (c.max_residual >= 0.0) jc["max_residual"] = c.max_residual;
    if (c.predicted_rank >= 0) {
      jc["observed_rank"] = c.observed_rank;
      jc["predicted_rank"] = c.predicted_rank;
    }
    jc["samples"] = c.samples;
    jc["seed"] = c.seed;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    if (include_timing) jc["wall_ms"] = c.wall_ms;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["summary"] = Json{{"pass", rep.n_pass()}, {"fail", rep.n_fail()},
                      {"total", rep.checks.size()}};
  return j;
}

inline void emit_text(const VerificationReport& rep, std::ostream& os) {
  os << rep.version << "  seed=" << rep.seed << "\n";
  os << std::left;
  for (const auto& c : rep.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << std::setw(16) << c.check << " " << std::setw(34)
       << c.entry << " ";
    if (c.max_residual >= 0.0) {
      std::ostringstream tmp;
      tmp << "max=" << std::scientific << std::setprecision(2) << c.max_residual;
      os << std::setw(14) << tmp.str();
    } else if (c.predicted_rank >= 0) {
      std::ostringstream tmp;
      tmp << "rank " << c.observed_rank << "/" << c.predicted_rank;
      os << std::setw(14) << tmp.str();
    } else {
      os << std::setw(14) << "";
    }
    os << " n=" << c.samples;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << "summary: pass=" << rep.n_pass() << " fail=" << rep.n_fail()
     << " total=" << rep.checks.size() << "\n";
}

inline void emit_report(const VerificationReport& rep, RunConfig::Format format,
                        std::ostream& os) {
  if (format == RunConfig::Format::json)
    os << to_json(rep).dump(2) << "\n";
  else
    emit_text(rep, os);
}

}  // namespace pstruct
