#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcinv/error.hpp"
#include "bcinv/ring/value.hpp"

namespace bcinv::cli {

inline constexpr const char* kReportSchema = "bcinv.report/1";
inline constexpr const char* kToleranceEnv = "BCINV_TOL";

/// One invocation: which command, on which ring, with which inputs.
struct JobSpec {
  std::string command;  ///< compute | verify | lab | banach | rol | continuity
  std::string ring;
  std::optional<double> tol;
  Json elements = Json::object();  ///< name -> element literal
  Json frame = Json::object();     ///< role (b, c, g, h, b2, ...) -> element name
  std::string method = "auto";
  std::optional<double> beta;
  std::optional<double> lambda0;
  std::vector<double> lambdas;
  std::string suite = "all";
  std::string family = "bounded";
  long n = 1000;
  std::size_t cap = 16;
  unsigned threads = 0;
};

const std::vector<std::string>& commands();

/// Reads a job document; a full report is accepted too (its "job" field is used).
JobSpec parse_job(const Json& doc);
JobSpec load_job(const std::string& path);

/// Canonical form: stable field order, ring spelled canonically, tolerance
/// resolved. Feeding it back to parse_job reproduces the same run.
Json to_json(const JobSpec& job);

/// Tolerance in effect: the job's, else $BCINV_TOL, else the library default.
double effective_tolerance(const JobSpec& job);

/// 0 success, 1 inverse absent / property refuted, 2 invalid input.
int exit_status(ErrorKind kind) noexcept;

struct RunResult {
  int status = 0;
  Json report;
};

/// Never throws for module errors; they become a diagnostic in the report.
RunResult run(const JobSpec& job);

/// One "path,value" row per scalar leaf of outputs, residuals and verdicts.
std::string to_csv(const Json& report);

/// A few lines for humans.
std::string summary(const Json& report);

}  // namespace bcinv::cli
