#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rescert/checkers.hpp"
#include "rescert/constructions.hpp"
#include "rescert/elimination.hpp"
#include "rescert/program.hpp"

namespace rescert {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kSchemaName = "rescert-report";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::vector<std::uint64_t> primes;
  std::string mode = "auto";  // exact | modular | auto
  unsigned trials = 20;
  int prime_bits = 62;
  std::uint64_t seed = 1;
  std::size_t sample = 1000;
  bool exhaustive = false;  // Berge path counts over every pair
  std::string outdir = ".";
  unsigned jobs = 1;
  std::size_t term_budget = 5000000;
  bool timings = false;  // wall-clock fields make reports non-reproducible

  void validate() const;  // DomainError
};

nlohmann::json config_json(const RunConfig& c);
nlohmann::json to_json(const EliminationReport& r, bool timings);
nlohmann::json to_json(const StructureCertificate& c);

// One unit of work. `lines` is the human-readable transcript.
struct TaskResult {
  nlohmann::json json;
  bool pass = false;
  std::vector<std::string> lines;
};

RunOptions run_options(const RunConfig& c, const EliminationProgram& p);
TaskResult eliminate_task(const EliminationProgram& p, const RunConfig& c);

// Stats and formula values; writes files when outdir is nonempty.
TaskResult construct_task(const std::string& kind, std::uint64_t p, const std::string& outdir);

TaskResult verify_task(const std::string& kind, std::uint64_t p, const RunConfig& c);
std::vector<std::uint64_t> default_verify_primes(const std::string& kind);

// Smallest prime at which the hypergraph builds and every exhaustive
// structure check passes.
std::uint64_t smallest_accepted_berge_prime();

nlohmann::json make_report(const RunConfig& c, const std::vector<TaskResult>& tasks);

// SchemaMismatch on differing schema names or versions; DomainError on an
// empty list.
nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports);
std::vector<std::string> summary_table(const nlohmann::json& report);

// Runs fn(0..n-1) on up to `jobs` threads.
void run_pool(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rescert
