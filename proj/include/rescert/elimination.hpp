#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rescert/program.hpp"

namespace rescert {

enum class RunMode { Exact, Modular };
const char* run_mode_name(RunMode m);
RunMode parse_run_mode(const std::string& s);  // DomainError

struct RunOptions {
  RunMode mode = RunMode::Modular;
  unsigned trials = 20;
  int prime_bits = 62;
  std::uint64_t seed = 1;
  std::size_t term_budget = 5000000;
};

// Exact for programs with at most 8 ring variables, modular otherwise.
RunMode default_mode(const EliminationProgram& p);

struct StepReport {
  std::size_t index = 0;
  std::size_t line = 0;
  std::string kind;
  std::string name;
  std::string label;
  // ok (value step), pass / fail (assertions), error, skipped
  std::string status;
  std::optional<std::string> unit;
  std::string detail;
  double seconds = 0.0;
  std::size_t terms = 0;
};

struct EliminationReport {
  std::string program_id;
  RunMode mode = RunMode::Exact;
  bool pass = false;
  std::vector<StepReport> steps;
  std::size_t assertions = 0;
  std::size_t assertions_passed = 0;
  std::string failure;  // first failing step and reason
  std::size_t term_budget = 0;
  // modular only
  unsigned trials = 0;
  int prime_bits = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> parameters;  // specialised at random per trial
  double sz_bound_per_trial = 0.0;      // sum over checked events of degree / prime
  unsigned resamples = 0;
  double seconds = 0.0;
};

// Never throws for step failures; they are recorded in the report.
// BudgetExceeded in exact mode is recorded the same way (status "error").
EliminationReport run_program(const EliminationProgram& p, const RunOptions& opt);

// Throws StepFailed naming the first failing step when the report fails.
void require_pass(const EliminationReport& r);

}  // namespace rescert
