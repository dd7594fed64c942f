#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rescert {

enum class StepKind {
  Define,
  Resultant,
  DivExact,
  Coeff,
  Substitute,
  AssertFactorization,
  AssertNonzeroConstant,
  AssertEqual,
  AssertDegree,
};

const char* step_kind_name(StepKind k);
bool is_assertion(StepKind k);

struct FactorText {
  std::string text;
  unsigned multiplicity = 1;
};

struct EliminationStep {
  StepKind kind = StepKind::Define;
  std::string out;                  // empty for assertions
  std::vector<std::string> exprs;   // operand expressions
  std::vector<FactorText> factors;  // DivExact / AssertFactorization
  std::string var;                  // Resultant, Coeff, Substitute, AssertDegree
  int k = 0;                        // Coeff, AssertDegree
  std::string label;                // source line as written
  std::size_t line = 0;
};

struct EliminationProgram {
  std::string id;
  std::string title;  // first comment line
  std::vector<std::string> vars;
  std::vector<EliminationStep> steps;
  std::string source;
};

// ParseError, UndefinedName.
EliminationProgram parse_program(std::string_view text, std::string_view origin = "<text>");
EliminationProgram load_program(const std::string& path);

const std::vector<EliminationProgram>& builtin_catalogue();
// UnknownProgram.
const EliminationProgram& find_program(const std::string& id);

// Variables that some step eliminates or inspects (resultant / coeff / subst
// / assert_degree). The others are free parameters.
std::vector<std::string> eliminated_variables(const EliminationProgram& p);

bool operator==(const FactorText& a, const FactorText& b);
bool operator==(const EliminationStep& a, const EliminationStep& b);

}  // namespace rescert
