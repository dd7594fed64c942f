#include "rescert/program.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "rescert/error.hpp"
#include "rescert/parser.hpp"
#include "rescert/var_registry.hpp"

namespace rescert {

namespace detail {
struct EmbeddedProgram {
  const char* name;
  const char* text;
};
extern const EmbeddedProgram kEmbeddedPrograms[];
extern const std::size_t kEmbeddedProgramCount;
}  // namespace detail

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Define: return "define";
    case StepKind::Resultant: return "resultant";
    case StepKind::DivExact: return "divexact";
    case StepKind::Coeff: return "coeff";
    case StepKind::Substitute: return "subst";
    case StepKind::AssertFactorization: return "assert_factorization";
    case StepKind::AssertNonzeroConstant: return "assert_nonzero_const";
    case StepKind::AssertEqual: return "assert_equal";
    case StepKind::AssertDegree: return "assert_degree";
  }
  return "?";
}

bool is_assertion(StepKind k) {
  return k == StepKind::AssertFactorization || k == StepKind::AssertNonzeroConstant || k == StepKind::AssertEqual ||
         k == StepKind::AssertDegree;
}

bool operator==(const FactorText& a, const FactorText& b) {
  return a.text == b.text && a.multiplicity == b.multiplicity;
}

bool operator==(const EliminationStep& a, const EliminationStep& b) {
  return a.kind == b.kind && a.out == b.out && a.exprs == b.exprs && a.factors == b.factors && a.var == b.var &&
         a.k == b.k;
}

namespace {

class Loader {
 public:
  Loader(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  EliminationProgram run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    std::size_t lineno = 0;
    bool any = false;
    while (std::getline(in, raw)) {
      ++lineno;
      line_ = lineno;
      std::string line = raw;
      if (auto h = line.find('#'); h != std::string::npos) {
        if (prog_.title.empty() && prog_.id.empty() && trim(line.substr(0, h)).empty()) {
          prog_.title = trim(line.substr(h + 1));
        }
        line = line.substr(0, h);
      }
      line = trim(line);
      if (line.empty()) continue;
      any = true;
      handle(line);
    }
    if (!any) fail("empty program");
    if (prog_.id.empty()) fail("missing 'program <id>' line");
    if (!reg_) fail("missing 'ring' line");
    if (prog_.steps.empty()) fail("program has no steps");
    prog_.source = std::string(text_);
    return prog_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, std::string(origin_) + ":" + std::to_string(line_) + ": " + msg);
  }

  void handle(const std::string& line) {
    static const std::regex header(R"(^(program|ring)\s+(.*)$)");
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      if (m[1] == "program") {
        if (!prog_.id.empty()) fail("duplicate program line");
        static const std::regex id(R"(^[A-Za-z0-9][A-Za-z0-9_.-]*$)");
        const std::string v = trim(m[2].str());
        if (!std::regex_match(v, id)) fail("bad program id '" + v + "'");
        prog_.id = v;
      } else {
        if (reg_) fail("duplicate ring line");
        std::vector<std::string> vars;
        for (auto& v : split_top_level_commas(m[2].str())) vars.push_back(trim(v));
        try {
          reg_ = VarRegistry::make(vars);
        } catch (const Error& e) {
          fail(e.what());
        }
        prog_.vars = vars;
      }
      return;
    }
    if (!reg_) fail("step before 'ring' line");

    EliminationStep st;
    st.label = line;
    st.line = line_;
    std::string body = line;
    static const std::regex assign(R"(^([a-z][a-z0-9]*)\s*:=\s*(.*)$)");
    if (std::regex_match(line, m, assign)) {
      st.out = m[1];
      body = trim(m[2].str());
      if (body.empty()) fail("empty right-hand side");
      if (reg_->find(st.out)) fail("'" + st.out + "' is a ring variable");
    }
    static const std::regex call(R"(^([a-z_]+)\s*\((.*)\)$)");
    std::string fn;
    std::vector<std::string> args;
    if (std::regex_match(body, m, call)) {
      fn = m[1];
      static const std::set<std::string> known = {"resultant",      "divexact",          "coeff",
                                                  "subst",          "assert_factorization", "assert_nonzero_const",
                                                  "assert_equal",   "assert_degree"};
      if (!known.count(fn)) fn.clear();
      if (!fn.empty()) {
        // "f(a) * g(b)" also matches the pattern; require balanced outer parens.
        const std::string inner = m[2];
        int depth = 0;
        for (char c : inner) {
          depth += c == '(' ? 1 : c == ')' ? -1 : 0;
          if (depth < 0) fn.clear();
        }
        if (!fn.empty()) {
          for (auto& a : split_top_level_commas(inner)) args.push_back(trim(a));
        }
      }
    }
    const bool assertion = fn.rfind("assert_", 0) == 0;
    if (assertion && !st.out.empty()) fail("assertions do not produce a value");
    if (!assertion && st.out.empty()) fail("expected 'name := ...' or an assertion");

    auto want = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) fail(fn + " takes " + std::to_string(lo) + " arguments");
      for (auto& a : args) {
        if (a.empty()) fail("empty argument to " + fn);
      }
    };
    auto as_var = [&](const std::string& v) {
      if (!reg_->find(v)) fail("'" + v + "' is not a ring variable");
      return v;
    };
    auto as_int = [&](const std::string& v) {
      static const std::regex integer(R"(^[0-9]{1,6}$)");
      if (!std::regex_match(v, integer)) fail("expected a small non-negative integer, got '" + v + "'");
      return std::stoi(v);
    };
    auto factors_from = [&](std::size_t start) {
      std::vector<FactorText> out;
      for (std::size_t i = start; i < args.size(); ++i) {
        FactorText ft;
        if (auto pf = split_power_form(args[i])) {
          ft.text = pf->base;
          ft.multiplicity = pf->exponent;
          if (ft.multiplicity == 0) fail("factor multiplicity 0");
        } else {
          ft.text = args[i];
        }
        out.push_back(ft);
      }
      return out;
    };

    if (fn.empty()) {
      st.kind = StepKind::Define;
      st.exprs = {body};
    } else if (fn == "resultant") {
      want(3, 3);
      st.kind = StepKind::Resultant;
      st.exprs = {args[0], args[1]};
      st.var = as_var(args[2]);
    } else if (fn == "divexact") {
      want(2, 1000);
      st.kind = StepKind::DivExact;
      st.exprs = {args[0]};
      st.factors = factors_from(1);
    } else if (fn == "coeff") {
      want(3, 3);
      st.kind = StepKind::Coeff;
      st.exprs = {args[0]};
      st.var = as_var(args[1]);
      st.k = as_int(args[2]);
    } else if (fn == "subst") {
      want(3, 3);
      st.kind = StepKind::Substitute;
      st.exprs = {args[0], args[2]};
      st.var = as_var(args[1]);
    } else if (fn == "assert_factorization") {
      want(2, 1000);
      st.kind = StepKind::AssertFactorization;
      st.exprs = {args[0]};
      st.factors = factors_from(1);
    } else if (fn == "assert_nonzero_const") {
      want(1, 1);
      st.kind = StepKind::AssertNonzeroConstant;
      st.exprs = {args[0]};
    } else if (fn == "assert_equal") {
      want(2, 2);
      st.kind = StepKind::AssertEqual;
      st.exprs = {args[0], args[1]};
    } else if (fn == "assert_degree") {
      want(3, 3);
      st.kind = StepKind::AssertDegree;
      st.exprs = {args[0]};
      st.var = as_var(args[1]);
      st.k = as_int(args[2]);
    }

    // Syntax and name resolution check: every operand must parse against
    // the ring plus the names defined so far.
    for (const auto& e : st.exprs) check_expr(e);
    for (const auto& f : st.factors) check_expr(f.text);
    if (!st.out.empty()) {
      if (defined_.count(st.out)) fail("'" + st.out + "' redefined");
      defined_.insert(st.out);
    }
    prog_.steps.push_back(std::move(st));
  }

  void check_expr(const std::string& e) {
    // Names stand in as the constant 1; only syntax and resolution matter.
    const QPoly one = QPoly::constant(reg_, RationalRing{}, Rational(1));
    PolyParser<RationalRing> p(reg_, RationalRing{}, [&](const std::string& name) -> const QPoly* {
      return defined_.count(name) ? &one : nullptr;
    });
    try {
      (void)p.parse(e);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::UndefinedName) {
        throw Error(ErrorKind::UndefinedName,
                    std::string(origin_) + ":" + std::to_string(line_) + ": undefined name " + err.what());
      }
      if (err.kind() == ErrorKind::ParseError || err.kind() == ErrorKind::DivisionByZero) fail(err.what());
      // Exponent overflow and similar are not syntax problems.
    }
  }

  std::string_view text_;
  std::string_view origin_;
  std::size_t line_ = 0;
  EliminationProgram prog_;
  RegistryPtr reg_;
  std::set<std::string> defined_;
};

}  // namespace

EliminationProgram parse_program(std::string_view text, std::string_view origin) {
  return Loader(text, origin).run();
}

EliminationProgram load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str(), path);
}

const std::vector<EliminationProgram>& builtin_catalogue() {
  static const std::vector<EliminationProgram> cat = [] {
    std::vector<EliminationProgram> out;
    for (std::size_t i = 0; i < detail::kEmbeddedProgramCount; ++i) {
      out.push_back(parse_program(detail::kEmbeddedPrograms[i].text, detail::kEmbeddedPrograms[i].name));
    }
    return out;
  }();
  return cat;
}

const EliminationProgram& find_program(const std::string& id) {
  for (const auto& p : builtin_catalogue()) {
    if (p.id == id) return p;
  }
  throw Error(ErrorKind::UnknownProgram, "unknown program '" + id + "'");
}

std::vector<std::string> eliminated_variables(const EliminationProgram& p) {
  std::set<std::string> s;
  for (const auto& st : p.steps) {
    if (!st.var.empty()) s.insert(st.var);
  }
  std::vector<std::string> out;
  for (const auto& v : p.vars) {
    if (s.count(v)) out.push_back(v);
  }
  return out;
}

}  // namespace rescert
