// Acceptance run: one pass/fail line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "property_suite.hpp"
#include "rescert/error.hpp"
#include "rescert/harness.hpp"
#include "rescert/parser.hpp"
#include "rescert/resultant.hpp"

using namespace rescert;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const char* title, const Outcome& o) {
  std::cout << "criterion " << n << " [" << (o.pass ? "PASS" : "FAIL") << "] " << title << ": " << o.detail << std::endl;
  if (!o.pass) ++failures;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

Outcome worked_example() {
  auto reg = VarRegistry::make({"x", "y"});
  const auto f = parse_qpoly("x*y - 1", reg), g = parse_qpoly("x^2 + y^2 - 4", reg);
  const auto expect = parse_qpoly("y^4 - 4*y^2 + 1", reg);
  // median of several runs; the first call also pays for allocator warm-up
  std::vector<double> times;
  bool equal = true;
  for (int i = 0; i < 9; ++i) {
    const auto t0 = Clock::now();
    const auto r = resultant(f, g, 0);
    times.push_back(since(t0));
    equal = equal && r == expect;
  }
  std::sort(times.begin(), times.end());
  const double med = times[times.size() / 2];
  return {equal && med < 1e-3, std::string(equal ? "Res = y^4 - 4*y^2 + 1 exactly" : "resultant differs") +
                                   ", median " + num(med * 1e6) + " us (first call " + num(times.back() * 1e6) + " us)"};
}

Outcome cascade_exact() {
  RunOptions o;
  o.mode = RunMode::Exact;
  const auto t0 = Clock::now();
  const auto r = run_program(find_program("vw19-octagon"), o);
  const double s = since(t0);
  std::string units;
  for (const auto& st : r.steps)
    if (st.unit) units += (units.empty() ? "" : ", ") + *st.unit;
  return {r.pass && s < 10, std::to_string(r.assertions_passed) + "/" + std::to_string(r.assertions) +
                                " assertions in exact mode, units {" + units + "}, " + num(s) + " s" +
                                (r.pass ? "" : "; " + r.failure)};
}

struct Anchor {
  const char* program;
  const char* label_prefix;
};

const Anchor kAnchors[] = {
    {"subdiv-A1", "assert_factorization(h8"},  {"subdiv-A2", "assert_factorization(k,"},
    {"subdiv-A4", "assert_factorization(r,"},  {"berge-B1", "assert_factorization(h,"},
    {"berge-B5", "assert_factorization(h0"}, {"berge-B4", "assert_nonzero_const(r)"},
};

Outcome catalogue_modular(std::vector<EliminationReport>& modular, std::vector<EliminationReport>& exact) {
  const double sz_limit = std::ldexp(1.0, -35);
  RunOptions o;
  o.mode = RunMode::Modular;
  o.trials = 20;
  o.prime_bits = 63;
  o.seed = 1;
  bool ok = true;
  double worst = 0;
  std::string worst_id, bad;
  const auto t0 = Clock::now();
  for (const auto& p : builtin_catalogue()) {
    const auto t1 = Clock::now();
    auto r = run_program(p, o);
    const double cum = r.sz_bound_per_trial * r.trials;
    std::cout << "  " << p.id << " modular " << (r.pass ? "pass" : "FAIL") << " " << r.assertions_passed << "/"
              << r.assertions << "  prime " << r.prime << "  sz/trial " << num(r.sz_bound_per_trial)
              << "  sz cumulative " << num(cum) << "  " << num(since(t1)) << " s" << std::endl;
    if (!r.pass) bad += " " + p.id + " (" + r.failure + ")";
    if (cum >= sz_limit) bad += " " + p.id + " (sz " + num(cum) + ")";
    ok = ok && r.pass && cum < sz_limit && r.prime_bits >= 61;
    if (cum > worst) worst = cum, worst_id = p.id;
    modular.push_back(std::move(r));
  }
  for (const char* id : {"subdiv-A6", "berge-B1"}) {
    RunOptions e;
    e.mode = RunMode::Exact;
    auto r = run_program(find_program(id), e);
    std::cout << "  " << id << " exact " << (r.pass ? "pass" : "FAIL") << " " << r.assertions_passed << "/"
              << r.assertions << std::endl;
    if (!r.pass) bad += std::string(" ") + id + " exact (" + r.failure + ")";
    ok = ok && r.pass;
    exact.push_back(std::move(r));
  }
  return {ok, std::to_string(modular.size()) + " programs, 20 trials, 63-bit primes; worst cumulative sz bound " +
                  num(worst) + " (" + worst_id + ") vs 2^-35 = " + num(sz_limit) + "; exact A6, B1; " +
                  num(since(t0)) + " s" + (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome spot_anchors(const std::vector<EliminationReport>& modular, const std::vector<EliminationReport>& exact) {
  bool ok = true;
  std::string detail;
  for (const auto& a : kAnchors) {
    bool found = false;
    for (const auto* set : {&exact, &modular}) {
      for (const auto& r : *set) {
        if (r.program_id != a.program || found) continue;
        for (const auto& s : r.steps) {
          if (s.label.rfind(a.label_prefix, 0) != 0) continue;
          found = s.status == "pass";
          detail += std::string(detail.empty() ? "" : "; ") + a.program + " line " + std::to_string(s.line) + " " +
                    s.status + " [" + run_mode_name(r.mode) + "] unit " + s.unit.value_or("-");
        }
      }
    }
    if (!found) detail += std::string("; ") + a.program + " anchor " + a.label_prefix + " not passing";
    ok = ok && found;
  }
  return {ok, detail};
}

Outcome construction_counts(std::vector<TaskResult>& built) {
  bool ok = true;
  std::string detail;
  const std::uint64_t bp = smallest_accepted_berge_prime();
  for (const auto& [kind, p] : std::vector<std::pair<std::string, std::uint64_t>>{{"subdiv", 29}, {"theta", 5}, {"berge", bp}}) {
    auto t = construct_task(kind, p, "");
    const auto& s = t.json["stats"];
    const auto n = s["n"].get<std::uint64_t>();
    bool here = n == s["formula_n"].get<std::uint64_t>();
    if (kind == "subdiv") here = here && n == 1682 && s["min_degree"].get<std::size_t>() >= 1;
    if (kind == "theta") here = here && n == 625;
    if (kind == "berge") here = here && s["linear"].get<bool>();
    detail += (detail.empty() ? "" : "; ") + kind + " " + std::to_string(p) + ": n=" + std::to_string(n) +
              " (formula " + std::to_string(s["formula_n"].get<std::uint64_t>()) + ")";
    if (kind == "subdiv") detail += " min degree " + std::to_string(s["min_degree"].get<std::size_t>());
    if (kind == "berge") detail += " |S1|=" + std::to_string(s["S1"].size()) + " linear";
    ok = ok && here;
    built.push_back(std::move(t));
  }
  return {ok, detail};
}

Outcome forbidden_structures() {
  RunConfig c;
  c.sample = 1000;
  c.seed = 1;
  bool ok = true;
  std::string detail;
  const auto t0 = Clock::now();
  for (const char* kind : {"subdiv", "theta", "berge"}) {
    for (auto p : default_verify_primes(kind)) {
      const auto t = verify_task(kind, p, c);
      for (const auto& l : t.lines) std::cout << "  " << l << "\n";
      std::size_t passed = 0;
      for (const auto& ch : t.json["checks"]) passed += ch.value("pass", false);
      detail += std::string(detail.empty() ? "" : ", ") + kind + " " + std::to_string(p) + " " +
                std::to_string(passed) + "/" + std::to_string(t.json["checks"].size());
      ok = ok && t.pass;
    }
  }
  return {ok, "checks passed: " + detail + "; " + num(since(t0)) + " s"};
}

Outcome asymptotics_informational(const std::vector<TaskResult>& built) {
  // The growth rates cannot be observed at these sizes; log the constants only.
  std::string detail;
  for (const auto& t : built) {
    const auto& s = t.json["stats"];
    for (const auto& key : {"m_over_n^(4/3)", "m_over_n^(5/4)"}) {
      if (s.contains(key))
        detail += (detail.empty() ? "" : ", ") + t.json["kind"].get<std::string>() + " " + key + " = " +
                  num(s[key].get<double>());
    }
  }
  for (std::uint64_t p : {41u, 53u}) {
    const auto t = construct_task("subdiv", p, "");
    detail += ", subdiv " + std::to_string(p) + " m_over_n^(4/3) = " + num(t.json["stats"]["m_over_n^(4/3)"].get<double>());
  }
  for (std::uint64_t q : {7u}) {
    const auto t = construct_task("theta", q, "");
    detail += ", theta " + std::to_string(q) + " m_over_n^(5/4) = " + num(t.json["stats"]["m_over_n^(5/4)"].get<double>());
  }
  return {true, "not asserted; exact formulas are checked under criterion 5. constants: " + detail};
}

Outcome property_suites() {
  std::size_t cases = 0, fails = 0;
  std::string detail;
  for (const auto& s : props::run_all()) {
    cases += s.cases;
    fails += s.failures;
    if (s.failures) detail += "; " + s.name + ": " + s.first_failure;
  }
  return {fails == 0 && cases >= 1000, std::to_string(cases) + " randomized cases, " + std::to_string(fails) +
                                           " failures" + detail};
}

}  // namespace

int main() {
  try {
    report(1, "worked example", worked_example());
    report(2, "cascade in exact mode", cascade_exact());
    std::vector<EliminationReport> modular, exact;
    report(3, "catalogue in modular mode", catalogue_modular(modular, exact));
    report(4, "spot-anchored assertions", spot_anchors(modular, exact));
    std::vector<TaskResult> built;
    report(5, "construction counts", construction_counts(built));
    report(6, "forbidden-structure certificates", forbidden_structures());
    report(7, "asymptotic constants (informational)", asymptotics_informational(built));
    report(8, "property suites", property_suites());
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: " + std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
