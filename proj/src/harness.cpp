#include "rescert/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "rescert/error.hpp"
#include "rescert/prime_field.hpp"

namespace rescert {

using nlohmann::json;

void RunConfig::validate() const {
  if (trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");
  if (prime_bits < 32 || prime_bits > 63) throw Error(ErrorKind::DomainError, "prime_bits must lie in [32, 63]");
  if (jobs < 1) throw Error(ErrorKind::DomainError, "parallelism must be >= 1");
  if (mode != "auto" && mode != "exact" && mode != "modular") {
    throw Error(ErrorKind::DomainError, "mode must be exact, modular or auto");
  }
}

json config_json(const RunConfig& c) {
  return json{{"command", c.command},       {"primes", c.primes},   {"mode", c.mode},
              {"trials", c.trials},         {"prime_bits", c.prime_bits}, {"seed", c.seed},
              {"sample", c.sample},         {"exhaustive", c.exhaustive}, {"jobs", c.jobs},
              {"term_budget", c.term_budget}};
}

json to_json(const EliminationReport& r, bool timings) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json j{{"index", s.index}, {"line", s.line}, {"kind", s.kind},     {"name", s.name},
           {"label", s.label}, {"status", s.status}, {"detail", s.detail}, {"terms", s.terms}};
    j["unit"] = s.unit ? json(*s.unit) : json(nullptr);
    if (timings) j["seconds"] = s.seconds;
    steps.push_back(std::move(j));
  }
  json j{{"program", r.program_id},
         {"mode", run_mode_name(r.mode)},
         {"pass", r.pass},
         {"failure", r.failure},
         {"assertions", r.assertions},
         {"assertions_passed", r.assertions_passed},
         {"term_budget", r.term_budget},
         {"steps", std::move(steps)}};
  if (r.mode == RunMode::Modular) {
    j["modular"] = json{{"trials", r.trials},
                        {"prime_bits", r.prime_bits},
                        {"prime", r.prime},
                        {"seed", r.seed},
                        {"parameters", r.parameters},
                        {"sz_bound_per_trial", r.sz_bound_per_trial},
                        {"sz_bound_cumulative", r.sz_bound_per_trial * r.trials},
                        {"resamples", r.resamples}};
  }
  if (timings) j["seconds"] = r.seconds;
  return j;
}

json to_json(const StructureCertificate& c) {
  return json{{"construction", c.construction},
              {"p", c.p},
              {"check", c.check},
              {"exhaustive", c.exhaustive},
              {"sample_size", c.sample_size},
              {"seed", c.seed},
              {"domain", c.domain},
              {"measured_max", c.measured_max},
              {"bound", c.bound},
              {"pass", c.pass},
              {"witness", c.witness}};
}

RunOptions run_options(const RunConfig& c, const EliminationProgram& p) {
  RunOptions o;
  o.mode = c.mode == "auto" ? default_mode(p) : parse_run_mode(c.mode);
  o.trials = c.trials;
  o.prime_bits = c.prime_bits;
  o.seed = c.seed;
  o.term_budget = c.term_budget;
  return o;
}

TaskResult eliminate_task(const EliminationProgram& p, const RunConfig& c) {
  const auto rep = run_program(p, run_options(c, p));
  TaskResult t;
  t.pass = rep.pass;
  t.json = to_json(rep, c.timings);
  t.json["task"] = "eliminate";
  std::ostringstream head;
  head << p.id << " [" << run_mode_name(rep.mode) << "] " << (rep.pass ? "PASS" : "FAIL") << "  assertions "
       << rep.assertions_passed << "/" << rep.assertions;
  if (rep.mode == RunMode::Modular) {
    head << "  trials=" << rep.trials << " prime=" << rep.prime << " sz/trial=" << rep.sz_bound_per_trial;
  }
  t.lines.push_back(head.str());
  for (const auto& s : rep.steps) {
    if (s.status == "ok" || s.status == "skipped") continue;
    std::string l = "  line " + std::to_string(s.line) + " " + s.status + ": " + s.label;
    if (s.unit) l += "   unit = " + *s.unit;
    if (!s.detail.empty()) l += "   (" + s.detail + ")";
    t.lines.push_back(l);
  }
  if (!rep.pass) t.lines.push_back("  first failure: " + rep.failure);
  return t;
}

namespace {

json check_json(const std::string& name, bool pass, const std::string& detail) {
  return json{{"check", name}, {"pass", pass}, {"detail", detail}};
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

TaskResult construct_task(const std::string& kind, std::uint64_t p, const std::string& outdir) {
  TaskResult t;
  json stats;
  if (!outdir.empty()) std::filesystem::create_directories(outdir);
  const std::string stem = kind + "-" + std::to_string(p);
  if (kind == "subdiv" || kind == "theta") {
    const Graph g = kind == "subdiv" ? build_subdivision_graph(p) : build_theta_graph(p);
    check_graph(g);
    const double n = static_cast<double>(g.vertex_count()), m = static_cast<double>(g.edge_count());
    stats = {{"n", g.vertex_count()}, {"m", g.edge_count()}, {"min_degree", g.min_degree()}, {"max_degree", g.max_degree()}};
    if (kind == "subdiv") {
      const auto s = build_subdiv_base_set(p).S;
      const std::uint64_t formula_n = (p - 5 + 17) / 18 * p * p;
      stats["S"] = s;
      stats["formula_n"] = formula_n;
      stats["formula_min_degree"] = (static_cast<double>(p) - 23) / 18;
      stats["formula_edge_lower_bound"] = (static_cast<double>(p) - 23) * (static_cast<double>(p) - 5) * n / 648;
      stats["m_over_n^(4/3)"] = m / std::pow(n, 4.0 / 3);
      t.lines.push_back("subdiv p=" + std::to_string(p) + "  n=" + std::to_string(g.vertex_count()) +
                        " (formula ceil((p-5)/18) p^2 = " + std::to_string(formula_n) + ")  m=" +
                        std::to_string(g.edge_count()) + "  degree " + std::to_string(g.min_degree()) + ".." +
                        std::to_string(g.max_degree()) + " (formula min (p-23)/18 = " +
                        fmt((static_cast<double>(p) - 23) / 18) + ")  m/n^(4/3) = " + fmt(m / std::pow(n, 4.0 / 3)));
    } else {
      stats["formula_n"] = p * p * p * p;
      stats["m_over_n^(5/4)"] = m / std::pow(n, 5.0 / 4);
      t.lines.push_back("theta q=" + std::to_string(p) + "  n=" + std::to_string(g.vertex_count()) +
                        " (formula q^4 = " + std::to_string(p * p * p * p) + ")  m=" + std::to_string(g.edge_count()) +
                        "  degree " + std::to_string(g.min_degree()) + ".." + std::to_string(g.max_degree()) +
                        "  m/n^(5/4) = " + fmt(m / std::pow(n, 5.0 / 4)));
    }
    if (!outdir.empty()) {
      write_graph(g, out_path(outdir, stem + ".edges"), out_path(outdir, stem + ".labels"));
      stats["files"] = {out_path(outdir, stem + ".edges"), out_path(outdir, stem + ".labels")};
    }
  } else if (kind == "berge") {
    const auto h = build_berge_hypergraph(p);
    const std::size_t k = h.sets.S1.size();
    const double n = static_cast<double>(h.vertex_count()), m = static_cast<double>(h.edges.size());
    const std::int64_t edge_lb = static_cast<std::int64_t>(k * k * k) * (static_cast<std::int64_t>(p) - 13);
    stats = {{"n", h.vertex_count()},
             {"m", h.edges.size()},
             {"S1", h.sets.S1},
             {"branch", h.sets.half == 1 ? "T1" : "T2"},
             {"T4", h.sets.T4},
             {"T5", h.sets.T5},
             {"formula_n", 3 * k * (p - 2) * (p - 2)},
             {"formula_S1_lower_bound", (static_cast<double>(p) - 43) / 4},
             {"formula_edge_lower_bound", edge_lb},
             {"edge_lower_bound_holds", static_cast<std::int64_t>(h.edges.size()) >= edge_lb},
             {"linear", true},
             {"m_over_n^(4/3)", m / std::pow(n, 4.0 / 3)}};
    t.lines.push_back("berge p=" + std::to_string(p) + "  |S1|=" + std::to_string(k) + " (branch " +
                      (h.sets.half == 1 ? "T1" : "T2") + ")  n=" + std::to_string(h.vertex_count()) +
                      " (formula 3|S1|(p-2)^2 = " + std::to_string(3 * k * (p - 2) * (p - 2)) + ")  m=" +
                      std::to_string(h.edges.size()) + " (|S1|^3 (p-13) = " + std::to_string(edge_lb) +
                      ")  linear  m/n^(4/3) = " + fmt(m / std::pow(n, 4.0 / 3)));
    if (!outdir.empty()) {
      write_hypergraph(h, out_path(outdir, stem + ".edges"), out_path(outdir, stem + ".labels"));
      stats["files"] = {out_path(outdir, stem + ".edges"), out_path(outdir, stem + ".labels")};
    }
  } else {
    throw Error(ErrorKind::WrongKind, "unknown construction '" + kind + "' (subdiv, theta, berge)");
  }
  t.pass = true;
  t.json = {{"task", "construct"}, {"kind", kind}, {"p", p}, {"stats", stats}, {"pass", true}};
  return t;
}

namespace {

struct CheckList {
  json items = json::array();
  bool pass = true;
  std::vector<std::string> lines;

  void add(const std::string& name, bool ok, const std::string& detail) {
    items.push_back(check_json(name, ok, detail));
    pass = pass && ok;
    lines.push_back(std::string("  ") + (ok ? "pass " : "FAIL ") + name + (detail.empty() ? "" : ": " + detail));
  }
  void add(const StructureCertificate& c) {
    items.push_back(to_json(c));
    pass = pass && c.pass;
    std::string mode = c.exhaustive ? "exhaustive" : "sampled " + std::to_string(c.sample_size) + " seed " +
                                                          std::to_string(c.seed);
    lines.push_back(std::string("  ") + (c.pass ? "pass " : "FAIL ") + c.check + ": max " +
                    std::to_string(c.measured_max) + " <= " + std::to_string(c.bound) + " (" + mode + ")" +
                    (c.witness.empty() ? "" : "  at " + c.witness));
  }
};

const BergeType kTypes[] = {{1, 2, 1, 2}, {1, 2, 3, 1}, {1, 2, 3, 2}};
const std::int64_t kTypeBounds[] = {8, 108, 36};

void berge_checks(const LinearHypergraph& h, const PairSelection& sel, CheckList& out) {
  bool parts_ok = true;
  for (const auto& e : h.edges) {
    for (int i = 0; i < 3; ++i) parts_ok = parts_ok && h.part(e.v[i]) == i + 1;
  }
  out.add("3-partite", parts_ok, std::to_string(h.edges.size()) + " edges");
  out.add("linear (exhaustive)", true, "no two edges share two vertices");
  const auto cyc = berge_4cycle_exists(h, {1, 2, 1, 2});
  std::string w;
  if (cyc) {
    for (auto v : cyc->v) w += std::to_string(v) + " ";
  }
  out.add("no (1,2,1,2) Berge 4-cycle (exhaustive)", !cyc.has_value(), cyc ? "witness " + w : "");
  for (int i = 0; i < 3; ++i) out.add(berge_3path_counts(h, kTypes[i], sel, kTypeBounds[i]).certificate);
  for (const auto& c : certify_theta_berge_free(h, 217, sel)) out.add(c);
}

}  // namespace

std::uint64_t smallest_accepted_berge_prime() {
  static const std::uint64_t p = [] {
    for (std::uint64_t q = 5; q < 1000; ++q) {
      if (!is_prime_u64(q)) continue;
      try {
        const auto h = build_berge_hypergraph(q);
        CheckList cl;
        berge_checks(h, PairSelection::all(), cl);
        if (cl.pass) return q;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BadReduction && e.kind() != ErrorKind::EmptyS1) throw;
      }
    }
    throw Error(ErrorKind::DomainError, "no accepted prime below 1000");
  }();
  return p;
}

std::vector<std::uint64_t> default_verify_primes(const std::string& kind) {
  if (kind == "subdiv") return {29, 41, 53};
  if (kind == "theta") return {5, 7};
  if (kind == "berge") return {smallest_accepted_berge_prime(), 61};
  throw Error(ErrorKind::WrongKind, "unknown construction '" + kind + "' (subdiv, theta, berge)");
}

TaskResult verify_task(const std::string& kind, std::uint64_t p, const RunConfig& c) {
  CheckList cl;
  auto built = construct_task(kind, p, "");
  json stats = built.json["stats"];
  if (kind == "subdiv") {
    const auto g = build_subdivision_graph(p);
    const auto base = build_subdiv_base_set(p);
    cl.add("S conditions over S^4", check_subdiv_conditions(base).empty(), "|S| = " + std::to_string(base.S.size()));
    cl.add("vertex count = ceil((p-5)/18) p^2", g.vertex_count() == stats["formula_n"].get<std::uint64_t>(),
           std::to_string(g.vertex_count()));
    cl.add("min degree >= (p-23)/18", static_cast<double>(g.min_degree()) >= (static_cast<double>(p) - 23) / 18,
           std::to_string(g.min_degree()));
    bool common = true;
    for (VertexId w = 0; w < g.vertex_count() && common; ++w) {
      for (VertexId x : g.adj[w])
        for (VertexId y : g.adj[w])
          for (int i = 0; i < 3; ++i) common = common && (x == y || g.labels[x][i] != g.labels[y][i]);
    }
    cl.add("vertices with a common neighbour differ in every coordinate", common, "");
    cl.add(certify_subdivision_free(g, 25));
  } else if (kind == "theta") {
    const auto g = build_theta_graph(p);
    cl.add("vertex count = q^4", g.vertex_count() == p * p * p * p, std::to_string(g.vertex_count()));
    bool common = true;
    for (VertexId w = 0; w < g.vertex_count() && common; ++w) {
      for (VertexId x : g.adj[w])
        for (VertexId y : g.adj[w]) common = common && (x == y || g.labels[x][0] != g.labels[y][0]);
    }
    cl.add("vertices with a common neighbour differ in the first coordinate", common, "");
    cl.add(certify_disjoint_paths(g, 4, 3));
  } else if (kind == "berge") {
    const auto h = build_berge_hypergraph(p);
    cl.add("vertex count = 3|S1|(p-2)^2", h.vertex_count() == stats["formula_n"].get<std::uint64_t>(),
           std::to_string(h.vertex_count()));
    cl.add("|S2| = p-2", h.sets.S2.size() == p - 2, "");
    const auto sel = c.exhaustive ? PairSelection::all() : PairSelection::sample(c.sample, c.seed);
    berge_checks(h, sel, cl);
  }
  TaskResult t;
  t.pass = cl.pass;
  t.lines = built.lines;
  t.lines.insert(t.lines.end(), cl.lines.begin(), cl.lines.end());
  t.json = {{"task", "verify"}, {"kind", kind}, {"p", p}, {"stats", stats}, {"checks", cl.items}, {"pass", cl.pass}};
  return t;
}

json make_report(const RunConfig& c, const std::vector<TaskResult>& tasks) {
  json arr = json::array();
  bool pass = !tasks.empty();
  for (const auto& t : tasks) {
    arr.push_back(t.json);
    pass = pass && t.pass;
  }
  return json{{"schema", kSchemaName},
              {"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"config", config_json(c)},
              {"tasks", std::move(arr)},
              {"overall", pass ? "pass" : "fail"}};
}

json merge_reports(const std::vector<json>& reports) {
  if (reports.empty()) throw Error(ErrorKind::DomainError, "no reports to merge");
  json tasks = json::array(), configs = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    if (!r.is_object() || r.value("schema", "") != kSchemaName) {
      throw Error(ErrorKind::SchemaMismatch, "input is not a " + std::string(kSchemaName) + " document");
    }
    if (!r.contains("schema_version") || r["schema_version"] != kSchemaVersion) {
      throw Error(ErrorKind::SchemaMismatch, "schema_version " + r.value("schema_version", json()).dump() +
                                                 " differs from " + std::to_string(kSchemaVersion));
    }
    for (const auto& t : r.at("tasks")) tasks.push_back(t);
    configs.push_back(r.at("config"));
    pass = pass && r.at("overall") == "pass";
  }
  return json{{"schema", kSchemaName},
              {"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"config", json{{"command", "report"}, {"inputs", configs}}},
              {"tasks", std::move(tasks)},
              {"overall", pass ? "pass" : "fail"}};
}

std::vector<std::string> summary_table(const json& report) {
  std::vector<std::string> out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-22s %-8s %s", "task", "subject", "verdict", "notes");
  out.push_back(buf);
  for (const auto& t : report.at("tasks")) {
    const std::string task = t.value("task", "?");
    std::string subject, notes;
    if (task == "eliminate") {
      subject = t.value("program", "?") + " (" + t.value("mode", "?") + ")";
      notes = std::to_string(t.value("assertions_passed", 0)) + "/" + std::to_string(t.value("assertions", 0)) +
              " assertions";
      if (!t.value("pass", false)) notes += "; " + t.value("failure", "");
    } else {
      subject = t.value("kind", "?") + " p=" + std::to_string(t.value("p", 0));
      if (t.contains("checks")) {
        int ok = 0, all = 0;
        for (const auto& c : t["checks"]) {
          ++all;
          ok += c.value("pass", false);
        }
        notes = std::to_string(ok) + "/" + std::to_string(all) + " checks";
      } else if (t.contains("stats")) {
        notes = "n=" + std::to_string(t["stats"].value("n", 0)) + " m=" + std::to_string(t["stats"].value("m", 0));
      }
    }
    std::snprintf(buf, sizeof buf, "%-10s %-22s %-8s %s", task.c_str(), subject.c_str(),
                  t.value("pass", false) ? "pass" : "FAIL", notes.c_str());
    out.push_back(buf);
  }
  out.push_back("overall: " + report.value("overall", "fail"));
  return out;
}

void run_pool(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace rescert
