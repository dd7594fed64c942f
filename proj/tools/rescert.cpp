// Command-line front end: eliminate, construct, verify, report.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rescert/error.hpp"
#include "rescert/harness.hpp"

using namespace rescert;
using nlohmann::json;

namespace {

void emit(const RunConfig& cfg, const std::vector<TaskResult>& tasks, const json& report, const std::string& out) {
  for (const auto& t : tasks) {
    for (const auto& l : t.lines) std::cout << l << "\n";
  }
  std::cout << "overall: " << report["overall"].get<std::string>() << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + out);
    f << report.dump(2) << "\n";
  }
  (void)cfg;
}

std::vector<TaskResult> run_tasks(std::size_t n, unsigned jobs, const std::function<TaskResult(std::size_t)>& fn) {
  std::vector<TaskResult> results(n);
  run_pool(n, jobs, [&](std::size_t i) { results[i] = fn(i); });
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resultant elimination certificates and forbidden-structure checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("RESCERT_OUTDIR")) cfg.outdir = env;
  std::string out;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "write the JSON report here");
    sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timings", cfg.timings, "include wall-clock times in the report");
  };

  std::vector<std::string> ids, files;
  auto* elim = app.add_subcommand("eliminate", "run elimination programs (ids or 'all')");
  elim->add_option("ids", ids, "program ids, or 'all'");
  elim->add_option("--file", files, "load a program from a .elim file");
  elim->add_option("--mode", cfg.mode, "exact | modular | auto")->check(CLI::IsMember({"exact", "modular", "auto"}));
  elim->add_option("--trials", cfg.trials, "random trials in modular mode")->check(CLI::PositiveNumber);
  elim->add_option("--prime-bits", cfg.prime_bits, "modulus size in modular mode")->check(CLI::Range(32, 63));
  elim->add_option("--seed", cfg.seed, "random seed");
  elim->add_option("--budget", cfg.term_budget, "term budget for exact determinants");
  common(elim);

  std::string kind;
  std::uint64_t prime = 0;
  auto* cons = app.add_subcommand("construct", "build a construction and write it to files");
  cons->add_option("kind", kind, "subdiv | theta | berge")->required();
  cons->add_option("p", prime, "prime")->required();
  cons->add_option("--outdir", cfg.outdir, "output directory (default $RESCERT_OUTDIR or .)");
  common(cons);

  auto* ver = app.add_subcommand("verify", "build constructions and run their certificate suites");
  ver->add_option("kind", kind, "subdiv | theta | berge")->required();
  ver->add_option("primes", cfg.primes, "primes (default: a fixed set per kind)");
  ver->add_option("--sample", cfg.sample, "sampled pairs per Berge path check");
  ver->add_option("--seed", cfg.seed, "sampling seed");
  ver->add_flag("--exhaustive", cfg.exhaustive, "count Berge paths over every pair");
  common(ver);

  std::vector<std::string> inputs;
  auto* rep = app.add_subcommand("report", "merge JSON reports and print a summary");
  rep->add_option("inputs", inputs, "report files");
  common(rep);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    std::vector<TaskResult> tasks;
    json report;
    if (elim->parsed()) {
      cfg.command = "eliminate";
      std::vector<EliminationProgram> progs;
      for (const auto& id : ids) {
        if (id == "all") {
          for (const auto& p : builtin_catalogue()) progs.push_back(p);
        } else {
          progs.push_back(find_program(id));
        }
      }
      for (const auto& f : files) progs.push_back(load_program(f));
      if (progs.empty()) throw Error(ErrorKind::DomainError, "no programs given");
      tasks = run_tasks(progs.size(), cfg.jobs, [&](std::size_t i) { return eliminate_task(progs[i], cfg); });
    } else if (cons->parsed()) {
      cfg.command = "construct";
      cfg.primes = {prime};
      tasks.push_back(construct_task(kind, prime, cfg.outdir));
      for (const auto& f : tasks.back().json["stats"].value("files", json::array())) tasks.back().lines.push_back("  wrote " + f.get<std::string>());
    } else if (ver->parsed()) {
      cfg.command = "verify";
      if (cfg.primes.empty()) cfg.primes = default_verify_primes(kind);
      tasks = run_tasks(cfg.primes.size(), cfg.jobs, [&](std::size_t i) { return verify_task(kind, cfg.primes[i], cfg); });
    } else if (rep->parsed()) {
      std::vector<json> docs;
      for (const auto& path : inputs) {
        std::ifstream f(path);
        if (!f) throw Error(ErrorKind::Io, "cannot read " + path);
        try {
          docs.push_back(json::parse(f));
        } catch (const json::parse_error& e) {
          throw Error(ErrorKind::ParseError, path + ": " + e.what());
        }
      }
      report = merge_reports(docs);
      for (const auto& l : summary_table(report)) std::cout << l << "\n";
      if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw Error(ErrorKind::Io, "cannot write " + out);
        f << report.dump(2) << "\n";
      }
      return report["overall"] == "pass" ? 0 : 1;
    }
    report = make_report(cfg, tasks);
    emit(cfg, tasks, report, out);
    return report["overall"] == "pass" ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
