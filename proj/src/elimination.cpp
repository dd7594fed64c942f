#include "rescert/elimination.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "rescert/identity.hpp"
#include "rescert/parser.hpp"
#include "rescert/resultant.hpp"

namespace rescert {

const char* run_mode_name(RunMode m) { return m == RunMode::Exact ? "exact" : "modular"; }

RunMode parse_run_mode(const std::string& s) {
  if (s == "exact") return RunMode::Exact;
  if (s == "modular") return RunMode::Modular;
  throw Error(ErrorKind::DomainError, "mode must be exact or modular, got '" + s + "'");
}

RunMode default_mode(const EliminationProgram& p) {
  return p.vars.size() <= 8 ? RunMode::Exact : RunMode::Modular;
}

void require_pass(const EliminationReport& r) {
  if (!r.pass) throw Error(ErrorKind::StepFailed, r.program_id + ": " + r.failure);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string abbreviate(const std::string& s) {
  return s.size() > 160 ? s.substr(0, 160) + " ..." : s;
}

// Outcome of one step in one run (exact, or one modular trial).
template <class Ring>
struct Outcome {
  std::string status;
  std::optional<typename Ring::Elem> unit;
  std::string detail;
  std::size_t terms = 0;
  double seconds = 0.0;
  std::vector<int> profile;  // degrees of the produced/inspected polynomial
  int deg_f = 0, deg_g = 0;  // degrees in the step variable (resultant / subst)
};

template <class Ring>
class Executor {
 public:
  using Poly = MultiPoly<Ring>;
  using ResultantFn = std::function<Poly(const Poly&, const Poly&, std::size_t)>;

  Executor(RegistryPtr reg, Ring ring, std::map<std::string, Poly> consts, ResultantFn res, std::size_t budget)
      : reg_(std::move(reg)), ring_(std::move(ring)), consts_(std::move(consts)), res_(std::move(res)),
        budget_(budget) {}

  // Runs every step; stops after the first value step that fails.
  std::vector<Outcome<Ring>> run(const EliminationProgram& p) {
    std::vector<Outcome<Ring>> out;
    bool halted = false;
    for (const auto& st : p.steps) {
      Outcome<Ring> o;
      if (halted) {
        o.status = "skipped";
        out.push_back(o);
        continue;
      }
      const auto t0 = Clock::now();
      try {
        exec(st, o);
      } catch (const Error& e) {
        o.status = "error";
        o.detail = e.what();
        if (e.kind() == ErrorKind::BudgetExceeded) budget_hit_ = true;
      }
      o.seconds = since(t0);
      if (!is_assertion(st.kind) && o.status != "ok") halted = true;
      out.push_back(std::move(o));
    }
    return out;
  }

  bool budget_hit() const { return budget_hit_; }

 private:
  Poly eval(const std::string& text) {
    PolyParser<Ring> parser(reg_, ring_, [this](const std::string& name) -> const Poly* {
      if (auto it = env_.find(name); it != env_.end()) return &it->second;
      if (auto it = consts_.find(name); it != consts_.end()) return &it->second;
      return nullptr;
    });
    return parser.parse(text);
  }

  Poly factor_product(const std::vector<FactorText>& fs) {
    Poly prod = Poly::constant(reg_, ring_, ring_.one());
    for (const auto& f : fs) {
      Poly base = eval(f.text);
      if (base.is_zero()) throw Error(ErrorKind::DomainError, "factor " + f.text + " is zero");
      prod = prod * base.pow(f.multiplicity);
      check_budget(prod);
    }
    return prod;
  }

  void check_budget(const Poly& p) const {
    if (budget_ && p.size() > budget_) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(p.size()) + " terms exceeds budget " + std::to_string(budget_));
    }
  }

  static std::string factor_text(const FactorText& f) {
    return f.multiplicity == 1 ? f.text : f.text + "^" + std::to_string(f.multiplicity);
  }

  void produce(const EliminationStep& st, Outcome<Ring>& o, Poly value) {
    check_budget(value);
    o.status = "ok";
    o.terms = value.size();
    o.profile = value.degrees();
    env_[st.out] = std::move(value);
  }

  void exec(const EliminationStep& st, Outcome<Ring>& o) {
    switch (st.kind) {
      case StepKind::Define:
        produce(st, o, eval(st.exprs[0]));
        return;
      case StepKind::Resultant: {
        Poly f = eval(st.exprs[0]), g = eval(st.exprs[1]);
        const std::size_t v = reg_->index(st.var);
        o.deg_f = f.degree_in(v);
        o.deg_g = g.degree_in(v);
        produce(st, o, res_(f, g, v));
        return;
      }
      case StepKind::DivExact: {
        Poly q = eval(st.exprs[0]);
        for (const auto& f : st.factors) {
          Poly d = eval(f.text);
          if (d.is_zero()) throw Error(ErrorKind::DomainError, "divisor " + f.text + " is zero");
          for (unsigned k = 0; k < f.multiplicity; ++k) {
            Poly next;
            if (!try_exact_divide(q, d, next)) {
              o.status = "fail";
              o.detail = "not divisible by " + factor_text(f) +
                         (f.multiplicity > 1 ? " (failed at power " + std::to_string(k + 1) + ")" : "");
              return;
            }
            q = std::move(next);
          }
        }
        produce(st, o, std::move(q));
        return;
      }
      case StepKind::Coeff: {
        Poly f = eval(st.exprs[0]);
        produce(st, o, f.coefficient_in(reg_->index(st.var), static_cast<std::uint32_t>(st.k)));
        return;
      }
      case StepKind::Substitute: {
        Poly f = eval(st.exprs[0]), g = eval(st.exprs[1]);
        const std::size_t v = reg_->index(st.var);
        o.deg_f = std::max(0, f.degree_in(v));
        produce(st, o, f.substitute(v, g));
        return;
      }
      case StepKind::AssertFactorization: {
        Poly f = eval(st.exprs[0]);
        o.profile = f.degrees();
        o.terms = f.size();
        Poly prod = factor_product(st.factors);
        Poly q;
        if (!try_exact_divide(f, prod, q)) {
          o.status = "fail";
          o.detail = "not divisible by the product of the listed factors";
          return;
        }
        if (q.is_zero() || !q.is_constant()) {
          o.status = "fail";
          o.detail = "cofactor is not a constant: " + abbreviate(q.to_string());
          return;
        }
        o.status = "pass";
        o.unit = q.constant_value();
        return;
      }
      case StepKind::AssertNonzeroConstant: {
        Poly f = eval(st.exprs[0]);
        o.profile = f.degrees();
        o.terms = f.size();
        if (f.is_zero() || !f.is_constant()) {
          o.status = "fail";
          o.detail = f.is_zero() ? "value is zero" : "value is not constant: " + abbreviate(f.to_string());
          return;
        }
        o.status = "pass";
        o.unit = f.constant_value();
        return;
      }
      case StepKind::AssertEqual: {
        Poly f = eval(st.exprs[0]), g = eval(st.exprs[1]);
        o.profile = f.degrees();
        o.terms = f.size();
        if (f != g) {
          o.status = "fail";
          o.detail = "difference: " + abbreviate((f - g).to_string());
          return;
        }
        o.status = "pass";
        return;
      }
      case StepKind::AssertDegree: {
        Poly f = eval(st.exprs[0]);
        o.profile = f.degrees();
        o.terms = f.size();
        const int d = f.degree_in(reg_->index(st.var));
        if (d != st.k) {
          o.status = "fail";
          o.detail = "degree in " + st.var + " is " + (d == NEG_INF ? std::string("-inf") : std::to_string(d)) +
                     ", expected " + std::to_string(st.k);
          return;
        }
        o.status = "pass";
        return;
      }
    }
  }

  RegistryPtr reg_;
  Ring ring_;
  std::map<std::string, Poly> consts_;
  ResultantFn res_;
  std::size_t budget_;
  std::map<std::string, Poly> env_;
  bool budget_hit_ = false;
};

StepReport base_step(const EliminationStep& st, std::size_t i) {
  StepReport r;
  r.index = i;
  r.line = st.line;
  r.kind = step_kind_name(st.kind);
  r.name = st.out;
  r.label = st.label;
  return r;
}

void finish(EliminationReport& rep) {
  rep.pass = true;
  for (const auto& s : rep.steps) {
    const bool bad = s.status == "fail" || s.status == "error" || s.status == "skipped";
    if (s.kind.rfind("assert_", 0) == 0) {
      ++rep.assertions;
      if (s.status == "pass") ++rep.assertions_passed;
    }
    if (bad && rep.pass) {
      rep.pass = false;
      rep.failure = "line " + std::to_string(s.line) + " '" + s.label + "': " + s.status +
                    (s.detail.empty() ? "" : " (" + s.detail + ")");
    }
  }
  if (rep.assertions == 0 && rep.pass) {
    rep.pass = false;
    rep.failure = "program has no assertions";
  }
}

EliminationReport run_exact(const EliminationProgram& p, const RunOptions& opt) {
  EliminationReport rep;
  rep.program_id = p.id;
  rep.mode = RunMode::Exact;
  rep.term_budget = opt.term_budget;
  const auto t0 = Clock::now();
  auto reg = VarRegistry::make(p.vars);
  const std::size_t budget = opt.term_budget;
  Executor<RationalRing> ex(reg, RationalRing{}, {},
                            [budget](const QPoly& f, const QPoly& g, std::size_t v) {
                              return resultant(f, g, v, DetMethod::Auto, budget);
                            },
                            budget);
  auto outs = ex.run(p);
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    StepReport s = base_step(p.steps[i], i);
    s.status = outs[i].status;
    s.detail = outs[i].detail;
    s.seconds = outs[i].seconds;
    s.terms = outs[i].terms;
    if (outs[i].unit) s.unit = outs[i].unit->get_str();
    rep.steps.push_back(std::move(s));
  }
  rep.seconds = since(t0);
  finish(rep);
  return rep;
}

// Upper bound on the total degree in the parameters of an expression.
class ParamDegree {
 public:
  ParamDegree(const std::map<std::string, long long>& names, const std::vector<std::string>& params)
      : names_(names), params_(params.begin(), params.end()) {}

  long long of(const std::string& text) {
    s_ = text;
    pos_ = 0;
    return expr();
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long long expr() {
    long long d = term();
    while (accept('+') || accept('-')) d = std::max(d, term());
    return d;
  }
  long long term() {
    long long d = unary();
    while (accept('*')) d += unary();
    return d;
  }
  long long unary() {
    if (accept('-') || accept('+')) return unary();
    long long d = atom();
    if (accept('^')) d *= number();
    return d;
  }
  long long number() {
    ws();
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
    return v;
  }
  long long atom() {
    ws();
    if (accept('(')) {
      long long d = expr();
      accept(')');
      return d;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      number();
      if (accept('/')) number();
      return 0;
    }
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name = s_.substr(st, pos_ - st);
    if (params_.count(name)) return 1;
    if (auto it = names_.find(name); it != names_.end()) return it->second;
    return 0;
  }

  const std::map<std::string, long long>& names_;
  std::set<std::string> params_;
  std::string s_;
  std::size_t pos_ = 0;
};

// Sum over the events a trial relies on of their degree in the parameters:
// vanishing leading coefficients, spurious divisibility, false assertions.
double event_degree(const EliminationProgram& p, const std::vector<std::string>& params,
                    const std::vector<Outcome<ModRing>>& outs) {
  std::map<std::string, long long> pd;
  ParamDegree deg(pd, params);
  long double total = 0;
  auto factors = [&](const std::vector<FactorText>& fs) {
    long long s = 0;
    for (const auto& f : fs) s += static_cast<long long>(f.multiplicity) * deg.of(f.text);
    return s;
  };
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& st = p.steps[i];
    const auto& o = outs[i];
    switch (st.kind) {
      case StepKind::Define:
        pd[st.out] = deg.of(st.exprs[0]);
        break;
      case StepKind::Resultant: {
        const long long a = deg.of(st.exprs[0]), b = deg.of(st.exprs[1]);
        total += a + b;
        pd[st.out] = static_cast<long long>(std::max(o.deg_g, 0)) * a + static_cast<long long>(std::max(o.deg_f, 0)) * b;
        break;
      }
      case StepKind::DivExact: {
        const long long a = deg.of(st.exprs[0]);
        total += a + factors(st.factors);
        pd[st.out] = a;
        break;
      }
      case StepKind::Coeff:
        pd[st.out] = deg.of(st.exprs[0]);
        break;
      case StepKind::Substitute:
        pd[st.out] = deg.of(st.exprs[0]) + static_cast<long long>(o.deg_f) * deg.of(st.exprs[1]);
        break;
      case StepKind::AssertFactorization:
        total += deg.of(st.exprs[0]) + factors(st.factors);
        break;
      case StepKind::AssertNonzeroConstant:
      case StepKind::AssertDegree:
        total += deg.of(st.exprs[0]);
        break;
      case StepKind::AssertEqual:
        total += std::max(deg.of(st.exprs[0]), deg.of(st.exprs[1]));
        break;
    }
  }
  return static_cast<double>(total);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> rational_literals(const EliminationProgram& p) {
  // Denominators of num/den literals, as (num, den) pairs of small integers.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::string& s = p.source;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '/') continue;
    std::size_t j = i + 1;
    while (j < s.size() && s[j] == ' ') ++j;
    std::uint64_t den = 0;
    bool any = false;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
      den = den * 10 + static_cast<std::uint64_t>(s[j] - '0');
      ++j;
      any = true;
    }
    if (any) out.push_back({1, den});
  }
  return out;
}

EliminationReport run_modular(const EliminationProgram& p, const RunOptions& opt) {
  if (opt.trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");
  if (opt.prime_bits < 32 || opt.prime_bits > 63) throw Error(ErrorKind::DomainError, "prime_bits must be in [32, 63]");
  EliminationReport rep;
  rep.program_id = p.id;
  rep.mode = RunMode::Modular;
  rep.trials = opt.trials;
  rep.prime_bits = opt.prime_bits;
  rep.seed = opt.seed;
  rep.term_budget = opt.term_budget;
  const auto t0 = Clock::now();

  const auto symbolic = eliminated_variables(p);
  for (const auto& v : p.vars) {
    if (std::find(symbolic.begin(), symbolic.end(), v) == symbolic.end()) rep.parameters.push_back(v);
  }
  auto reg = VarRegistry::make(symbolic);

  std::mt19937_64 rng(opt.seed);
  const auto dens = rational_literals(p);
  std::uint64_t P = 0;
  for (int attempt = 0; attempt < 100 && !P; ++attempt) {
    const std::uint64_t c = random_prime(opt.prime_bits, rng);
    bool ok = true;
    for (const auto& d : dens) ok = ok && d.second % c != 0;
    if (ok) P = c;
  }
  if (!P) throw Error(ErrorKind::BadPrime, "no prime avoids the program's denominators");
  rep.prime = P;
  const ModRing ring{PrimeField(P)};

  std::vector<std::vector<Outcome<ModRing>>> trials;
  std::vector<std::vector<std::uint64_t>> points;
  for (unsigned t = 0; t < opt.trials; ++t) {
    unsigned tries = 0;
    for (;;) {
      std::map<std::string, ModPoly> consts;
      std::vector<std::uint64_t> point;
      for (const auto& v : rep.parameters) {
        const std::uint64_t x = 1 + rng() % (P - 1);
        point.push_back(x);
        consts[v] = ModPoly::constant(reg, ring, x);
      }
      Executor<ModRing> ex(reg, ring, std::move(consts),
                           [&rng](const ModPoly& f, const ModPoly& g, std::size_t v) {
                             return resultant_modular(f, g, v, rng);
                           },
                           opt.term_budget);
      auto outs = ex.run(p);
      // A point where some intermediate loses degree is degenerate; the
      // first trial fixes the reference shape.
      bool same = true;
      if (!trials.empty()) {
        for (std::size_t i = 0; i < outs.size(); ++i) {
          same = same && outs[i].profile == trials[0][i].profile && outs[i].deg_f == trials[0][i].deg_f &&
                 outs[i].deg_g == trials[0][i].deg_g;
        }
      }
      if (same) {
        trials.push_back(std::move(outs));
        points.push_back(std::move(point));
        break;
      }
      ++rep.resamples;
      if (++tries > 100) throw Error(ErrorKind::DegeneratePrime, "degree profile keeps changing between trials");
    }
  }

  rep.sz_bound_per_trial = event_degree(p, rep.parameters, trials[0]) / static_cast<double>(P);

  auto witness = [&](std::size_t t) {
    std::ostringstream os;
    os << "trial " << t;
    if (!rep.parameters.empty()) {
      os << " at";
      for (std::size_t i = 0; i < rep.parameters.size(); ++i) {
        os << " " << rep.parameters[i] << "=" << ring.field.centered(points[t][i]);
      }
    }
    os << " mod " << P;
    return os.str();
  };

  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    StepReport s = base_step(p.steps[i], i);
    s.status = trials[0][i].status;
    s.terms = trials[0][i].terms;
    for (std::size_t t = 0; t < trials.size(); ++t) s.seconds += trials[t][i].seconds;
    for (std::size_t t = 0; t < trials.size(); ++t) {
      const auto& o = trials[t][i];
      if (o.status != "ok" && o.status != "pass") {
        s.status = o.status;
        s.detail = o.detail + " [" + witness(t) + "]";
        break;
      }
      if (o.unit && trials[0][i].unit && *o.unit != *trials[0][i].unit) {
        s.status = "fail";
        s.detail = "unit differs between trials, so the cofactor depends on the parameters [" + witness(t) + "]";
        break;
      }
    }
    if (s.status == "pass" && trials[0][i].unit) {
      if (auto q = rational_reconstruct(*trials[0][i].unit, P)) {
        s.unit = q->get_str();
      } else {
        s.unit = std::to_string(*trials[0][i].unit) + " mod " + std::to_string(P);
      }
    }
    rep.steps.push_back(std::move(s));
  }
  rep.seconds = since(t0);
  finish(rep);
  return rep;
}

}  // namespace

EliminationReport run_program(const EliminationProgram& p, const RunOptions& opt) {
  return opt.mode == RunMode::Exact ? run_exact(p, opt) : run_modular(p, opt);
}

}  // namespace rescert
