#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rescert/elimination.hpp"
#include "rescert/identity.hpp"
#include "rescert/parser.hpp"
#include "rescert/program.hpp"
#include "rescert/resultant.hpp"

using namespace rescert;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

IdentityClaim claim(const RegistryPtr& r, const char* f, const char* g, std::vector<std::pair<const char*, unsigned>> fs) {
  IdentityClaim c;
  c.f = parse_qpoly(f, r);
  c.g = parse_qpoly(g, r);
  c.var = 0;
  for (auto [t, m] : fs) c.factors.push_back({parse_qpoly(t, r), m});
  return c;
}

}  // namespace

TEST(Identity, WorkedExample) {
  auto r = VarRegistry::make({"x", "y"});
  auto c = claim(r, "x*y - 1", "x^2 + y^2 - 4", {{"y^4 - 4*y^2 + 1", 1}});
  EXPECT_EQ(verify_identity_exact(c).unit, 1);
  const auto m = verify_identity_modular(c, 5, 62, 9);
  EXPECT_EQ(m.unit, 1);
  EXPECT_EQ(m.trials, 5u);
  EXPECT_LT(m.sz_bound_per_trial, 1e-15);

  auto bad = claim(r, "x*y - 1", "x^2 + y^2 - 4", {{"y^4 - 4*y^2", 1}});
  EXPECT_EQ(kind_of([&] { verify_identity_exact(bad); }), ErrorKind::IdentityFails);
  try {
    verify_identity_modular(bad, 5, 62, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityFails);
    EXPECT_NE(std::string(e.what()).find("y="), std::string::npos) << e.what();
  }
}

TEST(Identity, UnitsAndResiduals) {
  auto r = VarRegistry::make({"x", "a", "b", "y"});
  EXPECT_EQ(verify_identity_exact(claim(r, "x - a", "x - b", {{"a - b", 1}})).unit, 1);
  EXPECT_EQ(verify_identity_exact(claim(r, "x - a", "x - b", {{"b - a", 1}})).unit, -1);
  // Res(2x - a, x - b) = a - 2b.
  EXPECT_EQ(verify_identity_exact(claim(r, "2*x - a", "x - b", {{"a - 2*b", 1}})).unit, 1);
  EXPECT_EQ(verify_identity_exact(claim(r, "2*x - a", "x - b", {{"4*b - 2*a", 1}})).unit, Rational(-1, 2));
  EXPECT_EQ(verify_identity_modular(claim(r, "2*x - a", "x - b", {{"4*b - 2*a", 1}}), 3, 62, 1).unit, Rational(-1, 2));
  EXPECT_EQ(verify_identity_modular(claim(r, "x - a", "x - b", {{"b - a", 1}}), 3, 62, 1).unit, -1);
  // Res(x^2 - y, x - 1) = 1 - y: claiming (y^2 - 1) is wrong.
  EXPECT_EQ(kind_of([&] { verify_identity_exact(claim(r, "x^2 - y", "x - 1", {{"y^2 - 1", 1}})); }),
            ErrorKind::IdentityFails);
  auto c = claim(r, "x^2 - y", "x - a", {{"a - 1", 1}});
  EXPECT_EQ(kind_of([&] { verify_identity_exact(c); }), ErrorKind::IdentityFails);
  c.allow_residual = true;
  c.factors.clear();
  c.factors.push_back({parse_qpoly("1", r), 1});
  const auto v = verify_identity_exact(c);
  ASSERT_TRUE(v.residual.has_value());
  EXPECT_EQ(v.residual->constant_like(v.unit) * *v.residual, resultant(c.f, c.g, 0));
}

TEST(Identity, RationalReconstruction) {
  const std::uint64_t p = 1000000007;
  PrimeField F(p);
  EXPECT_EQ(*rational_reconstruct(F.div(F.reduce(-3), F.reduce(7)), p), Rational(-3, 7));
  EXPECT_EQ(*rational_reconstruct(5, p), Rational(5));
  // Whatever comes back is congruent and within the bound.
  const double bound = std::sqrt(static_cast<double>(p) / 2);
  for (std::uint64_t a = 1; a < 2000000; a += 9973) {
    const auto q = rational_reconstruct(a, p);
    if (!q) continue;
    const Integer n = q->get_num(), d = q->get_den();
    EXPECT_LE(Integer(abs(n)).get_d(), bound);
    EXPECT_LE(d.get_d(), bound);
    const Integer lhs = ((n - Integer(a) * d) % Integer(p) + Integer(p)) % Integer(p);
    EXPECT_EQ(lhs, 0);
  }
}

TEST(Programs, CatalogueContents) {
  const auto& cat = builtin_catalogue();
  ASSERT_EQ(cat.size(), 15u);
  EXPECT_EQ(cat.front().id, "vw19-octagon");
  EXPECT_EQ(find_program("berge-B1").vars.size(), 8u);
  EXPECT_EQ(find_program("subdiv-A6").vars.size(), 8u);
  EXPECT_EQ(find_program("subdiv-A1").vars.size(), 15u);
  EXPECT_EQ(default_mode(find_program("berge-B1")), RunMode::Exact);
  EXPECT_EQ(default_mode(find_program("subdiv-A1")), RunMode::Modular);
  EXPECT_EQ(kind_of([] { find_program("nosuch"); }), ErrorKind::UnknownProgram);
  for (const auto& p : cat) {
    bool any_assert = false;
    for (const auto& s : p.steps) any_assert = any_assert || is_assertion(s.kind);
    EXPECT_TRUE(any_assert) << p.id;
  }
}

TEST(Programs, LoaderRoundTripAndErrors) {
  const auto path = std::filesystem::path(RESCERT_SOURCE_DIR) / "programs" / "subdiv-A6.elim";
  const auto from_disk = load_program(path.string());
  const auto& builtin = find_program("subdiv-A6");
  EXPECT_EQ(from_disk.id, "subdiv-A6");
  EXPECT_EQ(from_disk.vars, builtin.vars);
  EXPECT_EQ(from_disk.steps, builtin.steps);
  const auto& last = from_disk.steps.back();
  EXPECT_EQ(last.kind, StepKind::AssertFactorization);
  ASSERT_EQ(last.factors.size(), 2u);
  EXPECT_EQ(last.factors[0].text, "y+z");

  EXPECT_EQ(kind_of([] { parse_program("program t\nring x, y\nr := resultant(g9, x, y)\n"); }), ErrorKind::UndefinedName);
  EXPECT_EQ(kind_of([] { parse_program(""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_program("program t\nring x\nf := x +\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_program("program t\nring x\nf := x\nf := x\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { load_program("/nonexistent/x.elim"); }), ErrorKind::Io);
}

TEST(Executor, SmallProgramBothModes) {
  const auto p = parse_program(
      "# demo\nprogram demo\nring x, y, a\n"
      "f := x*y - 1\ng := x^2 + y^2 - 4\nr := resultant(f, g, x)\n"
      "assert_factorization(r, y^4-4*y^2+1)\nassert_degree(r, y, 4)\n"
      "h := resultant(x - a, x^2 - a^2, x)\nassert_equal(h, 0)\n");
  for (RunMode m : {RunMode::Exact, RunMode::Modular}) {
    RunOptions o;
    o.mode = m;
    o.trials = 3;
    const auto rep = run_program(p, o);
    EXPECT_TRUE(rep.pass) << run_mode_name(m) << " " << rep.failure;
    EXPECT_EQ(rep.assertions, 3u);
    EXPECT_EQ(rep.assertions_passed, 3u);
  }
  const auto bad = parse_program("program bad\nring x, y\nr := resultant(x*y - 1, x^2 + y^2 - 4, x)\nassert_factorization(r, y^4-4*y^2)\n");
  for (RunMode m : {RunMode::Exact, RunMode::Modular}) {
    RunOptions o;
    o.mode = m;
    o.trials = 3;
    const auto rep = run_program(bad, o);
    EXPECT_FALSE(rep.pass);
    EXPECT_NE(rep.failure.find("assert_factorization"), std::string::npos) << rep.failure;
    EXPECT_EQ(kind_of([&] { require_pass(rep); }), ErrorKind::StepFailed);
  }
}

TEST(Executor, SmallAppendixProgramsExactAndModularAgree) {
  for (const char* id : {"subdiv-A6", "berge-B1"}) {
    RunOptions o;
    o.mode = RunMode::Exact;
    const auto ex = run_program(find_program(id), o);
    EXPECT_TRUE(ex.pass) << id << ": " << ex.failure;
    o.mode = RunMode::Modular;
    o.trials = 4;
    const auto mod = run_program(find_program(id), o);
    EXPECT_TRUE(mod.pass) << id << ": " << mod.failure;
    EXPECT_LT(mod.sz_bound_per_trial, std::ldexp(1.0, -35));
  }
}
