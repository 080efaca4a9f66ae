#include <string>  // for string
#include <vector>  // for vector

#include "catch_amalgamated.hpp"  // for TEST_CASE, REQUIRE
#include "test-helpers.hpp"

#include "ualg/verify.hpp"

namespace ualg {

  namespace {
    void require_all(SuiteReport const& r, Verdict v, size_t count = check_names().size()) {
      REQUIRE(r.checks.size() == count);
      for (auto const& c : r.checks) {
        INFO(r.algebra << " " << c.name << ": " << to_string(c.verdict) << " " << c.note);
        REQUIRE(c.verdict == v);
      }
    }
  }  // namespace

  TEST_CASE("suite passes on modular algebras", "[verify]") {
    for (auto alg : {test::z4(), test::l22(), test::e1()}) {
      Engine eng(alg);
      auto   r = run_suite(eng);
      REQUIRE(r.modular);
      require_all(r, Verdict::pass);
      REQUIRE(!r.any(Verdict::fail));
    }
  }

  TEST_CASE("suite on a non-modular algebra", "[verify]") {
    Engine eng(test::set4());
    auto   r = run_suite(eng);
    REQUIRE(!r.modular);
    require_all(r, Verdict::hypothesis_not_met);
    // Lattice checks still ran over 0 and 1.
    REQUIRE(r.checks[0].cases == 4);
    REQUIRE(r.checks[0].note.find("scope limited") != std::string::npos);
  }

  TEST_CASE("suite output is deterministic", "[verify]") {
    SuiteOptions opts;
    opts.samples = 20;
    Engine a(test::z4()), b(test::z4());
    auto   ja = to_json(run_suite(a, opts)).dump();
    REQUIRE(ja == to_json(run_suite(b, opts)).dump());
    REQUIRE(ja.find("time") == std::string::npos);
    opts.seed = 7;
    require_all(run_suite(a, opts), Verdict::pass);
    SuiteOptions one;
    one.checks = {"delta-route"};
    auto text  = to_text(run_suite(a, one));
    REQUIRE(text == "algebra Z4 (size 4, modular)\ndelta-route: pass (27 cases)\n");
  }

  TEST_CASE("explicit scope", "[verify]") {
    auto         alg = test::s3();
    Engine       eng(alg);
    auto const&  S = eng.lattice();
    SuiteOptions opts;
    opts.checks = {"tc-vs-ctr", "delta-commutator", "bin-delta-commutator"};
    opts.tuples = {{S[2], S[2], S[2]}, {S[1], S[2], S[1]}};
    auto r      = run_suite(eng, opts);
    require_all(r, Verdict::pass, 3);
  }

  TEST_CASE("failures carry replayable witnesses", "[verify]") {
    auto         alg = test::z4();
    Engine       eng(alg);
    SuiteOptions opts;
    opts.checks     = {"wobbly"};
    opts.difference = parse_term("x");
    auto r          = run_suite(eng, opts);
    REQUIRE(r.checks.size() == 1);
    auto const& c = r.checks[0];
    REQUIRE(c.verdict == Verdict::fail);
    REQUIRE(c.witness.at("check") == "wobbly");
    REQUIRE(c.witness.at("clause") == "d(x,x,y) = y");

    auto doc = to_json(r);
    auto ws  = witnesses_in(doc);
    REQUIRE(ws.size() == 1);
    REQUIRE(witnesses_in(ws[0]).size() == 1);
    auto replay = replay_options(ws[0], alg);
    REQUIRE(replay.checks == std::vector<std::string>{"wobbly"});
    auto again = run_suite(eng, replay);
    REQUIRE(again.checks[0].witness == c.witness);

    // The projection z is already rejected as a difference term.
    opts.difference = parse_term("z");
    auto z          = run_suite(eng, opts);
    REQUIRE(z.checks[0].verdict == Verdict::fail);
    REQUIRE(z.checks[0].witness.at("part") == "difference");

    REQUIRE_THROWS_AS(replay_options(nlohmann::json{{"d", "x"}}, alg), InputError);
  }

  TEST_CASE("lines-preserved samples replay one at a time", "[verify]") {
    Engine       eng(test::z4());
    SuiteOptions opts;
    opts.checks  = {"lines-preserved"};
    opts.samples = 5;
    auto all     = run_suite(eng, opts);
    REQUIRE(all.checks[0].verdict == Verdict::pass);
    size_t total = 0;
    for (size_t s = 0; s < 5; ++s) {
      opts.sample = s;
      total += run_suite(eng, opts).checks[0].cases;
    }
    REQUIRE(total == all.checks[0].cases);
  }

  TEST_CASE("suite input errors", "[verify]") {
    Engine eng(test::z4());
    REQUIRE_THROWS_AS(run_suite(eng, {.checks = {"no-such-check"}}), InputError);
    SuiteOptions opts;
    opts.checks = {"lines-preserved"};
    opts.day    = DaySequence{Term::var("x"), Term::var("u")};
    REQUIRE_THROWS_AS(run_suite(eng, opts), InputError);
  }

}  // namespace ualg
