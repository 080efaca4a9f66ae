#include <random>  // for mt19937
#include <set>     // for set
#include <vector>  // for vector

#include "catch_amalgamated.hpp"  // for TEST_CASE, REQUIRE
#include "test-helpers.hpp"

#include "ualg/algebra.hpp"
#include "ualg/subpower.hpp"
#include "ualg/tuple_set.hpp"

namespace ualg {

  namespace {
    // Subuniverse of A generated by `gens`, by repeated passes over all
    // argument tuples until nothing new appears.
    std::set<Element> naive_subuniverse(FiniteAlgebra const& alg, std::set<Element> gens) {
      for (auto const& op : alg.operations()) {
        if (op.arity == 0) {
          gens.insert(op.table[0]);
        }
      }
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<Element> cur(gens.begin(), gens.end());
        for (size_t k = 0; k < alg.num_operations(); ++k) {
          size_t r = alg.arity(k);
          if (r == 0) {
            continue;
          }
          size_t total = FiniteAlgebra::ipow(cur.size(), r);
          std::vector<Element> args(r);
          for (size_t p = 0; p < total; ++p) {
            size_t rest = p;
            for (size_t i = 0; i < r; ++i) {
              args[i] = cur[rest % cur.size()];
              rest /= cur.size();
            }
            changed |= gens.insert(alg.apply(k, args)).second;
          }
        }
      }
      return gens;
    }

    TupleSet random_set(std::mt19937& rng, size_t width, size_t n, size_t count) {
      TupleSet out(width, n);
      for (size_t c = 0; c < count; ++c) {
        Tuple t = 0;
        for (size_t i = 0; i < width; ++i) {
          t = with(t, i, rng() % n);
        }
        out.insert(t);
      }
      return out;
    }
  }  // namespace

  TEST_CASE("load_algebra accepts the bundled corpus", "[algebra]") {
    auto z4 = test::z4();
    REQUIRE(z4.size() == 4);
    REQUIRE(z4.num_operations() == 3);
    REQUIRE(test::s3().size() == 6);
    REQUIRE(test::l22().size() == 4);
    REQUIRE(test::set4().num_operations() == 0);
    REQUIRE(test::e1().size() == 1);

    auto meet = load_algebra(
        R"({"size":2,"operations":[{"symbol":"^","arity":2,"table":[0,0,0,1]}]})");
    REQUIRE(meet.eval("^", std::vector<Element>{1, 1}) == 1);
  }

  TEST_CASE("load_algebra rejects invalid documents", "[algebra]") {
    REQUIRE_THROWS_WITH(
        load_algebra(R"({"size":2,"operations":[{"symbol":"^","arity":2,"table":[0,0,0]}]})"),
        Catch::Matchers::ContainsSubstring("table length 3 ≠ 4"));
    REQUIRE_THROWS_WITH(
        load_algebra(R"({"size":2,"operations":[{"symbol":"^","arity":2,"table":[0,0,0,2]}]})"),
        Catch::Matchers::ContainsSubstring("operations[0]"));
    REQUIRE_THROWS_WITH(load_algebra(R"({"size":1,"operations":[
          {"symbol":"f","arity":0,"table":[0]},{"symbol":"f","arity":0,"table":[0]}]})"),
                        Catch::Matchers::ContainsSubstring("duplicate"));
    REQUIRE_THROWS_AS(load_algebra("{"), InputError);
    REQUIRE_THROWS_AS(load_algebra(R"({"size":0,"operations":[]})"), InputError);
    REQUIRE_THROWS_AS(load_algebra(R"({"operations":[]})"), InputError);
  }

  TEST_CASE("eval", "[algebra]") {
    auto z4 = test::z4();
    REQUIRE(z4.eval("+", std::vector<Element>{1, 3}) == 0);
    REQUIRE(z4.eval("-", std::vector<Element>{3}) == 1);
    REQUIRE_THROWS_WITH(z4.eval("+", std::vector<Element>{1}),
                        Catch::Matchers::ContainsSubstring("arity mismatch"));
    REQUIRE_THROWS_WITH(z4.eval("h", std::vector<Element>{1}),
                        Catch::Matchers::ContainsSubstring("unknown operation"));
  }

  TEST_CASE("JSON round trip", "[algebra]") {
    auto s3   = test::s3();
    auto copy = algebra_from_json(to_json(s3));
    REQUIRE(to_json(copy) == to_json(s3));
  }

  TEST_CASE("generate_subpower examples", "[algebra]") {
    auto     z4 = test::z4();
    TupleSet gens(2, 4);
    gens.insert(pack({0, 0}));
    REQUIRE(generate_subpower(z4, 2, gens).sorted() == std::vector<Tuple>{pack({0, 0})});
    gens.insert(pack({1, 1}));
    auto out = generate_subpower(z4, 2, gens);
    REQUIRE(out.sorted()
            == std::vector<Tuple>{pack({0, 0}), pack({1, 1}), pack({2, 2}), pack({3, 3})});

    auto set4 = test::set4();
    TupleSet g3(3, 4);
    g3.insert(pack({0, 1, 2}));
    g3.insert(pack({3, 3, 1}));
    REQUIRE(generate_subpower(set4, 3, g3).same_elements(g3));

    REQUIRE(generate_subpower(z4, 2, out).same_elements(out));

    TupleSet wrong(3, 4);
    REQUIRE_THROWS_AS(generate_subpower(z4, 2, wrong), InputError);

    TupleSet one(2, 4);
    one.insert(pack({0, 1}));
    REQUIRE(generate_subpower(z4, 2, one).size() == 4);
    one.insert(pack({1, 0}));
    REQUIRE_THROWS_AS(generate_subpower(z4, 2, one, 5), ResourceError);
    REQUIRE(generate_subpower(z4, 2, one, 16).size() == 16);
  }

  TEST_CASE("generate_subpower agrees with naive subuniverse search", "[algebra]") {
    for (auto const& alg : {test::z4(), test::s3(), test::l22(), test::set4()}) {
      for (Element a = 0; a < alg.size(); ++a) {
        TupleSet g(1, alg.size());
        g.insert(pack({a}));
        auto              fast = generate_subpower(alg, 1, g);
        std::set<Element> got;
        for (auto t : fast) {
          got.insert(get(t, 0));
        }
        REQUIRE(got == naive_subuniverse(alg, {a}));
      }
    }
  }

  TEST_CASE("generate_subpower is extensive, monotone and idempotent", "[algebra]") {
    std::mt19937 rng(20240611);
    for (auto const& alg : {test::z4(), test::s3(), test::l22()}) {
      for (size_t trial = 0; trial < 20; ++trial) {
        auto small = random_set(rng, 2, alg.size(), 1 + rng() % 3);
        auto big   = small;
        for (auto t : random_set(rng, 2, alg.size(), 2)) {
          big.insert(t);
        }
        auto cs = generate_subpower(alg, 2, small);
        auto cb = generate_subpower(alg, 2, big);
        for (auto t : small) {
          REQUIRE(cs.contains(t));
        }
        for (auto t : cs) {
          REQUIRE(cb.contains(t));
        }
        REQUIRE(generate_subpower(alg, 2, cs).same_elements(cs));
        REQUIRE_NOTHROW(as_algebra(SubAlgebraView(alg, cs)));
      }
    }
  }

  TEST_CASE("as_algebra", "[algebra]") {
    auto     z4 = test::z4();
    TupleSet full(2, 4);
    for (Element a = 0; a < 4; ++a) {
      for (Element b = 0; b < 4; ++b) {
        full.insert(pack({a, b}));
      }
    }
    REQUIRE(as_algebra(SubAlgebraView(z4, full)).size() == 16);

    TupleSet diag(2, 4);
    for (Element a = 0; a < 4; ++a) {
      diag.insert(pack({a, a}));
    }
    auto d = as_algebra(SubAlgebraView(z4, diag));
    REQUIRE(d.size() == 4);
    REQUIRE(d.operation(0).table == z4.operation(0).table);

    TupleSet bad(2, 4);
    bad.insert(pack({0, 0}));
    bad.insert(pack({0, 1}));
    REQUIRE_THROWS_WITH(as_algebra(SubAlgebraView(z4, bad)),
                        Catch::Matchers::ContainsSubstring("(0,2)"));
  }

  TEST_CASE("TupleSet", "[algebra]") {
    TupleSet s(3, 5);
    REQUIRE(s.insert(pack({1, 2, 3})));
    REQUIRE_FALSE(s.insert(pack({1, 2, 3})));
    REQUIRE(s.index_of(pack({1, 2, 3})) == 0);
    REQUIRE_FALSE(s.contains(pack({1, 2, 5})));
    REQUIRE(s.space() == 125);

    TupleSet h(8, 200);  // hashed
    REQUIRE(h.space() == 0);
    REQUIRE(h.insert(constant_tuple(199, 8)));
    REQUIRE(h.contains(constant_tuple(199, 8)));
    REQUIRE_THROWS_AS(TupleSet(9, 2), InputError);
  }

}  // namespace ualg
