#include <set>     // for set
#include <vector>  // for vector

#include "catch_amalgamated.hpp"  // for TEST_CASE, REQUIRE
#include "oracles.hpp"
#include "test-helpers.hpp"

#include "ualg/commutator.hpp"
#include "ualg/delta.hpp"

namespace ualg {

  namespace {
    using Tuple3 = std::vector<Partition>;

    std::vector<Tuple3> lattice_tuples(Engine& eng, size_t k) {
      auto const&         L = eng.lattice();
      std::vector<Tuple3> out{{}};
      for (size_t i = 0; i < k; ++i) {
        std::vector<Tuple3> next;
        for (auto const& T : out) {
          for (auto const& p : L) {
            auto U = T;
            U.push_back(p);
            next.push_back(U);
          }
        }
        out = std::move(next);
      }
      return out;
    }

    // Oracle Delta for order (i, j, l): built on (T_i, T_j, T_l) with axes
    // 0, 1, 2 and moved to axes i, j, l.
    std::set<oracle::Vec> oracle_ternary(FiniteAlgebra const& alg, Tuple3 const& T,
                                         Order const& o) {
      std::set<oracle::Vec> out;
      for (auto const& v : oracle::delta_ternary(alg, {T[o[0]], T[o[1]], T[o[2]]})) {
        oracle::Vec w(8);
        for (size_t g = 0; g < 8; ++g) {
          w[(g & 1) << o[0] | (g >> 1 & 1) << o[1] | (g >> 2 & 1) << o[2]] = v[g];
        }
        out.insert(w);
      }
      return out;
    }
  }  // namespace

  TEST_CASE("binary Delta matches the congruence oracle", "[delta]") {
    for (auto alg : {test::z4(), test::s3(), test::l22(), test::set4()}) {
      Engine eng(alg);
      for (auto const& T : lattice_tuples(eng, 2)) {
        INFO(alg.name() << " " << tuple_key(T));
        auto expect = oracle::delta_binary(alg, T[0], T[1]);
        for (auto route : {Route::generated, Route::closure}) {
          auto D = delta_binary(eng, T[0], T[1], route);
          REQUIRE(D.axis == 1);
          REQUIRE(test::as_set(D.carrier) == test::as_set(pairs_of(T[0])));
          REQUIRE(test::as_set(D.members()) == expect);
        }
      }
    }
  }

  TEST_CASE("binary Delta is symmetric under transposition", "[delta]") {
    for (auto alg : {test::z4(), test::s3(), test::l22(), test::set4()}) {
      Engine eng(alg);
      for (auto const& T : lattice_tuples(eng, 2)) {
        auto a = delta_binary(eng, T[0], T[1], Route::generated).members();
        auto b = delta_binary(eng, T[1], T[0], Route::generated).members();
        INFO(alg.name() << " " << tuple_key(T));
        REQUIRE(test::as_set(a) == test::as_set(transpose_squares(b)));
      }
    }
  }

  TEST_CASE("ternary Delta matches the congruence oracle", "[delta]") {
    for (auto alg : {test::z4(), test::s3(), test::l22()}) {
      Engine eng(alg);
      for (auto const& T : lattice_tuples(eng, 3)) {
        for (auto const& o : all_orders()) {
          // The oracle is cubic in the number of squares.
          if (delta_binary(eng, T[o[0]], T[o[1]], Route::generated).members().size() > 200) {
            continue;
          }
          INFO(alg.name() << " " << tuple_key(T) << " " << to_string(o));
          auto expect = oracle_ternary(alg, T, o);
          for (auto route : {Route::generated, Route::closure}) {
            REQUIRE(test::as_set(delta_ternary(eng, T, o, route).members()) == expect);
          }
          REQUIRE(test::as_set(nested_delta(eng, T, o)) == expect);
        }
      }
    }
  }

  TEST_CASE("ternary Delta does not depend on order or route", "[delta]") {
    Engine      s3(test::s3());
    auto const& S = s3.lattice();
    for (auto const& T : {Tuple3{S[2], S[2], S[2]}, Tuple3{S[1], S[2], S[2]},
                          Tuple3{S[2], S[1], S[0]}}) {
      auto base = test::as_set(delta_ternary(s3, T, {0, 1, 2}, Route::generated).members());
      for (auto const& o : all_orders()) {
        INFO(tuple_key(T) << " " << to_string(o));
        REQUIRE(test::as_set(delta_ternary(s3, T, o, Route::generated).members()) == base);
        REQUIRE(test::as_set(delta_ternary(s3, T, o, Route::closure).members()) == base);
        REQUIRE(test::as_set(nested_delta(s3, T, o)) == base);
      }
    }
    REQUIRE_THROWS_AS(delta_ternary(s3, {S[1], S[1]}, {0, 1, 2}, Route::generated), InputError);
    REQUIRE_THROWS_AS(delta_ternary(s3, {S[1], S[1], S[1]}, {0, 1, 1}, Route::generated),
                      InputError);
  }

  TEST_CASE("condition tables agree with the commutator", "[delta]") {
    for (auto alg : {test::z4(), test::s3(), test::l22()}) {
      Engine eng(alg);
      for (auto const& T : lattice_tuples(eng, 2)) {
        auto t = binary_conditions(eng, T[0], T[1]);
        INFO(alg.name() << " " << tuple_key(T));
        REQUIRE(!t.disagreement());
        REQUIRE(t.relation(0) == commutator(eng, T));
      }
      for (auto const& T : lattice_tuples(eng, 3)) {
        auto t = ternary_conditions(eng, T);
        INFO(alg.name() << " " << tuple_key(T));
        REQUIRE(t.names.size() == 5);
        REQUIRE(!t.disagreement());
        REQUIRE(commutator_via_delta(eng, T) == commutator(eng, T));
      }
    }
  }

  TEST_CASE("condition (2) by hand", "[delta]") {
    Engine      s3(test::s3());
    auto const& S = s3.lattice();
    auto        D = delta_ternary(s3, {S[2], S[2], S[2]}, {0, 1, 2}, Route::generated).members();
    // x everywhere but y at the top vertex.
    REQUIRE(D.contains(with(constant_tuple(0, 8), 7, 1)));
    REQUIRE(!D.contains(with(constant_tuple(0, 8), 7, 3)));
    REQUIRE(commutator_via_delta(s3, {S[2], S[2], S[2]}).to_string() == "0 1 2 | 3 4 5");
  }

}  // namespace ualg
