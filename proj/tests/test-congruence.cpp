#include <functional>  // for function
#include <set>         // for set
#include <vector>      // for vector

#include "catch_amalgamated.hpp"  // for TEST_CASE, REQUIRE
#include "test-helpers.hpp"

#include "ualg/congruence.hpp"

namespace ualg {

  namespace {
    using Relation = std::vector<std::vector<bool>>;

    Relation relation_of(Partition const& p) {
      Relation r(p.size(), std::vector<bool>(p.size()));
      for (size_t a = 0; a < p.size(); ++a) {
        for (size_t b = 0; b < p.size(); ++b) {
          r[a][b] = p.related(a, b);
        }
      }
      return r;
    }

    // Compatibility with every operation, over all pairs of related argument
    // tuples (not just single-position changes).
    bool oracle_is_congruence(FiniteAlgebra const& alg, Partition const& p) {
      size_t n = alg.size();
      for (size_t k = 0; k < alg.num_operations(); ++k) {
        size_t r     = alg.arity(k);
        size_t total = FiniteAlgebra::ipow(n, r);
        std::vector<Element> a(r), b(r);
        for (size_t pa = 0; pa < total; ++pa) {
          for (size_t pb = 0; pb < total; ++pb) {
            size_t ra = pa, rb = pb;
            bool   ok = true;
            for (size_t i = 0; i < r; ++i) {
              a[i] = ra % n;
              b[i] = rb % n;
              ra /= n;
              rb /= n;
              ok &= p.related(a[i], b[i]);
            }
            if (ok && !p.related(alg.apply(k, a), alg.apply(k, b))) {
              return false;
            }
          }
        }
      }
      return true;
    }

    std::vector<Partition> all_partitions(size_t n) {
      std::vector<Partition> out;
      std::vector<size_t>    block(n, 0);
      std::function<void(size_t, size_t)> rec = [&](size_t i, size_t used) {
        if (i == n) {
          std::vector<std::vector<size_t>> blocks(used);
          for (size_t x = 0; x < n; ++x) {
            blocks[block[x]].push_back(x);
          }
          out.push_back(Partition::from_blocks(n, blocks));
          return;
        }
        for (size_t b = 0; b <= used; ++b) {
          block[i] = b;
          rec(i + 1, std::max(used, b + 1));
        }
      };
      rec(0, 0);
      return out;
    }

    std::vector<Partition> oracle_congruences(FiniteAlgebra const& alg) {
      std::vector<Partition> out;
      for (auto const& p : all_partitions(alg.size())) {
        if (oracle_is_congruence(alg, p)) {
          out.push_back(p);
        }
      }
      return out;
    }

    Partition oracle_cg(FiniteAlgebra const&                          alg,
                        std::vector<std::pair<size_t, size_t>> const& pairs) {
      auto best = Partition::top(alg.size());
      for (auto const& p : oracle_congruences(alg)) {
        bool contains = true;
        for (auto [a, b] : pairs) {
          contains &= p.related(a, b);
        }
        if (contains) {
          best = meet(best, p);
        }
      }
      return best;
    }

    Relation rel_meet(Relation const& x, Relation const& y) {
      Relation r = x;
      for (size_t a = 0; a < r.size(); ++a) {
        for (size_t b = 0; b < r.size(); ++b) {
          r[a][b] = x[a][b] && y[a][b];
        }
      }
      return r;
    }

    Relation rel_join(Relation const& x, Relation const& y) {
      Relation r = x;
      size_t   n = r.size();
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          r[a][b] = x[a][b] || y[a][b];
        }
      }
      for (size_t k = 0; k < n; ++k) {
        for (size_t a = 0; a < n; ++a) {
          for (size_t b = 0; b < n; ++b) {
            r[a][b] = r[a][b] || (r[a][k] && r[k][b]);
          }
        }
      }
      return r;
    }

    // Pentagon sublattice 0' < a < c < 1', b with a ^ b = c ^ b = 0' and
    // a v b = c v b = 1', searched over all 5-tuples.
    bool oracle_has_n5(std::vector<Partition> const& lat) {
      std::vector<Relation> rel;
      for (auto const& p : lat) {
        rel.push_back(relation_of(p));
      }
      auto idx = [&](Relation const& r) {
        for (size_t i = 0; i < rel.size(); ++i) {
          if (rel[i] == r) {
            return i;
          }
        }
        return rel.size();
      };
      auto leq = [&](size_t i, size_t j) { return rel_meet(rel[i], rel[j]) == rel[i]; };
      size_t m = rel.size();
      for (size_t a = 0; a < m; ++a) {
        for (size_t c = 0; c < m; ++c) {
          if (a == c || !leq(a, c)) {
            continue;
          }
          for (size_t b = 0; b < m; ++b) {
            size_t ab = idx(rel_meet(rel[a], rel[b])), cb = idx(rel_meet(rel[c], rel[b]));
            size_t jab = idx(rel_join(rel[a], rel[b])), jcb = idx(rel_join(rel[c], rel[b]));
            if (ab == cb && jab == jcb) {
              return true;
            }
          }
        }
      }
      return false;
    }
  }  // namespace

  TEST_CASE("is_congruence examples", "[congruence]") {
    auto z4 = test::z4();
    REQUIRE(is_congruence(z4, Partition::from_blocks(4, {{0, 2}, {1, 3}})).holds);
    auto bad = Partition::from_blocks(4, {{0, 1}, {2}, {3}});
    auto chk = is_congruence(z4, bad);
    REQUIRE_FALSE(chk.holds);
    auto const& w  = *chk.witness;
    auto        k  = *z4.find(w.symbol);
    REQUIRE(w.a.size() == z4.arity(k));
    for (size_t i = 0; i < w.a.size(); ++i) {
      REQUIRE(bad.related(w.a[i], w.b[i]));
    }
    REQUIRE_FALSE(bad.related(z4.apply(k, w.a), z4.apply(k, w.b)));
    for (auto const& alg : {test::z4(), test::s3(), test::set4(), test::e1()}) {
      REQUIRE(is_congruence(alg, Partition::bottom(alg.size())).holds);
    }
    REQUIRE_THROWS_AS(is_congruence(z4, Partition::bottom(3)), InputError);
  }

  TEST_CASE("is_congruence agrees with the full compatibility check", "[congruence]") {
    for (auto const& alg : {test::z4(), test::s3(), test::l22(), test::set4()}) {
      for (auto const& p : all_partitions(alg.size())) {
        REQUIRE(is_congruence(alg, p).holds == oracle_is_congruence(alg, p));
      }
    }
  }

  TEST_CASE("cg examples", "[congruence]") {
    auto z4 = test::z4();
    REQUIRE(cg(z4, {{0, 2}}) == Partition::from_blocks(4, {{0, 2}, {1, 3}}));
    REQUIRE(cg(z4, {{0, 1}}) == Partition::top(4));
    REQUIRE(cg(z4, {}) == Partition::bottom(4));
    REQUIRE_THROWS_AS(cg(z4, {{0, 4}}), InputError);
  }

  TEST_CASE("cg is the least congruence containing the pairs", "[congruence]") {
    for (auto const& alg : {test::z4(), test::s3(), test::l22(), test::set4()}) {
      size_t n = alg.size();
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
          REQUIRE(cg(alg, {{a, b}}) == oracle_cg(alg, {{a, b}}));
          for (size_t c = 0; c < n; ++c) {
            size_t d = (c + 1) % n;
            REQUIRE(cg(alg, {{a, b}, {c, d}}) == oracle_cg(alg, {{a, b}, {c, d}}));
          }
        }
      }
    }
  }

  TEST_CASE("join and meet", "[congruence]") {
    auto eta = Partition::from_blocks(4, {{0, 2}, {1, 3}});
    auto mu  = Partition::from_blocks(4, {{0, 1}, {2, 3}});
    REQUIRE(meet(eta, Partition::top(4)) == eta);
    REQUIRE(join(eta, mu) == Partition::top(4));
    REQUIRE(join(eta, Partition::bottom(4)) == eta);
    REQUIRE(meet(eta, mu) == Partition::bottom(4));
    REQUIRE(relation_of(join(eta, mu)) == rel_join(relation_of(eta), relation_of(mu)));
    REQUIRE_THROWS_AS(join(eta, Partition::bottom(3)), InputError);
    REQUIRE(eta.to_string() == "0 2 | 1 3");
  }

  TEST_CASE("con_lattice examples", "[congruence]") {
    auto lz = con_lattice(test::z4());
    REQUIRE(lz.size() == 3);
    REQUIRE(lz[0] == Partition::bottom(4));
    REQUIRE(lz[1] == Partition::from_blocks(4, {{0, 2}, {1, 3}}));
    REQUIRE(lz[2] == Partition::top(4));

    auto ls = con_lattice(test::s3());
    REQUIRE(ls.size() == 3);
    REQUIRE(ls[1] == Partition::from_blocks(6, {{0, 1, 2}, {3, 4, 5}}));

    auto le = con_lattice(test::e1());
    REQUIRE(le.size() == 1);

    REQUIRE(con_lattice(test::set4()).size() == 15);
    REQUIRE(con_lattice(test::l22()).size() == 4);
  }

  TEST_CASE("con_lattice equals the brute-force congruence set", "[congruence]") {
    for (auto const& alg : {test::z4(), test::s3(), test::l22(), test::set4(), test::e1()}) {
      auto               lat = con_lattice(alg);
      std::set<std::vector<std::uint32_t>> got, want;
      for (auto const& p : lat) {
        got.insert(p.reps());
        REQUIRE(is_congruence(alg, p).holds);
      }
      for (auto const& p : oracle_congruences(alg)) {
        want.insert(p.reps());
      }
      REQUIRE(got == want);
      for (size_t i = 0; i < lat.size(); ++i) {
        for (size_t j = 0; j < lat.size(); ++j) {
          REQUIRE(lat[lat.join(i, j)] == join(lat[i], lat[j]));
          REQUIRE(lat[lat.meet(i, j)] == meet(lat[i], lat[j]));
        }
      }
      REQUIRE(lat[lat.bottom()].is_bottom());
      REQUIRE(lat[lat.top()].is_top());
    }
  }

  TEST_CASE("is_modular agrees with pentagon search", "[congruence]") {
    for (auto const& alg : {test::z4(), test::s3(), test::l22(), test::e1()}) {
      auto lat = con_lattice(alg);
      REQUIRE(is_modular(lat).holds);
      REQUIRE_FALSE(oracle_has_n5(lat.elements()));
    }
    auto lat = con_lattice(test::set4());
    auto rep = is_modular(lat);
    REQUIRE_FALSE(rep.holds);
    REQUIRE(oracle_has_n5(lat.elements()));
    auto [o, a, c, b, t] = *rep.pentagon;
    REQUIRE(a != c);
    REQUIRE(lat.leq(a, c));
    REQUIRE(lat.meet(a, b) == o);
    REQUIRE(lat.meet(c, b) == o);
    REQUIRE(lat.join(a, b) == t);
    REQUIRE(lat.join(c, b) == t);
  }

  TEST_CASE("congruence text syntax", "[congruence]") {
    auto z4  = test::z4();
    auto lat = con_lattice(z4);
    auto eta = Partition::from_blocks(4, {{0, 2}, {1, 3}});
    REQUIRE(parse_congruence("0 2 | 1 3", z4) == eta);
    REQUIRE(parse_congruence("gen: 0-2", z4) == eta);
    REQUIRE(parse_congruence("gen: 0-2, 1-3", z4) == eta);
    REQUIRE(parse_congruence("zero", z4).is_bottom());
    REQUIRE(parse_congruence("one", z4).is_top());
    REQUIRE(parse_congruence("con[1]", z4, &lat) == eta);
    REQUIRE_THROWS_AS(parse_congruence("0 1 | 2 | 3", z4), InputError);
    REQUIRE_THROWS_AS(parse_congruence("con[7]", z4, &lat), InputError);
    REQUIRE_THROWS_AS(parse_congruence("0 9", z4), InputError);
    REQUIRE(lat.name(0) == "0");
    REQUIRE(lat.name(1) == "con[1]");
    REQUIRE(lat.name(2) == "1");
  }

}  // namespace ualg
