// The relations Delta_{t0,t1} and Delta_{ti,tj,tl}, each by two routes, and
// the commutator read off from them.

#ifndef UALG_DELTA_HPP_
#define UALG_DELTA_HPP_

#include <array>     // for array
#include <cstddef>   // for size_t
#include <map>       // for map
#include <optional>  // for optional
#include <set>       // for set
#include <string>    // for string
#include <utility>   // for pair
#include <vector>    // for vector

#include "algebra.hpp"
#include "commutator.hpp"
#include "congruence.hpp"
#include "cube.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "subpower.hpp"
#include "tuple_set.hpp"

namespace ualg {

  enum class Route { generated, closure };

  inline std::string to_string(Route r) {
    return r == Route::generated ? "generated" : "closure";
  }

  inline TupleSet sorted_set(std::vector<Tuple> v, size_t width, size_t n) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    TupleSet out(width, n);
    for (auto t : v) {
      out.insert(t);
    }
    return out;
  }

  //! A congruence on a sorted carrier of lines (width 2) or squares
  //! (width 4), together with the axis it relates them across.
  struct DeltaRelation {
    TupleSet  carrier;
    Partition part;
    //! Cubes (or squares) are assembled with the carrier on the two faces
    //! across this axis.
    size_t axis = 0;

    size_t dim() const {
      return carrier.width() == 2 ? 2 : 3;
    }

    //! All (s, t) with s, t in one block, as squares or cubes, sorted.
    TupleSet members() const {
      std::vector<Tuple> out;
      for (auto const& block : part.blocks()) {
        for (auto s : block) {
          for (auto t : block) {
            out.push_back(assemble(dim(), axis, carrier[s], carrier[t]));
          }
        }
      }
      return sorted_set(std::move(out), size_t(1) << dim(), carrier.universe());
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Binary
  ////////////////////////////////////////////////////////////////////////

  //! Delta_{t0,t1}: a congruence on the t0-pairs, read as lines along axis
  //! 0 of squares and related across axis 1.  Transpose with
  //! transpose_squares to put the t0-lines along axis 1.
  inline DeltaRelation delta_binary(Engine&          eng,
                                    Partition const& t0,
                                    Partition const& t1,
                                    Route            route) {
    check_tuple(eng.algebra(), {t0, t1});
    DeltaRelation out;
    out.carrier = pairs_of(t0);
    out.axis    = 1;
    if (route == Route::generated) {
      SubAlgebraView                         view(eng.algebra(), out.carrier);
      std::vector<std::pair<size_t, size_t>> gens;
      for (auto p : pairs_of(t1)) {
        auto x = get(p, 0), y = get(p, 1);
        if (x < y) {
          gens.emplace_back(*view.index_of(pack({x, x})), *view.index_of(pack({y, y})));
        }
      }
      out.part = cg(view, gens);
      return out;
    }
    UnionFind uf(out.carrier.size());
    for (auto m : eng.matrices({t0, t1})) {
      uf.unite(static_cast<std::uint32_t>(*out.carrier.index_of(face(m, 2, 1, 0))),
               static_cast<std::uint32_t>(*out.carrier.index_of(face(m, 2, 1, 1))));
    }
    out.part = Partition::from_union_find(uf);
    return out;
  }

  inline TupleSet transpose_squares(TupleSet const& sq) {
    std::vector<Tuple> v;
    for (auto s : sq) {
      v.push_back(permute_axes(s, 2, {1, 0, 2}));
    }
    return sorted_set(std::move(v), 4, sq.universe());
  }

  //! The squares of Delta_{ti,tj} over the axes {i, j} of a cube, the
  //! ti-lines running along axis i.
  inline TupleSet delta_squares(Engine& eng, Partition const& ti, Partition const& tj,
                                bool ti_first, Route route = Route::generated) {
    auto sq = delta_binary(eng, ti, tj, route).members();
    return ti_first ? sq : transpose_squares(sq);
  }

  ////////////////////////////////////////////////////////////////////////
  // Ternary
  ////////////////////////////////////////////////////////////////////////

  using Order = std::array<size_t, 3>;

  inline void check_order(Order const& o) {
    if (o[0] > 2 || o[1] > 2 || o[2] > 2 || o[0] == o[1] || o[0] == o[2] || o[1] == o[2]) {
      throw InputError("order must be a permutation of 0, 1, 2");
    }
  }

  //! Delta_{ti,tj,tl} for order (i, j, l): a congruence on the squares of
  //! Delta_{ti,tj} (over axes {i, j}) related across axis l.
  //!
  //! The closure route takes complexes of dimensions 2 along i and l,
  //! elongated along j: their corners are the cubes whose two j-faces are
  //! joined by a chain of members of M(T) glued on j-faces.  Pairs of
  //! l-faces of such corners generate the result by transitive closure.
  inline DeltaRelation delta_ternary(Engine&                       eng,
                                     std::vector<Partition> const& T,
                                     Order const&                  order,
                                     Route                         route) {
    if (T.size() != 3) {
      throw InputError("ternary Delta needs three congruences");
    }
    check_tuple(eng.algebra(), T);
    check_order(order);
    auto [i, j, l] = order;
    size_t        n = eng.size();
    DeltaRelation out;
    out.axis = l;
    if (route == Route::generated) {
      out.carrier = delta_squares(eng, T[i], T[j], i < j);
      SubAlgebraView                         view(eng.algebra(), out.carrier);
      std::vector<std::pair<size_t, size_t>> gens;
      for (auto p : pairs_of(T[l])) {
        auto x = get(p, 0), y = get(p, 1);
        if (x < y) {
          gens.emplace_back(*view.index_of(constant_tuple(x, 4)),
                            *view.index_of(constant_tuple(y, 4)));
        }
      }
      out.part = cg(view, gens);
      return out;
    }
    auto const&        M = eng.matrices(T);
    std::vector<Tuple> faces;
    for (auto m : M) {
      faces.push_back(face(m, 3, j, 0));
      faces.push_back(face(m, 3, j, 1));
    }
    auto      il = sorted_set(std::move(faces), 4, n);
    UnionFind chain(il.size());
    for (auto m : M) {
      chain.unite(static_cast<std::uint32_t>(*il.index_of(face(m, 3, j, 0))),
                  static_cast<std::uint32_t>(*il.index_of(face(m, 3, j, 1))));
    }
    std::vector<std::pair<Tuple, Tuple>> R;
    std::vector<Tuple>                   ij;
    for (auto const& block : Partition::from_union_find(chain).blocks()) {
      for (auto s : block) {
        for (auto t : block) {
          auto c = assemble(3, j, il[s], il[t]);
          R.emplace_back(face(c, 3, l, 0), face(c, 3, l, 1));
          ij.push_back(R.back().first);
          ij.push_back(R.back().second);
        }
      }
    }
    out.carrier = sorted_set(std::move(ij), 4, n);
    UnionFind uf(out.carrier.size());
    for (auto const& [p, q] : R) {
      uf.unite(static_cast<std::uint32_t>(*out.carrier.index_of(p)),
               static_cast<std::uint32_t>(*out.carrier.index_of(q)));
    }
    out.part = Partition::from_union_find(uf);
    return out;
  }

  inline std::vector<Order> all_orders() {
    return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  }

  inline std::string to_string(Order const& o) {
    return "(" + std::to_string(o[0]) + "," + std::to_string(o[1]) + "," + std::to_string(o[2])
           + ")";
  }

  //! Delta_{Delta_{ti,tj}, Delta_{ti,tl}} as cubes: the binary Delta on the
  //! algebra of ti-pairs, with the ti-lines placed along axis i, the
  //! pairs of the first congruence across j and the related pairs across l.
  inline TupleSet nested_delta(Engine& eng, std::vector<Partition> const& T, Order const& order) {
    check_tuple(eng.algebra(), T);
    check_order(order);
    auto [i, j, l] = order;
    auto alpha     = delta_binary(eng, T[i], T[j], Route::generated);
    auto beta      = delta_binary(eng, T[i], T[l], Route::generated);
    auto B         = as_algebra(SubAlgebraView(eng.algebra(), alpha.carrier), "lines");
    if (B.size() > max_packed_universe) {
      throw InputError("nested Delta needs at most 256 pairs in the first congruence");
    }
    auto                                   apairs = pairs_of(alpha.part);
    SubAlgebraView                         view(B, apairs);
    std::vector<std::pair<size_t, size_t>> gens;
    for (auto p : pairs_of(beta.part)) {
      auto P = get(p, 0), Q = get(p, 1);
      if (P < Q) {
        gens.emplace_back(*view.index_of(pack({P, P})), *view.index_of(pack({Q, Q})));
      }
    }
    auto               part = cg(view, gens);
    std::vector<Tuple> out;
    auto               line = [&](Element L, size_t gi) { return get(alpha.carrier[L], gi); };
    for (auto const& block : part.blocks()) {
      for (auto s : block) {
        for (auto t : block) {
          Tuple lo = apairs[s], hi = apairs[t], c = 0;
          for (size_t g = 0; g < 8; ++g) {
            Tuple pq = (g >> l & 1) ? hi : lo;
            c        = with(c, g, line(get(pq, g >> j & 1), g >> i & 1));
          }
          out.push_back(c);
        }
      }
    }
    return sorted_set(std::move(out), 8, eng.size());
  }

  ////////////////////////////////////////////////////////////////////////
  // Commutators from Delta
  ////////////////////////////////////////////////////////////////////////

  //! For each pair (x, y): which of the equivalent conditions hold.  Index
  //! 0 is the term-condition commutator, index c - 1 is condition (c).
  struct ConditionTable {
    size_t                          n = 0;
    std::vector<std::vector<bool>>  holds;  // holds[c][x * n + y]
    std::vector<std::string>        names;

    Partition relation(size_t c) const {
      std::vector<std::pair<size_t, size_t>> pairs;
      for (size_t x = 0; x < n; ++x) {
        for (size_t y = 0; y < n; ++y) {
          if (holds[c][x * n + y]) {
            pairs.emplace_back(x, y);
          }
        }
      }
      return Partition::from_pairs(n, pairs);
    }

    //! The first pair (x, y) on which two conditions differ, if any.
    std::optional<std::pair<size_t, size_t>> disagreement() const {
      for (size_t p = 0; p < n * n; ++p) {
        for (size_t c = 1; c < holds.size(); ++c) {
          if (holds[c][p] != holds[0][p]) {
            return std::pair<size_t, size_t>{p / n, p % n};
          }
        }
      }
      return std::nullopt;
    }
  };

  //! The four equivalent conditions on (x, y) for [t0, t1].  Squares are
  //! written by vertex index: (2) sq[y,y,x,y]; (3) sq[y,b,x,b];
  //! (4) sq[c,c,x,y].
  inline ConditionTable binary_conditions(Engine& eng, Partition const& t0, Partition const& t1) {
    size_t         n = eng.size();
    ConditionTable out;
    out.n     = n;
    out.names = {"(1)", "(2)", "(3)", "(4)"};
    out.holds.assign(4, std::vector<bool>(n * n, false));
    auto const& c = commutator(eng, {t0, t1});
    auto        D = delta_binary(eng, t0, t1, Route::generated).members();
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
        out.holds[0][x * n + y] = c.related(x, y);
        out.holds[1][x * n + y] = D.contains(pack({ey, ey, ex, ey}));
      }
    }
    for (auto s : D) {
      if (get(s, 1) == get(s, 3)) {
        out.holds[2][get(s, 2) * n + get(s, 0)] = true;
      }
      if (get(s, 0) == get(s, 1)) {
        out.holds[3][get(s, 2) * n + get(s, 3)] = true;
      }
    }
    return out;
  }

  //! The five equivalent conditions on (x, y) for [t0, t1, t2], read from
  //! Delta_{t0,t1,t2} with axis-2 faces:
  //! (2) x everywhere but y at vertex 7;
  //! (3) faces sq[a0,a1,a0,a1], sq[a2,x,a2,y];
  //! (4) faces sq[b0,b0,b1,b1], sq[y,x,b2,b2];
  //! (5) faces sq[c0,c2,c1,y], sq[c0,c2,c1,x].
  inline ConditionTable ternary_conditions(Engine& eng, std::vector<Partition> const& T) {
    size_t         n = eng.size();
    ConditionTable out;
    out.n     = n;
    out.names = {"(1)", "(2)", "(3)", "(4)", "(5)"};
    out.holds.assign(5, std::vector<bool>(n * n, false));
    auto const& c = commutator(eng, T);
    auto        D = delta_ternary(eng, T, {0, 1, 2}, Route::generated).members();
    for (size_t x = 0; x < n; ++x) {
      for (size_t y = 0; y < n; ++y) {
        out.holds[0][x * n + y] = c.related(x, y);
        Tuple t = with(constant_tuple(static_cast<Element>(x), 8), 7, static_cast<Element>(y));
        out.holds[1][x * n + y] = D.contains(t);
      }
    }
    for (auto m : D) {
      auto v = [&](size_t g) { return get(m, g); };
      if (v(0) == v(2) && v(1) == v(3) && v(4) == v(6)) {
        out.holds[2][v(5) * n + v(7)] = true;
      }
      if (v(0) == v(1) && v(2) == v(3) && v(6) == v(7)) {
        out.holds[3][v(5) * n + v(4)] = true;
      }
      if (v(0) == v(4) && v(1) == v(5) && v(2) == v(6)) {
        out.holds[4][v(7) * n + v(3)] = true;
      }
    }
    return out;
  }

  //! [t0, t1, t2] as the pairs satisfying condition (2).
  inline Partition commutator_via_delta(Engine& eng, std::vector<Partition> const& T) {
    return ternary_conditions(eng, T).relation(1);
  }

}  // namespace ualg

#endif  // UALG_DELTA_HPP_
