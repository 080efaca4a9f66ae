// The algebras of T-matrices M(theta_0, ..., theta_{k-1}) for k = 2, 3.

#ifndef UALG_MATRIX_HPP_
#define UALG_MATRIX_HPP_

#include <algorithm>  // for sort
#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <utility>   // for pair
#include <vector>    // for vector

#include "algebra.hpp"
#include "congruence.hpp"
#include "cube.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "subpower.hpp"
#include "tuple_set.hpp"

namespace ualg {

  //! The pairs of a congruence as tuples (a, b), in increasing packed order.
  inline TupleSet pairs_of(Partition const& theta) {
    TupleSet out(2, theta.size());
    std::vector<Tuple> v;
    for (auto const& block : theta.blocks()) {
      for (auto a : block) {
        for (auto b : block) {
          v.push_back(pack({static_cast<Element>(a), static_cast<Element>(b)}));
        }
      }
    }
    std::sort(v.begin(), v.end());
    for (auto t : v) {
      out.insert(t);
    }
    return out;
  }

  inline void check_tuple(FiniteAlgebra const& alg, std::vector<Partition> const& T) {
    if (T.size() < 2 || T.size() > 3) {
      throw InputError("congruence tuples must have 2 or 3 entries, got "
                       + std::to_string(T.size()));
    }
    if (alg.size() > max_packed_universe) {
      throw InputError("matrix algebras need a universe of size at most 256");
    }
    for (auto const& t : T) {
      if (t.size() != alg.size()) {
        throw InputError("congruence size does not match algebra size");
      }
    }
  }

  //! Sg of the generators cube_i^k(a, b), (a, b) in theta_i, by plain
  //! closure in A^(2^k).
  inline TupleSet matrix_algebra_closure(FiniteAlgebra const&          alg,
                                         std::vector<Partition> const& T,
                                         size_t cap = default_closure_cap) {
    check_tuple(alg, T);
    size_t   k = T.size();
    TupleSet gens(size_t(1) << k, alg.size());
    for (size_t i = 0; i < k; ++i) {
      for (auto p : pairs_of(T[i])) {
        gens.insert(cube_generator(k, i, get(p, 0), get(p, 1)));
      }
    }
    return generate_subpower(alg, size_t(1) << k, gens, cap).canonical();
  }

  //! Pairs (s, t) of a congruence on a closed tuple set, glued along `axis`
  //! into tuples of dimension k.
  inline TupleSet glue_blocks(SubAlgebraView const& view,
                              Partition const&      part,
                              size_t                k,
                              size_t                axis,
                              size_t                n,
                              size_t                cap) {
    std::vector<Tuple> out;
    for (auto const& block : part.blocks()) {
      if (out.size() + block.size() * block.size() > cap) {
        throw ResourceError("matrix algebra exceeded cap of " + std::to_string(cap)
                            + " tuples");
      }
      for (auto s : block) {
        for (auto t : block) {
          out.push_back(assemble(k, axis, view.tuple(s), view.tuple(t)));
        }
      }
    }
    std::sort(out.begin(), out.end());
    TupleSet result(size_t(1) << k, n);
    for (auto t : out) {
      result.insert(t);
    }
    return result;
  }

  //! M(T) for an algebra with a Mal'cev term.  Read across the last axis,
  //! M(T) is a reflexive compatible relation on M(T minus its last entry)
  //! (a line algebra when k = 2), so it is a congruence there, namely the
  //! one generated by the pairs of constant faces (x, y), x theta_{k-1} y.
  inline TupleSet matrix_algebra_malcev(FiniteAlgebra const&          alg,
                                        std::vector<Partition> const& T,
                                        size_t cap = default_closure_cap) {
    check_tuple(alg, T);
    size_t   k = T.size();
    TupleSet base = k == 2 ? pairs_of(T[0])
                           : matrix_algebra_malcev(alg, {T[0], T[1]}, cap);
    SubAlgebraView                         view(alg, base);
    size_t                                 w = size_t(1) << (k - 1);
    std::vector<std::pair<size_t, size_t>> gens;
    for (auto p : pairs_of(T[k - 1])) {
      auto a = get(p, 0), b = get(p, 1);
      if (a < b) {
        gens.emplace_back(*view.index_of(constant_tuple(a, w)),
                          *view.index_of(constant_tuple(b, w)));
      }
    }
    return glue_blocks(view, cg(view, gens), k, k - 1, alg.size(), cap);
  }

  //! M(T) for an algebra with a majority term.  Such a subpower consists
  //! of the tuples whose projections onto every pair of coordinates lie in
  //! the corresponding projection of the subpower (Baker-Pixley), and those
  //! projections are generated by the projected generators.
  inline TupleSet matrix_algebra_majority(FiniteAlgebra const&          alg,
                                          std::vector<Partition> const& T,
                                          size_t cap = default_closure_cap) {
    check_tuple(alg, T);
    size_t k = T.size(), w = size_t(1) << k, n = alg.size();
    std::vector<Tuple> gens;
    for (size_t i = 0; i < k; ++i) {
      for (auto p : pairs_of(T[i])) {
        gens.push_back(cube_generator(k, i, get(p, 0), get(p, 1)));
      }
    }
    // allowed[q][p] holds the pairs (t_p, t_q), p < q.
    std::vector<std::vector<std::vector<bool>>> allowed(w);
    for (size_t q = 1; q < w; ++q) {
      for (size_t p = 0; p < q; ++p) {
        TupleSet g(2, n);
        for (auto t : gens) {
          g.insert(pack({get(t, p), get(t, q)}));
        }
        std::vector<bool> table(n * n, false);
        for (auto t : generate_subpower(alg, 2, g, cap)) {
          table[get(t, 0) * n + get(t, 1)] = true;
        }
        allowed[q].push_back(std::move(table));
      }
    }
    std::vector<Tuple> out;
    std::vector<Element> cur(w);
    auto dfs = [&](auto& self, size_t q) -> void {
      if (q == w) {
        if (out.size() >= cap) {
          throw ResourceError("matrix algebra exceeded cap of " + std::to_string(cap)
                              + " tuples");
        }
        out.push_back(pack(cur));
        return;
      }
      for (Element v = 0; v < n; ++v) {
        bool ok = true;
        for (size_t p = 0; p < q && ok; ++p) {
          ok = allowed[q][p][cur[p] * n + v];
        }
        if (ok) {
          cur[q] = v;
          self(self, q + 1);
        }
      }
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end());
    TupleSet result(w, n);
    for (auto t : out) {
      result.insert(t);
    }
    return result;
  }

}  // namespace ualg

#endif  // UALG_MATRIX_HPP_
