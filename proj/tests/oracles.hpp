// Slow reference implementations used to cross-check the library.  They
// work on plain vectors and share no code with the engine beyond the
// operation tables.

#ifndef UALG_TESTS_ORACLES_HPP_
#define UALG_TESTS_ORACLES_HPP_

#include <algorithm>  // for all_of
#include <cstddef>    // for size_t
#include <map>        // for map
#include <set>        // for set
#include <utility>    // for pair
#include <vector>     // for vector

#include "ualg/algebra.hpp"
#include "ualg/partition.hpp"

namespace ualg::oracle {

  using Vec = std::vector<Element>;

  inline std::vector<Vec> all_argument_tuples(std::vector<Vec> const& elems, size_t r) {
    std::vector<Vec> out{{}};
    for (size_t i = 0; i < r; ++i) {
      std::vector<Vec> next;
      for (auto const& prefix : out) {
        for (size_t e = 0; e < elems.size(); ++e) {
          auto v = prefix;
          v.push_back(static_cast<Element>(e));
          next.push_back(std::move(v));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  inline Vec apply_componentwise(FiniteAlgebra const&    alg,
                                 size_t                  k,
                                 std::vector<Vec> const& args,
                                 size_t                  width) {
    Vec                  out(width);
    std::vector<Element> a(args.size());
    for (size_t c = 0; c < width; ++c) {
      for (size_t i = 0; i < args.size(); ++i) {
        a[i] = args[i][c];
      }
      out[c] = alg.apply(k, a);
    }
    return out;
  }

  //! Subuniverse of A^width generated by gens: apply every operation to
  //! every argument tuple until nothing new appears.
  inline std::set<Vec> closure(FiniteAlgebra const& alg, std::set<Vec> const& gens, size_t width) {
    std::set<Vec> cur = gens;
    while (true) {
      std::vector<Vec> elems(cur.begin(), cur.end());
      std::set<Vec>    next = cur;
      for (size_t k = 0; k < alg.num_operations(); ++k) {
        size_t r     = alg.arity(k);
        size_t total = 1;
        for (size_t i = 0; i < r; ++i) {
          total *= elems.size();
        }
        std::vector<Vec> args(r);
        for (size_t p = 0; p < total; ++p) {
          size_t q = p;
          for (size_t i = 0; i < r; ++i) {
            args[i] = elems[q % elems.size()];
            q /= elems.size();
          }
          next.insert(apply_componentwise(alg, k, args, width));
        }
      }
      if (next.size() == cur.size()) {
        return cur;
      }
      cur = std::move(next);
    }
  }

  inline Vec cube(size_t k, size_t i, Element a, Element b) {
    Vec out(size_t(1) << k);
    for (size_t g = 0; g < out.size(); ++g) {
      out[g] = (g >> i & 1) ? b : a;
    }
    return out;
  }

  inline std::set<Vec> matrices(FiniteAlgebra const& alg, std::vector<Partition> const& T) {
    size_t        k = T.size();
    std::set<Vec> gens;
    for (size_t i = 0; i < k; ++i) {
      for (size_t a = 0; a < alg.size(); ++a) {
        for (size_t b = 0; b < alg.size(); ++b) {
          if (T[i].related(a, b)) {
            gens.insert(cube(k, i, static_cast<Element>(a), static_cast<Element>(b)));
          }
        }
      }
    }
    return closure(alg, gens, size_t(1) << k);
  }

  //! C(T; j; delta) straight from the definition.
  inline bool term_condition(std::set<Vec> const& M, size_t k, size_t j, Partition const& delta) {
    size_t full = (size_t(1) << k) - 1, step = size_t(1) << j;
    for (auto const& m : M) {
      bool supporting = true;
      for (size_t v = 0; v <= full; ++v) {
        if (!(v & step) && v != (full ^ step) && !delta.related(m[v], m[v + step])) {
          supporting = false;
        }
      }
      if (supporting && !delta.related(m[full ^ step], m[full])) {
        return false;
      }
    }
    return true;
  }

  //! The congruence of the subalgebra `carrier` of A^w generated by index
  //! pairs: equivalence closure alternating with closure under single-place
  //! translations by basic operations.
  inline std::vector<std::vector<bool>> congruence(FiniteAlgebra const&                   alg,
                                                   std::vector<Vec> const&                carrier,
                                                   std::vector<std::pair<size_t, size_t>> gens) {
    size_t                 N = carrier.size();
    size_t                 w = carrier.empty() ? 0 : carrier[0].size();
    std::map<Vec, size_t>  index;
    for (size_t i = 0; i < N; ++i) {
      index[carrier[i]] = i;
    }
    std::vector<std::vector<bool>> R(N, std::vector<bool>(N, false));
    for (size_t i = 0; i < N; ++i) {
      R[i][i] = true;
    }
    for (auto [a, b] : gens) {
      R[a][b] = R[b][a] = true;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      // Transitive closure.
      for (size_t m = 0; m < N; ++m) {
        for (size_t a = 0; a < N; ++a) {
          if (!R[a][m]) {
            continue;
          }
          for (size_t b = 0; b < N; ++b) {
            if (R[m][b] && !R[a][b]) {
              R[a][b] = true;
            }
          }
        }
      }
      for (size_t k = 0; k < alg.num_operations(); ++k) {
        size_t r = alg.arity(k);
        if (r == 0) {
          continue;
        }
        auto others = all_argument_tuples(carrier, r - 1);
        for (size_t pos = 0; pos < r; ++pos) {
          for (auto const& o : others) {
            std::vector<Vec> args(r);
            for (size_t i = 0, t = 0; i < r; ++i) {
              if (i != pos) {
                args[i] = carrier[o[t++]];
              }
            }
            std::vector<size_t> image(N);
            for (size_t a = 0; a < N; ++a) {
              args[pos] = carrier[a];
              image[a]  = index.at(apply_componentwise(alg, k, args, w));
            }
            for (size_t a = 0; a < N; ++a) {
              for (size_t b = 0; b < N; ++b) {
                if (R[a][b] && !R[image[a]][image[b]]) {
                  R[image[a]][image[b]] = true;
                  changed               = true;
                }
              }
            }
          }
        }
      }
    }
    return R;
  }

  //! Delta_{t0,t1} as squares (a, b, c, d): (a, b) and (c, d) related
  //! t0-pairs.
  inline std::set<Vec> delta_binary(FiniteAlgebra const& alg,
                                    Partition const&     t0,
                                    Partition const&     t1) {
    std::vector<Vec> carrier;
    std::map<Vec, size_t> index;
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = 0; b < alg.size(); ++b) {
        if (t0.related(a, b)) {
          index[{a, b}] = carrier.size();
          carrier.push_back({a, b});
        }
      }
    }
    std::vector<std::pair<size_t, size_t>> gens;
    for (Element x = 0; x < alg.size(); ++x) {
      for (Element y = 0; y < alg.size(); ++y) {
        if (t1.related(x, y)) {
          gens.emplace_back(index.at({x, x}), index.at({y, y}));
        }
      }
    }
    auto          R = congruence(alg, carrier, gens);
    std::set<Vec> out;
    for (size_t s = 0; s < carrier.size(); ++s) {
      for (size_t t = 0; t < carrier.size(); ++t) {
        if (R[s][t]) {
          out.insert({carrier[s][0], carrier[s][1], carrier[t][0], carrier[t][1]});
        }
      }
    }
    return out;
  }

  //! Delta_{t0,t1,t2} in the order (0, 1, 2): the congruence on the squares
  //! of Delta_{t0,t1} generated by pairs of constant squares (x, y),
  //! x t2 y, read as cubes with the squares across axis 2.
  inline std::set<Vec> delta_ternary(FiniteAlgebra const& alg, std::vector<Partition> const& T) {
    auto             squares = delta_binary(alg, T[0], T[1]);
    std::vector<Vec> carrier(squares.begin(), squares.end());
    std::map<Vec, size_t> index;
    for (size_t i = 0; i < carrier.size(); ++i) {
      index[carrier[i]] = i;
    }
    std::vector<std::pair<size_t, size_t>> gens;
    for (Element x = 0; x < alg.size(); ++x) {
      for (Element y = 0; y < alg.size(); ++y) {
        if (T[2].related(x, y)) {
          gens.emplace_back(index.at(Vec(4, x)), index.at(Vec(4, y)));
        }
      }
    }
    auto          R = congruence(alg, carrier, gens);
    std::set<Vec> out;
    for (size_t s = 0; s < carrier.size(); ++s) {
      for (size_t t = 0; t < carrier.size(); ++t) {
        if (R[s][t]) {
          Vec c = carrier[s];
          c.insert(c.end(), carrier[t].begin(), carrier[t].end());
          out.insert(c);
        }
      }
    }
    return out;
  }

}  // namespace ualg::oracle

#endif  // UALG_TESTS_ORACLES_HPP_
