// The term condition, term-condition commutators, the transitive term
// condition on complexes, and shift rotations.

#ifndef UALG_COMMUTATOR_HPP_
#define UALG_COMMUTATOR_HPP_

#include <array>          // for array
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t, uint8_t
#include <optional>       // for optional
#include <string>         // for string
#include <unordered_set>  // for unordered_set
#include <utility>        // for pair
#include <vector>         // for vector

#include "algebra.hpp"
#include "congruence.hpp"
#include "cube.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "term.hpp"
#include "tuple_set.hpp"

namespace ualg {

  struct CentralityReport {
    bool   holds = true;
    size_t dim   = 0;
    size_t axis  = 0;
    //! A violating matrix, or the corner of a violating complex.
    std::optional<Tuple>   witness;
    std::optional<Line>    pivot;
    std::optional<Complex> complex;
    //! check_ctr only: the search hit its state cap before finishing.
    bool exhausted = false;
  };

  namespace detail {
    //! True iff every (j)-supporting line of c is a delta-pair; `pivot` gets
    //! the (j)-pivot line.
    inline bool supporting_in(Tuple c, size_t k, size_t j, Partition const& delta, Line& pivot) {
      size_t full = (size_t(1) << k) - 1, step = size_t(1) << j;
      bool   ok   = true;
      for (size_t v = 0; v <= full; ++v) {
        if (v & step) {
          continue;
        }
        Element a = get(c, v), b = get(c, v + step);
        if (v == (full ^ step)) {
          pivot = {a, b};
        } else if (a != b && !delta.related(a, b)) {
          ok = false;
        }
      }
      return ok;
    }

    inline void check_delta(Engine& eng, std::vector<Partition> const& T, size_t j,
                            Partition const& delta) {
      check_tuple(eng.algebra(), T);
      check_axis(j, T.size());
      if (delta.size() != eng.size()) {
        throw InputError("congruence size does not match algebra size");
      }
    }
  }  // namespace detail

  //! C(T; j; delta): scans M(T) in increasing order for a matrix whose
  //! (j)-supporting lines are delta-pairs but whose pivot line is not.
  inline CentralityReport check_tc(Engine&                       eng,
                                   std::vector<Partition> const& T,
                                   size_t                        j,
                                   Partition const&              delta) {
    detail::check_delta(eng, T, j, delta);
    CentralityReport out;
    out.dim  = T.size();
    out.axis = j;
    if (delta.is_top()) {
      return out;
    }
    Line pivot;
    for (auto m : eng.matrices(T)) {
      if (detail::supporting_in(m, out.dim, j, delta, pivot)
          && !delta.related(pivot.first, pivot.second)) {
        out.holds   = false;
        out.witness = m;
        out.pivot   = pivot;
        return out;
      }
    }
    return out;
  }

  //! [T]_j, the least delta with C(T; j; delta), as a least fixpoint.
  inline Partition const& tc_commutator(Engine& eng, std::vector<Partition> const& T, size_t j) {
    detail::check_delta(eng, T, j, Partition(eng.size()));
    auto key = tuple_key(T) + "@" + std::to_string(j);
    if (auto p = eng.cached_commutator(key)) {
      return *p;
    }
    size_t      k = T.size();
    auto const& M = eng.matrices(T);
    Partition   delta(eng.size());
    while (true) {
      std::vector<std::pair<size_t, size_t>> harvest;
      std::unordered_set<size_t>             seen;
      Line                                   pivot;
      for (auto m : M) {
        if (detail::supporting_in(m, k, j, delta, pivot)
            && !delta.related(pivot.first, pivot.second)
            && seen.insert(pivot.first * eng.size() + pivot.second).second) {
          harvest.emplace_back(pivot.first, pivot.second);
        }
      }
      if (harvest.empty()) {
        break;
      }
      delta = cg_over(eng.algebra(), delta, harvest);
    }
    return eng.store_commutator(key, std::move(delta));
  }

  //! [T] at the last axis.
  inline Partition const& commutator(Engine& eng, std::vector<Partition> const& T) {
    return tc_commutator(eng, T, T.size() - 1);
  }

  ////////////////////////////////////////////////////////////////////////
  // Transitive term condition
  ////////////////////////////////////////////////////////////////////////

  constexpr size_t default_state_cap = 8'000'000;

  namespace detail {
    //! Relabels the axes of a complex: axis i becomes axis perm[i].
    inline Complex permute_complex(Complex const& c, std::array<size_t, 3> const& perm) {
      Dims d{};
      for (size_t i = 0; i < 3; ++i) {
        d[perm[i]] = c.dims[i];
      }
      Complex out(d);
      for (size_t z = 0; z < c.dims[2]; ++z) {
        for (size_t y = 0; y < c.dims[1]; ++y) {
          for (size_t x = 0; x < c.dims[0]; ++x) {
            std::array<size_t, 3> p{}, q{x, y, z};
            for (size_t i = 0; i < 3; ++i) {
              p[perm[i]] = q[i];
            }
            out.at(p[0], p[1], p[2]) = c.at(x, y, z);
          }
        }
      }
      return out;
    }

    //! Searches complexes of dimensions d over MT for one whose corner has
    //! its three (0)-supporting lines in delta and its (0)-pivot line
    //! outside delta.
    //!
    //! Cells are assigned in index order.  Everything a later check reads
    //! lies within the last W = n0 n1 + n0 + 1 cells, so partial complexes
    //! agreeing on those cells have the same extensions and are merged.
    //! Only two layers are kept; when a violation exists the search is
    //! repeated keeping all layers and parent pointers to read it off.
    class CornerSearch {
     public:
      CornerSearch(TupleSet const& MT, size_t n, Partition const& delta, size_t cap)
          : _MT(&MT), _n(n), _delta(&delta), _cap(cap) {
        for (size_t g = 0; g < 7; ++g) {
          _prefix.emplace_back(g + 1, n);
        }
        for (auto m : MT) {
          for (size_t g = 0; g < 7; ++g) {
            _prefix[g].insert(m & ((Tuple(1) << (8 * (g + 1))) - 1));
          }
        }
      }

      std::optional<Complex> run(Dims const& d) {
        return search(d, false) ? search(d, true) : std::nullopt;
      }

     private:
      // Rows of one layer with an open-addressing index over them.
      struct Layer {
        size_t                     W = 0;
        std::vector<std::uint8_t>  rows;
        std::vector<std::uint32_t> parent;
        std::vector<std::uint32_t> slots;

        size_t size() const {
          return parent.size();
        }

        void reset(size_t w) {
          W = w;
          rows.clear();
          parent.clear();
          slots.assign(1024, ~std::uint32_t(0));
        }

        //! Adds the row unless present; returns true if added.
        bool add(std::uint8_t const* row, std::uint32_t from) {
          if (2 * (size() + 1) > slots.size()) {
            grow();
          }
          size_t mask = slots.size() - 1;
          for (size_t h = hash(row) & mask;; h = (h + 1) & mask) {
            auto id = slots[h];
            if (id == ~std::uint32_t(0)) {
              slots[h] = static_cast<std::uint32_t>(size());
              rows.insert(rows.end(), row, row + W);
              parent.push_back(from);
              return true;
            }
            if (std::equal(row, row + W, rows.data() + size_t(id) * W)) {
              return false;
            }
          }
        }

       private:
        size_t hash(std::uint8_t const* row) const {
          size_t h = 1469598103934665603ull;
          for (size_t t = 0; t < W; ++t) {
            h = (h ^ row[t]) * 1099511628211ull;
          }
          return h ^ (h >> 29);
        }

        void grow() {
          slots.assign(slots.size() * 2, ~std::uint32_t(0));
          size_t mask = slots.size() - 1;
          for (std::uint32_t id = 0; id < size(); ++id) {
            size_t h = hash(rows.data() + size_t(id) * W) & mask;
            while (slots[h] != ~std::uint32_t(0)) {
              h = (h + 1) & mask;
            }
            slots[h] = id;
          }
        }
      };

      //! Without `keep`, returns a placeholder complex iff a violation
      //! exists.  With `keep`, returns the violating complex.
      std::optional<Complex> search(Dims const& d, bool keep) {
        size_t n0 = d[0], n1 = d[1], n2 = d[2];
        size_t cells = n0 * n1 * n2;
        size_t W     = n0 * n1 + n0 + 1;
        auto   cell  = [&](size_t x, size_t y, size_t z) { return x + n0 * (y + n1 * z); };
        size_t line1 = cell(n0 - 1, 0, 0), line2 = cell(n0 - 1, n1 - 1, 0),
               line3 = cell(n0 - 1, 0, n2 - 1), last = cells - 1;

        std::vector<Layer> layers(keep ? cells + 1 : 2);
        layers[0].reset(W);
        std::vector<std::uint8_t> start(W, 0), next(W);
        layers[0].add(start.data(), 0);

        for (size_t idx = 0; idx < cells; ++idx) {
          size_t x = idx % n0, y = idx / n0 % n1, z = idx / (n0 * n1);
          auto&  src = layers[keep ? idx : idx % 2];
          auto&  dst = layers[keep ? idx + 1 : (idx + 1) % 2];
          dst.reset(W);
          for (size_t s = 0; s < src.size(); ++s) {
            std::uint8_t const* row = src.rows.data() + s * W;
            // row[t] is cell idx - W + t.
            auto value = [&](size_t c) -> Element { return row[c + W - idx]; };
            for (Element v = 0; v < _n; ++v) {
              if (!fits(d, x, y, z, v, value)) {
                continue;
              }
              size_t partner = idx - (n0 - 1);
              if (idx == line1 || idx == line2 || idx == line3) {
                if (!_delta->related(value(partner), v)) {
                  continue;
                }
              } else if (idx == last && _delta->related(value(partner), v)) {
                continue;
              }
              std::copy(row + 1, row + W, next.begin());
              next[W - 1] = static_cast<std::uint8_t>(v);
              if (dst.add(next.data(), static_cast<std::uint32_t>(s)) && dst.size() > _cap) {
                throw ResourceError("corner search exceeded cap of " + std::to_string(_cap)
                                    + " states per cell");
              }
            }
          }
          if (dst.size() == 0) {
            return std::nullopt;
          }
        }
        Complex out(d);
        if (keep) {
          std::uint32_t s = 0;
          for (size_t idx = cells; idx > 0; --idx) {
            out.labels[idx - 1] = layers[idx].rows[size_t(s) * W + W - 1];
            s                   = layers[idx].parent[s];
          }
        }
        return out;
      }

      template <typename Value>
      bool fits(Dims const& d, size_t x, size_t y, size_t z, Element v, Value const& value) const {
        size_t n0 = d[0], n1 = d[1];
        for (size_t g = 0; g < 8; ++g) {
          size_t gx = g & 1, gy = g >> 1 & 1, gz = g >> 2 & 1;
          if (x < gx || y < gy || z < gz || x - gx + 1 >= d[0] || y - gy + 1 >= d[1]
              || z - gz + 1 >= d[2]) {
            continue;
          }
          size_t f   = (x - gx) + n0 * ((y - gy) + n1 * (z - gz));
          Tuple  pre = 0;
          for (size_t h = 0; h < g; ++h) {
            size_t c = f + (h & 1) + n0 * ((h >> 1 & 1) + n1 * (h >> 2 & 1));
            pre      = with(pre, h, value(c));
          }
          pre = with(pre, g, v);
          if (g == 7 ? !_MT->contains(pre) : !_prefix[g].contains(pre)) {
            return false;
          }
        }
        return true;
      }

      TupleSet const*       _MT;
      size_t                _n;
      Partition const*      _delta;
      size_t                _cap;
      std::vector<TupleSet> _prefix;
    };

    //! True iff changing one entry of a member of MT within its gamma-class
    //! always gives a member.
    inline bool saturated(TupleSet const& MT, Partition const& gamma) {
      std::vector<std::vector<Element>> cls(gamma.size());
      for (auto const& b : gamma.blocks()) {
        for (auto a : b) {
          for (auto v : b) {
            if (v != a) {
              cls[a].push_back(static_cast<Element>(v));
            }
          }
        }
      }
      for (auto m : MT) {
        for (size_t g = 0; g < MT.width(); ++g) {
          for (auto v : cls[get(m, g)]) {
            if (!MT.contains(with(m, g, v))) {
              return false;
            }
          }
        }
      }
      return true;
    }
  }  // namespace detail

  //! C_tr(T; j; delta) over complexes with dimensions at most `bound`
  //! (each at least 2).  Dimensions are tried in increasing order and the
  //! first violation is returned; `exhausted` is set if a search hit `cap`.
  inline CentralityReport check_ctr(Engine&                       eng,
                                    std::vector<Partition> const& T,
                                    size_t                        j,
                                    Partition const&              delta,
                                    Dims const&                   bound,
                                    size_t                        cap = default_state_cap) {
    if (T.size() != 3) {
      throw InputError("the transitive term condition needs three congruences");
    }
    detail::check_delta(eng, T, j, delta);
    for (auto b : bound) {
      if (b < 2 || b > 4) {
        throw InputError("bound entries must lie in 2..4");
      }
    }
    CentralityReport out;
    out.dim  = 3;
    out.axis = j;
    if (delta.is_top()) {
      return out;
    }
    // Move axis j to axis 0.
    std::array<size_t, 3> perm{0, 1, 2};
    std::swap(perm[0], perm[j]);
    TupleSet MT(8, eng.size());
    for (auto m : eng.matrices(T)) {
      MT.insert(permute_axes(m, 3, perm));
    }
    Dims pb{};
    for (size_t i = 0; i < 3; ++i) {
      pb[perm[i]] = bound[i];
    }
    // Membership in M(T) only sees gamma-classes for the join gamma of all
    // congruences below delta under which M(T) is saturated, so the search
    // runs over A / gamma and witnesses lift through class minima.
    auto const& lat   = eng.lattice();
    Partition   gamma = Partition::bottom(eng.size());
    for (auto const& p : lat) {
      if (p <= delta && !(p <= gamma) && detail::saturated(MT, p)) {
        gamma = join(gamma, p);
      }
    }
    std::vector<Element> cls(eng.size()), lift;
    for (size_t a = 0; a < eng.size(); ++a) {
      if (gamma.rep(a) == a) {
        lift.push_back(static_cast<Element>(a));
      }
      cls[a] = static_cast<Element>(
          std::lower_bound(lift.begin(), lift.end(), gamma.rep(a)) - lift.begin());
    }
    size_t   nq = lift.size();
    TupleSet MQ(8, nq);
    for (auto m : MT) {
      Tuple q = 0;
      for (size_t g = 0; g < 8; ++g) {
        q = with(q, g, cls[get(m, g)]);
      }
      MQ.insert(q);
    }
    UnionFind uf(nq);
    for (size_t a = 0; a < eng.size(); ++a) {
      uf.unite(cls[a], cls[delta.rep(a)]);
    }
    auto deltaq = Partition::from_union_find(uf);

    detail::CornerSearch search(MQ, nq, deltaq, cap);
    for (size_t n2 = 2; n2 <= pb[2]; ++n2) {
      for (size_t n1 = 2; n1 <= pb[1]; ++n1) {
        for (size_t n0 = 2; n0 <= pb[0]; ++n0) {
          std::optional<Complex> hit;
          try {
            hit = search.run({n0, n1, n2});
          } catch (ResourceError const&) {
            out.exhausted = true;
            continue;
          }
          if (hit) {
            for (auto& v : hit->labels) {
              v = lift[v];
            }
            // perm is an involution.
            auto c      = detail::permute_complex(*hit, perm);
            out.holds   = false;
            out.witness = corner(c);
            Line pivot;
            detail::supporting_in(*out.witness, 3, j, delta, pivot);
            out.pivot     = pivot;
            out.complex   = c;
            out.exhausted = false;
            return out;
          }
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Shift rotations
  ////////////////////////////////////////////////////////////////////////

  //! The e-th shift rotation of a complex whose dimensions along j and l
  //! are 2.  Each square S_k = [[c, d], [a, b]] (rows along j, columns
  //! along l) becomes [[m_e(c, c, a, a), m_e(c, d, b, a)], [c, c]].
  inline Complex shift_rotation_minimal(FiniteAlgebra const& alg,
                                        Complex const&       z,
                                        DaySequence const&   day,
                                        size_t               e,
                                        size_t               j,
                                        size_t               l) {
    if (j >= 3 || l >= 3 || j == l) {
      throw InputError("shift rotation needs two distinct axes below 3");
    }
    if (z.dims[j] != 2 || z.dims[l] != 2) {
      throw InputError("shift rotation needs dimension 2 along both axes");
    }
    if (e >= day.size()) {
      throw InputError("Day term index " + std::to_string(e) + " out of range");
    }
    if (auto chk = check_day_sequence(alg, day); !chk.holds) {
      throw InputError("not a Day sequence: identity " + chk.failing + " fails");
    }
    size_t  i = 3 - j - l;
    Complex out(z.dims);
    auto    m = [&](Element x, Element y, Element w, Element u) {
      return eval_term(alg, day[e], {{"x", x}, {"y", y}, {"z", w}, {"u", u}});
    };
    for (size_t k = 0; k < z.dims[i]; ++k) {
      auto pos = [&](size_t gj, size_t gl) {
        std::array<size_t, 3> p{};
        p[i] = k;
        p[j] = gj;
        p[l] = gl;
        return p;
      };
      auto in  = [&](size_t gj, size_t gl) { auto p = pos(gj, gl); return z.at(p[0], p[1], p[2]); };
      auto set = [&](size_t gj, size_t gl, Element v) {
        auto p = pos(gj, gl);
        out.at(p[0], p[1], p[2]) = v;
      };
      Element a = in(0, 0), b = in(0, 1), c = in(1, 0), d = in(1, 1);
      set(0, 0, c);
      set(0, 1, c);
      set(1, 0, m(c, c, a, a));
      set(1, 1, m(c, d, b, a));
    }
    return out;
  }

  //! True iff every line of c along `axis` is a delta-pair, except the one
  //! whose other coordinates are all maximal.  Lines join the two ends of
  //! the axis.
  inline bool supporting_lines_in(Complex const& c, size_t axis, Partition const& delta) {
    std::array<size_t, 2> other{};
    for (size_t i = 0, t = 0; i < 3; ++i) {
      if (i != axis) {
        other[t++] = i;
      }
    }
    for (size_t u = 0; u < c.dims[other[0]]; ++u) {
      for (size_t v = 0; v < c.dims[other[1]]; ++v) {
        if (u + 1 == c.dims[other[0]] && v + 1 == c.dims[other[1]]) {
          continue;
        }
        std::array<size_t, 3> p{}, q{};
        p[other[0]] = q[other[0]] = u;
        p[other[1]] = q[other[1]] = v;
        p[axis]                   = 0;
        q[axis]                   = c.dims[axis] - 1;
        if (!delta.related(c.at(p[0], p[1], p[2]), c.at(q[0], q[1], q[2]))) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Nested inequality
  ////////////////////////////////////////////////////////////////////////

  struct InequalityReport {
    bool                                 holds = true;
    Partition                            nested;   // [[t0, t1], t2]
    Partition                            ternary;  // [t0, t1, t2]
    std::optional<std::pair<size_t, size_t>> witness;
  };

  inline InequalityReport check_nested_inequality(Engine&          eng,
                                                  Partition const& t0,
                                                  Partition const& t1,
                                                  Partition const& t2) {
    InequalityReport out;
    auto const&      inner = commutator(eng, {t0, t1});
    out.nested             = commutator(eng, {inner, t2});
    out.ternary            = commutator(eng, {t0, t1, t2});
    for (size_t a = 0; a < eng.size() && out.holds; ++a) {
      for (size_t b = 0; b < eng.size(); ++b) {
        if (out.nested.related(a, b) && !out.ternary.related(a, b)) {
          out.holds   = false;
          out.witness = {a, b};
          break;
        }
      }
    }
    return out;
  }

}  // namespace ualg

#endif  // UALG_COMMUTATOR_HPP_
