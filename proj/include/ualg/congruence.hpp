// Congruences of finite algebras: membership, generation, the full lattice,
// modularity, and the textual syntax used to name congruences.

#ifndef UALG_CONGRUENCE_HPP_
#define UALG_CONGRUENCE_HPP_

#include <algorithm>  // for sort, find
#include <array>      // for array
#include <cctype>     // for isdigit, isspace
#include <cstddef>    // for size_t
#include <deque>      // for deque
#include <map>        // for map
#include <optional>   // for optional
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "algebra.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "subpower.hpp"

namespace ualg {

  struct CongruenceWitness {
    std::string          symbol;
    std::vector<Element> a;
    std::vector<Element> b;
  };

  struct CongruenceCheck {
    bool                             holds = true;
    std::optional<CongruenceWitness> witness;
  };

  //! Argument tuples a, b differing in one position, with a_i p b_i and
  //! f(a), f(b) unrelated, are enough to refute compatibility.
  inline CongruenceCheck is_congruence(FiniteAlgebra const& alg,
                                       Partition const&     p) {
    if (p.size() != alg.size()) {
      throw InputError("partition size " + std::to_string(p.size())
                       + " does not match algebra size "
                       + std::to_string(alg.size()));
    }
    size_t               n = alg.size();
    std::vector<Element> a, b;
    for (size_t k = 0; k < alg.num_operations(); ++k) {
      size_t r     = alg.arity(k);
      size_t total = FiniteAlgebra::ipow(n, r);
      a.assign(r, 0);
      for (size_t pos = 0; pos < total; ++pos) {
        size_t rest = pos;
        for (size_t i = r; i-- > 0;) {
          a[i] = static_cast<Element>(rest % n);
          rest /= n;
        }
        Element fa = alg.apply(k, a);
        for (size_t i = 0; i < r; ++i) {
          b = a;
          for (Element v = 0; v < n; ++v) {
            if (v == a[i] || !p.related(v, a[i])) {
              continue;
            }
            b[i] = v;
            if (!p.related(fa, alg.apply(k, b))) {
              return {false,
                      CongruenceWitness{alg.operation(k).symbol, a, b}};
            }
          }
        }
      }
    }
    return {};
  }

  //! Least congruence containing `base` and `pairs`.  `base` must already be
  //! a congruence.  Only pairs merged during the call have their unary
  //! translations f(c, .., x, .., c) propagated: the merged pairs form a
  //! spanning forest of the new blocks, and translating a forest edge by
  //! edge translates every pair it connects.
  template <AlgebraLike A>
  Partition cg_over(A const&                                       alg,
                    Partition const&                               base,
                    std::vector<std::pair<size_t, size_t>> const& pairs) {
    size_t n = alg.size();
    if (base.size() != n) {
      throw InputError("partition size " + std::to_string(base.size())
                       + " does not match algebra size " + std::to_string(n));
    }
    UnionFind uf(n);
    for (size_t x = 0; x < n; ++x) {
      uf.unite(static_cast<std::uint32_t>(x), base.rep(x));
    }
    std::deque<std::pair<Element, Element>> frontier;
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw InputError("pair (" + std::to_string(a) + "," + std::to_string(b)
                         + ") out of range for size " + std::to_string(n));
      }
      if (uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b))) {
        frontier.emplace_back(a, b);
      }
    }
    std::vector<Element> args;
    while (!frontier.empty()) {
      auto [a, b] = frontier.front();
      frontier.pop_front();
      for (size_t k = 0; k < alg.num_operations(); ++k) {
        size_t r = alg.arity(k);
        if (r == 0) {
          continue;
        }
        args.assign(r, 0);
        size_t fills = 1;
        for (size_t t = 1; t < r; ++t) {
          fills *= n;
        }
        for (size_t i = 0; i < r; ++i) {
          for (size_t f = 0; f < fills; ++f) {
            size_t rest = f;
            for (size_t t = 0; t < r; ++t) {
              if (t != i) {
                args[t] = static_cast<Element>(rest % n);
                rest /= n;
              }
            }
            args[i]   = a;
            Element x = alg.apply(k, args);
            args[i]   = b;
            Element y = alg.apply(k, args);
            if (uf.unite(x, y)) {
              frontier.emplace_back(x, y);
            }
          }
        }
      }
    }
    return Partition::from_union_find(uf);
  }

  template <AlgebraLike A>
  Partition cg(A const& alg, std::vector<std::pair<size_t, size_t>> const& pairs) {
    return cg_over(alg, Partition::bottom(alg.size()), pairs);
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruence lattice
  ////////////////////////////////////////////////////////////////////////

  constexpr size_t default_lattice_cap = 100'000;

  class CongruenceLattice {
   public:
    CongruenceLattice() = default;

    //! Sorts `elems` into the canonical order and builds join/meet tables.
    explicit CongruenceLattice(std::vector<Partition> elems)
        : _elems(std::move(elems)) {
      std::sort(_elems.begin(), _elems.end(), [](auto const& p, auto const& q) {
        auto bp = p.num_blocks(), bq = q.num_blocks();
        if (bp != bq) {
          return bp > bq;
        }
        return p.reps() < q.reps();
      });
      for (size_t i = 0; i < _elems.size(); ++i) {
        _index.emplace(_elems[i].reps(), i);
      }
      size_t m = _elems.size();
      _join.assign(m * m, 0);
      _meet.assign(m * m, 0);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
          auto jn = index_of(ualg::join(_elems[i], _elems[j]));
          auto mt = index_of(ualg::meet(_elems[i], _elems[j]));
          if (!jn || !mt) {
            throw InputError("congruence list is not closed under join and meet");
          }
          _join[i * m + j] = *jn;
          _meet[i * m + j] = *mt;
        }
      }
    }

    size_t size() const noexcept {
      return _elems.size();
    }

    Partition const& operator[](size_t i) const {
      return _elems.at(i);
    }

    std::vector<Partition> const& elements() const noexcept {
      return _elems;
    }

    auto begin() const noexcept {
      return _elems.begin();
    }

    auto end() const noexcept {
      return _elems.end();
    }

    std::optional<size_t> index_of(Partition const& p) const {
      auto it = _index.find(p.reps());
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    size_t join(size_t i, size_t j) const {
      return _join[i * size() + j];
    }

    size_t meet(size_t i, size_t j) const {
      return _meet[i * size() + j];
    }

    bool leq(size_t i, size_t j) const {
      return meet(i, j) == i;
    }

    size_t bottom() const {
      return 0;
    }

    size_t top() const {
      return size() - 1;
    }

    //! "0", "1" or "con[i]".
    std::string name(size_t i) const {
      if (i == bottom()) {
        return "0";
      } else if (i == top()) {
        return "1";
      }
      return "con[" + std::to_string(i) + "]";
    }

    std::string name_of(Partition const& p) const {
      auto i = index_of(p);
      return i ? name(*i) : p.to_string();
    }

   private:
    std::vector<Partition>                              _elems;
    std::map<std::vector<std::uint32_t>, size_t>        _index;
    std::vector<size_t>                                 _join;
    std::vector<size_t>                                 _meet;
  };

  //! All congruences: principal congruences saturated under joins.
  inline CongruenceLattice con_lattice(FiniteAlgebra const& alg,
                                       size_t cap = default_lattice_cap) {
    size_t                                       n = alg.size();
    std::vector<Partition>                       found{Partition::bottom(n)};
    std::map<std::vector<std::uint32_t>, size_t> seen{{found[0].reps(), 0}};
    auto add = [&](Partition p) {
      if (seen.emplace(p.reps(), found.size()).second) {
        found.push_back(std::move(p));
        if (found.size() > cap) {
          throw ResourceError("congruence lattice exceeded cap of "
                              + std::to_string(cap) + " elements");
        }
      }
    };
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        add(cg(alg, {{a, b}}));
      }
    }
    for (size_t cur = 0; cur < found.size(); ++cur) {
      for (size_t s = 0; s < cur; ++s) {
        add(join(found[cur], found[s]));
      }
    }
    return CongruenceLattice(std::move(found));
  }

  struct ModularityReport {
    bool holds = true;
    //! Indices (x, y, z) with x <= z and x v (y ^ z) < (x v y) ^ z.
    std::optional<std::array<size_t, 3>> triple;
    //! The pentagon 0' < a < c < 1' with b incomparable, as indices
    //! (bottom, a, c, b, top).
    std::optional<std::array<size_t, 5>> pentagon;
  };

  inline ModularityReport is_modular(CongruenceLattice const& lat) {
    size_t m = lat.size();
    for (size_t x = 0; x < m; ++x) {
      for (size_t z = 0; z < m; ++z) {
        if (!lat.leq(x, z)) {
          continue;
        }
        for (size_t y = 0; y < m; ++y) {
          size_t lhs = lat.join(x, lat.meet(y, z));
          size_t rhs = lat.meet(lat.join(x, y), z);
          if (lhs != rhs) {
            ModularityReport r;
            r.holds    = false;
            r.triple   = {x, y, z};
            r.pentagon = {lat.meet(y, z), lhs, rhs, y, lat.join(x, y)};
            return r;
          }
        }
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Text syntax
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string trim(std::string const& s) {
      size_t b = 0, e = s.size();
      while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
      }
      while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
      }
      return s.substr(b, e - b);
    }

    inline size_t parse_element(std::string const& tok, size_t n) {
      if (tok.empty()
          || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
               return std::isdigit(c);
             })) {
        throw InputError("expected an element, got \"" + tok + "\"");
      }
      size_t v = std::stoul(tok);
      if (v >= n) {
        throw InputError("element " + tok + " out of range for size "
                         + std::to_string(n));
      }
      return v;
    }

    inline std::vector<std::string> split(std::string const& s, char sep) {
      std::vector<std::string> out;
      size_t                   start = 0;
      while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) {
          return out;
        }
        start = pos + 1;
      }
    }
  }  // namespace detail

  //! Parses "a-b, c-d" (also accepting "a b" or "a,b" pairs separated by ';').
  inline std::vector<std::pair<size_t, size_t>>
  parse_pairs(std::string const& text, size_t n) {
    std::vector<std::pair<size_t, size_t>> out;
    auto                                   body = detail::trim(text);
    if (body.empty()) {
      return out;
    }
    for (auto const& item : detail::split(body, ',')) {
      auto t    = detail::trim(item);
      auto dash = t.find('-');
      if (dash == std::string::npos) {
        throw InputError("expected a pair \"a-b\", got \"" + t + "\"");
      }
      out.emplace_back(detail::parse_element(detail::trim(t.substr(0, dash)), n),
                       detail::parse_element(detail::trim(t.substr(dash + 1)), n));
    }
    return out;
  }

  //! Blocks "0 2 | 1 3", generators "gen: 0-2, 1-3", or the names "zero",
  //! "one", "con[i]".  The result is checked to be a congruence.
  inline Partition parse_congruence(std::string const&       text,
                                    FiniteAlgebra const&     alg,
                                    CongruenceLattice const* lat = nullptr) {
    size_t n = alg.size();
    auto   t = detail::trim(text);
    if (t == "zero" || t == "0_A") {
      return Partition::bottom(n);
    }
    if (t == "one" || t == "1_A") {
      return Partition::top(n);
    }
    if (t.rfind("con[", 0) == 0 && t.back() == ']') {
      if (lat == nullptr) {
        throw InputError("\"" + t + "\" needs the congruence lattice");
      }
      auto i = detail::parse_element(t.substr(4, t.size() - 5), lat->size());
      return (*lat)[i];
    }
    Partition p;
    if (t.rfind("gen:", 0) == 0) {
      p = cg(alg, parse_pairs(t.substr(4), n));
    } else {
      std::vector<std::vector<size_t>> blocks;
      for (auto const& part : detail::split(t, '|')) {
        std::vector<size_t> block;
        std::string         tok;
        for (char c : part + " ") {
          if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!tok.empty()) {
              block.push_back(detail::parse_element(tok, n));
              tok.clear();
            }
          } else {
            tok += c;
          }
        }
        if (block.empty()) {
          throw InputError("empty block in \"" + t + "\"");
        }
        blocks.push_back(std::move(block));
      }
      p = Partition::from_blocks(n, blocks);
      auto chk = is_congruence(alg, p);
      if (!chk.holds) {
        throw InputError("\"" + t + "\" is not a congruence (operation \""
                         + chk.witness->symbol + "\")");
      }
    }
    return p;
  }

}  // namespace ualg

#endif  // UALG_CONGRUENCE_HPP_
