// Equivalence relations on {0, ..., n-1}.

#ifndef UALG_PARTITION_HPP_
#define UALG_PARTITION_HPP_

#include <algorithm>  // for fill, sort
#include <cstddef>    // for size_t
#include <cstdint>    // for uint32_t
#include <numeric>    // for iota
#include <sstream>    // for ostringstream
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "error.hpp"

namespace ualg {

  class UnionFind {
   public:
    explicit UnionFind(size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), 0);
    }

    size_t size() const noexcept {
      return _parent.size();
    }

    std::uint32_t find(std::uint32_t x) {
      std::uint32_t root = x;
      while (_parent[root] != root) {
        root = _parent[root];
      }
      while (_parent[x] != root) {
        auto next  = _parent[x];
        _parent[x] = root;
        x          = next;
      }
      return root;
    }

    //! Returns true if x and y were in different blocks.  The smaller root
    //! always survives, so roots are block minima.
    bool unite(std::uint32_t x, std::uint32_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      if (x < y) {
        _parent[y] = x;
      } else {
        _parent[x] = y;
      }
      return true;
    }

   private:
    std::vector<std::uint32_t> _parent;
  };

  //! Stored canonically: rep(x) is the least element of x's block, so
  //! equality of Partitions is equality of the equivalence relations.
  class Partition {
   public:
    Partition() = default;

    //! The identity relation 0 on n points.
    explicit Partition(size_t n) : _rep(n) {
      std::iota(_rep.begin(), _rep.end(), 0);
    }

    static Partition bottom(size_t n) {
      return Partition(n);
    }

    static Partition top(size_t n) {
      Partition p(n);
      std::fill(p._rep.begin(), p._rep.end(), 0);
      return p;
    }

    static Partition from_union_find(UnionFind& uf) {
      Partition p(uf.size());
      for (size_t x = 0; x < uf.size(); ++x) {
        p._rep[x] = uf.find(static_cast<std::uint32_t>(x));
      }
      return p;
    }

    //! Elements not mentioned form singleton blocks.
    static Partition from_blocks(size_t                                   n,
                                 std::vector<std::vector<size_t>> const& blocks) {
      UnionFind uf(n);
      for (auto const& b : blocks) {
        for (auto x : b) {
          if (x >= n) {
            throw InputError("element " + std::to_string(x)
                             + " out of range for size " + std::to_string(n));
          }
          uf.unite(static_cast<std::uint32_t>(b.front()),
                   static_cast<std::uint32_t>(x));
        }
      }
      return from_union_find(uf);
    }

    static Partition
    from_pairs(size_t n, std::vector<std::pair<size_t, size_t>> const& pairs) {
      UnionFind uf(n);
      for (auto [a, b] : pairs) {
        if (a >= n || b >= n) {
          throw InputError("pair (" + std::to_string(a) + ","
                           + std::to_string(b) + ") out of range for size "
                           + std::to_string(n));
        }
        uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
      }
      return from_union_find(uf);
    }

    size_t size() const noexcept {
      return _rep.size();
    }

    std::uint32_t rep(size_t x) const {
      return _rep[x];
    }

    std::vector<std::uint32_t> const& reps() const noexcept {
      return _rep;
    }

    bool related(size_t a, size_t b) const {
      return _rep[a] == _rep[b];
    }

    size_t num_blocks() const {
      size_t c = 0;
      for (size_t x = 0; x < _rep.size(); ++x) {
        c += (_rep[x] == x);
      }
      return c;
    }

    bool is_bottom() const {
      return num_blocks() == size();
    }

    bool is_top() const {
      return num_blocks() <= 1;
    }

    //! Blocks in order of their least element, each sorted.
    std::vector<std::vector<size_t>> blocks() const {
      std::vector<std::vector<size_t>> out;
      std::vector<size_t>              slot(_rep.size(), 0);
      for (size_t x = 0; x < _rep.size(); ++x) {
        if (_rep[x] == x) {
          slot[x] = out.size();
          out.emplace_back();
        }
        out[slot[_rep[x]]].push_back(x);
      }
      return out;
    }

    //! Number of related ordered pairs, i.e. the size of the relation.
    size_t num_pairs() const {
      size_t total = 0;
      for (auto const& b : blocks()) {
        total += b.size() * b.size();
      }
      return total;
    }

    //! True iff this refines other.
    bool operator<=(Partition const& other) const {
      check_same(other);
      for (size_t x = 0; x < _rep.size(); ++x) {
        if (other._rep[x] != other._rep[_rep[x]]) {
          return false;
        }
      }
      return true;
    }

    bool operator==(Partition const& other) const = default;

    //! "0 2 | 1 3"
    std::string to_string() const {
      std::ostringstream ss;
      bool               first_block = true;
      for (auto const& b : blocks()) {
        if (!first_block) {
          ss << " | ";
        }
        first_block = false;
        for (size_t i = 0; i < b.size(); ++i) {
          ss << (i ? " " : "") << b[i];
        }
      }
      return ss.str();
    }

    void check_same(Partition const& other) const {
      if (size() != other.size()) {
        throw InputError("partition size mismatch: " + std::to_string(size())
                         + " vs " + std::to_string(other.size()));
      }
    }

   private:
    std::vector<std::uint32_t> _rep;
  };

  inline Partition join(Partition const& p, Partition const& q) {
    p.check_same(q);
    UnionFind uf(p.size());
    for (size_t x = 0; x < p.size(); ++x) {
      uf.unite(static_cast<std::uint32_t>(x), p.rep(x));
      uf.unite(static_cast<std::uint32_t>(x), q.rep(x));
    }
    return Partition::from_union_find(uf);
  }

  inline Partition meet(Partition const& p, Partition const& q) {
    p.check_same(q);
    UnionFind uf(p.size());
    // Elements with the same (p-block, q-block) key end up adjacent.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    keyed.reserve(p.size());
    for (size_t x = 0; x < p.size(); ++x) {
      keyed.emplace_back((std::uint64_t(p.rep(x)) << 32) | q.rep(x),
                         static_cast<std::uint32_t>(x));
    }
    std::sort(keyed.begin(), keyed.end());
    for (size_t i = 1; i < keyed.size(); ++i) {
      if (keyed[i].first == keyed[i - 1].first) {
        uf.unite(keyed[i].second, keyed[i - 1].second);
      }
    }
    return Partition::from_union_find(uf);
  }

}  // namespace ualg

#endif  // UALG_PARTITION_HPP_
