// Packed tuples over small universes and insertion-ordered tuple sets.
//
// A tuple of width m <= 8 over a universe of size <= 256 is packed into one
// 64-bit word, coordinate i in byte i.  Sets whose ambient space n^m is small
// use a dense rank-indexed table; larger ones fall back to hashing.

#ifndef UALG_TUPLE_SET_HPP_
#define UALG_TUPLE_SET_HPP_

#include <algorithm>      // for sort
#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t, int32_t
#include <initializer_list>
#include <optional>       // for optional
#include <span>           // for span
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <vector>         // for vector

#include "algebra.hpp"
#include "error.hpp"

namespace ualg {

  using Tuple = std::uint64_t;

  constexpr size_t max_tuple_width = 8;

  inline Element get(Tuple t, size_t i) noexcept {
    return static_cast<Element>((t >> (8 * i)) & 0xFF);
  }

  inline Tuple with(Tuple t, size_t i, Element v) noexcept {
    t &= ~(Tuple(0xFF) << (8 * i));
    return t | (Tuple(v) << (8 * i));
  }

  inline Tuple pack(std::span<Element const> v) {
    Tuple t = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      t |= Tuple(v[i]) << (8 * i);
    }
    return t;
  }

  inline Tuple pack(std::initializer_list<Element> v) {
    return pack(std::span<Element const>(v.begin(), v.size()));
  }

  inline std::vector<Element> unpack(Tuple t, size_t width) {
    std::vector<Element> v(width);
    for (size_t i = 0; i < width; ++i) {
      v[i] = get(t, i);
    }
    return v;
  }

  inline Tuple constant_tuple(Element a, size_t width) {
    Tuple t = 0;
    for (size_t i = 0; i < width; ++i) {
      t |= Tuple(a) << (8 * i);
    }
    return t;
  }

  class TupleSet {
   public:
    // Dense rank tables are used up to this many cells (4 bytes each).
    static constexpr size_t dense_limit = size_t(1) << 21;

    TupleSet() : TupleSet(1, 1) {}

    TupleSet(size_t width, size_t universe)
        : _width(width), _universe(universe) {
      if (width == 0 || width > max_tuple_width) {
        throw InputError("tuple width " + std::to_string(width)
                         + " outside 1.." + std::to_string(max_tuple_width));
      }
      if (universe == 0 || universe > max_packed_universe) {
        throw InputError("universe size " + std::to_string(universe)
                         + " outside 1.."
                         + std::to_string(max_packed_universe));
      }
      size_t cells = 1;
      _dense       = true;
      for (size_t i = 0; i < width; ++i) {
        cells *= universe;
        if (cells > dense_limit) {
          _dense = false;
          break;
        }
      }
      _space = _dense ? cells : 0;
      if (_dense) {
        _rank_index.assign(cells, -1);
      }
    }

    size_t width() const noexcept {
      return _width;
    }

    size_t universe() const noexcept {
      return _universe;
    }

    size_t size() const noexcept {
      return _tuples.size();
    }

    bool empty() const noexcept {
      return _tuples.empty();
    }

    //! n^m when the dense table is in use, 0 otherwise.
    size_t space() const noexcept {
      return _space;
    }

    Tuple operator[](size_t i) const {
      return _tuples[i];
    }

    std::vector<Tuple> const& tuples() const noexcept {
      return _tuples;
    }

    auto begin() const noexcept {
      return _tuples.begin();
    }

    auto end() const noexcept {
      return _tuples.end();
    }

    //! Returns true if t was not already present.
    bool insert(Tuple t) {
      if (_dense) {
        auto& slot = _rank_index[rank(t)];
        if (slot >= 0) {
          return false;
        }
        slot = static_cast<std::int32_t>(_tuples.size());
      } else {
        auto [it, fresh] = _hash_index.emplace(t, _tuples.size());
        if (!fresh) {
          return false;
        }
      }
      _tuples.push_back(t);
      return true;
    }

    bool contains(Tuple t) const {
      return index_of(t).has_value();
    }

    std::optional<size_t> index_of(Tuple t) const {
      if (!in_range(t)) {
        return std::nullopt;
      }
      if (_dense) {
        auto i = _rank_index[rank(t)];
        return i < 0 ? std::nullopt : std::optional<size_t>(size_t(i));
      }
      auto it = _hash_index.find(t);
      return it == _hash_index.end() ? std::nullopt
                                     : std::optional<size_t>(it->second);
    }

    std::vector<Tuple> sorted() const {
      auto v = _tuples;
      std::sort(v.begin(), v.end());
      return v;
    }

    //! Same elements, re-inserted in increasing packed order.
    TupleSet canonical() const {
      TupleSet out(_width, _universe);
      for (auto t : sorted()) {
        out.insert(t);
      }
      return out;
    }

    bool same_elements(TupleSet const& other) const {
      return _width == other._width && sorted() == other.sorted();
    }

    bool in_range(Tuple t) const noexcept {
      if (_width < max_tuple_width && (t >> (8 * _width)) != 0) {
        return false;
      }
      for (size_t i = 0; i < _width; ++i) {
        if (get(t, i) >= _universe) {
          return false;
        }
      }
      return true;
    }

   private:
    size_t rank(Tuple t) const noexcept {
      size_t r = 0;
      for (size_t i = _width; i-- > 0;) {
        r = r * _universe + get(t, i);
      }
      return r;
    }

    size_t                                _width;
    size_t                                _universe;
    bool                                  _dense = true;
    size_t                                _space = 0;
    std::vector<Tuple>                    _tuples;
    std::vector<std::int32_t>             _rank_index;
    std::unordered_map<Tuple, size_t>     _hash_index;
  };

}  // namespace ualg

#endif  // UALG_TUPLE_SET_HPP_
