// Vertex-labelled squares and cubes, their cross-sections, and complexes.
//
// A labelling of the k-cube (k <= 3) is a packed Tuple of width 2^k.  Vertex
// g in 2^k sits at index sum g(i) 2^i, so bit i of the index is coordinate i
// and axis i carries the i-th congruence of T.

#ifndef UALG_CUBE_HPP_
#define UALG_CUBE_HPP_

#include <array>          // for array
#include <cctype>         // for isdigit, isspace
#include <cstddef>        // for size_t
#include <functional>     // for function
#include <string>         // for string
#include <unordered_set>  // for unordered_set
#include <utility>        // for pair
#include <vector>         // for vector

#include "algebra.hpp"
#include "error.hpp"
#include "tuple_set.hpp"

namespace ualg {

  struct CubeLabeling {
    size_t dim    = 0;
    Tuple  labels = 0;

    size_t num_vertices() const noexcept {
      return size_t(1) << dim;
    }

    Element operator[](size_t g) const noexcept {
      return get(labels, g);
    }

    bool operator==(CubeLabeling const&) const = default;
  };

  using Line = std::pair<Element, Element>;

  inline void check_axis(size_t i, size_t k) {
    if (k < 1 || k > 3) {
      throw InputError("cube dimension " + std::to_string(k) + " outside 1..3");
    }
    if (i >= k) {
      throw InputError("axis " + std::to_string(i) + " out of range for dimension "
                       + std::to_string(k));
    }
  }

  //! cube_i^k(a, b): a on the face g(i) = 0, b on g(i) = 1.
  inline Tuple cube_generator(size_t k, size_t i, Element a, Element b) {
    check_axis(i, k);
    Tuple t = 0;
    for (size_t g = 0; g < (size_t(1) << k); ++g) {
      t = with(t, g, (g >> i) & 1 ? b : a);
    }
    return t;
  }

  //! Cross-section fixing coordinates D to the values R; the free axes keep
  //! their relative order.
  inline Tuple crsec(Tuple                      c,
                     size_t                     k,
                     std::vector<size_t> const& D,
                     std::vector<size_t> const& R) {
    if (D.size() != R.size() || D.size() > k) {
      throw InputError("crsec: D and R must have equal length at most k");
    }
    size_t fixed_mask = 0, fixed_val = 0;
    for (size_t t = 0; t < D.size(); ++t) {
      if (D[t] >= k || (t > 0 && D[t] <= D[t - 1])) {
        throw InputError("crsec: D must be strictly increasing axes below k");
      }
      if (R[t] > 1) {
        throw InputError("crsec: R values must be 0 or 1");
      }
      fixed_mask |= size_t(1) << D[t];
      fixed_val |= R[t] << D[t];
    }
    std::vector<size_t> free_axes;
    for (size_t i = 0; i < k; ++i) {
      if (!(fixed_mask >> i & 1)) {
        free_axes.push_back(i);
      }
    }
    Tuple out = 0;
    for (size_t h = 0; h < (size_t(1) << free_axes.size()); ++h) {
      size_t g = fixed_val;
      for (size_t t = 0; t < free_axes.size(); ++t) {
        g |= ((h >> t) & 1) << free_axes[t];
      }
      out = with(out, h, get(c, g));
    }
    return out;
  }

  //! Face_i^side: the (k-1)-cube with g(i) = side.
  inline Tuple face(Tuple c, size_t k, size_t i, size_t side) {
    check_axis(i, k);
    return crsec(c, k, {i}, {side});
  }

  //! Inverse of face: glue `lower` (g(i) = 0) and `upper` (g(i) = 1).
  inline Tuple assemble(size_t k, size_t i, Tuple lower, Tuple upper) {
    check_axis(i, k);
    Tuple  out = 0;
    size_t lo  = (size_t(1) << i) - 1;
    for (size_t g = 0; g < (size_t(1) << k); ++g) {
      size_t h = (g & lo) | ((g >> (i + 1)) << i);
      out      = with(out, g, get((g >> i) & 1 ? upper : lower, h));
    }
    return out;
  }

  //! Relabels axes: axis i of the input becomes axis perm[i] of the output.
  inline Tuple permute_axes(Tuple c, size_t k, std::array<size_t, 3> const& perm) {
    Tuple out = 0;
    for (size_t g = 0; g < (size_t(1) << k); ++g) {
      size_t h = 0;
      for (size_t i = 0; i < k; ++i) {
        h |= ((g >> i) & 1) << perm[i];
      }
      out = with(out, h, get(c, g));
    }
    return out;
  }

  struct AxisLines {
    std::vector<Line> supporting;
    Line              pivot;
  };

  //! The (j)-lines of a k-cube: pairs (c[v], c[v + 2^j]) for v with g(j) = 0.
  //! The pivot line has every other coordinate equal to 1.
  inline AxisLines lines_for_axis(Tuple c, size_t k, size_t j) {
    check_axis(j, k);
    AxisLines out;
    size_t    full = (size_t(1) << k) - 1;
    size_t    step = size_t(1) << j;
    for (size_t v = 0; v <= full; ++v) {
      if (v & step) {
        continue;
      }
      Line ln{get(c, v), get(c, v + step)};
      if (v == (full ^ step)) {
        out.pivot = ln;
      } else {
        out.supporting.push_back(ln);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Literals
  ////////////////////////////////////////////////////////////////////////

  //! "sq[a,b,c,d]" (k = 2) or "cube[a,...,h]" (k = 3), labels by vertex index.
  inline std::string to_literal(Tuple c, size_t k) {
    std::string s = k == 2 ? "sq[" : k == 3 ? "cube[" : "line[";
    for (size_t g = 0; g < (size_t(1) << k); ++g) {
      s += (g ? "," : "") + std::to_string(get(c, g));
    }
    return s + "]";
  }

  inline CubeLabeling parse_literal(std::string const& text, size_t n) {
    size_t pos = 0;
    auto   skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip_ws();
    size_t k;
    if (text.compare(pos, 3, "sq[") == 0) {
      k = 2;
      pos += 3;
    } else if (text.compare(pos, 5, "cube[") == 0) {
      k = 3;
      pos += 5;
    } else if (text.compare(pos, 5, "line[") == 0) {
      k = 1;
      pos += 5;
    } else {
      throw ParseError("expected \"sq[\" or \"cube[\"", pos);
    }
    Tuple  t = 0;
    size_t count = 0;
    while (true) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (start == pos) {
        throw ParseError("expected an element", pos);
      }
      size_t v = std::stoul(text.substr(start, pos - start));
      if (v >= n) {
        throw InputError("label " + std::to_string(v) + " out of range for size "
                         + std::to_string(n));
      }
      if (count == (size_t(1) << k)) {
        throw ParseError("too many labels", start);
      }
      t = with(t, count++, static_cast<Element>(v));
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ']'", pos);
    }
    if (count != (size_t(1) << k)) {
      throw ParseError("expected " + std::to_string(size_t(1) << k) + " labels, got "
                           + std::to_string(count),
                       pos);
    }
    skip_ws();
    if (pos != text.size()) {
      throw ParseError("trailing characters", pos);
    }
    return {k, t};
  }

  ////////////////////////////////////////////////////////////////////////
  // Complexes
  ////////////////////////////////////////////////////////////////////////

  using Dims = std::array<size_t, 3>;

  //! An n0 x n1 x n2 array; cell (x, y, z) is stored at x + n0 (y + n1 z).
  struct Complex {
    Dims                 dims{2, 2, 2};
    std::vector<Element> labels;

    Complex() = default;

    explicit Complex(Dims d) : dims(d), labels(d[0] * d[1] * d[2], 0) {
      for (auto n : d) {
        if (n < 2) {
          throw InputError("complex dimensions must be at least 2");
        }
      }
    }

    size_t index(size_t x, size_t y, size_t z) const noexcept {
      return x + dims[0] * (y + dims[1] * z);
    }

    Element& at(size_t x, size_t y, size_t z) {
      return labels[index(x, y, z)];
    }

    Element at(size_t x, size_t y, size_t z) const {
      return labels[index(x, y, z)];
    }

    //! Mat_f: the 2x2x2 block with least vertex f.
    Tuple component(Dims const& f) const {
      Tuple t = 0;
      for (size_t g = 0; g < 8; ++g) {
        t = with(t, g, at(f[0] + (g & 1), f[1] + (g >> 1 & 1), f[2] + (g >> 2 & 1)));
      }
      return t;
    }

    bool operator==(Complex const&) const = default;
  };

  inline Complex complex_from_cube(Tuple c) {
    Complex out(Dims{2, 2, 2});
    for (size_t g = 0; g < 8; ++g) {
      out.at(g & 1, g >> 1 & 1, g >> 2 & 1) = get(c, g);
    }
    return out;
  }

  //! Offsets of all component matrices, in increasing (z, y, x) order.
  inline std::vector<Dims> component_offsets(Dims const& d) {
    std::vector<Dims> out;
    for (size_t z = 0; z + 1 < d[2]; ++z) {
      for (size_t y = 0; y + 1 < d[1]; ++y) {
        for (size_t x = 0; x + 1 < d[0]; ++x) {
          out.push_back({x, y, z});
        }
      }
    }
    return out;
  }

  //! The first offset whose component is not in MT, if any.
  inline std::optional<Dims> is_complex(Complex const& c, TupleSet const& MT) {
    for (auto const& f : component_offsets(c.dims)) {
      if (!MT.contains(c.component(f))) {
        return f;
      }
    }
    return std::nullopt;
  }

  inline Tuple corner(Complex const& c) {
    Tuple t = 0;
    for (size_t g = 0; g < 8; ++g) {
      t = with(t,
               g,
               c.at(g & 1 ? c.dims[0] - 1 : 0,
                    g & 2 ? c.dims[1] - 1 : 0,
                    g & 4 ? c.dims[2] - 1 : 0));
    }
    return t;
  }

  //! Stacks cubes m_0, ..., m_r along `axis`, consecutive cubes sharing a
  //! full face.  Throws if the shared faces disagree.
  inline Complex stack(std::vector<Tuple> const& cubes, size_t axis) {
    if (cubes.empty()) {
      throw InputError("stack: no cubes");
    }
    Dims d{2, 2, 2};
    d[axis] = cubes.size() + 1;
    Complex out(d);
    for (size_t s = 0; s < cubes.size(); ++s) {
      if (s > 0 && face(cubes[s], 3, axis, 0) != face(cubes[s - 1], 3, axis, 1)) {
        throw InputError("stack: cubes " + std::to_string(s - 1) + " and "
                         + std::to_string(s) + " do not share a face");
      }
      for (size_t g = 0; g < 8; ++g) {
        Dims p{g & 1, g >> 1 & 1, g >> 2 & 1};
        p[axis] += s;
        out.at(p[0], p[1], p[2]) = get(cubes[s], g);
      }
    }
    return out;
  }

  constexpr size_t default_complex_cap = 1'000'000;

  //! Calls `visit` on every complex with dimensions `d` whose components all
  //! lie in MT, in lexicographic order of the (z, y, x)-ordered label
  //! sequence.  Stops early when `visit` returns false.  Returns the number
  //! of complexes visited; throws ResourceError past `cap`.
  //!
  //! Cells are filled in increasing index order.  The vertices of any
  //! component are then filled in increasing vertex order, so each partial
  //! component is a prefix of some member of MT; prefixes are checked as
  //! soon as they are extended.
  inline size_t enumerate_complexes(size_t                                n,
                                    TupleSet const&                       MT,
                                    Dims const&                           d,
                                    std::function<bool(Complex const&)> const& visit,
                                    size_t cap = default_complex_cap) {
    std::array<std::unordered_set<Tuple>, 8> prefixes;
    for (auto m : MT) {
      for (size_t t = 0; t < 8; ++t) {
        Tuple mask = t == 7 ? ~Tuple(0) : (Tuple(1) << (8 * (t + 1))) - 1;
        prefixes[t].insert(m & mask);
      }
    }
    Complex c(d);
    size_t  cells = c.labels.size();
    size_t  count = 0;
    bool    stop  = false;
    auto    fits  = [&](size_t x, size_t y, size_t z) {
      // Every component containing (x, y, z) as vertex g.
      for (size_t g = 0; g < 8; ++g) {
        size_t gx = g & 1, gy = g >> 1 & 1, gz = g >> 2 & 1;
        if (x < gx || y < gy || z < gz) {
          continue;
        }
        Dims f{x - gx, y - gy, z - gz};
        if (f[0] + 1 >= d[0] || f[1] + 1 >= d[1] || f[2] + 1 >= d[2]) {
          continue;
        }
        Tuple pre = 0;
        for (size_t h = 0; h <= g; ++h) {
          pre = with(pre, h, c.at(f[0] + (h & 1), f[1] + (h >> 1 & 1), f[2] + (h >> 2 & 1)));
        }
        if (!prefixes[g].count(pre)) {
          return false;
        }
      }
      return true;
    };
    std::function<void(size_t)> dfs = [&](size_t cell) {
      if (stop) {
        return;
      }
      if (cell == cells) {
        if (++count > cap) {
          throw ResourceError("complex enumeration exceeded cap of "
                              + std::to_string(cap));
        }
        if (!visit(c)) {
          stop = true;
        }
        return;
      }
      size_t x = cell % d[0], y = cell / d[0] % d[1], z = cell / (d[0] * d[1]);
      for (Element v = 0; v < n && !stop; ++v) {
        c.labels[cell] = v;
        if (fits(x, y, z)) {
          dfs(cell + 1);
        }
      }
    };
    dfs(0);
    return count;
  }

  //! {(Square_l^0(m), Square_l^1(m)) : m in MT}, without duplicates, in the
  //! order of MT.
  inline std::vector<std::pair<Tuple, Tuple>> square_pair_relation(TupleSet const& MT,
                                                                   size_t          l) {
    if (MT.width() != 8) {
      throw InputError("square_pair_relation needs width-8 tuples");
    }
    std::vector<std::pair<Tuple, Tuple>> out;
    std::unordered_set<Tuple>            seen;
    for (auto m : MT) {
      if (seen.insert(m).second) {
        out.emplace_back(face(m, 3, l, 0), face(m, 3, l, 1));
      }
    }
    return out;
  }

}  // namespace ualg

#endif  // UALG_CUBE_HPP_
