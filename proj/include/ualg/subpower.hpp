// Subalgebras of finite powers A^m: closure of generating sets, and views
// that let a closed tuple set act as an algebra in its own right.

#ifndef UALG_SUBPOWER_HPP_
#define UALG_SUBPOWER_HPP_

#include <concepts>  // for convertible_to
#include <cstddef>   // for size_t
#include <cstdlib>   // for getenv, strtoull
#include <span>      // for span
#include <string>    // for string
#include <vector>    // for vector

#include "algebra.hpp"
#include "error.hpp"
#include "tuple_set.hpp"

namespace ualg {

  //! Anything with a finite universe {0..size()-1} and indexed operations.
  template <typename A>
  concept AlgebraLike = requires(A const& a, size_t k, std::span<Element const> args) {
    { a.size() } -> std::convertible_to<size_t>;
    { a.num_operations() } -> std::convertible_to<size_t>;
    { a.arity(k) } -> std::convertible_to<size_t>;
    { a.apply(k, args) } -> std::convertible_to<Element>;
  };

  constexpr size_t default_closure_cap = 5'000'000;

  //! The closure cap, overridable through UALG_MAX_CLOSURE.
  inline size_t closure_cap_from_env() {
    if (char const* env = std::getenv("UALG_MAX_CLOSURE")) {
      auto v = std::strtoull(env, nullptr, 10);
      if (v > 0) {
        return static_cast<size_t>(v);
      }
    }
    return default_closure_cap;
  }

  namespace detail {
    // f applied coordinatewise to packed tuples.
    inline Tuple apply_coordinatewise(FiniteAlgebra const&    alg,
                                      size_t                  k,
                                      std::span<Tuple const>  args,
                                      size_t                  width) {
      auto const& op = alg.operation(k);
      size_t      n  = alg.size();
      Tuple       out = 0;
      for (size_t i = 0; i < width; ++i) {
        size_t pos = 0;
        for (auto const& t : args) {
          pos = pos * n + get(t, i);
        }
        out |= Tuple(op.table[pos]) << (8 * i);
      }
      return out;
    }

    inline Tuple apply_binary(std::vector<Element> const& table,
                              size_t                      n,
                              Tuple                       x,
                              Tuple                       y,
                              size_t                      width) {
      Tuple out = 0;
      for (size_t i = 0; i < width; ++i) {
        out |= Tuple(table[get(x, i) * n + get(y, i)]) << (8 * i);
      }
      return out;
    }
  }  // namespace detail

  //! Least superset of `generators` closed under every operation of `alg`
  //! applied coordinatewise.  Constants are always included.  Elements are
  //! produced in FIFO order: each new element is combined with all elements
  //! found before it.  Throws ResourceError when more than `cap` tuples
  //! would be produced.
  inline TupleSet generate_subpower(FiniteAlgebra const& alg,
                                    size_t               width,
                                    TupleSet const&      generators,
                                    size_t               cap = default_closure_cap) {
    if (generators.width() != width) {
      throw InputError("generator width " + std::to_string(generators.width())
                       + " does not match power " + std::to_string(width));
    }
    size_t   n = alg.size();
    TupleSet out(width, n);
    auto     add = [&](Tuple t) {
      if (out.insert(t) && out.size() > cap) {
        throw ResourceError("closure exceeded cap of " + std::to_string(cap)
                            + " tuples");
      }
    };
    for (size_t k = 0; k < alg.num_operations(); ++k) {
      if (alg.arity(k) == 0) {
        add(constant_tuple(alg.operation(k).table[0], width));
      }
    }
    for (auto t : generators) {
      add(t);
    }
    size_t const full = out.space();  // 0 when unknown
    std::vector<Tuple> args;
    std::vector<size_t> idx;
    for (size_t cur = 0; cur < out.size(); ++cur) {
      if (full != 0 && out.size() == full) {
        break;
      }
      Tuple x = out[cur];
      for (size_t k = 0; k < alg.num_operations(); ++k) {
        size_t r = alg.arity(k);
        if (r == 0) {
          continue;
        } else if (r == 1) {
          add(detail::apply_coordinatewise(alg, k, {&x, 1}, width));
        } else if (r == 2) {
          auto const& tb = alg.operation(k).table;
          for (size_t s = 0; s <= cur && out.size() != full; ++s) {
            Tuple y = out[s];
            add(detail::apply_binary(tb, n, x, y, width));
            if (s != cur) {
              add(detail::apply_binary(tb, n, y, x, width));
            }
          }
        } else {
          // All r-tuples over [0, cur] that use cur at least once.
          idx.assign(r, 0);
          args.assign(r, 0);
          while (true) {
            bool uses_cur = false;
            for (size_t i = 0; i < r; ++i) {
              uses_cur |= (idx[i] == cur);
              args[i] = out[idx[i]];
            }
            if (uses_cur) {
              add(detail::apply_coordinatewise(alg, k, args, width));
            }
            size_t i = r;
            while (i > 0 && idx[i - 1] == cur) {
              idx[--i] = 0;
            }
            if (i == 0) {
              break;
            }
            ++idx[i - 1];
          }
        }
      }
    }
    return out;
  }

  //! A closed subset of A^m indexed 0..N-1 (in the order of `universe`),
  //! acting as an algebra through coordinatewise operations.
  class SubAlgebraView {
   public:
    SubAlgebraView(FiniteAlgebra const& parent, TupleSet universe)
        : _parent(&parent), _universe(std::move(universe)) {}

    FiniteAlgebra const& parent() const noexcept {
      return *_parent;
    }

    size_t power() const noexcept {
      return _universe.width();
    }

    TupleSet const& universe() const noexcept {
      return _universe;
    }

    size_t size() const noexcept {
      return _universe.size();
    }

    size_t num_operations() const noexcept {
      return _parent->num_operations();
    }

    size_t arity(size_t k) const {
      return _parent->arity(k);
    }

    Tuple tuple(size_t i) const {
      return _universe[i];
    }

    std::optional<size_t> index_of(Tuple t) const {
      return _universe.index_of(t);
    }

    //! Throws InputError if the result leaves the universe.
    Element apply(size_t k, std::span<Element const> args) const {
      _scratch.resize(args.size());
      for (size_t i = 0; i < args.size(); ++i) {
        _scratch[i] = _universe[args[i]];
      }
      Tuple t  = detail::apply_coordinatewise(*_parent, k, _scratch, power());
      auto  ix = _universe.index_of(t);
      if (!ix) {
        std::string msg = "universe not closed: " + _parent->operation(k).symbol
                          + "(";
        for (size_t i = 0; i < args.size(); ++i) {
          msg += (i ? ", " : "") + tuple_to_string(_scratch[i]);
        }
        throw InputError(msg + ") = " + tuple_to_string(t) + " is missing");
      }
      return static_cast<Element>(*ix);
    }

    std::string tuple_to_string(Tuple t) const {
      std::string s = "(";
      for (size_t i = 0; i < power(); ++i) {
        s += (i ? "," : "") + std::to_string(get(t, i));
      }
      return s + ")";
    }

   private:
    FiniteAlgebra const*       _parent;
    TupleSet                   _universe;
    mutable std::vector<Tuple> _scratch;
  };

  //! Materialises a view as a FiniteAlgebra on {0..N-1}.
  inline FiniteAlgebra as_algebra(SubAlgebraView const& view,
                                  std::string           name = "") {
    size_t                      N = view.size();
    std::vector<OperationTable> ops;
    std::vector<Element>        args;
    for (size_t k = 0; k < view.num_operations(); ++k) {
      auto const&    src = view.parent().operation(k);
      OperationTable op{src.symbol, src.arity, {}};
      size_t         total = FiniteAlgebra::ipow(N, src.arity);
      op.table.reserve(total);
      args.assign(src.arity, 0);
      for (size_t pos = 0; pos < total; ++pos) {
        size_t rest = pos;
        for (size_t i = src.arity; i-- > 0;) {
          args[i] = static_cast<Element>(rest % N);
          rest /= N;
        }
        op.table.push_back(view.apply(k, args));
      }
      ops.push_back(std::move(op));
    }
    if (name.empty()) {
      name = view.parent().name() + "^" + std::to_string(view.power()) + "|"
             + std::to_string(N);
    }
    return FiniteAlgebra(std::move(name), N, std::move(ops));
  }

}  // namespace ualg

#endif  // UALG_SUBPOWER_HPP_
