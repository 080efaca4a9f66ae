// Shared state for one algebra: the congruence lattice, an optional Mal'cev
// term, and memoized matrix algebras.

#ifndef UALG_ENGINE_HPP_
#define UALG_ENGINE_HPP_

#include <map>       // for map
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "algebra.hpp"
#include "congruence.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "subpower.hpp"
#include "term.hpp"
#include "tuple_set.hpp"

namespace ualg {

  struct EngineOptions {
    //! Build M(T) from a Mal'cev or majority term when one exists.
    bool   fast_paths  = true;
    size_t closure_cap = closure_cap_from_env();
  };

  inline std::string tuple_key(std::vector<Partition> const& T) {
    std::string key;
    for (auto const& p : T) {
      for (auto r : p.reps()) {
        key += std::to_string(r);
        key += ',';
      }
      key += ';';
    }
    return key;
  }

  class Engine {
   public:
    explicit Engine(FiniteAlgebra alg, EngineOptions opts = {})
        : _alg(std::move(alg)), _opts(opts) {}

    FiniteAlgebra const& algebra() const noexcept {
      return _alg;
    }

    EngineOptions const& options() const noexcept {
      return _opts;
    }

    size_t size() const noexcept {
      return _alg.size();
    }

    CongruenceLattice const& lattice() {
      if (!_lattice) {
        _lattice = con_lattice(_alg);
      }
      return *_lattice;
    }

    std::optional<Term> const& malcev() {
      if (!_malcev_searched) {
        _malcev_searched = true;
        if (_alg.size() <= 16) {
          _malcev = find_malcev_term(_alg);
        }
      }
      return _malcev;
    }

    std::optional<Term> const& majority() {
      if (!_majority_searched) {
        _majority_searched = true;
        if (_alg.size() <= 16) {
          _majority = find_majority_term(_alg);
        }
      }
      return _majority;
    }

    //! The construction used for M(T) with three congruences.
    std::string matrix_method() {
      if (_opts.fast_paths && malcev()) {
        return "malcev";
      }
      if (_opts.fast_paths && majority()) {
        return "majority";
      }
      return "closure";
    }

    //! M(T), sorted.  Squares come from plain closure when the power is
    //! small, so the closure route for binary Delta never sees a fast path.
    TupleSet const& matrices(std::vector<Partition> const& T) {
      auto key = tuple_key(T);
      auto it  = _matrices.find(key);
      if (it != _matrices.end()) {
        return it->second;
      }
      check_tuple(_alg, T);
      auto     method = T.size() == 2 && _alg.size() <= 16 ? "closure" : matrix_method();
      TupleSet m      = method == std::string("malcev")
                            ? matrix_algebra_malcev(_alg, T, _opts.closure_cap)
                        : method == std::string("majority")
                            ? matrix_algebra_majority(_alg, T, _opts.closure_cap)
                            : matrix_algebra_closure(_alg, T, _opts.closure_cap);
      return _matrices.emplace(key, std::move(m)).first->second;
    }

    Partition const* cached_commutator(std::string const& key) const {
      auto it = _commutators.find(key);
      return it == _commutators.end() ? nullptr : &it->second;
    }

    Partition const& store_commutator(std::string const& key, Partition p) {
      return _commutators.insert_or_assign(key, std::move(p)).first->second;
    }

   private:
    FiniteAlgebra                    _alg;
    EngineOptions                    _opts;
    std::optional<CongruenceLattice> _lattice;
    bool                             _malcev_searched = false;
    std::optional<Term>              _malcev;
    bool                             _majority_searched = false;
    std::optional<Term>              _majority;
    std::map<std::string, TupleSet>  _matrices;
    std::map<std::string, Partition> _commutators;
  };

}  // namespace ualg

#endif  // UALG_ENGINE_HPP_
