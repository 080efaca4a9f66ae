// Finite algebras given by total operation tables, and the JSON interchange
// format used to read and write them.

#ifndef UALG_ALGEBRA_HPP_
#define UALG_ALGEBRA_HPP_

#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <fstream>        // for ifstream
#include <optional>       // for optional
#include <span>           // for span
#include <sstream>        // for ostringstream
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <utility>        // for move
#include <vector>         // for vector

#include "json.hpp"

#include "error.hpp"

namespace ualg {

  using Element = std::uint32_t;

  // Largest universe whose elements fit in one byte of a packed tuple.
  constexpr size_t max_packed_universe = 256;

  //! One basic operation. Arguments (a_0, ..., a_{r-1}) are stored at
  //! index sum a_i * n^(r-1-i).
  struct OperationTable {
    std::string          symbol;
    size_t               arity = 0;
    std::vector<Element> table;
  };

  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;

    //! Validates every invariant; throws InputError naming the offending
    //! operation.
    FiniteAlgebra(std::string name, size_t size, std::vector<OperationTable> ops)
        : _name(std::move(name)), _size(size), _ops(std::move(ops)) {
      if (_size == 0) {
        throw InputError("size must be positive");
      }
      for (size_t k = 0; k < _ops.size(); ++k) {
        auto const& op  = _ops[k];
        auto        loc = "operations[" + std::to_string(k) + "] (\"" + op.symbol
                   + "\")";
        if (op.symbol.empty()) {
          throw InputError(loc + ": empty symbol");
        }
        if (_index.count(op.symbol) != 0) {
          throw InputError(loc + ": duplicate symbol \"" + op.symbol + "\"");
        }
        size_t expected = ipow(_size, op.arity);
        if (op.table.size() != expected) {
          throw InputError(loc + ": table length "
                           + std::to_string(op.table.size()) + " ≠ "
                           + std::to_string(expected));
        }
        for (size_t i = 0; i < op.table.size(); ++i) {
          if (op.table[i] >= _size) {
            throw InputError(loc + ": table[" + std::to_string(i) + "] = "
                             + std::to_string(op.table[i])
                             + " out of range for size "
                             + std::to_string(_size));
          }
        }
        _index.emplace(op.symbol, k);
      }
    }

    std::string const& name() const noexcept {
      return _name;
    }

    size_t size() const noexcept {
      return _size;
    }

    size_t num_operations() const noexcept {
      return _ops.size();
    }

    OperationTable const& operation(size_t k) const {
      return _ops.at(k);
    }

    std::vector<OperationTable> const& operations() const noexcept {
      return _ops;
    }

    size_t arity(size_t k) const {
      return _ops[k].arity;
    }

    std::optional<size_t> find(std::string const& symbol) const {
      auto it = _index.find(symbol);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    //! Unchecked table lookup by operation index.
    Element apply(size_t k, std::span<Element const> args) const {
      auto const& op  = _ops[k];
      size_t      pos = 0;
      for (size_t i = 0; i < op.arity; ++i) {
        pos = pos * _size + args[i];
      }
      return op.table[pos];
    }

    //! Checked evaluation of a basic operation by symbol.
    Element eval(std::string const& symbol, std::span<Element const> args) const {
      auto k = find(symbol);
      if (!k) {
        throw InputError("unknown operation symbol \"" + symbol + "\"");
      }
      if (args.size() != _ops[*k].arity) {
        throw InputError("arity mismatch for \"" + symbol + "\": expected "
                         + std::to_string(_ops[*k].arity) + " arguments, got "
                         + std::to_string(args.size()));
      }
      for (auto a : args) {
        if (a >= _size) {
          throw InputError("argument " + std::to_string(a)
                           + " out of range for size " + std::to_string(_size));
        }
      }
      return apply(*k, args);
    }

    static size_t ipow(size_t base, size_t exp) {
      size_t r = 1;
      for (size_t i = 0; i < exp; ++i) {
        r *= base;
      }
      return r;
    }

   private:
    std::string                             _name;
    size_t                                  _size = 0;
    std::vector<OperationTable>             _ops;
    std::unordered_map<std::string, size_t> _index;
  };

  ////////////////////////////////////////////////////////////////////////
  // JSON interchange
  ////////////////////////////////////////////////////////////////////////

  inline FiniteAlgebra algebra_from_json(nlohmann::json const& doc) {
    using nlohmann::json;
    auto require = [](json const& obj, char const* key, std::string const& loc)
        -> json const& {
      if (!obj.is_object() || !obj.contains(key)) {
        throw InputError(loc + ": missing key \"" + key + "\"");
      }
      return obj.at(key);
    };
    auto as_uint = [](json const& v, std::string const& loc) -> size_t {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InputError(loc + ": expected a nonnegative integer");
      }
      return v.get<size_t>();
    };
    if (!doc.is_object()) {
      throw InputError("algebra document: expected an object");
    }
    std::string name;
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) {
        throw InputError("name: expected a string");
      }
      name = doc["name"].get<std::string>();
    }
    size_t size     = as_uint(require(doc, "size", "algebra"), "size");
    auto const& ops = require(doc, "operations", "algebra");
    if (!ops.is_array()) {
      throw InputError("operations: expected an array");
    }
    std::vector<OperationTable> tables;
    for (size_t k = 0; k < ops.size(); ++k) {
      auto           loc = "operations[" + std::to_string(k) + "]";
      OperationTable op;
      auto const&    sym = require(ops[k], "symbol", loc);
      if (!sym.is_string()) {
        throw InputError(loc + ".symbol: expected a string");
      }
      op.symbol       = sym.get<std::string>();
      op.arity        = as_uint(require(ops[k], "arity", loc), loc + ".arity");
      auto const& tbl = require(ops[k], "table", loc);
      if (!tbl.is_array()) {
        throw InputError(loc + ".table: expected an array");
      }
      for (size_t i = 0; i < tbl.size(); ++i) {
        op.table.push_back(static_cast<Element>(
            as_uint(tbl[i], loc + ".table[" + std::to_string(i) + "]")));
      }
      tables.push_back(std::move(op));
    }
    return FiniteAlgebra(std::move(name), size, std::move(tables));
  }

  inline FiniteAlgebra load_algebra(std::string const& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw InputError(std::string("malformed document: ") + e.what());
    }
    return algebra_from_json(doc);
  }

  inline FiniteAlgebra load_algebra_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open algebra file \"" + path + "\"");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_algebra(ss.str());
  }

  inline nlohmann::json to_json(FiniteAlgebra const& alg) {
    nlohmann::json ops = nlohmann::json::array();
    for (auto const& op : alg.operations()) {
      ops.push_back(
          {{"symbol", op.symbol}, {"arity", op.arity}, {"table", op.table}});
    }
    return {{"name", alg.name()}, {"size", alg.size()}, {"operations", ops}};
  }

}  // namespace ualg

#endif  // UALG_ALGEBRA_HPP_
