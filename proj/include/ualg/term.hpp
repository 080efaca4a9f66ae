// Terms over an algebra's signature: syntax, evaluation, identity checking,
// and bounded searches through the clone for Mal'cev and Day terms.

#ifndef UALG_TERM_HPP_
#define UALG_TERM_HPP_

#include <algorithm>      // for find
#include <cctype>         // for isspace
#include <cstddef>        // for size_t
#include <cstdint>        // for uint8_t
#include <deque>          // for deque
#include <map>            // for map
#include <optional>       // for optional
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <utility>        // for pair, move
#include <vector>         // for vector

#include "algebra.hpp"
#include "error.hpp"

namespace ualg {

  //! A variable (no arguments, is_application false) or an application of
  //! an operation symbol.  A bare token naming a nullary operation parses
  //! as a variable and evaluates to the constant unless it is bound.
  struct Term {
    std::string       symbol;
    std::vector<Term> args;
    bool              is_application = false;

    static Term var(std::string name) {
      return Term{std::move(name), {}, false};
    }

    static Term app(std::string symbol, std::vector<Term> args) {
      return Term{std::move(symbol), std::move(args), true};
    }

    bool operator==(Term const&) const = default;
  };

  namespace detail {
    inline bool is_token_char(char c) {
      return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')'
             && c != ',';
    }

    class TermParser {
     public:
      explicit TermParser(std::string const& text) : _text(text) {}

      Term parse() {
        Term t = term();
        skip_ws();
        if (_pos != _text.size()) {
          throw ParseError("unexpected '" + std::string(1, _text[_pos]) + "'", _pos);
        }
        return t;
      }

     private:
      void skip_ws() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      Term term() {
        skip_ws();
        size_t start = _pos;
        while (_pos < _text.size() && is_token_char(_text[_pos])) {
          ++_pos;
        }
        if (start == _pos) {
          if (_pos == _text.size()) {
            throw ParseError("unexpected end of input", _pos);
          }
          throw ParseError("expected a term", _pos);
        }
        std::string name = _text.substr(start, _pos - start);
        skip_ws();
        if (_pos >= _text.size() || _text[_pos] != '(') {
          return Term::var(name);
        }
        ++_pos;
        std::vector<Term> args;
        while (true) {
          args.push_back(term());
          skip_ws();
          if (_pos < _text.size() && _text[_pos] == ',') {
            ++_pos;
            continue;
          }
          if (_pos < _text.size() && _text[_pos] == ')') {
            ++_pos;
            break;
          }
          throw ParseError("expected ',' or ')'", _pos);
        }
        return Term::app(name, std::move(args));
      }

      std::string const& _text;
      size_t             _pos = 0;
    };
  }  // namespace detail

  inline Term parse_term(std::string const& text) {
    return detail::TermParser(text).parse();
  }

  inline std::string to_string(Term const& t) {
    if (!t.is_application) {
      return t.symbol;
    }
    std::string s = t.symbol + "(";
    for (size_t i = 0; i < t.args.size(); ++i) {
      s += (i ? ", " : "") + to_string(t.args[i]);
    }
    return s + ")";
  }

  //! Substitutes terms for variables, simultaneously.
  inline Term substitute(Term const& t, std::map<std::string, Term> const& sub) {
    if (!t.is_application) {
      auto it = sub.find(t.symbol);
      return it == sub.end() ? t : it->second;
    }
    Term out = Term::app(t.symbol, {});
    for (auto const& a : t.args) {
      out.args.push_back(substitute(a, sub));
    }
    return out;
  }

  using Environment = std::map<std::string, Element>;

  inline Element eval_term(FiniteAlgebra const& alg, Term const& t, Environment const& env) {
    if (!t.is_application) {
      if (auto it = env.find(t.symbol); it != env.end()) {
        if (it->second >= alg.size()) {
          throw InputError("value of \"" + t.symbol + "\" out of range");
        }
        return it->second;
      }
      if (auto k = alg.find(t.symbol); k && alg.arity(*k) == 0) {
        return alg.operation(*k).table[0];
      }
      throw InputError("unbound variable \"" + t.symbol + "\"");
    }
    std::vector<Element> vals;
    for (auto const& a : t.args) {
      vals.push_back(eval_term(alg, a, env));
    }
    return alg.eval(t.symbol, vals);
  }

  //! Variables of t (tokens that are not nullary symbols of alg) in order of
  //! first occurrence, appended to `out` without repetition.
  inline void collect_variables(FiniteAlgebra const&      alg,
                                Term const&               t,
                                std::vector<std::string>& out) {
    if (!t.is_application) {
      auto k = alg.find(t.symbol);
      if ((!k || alg.arity(*k) != 0)
          && std::find(out.begin(), out.end(), t.symbol) == out.end()) {
        out.push_back(t.symbol);
      }
      return;
    }
    for (auto const& a : t.args) {
      collect_variables(alg, a, out);
    }
  }

  //! The term operation of t on A^v, v = vars.size(): entry at index
  //! sum a_i n^(v-1-i) is t(a_0, ..., a_{v-1}).  Variables outside `vars`
  //! resolve to nullary operations or raise InputError.
  inline std::vector<Element> term_table(FiniteAlgebra const&            alg,
                                         Term const&                     t,
                                         std::vector<std::string> const& vars) {
    size_t n     = alg.size();
    size_t total = FiniteAlgebra::ipow(n, vars.size());
    if (!t.is_application) {
      auto it = std::find(vars.begin(), vars.end(), t.symbol);
      if (it != vars.end()) {
        size_t               i      = it - vars.begin();
        size_t               stride = FiniteAlgebra::ipow(n, vars.size() - 1 - i);
        std::vector<Element> out(total);
        for (size_t p = 0; p < total; ++p) {
          out[p] = static_cast<Element>(p / stride % n);
        }
        return out;
      }
      return std::vector<Element>(total, eval_term(alg, t, {}));
    }
    auto k = alg.find(t.symbol);
    if (!k) {
      throw InputError("unknown operation symbol \"" + t.symbol + "\"");
    }
    if (alg.arity(*k) != t.args.size()) {
      throw InputError("arity mismatch for \"" + t.symbol + "\": expected "
                       + std::to_string(alg.arity(*k)) + " arguments, got "
                       + std::to_string(t.args.size()));
    }
    std::vector<std::vector<Element>> sub;
    for (auto const& a : t.args) {
      sub.push_back(term_table(alg, a, vars));
    }
    std::vector<Element> out(total), args(sub.size());
    for (size_t p = 0; p < total; ++p) {
      for (size_t i = 0; i < sub.size(); ++i) {
        args[i] = sub[i][p];
      }
      out[p] = alg.apply(*k, args);
    }
    return out;
  }

  inline Environment environment_at(std::vector<std::string> const& vars,
                                    size_t                          n,
                                    size_t                          p) {
    Environment env;
    for (size_t i = vars.size(); i-- > 0;) {
      env[vars[i]] = static_cast<Element>(p % n);
      p /= n;
    }
    return env;
  }

  struct IdentityCheck {
    bool                       holds = true;
    std::optional<Environment> witness;
  };

  //! Exhaustive over A^vars; the witness is the first falsifying assignment
  //! with vars[0] most significant.  Empty `vars` means the variables of
  //! lhs then rhs.
  inline IdentityCheck check_identity(FiniteAlgebra const&     alg,
                                      Term const&              lhs,
                                      Term const&              rhs,
                                      std::vector<std::string> vars = {}) {
    if (vars.empty()) {
      collect_variables(alg, lhs, vars);
      collect_variables(alg, rhs, vars);
    }
    auto l = term_table(alg, lhs, vars);
    auto r = term_table(alg, rhs, vars);
    for (size_t p = 0; p < l.size(); ++p) {
      if (l[p] != r[p]) {
        return {false, environment_at(vars, alg.size(), p)};
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Clone enumeration
  ////////////////////////////////////////////////////////////////////////

  constexpr size_t default_clone_cap = 200'000;
  // Budget for stored function tables, in bytes.
  constexpr size_t clone_memory_budget = size_t(256) << 20;

  //! The v-ary term operations of an algebra with n <= 256, as byte strings
  //! of length n^v, generated from the projections and constants in FIFO
  //! order.  Each function keeps the term that first produced it.
  class Clone {
   public:
    struct Origin {
      size_t              op = 0;  // ignored for projections
      std::vector<size_t> args;
      size_t              projection = 0;
      bool                is_projection = false;
    };

    Clone(FiniteAlgebra const& alg, std::vector<std::string> vars)
        : _alg(&alg), _vars(std::move(vars)) {
      if (alg.size() > max_packed_universe) {
        throw InputError("clone enumeration needs a universe of size at most 256");
      }
      _length = FiniteAlgebra::ipow(alg.size(), _vars.size());
    }

    //! Runs the closure until it is complete, `stop` returns true for a new
    //! function, or the cap is reached.  Returns true iff complete.
    template <typename Stop>
    bool run(size_t cap, Stop&& stop) {
      cap = std::min(cap, clone_memory_budget / std::max<size_t>(_length, 1));
      size_t n = _alg->size();
      auto add = [&](std::string&& f, Origin&& o) -> bool {
        if (_index.count(f)) {
          return false;
        }
        if (_fns.size() >= cap) {
          _capped = true;
          return true;
        }
        _index.emplace(f, _fns.size());
        _fns.push_back(std::move(f));
        _origins.push_back(std::move(o));
        return stop(_fns.size() - 1);
      };
      for (size_t i = 0; i < _vars.size(); ++i) {
        size_t      stride = FiniteAlgebra::ipow(n, _vars.size() - 1 - i);
        std::string f(_length, '\0');
        for (size_t p = 0; p < _length; ++p) {
          f[p] = static_cast<char>(p / stride % n);
        }
        Origin o;
        o.is_projection = true;
        o.projection    = i;
        if (add(std::move(f), std::move(o))) {
          return false;
        }
      }
      for (size_t k = 0; k < _alg->num_operations(); ++k) {
        if (_alg->arity(k) == 0) {
          std::string f(_length, static_cast<char>(_alg->operation(k).table[0]));
          if (add(std::move(f), Origin{k, {}, 0, false})) {
            return false;
          }
        }
      }
      std::vector<size_t>  idx;
      std::vector<Element> args;
      for (size_t cur = 0; cur < _fns.size(); ++cur) {
        for (size_t k = 0; k < _alg->num_operations(); ++k) {
          size_t r = _alg->arity(k);
          if (r == 0) {
            continue;
          }
          idx.assign(r, 0);
          args.assign(r, 0);
          while (true) {
            bool uses_cur = false;
            for (size_t i = 0; i < r; ++i) {
              uses_cur |= idx[i] == cur;
            }
            if (uses_cur) {
              std::string f(_length, '\0');
              for (size_t p = 0; p < _length; ++p) {
                for (size_t i = 0; i < r; ++i) {
                  args[i] = static_cast<std::uint8_t>(_fns[idx[i]][p]);
                }
                f[p] = static_cast<char>(_alg->apply(k, args));
              }
              if (add(std::move(f), Origin{k, idx, 0, false})) {
                return false;
              }
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
      return true;
    }

    size_t size() const noexcept {
      return _fns.size();
    }

    bool capped() const noexcept {
      return _capped;
    }

    //! f(a_0, ..., a_{v-1}) for the point with mixed-radix index p.
    Element value(size_t f, size_t p) const {
      return static_cast<std::uint8_t>(_fns[f][p]);
    }

    std::string const& table(size_t f) const {
      return _fns[f];
    }

    std::optional<size_t> find(std::string const& table) const {
      auto it = _index.find(table);
      return it == _index.end() ? std::nullopt : std::optional<size_t>(it->second);
    }

    size_t point(std::vector<size_t> const& a) const {
      size_t p = 0;
      for (auto x : a) {
        p = p * _alg->size() + x;
      }
      return p;
    }

    Term term(size_t f) const {
      auto const& o = _origins[f];
      if (o.is_projection) {
        return Term::var(_vars[o.projection]);
      }
      auto const& op = _alg->operation(o.op);
      if (op.arity == 0) {
        return Term::var(op.symbol);
      }
      std::vector<Term> args;
      for (auto a : o.args) {
        args.push_back(term(a));
      }
      return Term::app(op.symbol, std::move(args));
    }

   private:
    FiniteAlgebra const*                    _alg;
    std::vector<std::string>                _vars;
    size_t                                  _length = 0;
    bool                                    _capped = false;
    std::vector<std::string>                _fns;
    std::vector<Origin>                     _origins;
    std::unordered_map<std::string, size_t> _index;
  };

  //! The first ternary term operation, in clone enumeration order, whose
  //! values satisfy `ok(f(a, b, b), f(a, a, b), f(a, b, a), a, b)` for all
  //! a, b.  Bounded by `cap` functions.
  template <typename Ok>
  std::optional<Term> find_ternary_term(FiniteAlgebra const& alg, size_t cap, Ok&& ok) {
    size_t n = alg.size();
    if (n > 16) {
      return std::nullopt;
    }
    Clone                 clone(alg, {"x", "y", "z"});
    std::optional<size_t> hit;
    clone.run(cap, [&](size_t f) {
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          if (!ok(clone.value(f, clone.point({a, b, b})),
                  clone.value(f, clone.point({a, a, b})),
                  clone.value(f, clone.point({a, b, a})),
                  a,
                  b)) {
            return false;
          }
        }
      }
      hit = f;
      return true;
    });
    if (!hit) {
      return std::nullopt;
    }
    return clone.term(*hit);
  }

  //! A term p(x, y, z) with p(x, y, y) = x and p(x, x, y) = y.
  inline std::optional<Term> find_malcev_term(FiniteAlgebra const& alg,
                                              size_t cap = default_clone_cap) {
    return find_ternary_term(alg, cap, [](size_t abb, size_t aab, size_t, size_t a, size_t b) {
      return abb == a && aab == b;
    });
  }

  //! A term m(x, y, z) with m(x, x, y) = m(x, y, x) = m(y, x, x) = x.
  inline std::optional<Term> find_majority_term(FiniteAlgebra const& alg,
                                                size_t cap = default_clone_cap) {
    // m(a, b, b) = b covers m(y, x, x) = x with the roles of a, b swapped.
    return find_ternary_term(alg, cap, [](size_t abb, size_t aab, size_t aba, size_t a, size_t b) {
      return abb == b && aab == a && aba == a;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Day terms
  ////////////////////////////////////////////////////////////////////////

  using DaySequence = std::vector<Term>;

  inline std::vector<std::string> const& day_variables() {
    static std::vector<std::string> const v{"x", "y", "z", "u"};
    return v;
  }

  struct DayCheck {
    bool                       holds = true;
    std::string                failing;  // e.g. "(4) e=0"
    std::optional<Environment> witness;
  };

  inline DayCheck check_day_sequence(FiniteAlgebra const& alg, DaySequence const& seq) {
    if (seq.empty()) {
      return {false, "empty sequence", std::nullopt};
    }
    auto const& vars = day_variables();
    auto        V    = [](char const* s) { return parse_term(s); };
    auto sub = [](Term const& t, char const* a, char const* b, char const* c, char const* d) {
      return substitute(t,
                        {{"x", Term::var(a)},
                         {"y", Term::var(b)},
                         {"z", Term::var(c)},
                         {"u", Term::var(d)}});
    };
    auto fail = [](std::string what, IdentityCheck const& c) {
      return DayCheck{false, std::move(what), c.witness};
    };
    size_t last = seq.size() - 1;
    for (size_t e = 0; e <= last; ++e) {
      auto c = check_identity(alg, sub(seq[e], "x", "y", "y", "x"), V("x"), vars);
      if (!c.holds) {
        return fail("(1) e=" + std::to_string(e), c);
      }
    }
    if (auto c = check_identity(alg, seq[0], V("x"), vars); !c.holds) {
      return fail("(2)", c);
    }
    if (auto c = check_identity(alg, seq[last], V("u"), vars); !c.holds) {
      return fail("(3)", c);
    }
    for (size_t e = 0; e < last; ++e) {
      IdentityCheck c;
      if (e % 2 == 0) {
        c = check_identity(
            alg, sub(seq[e], "x", "x", "u", "u"), sub(seq[e + 1], "x", "x", "u", "u"), vars);
      } else {
        c = check_identity(
            alg, sub(seq[e], "x", "y", "y", "u"), sub(seq[e + 1], "x", "y", "y", "u"), vars);
      }
      if (!c.holds) {
        return fail((e % 2 == 0 ? "(4) e=" : "(5) e=") + std::to_string(e), c);
      }
    }
    return {};
  }

  //! m_0 = x, m_1 = p(u, z, y), m_2 = u for a Mal'cev term p.
  inline DaySequence day_from_malcev(Term const& p) {
    auto m1 = substitute(
        p, {{"x", Term::var("u")}, {"y", Term::var("z")}, {"z", Term::var("y")}});
    return {Term::var("x"), m1, Term::var("u")};
  }

  struct DaySearch {
    std::optional<DaySequence> sequence;
    bool                       exhausted = false;  // clone enumeration capped
    size_t                     functions = 0;
  };

  //! Shortest Day sequence among the enumerated 4-ary term operations.
  //! Links of even index match on (x, x, u, u) inputs and odd links on
  //! (x, y, y, u); identity (1) filters nodes.
  inline DaySearch find_day_terms(FiniteAlgebra const& alg, size_t cap = default_clone_cap) {
    size_t    n = alg.size();
    DaySearch out;
    if (n == 1) {
      out.sequence = DaySequence{Term::var("x"), Term::var("u")};
      return out;
    }
    if (n > 16) {
      out.exhausted = true;
      return out;
    }
    Clone clone(alg, day_variables());
    auto  restrict_to = [&](size_t f, bool even) {
      std::string key;
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          if (even) {
            key += static_cast<char>(clone.value(f, clone.point({a, a, b, b})));
            continue;
          }
          for (size_t c = 0; c < n; ++c) {
            key += static_cast<char>(clone.value(f, clone.point({a, b, b, c})));
          }
        }
      }
      return key;
    };
    auto node_ok = [&](size_t f) {
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          if (clone.value(f, clone.point({a, b, b, a})) != a) {
            return false;
          }
        }
      }
      return true;
    };
    // Projections x (index 0) and u (index 3) come first.  A middle term
    // linking both directly gives the shortest nontrivial chain.
    std::optional<size_t> middle;
    std::string           x_even, u_odd;
    bool                  complete = clone.run(cap, [&](size_t f) {
      if (f == 0) {
        x_even = restrict_to(0, true);
        return false;
      }
      if (f == 3) {
        u_odd = restrict_to(3, false);
      }
      if (f >= 4 && node_ok(f) && restrict_to(f, true) == x_even
          && restrict_to(f, false) == u_odd) {
        middle = f;
        return true;
      }
      return false;
    });
    out.functions = clone.size();
    if (middle) {
      out.sequence = DaySequence{Term::var("x"), clone.term(*middle), Term::var("u")};
      return out;
    }
    out.exhausted = !complete;
    // Breadth-first search over (function, parity of e).
    std::vector<size_t> nodes;
    for (size_t f = 0; f < clone.size(); ++f) {
      if (node_ok(f)) {
        nodes.push_back(f);
      }
    }
    std::map<std::string, std::vector<size_t>> by_even, by_odd;
    std::vector<std::string>                    even_key(clone.size()), odd_key(clone.size());
    for (auto f : nodes) {
      even_key[f] = restrict_to(f, true);
      odd_key[f]  = restrict_to(f, false);
      by_even[even_key[f]].push_back(f);
      by_odd[odd_key[f]].push_back(f);
    }
    // State s = 2 f + parity; parity 0 means the next link is even.
    std::unordered_map<size_t, size_t> parent;
    std::deque<size_t>                 queue{0};
    parent[0] = 0;
    std::optional<size_t> goal;
    while (!queue.empty() && !goal) {
      size_t s = queue.front();
      queue.pop_front();
      size_t f = s / 2, parity = s % 2;
      auto const& bucket = parity == 0 ? by_even[even_key[f]] : by_odd[odd_key[f]];
      for (auto g : bucket) {
        size_t t = 2 * g + (1 - parity);
        if (parent.emplace(t, s).second) {
          if (g == 3) {
            goal = t;
            break;
          }
          queue.push_back(t);
        }
      }
    }
    if (goal) {
      std::vector<size_t> chain;
      for (size_t s = *goal; s != 0; s = parent[s]) {
        chain.push_back(s / 2);
      }
      chain.push_back(0);
      DaySequence seq;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        seq.push_back(clone.term(*it));
      }
      out.sequence = std::move(seq);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cube terms
  ////////////////////////////////////////////////////////////////////////

  //! Variables x000, x100, ..., x011 of the 7-ary cube terms, listed by
  //! vertex index 0..6.
  inline std::vector<std::string> const& cube_variables() {
    static std::vector<std::string> const v{
        "x000", "x100", "x010", "x110", "x001", "x101", "x011"};
    return v;
  }

  //! d(d(v0, v1, v2), v3, d(v4, v5, v6)) with d's variables read as
  //! (x, y, z).
  inline Term compose_cube_term(Term const& d) {
    auto const& v  = cube_variables();
    auto        at = [&](size_t a, size_t b, size_t c) {
      return substitute(
          d, {{"x", Term::var(v[a])}, {"y", Term::var(v[b])}, {"z", Term::var(v[c])}});
    };
    return substitute(d, {{"x", at(0, 1, 2)}, {"y", Term::var(v[3])}, {"z", at(4, 5, 6)}});
  }

  inline Term wobbly_cube_term(Term const& d) {
    return compose_cube_term(d);
  }

  //! Reads a term file of "name := term" lines; blank lines and lines
  //! starting with '#' are skipped.
  inline std::vector<std::pair<std::string, Term>> parse_term_file(std::string const& text) {
    std::vector<std::pair<std::string, Term>> out;
    size_t                                    line_no = 0, start = 0;
    while (start <= text.size()) {
      auto end  = text.find('\n', start);
      auto line = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      ++line_no;
      start = end == std::string::npos ? text.size() + 1 : end + 1;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') {
        continue;
      }
      auto def = line.find(":=");
      if (def == std::string::npos) {
        throw InputError("line " + std::to_string(line_no) + ": expected \"name := term\"");
      }
      auto name = line.substr(0, def);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      try {
        out.emplace_back(name, parse_term(line.substr(def + 2)));
      } catch (ParseError const& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    return out;
  }

}  // namespace ualg

#endif  // UALG_TERM_HPP_
