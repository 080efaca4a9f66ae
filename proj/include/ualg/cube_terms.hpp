// Difference terms, strong and wobbly cube terms, and the Delta memberships
// they produce.

#ifndef UALG_CUBE_TERMS_HPP_
#define UALG_CUBE_TERMS_HPP_

#include <algorithm>  // for find
#include <cstddef>   // for size_t
#include <map>       // for map
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "algebra.hpp"
#include "commutator.hpp"
#include "congruence.hpp"
#include "delta.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "term.hpp"
#include "tuple_set.hpp"

namespace ualg {

  //! Outcome of a term check: the first failing clause and the elements
  //! that witness it.
  struct TermReport {
    bool                 holds = true;
    std::string          clause;
    std::vector<Element> witness;
    //! Number of instances examined by an enumeration.
    size_t checked = 0;
    //! The enumeration stopped at its cap.
    bool exhausted = false;
  };

  namespace detail {
    inline Term apply_vars(Term const& t, std::vector<std::string> const& from,
                           std::vector<std::string> const& to) {
      std::map<std::string, Term> sub;
      for (size_t i = 0; i < from.size(); ++i) {
        sub.emplace(from[i], Term::var(to[i]));
      }
      return substitute(t, sub);
    }

    inline TermReport identity_clause(FiniteAlgebra const& alg, Term const& lhs,
                                      Term const& rhs, std::vector<std::string> const& vars,
                                      std::string clause) {
      TermReport out;
      auto       chk = check_identity(alg, lhs, rhs, vars);
      if (!chk.holds) {
        out.holds  = false;
        out.clause = std::move(clause);
        for (auto const& v : vars) {
          out.witness.push_back(chk.witness->at(v));
        }
      }
      return out;
    }

    inline void check_arity(FiniteAlgebra const& alg, Term const& t,
                            std::vector<std::string> const& vars, std::string const& what) {
      std::vector<std::string> seen;
      collect_variables(alg, t, seen);
      for (auto const& v : seen) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
          throw InputError(what + " uses variable \"" + v + "\" outside "
                           + std::to_string(vars.size()) + " arguments");
        }
      }
    }

    inline std::vector<std::string> const& xyz() {
      static std::vector<std::string> const v{"x", "y", "z"};
      return v;
    }
  }  // namespace detail

  //! d(x, x, y) = y, and d(x, y, x) = y modulo [t, t] for t = Cg(x, y).
  inline TermReport check_difference_term(Engine& eng, Term const& d) {
    auto const& alg = eng.algebra();
    detail::check_arity(alg, d, detail::xyz(), "d");
    auto out = detail::identity_clause(
        alg, detail::apply_vars(d, detail::xyz(), {"x", "x", "y"}), Term::var("y"), {"x", "y"},
        "d(x,x,y) = y");
    if (!out.holds) {
      return out;
    }
    size_t n = alg.size();
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        auto theta = cg(alg, {{x, y}});
        auto v     = eval_term(alg, d, {{"x", x}, {"y", y}, {"z", x}});
        if (!tc_commutator(eng, {theta, theta}, 0).related(v, y)) {
          return {false, "d(x,y,x) = y mod [Cg(x,y), Cg(x,y)]", {x, y}};
        }
      }
    }
    return out;
  }

  //! h(x, x, y) = y, h(x, y, x) = y, and the three identities of
  //! p = h(h(v0, v1, v2), v3, h(v4, v5, v6)).
  inline TermReport check_strong_cube(FiniteAlgebra const& alg, Term const& h) {
    detail::check_arity(alg, h, detail::xyz(), "h");
    using detail::apply_vars;
    auto out = detail::identity_clause(alg, apply_vars(h, detail::xyz(), {"x", "x", "y"}),
                                       Term::var("y"), {"x", "y"}, "h(x,x,y) = y");
    if (!out.holds) {
      return out;
    }
    out = detail::identity_clause(alg, apply_vars(h, detail::xyz(), {"x", "y", "x"}),
                                  Term::var("y"), {"x", "y"}, "h(x,y,x) = y");
    if (!out.holds) {
      return out;
    }
    auto                                  p = compose_cube_term(h);
    std::vector<std::string>              wxyz{"w", "x", "y", "z"};
    std::vector<std::vector<std::string>> args{{"w", "w", "x", "x", "y", "y", "z"},
                                               {"w", "x", "w", "x", "y", "z", "y"},
                                               {"w", "x", "y", "z", "w", "x", "y"}};
    for (size_t c = 0; c < args.size(); ++c) {
      out = detail::identity_clause(alg, apply_vars(p, cube_variables(), args[c]),
                                    Term::var("z"), wxyz,
                                    "p identity (" + std::to_string(c + 1) + ")");
      if (!out.holds) {
        return out;
      }
    }
    return out;
  }

  //! (1) q(x,x,x,x,y,y,y) = y, (2) q(x,x,y,y,x,x,y) = y, and
  //! (3) q(x,y,x,y,x,y,x) = y modulo [t, t, t] for t = Cg(x, y).
  inline TermReport check_wobbly_identities(Engine& eng, Term const& q) {
    auto const& alg = eng.algebra();
    detail::check_arity(alg, q, cube_variables(), "q");
    using detail::apply_vars;
    std::vector<std::string> xy{"x", "y"};
    auto out = detail::identity_clause(
        alg, apply_vars(q, cube_variables(), {"x", "x", "x", "x", "y", "y", "y"}),
        Term::var("y"), xy, "(1)");
    if (!out.holds) {
      return out;
    }
    out = detail::identity_clause(
        alg, apply_vars(q, cube_variables(), {"x", "x", "y", "y", "x", "x", "y"}),
        Term::var("y"), xy, "(2)");
    if (!out.holds) {
      return out;
    }
    auto t3 = apply_vars(q, cube_variables(), {"x", "y", "x", "y", "x", "y", "x"});
    for (Element x = 0; x < alg.size(); ++x) {
      for (Element y = 0; y < alg.size(); ++y) {
        auto theta = cg(alg, {{x, y}});
        auto v     = eval_term(alg, t3, {{"x", x}, {"y", y}});
        if (!tc_commutator(eng, {theta, theta, theta}, 0).related(v, y)) {
          return {false, "(3)", {x, y}};
        }
      }
    }
    return out;
  }

  //! For x, y, z pairwise t-related, sq[x, y, z, d(x,y,z)] lies in
  //! Delta_{t,t}.
  inline TermReport check_binary_delta_difference(Engine& eng, Partition const& theta,
                                                  Term const& d) {
    auto const& alg = eng.algebra();
    detail::check_arity(alg, d, detail::xyz(), "d");
    auto       D = delta_binary(eng, theta, theta, Route::generated).members();
    auto       table = term_table(alg, d, detail::xyz());
    size_t     n     = alg.size();
    TermReport out;
    for (auto const& block : theta.blocks()) {
      for (auto x : block) {
        for (auto y : block) {
          for (auto z : block) {
            ++out.checked;
            auto v = table[(x * n + y) * n + z];
            auto s = pack({static_cast<Element>(x), static_cast<Element>(y),
                           static_cast<Element>(z), v});
            if (!D.contains(s)) {
              return {false, "square not in Delta",
                      {static_cast<Element>(x), static_cast<Element>(y),
                       static_cast<Element>(z)}, out.checked};
            }
          }
        }
      }
    }
    return out;
  }

  constexpr size_t default_completion_cap = 1'000'000;

  //! Every cube m whose faces Face_0^0, Face_1^0, Face_2^0 lie in
  //! Delta_{t,t}, completed at vertex 7 with q(m_0, ..., m_6), lies in
  //! Delta_{t,t,t}.  The witness is m_0, ..., m_6.
  inline TermReport check_wobbly_completion(Engine& eng, Partition const& theta, Term const& q,
                                            size_t cap = default_completion_cap) {
    auto const& alg = eng.algebra();
    detail::check_arity(alg, q, cube_variables(), "q");
    size_t n = alg.size();
    auto   D = delta_binary(eng, theta, theta, Route::generated).members();
    auto   D3 = delta_ternary(eng, {theta, theta, theta}, {0, 1, 2}, Route::generated).members();
    auto   table = term_table(alg, q, cube_variables());
    // ext[a * n + b] lists (c, d) with sq[a, b, c, d] in D.
    std::vector<std::vector<std::pair<Element, Element>>> ext(n * n);
    for (auto s : D) {
      ext[get(s, 0) * n + get(s, 1)].emplace_back(get(s, 2), get(s, 3));
    }
    TermReport out;
    for (auto s : D) {
      Element m0 = get(s, 0), m1 = get(s, 1), m2 = get(s, 2), m3 = get(s, 3);
      for (auto [m4, m5] : ext[m0 * n + m1]) {
        for (auto [c, m6] : ext[m0 * n + m2]) {
          if (c != m4) {
            continue;
          }
          if (++out.checked > cap) {
            out.exhausted = true;
            return out;
          }
          std::vector<Element> m{m0, m1, m2, m3, m4, m5, m6};
          size_t               p = 0;
          for (auto v : m) {
            p = p * n + v;
          }
          Tuple cube = pack(m);
          cube       = with(cube, 7, table[p]);
          if (!D3.contains(cube)) {
            out.holds   = false;
            out.clause  = "completed cube not in Delta";
            out.witness = m;
            return out;
          }
        }
      }
    }
    return out;
  }

}  // namespace ualg

#endif  // UALG_CUBE_TERMS_HPP_
