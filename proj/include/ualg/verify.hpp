// Named property checks over congruence tuples.  Failures carry a witness
// that can be fed back to rerun the one failing instance.

#ifndef UALG_VERIFY_HPP_
#define UALG_VERIFY_HPP_

#include <algorithm>  // for find, sort
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <map>        // for map
#include <optional>   // for optional
#include <random>     // for mt19937_64
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "json.hpp"

#include "algebra.hpp"
#include "commutator.hpp"
#include "congruence.hpp"
#include "cube.hpp"
#include "cube_terms.hpp"
#include "delta.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "term.hpp"
#include "tuple_set.hpp"

namespace ualg {

  enum class Verdict { pass, fail, hypothesis_not_met, bound_exhausted };

  inline std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::pass:
        return "pass";
      case Verdict::fail:
        return "fail";
      case Verdict::hypothesis_not_met:
        return "hypothesis-not-met";
      case Verdict::bound_exhausted:
        return "bound-exhausted";
    }
    return "?";
  }

  inline std::vector<std::string> const& check_names() {
    static std::vector<std::string> const v{"bin-delta-symmetry",
                                            "bin-delta-commutator",
                                            "delta-order",
                                            "nested-delta",
                                            "delta-route",
                                            "delta-commutator",
                                            "tc-vs-ctr",
                                            "nested-inequality",
                                            "wobbly",
                                            "lines-preserved"};
    return v;
  }

  struct SuiteOptions {
    //! Empty means every check.
    std::vector<std::string> checks;
    Dims                     bound{3, 3, 3};
    //! Empty means every tuple of the congruence lattice when it has at
    //! most `max_default_scope` elements, else every tuple over 0 and 1.
    std::vector<std::vector<Partition>> tuples;
    std::optional<Term>                 difference;
    std::optional<DaySequence>          day;
    size_t                              samples = 100;
    std::uint64_t                       seed    = 1;
    //! Run only this sample of lines-preserved.
    std::optional<size_t> sample;
    size_t                state_cap      = default_state_cap;
    size_t                completion_cap = default_completion_cap;
  };

  constexpr size_t max_default_scope = 8;

  struct CheckResult {
    std::string    name;
    Verdict        verdict = Verdict::pass;
    size_t         cases   = 0;
    std::string    note;
    nlohmann::json witness;  // null unless a violation was found
  };

  struct SuiteReport {
    std::string              algebra;
    size_t                   size    = 0;
    bool                     modular = true;
    std::vector<CheckResult> checks;

    bool any(Verdict v) const {
      return std::any_of(
          checks.begin(), checks.end(), [v](auto const& c) { return c.verdict == v; });
    }
  };

  namespace detail {
    inline nlohmann::json tuple_json(std::vector<Partition> const& T) {
      auto out = nlohmann::json::array();
      for (auto const& p : T) {
        out.push_back(p.to_string());
      }
      return out;
    }

    inline nlohmann::json complex_json(Complex const& c) {
      return {{"dims", c.dims}, {"labels", c.labels}};
    }

    inline Complex complex_from_json(nlohmann::json const& j) {
      Complex c(j.at("dims").get<Dims>());
      c.labels = j.at("labels").get<std::vector<Element>>();
      if (c.labels.size() != c.dims[0] * c.dims[1] * c.dims[2]) {
        throw InputError("complex labels do not match its dimensions");
      }
      return c;
    }

    inline nlohmann::json conditions_json(ConditionTable const& t, size_t x, size_t y) {
      nlohmann::json out = nlohmann::json::object();
      for (size_t c = 0; c < t.names.size(); ++c) {
        out[t.names[c]] = static_cast<bool>(t.holds[c][x * t.n + y]);
      }
      return out;
    }

    //! The first element of a not in b, if any.
    inline std::optional<Tuple> first_missing(TupleSet const& a, TupleSet const& b) {
      for (auto t : a) {
        if (!b.contains(t)) {
          return t;
        }
      }
      return std::nullopt;
    }

    inline std::optional<std::pair<Tuple, bool>> set_difference_witness(TupleSet const& a,
                                                                        TupleSet const& b) {
      if (auto t = first_missing(a, b)) {
        return std::pair{*t, true};
      }
      if (auto t = first_missing(b, a)) {
        return std::pair{*t, false};
      }
      return std::nullopt;
    }

    //! d(x, y, z) = p(y, x, z) for a Mal'cev term p.
    inline Term difference_from_malcev(Term const& p) {
      return substitute(p, {{"x", Term::var("y")}, {"y", Term::var("x")}});
    }

    class Suite {
     public:
      Suite(Engine& eng, SuiteOptions const& opts) : _eng(eng), _opts(opts) {}

      SuiteReport run() {
        SuiteReport out;
        out.algebra = _eng.algebra().name();
        out.size    = _eng.size();
        _modular    = is_modular(_eng.lattice()).holds;
        out.modular = _modular;
        for (auto const& name : check_names()) {
          if (!_opts.checks.empty()
              && std::find(_opts.checks.begin(), _opts.checks.end(), name)
                     == _opts.checks.end()) {
            continue;
          }
          out.checks.push_back(run_check(name));
        }
        return out;
      }

     private:
      Engine&             _eng;
      SuiteOptions const& _opts;
      bool                _modular = true;

      CheckResult run_check(std::string const& name) {
        CheckResult r;
        r.name = name;
        bool exhausted = false;
        try {
          if (name == "bin-delta-symmetry") {
            bin_delta_symmetry(r);
          } else if (name == "bin-delta-commutator") {
            bin_delta_commutator(r);
          } else if (name == "delta-order") {
            delta_order(r);
          } else if (name == "nested-delta") {
            nested(r);
          } else if (name == "delta-route") {
            delta_route(r);
          } else if (name == "delta-commutator") {
            delta_commutator(r);
          } else if (name == "tc-vs-ctr") {
            exhausted = tc_vs_ctr(r);
          } else if (name == "nested-inequality") {
            nested_inequality(r);
          } else if (name == "wobbly") {
            if (!wobbly(r)) {
              return r;
            }
            exhausted = r.verdict == Verdict::bound_exhausted;
          } else if (name == "lines-preserved") {
            if (!lines_preserved(r)) {
              return r;
            }
          } else {
            throw InputError("unknown check \"" + name + "\"");
          }
        } catch (ResourceError const& e) {
          r.verdict = Verdict::bound_exhausted;
          r.note    = e.what();
          return r;
        }
        if (!r.witness.is_null()) {
          r.witness["check"] = name;
          r.verdict          = Verdict::fail;
        } else if (exhausted) {
          r.verdict = Verdict::bound_exhausted;
        }
        if (!_modular) {
          r.note    = std::string(r.witness.is_null() ? "property holds" : "property fails")
                   + "; congruence lattice is not modular";
          r.verdict = Verdict::hypothesis_not_met;
        }
        if (!full_scope()) {
          r.note += std::string(r.note.empty() ? "" : "; ") + "scope limited to 0 and 1";
        }
        return r;
      }

      bool full_scope() {
        return !_opts.tuples.empty() || _eng.lattice().size() <= max_default_scope;
      }

      std::vector<std::vector<Partition>> tuples(size_t k) {
        std::vector<std::vector<Partition>> out;
        if (_opts.tuples.empty()) {
          auto const&            L = _eng.lattice();
          std::vector<Partition> E = L.elements();
          if (!full_scope()) {
            E = {L[L.bottom()], L[L.top()]};
          }
          size_t m = E.size();
          size_t      total = k == 1 ? m : k == 2 ? m * m : m * m * m;
          for (size_t c = 0; c < total; ++c) {
            std::vector<Partition> T;
            for (size_t i = 0, r = c; i < k; ++i) {
              T.insert(T.begin(), E[r % m]);
              r /= m;
            }
            out.push_back(std::move(T));
          }
          return out;
        }
        for (auto const& T : _opts.tuples) {
          if (T.size() == k) {
            out.push_back(T);
          } else if (T.size() > k) {
            out.emplace_back(T.begin(), T.begin() + k);
          }
        }
        std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
          return tuple_key(a) < tuple_key(b);
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](auto const& a, auto const& b) {
                                return tuple_key(a) == tuple_key(b);
                              }),
                  out.end());
        return out;
      }

      std::string lit(Tuple t, size_t k) const {
        return to_literal(t, k);
      }

      void bin_delta_symmetry(CheckResult& r) {
        for (auto const& T : tuples(2)) {
          ++r.cases;
          auto a = delta_binary(_eng, T[0], T[1], Route::generated).members();
          auto b = transpose_squares(delta_binary(_eng, T[1], T[0], Route::generated).members());
          if (auto w = set_difference_witness(a, b)) {
            r.witness = {{"tuple", tuple_json(T)},
                         {"square", lit(w->first, 2)},
                         {"only_in", w->second ? "Delta(t0,t1)" : "Delta(t1,t0)"}};
            return;
          }
        }
      }

      void bin_delta_commutator(CheckResult& r) {
        for (auto const& T : tuples(2)) {
          ++r.cases;
          auto t = binary_conditions(_eng, T[0], T[1]);
          if (auto p = t.disagreement()) {
            r.witness = {{"tuple", tuple_json(T)},
                         {"pair", {p->first, p->second}},
                         {"conditions", conditions_json(t, p->first, p->second)}};
            return;
          }
        }
      }

      void delta_order(CheckResult& r) {
        for (auto const& T : tuples(3)) {
          ++r.cases;
          auto base = delta_ternary(_eng, T, {0, 1, 2}, Route::generated).members();
          for (auto const& o : all_orders()) {
            auto other = delta_ternary(_eng, T, o, Route::generated).members();
            if (auto w = set_difference_witness(base, other)) {
              r.witness = {{"tuple", tuple_json(T)},
                           {"orders", {to_string(Order{0, 1, 2}), to_string(o)}},
                           {"cube", lit(w->first, 3)},
                           {"only_in", to_string(w->second ? Order{0, 1, 2} : o)}};
              return;
            }
          }
        }
      }

      void nested(CheckResult& r) {
        for (auto const& T : tuples(3)) {
          ++r.cases;
          for (auto const& o : all_orders()) {
            auto a = delta_ternary(_eng, T, o, Route::generated).members();
            auto b = nested_delta(_eng, T, o);
            if (auto w = set_difference_witness(a, b)) {
              r.witness = {{"tuple", tuple_json(T)},
                           {"order", to_string(o)},
                           {"cube", lit(w->first, 3)},
                           {"only_in", w->second ? "delta" : "nested"}};
              return;
            }
          }
        }
      }

      void delta_route(CheckResult& r) {
        for (auto const& T : tuples(3)) {
          ++r.cases;
          for (auto const& o : all_orders()) {
            auto a = delta_ternary(_eng, T, o, Route::generated).members();
            auto b = delta_ternary(_eng, T, o, Route::closure).members();
            if (auto w = set_difference_witness(a, b)) {
              r.witness = {{"tuple", tuple_json(T)},
                           {"order", to_string(o)},
                           {"cube", lit(w->first, 3)},
                           {"only_in", w->second ? "generated" : "closure"}};
              return;
            }
          }
        }
      }

      void delta_commutator(CheckResult& r) {
        for (auto const& T : tuples(3)) {
          ++r.cases;
          auto t = ternary_conditions(_eng, T);
          if (auto p = t.disagreement()) {
            r.witness = {{"tuple", tuple_json(T)},
                         {"pair", {p->first, p->second}},
                         {"conditions", conditions_json(t, p->first, p->second)}};
            return;
          }
        }
      }

      //! Returns true if some search hit its cap.
      bool tc_vs_ctr(CheckResult& r) {
        bool exhausted = false;
        for (auto const& T : tuples(3)) {
          auto const& delta = commutator(_eng, T);
          for (size_t j = 0; j < 3; ++j) {
            ++r.cases;
            auto base = nlohmann::json{{"tuple", tuple_json(T)},
                                       {"axis", j},
                                       {"delta", delta.to_string()},
                                       {"bound", _opts.bound}};
            auto tc   = check_tc(_eng, T, j, delta);
            if (!tc.holds) {
              r.witness         = base;
              r.witness["kind"] = "tc";
              r.witness["cube"] = lit(*tc.witness, 3);
              return false;
            }
            auto ctr = check_ctr(_eng, T, j, delta, _opts.bound, _opts.state_cap);
            if (!ctr.holds) {
              r.witness            = base;
              r.witness["kind"]    = "ctr";
              r.witness["cube"]    = lit(*ctr.witness, 3);
              r.witness["complex"] = complex_json(*ctr.complex);
              return false;
            }
            exhausted = exhausted || ctr.exhausted;
          }
        }
        if (exhausted) {
          r.note = "state cap reached before the bound";
        }
        return exhausted;
      }

      void nested_inequality(CheckResult& r) {
        for (auto const& T : tuples(3)) {
          ++r.cases;
          auto rep = check_nested_inequality(_eng, T[0], T[1], T[2]);
          if (!rep.holds) {
            r.witness = {{"tuple", tuple_json(T)},
                         {"pair", {rep.witness->first, rep.witness->second}},
                         {"nested", rep.nested.to_string()},
                         {"ternary", rep.ternary.to_string()}};
            return;
          }
        }
      }

      std::optional<Term> difference_term() {
        if (_opts.difference) {
          return _opts.difference;
        }
        std::vector<Term> candidates;
        if (auto const& p = _eng.malcev()) {
          candidates.push_back(difference_from_malcev(*p));
        }
        candidates.push_back(Term::var("z"));
        for (auto const& d : candidates) {
          if (check_difference_term(_eng, d).holds) {
            return d;
          }
        }
        return std::nullopt;
      }

      //! False when the check stopped on a missing hypothesis.
      bool wobbly(CheckResult& r) {
        auto d = difference_term();
        if (!d) {
          r.verdict = Verdict::hypothesis_not_met;
          r.note    = "no difference term supplied or found";
          return false;
        }
        auto base = nlohmann::json{{"d", to_string(*d)}};
        ++r.cases;
        if (auto rep = check_difference_term(_eng, *d); !rep.holds) {
          r.witness = base;
          r.witness.update({{"part", "difference"},
                            {"clause", rep.clause},
                            {"elements", rep.witness}});
          return true;
        }
        auto q = wobbly_cube_term(*d);
        ++r.cases;
        if (auto rep = check_wobbly_identities(_eng, q); !rep.holds) {
          r.witness = base;
          r.witness.update({{"part", "identities"},
                            {"clause", rep.clause},
                            {"elements", rep.witness}});
          return true;
        }
        bool exhausted = false;
        for (auto const& T : tuples(1)) {
          ++r.cases;
          auto with_theta = base;
          with_theta["tuple"] = tuple_json(T);
          if (auto rep = check_binary_delta_difference(_eng, T[0], *d); !rep.holds) {
            r.witness = with_theta;
            r.witness.update({{"part", "square"}, {"elements", rep.witness}});
            return true;
          }
          auto rep = check_wobbly_completion(_eng, T[0], q, _opts.completion_cap);
          if (!rep.holds) {
            r.witness = with_theta;
            r.witness.update({{"part", "completion"}, {"elements", rep.witness}});
            return true;
          }
          exhausted = exhausted || rep.exhausted;
        }
        if (exhausted) {
          r.verdict = Verdict::bound_exhausted;
          r.note    = "completion enumeration reached its cap";
        }
        return true;
      }

      std::optional<DaySequence> day_sequence() {
        if (_opts.day) {
          return _opts.day;
        }
        if (auto const& p = _eng.malcev()) {
          return day_from_malcev(*p);
        }
        auto s = find_day_terms(_eng.algebra());
        return s.sequence;
      }

      bool lines_preserved(CheckResult& r) {
        auto day = day_sequence();
        if (!day) {
          r.verdict = Verdict::hypothesis_not_met;
          r.note    = "no Day sequence supplied or found";
          return false;
        }
        auto triples = tuples(3);
        if (triples.empty()) {
          return true;
        }
        auto const& alg = _eng.algebra();
        auto const& L   = _eng.lattice();
        nlohmann::json day_json = nlohmann::json::array();
        for (auto const& t : *day) {
          day_json.push_back(to_string(t));
        }
        size_t first = _opts.sample ? *_opts.sample : 0;
        size_t last  = _opts.sample ? *_opts.sample + 1 : _opts.samples;
        for (size_t s = first; s < last; ++s) {
          std::mt19937_64 rng(_opts.seed + s);
          // One raw draw per choice, so a sample replays with a smaller scope.
          auto pick = [&](size_t m) { return static_cast<size_t>(rng() % m); };
          auto const& T  = triples[pick(triples.size())];
          auto const& M  = _eng.matrices(T);
          size_t      j  = pick(3);
          size_t      l  = (j + 1 + pick(2)) % 3;
          size_t      i  = 3 - j - l;
          Tuple       m1 = M[pick(M.size())];
          std::vector<Tuple> cubes{m1};
          if (pick(2) == 1) {
            std::vector<Tuple> next;
            for (auto m : M) {
              if (face(m, 3, i, 0) == face(m1, 3, i, 1)) {
                next.push_back(m);
              }
            }
            cubes.push_back(next[pick(next.size())]);
          }
          auto z = stack(cubes, i);
          // The least congruence making the hypothesis true, then every
          // lattice element that does.
          std::vector<std::pair<size_t, size_t>> lines;
          std::array<size_t, 3>                  p{}, q{};
          for (size_t a = 0; a < z.dims[i]; ++a) {
            for (size_t b = 0; b < 2; ++b) {
              if (a + 1 == z.dims[i] && b == 1) {
                continue;
              }
              p[i] = q[i] = a;
              p[l] = q[l] = b;
              p[j]        = 0;
              q[j]        = 1;
              lines.emplace_back(z.at(p[0], p[1], p[2]), z.at(q[0], q[1], q[2]));
            }
          }
          std::vector<Partition> deltas{cg(alg, lines)};
          for (auto const& d : L) {
            if (supporting_lines_in(z, j, d)) {
              deltas.push_back(d);
            }
          }
          for (size_t e = 0; e < day->size(); ++e) {
            auto rot  = shift_rotation_minimal(alg, z, *day, e, j, l);
            auto base = nlohmann::json{{"tuple", tuple_json(T)},
                                       {"sample", s},
                                       {"day", day_json},
                                       {"e", e},
                                       {"j", j},
                                       {"l", l},
                                       {"complex", complex_json(z)},
                                       {"rotation", complex_json(rot)}};
            ++r.cases;
            if (auto off = is_complex(rot, M)) {
              r.witness           = base;
              r.witness["part"]   = "not a complex";
              r.witness["offset"] = *off;
              return true;
            }
            for (auto const& d : deltas) {
              if (!supporting_lines_in(rot, l, d)) {
                r.witness          = base;
                r.witness["part"]  = "supporting line";
                r.witness["delta"] = d.to_string();
                return true;
              }
            }
          }
        }
        return true;
      }
    };
  }  // namespace detail

  inline SuiteReport run_suite(Engine& eng, SuiteOptions const& opts = {}) {
    for (auto const& c : opts.checks) {
      if (std::find(check_names().begin(), check_names().end(), c) == check_names().end()) {
        throw InputError("unknown check \"" + c + "\"");
      }
    }
    return detail::Suite(eng, opts).run();
  }

  inline nlohmann::json to_json(SuiteReport const& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (auto const& c : r.checks) {
      nlohmann::json j{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"cases", c.cases}};
      if (!c.note.empty()) {
        j["note"] = c.note;
      }
      if (!c.witness.is_null()) {
        j["witness"] = c.witness;
      }
      checks.push_back(std::move(j));
    }
    return {{"algebra", r.algebra}, {"size", r.size}, {"modular", r.modular}, {"checks", checks}};
  }

  inline std::string to_text(SuiteReport const& r) {
    std::string out = "algebra " + r.algebra + " (size " + std::to_string(r.size) + ", "
                      + (r.modular ? "modular" : "not modular") + ")\n";
    for (auto const& c : r.checks) {
      out += c.name + ": " + to_string(c.verdict) + " (" + std::to_string(c.cases) + " cases)";
      if (!c.note.empty()) {
        out += "; " + c.note;
      }
      out += "\n";
      if (!c.witness.is_null()) {
        out += "  witness: " + c.witness.dump() + "\n";
      }
    }
    return out;
  }

  //! Options that rerun exactly the instance a witness came from.
  inline SuiteOptions replay_options(nlohmann::json const& witness,
                                     FiniteAlgebra const&  alg,
                                     SuiteOptions          base = {}) {
    if (!witness.contains("check")) {
      throw InputError("witness has no \"check\" field");
    }
    base.checks = {witness.at("check").get<std::string>()};
    base.tuples.clear();
    if (witness.contains("tuple")) {
      std::vector<Partition> T;
      for (auto const& b : witness.at("tuple")) {
        T.push_back(parse_congruence(b.get<std::string>(), alg));
      }
      base.tuples.push_back(std::move(T));
    }
    if (witness.contains("bound")) {
      base.bound = witness.at("bound").get<Dims>();
    }
    if (witness.contains("d")) {
      base.difference = parse_term(witness.at("d").get<std::string>());
    }
    if (witness.contains("day")) {
      DaySequence day;
      for (auto const& t : witness.at("day")) {
        day.push_back(parse_term(t.get<std::string>()));
      }
      base.day = std::move(day);
    }
    if (witness.contains("sample")) {
      base.sample = witness.at("sample").get<size_t>();
    }
    return base;
  }

  //! The witnesses recorded in a report, or the document itself if it is
  //! a single witness.
  inline std::vector<nlohmann::json> witnesses_in(nlohmann::json const& doc) {
    std::vector<nlohmann::json> out;
    if (doc.contains("checks")) {
      for (auto const& c : doc.at("checks")) {
        if (c.contains("witness")) {
          out.push_back(c.at("witness"));
        }
      }
    } else if (doc.contains("witness")) {
      out.push_back(doc.at("witness"));
    } else {
      out.push_back(doc);
    }
    return out;
  }

}  // namespace ualg

#endif  // UALG_VERIFY_HPP_
