// ualg: command-line front end.
//
// Exit codes: 0 success or pass, 1 usage error, 2 check failed, 3 resource
// bound exhausted, 4 invalid input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ualg/ualg.hpp"

using nlohmann::json;
using namespace ualg;

namespace {

  constexpr int exit_ok        = 0;
  constexpr int exit_usage     = 1;
  constexpr int exit_failed    = 2;
  constexpr int exit_exhausted = 3;
  constexpr int exit_invalid   = 4;

  std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open \"" + path + "\"");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Lists are split on ';' when one is present, else on ','.
  std::vector<std::string> split_list(std::string const& text) {
    char                     sep = text.find(';') != std::string::npos ? ';' : ',';
    std::vector<std::string> out;
    std::string              cur;
    for (char c : text) {
      if (c == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }

  std::vector<size_t> parse_numbers(std::string const& text, size_t count, char const* what) {
    std::vector<size_t> out;
    for (auto const& s : split_list(text)) {
      size_t pos = 0;
      size_t v   = 0;
      try {
        v = std::stoul(s, &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos == 0 || pos != s.size()) {
        throw InputError(std::string(what) + ": expected a number, got \"" + s + "\"");
      }
      out.push_back(v);
    }
    if (out.size() != count) {
      throw InputError(std::string(what) + ": expected " + std::to_string(count) + " numbers");
    }
    return out;
  }

  std::vector<Partition> parse_thetas(std::string const& text, Engine& eng) {
    std::vector<Partition> out;
    for (auto const& s : split_list(text)) {
      out.push_back(parse_congruence(s, eng.algebra(), &eng.lattice()));
    }
    return out;
  }

  DaySequence read_day_file(std::string const& path) {
    DaySequence out;
    for (auto& [name, t] : parse_term_file(read_file(path))) {
      out.push_back(std::move(t));
    }
    return out;
  }

  json environment_json(Environment const& env) {
    json out = json::object();
    for (auto const& [k, v] : env) {
      out[k] = v;
    }
    return out;
  }

  std::string environment_text(std::vector<std::string> const& vars, Environment const& env) {
    std::string out;
    for (auto const& v : vars) {
      out += (out.empty() ? "" : ", ") + v + "=" + std::to_string(env.at(v));
    }
    return out;
  }

  void emit(bool as_json, json const& doc, std::string const& text) {
    if (as_json) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << text;
    }
  }

  struct Common {
    std::string file;
    bool        as_json = false;
  };

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int cmd_info(Common const& c) {
    Engine eng(load_algebra_file(c.file));
    auto const& alg = eng.algebra();
    auto const& lat = eng.lattice();
    auto        mod = is_modular(lat);
    json        ops = json::array();
    std::string text = "name: " + alg.name() + "\nsize: " + std::to_string(alg.size())
                       + "\noperations:";
    for (size_t k = 0; k < alg.num_operations(); ++k) {
      ops.push_back({{"symbol", alg.operation(k).symbol}, {"arity", alg.arity(k)}});
      text += " " + alg.operation(k).symbol + "/" + std::to_string(alg.arity(k));
    }
    auto const& p = eng.malcev();
    auto const& m = eng.majority();
    text += "\ncongruences: " + std::to_string(lat.size())
            + "\nmodular: " + (mod.holds ? "yes" : "no") + "\nmalcev: "
            + (p ? to_string(*p) : "none") + "\nmajority: " + (m ? to_string(*m) : "none")
            + "\nmatrix method: " + eng.matrix_method() + "\n";
    emit(c.as_json,
         {{"name", alg.name()},
          {"size", alg.size()},
          {"operations", ops},
          {"congruences", lat.size()},
          {"modular", mod.holds},
          {"malcev", p ? json(to_string(*p)) : json()},
          {"majority", m ? json(to_string(*m)) : json()},
          {"matrix_method", eng.matrix_method()}},
         text);
    return exit_ok;
  }

  int cmd_con(Common const& c) {
    Engine      eng(load_algebra_file(c.file));
    auto const& lat = eng.lattice();
    auto        mod = is_modular(lat);
    json        list = json::array();
    std::string text;
    for (size_t i = 0; i < lat.size(); ++i) {
      list.push_back({{"name", lat.name(i)}, {"blocks", lat[i].to_string()}});
      text += lat.name(i) + ": " + lat[i].to_string() + "\n";
    }
    json doc{{"congruences", list}, {"modular", mod.holds}};
    text += std::string("modular: ") + (mod.holds ? "yes" : "no");
    if (!mod.holds) {
      auto const& pt = *mod.pentagon;
      json        names = json::array();
      text += " (pentagon:";
      for (auto i : pt) {
        names.push_back(lat.name(i));
        text += " " + lat.name(i);
      }
      text += ")";
      doc["pentagon"] = names;
    }
    emit(c.as_json, doc, text + "\n");
    return exit_ok;
  }

  int cmd_cg(Common const& c, std::string const& pairs) {
    auto alg = load_algebra_file(c.file);
    auto p   = cg(alg, parse_pairs(pairs, alg.size()));
    emit(c.as_json, {{"blocks", p.to_string()}}, "blocks: " + p.to_string() + "\n");
    return exit_ok;
  }

  int cmd_comm(Common const&        c,
               size_t               arity,
               std::string const&   thetas,
               std::string const&   method,
               std::optional<size_t> axis) {
    Engine eng(load_algebra_file(c.file));
    auto   T = parse_thetas(thetas, eng);
    if (T.size() != arity) {
      throw InputError("--thetas: expected " + std::to_string(arity) + " congruences");
    }
    auto const& lat = eng.lattice();
    json        doc{{"arity", arity}, {"method", method}};
    std::string text;
    if (method == "delta") {
      auto table = arity == 2 ? binary_conditions(eng, T[0], T[1]) : ternary_conditions(eng, T);
      auto p     = table.relation(1);
      doc["commutator"] = lat.name_of(p);
      doc["blocks"]     = p.to_string();
      text = "commutator = " + lat.name_of(p) + " (blocks: " + p.to_string() + ")\n";
      emit(c.as_json, doc, text);
      return exit_ok;
    }
    std::vector<size_t> axes;
    if (axis) {
      check_axis(*axis, arity);
      axes = {*axis};
    } else {
      for (size_t j = 0; j < arity; ++j) {
        axes.push_back(j);
      }
    }
    size_t      canonical = axis ? *axis : arity - 1;
    auto const& p         = tc_commutator(eng, T, canonical);
    doc["commutator"]     = lat.name_of(p);
    doc["blocks"]         = p.to_string();
    doc["axis"]           = canonical;
    text = "commutator = " + lat.name_of(p) + " (blocks: " + p.to_string() + ")\n";
    if (!axis) {
      json per_axis = json::array();
      bool agree    = true;
      for (auto j : axes) {
        auto const& q = tc_commutator(eng, T, j);
        per_axis.push_back(q.to_string());
        if (!(q == p)) {
          agree = false;
          text += "axis " + std::to_string(j) + ": " + lat.name_of(q) + " (blocks: "
                  + q.to_string() + ")\n";
        }
      }
      doc["axes"]  = per_axis;
      doc["agree"] = agree;
      text += agree ? "all axes agree\n" : "axes disagree\n";
    }
    emit(c.as_json, doc, text);
    return exit_ok;
  }

  int cmd_delta(Common const&      c,
                std::string const& thetas,
                std::string const& order_text,
                std::string const& route_text,
                std::string const& query) {
    Engine eng(load_algebra_file(c.file));
    auto   T = parse_thetas(thetas, eng);
    if (route_text != "generated" && route_text != "closure") {
      throw InputError("--route: expected generated or closure");
    }
    auto route = route_text == "generated" ? Route::generated : Route::closure;
    DeltaRelation rel;
    json          doc{{"route", route_text}};
    if (T.size() == 2) {
      rel = delta_binary(eng, T[0], T[1], route);
    } else if (T.size() == 3) {
      Order o{0, 1, 2};
      if (!order_text.empty()) {
        auto v = parse_numbers(order_text, 3, "--order");
        o      = {v[0], v[1], v[2]};
      }
      rel          = delta_ternary(eng, T, o, route);
      doc["order"] = to_string(o);
    } else {
      throw InputError("--thetas: expected 2 or 3 congruences");
    }
    auto members          = rel.members();
    doc["carrier"]        = rel.carrier.size();
    doc["classes"]        = rel.part.num_blocks();
    doc["members"]        = members.size();
    std::string text      = "carrier: " + std::to_string(rel.carrier.size())
                       + "\nclasses: " + std::to_string(rel.part.num_blocks())
                       + "\nmembers: " + std::to_string(members.size()) + "\n";
    if (!query.empty()) {
      auto lit = parse_literal(query, eng.size());
      if (lit.dim != rel.dim()) {
        throw InputError("--query: expected a " + std::string(rel.dim() == 2 ? "square" : "cube")
                         + " literal");
      }
      bool in        = members.contains(lit.labels);
      doc["query"]   = to_literal(lit.labels, lit.dim);
      doc["member"]  = in;
      text += to_literal(lit.labels, lit.dim) + (in ? " is a member\n" : " is not a member\n");
    }
    emit(c.as_json, doc, text);
    return exit_ok;
  }

  int cmd_term(Common const&      c,
               std::string const& identity,
               std::string const& day_file,
               bool               find_day,
               std::string const& difference) {
    auto alg = load_algebra_file(c.file);
    json doc = json::object();
    std::string text;
    int         code = exit_ok;
    if (!identity.empty()) {
      auto eq = identity.find('=');
      if (eq == std::string::npos) {
        throw InputError("--check-identity: expected \"lhs = rhs\"");
      }
      auto lhs = parse_term(identity.substr(0, eq));
      auto rhs = parse_term(identity.substr(eq + 1));
      std::vector<std::string> vars;
      collect_variables(alg, lhs, vars);
      collect_variables(alg, rhs, vars);
      auto chk = check_identity(alg, lhs, rhs, vars);
      json r{{"identity", to_string(lhs) + " = " + to_string(rhs)}, {"holds", chk.holds}};
      text += "identity " + to_string(lhs) + " = " + to_string(rhs) + ": ";
      if (chk.holds) {
        text += "holds\n";
      } else {
        r["witness"] = environment_json(*chk.witness);
        text += "fails at " + environment_text(vars, *chk.witness) + "\n";
        code = exit_failed;
      }
      doc["identity"] = r;
    }
    if (!day_file.empty()) {
      auto seq = read_day_file(day_file);
      auto chk = check_day_sequence(alg, seq);
      json r{{"length", seq.size()}, {"holds", chk.holds}};
      text += "day sequence of " + std::to_string(seq.size()) + " terms: ";
      if (chk.holds) {
        text += "holds\n";
      } else {
        r["failing"] = chk.failing;
        text += "identity " + chk.failing + " fails";
        if (chk.witness) {
          r["witness"] = environment_json(*chk.witness);
          text += " at " + environment_text(day_variables(), *chk.witness);
        }
        text += "\n";
        code = exit_failed;
      }
      doc["day"] = r;
    }
    if (find_day) {
      auto s = find_day_terms(alg);
      json r{{"functions", s.functions}, {"exhausted", s.exhausted}};
      if (s.sequence) {
        json terms = json::array();
        text += "day sequence found:\n";
        for (size_t e = 0; e < s.sequence->size(); ++e) {
          terms.push_back(to_string((*s.sequence)[e]));
          text += "m" + std::to_string(e) + " := " + to_string((*s.sequence)[e]) + "\n";
        }
        r["sequence"] = terms;
      } else {
        r["sequence"] = nullptr;
        text += s.exhausted ? "no day sequence found before the cap\n" : "no day sequence\n";
        if (code == exit_ok) {
          code = s.exhausted ? exit_exhausted : exit_failed;
        }
      }
      doc["find_day"] = r;
    }
    if (!difference.empty()) {
      Engine eng(alg);
      auto   d   = parse_term(difference);
      auto   rep = check_difference_term(eng, d);
      json   r{{"term", to_string(d)}, {"holds", rep.holds}};
      text += "difference term " + to_string(d) + ": ";
      if (rep.holds) {
        text += "holds\n";
      } else {
        r["clause"]   = rep.clause;
        r["elements"] = rep.witness;
        text += rep.clause + " fails at (";
        for (size_t i = 0; i < rep.witness.size(); ++i) {
          text += (i ? ", " : "") + std::to_string(rep.witness[i]);
        }
        text += ")\n";
        code = exit_failed;
      }
      doc["difference"] = r;
    }
    if (doc.empty()) {
      throw InputError("term: nothing to do; give --check-identity, --day-file, --find-day or "
                       "--difference");
    }
    emit(c.as_json, doc, text);
    return code;
  }

  struct VerifyArgs {
    std::string check = "all";
    std::string bound;
    std::string replay;
    std::string tuples;
    std::string difference;
    std::string day_file;
    size_t      samples = 100;
    size_t      seed    = 1;
  };

  int verdict_code(SuiteReport const& r) {
    if (r.any(Verdict::fail)) {
      return exit_failed;
    }
    if (r.any(Verdict::bound_exhausted)) {
      return exit_exhausted;
    }
    return exit_ok;
  }

  int cmd_verify(Common const& c, VerifyArgs const& a) {
    Engine       eng(load_algebra_file(c.file));
    SuiteOptions opts;
    if (a.check != "all") {
      opts.checks = split_list(a.check);
    }
    if (!a.bound.empty()) {
      auto v     = parse_numbers(a.bound, 3, "--bound");
      opts.bound = {v[0], v[1], v[2]};
    }
    if (!a.tuples.empty()) {
      // Tuples are separated by ';' and their entries by ','.
      std::string cur;
      for (char ch : a.tuples + ";") {
        if (ch == ';') {
          if (!cur.empty()) {
            opts.tuples.push_back(parse_thetas(cur, eng));
          }
          cur.clear();
        } else {
          cur += ch;
        }
      }
    }
    if (!a.difference.empty()) {
      opts.difference = parse_term(a.difference);
    }
    if (!a.day_file.empty()) {
      opts.day = read_day_file(a.day_file);
    }
    opts.samples = a.samples;
    opts.seed    = a.seed;
    if (a.replay.empty()) {
      auto r = run_suite(eng, opts);
      emit(c.as_json, to_json(r), to_text(r));
      return verdict_code(r);
    }
    json doc;
    try {
      doc = json::parse(read_file(a.replay));
    } catch (json::parse_error const& e) {
      throw InputError("--replay: " + std::string(e.what()));
    }
    auto ws = witnesses_in(doc);
    if (ws.empty()) {
      throw InputError("--replay: no witness in \"" + a.replay + "\"");
    }
    json        out = json::array();
    std::string text;
    bool        reproduced = false;
    for (auto const& w : ws) {
      auto r = run_suite(eng, replay_options(w, eng.algebra(), opts));
      auto const& res = r.checks.at(0);
      bool same = !res.witness.is_null() && res.witness == w;
      reproduced = reproduced || same;
      out.push_back({{"check", res.name}, {"reproduced", same}, {"verdict", to_string(res.verdict)}});
      text += res.name + ": " + (same ? "violation reproduced" : "violation not reproduced")
              + " (" + to_string(res.verdict) + ")\n";
      if (!res.witness.is_null()) {
        text += "  witness: " + res.witness.dump() + "\n";
      }
    }
    emit(c.as_json, {{"replay", out}}, text);
    return reproduced ? exit_failed : exit_ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite algebras: congruences, commutators and Delta relations"};
  app.require_subcommand(1);
  Common c;
  auto   add_common = [&](CLI::App* sub) {
    sub->add_option("algebra", c.file, "Algebra JSON file")->required();
    sub->add_flag("--json", c.as_json, "Structured output");
  };

  auto* info = app.add_subcommand("info", "Summary of an algebra");
  add_common(info);

  auto* con = app.add_subcommand("con", "List the congruence lattice");
  add_common(con);

  std::string pairs;
  auto*       cgc = app.add_subcommand("cg", "Congruence generated by pairs");
  add_common(cgc);
  cgc->add_option("--pairs", pairs, "Pairs \"a-b, c-d\"")->required();

  size_t                arity = 2;
  std::string           thetas, method = "tc";
  std::optional<size_t> axis;
  auto*                 comm = app.add_subcommand("comm", "Term-condition commutator");
  add_common(comm);
  comm->add_option("--arity", arity, "2 or 3")->check(CLI::IsMember({2, 3}));
  comm->add_option("--thetas", thetas, "Congruences, e.g. one,one or \"0 2 | 1 3;one\"")
      ->required();
  comm->add_option("--method", method, "tc or delta")->check(CLI::IsMember({"tc", "delta"}));
  comm->add_option("--axis", axis, "Axis j; default computes every axis");

  std::string order, route = "generated", query;
  auto*       delta = app.add_subcommand("delta", "Delta relations");
  add_common(delta);
  delta->add_option("--thetas", thetas, "Two or three congruences")->required();
  delta->add_option("--order", order, "Order i,j,l for three congruences");
  delta->add_option("--route", route, "generated or closure");
  delta->add_option("--query", query, "Membership of sq[...] or cube[...]");

  std::string identity, day_file, difference;
  bool        find_day = false;
  auto*       term     = app.add_subcommand("term", "Identities and Day terms");
  add_common(term);
  term->add_option("--check-identity", identity, "\"lhs = rhs\"");
  term->add_option("--day-file", day_file, "File of \"name := term\" lines");
  term->add_flag("--find-day", find_day, "Search the 4-ary clone for Day terms");
  term->add_option("--difference", difference, "Check a ternary difference term");

  VerifyArgs va;
  auto*      verify = app.add_subcommand("verify", "Run the verification suite");
  add_common(verify);
  verify->add_option("--check", va.check, "Check name, comma list, or all");
  verify->add_option("--bound", va.bound, "Complex dimensions n0,n1,n2 (each 2..4)");
  verify->add_option("--replay", va.replay, "Rerun the witnesses of a JSON report");
  verify->add_option("--tuples", va.tuples, "Congruence tuples \"a,b,c;a,b\"");
  verify->add_option("--difference", va.difference, "Difference term d(x,y,z)");
  verify->add_option("--day-file", va.day_file, "Day sequence file");
  verify->add_option("--samples", va.samples, "Samples for lines-preserved");
  verify->add_option("--seed", va.seed, "Seed for lines-preserved");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*info) {
      return cmd_info(c);
    } else if (*con) {
      return cmd_con(c);
    } else if (*cgc) {
      return cmd_cg(c, pairs);
    } else if (*comm) {
      return cmd_comm(c, arity, thetas, method, axis);
    } else if (*delta) {
      return cmd_delta(c, thetas, order, route, query);
    } else if (*term) {
      return cmd_term(c, identity, day_file, find_day, difference);
    } else if (*verify) {
      return cmd_verify(c, va);
    }
  } catch (ResourceError const& e) {
    std::cerr << "ualg: " << e.what() << "\n";
    return exit_exhausted;
  } catch (InputError const& e) {
    std::cerr << "ualg: " << e.what() << "\n";
    return exit_invalid;
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "ualg: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_usage;
}
