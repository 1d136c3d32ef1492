#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "fibring/collapse.hpp"
#include "fibring/hilbert.hpp"
#include "fibring/reference.hpp"

namespace fibring::cli {

namespace {

using nlohmann::json;

struct Session {
  std::vector<std::string> def_files;
  std::vector<std::pair<Connective, TruthTable>> defs;
  bool structured = false;
  unsigned depth = 3;
  unsigned premises = 2;
  unsigned vars = 3;
  std::size_t bound = 10;

  void load_defs() {
    for (const std::string& path : def_files) {
      for (auto& [conn, table] : load_connectives_file(path)) {
        if (builtin_connective(conn.name)) {
          throw Error(path + ": '" + conn.name +
                      "' redefines a builtin connective");
        }
        defs.emplace_back(conn, table);
      }
    }
  }

  // Comma-separated connective names; commas inside parentheses belong to
  // threshold requests like T(3,2).  Builtins resolve first.
  std::vector<std::pair<Connective, TruthTable>> resolve(
      const std::string& spec) const {
    std::vector<std::string> tokens;
    std::string current;
    int parens = 0;
    for (char c : spec) {
      if (c == '(') ++parens;
      if (c == ')') --parens;
      if (c == ',' && parens == 0) {
        tokens.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    tokens.push_back(std::move(current));

    std::vector<std::pair<Connective, TruthTable>> out;
    for (std::string& token : tokens) {
      token.erase(std::remove_if(token.begin(), token.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  token.end());
      if (token.empty()) continue;
      if (auto builtin = builtin_connective(token)) {
        out.push_back(*builtin);
        continue;
      }
      auto it = std::find_if(defs.begin(), defs.end(), [&](const auto& d) {
        return d.first.name == token;
      });
      if (it == defs.end()) throw Error("unknown connective '" + token + "'");
      out.push_back(*it);
    }
    if (out.empty()) throw Error("empty connective list '" + spec + "'");
    return out;
  }

  BooleanMatrix matrix_for(const std::string& spec) const {
    BooleanMatrix m;
    for (const auto& [conn, table] : resolve(spec)) m.add(conn, table);
    return m;
  }

  // All names the parsers may treat as connectives in rule and derivation
  // files: the fixed builtins plus anything loaded from definition files.
  Signature ambient() const {
    Signature sig;
    for (const char* name :
         {"top", "bot", "neg", "and", "or", "imp", "eq", "nimp", "xor", "ite"}) {
      sig.add(builtin_connective(name)->first);
    }
    for (const auto& [conn, table] : defs) sig.add(conn);
    return sig;
  }

  // A calculus argument is a rule file path; as a convenience a
  // comma-separated list of builtin calculus names is accepted when no
  // such file exists.
  HilbertCalculus calculus_for(const std::string& spec) const {
    if (std::ifstream probe(spec); probe.good()) {
      return load_calculus_file(spec, ambient());
    }
    std::stringstream in(spec);
    std::string token;
    std::optional<HilbertCalculus> merged;
    while (std::getline(in, token, ',')) {
      HilbertCalculus next = builtin_calculus(token);
      merged = merged ? merge_calculi(*merged, next) : std::move(next);
    }
    if (!merged) throw Error("empty calculus spec '" + spec + "'");
    return *merged;
  }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

json witness_json(const Witness& w) {
  json premises = json::array();
  for (const Formula& f : w.premises) premises.push_back(render_formula(f));
  return json{{"premises", premises},
              {"goal", render_formula(w.goal)},
              {"classical", w.classical_verdict},
              {"fibred", w.fibred_verdict}};
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.

int cmd_classify(const Session& session, const std::string& conn_spec,
                 std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto resolved = session.resolve(conn_spec);
  if (resolved.size() != 1) {
    throw Error("classify expects exactly one connective");
  }
  const auto& [conn, table] = resolved.front();
  const Classification c = classify(table);
  const PostProfile p = post_profile(table);

  if (session.structured) {
    json record{
        {"command", "classify"},
        {"query", {{"connective", conn.name}, {"arity", conn.arity}}},
        {"table", table.bits()},
        {"classification",
         {{"top_like", c.top_like},
          {"bottom_like", c.bottom_like},
          {"projective_components", c.projective_components},
          {"projection_conjunction", c.projection_conjunction},
          {"significant", c.significant},
          {"very_significant", c.very_significant}}},
        {"post_profile",
         {{"preserves_zero", p.preserves_zero},
          {"preserves_one", p.preserves_one},
          {"monotone", p.monotone},
          {"affine", p.affine},
          {"self_dual", p.self_dual}}},
        {"elapsed_ms", elapsed_ms(start)}};
    out << record.dump() << '\n';
    return 0;
  }

  out << "connective: " << conn.name << "/" << conn.arity
      << "  table: " << table.bits() << '\n';
  out << "top-like: " << yesno(c.top_like)
      << "  bottom-like: " << yesno(c.bottom_like) << '\n';
  out << "projective components:";
  if (c.projective_components.empty()) out << " none";
  for (unsigned j : c.projective_components) out << ' ' << j;
  out << '\n';
  out << "projection-conjunction: " << yesno(c.projection_conjunction) << '\n';
  out << "significant: " << yesno(c.significant)
      << "  very significant: " << yesno(c.very_significant) << '\n';
  out << "post profile: preserves-0=" << yesno(p.preserves_zero)
      << " preserves-1=" << yesno(p.preserves_one)
      << " monotone=" << yesno(p.monotone) << " affine=" << yesno(p.affine)
      << " self-dual=" << yesno(p.self_dual) << '\n';
  return 0;
}

int cmd_complete(const Session& session, const std::vector<std::string>& specs,
                 std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<Connective, TruthTable>> conns;
  for (const std::string& spec : specs) {
    for (auto& item : session.resolve(spec)) conns.push_back(std::move(item));
  }
  std::vector<TruthTable> tables;
  for (const auto& [conn, table] : conns) tables.push_back(table);

  struct Property {
    const char* name;
    bool PostProfile::*member;
  };
  static const Property properties[] = {
      {"0-preserving", &PostProfile::preserves_zero},
      {"1-preserving", &PostProfile::preserves_one},
      {"monotone", &PostProfile::monotone},
      {"affine", &PostProfile::affine},
      {"self-dual", &PostProfile::self_dual},
  };

  const bool complete = is_functionally_complete(tables);
  json escaped_json = json::object();
  std::ostringstream text;
  for (const Property& prop : properties) {
    std::optional<std::string> escaper;
    for (const auto& [conn, table] : conns) {
      if (!(post_profile(table).*(prop.member))) {
        escaper = conn.name;
        break;
      }
    }
    escaped_json[prop.name] = escaper.has_value();
    if (escaper) {
      text << "  " << prop.name << ": escaped by " << *escaper << '\n';
    } else {
      text << "  " << prop.name << ": shared by every member (blocks completeness)\n";
    }
  }

  if (session.structured) {
    json names = json::array();
    for (const auto& [conn, table] : conns) names.push_back(conn.name);
    out << json{{"command", "complete"},
                {"query", {{"connectives", names}}},
                {"verdict", complete},
                {"escaped", escaped_json},
                {"elapsed_ms", elapsed_ms(start)}}
               .dump()
        << '\n';
  } else {
    out << "functionally complete: " << yesno(complete) << '\n' << text.str();
  }
  return complete ? 0 : 1;
}

int cmd_entail(const Session& session, const std::string& matrix_spec,
               const std::string& premises_text, const std::string& goal_text,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const BooleanMatrix m = session.matrix_for(matrix_spec);
  const FormulaSet premises = parse_formula_list(premises_text, m.signature());
  const Formula goal = parse_formula(goal_text, m.signature());
  const bool verdict = entails(m, premises, goal);

  if (session.structured) {
    json premise_list = json::array();
    for (const Formula& f : premises) premise_list.push_back(render_formula(f));
    out << json{{"command", "entail"},
                {"query",
                 {{"matrix", matrix_spec},
                  {"premises", premise_list},
                  {"goal", render_formula(goal)}}},
                {"verdict", verdict},
                {"elapsed_ms", elapsed_ms(start)}}
               .dump()
        << '\n';
  } else {
    out << "premises: {" << render_formula_set(premises) << "}\n";
    out << "goal: " << render_formula(goal) << '\n';
    out << "verdict: " << (verdict ? "entailed" : "not entailed") << '\n';
  }
  return verdict ? 0 : 1;
}

int cmd_fib_entail(const Session& session, const std::string& a_spec,
                   const std::string& b_spec, const std::string& premises_text,
                   const std::string& goal_text, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const FibredSystem sys(session.matrix_for(a_spec),
                         session.matrix_for(b_spec));
  const Signature& joint = sys.union_matrix().signature();
  const FormulaSet premises = parse_formula_list(premises_text, joint);
  const Formula goal = parse_formula(goal_text, joint);

  const SaturationResult saturation = saturate(sys, premises);
  const bool verdict = decide_fibred(sys, premises, goal);

  if (session.structured) {
    json premise_list = json::array();
    for (const Formula& f : premises) premise_list.push_back(render_formula(f));
    json closure = json::array();
    for (const Formula& f : saturation.closure) {
      closure.push_back(render_formula(f));
    }
    out << json{{"command", "fib-entail"},
                {"query",
                 {{"a", a_spec},
                  {"b", b_spec},
                  {"premises", premise_list},
                  {"goal", render_formula(goal)}}},
                {"saturation",
                 {{"closure", closure}, {"iterations", saturation.iterations}}},
                {"verdict", verdict},
                {"elapsed_ms", elapsed_ms(start)}}
               .dump()
        << '\n';
  } else {
    out << "premises: {" << render_formula_set(premises) << "}\n";
    out << "goal: " << render_formula(goal) << '\n';
    out << "saturation closure: {" << render_formula_set(saturation.closure)
        << "}  (" << saturation.iterations << " iterations)\n";
    out << "verdict: " << (verdict ? "entailed" : "not entailed")
        << " in the fibred logic\n";
  }
  return verdict ? 0 : 1;
}

int cmd_collapse(const Session& session, const std::string& a_spec,
                 const std::string& b_spec, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto side_a = session.resolve(a_spec);
  const auto side_b = session.resolve(b_spec);
  std::vector<TruthTable> tables_a, tables_b;
  for (const auto& [conn, table] : side_a) tables_a.push_back(table);
  for (const auto& [conn, table] : side_b) tables_b.push_back(table);

  std::optional<CollapseVerdict> pair_verdict;
  std::string note;
  if (side_a.size() == 1 && side_b.size() == 1) {
    pair_verdict = collapse_pair(tables_a.front(), tables_b.front());
    // The nullary-bottom clause does not generalize to wider constant-0
    // connectives; flag the case instead of guessing.
    auto wide_bottom = [](const TruthTable& t) {
      return t.arity() > 0 && t.is_constant(false);
    };
    if (!pair_verdict->collapses &&
        ((wide_bottom(tables_b.front()) && in_equiv_clone(tables_a.front())) ||
         (wide_bottom(tables_a.front()) && in_equiv_clone(tables_b.front())))) {
      note =
          "note: a non-nullary constant-0 paired with a biconditional-clone "
          "connective is not covered by any collapse clause; run "
          "'discrepancy' for empirical evidence";
    }
  }

  std::optional<bool> merged_classical;
  std::string merge_error;
  try {
    merged_classical = merge_is_classical(tables_a, tables_b);
  } catch (const PreconditionError& e) {
    merge_error = e.what();
  }

  if (session.structured) {
    json record{{"command", "collapse"},
                {"query", {{"a", a_spec}, {"b", b_spec}}},
                {"elapsed_ms", elapsed_ms(start)}};
    if (pair_verdict) {
      record["collapses"] = pair_verdict->collapses;
      record["reason"] = to_string(pair_verdict->reason);
    }
    if (merged_classical) {
      record["merged_is_classical"] = *merged_classical;
    } else {
      record["merged_is_classical_error"] = merge_error;
    }
    if (!note.empty()) record["note"] = note;
    record["verdict"] =
        pair_verdict ? pair_verdict->collapses : merged_classical.value();
    out << record.dump() << '\n';
  } else {
    if (pair_verdict) {
      out << "collapses: " << yesno(pair_verdict->collapses);
      if (pair_verdict->collapses) {
        out << " (" << to_string(pair_verdict->reason) << ")";
      }
      out << '\n';
    }
    if (merged_classical) {
      out << "merged logic is full classical: " << yesno(*merged_classical)
          << '\n';
    } else {
      out << "merged-classical check not applicable: " << merge_error << '\n';
    }
    if (!note.empty()) out << note << '\n';
  }

  if (pair_verdict) return pair_verdict->collapses ? 0 : 1;
  if (!merged_classical) throw PreconditionError(merge_error);
  return *merged_classical ? 0 : 1;
}

int cmd_discrepancy(const Session& session, const std::string& a_spec,
                    const std::string& b_spec, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const FibredSystem sys(session.matrix_for(a_spec),
                         session.matrix_for(b_spec));
  const SearchBounds bounds{session.depth, session.premises, session.vars};
  const std::optional<Witness> witness = search_discrepancy(sys, bounds);

  if (session.structured) {
    json record{{"command", "discrepancy"},
                {"query",
                 {{"a", a_spec},
                  {"b", b_spec},
                  {"depth", bounds.max_depth},
                  {"premises", bounds.max_premises},
                  {"vars", bounds.var_pool}}},
                {"verdict", witness.has_value()},
                {"elapsed_ms", elapsed_ms(start)}};
    if (witness) record["witness"] = witness_json(*witness);
    out << record.dump() << '\n';
  } else if (witness) {
    out << "witness: {" << render_formula_set(witness->premises) << "} |- "
        << render_formula(witness->goal) << '\n';
    out << "classical: "
        << (witness->classical_verdict ? "entailed" : "not entailed")
        << "; fibred: "
        << (witness->fibred_verdict ? "entailed" : "not entailed") << '\n';
  } else {
    out << "none within bounds (depth<=" << bounds.max_depth << ", premises<="
        << bounds.max_premises << ", vars<=" << bounds.var_pool << ")\n";
  }
  return witness.has_value() ? 0 : 1;
}

int cmd_check_proof(const Session& session, const std::string& calculus_spec,
                    const std::string& derivation_path,
                    const std::string& hypotheses_text, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const HilbertCalculus calculus = session.calculus_for(calculus_spec);

  std::ifstream in(derivation_path);
  if (!in) throw Error("cannot open derivation file '" + derivation_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();

  const Signature ambient = session.ambient();
  const DerivationTree tree = parse_derivation(buffer.str(), ambient);
  const FormulaSet hypotheses = parse_formula_list(hypotheses_text, ambient);
  const bool verdict =
      check_derivation(calculus, hypotheses, tree.formula, tree);

  if (session.structured) {
    out << json{{"command", "check-proof"},
                {"query",
                 {{"calculus", calculus_spec},
                  {"derivation", derivation_path},
                  {"goal", render_formula(tree.formula)}}},
                {"verdict", verdict},
                {"elapsed_ms", elapsed_ms(start)}}
               .dump()
        << '\n';
  } else {
    out << (verdict ? "accepted" : "rejected") << ": derivation of "
        << render_formula(tree.formula) << '\n';
  }
  return verdict ? 0 : 1;
}

int cmd_derive(const Session& session, const std::string& calculus_spec,
               const std::string& premises_text, const std::string& goal_text,
               std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const HilbertCalculus calculus = session.calculus_for(calculus_spec);
  const Signature ambient = session.ambient();
  const FormulaSet hypotheses = parse_formula_list(premises_text, ambient);
  const Formula goal = parse_formula(goal_text, ambient);

  const std::optional<DerivationTree> tree =
      bounded_derive(calculus, hypotheses, goal, session.bound);

  if (session.structured) {
    json record{{"command", "derive"},
                {"query",
                 {{"calculus", calculus_spec},
                  {"premises", premises_text},
                  {"goal", render_formula(goal)},
                  {"bound", session.bound}}},
                {"verdict", tree.has_value()},
                {"elapsed_ms", elapsed_ms(start)}};
    if (tree) record["derivation"] = render_derivation(*tree);
    out << record.dump() << '\n';
  } else if (tree) {
    out << render_derivation(*tree) << '\n';
  } else {
    out << "not derived within size bound " << session.bound << '\n';
  }
  return tree.has_value() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"workbench for merging Hilbert calculi of two-valued logics"};
  app.require_subcommand(1);

  Session session;
  app.add_option("--defs", session.def_files,
                 "connective definition file (name arity bitstring per line)")
      ->take_all();
  app.add_flag("--json", session.structured,
               "one machine-readable JSON record per query");

  std::string conn_spec, a_spec, b_spec, premises_text, goal_text;
  std::vector<std::string> conn_specs;
  std::string calculus_spec, derivation_path;
  std::string hypotheses_text;

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "taxonomy and Post profile of a connective");
  classify_cmd->add_option("conn", conn_spec)->required();

  CLI::App* complete_cmd = app.add_subcommand(
      "complete", "functional completeness of a connective set");
  complete_cmd->add_option("conns", conn_specs)->required()->take_all();

  CLI::App* entail_cmd =
      app.add_subcommand("entail", "truth-table consequence in one matrix");
  entail_cmd->add_option("--matrix", conn_spec)->required();
  entail_cmd->add_option("premises", premises_text)->required();
  entail_cmd->add_option("goal", goal_text)->required();

  CLI::App* fib_cmd = app.add_subcommand(
      "fib-entail", "consequence in the disjoint fibring of two matrices");
  fib_cmd->add_option("--a", a_spec)->required();
  fib_cmd->add_option("--b", b_spec)->required();
  fib_cmd->add_option("premises", premises_text)->required();
  fib_cmd->add_option("goal", goal_text)->required();

  CLI::App* collapse_cmd = app.add_subcommand(
      "collapse", "does the fibring already give the joint classical fragment");
  collapse_cmd->add_option("--a", a_spec)->required();
  collapse_cmd->add_option("--b", b_spec)->required();

  CLI::App* disc_cmd = app.add_subcommand(
      "discrepancy", "search for a consecution separating the two deciders");
  disc_cmd->add_option("--a", a_spec)->required();
  disc_cmd->add_option("--b", b_spec)->required();
  disc_cmd->add_option("--depth", session.depth, "formula depth bound");
  disc_cmd->add_option("--premises", session.premises, "premise count bound");
  disc_cmd->add_option("--vars", session.vars, "variable pool size");

  CLI::App* check_cmd =
      app.add_subcommand("check-proof", "check a derivation file");
  check_cmd->add_option("calculus", calculus_spec,
                        "rule file (or builtin names like and,or)")
      ->required();
  check_cmd->add_option("derivation", derivation_path)->required();
  check_cmd->add_option("--hypotheses", hypotheses_text,
                        "comma-separated hypothesis formulas");

  CLI::App* derive_cmd =
      app.add_subcommand("derive", "bounded forward-chaining proof search");
  derive_cmd->add_option("calculus", calculus_spec)->required();
  derive_cmd->add_option("premises", premises_text)->required();
  derive_cmd->add_option("goal", goal_text)->required();
  derive_cmd->add_option("--bound", session.bound, "conclusion size bound");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << '\n';
    return 2;
  }

  try {
    session.load_defs();
    if (classify_cmd->parsed()) return cmd_classify(session, conn_spec, out);
    if (complete_cmd->parsed()) return cmd_complete(session, conn_specs, out);
    if (entail_cmd->parsed()) {
      return cmd_entail(session, conn_spec, premises_text, goal_text, out);
    }
    if (fib_cmd->parsed()) {
      return cmd_fib_entail(session, a_spec, b_spec, premises_text, goal_text,
                            out);
    }
    if (collapse_cmd->parsed()) return cmd_collapse(session, a_spec, b_spec, out);
    if (disc_cmd->parsed()) return cmd_discrepancy(session, a_spec, b_spec, out);
    if (check_cmd->parsed()) {
      return cmd_check_proof(session, calculus_spec, derivation_path,
                             hypotheses_text, out);
    }
    if (derive_cmd->parsed()) {
      return cmd_derive(session, calculus_spec, premises_text, goal_text, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace fibring::cli
