// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
//
// Each criterion pins its expected results and its wall-clock budget in
// code; a budget overrun fails the criterion like any wrong answer.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fibring/collapse.hpp"
#include "fibring/hilbert.hpp"
#include "fibring/reference.hpp"

using namespace fibring;

namespace {

struct Context {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

Formula parse(const std::string& text, const Signature& sig) {
  return parse_formula(text, sig);
}

BooleanMatrix single(const Connective& conn, const TruthTable& table) {
  BooleanMatrix m;
  m.add(conn, table);
  return m;
}

// The ternary connectives named in the collapse lemma, as primitive tables
// computed from their defining terms.
std::pair<Connective, TruthTable> mixed_ternary(const std::string& name,
                                                const std::string& term) {
  BooleanMatrix base = builtin_matrix({"and", "or", "imp", "xor"});
  TruthTable table = truth_table_of_term(base, parse(term, base.signature()),
                                         {"p", "q", "r"});
  return {Connective{name, 3}, table};
}

// ---------------------------------------------------------------------------

void criterion_1(Context& ctx) {
  FibredSystem sys(builtin_matrix({"and"}), builtin_matrix({"or"}));
  const Signature& joint = sys.union_matrix().signature();
  ctx.require(decide_fibred(sys, {parse("and(p, or(p, q))", joint)},
                            parse("p", joint)),
              "p&(p|q) |- p should hold in the fibring");
  ctx.require(decide_fibred(sys, {parse("p", joint)},
                            parse("and(p, or(p, q))", joint)),
              "p |- p&(p|q) should hold in the fibring");
  ctx.require(!decide_fibred(sys, {parse("or(p, and(p, q))", joint)},
                             parse("p", joint)),
              "p|(p&q) |- p should fail in the fibring");
}

void criterion_2(Context& ctx) {
  struct Case {
    std::string label;
    Connective conn;
    TruthTable table;
    std::string premises;
    std::string goal;
  };
  std::vector<Case> cases;
  auto add_builtin = [&](const std::string& name, const std::string& premises,
                         const std::string& goal) {
    auto [conn, table] = *builtin_connective(name);
    cases.push_back({name, conn, table, premises, goal});
  };
  add_builtin("neg", "", "neg(bot())");
  add_builtin("or", "or(bot(), q)", "q");
  add_builtin("xor", "xor(bot(), q)", "q");
  add_builtin("imp", "", "imp(bot(), q)");
  add_builtin("nimp", "p", "nimp(p, bot())");
  add_builtin("ite", "ite(bot(), q, r)", "r");
  // Threshold connectives for k in {2, 3}: the two families share T3_2 at
  // k = 2, where only the T(k+1,k)-style witness separates the logics
  // (T3_2(p, p, bot()) |- p already holds in the fibring, since one bottom
  // slot cannot reach the threshold without p).
  add_builtin("T(3,2)", "T3_2(p, q, bot())", "q");   // T(k+1,k), k = 2
  add_builtin("T(4,3)", "T4_3(p, p, q, bot())", "q");  // T(k+1,k), k = 3
  add_builtin("T(4,2)", "T4_2(p, p, bot(), bot())", "p");  // T(k+1,2), k = 3

  auto add_ternary = [&](const std::string& name, const std::string& term,
                         const std::string& premises, const std::string& goal) {
    auto [conn, table] = mixed_ternary(name, term);
    cases.push_back({name + " = " + term, conn, table, premises, goal});
  };
  add_ternary("or_xor", "or(p, xor(q, r))", "or_xor(bot(), q, bot())", "q");
  add_ternary("and_imp", "and(p, imp(q, r))", "p", "and_imp(p, bot(), r)");
  add_ternary("and_or", "and(p, or(q, r))", "and_or(p, bot(), r)", "r");
  add_ternary("or_and", "or(p, and(q, r))", "or_and(bot(), q, r)", "q");

  for (const Case& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    FibredSystem sys(single(c.conn, c.table), builtin_matrix({"bot"}));
    const Signature& joint = sys.union_matrix().signature();
    const FormulaSet premises = parse_formula_list(c.premises, joint);
    const Formula goal = parse(c.goal, joint);

    ctx.require(entails(sys.union_matrix(), premises, goal),
                c.label + ": the witness must be classically valid");
    ctx.require(!decide_fibred(sys, premises, goal),
                c.label + ": the witness must fail in the fibring with bottom");
    const double sec = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    ctx.require(sec < 5.0, c.label + ": case exceeded its 5 s budget");
  }
}

// Shared by criteria 3 and 4: exhaustive depth-2 sweep plus random deeper
// samples; returns a failure message or the empty string.
std::string conformance_of_pair(const Connective& c1, const TruthTable& t1,
                                const Connective& c2, const TruthTable& t2) {
  FibredSystem sys(single(c1, t1), single(c2, t2));
  const bool predicted_collapse = collapse_pair(t1, t2).collapses;
  const std::string label = "(" + c1.name + ", " + c2.name + ")";

  if (!predicted_collapse) {
    auto witness = search_discrepancy(sys, SearchBounds{3, 2, 3});
    if (!witness) {
      return label + ": predicted non-collapse but no witness within depth 3";
    }
    const bool classical =
        entails(sys.union_matrix(), witness->premises, witness->goal);
    const bool fibred = decide_fibred(sys, witness->premises, witness->goal);
    if (classical != witness->classical_verdict ||
        fibred != witness->fibred_verdict || classical == fibred) {
      return label + ": witness failed re-verification";
    }
    return "";
  }

  // Predicted collapse: exhaustive agreement at depth 2, then random
  // deeper samples.
  if (auto witness = search_discrepancy(sys, SearchBounds{2, 2, 3})) {
    return label + ": predicted collapse but exhaustive sweep found {" +
           render_formula_set(witness->premises) + "} |- " +
           render_formula(witness->goal);
  }
  std::seed_seq seed_parts{std::hash<std::string>{}(c1.name),
                           std::hash<std::string>{}(c2.name)};
  std::mt19937_64 rng(seed_parts);
  const Signature& joint = sys.union_matrix().signature();
  for (int i = 0; i < 10000; ++i) {
    FormulaSet gamma;
    for (unsigned j = rng() % 3; j > 0; --j) {
      gamma.insert(random_formula(rng, joint, 3, 3));
    }
    Formula goal = random_formula(rng, joint, 3, 3);
    if (entails(sys.union_matrix(), gamma, goal) !=
        decide_fibred(sys, gamma, goal)) {
      return label + ": random sample disagreed on {" +
             render_formula_set(gamma) + "} |- " + render_formula(goal);
    }
  }
  return "";
}

void criterion_3(Context& ctx) {
  const std::vector<std::string> names{"top", "bot", "neg", "and", "or",
                                       "imp", "eq",  "nimp", "xor"};
  for (const std::string& a : names) {
    for (const std::string& b : names) {
      if (a == b) continue;
      auto [c1, t1] = *builtin_connective(a);
      auto [c2, t2] = *builtin_connective(b);
      std::string failure = conformance_of_pair(c1, t1, c2, t2);
      ctx.require(failure.empty(), failure);
    }
  }
}

void criterion_4(Context& ctx) {
  auto [eq_conn, eq_table] = *builtin_connective("eq");
  auto [bot_conn, bot_table] = *builtin_connective("bot");
  std::string failure =
      conformance_of_pair(eq_conn, eq_table, bot_conn, bot_table);
  ctx.require(failure.empty(), failure);
  ctx.require(!is_functionally_complete({eq_table, bot_table}),
              "{eq, bot} must remain functionally incomplete");
}

void criterion_5(Context& ctx) {
  auto table = [](const std::string& name) {
    return builtin_connective(name)->second;
  };
  ctx.require(is_functionally_complete({table("nimp"), table("top")}),
              "{nimp, top} should be complete");
  ctx.require(
      is_functionally_complete({table("or"), table("xor"), table("top")}),
      "{or, xor, top} should be complete");
  ctx.require(is_functionally_complete(
                  {threshold_table(3, 2), table("neg"), table("top")}),
              "{T(3,2), neg, top} should be complete");
  ctx.require(!is_functionally_complete({table("and"), table("imp")}),
              "{and, imp} should be incomplete (all 1-preserving)");
  ctx.require(!is_functionally_complete({table("and"), table("or"),
                                         table("top"), table("bot")}),
              "{and, or, top, bot} should be incomplete (all monotone)");
  ctx.require(!is_functionally_complete({table("eq"), table("bot")}),
              "{eq, bot} should be incomplete (all affine)");
}

void criterion_6(Context& ctx) {
  auto table = [](const std::string& name) {
    return builtin_connective(name)->second;
  };
  ctx.require(merge_is_classical({table("nimp")}, {table("top")}),
              "({nimp}, {top}) should merge to classical");
  ctx.require(merge_is_classical({table("or"), table("xor")}, {table("top")}),
              "({or, xor}, {top}) should merge to classical");
  ctx.require(
      merge_is_classical({threshold_table(3, 2), table("neg")}, {table("top")}),
      "({T(3,2), neg}, {top}) should merge to classical");

  bool threw = false;
  try {
    merge_is_classical({table("neg"), table("and")}, {table("top")});
  } catch (const PreconditionError&) {
    threw = true;
  }
  ctx.require(threw, "a complete first component must be a precondition error");

  threw = false;
  try {
    merge_is_classical({table("eq")}, {table("bot")});
  } catch (const PreconditionError&) {
    threw = true;
  }
  ctx.require(threw, "an incomplete union must be a precondition error");
}

void criterion_7(Context& ctx) {
  auto [or_conn, or_table] = *builtin_connective("or");
  auto [neg_conn, neg_table] = *builtin_connective("neg");
  std::vector<Formula> family =
      inequivalence_family(or_conn, or_table, neg_conn, neg_table, 4);
  ctx.require(family.size() == 4, "family must have 4 members");

  FibredSystem sys(builtin_matrix({"or"}), builtin_matrix({"neg"}));
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      ctx.require(!equivalent_fibred(sys, family[a], family[b]),
                  "pair (" + std::to_string(a) + "," + std::to_string(b) +
                      ") must be inequivalent");
    }
  }
}

void criterion_8(Context& ctx) {
  HilbertCalculus merged =
      merge_calculi(builtin_calculus("and"), builtin_calculus("or"));
  const Signature& sig = merged.signature();
  const Formula p = parse("p", sig);
  const Formula p_or_q = parse("or(p, q)", sig);
  const Formula absorb = parse("and(p, or(p, q))", sig);

  DerivationTree d1 = DerivationTree::by_rule(
      p, "c1", Substitution{{"p", p}, {"q", p_or_q}},
      {DerivationTree::hypothesis(absorb)});
  ctx.require(check_derivation(merged, {absorb}, p, d1),
              "D1 must be accepted");

  DerivationTree d2 = DerivationTree::by_rule(
      absorb, "c3", Substitution{{"p", p}, {"q", p_or_q}},
      {DerivationTree::hypothesis(p),
       DerivationTree::by_rule(p_or_q, "d1",
                               Substitution{{"p", p}, {"q", parse("q", sig)}},
                               {DerivationTree::hypothesis(p)})});
  ctx.require(check_derivation(merged, {p}, absorb, d2), "D2 must be accepted");

  DerivationTree corrupted = d2;
  corrupted.rule->subst.set("q", parse("q", sig));
  ctx.require(!check_derivation(merged, {p}, absorb, corrupted),
              "D2 with a corrupted c3 substitution must be rejected");

  auto found = bounded_derive(merged, {p}, absorb, 10);
  ctx.require(found.has_value(), "bounded_derive must re-find D2");
  if (found) {
    ctx.require(check_derivation(merged, {p}, absorb, *found),
                "the re-found derivation must check");
  }
}

void criterion_9(Context& ctx) {
  // Consequence postulates, 10^3 sampled instances per builtin matrix.
  std::mt19937_64 rng(193);
  for (const char* name : {"top", "bot", "neg", "and", "or", "imp", "eq",
                           "nimp", "xor", "ite"}) {
    BooleanMatrix m = builtin_matrix({name});
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      auto draw = [&] { return random_formula(rng, m.signature(), 3, 3); };
      FormulaSet gamma{draw(), draw()};
      Formula c = draw();

      FormulaSet with_c = gamma;
      with_c.insert(c);
      if (!entails(m, with_c, c)) ++violations;  // R

      if (entails(m, gamma, c)) {
        FormulaSet larger = gamma;
        larger.insert(draw());
        if (!entails(m, larger, c)) ++violations;  // M

        Substitution s;
        s.set("p", draw());
        s.set("q", draw());
        FormulaSet gamma_s;
        for (const Formula& g : gamma) gamma_s.insert(apply_substitution(s, g));
        if (!entails(m, gamma_s, apply_substitution(s, c))) ++violations;  // SI
      }

      Formula d = draw();
      FormulaSet with_d = gamma;
      with_d.insert(d);
      if (entails(m, gamma, d) && entails(m, with_d, c) &&
          !entails(m, gamma, c)) {
        ++violations;  // T, singleton cut
      }
    }
    ctx.require(violations == 0, std::string(name) + ": R/M/T/SI violations = " +
                                     std::to_string(violations));
  }

  // The abstract biconditionals, exhaustive over a 4-formula pool.
  {
    BooleanMatrix m =
        builtin_matrix({"and", "or", "imp", "neg", "top", "bot"});
    const Signature& sig = m.signature();
    const std::vector<Formula> pool{parse("p", sig), parse("q", sig),
                                    parse("and(p, q)", sig),
                                    parse("neg(p)", sig)};
    int violations = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
      FormulaSet gamma;
      for (unsigned bit = 0; bit < 4; ++bit) {
        if (mask & (1u << bit)) gamma.insert(pool[bit]);
      }
      auto with = [&](std::initializer_list<Formula> extra) {
        FormulaSet s = gamma;
        for (const Formula& f : extra) s.insert(f);
        return s;
      };
      for (const Formula& a : pool) {
        for (const Formula& b : pool) {
          Formula conj = parse("and(" + render_formula(a) + ", " +
                                   render_formula(b) + ")",
                               sig);
          Formula disj = parse("or(" + render_formula(a) + ", " +
                                   render_formula(b) + ")",
                               sig);
          Formula cond = parse("imp(" + render_formula(a) + ", " +
                                   render_formula(b) + ")",
                               sig);
          Formula nega = parse("neg(" + render_formula(a) + ")", sig);
          if (!entails(m, with({a, cond}), b)) ++violations;  // imp (i)
          if (!entails(m, with({a, nega}), b)) ++violations;  // neg (i)
          for (const Formula& c : pool) {
            // and: Gamma, a&b |- c iff Gamma, a, b |- c
            if (entails(m, with({conj}), c) != entails(m, with({a, b}), c)) {
              ++violations;
            }
            // or: Gamma, a|b |- c iff both disjuncts yield c
            if (entails(m, with({disj}), c) !=
                (entails(m, with({a}), c) && entails(m, with({b}), c))) {
              ++violations;
            }
            // imp (ii) and (iii)
            if (entails(m, with({cond}), c) && !entails(m, with({b}), c)) {
              ++violations;
            }
            if (entails(m, with({a}), c) && entails(m, with({cond}), c) &&
                !entails(m, gamma, c)) {
              ++violations;
            }
            // neg (ii)
            if (entails(m, with({a}), c) && entails(m, with({nega}), c) &&
                !entails(m, gamma, c)) {
              ++violations;
            }
            // top and bot
            if (entails(m, with({parse("top()", sig)}), c) &&
                !entails(m, gamma, c)) {
              ++violations;
            }
            if (entails(m, gamma, parse("bot()", sig)) &&
                !entails(m, gamma, c)) {
              ++violations;
            }
          }
        }
      }
    }
    ctx.require(violations == 0, "abstract-condition violations = " +
                                     std::to_string(violations));
  }

  // The biconditional-clone characterization against term enumeration.
  for (unsigned arity = 1; arity <= 3; ++arity) {
    const std::size_t rows = std::size_t{1} << arity;
    std::set<std::vector<std::uint8_t>> reachable;
    for (unsigned arg = 1; arg <= arity; ++arg) {
      std::vector<std::uint8_t> projection(rows);
      for (std::size_t row = 0; row < rows; ++row) {
        projection[row] = (row >> (arity - arg)) & 1u;
      }
      reachable.insert(std::move(projection));
    }
    for (int depth = 1; depth <= 4; ++depth) {
      auto next = reachable;
      for (const auto& a : reachable) {
        for (const auto& b : reachable) {
          std::vector<std::uint8_t> combined(rows);
          for (std::size_t i = 0; i < rows; ++i) {
            combined[i] = a[i] == b[i] ? 1 : 0;
          }
          next.insert(std::move(combined));
        }
      }
      reachable = std::move(next);
    }
    int mismatches = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rows); ++mask) {
      std::vector<std::uint8_t> outputs(rows);
      for (std::size_t row = 0; row < rows; ++row) {
        outputs[row] = (mask >> row) & 1u;
      }
      TruthTable t(arity, outputs);
      if (in_equiv_clone(t) != (reachable.count(outputs) == 1)) ++mismatches;
    }
    ctx.require(mismatches == 0,
                "equiv-clone oracle mismatches at arity " +
                    std::to_string(arity) + ": " + std::to_string(mismatches));
  }
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<void(Context&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "absorption asymmetry in the and/or fibring", 1.0, criterion_1},
      {2, "classical-vs-fibred witnesses for the bottom pairings", 70.0,
       criterion_2},
      {3, "collapse-prediction conformance sweep over all builtin pairs",
       600.0, criterion_3},
      {4, "eq with bot collapses and stays functionally incomplete", 60.0,
       criterion_4},
      {5, "functional-completeness battery", 1.0, criterion_5},
      {6, "merge-to-classical battery", 1.0, criterion_6},
      {7, "local-tabularity failure family for or with neg", 30.0,
       criterion_7},
      {8, "derivation checking and bounded search", 5.0, criterion_8},
      {9, "consequence postulates, abstract conditions, clone oracle", 300.0,
       criterion_9},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Context ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(ctx);
    } catch (const std::exception& e) {
      ctx.failures.push_back(std::string("exception: ") + e.what());
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (sec >= criterion.budget_seconds) {
      std::ostringstream budget;
      budget << "exceeded budget: " << sec << " s >= "
             << criterion.budget_seconds << " s";
      ctx.failures.push_back(budget.str());
    }
    if (ctx.failures.empty()) {
      std::printf("PASS criterion %d: %s (%.2f s)\n", criterion.number,
                  criterion.name.c_str(), sec);
    } else {
      ++failed;
      std::printf("FAIL criterion %d: %s (%.2f s)\n", criterion.number,
                  criterion.name.c_str(), sec);
      for (const std::string& failure : ctx.failures) {
        std::printf("     - %s\n", failure.c_str());
      }
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
