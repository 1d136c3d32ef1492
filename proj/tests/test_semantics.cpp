#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fibring/enumerate.hpp"
#include "fibring/eval.hpp"
#include "fibring/reference.hpp"

using namespace fibring;

namespace {

BooleanMatrix matrix(std::initializer_list<std::string> names) {
  return builtin_matrix(std::vector<std::string>(names));
}

Formula parse(const char* text, const BooleanMatrix& m) {
  return parse_formula(text, m.signature());
}

// Threshold oracle computed by the nested recursion
//   T(n,0) = 1,  T(n,n) = p1 & ... & pn,
//   T(n,k) = (p1 & T(n-1,k-1)(p2..pn)) | T(n-1,k)(p2..pn)
// directly on output vectors, independent of threshold_table().
std::vector<std::uint8_t> threshold_recursive(unsigned n, unsigned k) {
  const std::size_t rows = std::size_t{1} << n;
  std::vector<std::uint8_t> out(rows);
  if (k == 0) {
    std::fill(out.begin(), out.end(), 1);
    return out;
  }
  if (k == n) {
    for (std::size_t row = 0; row < rows; ++row) {
      out[row] = (row == rows - 1) ? 1 : 0;
    }
    return out;
  }
  const std::vector<std::uint8_t> left = threshold_recursive(n - 1, k - 1);
  const std::vector<std::uint8_t> right = threshold_recursive(n - 1, k);
  for (std::size_t row = 0; row < rows; ++row) {
    const bool p1 = (row >> (n - 1)) & 1u;
    const std::size_t rest = row & ((std::size_t{1} << (n - 1)) - 1);
    out[row] = ((p1 && left[rest]) || right[rest]) ? 1 : 0;
  }
  return out;
}

}  // namespace

TEST_CASE("truth table row convention") {
  TruthTable imp = TruthTable::from_bits(2, "1101");
  CHECK(imp.output(0));       // (0,0)
  CHECK(imp.output(1));       // (0,1)
  CHECK(!imp.output(2));      // (1,0): argument 1 is the high bit
  CHECK(imp.output(3));
  CHECK(imp.input_bit(2, 1));
  CHECK(!imp.input_bit(2, 2));
  CHECK(imp.bits() == "1101");
  CHECK_THROWS_AS(TruthTable::from_bits(2, "110"), Error);
  CHECK_THROWS_AS(TruthTable::from_bits(1, "1x"), Error);
}

TEST_CASE("builtin tables match their defining clauses") {
  BooleanMatrix m = matrix({"top", "bot", "neg", "and", "or", "imp", "eq",
                            "nimp", "xor", "ite"});
  CHECK(m.find_table("top")->bits() == "1");
  CHECK(m.find_table("bot")->bits() == "0");
  CHECK(m.find_table("neg")->bits() == "10");
  CHECK(m.find_table("and")->bits() == "0001");
  CHECK(m.find_table("or")->bits() == "0111");
  CHECK(m.find_table("imp")->bits() == "1101");
  CHECK(m.find_table("eq")->bits() == "1001");
  CHECK(m.find_table("nimp")->bits() == "0010");
  CHECK(m.find_table("xor")->bits() == "0110");
  // ite(1,y,z) = y; ite(0,y,z) = z
  CHECK(m.find_table("ite")->bits() == "01010011");
}

TEST_CASE("derived connectives equal their defining terms bit for bit") {
  BooleanMatrix base = matrix({"neg", "and", "or", "imp"});
  const std::vector<std::string> pq{"p", "q"};
  const std::vector<std::string> pqr{"p", "q", "r"};

  CHECK(truth_table_of_term(base, parse("neg(imp(p, q))", base), pq) ==
        *matrix({"nimp"}).find_table("nimp"));
  CHECK(truth_table_of_term(
            base, parse("or(and(p, neg(q)), and(q, neg(p)))", base), pq) ==
        *matrix({"xor"}).find_table("xor"));
  CHECK(truth_table_of_term(
            base, parse("and(imp(p, q), imp(neg(p), r))", base), pqr) ==
        *matrix({"ite"}).find_table("ite"));
}

TEST_CASE("threshold family") {
  CHECK(threshold_table(3, 2).output(0b110));
  CHECK(!threshold_table(3, 2).output(0b100));
  CHECK(threshold_table(4, 0).is_constant(true));
  CHECK_THROWS_AS(threshold_table(2, 3), Error);
  CHECK_THROWS_AS(builtin_matrix({"T(2,3)"}), Error);

  // Recursive definition agrees with the counting one for all n <= 5.
  for (unsigned n = 0; n <= 5; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      CHECK(threshold_table(n, k).outputs() == threshold_recursive(n, k));
    }
  }

  // Both accepted request spellings resolve to the same connective.
  auto a = builtin_connective("T(3,2)");
  auto b = builtin_connective("T3_2");
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->first == b->first);
  CHECK(a->first.name == "T3_2");
  CHECK(a->second == b->second);
  CHECK(!builtin_connective("Tower").has_value());
  CHECK(!builtin_connective("grand").has_value());
}

TEST_CASE("eval_formula") {
  BooleanMatrix m = matrix({"and", "imp"});
  Valuation v;
  v.assign("p", true);
  v.assign("q", false);
  CHECK(!eval_formula(m, v, parse("and(p, q)", m)));
  CHECK(eval_formula(m, v, Formula::variable("p")));
  CHECK(!eval_formula(m, v, parse("imp(p, q)", m)));
  CHECK_THROWS_AS(eval_formula(m, v, Formula::variable("z")), Error);

  Formula foreign = Formula::application({"other", 1}, {Formula::variable("p")});
  CHECK_THROWS_AS(eval_formula(m, v, foreign), Error);

  Formula skel = Formula::skeletal(parse("and(p, q)", m));
  Valuation vs;
  vs.assign(skel, true);
  CHECK(eval_formula(m, vs, skel));
}

TEST_CASE("truth_table_of_term") {
  BooleanMatrix m = matrix({"eq", "neg"});
  CHECK(truth_table_of_term(m, parse("eq(p, p)", m), {"p"}).bits() == "11");
  CHECK(truth_table_of_term(m, parse("neg(neg(p))", m), {"p"}).bits() == "01");
  CHECK(truth_table_of_term(m, Formula::variable("p"), {"p", "q"}).bits() ==
        "0011");
  CHECK_THROWS_AS(truth_table_of_term(m, parse("eq(p, z)", m), {"p"}), Error);
  CHECK_THROWS_AS(
      truth_table_of_term(m, Formula::skeletal(Formula::variable("p")), {"p"}),
      Error);
}

TEST_CASE("entailment examples") {
  BooleanMatrix and_m = matrix({"and"});
  BooleanMatrix or_m = matrix({"or"});

  CHECK(entails(and_m, parse_formula_list("and(p, q)", and_m.signature()),
                parse("q", and_m)));

  // The or-matrix only sees the skeleton or(p, x[and(p, q)]).
  Signature joint = Signature::merged(and_m.signature(), or_m.signature());
  Formula mixed = parse_formula("or(p, and(p, q))", joint);
  CHECK(!entails(or_m, {mixed}, parse_formula("p", joint)));

  Formula absorb = parse_formula("and(p, or(p, q))", joint);
  CHECK(entails(and_m, {absorb}, parse_formula("or(p, q)", joint)));
}

TEST_CASE("satisfiability examples") {
  CHECK(is_satisfiable(matrix({"and"}), {}));
  BooleanMatrix bot_m = matrix({"bot"});
  CHECK(!is_satisfiable(bot_m, {parse("bot()", bot_m)}));
  BooleanMatrix neg_m = matrix({"neg"});
  CHECK(!is_satisfiable(
      neg_m, parse_formula_list("p, neg(p)", neg_m.signature())));
  CHECK(is_satisfiable(neg_m, {parse("neg(p)", neg_m)}));
}

TEST_CASE("entails handles the empty premise set as a tautology check") {
  BooleanMatrix m = matrix({"imp"});
  CHECK(entails(m, {}, parse("imp(p, p)", m)));
  CHECK(!entails(m, {}, parse("imp(p, q)", m)));
}

TEST_CASE("variable budget is enforced") {
  BooleanMatrix m = matrix({"and"});
  FormulaSet premises;
  Formula chain = Formula::variable("v0");
  for (int i = 1; i <= 25; ++i) {
    chain = Formula::application(*m.signature().find("and"),
                                 {chain, Formula::variable("v" + std::to_string(i))});
  }
  CHECK_THROWS_AS(entails(m, {chain}, Formula::variable("v0")), BudgetError);
}

TEST_CASE("compiled kernel agrees with the serial reference") {
  BooleanMatrix m = matrix({"and", "or", "neg", "imp", "top"});
  std::mt19937_64 rng(20240818);
  for (int i = 0; i < 1500; ++i) {
    FormulaSet premises;
    const unsigned count = rng() % 3;
    for (unsigned j = 0; j < count; ++j) {
      premises.insert(random_formula(rng, m.signature(), 4, 4));
    }
    Formula goal = random_formula(rng, m.signature(), 4, 4);

    const bool expected = ref::entails(m, premises, goal);
    CHECK(entails(m, premises, goal, Exec::serial) == expected);
    CHECK(entails(m, premises, goal, Exec::parallel) == expected);

    const bool expected_sat = ref::is_satisfiable(m, premises);
    CHECK(is_satisfiable(m, premises, Exec::serial) == expected_sat);
    CHECK(is_satisfiable(m, premises, Exec::parallel) == expected_sat);
  }
}

TEST_CASE("serial and parallel scans find the same first witness row") {
  BooleanMatrix m = matrix({"and", "or", "neg", "xor"});
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 300; ++i) {
    FormulaSet satisfy;
    for (unsigned j = 0; j < 2; ++j) {
      satisfy.insert(random_formula(rng, m.signature(), 5, 8));
    }
    std::vector<Formula> falsify{random_formula(rng, m.signature(), 5, 8)};
    CompiledQuery q = compile_query(m, satisfy, falsify);
    CHECK(first_witness_row_serial(q) == first_witness_row_parallel(q));
  }
}

TEST_CASE("consequence postulates hold on sampled instances") {
  std::mt19937_64 rng(11);
  for (const char* name : {"and", "or", "imp", "neg", "eq", "top", "bot"}) {
    BooleanMatrix m = matrix({name});
    for (int i = 0; i < 150; ++i) {
      auto draw = [&] { return random_formula(rng, m.signature(), 3, 3); };
      FormulaSet gamma{draw(), draw()};
      Formula c = draw();

      // R: anything in the premises follows.
      FormulaSet with_c = gamma;
      with_c.insert(c);
      CHECK(entails(m, with_c, c));

      // M: extra premises never break a consequence.
      if (entails(m, gamma, c)) {
        FormulaSet larger = gamma;
        larger.insert(draw());
        CHECK(entails(m, larger, c));
      }

      // T (singleton cut): gamma |- d and gamma, d |- c gives gamma |- c.
      Formula d = draw();
      FormulaSet with_d = gamma;
      with_d.insert(d);
      if (entails(m, gamma, d) && entails(m, with_d, c)) {
        CHECK(entails(m, gamma, c));
      }

      // SI: substitution instances preserve consequence.
      if (entails(m, gamma, c)) {
        Substitution s;
        s.set("p", draw());
        s.set("q", draw());
        FormulaSet gamma_s;
        for (const Formula& g : gamma) {
          gamma_s.insert(apply_substitution(s, g));
        }
        CHECK(entails(m, gamma_s, apply_substitution(s, c)));
      }
    }
  }
}

TEST_CASE("connective definition files") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "and 2 0001\n"
      "maj 3 00010111\n");
  auto defs = load_connectives(in, "<test>");
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].first == Connective{"and", 2});
  CHECK(defs[0].second.bits() == "0001");
  CHECK(defs[1].first.arity == 3);

  std::istringstream bad("and 2 001\n");
  CHECK_THROWS_WITH_AS(load_connectives(bad, "<test>"),
                       doctest::Contains("<test>:1"), Error);
  std::istringstream bad2("and two 0001\n");
  CHECK_THROWS_AS(load_connectives(bad2, "<test>"), Error);
  std::istringstream bad3("3and 2 0001\n");
  CHECK_THROWS_AS(load_connectives(bad3, "<test>"), Error);
}
