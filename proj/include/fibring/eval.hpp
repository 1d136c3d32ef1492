#pragma once

// Decidable matrix consequence by exhaustive valuation enumeration.
//
// Mixed formulas are first skeletonized with respect to the matrix
// signature, so foreign-headed subformulas behave as shared opaque atoms.
// The skeletonized query is compiled into flat postorder programs and the
// 2^n assignments over its atoms are scanned for a witness row.  Queries
// above a size threshold run the scan OpenMP-parallel; the returned row is
// the smallest witness either way, so results do not depend on the
// schedule.  A naive serial evaluator with the same contract lives in
// reference.hpp and is used to cross-check this path.

#include <cstdint>
#include <optional>
#include <vector>

#include "fibring/matrix.hpp"
#include "fibring/syntax.hpp"

namespace fibring {

enum class Exec {
  automatic,  // serial below kParallelRowThreshold rows, parallel above
  serial,
  parallel,
};

inline constexpr std::size_t kParallelRowThreshold = std::size_t{1} << 14;

// true iff no valuation satisfies every premise and falsifies the goal.
bool entails(const BooleanMatrix& m, const FormulaSet& premises,
             const Formula& goal, Exec exec = Exec::automatic);

// true iff some valuation satisfies every member.
bool is_satisfiable(const BooleanMatrix& m, const FormulaSet& formulas,
                    Exec exec = Exec::automatic);

// --- kernel interface (exposed for tests and the benchmark) ----------------

// One postorder step: load an atom bit or apply a table to the top of the
// evaluation stack.
struct EvalOp {
  const TruthTable* table = nullptr;  // nullptr: load atom `index`
  std::uint32_t index = 0;            // atom index when table == nullptr
};
using EvalProgram = std::vector<EvalOp>;

// A conjunctive row query: find an assignment making every program in
// `satisfy` true and every program in `falsify` false.
struct CompiledQuery {
  unsigned num_atoms = 0;
  std::vector<Formula> atoms;  // atom i holds bit i of an assignment
  std::vector<EvalProgram> satisfy;
  std::vector<EvalProgram> falsify;
};

// Skeletonizes both argument sets w.r.t. m's signature and compiles them.
// Throws BudgetError when the query has more than kMaxQueryAtoms atoms.
CompiledQuery compile_query(const BooleanMatrix& m, const FormulaSet& satisfy,
                            const std::vector<Formula>& falsify);

bool eval_program(const EvalProgram& program, std::uint32_t assignment);

// Smallest assignment satisfying the query, if any.
std::optional<std::uint32_t> first_witness_row_serial(const CompiledQuery& q);
std::optional<std::uint32_t> first_witness_row_parallel(const CompiledQuery& q);
std::optional<std::uint32_t> first_witness_row(const CompiledQuery& q,
                                               Exec exec);

}  // namespace fibring
