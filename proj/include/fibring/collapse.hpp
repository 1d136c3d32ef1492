#pragma once

// Predicting when the fibring of two classical fragments already sanctions
// everything their joint truth-table semantics does, and hunting for
// counterexamples when it does not.

#include <optional>
#include <string>
#include <vector>

#include "fibring/clones.hpp"
#include "fibring/enumerate.hpp"
#include "fibring/fibring.hpp"

namespace fibring {

enum class CollapseReason {
  none,
  top_like_first,          // the first connective is constant 1
  top_like_second,         // the second connective is constant 1
  neither_very_significant,
  equiv_clone_plus_bot,    // one side in the biconditional clone, other is
                           // the nullary constant 0
};

std::string to_string(CollapseReason reason);

struct CollapseVerdict {
  bool collapses = false;
  CollapseReason reason = CollapseReason::none;
};

// Whether the fibring of the two single-connective logics coincides with
// their joint two-valued logic.  Clauses are tested in the order listed in
// CollapseReason.  Requires distinct tables.
CollapseVerdict collapse_pair(const TruthTable& t1, const TruthTable& t2);

// Whether the fibring of the logics of two connective sets is full
// classical logic.  Requires both sets nonempty and individually
// incomplete and their union complete; anything else is a
// PreconditionError, never a false verdict.
bool merge_is_classical(const std::vector<TruthTable>& conn1,
                        const std::vector<TruthTable>& conn2);

// A consecution on which truth-table consequence over the union signature
// and the fibred decision disagree.
struct Witness {
  FormulaSet premises;
  Formula goal;
  bool classical_verdict = false;
  bool fibred_verdict = false;
};

// First disagreement in the deterministic enumeration order of
// ConsecutionStream, or nullopt when the bounds are exhausted.  Chunks are
// scanned OpenMP-parallel; the earliest candidate always wins.
std::optional<Witness> search_discrepancy(const FibredSystem& sys,
                                          const SearchBounds& bounds);

// A compound one-variable formula over `conn` whose induced table is the
// identity "01" or negation "10".  Requires a significant table of
// arity >= 1.
Formula find_significant_unary(const Connective& conn, const TruthTable& t);

// `count` formulas over the two connectives, pairwise inequivalent in
// their fibring; the construction that defeats local tabularity.
// Requires: t1 very significant, t2 not top-like and not the nullary
// constant 0, distinct names.  Verifies the family before returning and
// throws Error if any pair comes out equivalent.
std::vector<Formula> inequivalence_family(const Connective& c1,
                                          const TruthTable& t1,
                                          const Connective& c2,
                                          const TruthTable& t2,
                                          std::size_t count);

}  // namespace fibring
