#pragma once

// Serial reference implementation of matrix consequence.
//
// Same contract as entails() / is_satisfiable() in eval.hpp, computed the
// plain way: skeletonize, then walk every valuation with the recursive
// formula evaluator, no compilation and no parallelism.  Kept as the
// baseline the optimized kernel is tested and benchmarked against.

#include "fibring/matrix.hpp"
#include "fibring/syntax.hpp"

namespace fibring::ref {

bool entails(const BooleanMatrix& m, const FormulaSet& premises,
             const Formula& goal);

bool is_satisfiable(const BooleanMatrix& m, const FormulaSet& formulas);

}  // namespace fibring::ref
