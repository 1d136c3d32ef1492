#pragma once

// Deciding consequence in the disjoint fibring of two logics, each given
// by a single two-valued matrix.
//
// The combined relation is decided from three ingredients computed against
// the component matrices alone:
//
//   - the saturation of the premises: the fixpoint of "subformula of the
//     premises derivable from the current set inside either component";
//   - explosiveness of the saturated set in a component, which for a
//     two-valued matrix with designated {1} amounts to the unsatisfiability
//     of its skeletonization;
//   - the goal's derivable monoliths: its maximal foreign-headed
//     subformulas that the premises already entail in the combined logic,
//     obtained by recursing on strictly smaller formulas.
//
// A goal headed in one component is then entailed iff the saturated
// premises plus its derivable monoliths entail it inside that component,
// or the saturated set is explosive in the other component.

#include <cstddef>

#include "fibring/eval.hpp"
#include "fibring/matrix.hpp"
#include "fibring/syntax.hpp"

namespace fibring {

class FibredSystem {
 public:
  // Throws PreconditionError when the signatures overlap.
  FibredSystem(BooleanMatrix side_a, BooleanMatrix side_b);

  const BooleanMatrix& side_a() const { return a_; }
  const BooleanMatrix& side_b() const { return b_; }

  // The single-matrix semantics over the union signature; decides what the
  // fully interacting classical fragment sanctions.
  const BooleanMatrix& union_matrix() const { return union_; }

  FibredSystem swapped() const { return FibredSystem(b_, a_); }

 private:
  BooleanMatrix a_;
  BooleanMatrix b_;
  BooleanMatrix union_;
};

struct SaturationResult {
  FormulaSet closure;
  std::size_t iterations = 0;  // steps until the fixpoint was reached
};

// Least fixpoint of D in sub(gamma) with current |-_a D or current |-_b D,
// seeded with gamma.
SaturationResult saturate(const FibredSystem& sys, const FormulaSet& gamma);

// Whether every substitution instance of delta entails everything in the
// matrix logic of `side`; equivalently, whether the skeletonization of
// delta w.r.t. side's signature is unsatisfiable.
bool is_explosive(const BooleanMatrix& side, const FormulaSet& delta);

// Combined-consequence decision.  Throws Error if a connective of the
// inputs lies outside both signatures.
bool decide_fibred(const FibredSystem& sys, const FormulaSet& gamma,
                   const Formula& goal);

// Mutual derivability of f and g in the fibred logic.
bool equivalent_fibred(const FibredSystem& sys, const Formula& f,
                       const Formula& g);

}  // namespace fibring
