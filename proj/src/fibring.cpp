#include "fibring/fibring.hpp"

namespace fibring {

FibredSystem::FibredSystem(BooleanMatrix side_a, BooleanMatrix side_b)
    : a_(std::move(side_a)),
      b_(std::move(side_b)),
      union_(BooleanMatrix::merged(a_, b_)) {
  // merged() already rejected overlapping signatures
}

SaturationResult saturate(const FibredSystem& sys, const FormulaSet& gamma) {
  const FormulaSet universe = subformulas(gamma);
  SaturationResult result{gamma, 0};
  for (;;) {
    FormulaSet next;
    for (const Formula& d : universe) {
      if (entails(sys.side_a(), result.closure, d) ||
          entails(sys.side_b(), result.closure, d)) {
        next.insert(d);
      }
    }
    if (next == result.closure) break;
    result.closure = std::move(next);
    ++result.iterations;
  }
  return result;
}

bool is_explosive(const BooleanMatrix& side, const FormulaSet& delta) {
  // Unsatisfiable sets entail everything, and composing a satisfying
  // valuation with any substitution keeps every instance satisfiable, so
  // unsatisfiability of the skeletonized set settles all instances at once.
  return !is_satisfiable(side, delta);
}

namespace {

void require_known(const Formula& f, const FibredSystem& sys) {
  if (!f.is_application()) return;
  if (!sys.union_matrix().signature().contains(f.head())) {
    throw Error("connective '" + f.head().name +
                "' lies outside both components");
  }
  for (const Formula& arg : f.args()) require_known(arg, sys);
}

// The saturation depends on the premises only, so the recursion over the
// goal's monoliths reuses one closure.
bool decide_against(const FibredSystem& sys, const FormulaSet& closure,
                    const Formula& goal) {
  const BooleanMatrix* own = &sys.side_a();
  const BooleanMatrix* other = &sys.side_b();
  if (goal.is_application() && sys.side_b().signature().contains(goal.head())) {
    std::swap(own, other);
  }

  // Monoliths of a goal headed on our side are proper subformulas, so each
  // recursive call shrinks the goal.
  FormulaSet premises = closure;
  for (const Formula& monolith : monoliths(own->signature(), goal)) {
    if (decide_against(sys, closure, monolith)) premises.insert(monolith);
  }
  if (entails(*own, premises, goal)) return true;
  return is_explosive(*other, closure);
}

}  // namespace

bool decide_fibred(const FibredSystem& sys, const FormulaSet& gamma,
                   const Formula& goal) {
  for (const Formula& f : gamma) require_known(f, sys);
  require_known(goal, sys);
  return decide_against(sys, saturate(sys, gamma).closure, goal);
}

bool equivalent_fibred(const FibredSystem& sys, const Formula& f,
                       const Formula& g) {
  return decide_fibred(sys, {f}, g) && decide_fibred(sys, {g}, f);
}

}  // namespace fibring
