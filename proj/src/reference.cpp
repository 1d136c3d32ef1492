#include "fibring/reference.hpp"

#include <vector>

#include "fibring/errors.hpp"

namespace fibring::ref {

namespace {

std::vector<Formula> query_atoms(const std::vector<Formula>& skeletons) {
  FormulaSet atoms;
  for (const Formula& f : skeletons) {
    for (const Formula& sub : subformulas(f)) {
      if (sub.is_atom()) atoms.insert(sub);
    }
  }
  if (atoms.size() > kMaxQueryAtoms) {
    throw BudgetError("query has " + std::to_string(atoms.size()) +
                      " distinct atoms; the cap is " +
                      std::to_string(kMaxQueryAtoms));
  }
  return {atoms.begin(), atoms.end()};
}

Valuation valuation_for(const std::vector<Formula>& atoms, std::uint64_t row) {
  Valuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    v.assign(atoms[i], (row >> i) & 1u);
  }
  return v;
}

}  // namespace

bool entails(const BooleanMatrix& m, const FormulaSet& premises,
             const Formula& goal) {
  std::vector<Formula> skeletons;
  for (const Formula& f : premises) skeletons.push_back(skeleton(m.signature(), f));
  const Formula goal_skeleton = skeleton(m.signature(), goal);
  skeletons.push_back(goal_skeleton);

  const std::vector<Formula> atoms = query_atoms(skeletons);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    const Valuation v = valuation_for(atoms, row);
    bool premises_hold = true;
    for (std::size_t i = 0; premises_hold && i + 1 < skeletons.size(); ++i) {
      premises_hold = eval_formula(m, v, skeletons[i]);
    }
    if (premises_hold && !eval_formula(m, v, goal_skeleton)) return false;
  }
  return true;
}

bool is_satisfiable(const BooleanMatrix& m, const FormulaSet& formulas) {
  std::vector<Formula> skeletons;
  for (const Formula& f : formulas) skeletons.push_back(skeleton(m.signature(), f));

  const std::vector<Formula> atoms = query_atoms(skeletons);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    const Valuation v = valuation_for(atoms, row);
    bool all_hold = true;
    for (const Formula& f : skeletons) {
      if (!eval_formula(m, v, f)) {
        all_hold = false;
        break;
      }
    }
    if (all_hold) return true;
  }
  return false;
}

}  // namespace fibring::ref
