#pragma once

// Term-function taxonomy and Post-lattice predicates on truth tables.

#include <set>
#include <vector>

#include "fibring/truth_table.hpp"

namespace fibring {

struct Classification {
  bool top_like = false;     // constant 1
  bool bottom_like = false;  // constant 0
  std::set<unsigned> projective_components;  // 1-based argument indices
  bool projection_conjunction = false;
  bool significant = false;       // neither top- nor bottom-like
  bool very_significant = false;  // significant and not a projection-conjunction
};

// Membership flags for Post's five maximal clones.
struct PostProfile {
  bool preserves_zero = false;
  bool preserves_one = false;
  bool monotone = false;
  bool affine = false;
  bool self_dual = false;
};

// Indices j such that every row with output 1 has argument j equal to 1,
// i.e. the j-th projection follows from the function.
std::set<unsigned> projective_components(const TruthTable& t);

Classification classify(const TruthTable& t);

PostProfile post_profile(const TruthTable& t);

// Coefficients of the algebraic normal form (XOR of AND-monomials); entry
// `mask` is the coefficient of the monomial over the arguments in `mask`,
// with argument i at bit (arity - i) as in the row order.
std::vector<std::uint8_t> algebraic_normal_form(const TruthTable& t);

// Post's criterion: the set escapes all five maximal clones.  Requires a
// nonempty set.
bool is_functionally_complete(const std::vector<TruthTable>& tables);

// Membership in the clone generated by two-valued biconditional: affine
// and 1-preserving.
bool in_equiv_clone(const TruthTable& t);

// True iff every member is top-like; such a set generates exactly the
// clone of projections and constant-1 functions.
bool generates_top_clone(const std::vector<TruthTable>& tables);

// True iff adding the nullary constant-1 table makes the set functionally
// complete.
bool completable_by_top(const std::vector<TruthTable>& tables);

}  // namespace fibring
