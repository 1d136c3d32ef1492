#include "fibring/clones.hpp"

#include <bit>

#include "fibring/errors.hpp"
#include "fibring/matrix.hpp"

namespace fibring {

std::set<unsigned> projective_components(const TruthTable& t) {
  std::set<unsigned> out;
  for (unsigned arg = 1; arg <= t.arity(); ++arg) {
    bool projective = true;
    for (std::size_t row = 0; projective && row < t.rows(); ++row) {
      if (t.output(row) && !t.input_bit(row, arg)) projective = false;
    }
    if (projective) out.insert(arg);
  }
  return out;
}

Classification classify(const TruthTable& t) {
  Classification c;
  c.top_like = t.is_constant(true);
  c.bottom_like = t.is_constant(false);
  c.projective_components = projective_components(t);

  // Projection-conjunction: with J the projective components, the function
  // must already follow from {p_j : j in J}, i.e. every row whose J-indexed
  // arguments are all 1 outputs 1.
  c.projection_conjunction = true;
  for (std::size_t row = 0; c.projection_conjunction && row < t.rows(); ++row) {
    bool j_args_hold = true;
    for (unsigned arg : c.projective_components) {
      if (!t.input_bit(row, arg)) {
        j_args_hold = false;
        break;
      }
    }
    if (j_args_hold && !t.output(row)) c.projection_conjunction = false;
  }

  c.significant = !c.top_like && !c.bottom_like;
  c.very_significant = c.significant && !c.projection_conjunction;
  return c;
}

std::vector<std::uint8_t> algebraic_normal_form(const TruthTable& t) {
  std::vector<std::uint8_t> anf = t.outputs();
  // In-place Moebius transform over the subset lattice of rows.
  for (std::size_t bit = 1; bit < anf.size(); bit <<= 1) {
    for (std::size_t mask = 0; mask < anf.size(); ++mask) {
      if (mask & bit) anf[mask] ^= anf[mask ^ bit];
    }
  }
  return anf;
}

PostProfile post_profile(const TruthTable& t) {
  PostProfile p;
  p.preserves_zero = !t.output(0);
  p.preserves_one = t.output(t.rows() - 1);

  // Monotone iff no single-bit raise lowers the output.
  p.monotone = true;
  for (std::size_t row = 0; p.monotone && row < t.rows(); ++row) {
    for (unsigned bit = 0; bit < t.arity(); ++bit) {
      if (row & (std::size_t{1} << bit)) continue;
      if (t.output(row) && !t.output(row | (std::size_t{1} << bit))) {
        p.monotone = false;
        break;
      }
    }
  }

  const std::vector<std::uint8_t> anf = algebraic_normal_form(t);
  p.affine = true;
  for (std::size_t mask = 0; mask < anf.size(); ++mask) {
    if (anf[mask] && std::popcount(mask) >= 2) {
      p.affine = false;
      break;
    }
  }

  p.self_dual = true;
  const std::size_t full = t.rows() - 1;
  for (std::size_t row = 0; row < t.rows(); ++row) {
    if (t.output(row) == t.output(full ^ row)) {
      p.self_dual = false;
      break;
    }
  }
  return p;
}

bool is_functionally_complete(const std::vector<TruthTable>& tables) {
  if (tables.empty()) throw PreconditionError("empty connective set");
  bool escapes_p0 = false, escapes_p1 = false, escapes_m = false,
       escapes_a = false, escapes_d = false;
  for (const TruthTable& t : tables) {
    const PostProfile p = post_profile(t);
    escapes_p0 |= !p.preserves_zero;
    escapes_p1 |= !p.preserves_one;
    escapes_m |= !p.monotone;
    escapes_a |= !p.affine;
    escapes_d |= !p.self_dual;
  }
  return escapes_p0 && escapes_p1 && escapes_m && escapes_a && escapes_d;
}

bool in_equiv_clone(const TruthTable& t) {
  const PostProfile p = post_profile(t);
  return p.affine && p.preserves_one;
}

bool generates_top_clone(const std::vector<TruthTable>& tables) {
  if (tables.empty()) throw PreconditionError("empty connective set");
  for (const TruthTable& t : tables) {
    if (!t.is_constant(true)) return false;
  }
  return true;
}

bool completable_by_top(const std::vector<TruthTable>& tables) {
  std::vector<TruthTable> with_top = tables;
  with_top.push_back(TruthTable::constant(0, true));
  return is_functionally_complete(with_top);
}

}  // namespace fibring
