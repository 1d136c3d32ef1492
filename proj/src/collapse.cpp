#include "fibring/collapse.hpp"

#include <algorithm>
#include <exception>

namespace fibring {

std::string to_string(CollapseReason reason) {
  switch (reason) {
    case CollapseReason::none:
      return "None";
    case CollapseReason::top_like_first:
      return "TopLike(first)";
    case CollapseReason::top_like_second:
      return "TopLike(second)";
    case CollapseReason::neither_very_significant:
      return "NeitherVerySignificant";
    case CollapseReason::equiv_clone_plus_bot:
      return "EquivClonePlusBot";
  }
  return "None";
}

CollapseVerdict collapse_pair(const TruthTable& t1, const TruthTable& t2) {
  if (t1 == t2) {
    throw PreconditionError("collapse_pair needs two distinct connectives");
  }
  const Classification c1 = classify(t1);
  const Classification c2 = classify(t2);
  if (c1.top_like) return {true, CollapseReason::top_like_first};
  if (c2.top_like) return {true, CollapseReason::top_like_second};
  if (!c1.very_significant && !c2.very_significant) {
    return {true, CollapseReason::neither_very_significant};
  }
  const auto is_nullary_bot = [](const TruthTable& t) {
    return t.arity() == 0 && t.is_constant(false);
  };
  if ((is_nullary_bot(t2) && in_equiv_clone(t1)) ||
      (is_nullary_bot(t1) && in_equiv_clone(t2))) {
    return {true, CollapseReason::equiv_clone_plus_bot};
  }
  return {false, CollapseReason::none};
}

bool merge_is_classical(const std::vector<TruthTable>& conn1,
                        const std::vector<TruthTable>& conn2) {
  if (conn1.empty() || conn2.empty()) {
    throw PreconditionError("connective sets must be nonempty");
  }
  if (is_functionally_complete(conn1)) {
    throw PreconditionError("first component is already functionally complete");
  }
  if (is_functionally_complete(conn2)) {
    throw PreconditionError("second component is already functionally complete");
  }
  std::vector<TruthTable> joint = conn1;
  joint.insert(joint.end(), conn2.begin(), conn2.end());
  if (!is_functionally_complete(joint)) {
    throw PreconditionError("the union of the components is not functionally complete");
  }
  return (generates_top_clone(conn2) && completable_by_top(conn1)) ||
         (generates_top_clone(conn1) && completable_by_top(conn2));
}

// ---------------------------------------------------------------------------
// Discrepancy search

std::optional<Witness> search_discrepancy(const FibredSystem& sys,
                                          const SearchBounds& bounds) {
  if (bounds.max_depth < 1 || bounds.max_premises < 1 || bounds.var_pool < 1) {
    throw PreconditionError("search bounds must be at least 1");
  }
  ConsecutionStream stream(sys.union_matrix().signature(), bounds);
  constexpr std::size_t kChunk = 8192;

  for (;;) {
    const std::vector<Consecution> chunk = stream.next_chunk(kChunk);
    if (chunk.empty()) return std::nullopt;

    const std::int64_t n = static_cast<std::int64_t>(chunk.size());
    std::int64_t hit = n;
    std::exception_ptr failure = nullptr;

#pragma omp parallel for schedule(dynamic, 16) reduction(min : hit)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        const Consecution& candidate = chunk[static_cast<std::size_t>(i)];
        const bool classical = entails(sys.union_matrix(), candidate.premises,
                                       candidate.goal);
        const bool fibred =
            decide_fibred(sys, candidate.premises, candidate.goal);
        if (classical != fibred) hit = std::min(hit, i);
      } catch (...) {
#pragma omp critical
        if (failure == nullptr) failure = std::current_exception();
      }
    }
    if (failure != nullptr) std::rethrow_exception(failure);

    if (hit < n) {
      const Consecution& candidate = chunk[static_cast<std::size_t>(hit)];
      const bool classical =
          entails(sys.union_matrix(), candidate.premises, candidate.goal);
      return Witness{candidate.premises, candidate.goal, classical,
                     !classical};
    }
  }
}

// ---------------------------------------------------------------------------
// The local-tabularity constructions

Formula find_significant_unary(const Connective& conn, const TruthTable& t) {
  const Classification c = classify(t);
  if (!c.significant || conn.arity == 0 || t.arity() != conn.arity) {
    throw PreconditionError(
        "find_significant_unary needs a significant connective of arity >= 1");
  }

  const Formula p = Formula::variable("p");
  const Formula diagonal =
      Formula::application(conn, std::vector<Formula>(conn.arity, p));
  const bool at_zero = t.output(0);
  const bool at_one = t.output(t.rows() - 1);
  if (at_zero != at_one) return diagonal;  // already identity or negation

  // The diagonal came out constant.  Pick a row refuting constancy of the
  // connective itself and plug the diagonal into the arguments that must
  // flip, the bare variable into the rest.
  const bool want = !at_zero;
  std::size_t row = 0;
  while (t.output(row) != want) ++row;
  std::vector<Formula> args;
  args.reserve(conn.arity);
  for (unsigned arg = 1; arg <= conn.arity; ++arg) {
    const bool fixed_high = t.input_bit(row, arg);
    // Diagonal positions reproduce `row` when p = 0 (top-like diagonal) or
    // when p = 1 (bottom-like diagonal); variable positions track p.
    const bool use_diagonal = at_zero ? fixed_high : !fixed_high;
    args.push_back(use_diagonal ? diagonal : p);
  }
  const Formula result = Formula::application(conn, std::move(args));

  BooleanMatrix m;
  m.add(conn, t);
  const TruthTable table = truth_table_of_term(m, result, {"p"});
  if (table.is_constant(false) || table.is_constant(true)) {
    throw Error("constructed unary term is not significant");  // unreachable
  }
  return result;
}

namespace {

// psi_1, psi_2, ... : syntactically distinct compound one-variable terms
// over c2.  For a significant table these are the iterates of one
// significant unary term, none of them top-like; for a bottom-like table
// any enumeration of distinct compound terms works.
std::vector<Formula> unary_family(const Connective& c2, const TruthTable& t2,
                                  std::size_t count) {
  std::vector<Formula> family;
  family.reserve(count);
  if (classify(t2).significant) {
    const Formula base = find_significant_unary(c2, t2);
    Formula current = base;
    for (std::size_t i = 0; i < count; ++i) {
      family.push_back(current);
      Substitution step{{"p", current}};
      current = apply_substitution(step, base);
    }
    return family;
  }
  // Bottom-like: breadth-first over application shapes.
  std::vector<Formula> terms{Formula::variable("p")};
  std::size_t next_arg = 0;
  while (family.size() < count) {
    // Combine the term at next_arg with everything seen so far.
    std::vector<std::size_t> index(c2.arity, 0);
    for (;;) {
      bool uses_latest = false;
      for (std::size_t i : index) uses_latest |= (i == next_arg);
      if (uses_latest) {
        std::vector<Formula> args;
        for (std::size_t i : index) args.push_back(terms[i]);
        Formula candidate = Formula::application(c2, std::move(args));
        if (std::find(terms.begin(), terms.end(), candidate) == terms.end()) {
          terms.push_back(candidate);
          family.push_back(candidate);
          if (family.size() == count) return family;
        }
      }
      unsigned pos = 0;
      while (pos < c2.arity && ++index[pos] == next_arg + 1) {
        index[pos] = 0;
        ++pos;
      }
      if (pos == c2.arity) break;
    }
    ++next_arg;
  }
  return family;
}

}  // namespace

std::vector<Formula> inequivalence_family(const Connective& c1,
                                          const TruthTable& t1,
                                          const Connective& c2,
                                          const TruthTable& t2,
                                          std::size_t count) {
  if (!classify(t1).very_significant) {
    throw PreconditionError("first connective must be very significant");
  }
  if (classify(t2).top_like) {
    throw PreconditionError("second connective must not be top-like");
  }
  if (t2.arity() == 0 && t2.is_constant(false)) {
    throw PreconditionError("second connective must not be the nullary bottom");
  }
  if (c1.name == c2.name) {
    throw PreconditionError("connectives must have distinct names");
  }
  if (t1.arity() != c1.arity || t2.arity() != c2.arity) {
    throw PreconditionError("table arity does not match connective");
  }
  if (count == 0) return {};

  const std::set<unsigned> projective = projective_components(t1);
  const std::vector<Formula> psi =
      unary_family(c2, t2, count * std::size_t{c1.arity});

  std::vector<Formula> family;
  family.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    std::vector<Formula> args;
    args.reserve(c1.arity);
    for (unsigned i = 1; i <= c1.arity; ++i) {
      if (projective.count(i)) {
        args.push_back(Formula::variable("p" + std::to_string(i)));
      } else {
        args.push_back(psi[n * i - 1]);  // psi is 1-indexed conceptually
      }
    }
    family.push_back(Formula::application(c1, std::move(args)));
  }

  BooleanMatrix side1, side2;
  side1.add(c1, t1);
  side2.add(c2, t2);
  const FibredSystem sys(side1, side2);
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (equivalent_fibred(sys, family[a], family[b])) {
        throw Error("inequivalence family failed verification: " +
                    render_formula(family[a]) + " and " +
                    render_formula(family[b]) + " came out equivalent");
      }
    }
  }
  return family;
}

}  // namespace fibring
