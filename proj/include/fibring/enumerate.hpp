#pragma once

// Deterministic generators for formulas and consecutions, used by the
// discrepancy search and the sampled property suites.
//
// Depth counts nested applications with atoms at depth 1, so or(p, q) has
// depth 2 and or(p, and(p, q)) has depth 3.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "fibring/syntax.hpp"

namespace fibring {

// p, q, r, s, t, u, v, w, then v9, v10, ...; names that collide with a
// connective of `sig` are skipped.
std::vector<std::string> variable_pool(unsigned count, const Signature& sig);

// All formulas over `sig` with depth <= max_depth and variables drawn from
// variable_pool(var_pool, sig); deterministic order.
std::vector<Formula> enumerate_formulas(const Signature& sig,
                                        unsigned max_depth, unsigned var_pool);

struct Consecution {
  FormulaSet premises;
  Formula goal;
};

struct SearchBounds {
  unsigned max_depth = 3;
  unsigned max_premises = 2;
  unsigned var_pool = 3;
};

// Streams every consecution within the bounds exactly once, ordered by
// total node count (premises plus goal), then by goal text, then by the
// premise texts; chunks preserve that order.
class ConsecutionStream {
 public:
  ConsecutionStream(const Signature& sig, const SearchBounds& bounds);

  // At most `limit` further consecutions; empty once exhausted.
  std::vector<Consecution> next_chunk(std::size_t limit);

 private:
  void refill_goal_batch();

  std::vector<Formula> formulas_;  // sorted by (size, rendered text)
  unsigned max_premises_;
  std::size_t total_size_ = 0;   // current total node count
  std::size_t max_total_ = 0;
  std::size_t goal_index_ = 0;   // index into formulas_ for the current goal
  std::vector<Consecution> pending_;  // candidates for the current goal
  std::size_t pending_offset_ = 0;
};

// Convenience wrapper that materializes the whole stream; only sensible
// for small bounds.
std::vector<Consecution> enumerate_consecutions(const Signature& sig,
                                                const SearchBounds& bounds);

// Uniform random formula of depth <= max_depth (atoms at the leaves).
Formula random_formula(std::mt19937_64& rng, const Signature& sig,
                       unsigned max_depth, unsigned var_pool);

}  // namespace fibring
