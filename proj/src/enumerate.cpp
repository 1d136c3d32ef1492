#include "fibring/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace fibring {

std::vector<std::string> variable_pool(unsigned count, const Signature& sig) {
  static const char* const base[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  std::vector<std::string> out;
  std::size_t base_index = 0;
  unsigned numbered = 9;
  while (out.size() < count) {
    std::string name = base_index < std::size(base)
                           ? std::string(base[base_index++])
                           : "v" + std::to_string(numbered++);
    if (!sig.contains(name)) out.push_back(std::move(name));
  }
  return out;
}

std::vector<Formula> enumerate_formulas(const Signature& sig,
                                        unsigned max_depth,
                                        unsigned var_pool) {
  std::vector<Formula> all;      // depth <= d so far
  std::vector<Formula> frontier; // depth == d exactly
  for (const std::string& name : variable_pool(var_pool, sig)) {
    all.push_back(Formula::variable(name));
  }
  for (const auto& [name, conn] : sig) {
    if (conn.arity == 0) all.push_back(Formula::application(conn, {}));
  }
  frontier = all;

  for (unsigned depth = 2; depth <= max_depth; ++depth) {
    std::vector<Formula> next;
    for (const auto& [name, conn] : sig) {
      if (conn.arity == 0) continue;
      // Odometer over argument tuples; at least one argument must come
      // from the previous frontier or the formula was generated earlier.
      std::vector<std::size_t> index(conn.arity, 0);
      for (;;) {
        bool touches_frontier = false;
        for (std::size_t i : index) {
          if (all[i].depth() == depth - 1) {
            touches_frontier = true;
            break;
          }
        }
        if (touches_frontier) {
          std::vector<Formula> args;
          args.reserve(conn.arity);
          for (std::size_t i : index) args.push_back(all[i]);
          next.push_back(Formula::application(conn, std::move(args)));
        }
        unsigned pos = 0;
        while (pos < conn.arity && ++index[pos] == all.size()) {
          index[pos] = 0;
          ++pos;
        }
        if (pos == conn.arity) break;
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return all;
}

// ---------------------------------------------------------------------------
// Consecution stream

ConsecutionStream::ConsecutionStream(const Signature& sig,
                                     const SearchBounds& bounds)
    : formulas_(enumerate_formulas(sig, bounds.max_depth, bounds.var_pool)),
      max_premises_(bounds.max_premises) {
  std::vector<std::string> texts;
  texts.reserve(formulas_.size());
  for (const Formula& f : formulas_) texts.push_back(render_formula(f));
  std::vector<std::size_t> order(formulas_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (formulas_[a].size() != formulas_[b].size()) {
      return formulas_[a].size() < formulas_[b].size();
    }
    return texts[a] < texts[b];
  });
  std::vector<Formula> sorted;
  sorted.reserve(formulas_.size());
  for (std::size_t i : order) sorted.push_back(formulas_[i]);
  formulas_ = std::move(sorted);

  std::size_t max_size = 0;
  for (const Formula& f : formulas_) max_size = std::max(max_size, f.size());
  max_total_ = max_size * (std::size_t{max_premises_} + 1);
  goal_index_ = formulas_.size();  // forces the first advance
}

namespace {

void premise_combos(const std::vector<Formula>& formulas, std::size_t start,
                    std::size_t remaining, unsigned slots,
                    std::size_t max_size, std::vector<Formula>& current,
                    const Formula& goal, std::vector<Consecution>& out) {
  if (remaining == 0) {
    out.push_back(Consecution{FormulaSet(current.begin(), current.end()), goal});
    return;
  }
  if (slots == 0 || remaining > slots * max_size) return;
  for (std::size_t i = start; i < formulas.size(); ++i) {
    const std::size_t size = formulas[i].size();
    if (size > remaining) break;  // sorted by size
    current.push_back(formulas[i]);
    premise_combos(formulas, i + 1, remaining - size, slots - 1, max_size,
                   current, goal, out);
    current.pop_back();
  }
}

}  // namespace

void ConsecutionStream::refill_goal_batch() {
  pending_.clear();
  pending_offset_ = 0;
  std::size_t max_size = 0;
  for (const Formula& f : formulas_) max_size = std::max(max_size, f.size());

  while (pending_.empty()) {
    ++goal_index_;
    if (goal_index_ >= formulas_.size()) {
      if (total_size_ >= max_total_) return;  // exhausted
      ++total_size_;
      goal_index_ = 0;
    }
    if (formulas_.empty()) return;
    const Formula& goal = formulas_[goal_index_];
    if (goal.size() > total_size_) {
      // formulas_ is sorted by size: no later goal fits this total either
      goal_index_ = formulas_.size();
      continue;
    }
    std::vector<Formula> current;
    premise_combos(formulas_, 0, total_size_ - goal.size(), max_premises_,
                   max_size, current, goal, pending_);
  }
}

std::vector<Consecution> ConsecutionStream::next_chunk(std::size_t limit) {
  std::vector<Consecution> out;
  while (out.size() < limit) {
    if (pending_offset_ < pending_.size()) {
      out.push_back(pending_[pending_offset_++]);
      continue;
    }
    refill_goal_batch();
    if (pending_.empty()) break;
  }
  return out;
}

std::vector<Consecution> enumerate_consecutions(const Signature& sig,
                                                const SearchBounds& bounds) {
  ConsecutionStream stream(sig, bounds);
  std::vector<Consecution> out;
  for (;;) {
    std::vector<Consecution> chunk = stream.next_chunk(4096);
    if (chunk.empty()) break;
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  }
  return out;
}

Formula random_formula(std::mt19937_64& rng, const Signature& sig,
                       unsigned max_depth, unsigned var_pool) {
  const std::vector<std::string> vars = variable_pool(var_pool, sig);
  std::vector<Connective> nullary;
  std::vector<Connective> compound;
  for (const auto& [name, conn] : sig) {
    (conn.arity == 0 ? nullary : compound).push_back(conn);
  }

  auto build = [&](auto&& self, unsigned depth) -> Formula {
    const std::size_t atoms = vars.size() + nullary.size();
    const std::size_t choices = atoms + (depth > 1 ? compound.size() : 0);
    if (choices == 0) throw Error("cannot generate a formula: no atoms");
    std::size_t pick = std::uniform_int_distribution<std::size_t>(
        0, choices - 1)(rng);
    if (pick < vars.size()) return Formula::variable(vars[pick]);
    pick -= vars.size();
    if (pick < nullary.size()) return Formula::application(nullary[pick], {});
    const Connective& conn = compound[pick - nullary.size()];
    std::vector<Formula> args;
    args.reserve(conn.arity);
    for (unsigned i = 0; i < conn.arity; ++i) {
      args.push_back(self(self, depth - 1));
    }
    return Formula::application(conn, std::move(args));
  };
  return build(build, max_depth);
}

}  // namespace fibring
