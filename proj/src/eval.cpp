#include "fibring/eval.hpp"

#include <atomic>
#include <cstddef>
#include <map>

namespace fibring {

namespace {

void compile_into(const BooleanMatrix& m, const Formula& f,
                  const std::map<Formula, std::uint32_t>& atom_index,
                  EvalProgram& out) {
  if (f.is_atom()) {
    out.push_back(EvalOp{nullptr, atom_index.at(f)});
    return;
  }
  for (const Formula& arg : f.args()) compile_into(m, arg, atom_index, out);
  const TruthTable* table = m.find_table(f.head().name);
  if (table == nullptr || table->arity() != f.head().arity) {
    throw Error("connective '" + f.head().name + "' not in matrix");
  }
  out.push_back(EvalOp{table, 0});
}

bool eval_with_stack(const EvalProgram& program, std::uint32_t assignment,
                     std::vector<std::uint8_t>& stack) {
  stack.clear();
  for (const EvalOp& op : program) {
    if (op.table == nullptr) {
      stack.push_back((assignment >> op.index) & 1u);
      continue;
    }
    const unsigned k = op.table->arity();
    const std::size_t base = stack.size() - k;
    std::size_t row = 0;
    for (unsigned j = 0; j < k; ++j) {
      row |= std::size_t{stack[base + j]} << (k - 1 - j);
    }
    stack.resize(base);
    stack.push_back(op.table->output(row) ? 1 : 0);
  }
  return stack.back() != 0;
}

bool row_matches(const CompiledQuery& q, std::uint32_t row,
                 std::vector<std::uint8_t>& stack) {
  for (const EvalProgram& p : q.satisfy) {
    if (!eval_with_stack(p, row, stack)) return false;
  }
  for (const EvalProgram& p : q.falsify) {
    if (eval_with_stack(p, row, stack)) return false;
  }
  return true;
}

}  // namespace

CompiledQuery compile_query(const BooleanMatrix& m, const FormulaSet& satisfy,
                            const std::vector<Formula>& falsify) {
  CompiledQuery q;
  std::vector<Formula> skeletons;
  skeletons.reserve(satisfy.size() + falsify.size());
  for (const Formula& f : satisfy) {
    skeletons.push_back(skeleton(m.signature(), f));
  }
  const std::size_t num_satisfy = skeletons.size();
  for (const Formula& f : falsify) {
    skeletons.push_back(skeleton(m.signature(), f));
  }

  FormulaSet atom_set;
  for (const Formula& f : skeletons) {
    for (const Formula& sub : subformulas(f)) {
      if (sub.is_atom()) atom_set.insert(sub);
    }
  }
  if (atom_set.size() > kMaxQueryAtoms) {
    throw BudgetError("query has " + std::to_string(atom_set.size()) +
                      " distinct atoms; the cap is " +
                      std::to_string(kMaxQueryAtoms));
  }

  std::map<Formula, std::uint32_t> atom_index;
  for (const Formula& atom : atom_set) {
    atom_index.emplace(atom, static_cast<std::uint32_t>(q.atoms.size()));
    q.atoms.push_back(atom);
  }
  q.num_atoms = static_cast<unsigned>(q.atoms.size());

  for (std::size_t i = 0; i < skeletons.size(); ++i) {
    EvalProgram program;
    compile_into(m, skeletons[i], atom_index, program);
    (i < num_satisfy ? q.satisfy : q.falsify).push_back(std::move(program));
  }
  return q;
}

bool eval_program(const EvalProgram& program, std::uint32_t assignment) {
  std::vector<std::uint8_t> stack;
  return eval_with_stack(program, assignment, stack);
}

std::optional<std::uint32_t> first_witness_row_serial(const CompiledQuery& q) {
  const std::uint64_t total = std::uint64_t{1} << q.num_atoms;
  std::vector<std::uint8_t> stack;
  for (std::uint64_t row = 0; row < total; ++row) {
    if (row_matches(q, static_cast<std::uint32_t>(row), stack)) {
      return static_cast<std::uint32_t>(row);
    }
  }
  return std::nullopt;
}

std::optional<std::uint32_t> first_witness_row_parallel(const CompiledQuery& q) {
  const std::uint64_t total = std::uint64_t{1} << q.num_atoms;
  constexpr std::uint64_t kBlock = 4096;
  const std::int64_t num_blocks =
      static_cast<std::int64_t>((total + kBlock - 1) / kBlock);
  std::atomic<std::uint64_t> best{total};

#pragma omp parallel
  {
    std::vector<std::uint8_t> stack;
#pragma omp for schedule(dynamic)
    for (std::int64_t b = 0; b < num_blocks; ++b) {
      const std::uint64_t start = static_cast<std::uint64_t>(b) * kBlock;
      // Blocks at or past the current best cannot improve the minimum.
      if (start >= best.load(std::memory_order_relaxed)) continue;
      const std::uint64_t end = std::min(start + kBlock, total);
      for (std::uint64_t row = start; row < end; ++row) {
        if (row >= best.load(std::memory_order_relaxed)) break;
        if (!row_matches(q, static_cast<std::uint32_t>(row), stack)) continue;
        std::uint64_t seen = best.load(std::memory_order_relaxed);
        while (row < seen &&
               !best.compare_exchange_weak(seen, row,
                                           std::memory_order_relaxed)) {
        }
        break;
      }
    }
  }

  const std::uint64_t found = best.load(std::memory_order_relaxed);
  if (found == total) return std::nullopt;
  return static_cast<std::uint32_t>(found);
}

std::optional<std::uint32_t> first_witness_row(const CompiledQuery& q,
                                               Exec exec) {
  const std::uint64_t total = std::uint64_t{1} << q.num_atoms;
  if (exec == Exec::serial ||
      (exec == Exec::automatic && total < kParallelRowThreshold)) {
    return first_witness_row_serial(q);
  }
  return first_witness_row_parallel(q);
}

bool entails(const BooleanMatrix& m, const FormulaSet& premises,
             const Formula& goal, Exec exec) {
  CompiledQuery q = compile_query(m, premises, {goal});
  return !first_witness_row(q, exec).has_value();
}

bool is_satisfiable(const BooleanMatrix& m, const FormulaSet& formulas,
                    Exec exec) {
  CompiledQuery q = compile_query(m, formulas, {});
  return first_witness_row(q, exec).has_value();
}

}  // namespace fibring
