#pragma once

// Two-valued logical matrices: a signature with one truth table per
// connective, truth values {0,1}, designated value 1.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibring/syntax.hpp"
#include "fibring/truth_table.hpp"

namespace fibring {

class BooleanMatrix {
 public:
  BooleanMatrix() = default;

  // Throws Error on a name clash or an arity mismatch with the table.
  void add(const Connective& conn, TruthTable table);

  const Signature& signature() const { return sig_; }
  const TruthTable* find_table(std::string_view name) const;
  const TruthTable& table(const Connective& conn) const;  // throws if absent

  // Union of two matrices with disjoint signatures.
  static BooleanMatrix merged(const BooleanMatrix& a, const BooleanMatrix& b);

 private:
  Signature sig_;
  std::map<std::string, TruthTable, std::less<>> tables_;
};

// A finite assignment of bits to atoms (variables and skeletal variables).
class Valuation {
 public:
  void assign(const Formula& atom, bool value);  // atom must not be compound
  void assign(std::string_view var_name, bool value);
  std::optional<bool> value(const Formula& atom) const;

 private:
  std::map<Formula, bool> map_;
};

// Homomorphic extension of `v` to `f`.  Throws Error on an unassigned atom
// or a connective missing from the matrix.
bool eval_formula(const BooleanMatrix& m, const Valuation& v, const Formula& f);

// Table of the term function  lambda params. f.  Throws Error if f contains
// a variable outside `params` or any skeletal variable.
TruthTable truth_table_of_term(const BooleanMatrix& m, const Formula& f,
                               const std::vector<std::string>& params);

// --- builtin connectives ---------------------------------------------------
//
// top/0 bot/0 neg/1 and/2 or/2 imp/2 eq/2 nimp/2 xor/2 ite/3, plus the
// threshold family: the request "T(n,k)" (accepted spelling "Tn_k", which is
// also the declared connective name) denotes the n-ary connective that
// outputs 1 iff at least k arguments are 1.

// Resolves one builtin name; nullopt when the name is not builtin.
std::optional<std::pair<Connective, TruthTable>> builtin_connective(
    std::string_view name);

// Matrix for a list of builtin names.  Throws Error on an unknown name or
// invalid threshold parameters.
BooleanMatrix builtin_matrix(const std::vector<std::string>& names);

// Threshold table by the counting rule: 1 iff at least k inputs are 1.
// Requires n >= k >= 0.
TruthTable threshold_table(unsigned n, unsigned k);

// --- connective definition files -------------------------------------------
//
// One connective per line:  name arity bitstring
// with the bitstring of length 2^arity under the fixed row order, e.g.
//   and 2 0001
// Blank lines and lines starting with '#' are skipped.

std::vector<std::pair<Connective, TruthTable>> load_connectives(
    std::istream& in, const std::string& filename);
std::vector<std::pair<Connective, TruthTable>> load_connectives_file(
    const std::string& path);

}  // namespace fibring
