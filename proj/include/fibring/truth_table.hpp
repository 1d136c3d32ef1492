#pragma once

// Two-valued truth tables.
//
// Row convention, fixed project-wide: a k-ary table has rows 0 .. 2^k-1,
// and argument i (1-based) of row r is bit (k - i) of r.  Argument 1 is
// therefore the most significant bit, row 0 is the all-zeros input and the
// last row the all-ones input.  The bitstring form lists outputs by row,
// so "0001" is binary conjunction.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fibring/errors.hpp"

namespace fibring {

class TruthTable {
 public:
  TruthTable() = default;  // nullary constant 0

  // outputs[r] is the value at row r; outputs.size() must equal 2^arity.
  TruthTable(unsigned arity, std::vector<std::uint8_t> outputs);

  // Parses a bitstring of '0'/'1' of length 2^arity.
  static TruthTable from_bits(unsigned arity, std::string_view bits);
  static TruthTable constant(unsigned arity, bool value);

  unsigned arity() const { return arity_; }
  std::size_t rows() const { return std::size_t{1} << arity_; }
  bool output(std::size_t row) const { return outputs_[row] != 0; }

  // Value of the 1-based argument `arg` in row `row`.
  bool input_bit(std::size_t row, unsigned arg) const {
    return (row >> (arity_ - arg)) & 1u;
  }

  const std::vector<std::uint8_t>& outputs() const { return outputs_; }
  std::string bits() const;

  bool is_constant(bool value) const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend bool operator<(const TruthTable& a, const TruthTable& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    return a.outputs_ < b.outputs_;
  }

 private:
  unsigned arity_ = 0;
  std::vector<std::uint8_t> outputs_ = {0};
};

}  // namespace fibring
