#include "fibring/truth_table.hpp"

#include <algorithm>

namespace fibring {

TruthTable::TruthTable(unsigned arity, std::vector<std::uint8_t> outputs)
    : arity_(arity), outputs_(std::move(outputs)) {
  if (arity_ >= 31) throw Error("truth table arity too large");
  if (outputs_.size() != (std::size_t{1} << arity_)) {
    throw Error("truth table of arity " + std::to_string(arity_) +
                " needs " + std::to_string(std::size_t{1} << arity_) +
                " outputs, got " + std::to_string(outputs_.size()));
  }
  for (auto& bit : outputs_) {
    if (bit > 1) throw Error("truth table outputs must be 0 or 1");
  }
}

TruthTable TruthTable::from_bits(unsigned arity, std::string_view bits) {
  std::vector<std::uint8_t> outputs;
  outputs.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(std::string("invalid character '") + c + "' in bitstring");
    }
    outputs.push_back(c == '1' ? 1 : 0);
  }
  return TruthTable(arity, std::move(outputs));
}

TruthTable TruthTable::constant(unsigned arity, bool value) {
  return TruthTable(
      arity, std::vector<std::uint8_t>(std::size_t{1} << arity, value ? 1 : 0));
}

std::string TruthTable::bits() const {
  std::string out(outputs_.size(), '0');
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (outputs_[i]) out[i] = '1';
  }
  return out;
}

bool TruthTable::is_constant(bool value) const {
  std::uint8_t expect = value ? 1 : 0;
  return std::all_of(outputs_.begin(), outputs_.end(),
                     [expect](std::uint8_t b) { return b == expect; });
}

}  // namespace fibring
