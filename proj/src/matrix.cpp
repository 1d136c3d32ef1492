#include "fibring/matrix.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace fibring {

void BooleanMatrix::add(const Connective& conn, TruthTable table) {
  if (table.arity() != conn.arity) {
    throw Error("table arity " + std::to_string(table.arity()) +
                " does not match connective '" + conn.name + "'/" +
                std::to_string(conn.arity));
  }
  if (const Connective* existing = sig_.find(conn.name)) {
    if (*existing != conn || tables_.at(conn.name) != table) {
      throw Error("connective '" + conn.name + "' redefined");
    }
    return;
  }
  sig_.add(conn);
  tables_.emplace(conn.name, std::move(table));
}

const TruthTable* BooleanMatrix::find_table(std::string_view name) const {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

const TruthTable& BooleanMatrix::table(const Connective& conn) const {
  const TruthTable* t = find_table(conn.name);
  if (t == nullptr) throw Error("connective '" + conn.name + "' not in matrix");
  return *t;
}

BooleanMatrix BooleanMatrix::merged(const BooleanMatrix& a,
                                    const BooleanMatrix& b) {
  if (!a.signature().disjoint_with(b.signature())) {
    throw PreconditionError("matrices share connective names");
  }
  BooleanMatrix out = a;
  for (const auto& [name, conn] : b.signature()) {
    out.add(conn, *b.find_table(name));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Valuations and evaluation

void Valuation::assign(const Formula& atom, bool value) {
  if (atom.is_application()) throw Error("valuation assigns atoms only");
  map_.insert_or_assign(atom, value);
}

void Valuation::assign(std::string_view var_name, bool value) {
  assign(Formula::variable(std::string(var_name)), value);
}

std::optional<bool> Valuation::value(const Formula& atom) const {
  auto it = map_.find(atom);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool eval_formula(const BooleanMatrix& m, const Valuation& v, const Formula& f) {
  if (f.is_atom()) {
    std::optional<bool> bit = v.value(f);
    if (!bit) throw Error("unassigned atom '" + render_formula(f) + "'");
    return *bit;
  }
  const TruthTable* table = m.find_table(f.head().name);
  if (table == nullptr || table->arity() != f.head().arity) {
    throw Error("connective '" + f.head().name + "' not in matrix");
  }
  const unsigned k = f.head().arity;
  std::size_t row = 0;
  for (unsigned i = 0; i < k; ++i) {
    row |= std::size_t{eval_formula(m, v, f.args()[i])} << (k - 1 - i);
  }
  return table->output(row);
}

TruthTable truth_table_of_term(const BooleanMatrix& m, const Formula& f,
                               const std::vector<std::string>& params) {
  Analysis info = analyze(f);
  for (const Formula& sub : info.subformulas) {
    if (sub.is_skeletal()) {
      throw Error("term contains skeletal variable " + render_formula(sub));
    }
  }
  for (const std::string& var : info.variables) {
    if (std::find(params.begin(), params.end(), var) == params.end()) {
      throw Error("term variable '" + var + "' not among parameters");
    }
  }
  const unsigned k = static_cast<unsigned>(params.size());
  std::vector<std::uint8_t> outputs;
  outputs.reserve(std::size_t{1} << k);
  for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
    Valuation v;
    for (unsigned i = 0; i < k; ++i) {
      v.assign(params[i], (row >> (k - 1 - i)) & 1u);
    }
    outputs.push_back(eval_formula(m, v, f) ? 1 : 0);
  }
  return TruthTable(k, std::move(outputs));
}

// ---------------------------------------------------------------------------
// Builtins

TruthTable threshold_table(unsigned n, unsigned k) {
  if (k > n) {
    throw Error("threshold T(" + std::to_string(n) + "," + std::to_string(k) +
                ") needs n >= k >= 0");
  }
  std::vector<std::uint8_t> outputs;
  outputs.reserve(std::size_t{1} << n);
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    unsigned ones = 0;
    for (unsigned i = 0; i < n; ++i) ones += (row >> i) & 1u;
    outputs.push_back(ones >= k ? 1 : 0);
  }
  return TruthTable(n, std::move(outputs));
}

namespace {

TruthTable ite_table() {
  std::vector<std::uint8_t> outputs(8);
  for (std::size_t row = 0; row < 8; ++row) {
    bool p = (row >> 2) & 1u, q = (row >> 1) & 1u, z = row & 1u;
    outputs[row] = (p ? q : z) ? 1 : 0;
  }
  return TruthTable(3, std::move(outputs));
}

// Accepts "T(n,k)" and "Tn_k"; returns nullopt when `name` is not of either
// shape.  Throws on threshold parameters with k > n.
std::optional<std::pair<unsigned, unsigned>> parse_threshold(
    std::string_view name) {
  if (name.size() < 2 || name[0] != 'T') return std::nullopt;
  std::string_view rest = name.substr(1);
  char open = 0;
  if (rest.front() == '(') {
    open = '(';
    rest.remove_prefix(1);
  }
  auto read_number = [&rest]() -> std::optional<unsigned> {
    unsigned value = 0;
    auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr == rest.data()) return std::nullopt;
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    return value;
  };
  std::optional<unsigned> n = read_number();
  if (!n) return std::nullopt;
  if (open == '(') {
    if (rest.empty() || rest.front() != ',') return std::nullopt;
  } else {
    if (rest.empty() || rest.front() != '_') return std::nullopt;
  }
  rest.remove_prefix(1);
  std::optional<unsigned> k = read_number();
  if (!k) return std::nullopt;
  if (open == '(') {
    if (rest.empty() || rest.front() != ')') return std::nullopt;
    rest.remove_prefix(1);
  }
  if (!rest.empty()) return std::nullopt;
  if (*k > *n) {
    throw Error("invalid threshold T(" + std::to_string(*n) + "," +
                std::to_string(*k) + "): needs n >= k >= 0");
  }
  return std::make_pair(*n, *k);
}

}  // namespace

std::optional<std::pair<Connective, TruthTable>> builtin_connective(
    std::string_view name) {
  struct Fixed {
    std::string_view name;
    unsigned arity;
    std::string_view bits;
  };
  static const Fixed fixed[] = {
      {"top", 0, "1"},     {"bot", 0, "0"},    {"neg", 1, "10"},
      {"and", 2, "0001"},  {"or", 2, "0111"},  {"imp", 2, "1101"},
      {"eq", 2, "1001"},   {"nimp", 2, "0010"}, {"xor", 2, "0110"},
  };
  for (const Fixed& f : fixed) {
    if (name == f.name) {
      return std::make_pair(Connective{std::string(f.name), f.arity},
                            TruthTable::from_bits(f.arity, f.bits));
    }
  }
  if (name == "ite") {
    return std::make_pair(Connective{"ite", 3}, ite_table());
  }
  if (auto nk = parse_threshold(name)) {
    auto [n, k] = *nk;
    std::string canonical = "T" + std::to_string(n) + "_" + std::to_string(k);
    return std::make_pair(Connective{std::move(canonical), n},
                          threshold_table(n, k));
  }
  return std::nullopt;
}

BooleanMatrix builtin_matrix(const std::vector<std::string>& names) {
  BooleanMatrix m;
  for (const std::string& name : names) {
    auto builtin = builtin_connective(name);
    if (!builtin) throw Error("unknown builtin connective '" + name + "'");
    m.add(builtin->first, builtin->second);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Connective definition files

std::vector<std::pair<Connective, TruthTable>> load_connectives(
    std::istream& in, const std::string& filename) {
  std::vector<std::pair<Connective, TruthTable>> out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& message) -> void {
    throw Error(filename + ":" + std::to_string(lineno) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name) || name.front() == '#') continue;
    if (!std::isalpha(static_cast<unsigned char>(name.front())) &&
        name.front() != '_') {
      fail("connective name must be an identifier, got '" + name + "'");
    }
    long arity = -1;
    std::string bits;
    if (!(fields >> arity >> bits) || arity < 0) {
      fail("expected 'name arity bitstring'");
    }
    std::string extra;
    if (fields >> extra) fail("trailing field '" + extra + "'");
    try {
      out.emplace_back(Connective{name, static_cast<unsigned>(arity)},
                       TruthTable::from_bits(static_cast<unsigned>(arity), bits));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return out;
}

std::vector<std::pair<Connective, TruthTable>> load_connectives_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open connective file '" + path + "'");
  return load_connectives(in, path);
}

}  // namespace fibring
