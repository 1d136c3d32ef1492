#pragma once

// Propositional languages over finite signatures.
//
// A Formula is an immutable tree and is one of:
//
//   - a sentential variable,
//   - a skeletal variable: an opaque atom wrapping a foreign-headed
//     subformula, produced by skeleton() and treated as a plain variable
//     by evaluation and substitution, or
//   - a connective application.
//
// Subtrees are shared; equality, hashing and ordering are structural.
// Two occurrences of the same foreign subformula map to the same
// skeletal variable, which is what makes skeletons usable as inputs to
// truth-table queries.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fibring/errors.hpp"

namespace fibring {

// A named k-place connective, k >= 0.
struct Connective {
  std::string name;
  unsigned arity = 0;

  friend bool operator==(const Connective&, const Connective&) = default;
  friend auto operator<=>(const Connective&, const Connective&) = default;
};

// A finite set of connectives with pairwise distinct names.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Connective> conns);

  // Throws Error if a different connective with the same name is present.
  // Re-adding an identical connective is a no-op.
  void add(const Connective& conn);

  const Connective* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  bool contains(const Connective& conn) const;

  std::size_t size() const { return conns_.size(); }
  bool empty() const { return conns_.empty(); }

  bool disjoint_with(const Signature& other) const;

  // Union of two signatures; throws Error on conflicting arities.
  static Signature merged(const Signature& a, const Signature& b);

  auto begin() const { return conns_.begin(); }
  auto end() const { return conns_.end(); }

 private:
  std::map<std::string, Connective, std::less<>> conns_;
};

class Formula {
 public:
  enum class Kind : std::uint8_t { variable, skeletal, application };

  static Formula variable(std::string name);
  static Formula skeletal(Formula body);
  // Throws Error when the argument count differs from conn.arity.
  static Formula application(Connective conn, std::vector<Formula> args);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::variable; }
  bool is_skeletal() const { return kind() == Kind::skeletal; }
  bool is_application() const { return kind() == Kind::application; }
  bool is_atom() const { return !is_application(); }

  // Valid for variables only.
  const std::string& name() const { return node_->name; }
  // Valid for skeletal variables only.
  const Formula& body() const { return node_->args.front(); }
  // Valid for applications only.
  const Connective& head() const { return node_->conn; }
  const std::vector<Formula>& args() const { return node_->args; }

  // Number of nodes, counting atoms (including skeletal variables) as 1.
  std::size_t size() const { return node_->size; }
  // Height of the tree; atoms have depth 1, so depth(f(p, q)) == 2.
  unsigned depth() const { return node_->depth; }

  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  // Structural total order: negative / zero / positive.
  static int compare(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;           // variable name
    Connective conn;            // application head
    std::vector<Formula> args;  // application args; skeletal body at [0]
    std::size_t hash = 0;
    std::uint32_t size = 1;
    std::uint32_t depth = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

// A finite map from variable names to formulas; unmapped variables act as
// the identity.  Skeletal variables are never mapped.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<std::string, Formula>> items);

  void set(std::string var, Formula image);
  const Formula* find(std::string_view var) const;
  bool empty() const { return map_.empty(); }

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::map<std::string, Formula, std::less<>> map_;
};

// Grammar:  formula := IDENT | IDENT "(" formula ("," formula)* ")" | IDENT "()"
// IDENT matches [A-Za-z_][A-Za-z0-9_]*; whitespace is insignificant.  An
// IDENT is an application iff it is declared in `sig`, otherwise it is a
// variable.  Throws ParseError (syntax), Error (unknown connective /
// arity mismatch; both reported with their position).
Formula parse_formula(std::string_view text, const Signature& sig);

// Comma-separated list of formulas; an all-whitespace string is empty.
FormulaSet parse_formula_list(std::string_view text, const Signature& sig);

// Parses one formula starting at text[pos] and advances pos past it;
// used by parsers that embed formulas in a larger syntax.
Formula parse_formula_prefix(std::string_view text, const Signature& sig,
                             std::size_t& pos);

// Inverse of parse_formula on skeletal-free formulas.  Skeletal variables
// render as "x[" + body + "]" and do not re-parse.
std::string render_formula(const Formula& f);
std::string render_formula_set(const FormulaSet& fs);

struct Analysis {
  std::optional<Connective> head;     // absent iff the formula is an atom
  FormulaSet subformulas;             // includes the formula itself
  std::set<std::string> variables;    // ordinary variables only
};
Analysis analyze(const Formula& f);

// Subformula closure (every formula is a subformula of itself).
FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(const FormulaSet& fs);

Formula apply_substitution(const Substitution& s, const Formula& f);

// Largest subformulas whose head lies outside `sig`.  Atoms contribute
// nothing; an application recurses through arguments while its head stays
// inside `sig` and is captured whole otherwise.
FormulaSet monoliths(const Signature& sig, const Formula& f);
FormulaSet monoliths(const Signature& sig, const FormulaSet& fs);

// Replaces every monolith by the skeletal variable indexed by it.  The
// result uses only connectives of `sig` above its atoms, and is a fixed
// point of the transform.
Formula skeleton(const Signature& sig, const Formula& f);
FormulaSet skeleton(const Signature& sig, const FormulaSet& fs);

}  // namespace fibring
