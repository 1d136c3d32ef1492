#pragma once

// Hilbert calculi: schematic inference rules, derivation checking and
// bounded forward-chaining proof search.
//
// Rule formulas are schemata: every variable occurring in them is a
// pattern slot, instantiated by a substitution at application time.
// Derivations may use formulas over any extension of the calculus
// signature; the rules themselves must stay inside it.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibring/syntax.hpp"

namespace fibring {

struct InferenceRule {
  std::string id;
  std::vector<Formula> premises;  // empty marks an axiom
  Formula conclusion;

  bool is_axiom() const { return premises.empty(); }
};

class HilbertCalculus {
 public:
  // Requires distinct rule ids and rule formulas inside `sig`.
  HilbertCalculus(Signature sig, std::vector<InferenceRule> rules);

  const Signature& signature() const { return sig_; }
  const std::vector<InferenceRule>& rules() const { return rules_; }
  const InferenceRule* rule(std::string_view id) const;

 private:
  Signature sig_;
  std::vector<InferenceRule> rules_;
};

// The rule sets for the classical connectives handled natively:
// name in {top, bot, neg, and, or, imp, eq}.
HilbertCalculus builtin_calculus(std::string_view name);

// Union presentation over the union signature; signatures must be disjoint
// and rule ids must not clash.
HilbertCalculus merge_calculi(const HilbertCalculus& a,
                              const HilbertCalculus& b);

struct DerivationTree {
  struct RuleApplication {
    std::string rule_id;
    Substitution subst;
    std::vector<DerivationTree> children;
  };

  Formula formula;
  // Absent for a hypothesis leaf; an axiom instance is a rule application
  // with no children.
  std::optional<RuleApplication> rule;

  static DerivationTree hypothesis(Formula f) {
    return DerivationTree{std::move(f), std::nullopt};
  }
  static DerivationTree by_rule(Formula f, std::string rule_id,
                                Substitution subst,
                                std::vector<DerivationTree> children) {
    return DerivationTree{
        std::move(f),
        RuleApplication{std::move(rule_id), std::move(subst),
                        std::move(children)}};
  }
};

// True iff the tree roots at `goal`, every hypothesis leaf is in
// `hypotheses`, and at every rule node the instantiated premises match the
// children's roots as a multiset and the instantiated conclusion matches
// the node.  An unknown rule id is an Error carrying the node path.
bool check_derivation(const HilbertCalculus& h, const FormulaSet& hypotheses,
                      const Formula& goal, const DerivationTree& tree);

// Forward chaining from the hypotheses, instantiating rules over the
// growing subformula closure of hypotheses, goal and derived formulas, and
// discarding conclusions larger than `size_bound` nodes.  Sound but not
// complete; any returned tree passes check_derivation.
std::optional<DerivationTree> bounded_derive(const HilbertCalculus& h,
                                             const FormulaSet& hypotheses,
                                             const Formula& goal,
                                             std::size_t size_bound);

// --- rule files -------------------------------------------------------------
//
// One rule per line:
//   id : premise (";" premise)* "/" conclusion
//   id : "/" conclusion
// Blank lines and lines starting with '#' are skipped.

std::vector<InferenceRule> load_rules(std::istream& in, const Signature& sig,
                                      const std::string& filename);

// Loads rules against `ambient` (used to recognize connectives) and infers
// the calculus signature from the connectives the rules actually use.
HilbertCalculus load_calculus_file(const std::string& path,
                                   const Signature& ambient);

// --- derivation files --------------------------------------------------------
//
//   tree    := "(" "step" formula just tree* ")"
//   just    := "(" "hyp" ")" | "(" "rule" id (ident "=" formula)* ")"

DerivationTree parse_derivation(std::string_view text, const Signature& sig);
std::string render_derivation(const DerivationTree& tree);

}  // namespace fibring
