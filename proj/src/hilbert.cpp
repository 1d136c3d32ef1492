#include "fibring/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace fibring {

namespace {

void collect_connectives(const Formula& f, Signature& out) {
  if (!f.is_application()) return;
  out.add(f.head());
  for (const Formula& arg : f.args()) collect_connectives(arg, out);
}

void require_within(const Formula& f, const Signature& sig,
                    const std::string& rule_id) {
  if (f.is_application()) {
    if (!sig.contains(f.head())) {
      throw Error("rule '" + rule_id + "' uses connective '" + f.head().name +
                  "' outside the calculus signature");
    }
    for (const Formula& arg : f.args()) require_within(arg, sig, rule_id);
  }
}

}  // namespace

HilbertCalculus::HilbertCalculus(Signature sig, std::vector<InferenceRule> rules)
    : sig_(std::move(sig)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = i + 1; j < rules_.size(); ++j) {
      if (rules_[i].id == rules_[j].id) {
        throw Error("duplicate rule id '" + rules_[i].id + "'");
      }
    }
    for (const Formula& p : rules_[i].premises) {
      require_within(p, sig_, rules_[i].id);
    }
    require_within(rules_[i].conclusion, sig_, rules_[i].id);
  }
}

const InferenceRule* HilbertCalculus::rule(std::string_view id) const {
  for (const InferenceRule& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Builtin calculi

HilbertCalculus builtin_calculus(std::string_view name) {
  struct Entry {
    std::string_view name;
    Connective conn;
    std::string_view rules;
  };
  static const Entry entries[] = {
      {"top", {"top", 0}, "t1 : / top()\n"},
      {"bot", {"bot", 0}, "b1 : bot() / p\n"},
      {"neg",
       {"neg", 1},
       "n1 : p / neg(neg(p))\n"
       "n2 : neg(neg(p)) / p\n"
       "n3 : p ; neg(p) / q\n"},
      {"and",
       {"and", 2},
       "c1 : and(p, q) / p\n"
       "c2 : and(p, q) / q\n"
       "c3 : p ; q / and(p, q)\n"},
      {"or",
       {"or", 2},
       "d1 : p / or(p, q)\n"
       "d2 : or(p, p) / p\n"
       "d3 : or(p, q) / or(q, p)\n"
       "d4 : or(p, or(q, r)) / or(or(p, q), r)\n"},
      {"imp",
       {"imp", 2},
       "i1 : / imp(p, imp(q, p))\n"
       "i2 : / imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r)))\n"
       "i3 : / imp(imp(imp(p, q), p), p)\n"
       "i4 : p ; imp(p, q) / q\n"},
      {"eq",
       {"eq", 2},
       "e1 : / eq(eq(p, eq(q, r)), eq(eq(p, q), r))\n"
       "e2 : / eq(eq(eq(p, r), eq(q, p)), eq(r, q))\n"
       "e3 : p ; eq(p, q) / q\n"},
  };
  for (const Entry& e : entries) {
    if (e.name != name) continue;
    Signature sig{e.conn};
    std::istringstream in{std::string(e.rules)};
    return HilbertCalculus(sig, load_rules(in, sig, "<builtin>"));
  }
  throw Error("no builtin calculus named '" + std::string(name) + "'");
}

HilbertCalculus merge_calculi(const HilbertCalculus& a,
                              const HilbertCalculus& b) {
  if (!a.signature().disjoint_with(b.signature())) {
    throw PreconditionError("calculi share connective names");
  }
  std::vector<InferenceRule> rules = a.rules();
  rules.insert(rules.end(), b.rules().begin(), b.rules().end());
  return HilbertCalculus(Signature::merged(a.signature(), b.signature()),
                         std::move(rules));
}

// ---------------------------------------------------------------------------
// Derivation checking

namespace {

bool multiset_equal(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  auto less = [](const Formula& x, const Formula& y) { return x < y; };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

bool check_node(const HilbertCalculus& h, const FormulaSet& hypotheses,
                const DerivationTree& node, const std::string& path) {
  if (!node.rule) {
    return hypotheses.count(node.formula) > 0;
  }
  const auto& app = *node.rule;
  const InferenceRule* rule = h.rule(app.rule_id);
  if (rule == nullptr) {
    throw Error("unknown rule '" + app.rule_id + "' at node " + path);
  }
  if (apply_substitution(app.subst, rule->conclusion) != node.formula) {
    return false;
  }
  std::vector<Formula> expected;
  expected.reserve(rule->premises.size());
  for (const Formula& p : rule->premises) {
    expected.push_back(apply_substitution(app.subst, p));
  }
  std::vector<Formula> actual;
  actual.reserve(app.children.size());
  for (const DerivationTree& child : app.children) {
    actual.push_back(child.formula);
  }
  if (!multiset_equal(std::move(expected), std::move(actual))) return false;
  for (std::size_t i = 0; i < app.children.size(); ++i) {
    if (!check_node(h, hypotheses, app.children[i],
                    path + "." + std::to_string(i + 1))) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool check_derivation(const HilbertCalculus& h, const FormulaSet& hypotheses,
                      const Formula& goal, const DerivationTree& tree) {
  if (tree.formula != goal) return false;
  return check_node(h, hypotheses, tree, "root");
}

// ---------------------------------------------------------------------------
// Bounded forward chaining

namespace {

// One-way pattern match of a rule schema against a concrete formula.
bool match(const Formula& pattern, const Formula& target,
           std::map<std::string, Formula>& binding) {
  switch (pattern.kind()) {
    case Formula::Kind::variable: {
      auto [it, inserted] = binding.emplace(pattern.name(), target);
      return inserted || it->second == target;
    }
    case Formula::Kind::skeletal:
      return pattern == target;
    case Formula::Kind::application: {
      if (!target.is_application() || pattern.head() != target.head()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.args().size(); ++i) {
        if (!match(pattern.args()[i], target.args()[i], binding)) return false;
      }
      return true;
    }
  }
  return false;
}

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.is_variable()) {
    out.insert(f.name());
  } else if (f.is_application()) {
    for (const Formula& arg : f.args()) collect_variables(arg, out);
  }
}

Substitution to_substitution(const std::map<std::string, Formula>& binding) {
  Substitution s;
  for (const auto& [var, image] : binding) s.set(var, image);
  return s;
}

struct Justification {
  std::string rule_id;
  Substitution subst;
  std::vector<Formula> premise_instances;
};

// Every way of instantiating `rule` with premises drawn from `derived` and
// any leftover schema variables drawn from `domain`.
void instantiations(const InferenceRule& rule,
                    const std::vector<Formula>& derived,
                    const std::vector<Formula>& domain,
                    std::vector<std::map<std::string, Formula>>& out) {
  std::set<std::string> rule_vars;
  for (const Formula& p : rule.premises) collect_variables(p, rule_vars);
  collect_variables(rule.conclusion, rule_vars);

  std::vector<std::map<std::string, Formula>> partial{{}};
  for (const Formula& premise : rule.premises) {
    std::vector<std::map<std::string, Formula>> next;
    for (const auto& binding : partial) {
      for (const Formula& candidate : derived) {
        std::map<std::string, Formula> extended = binding;
        if (match(premise, candidate, extended)) {
          next.push_back(std::move(extended));
        }
      }
    }
    partial = std::move(next);
    if (partial.empty()) return;
  }

  // Extend over schema variables not pinned down by the premises.
  for (const std::string& var : rule_vars) {
    std::vector<std::map<std::string, Formula>> next;
    for (const auto& binding : partial) {
      if (binding.count(var)) {
        next.push_back(binding);
        continue;
      }
      for (const Formula& image : domain) {
        auto extended = binding;
        extended.emplace(var, image);
        next.push_back(std::move(extended));
      }
    }
    partial = std::move(next);
  }
  out.insert(out.end(), std::make_move_iterator(partial.begin()),
             std::make_move_iterator(partial.end()));
}

DerivationTree build_tree(
    const Formula& f,
    const std::map<Formula, std::optional<Justification>>& table) {
  const std::optional<Justification>& just = table.at(f);
  if (!just) return DerivationTree::hypothesis(f);
  std::vector<DerivationTree> children;
  children.reserve(just->premise_instances.size());
  for (const Formula& premise : just->premise_instances) {
    children.push_back(build_tree(premise, table));
  }
  return DerivationTree::by_rule(f, just->rule_id, just->subst,
                                 std::move(children));
}

}  // namespace

std::optional<DerivationTree> bounded_derive(const HilbertCalculus& h,
                                             const FormulaSet& hypotheses,
                                             const Formula& goal,
                                             std::size_t size_bound) {
  if (size_bound < 1) throw PreconditionError("size bound must be >= 1");

  std::map<Formula, std::optional<Justification>> derived;
  for (const Formula& f : hypotheses) derived.emplace(f, std::nullopt);

  FormulaSet domain = subformulas(hypotheses);
  for (const Formula& sub : subformulas(goal)) domain.insert(sub);
  for (const auto& [f, just] : derived) {
    for (const Formula& sub : subformulas(f)) domain.insert(sub);
  }

  bool progress = true;
  while (progress && derived.find(goal) == derived.end()) {
    progress = false;
    const std::vector<Formula> derived_now = [&] {
      std::vector<Formula> fs;
      fs.reserve(derived.size());
      for (const auto& [f, just] : derived) fs.push_back(f);
      return fs;
    }();
    const std::vector<Formula> domain_now(domain.begin(), domain.end());

    for (const InferenceRule& rule : h.rules()) {
      std::vector<std::map<std::string, Formula>> bindings;
      instantiations(rule, derived_now, domain_now, bindings);
      for (const auto& binding : bindings) {
        const Substitution subst = to_substitution(binding);
        Formula conclusion = apply_substitution(subst, rule.conclusion);
        if (conclusion.size() > size_bound) continue;
        if (derived.find(conclusion) != derived.end()) continue;
        Justification just{rule.id, subst, {}};
        just.premise_instances.reserve(rule.premises.size());
        for (const Formula& p : rule.premises) {
          just.premise_instances.push_back(apply_substitution(subst, p));
        }
        for (const Formula& sub : subformulas(conclusion)) domain.insert(sub);
        derived.emplace(std::move(conclusion), std::move(just));
        progress = true;
      }
      if (derived.find(goal) != derived.end()) break;
    }
  }

  if (derived.find(goal) == derived.end()) return std::nullopt;
  return build_tree(goal, derived);
}

// ---------------------------------------------------------------------------
// Rule files

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

std::vector<InferenceRule> load_rules(std::istream& in, const Signature& sig,
                                      const std::string& filename) {
  std::vector<InferenceRule> out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& message) -> void {
    throw Error(filename + ":" + std::to_string(lineno) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) fail("expected 'id : ... / ...'");
    const std::size_t slash = text.find('/', colon);
    if (slash == std::string_view::npos) fail("missing '/' before conclusion");

    std::string id{trim(text.substr(0, colon))};
    if (!is_identifier(id)) fail("rule id '" + id + "' is not an identifier");

    std::vector<Formula> premises;
    std::string_view premise_text = trim(text.substr(colon + 1, slash - colon - 1));
    try {
      if (!premise_text.empty()) {
        std::size_t start = 0;
        while (true) {
          std::size_t sep = premise_text.find(';', start);
          std::string_view piece = premise_text.substr(
              start, sep == std::string_view::npos ? sep : sep - start);
          premises.push_back(parse_formula(trim(piece), sig));
          if (sep == std::string_view::npos) break;
          start = sep + 1;
        }
      }
      Formula conclusion = parse_formula(trim(text.substr(slash + 1)), sig);
      out.push_back(InferenceRule{std::move(id), std::move(premises),
                                  std::move(conclusion)});
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return out;
}

HilbertCalculus load_calculus_file(const std::string& path,
                                   const Signature& ambient) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule file '" + path + "'");
  std::vector<InferenceRule> rules = load_rules(in, ambient, path);
  Signature used;
  for (const InferenceRule& rule : rules) {
    for (const Formula& p : rule.premises) collect_connectives(p, used);
    collect_connectives(rule.conclusion, used);
  }
  return HilbertCalculus(std::move(used), std::move(rules));
}

// ---------------------------------------------------------------------------
// Derivation files

namespace {

class DerivationParser {
 public:
  DerivationParser(std::string_view text, const Signature& sig)
      : text_(text), sig_(sig) {}

  DerivationTree parse() {
    DerivationTree tree = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after derivation", pos_);
    }
    return tree;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string read_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected identifier", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  DerivationTree parse_tree() {
    expect('(');
    if (std::string kw = read_ident(); kw != "step") {
      throw ParseError("expected 'step', got '" + kw + "'", pos_);
    }
    skip_ws();
    Formula formula = parse_formula_prefix(text_, sig_, pos_);

    expect('(');
    std::string kind = read_ident();
    std::optional<DerivationTree::RuleApplication> rule;
    if (kind == "hyp") {
      expect(')');
    } else if (kind == "rule") {
      DerivationTree::RuleApplication app;
      app.rule_id = read_ident();
      while (!peek(')')) {
        std::string var = read_ident();
        expect('=');
        skip_ws();
        Formula image = parse_formula_prefix(text_, sig_, pos_);
        app.subst.set(std::move(var), std::move(image));
      }
      expect(')');
      rule = std::move(app);
    } else {
      throw ParseError("expected 'hyp' or 'rule', got '" + kind + "'", pos_);
    }

    std::vector<DerivationTree> children;
    while (peek('(')) children.push_back(parse_tree());
    expect(')');

    if (!rule) {
      if (!children.empty()) {
        throw ParseError("hypothesis step cannot have children", pos_);
      }
      return DerivationTree::hypothesis(std::move(formula));
    }
    rule->children = std::move(children);
    return DerivationTree{std::move(formula), std::move(rule)};
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

void render_node(const DerivationTree& node, std::string& out, unsigned indent) {
  out.append(indent, ' ');
  out += "(step ";
  out += render_formula(node.formula);
  if (!node.rule) {
    out += " (hyp))";
    return;
  }
  out += " (rule ";
  out += node.rule->rule_id;
  for (const auto& [var, image] : node.rule->subst) {
    out += ' ';
    out += var;
    out += '=';
    out += render_formula(image);
  }
  out += ')';
  for (const DerivationTree& child : node.rule->children) {
    out += '\n';
    render_node(child, out, indent + 2);
  }
  out += ')';
}

}  // namespace

DerivationTree parse_derivation(std::string_view text, const Signature& sig) {
  return DerivationParser(text, sig).parse();
}

std::string render_derivation(const DerivationTree& tree) {
  std::string out;
  render_node(tree, out, 0);
  return out;
}

}  // namespace fibring
