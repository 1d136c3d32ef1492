#include "fibring/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace fibring {

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t value) {
  // boost::hash_combine flavor
  return seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::initializer_list<Connective> conns) {
  for (const auto& c : conns) add(c);
}

void Signature::add(const Connective& conn) {
  auto [it, inserted] = conns_.emplace(conn.name, conn);
  if (!inserted && it->second.arity != conn.arity) {
    throw Error("connective '" + conn.name + "' redeclared with arity " +
                std::to_string(conn.arity) + " (was " +
                std::to_string(it->second.arity) + ")");
  }
}

const Connective* Signature::find(std::string_view name) const {
  auto it = conns_.find(name);
  return it == conns_.end() ? nullptr : &it->second;
}

bool Signature::contains(const Connective& conn) const {
  const Connective* found = find(conn.name);
  return found != nullptr && found->arity == conn.arity;
}

bool Signature::disjoint_with(const Signature& other) const {
  for (const auto& [name, conn] : conns_) {
    if (other.contains(name)) return false;
  }
  return true;
}

Signature Signature::merged(const Signature& a, const Signature& b) {
  Signature out = a;
  for (const auto& [name, conn] : b) out.add(conn);
  return out;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::variable;
  node->name = std::move(name);
  node->hash = hash_mix(0x56, std::hash<std::string>{}(node->name));
  return Formula(std::move(node));
}

Formula Formula::skeletal(Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::skeletal;
  node->args.push_back(std::move(body));
  node->hash = hash_mix(0x5b, node->args.front().hash());
  return Formula(std::move(node));
}

Formula Formula::application(Connective conn, std::vector<Formula> args) {
  if (args.size() != conn.arity) {
    throw Error("connective '" + conn.name + "' expects " +
                std::to_string(conn.arity) + " arguments, got " +
                std::to_string(args.size()));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::application;
  node->conn = std::move(conn);
  node->args = std::move(args);
  std::size_t h = hash_mix(0xa9, std::hash<std::string>{}(node->conn.name));
  std::uint32_t size = 1;
  std::uint32_t depth = 0;
  for (const Formula& arg : node->args) {
    h = hash_mix(h, arg.hash());
    size += static_cast<std::uint32_t>(arg.size());
    depth = std::max(depth, arg.depth());
  }
  node->hash = h;
  node->size = size;
  node->depth = depth + 1;
  return Formula(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::variable:
      return a.name() == b.name();
    case Formula::Kind::skeletal:
      return a.body() == b.body();
    case Formula::Kind::application: {
      if (a.head() != b.head()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (a.args()[i] != b.args()[i]) return false;
      }
      return true;
    }
  }
  return false;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  }
  switch (a.kind()) {
    case Kind::variable:
      return a.name().compare(b.name());
    case Kind::skeletal:
      return compare(a.body(), b.body());
    case Kind::application: {
      if (int c = a.head().name.compare(b.head().name); c != 0) return c;
      if (a.args().size() != b.args().size()) {
        return a.args().size() < b.args().size() ? -1 : 1;
      }
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(
    std::initializer_list<std::pair<std::string, Formula>> items) {
  for (auto& [var, image] : items) map_.insert_or_assign(var, image);
}

void Substitution::set(std::string var, Formula image) {
  map_.insert_or_assign(std::move(var), std::move(image));
}

const Formula* Substitution::find(std::string_view var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

Formula apply_substitution(const Substitution& s, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::variable: {
      const Formula* image = s.find(f.name());
      return image != nullptr ? *image : f;
    }
    case Formula::Kind::skeletal:
      return f;  // opaque atom
    case Formula::Kind::application: {
      std::vector<Formula> args;
      args.reserve(f.args().size());
      for (const Formula& arg : f.args()) {
        args.push_back(apply_substitution(s, arg));
      }
      return Formula::application(f.head(), std::move(args));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature& sig,
                std::size_t pos = 0)
      : text_(text), sig_(sig), pos_(pos) {}

  // Prefix parsing is used inside larger grammars (rule bindings,
  // derivation files), where a later "(" can belong to the host syntax;
  // there an argument list must follow its connective immediately.
  Formula parse_prefix(std::size_t& pos) {
    adjacent_parens_ = true;
    Formula f = parse_formula();
    pos = pos_;
    return f;
  }

  Formula parse_single() {
    Formula f = parse_formula();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after formula", pos_);
    }
    return f;
  }

  FormulaSet parse_list() {
    FormulaSet out;
    skip_ws();
    if (pos_ == text_.size()) return out;
    out.insert(parse_formula());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      out.insert(parse_formula());
      skip_ws();
    }
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after formula list", pos_);
    }
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Formula parse_formula() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected formula", pos_);
    if (!ident_start(text_[pos_])) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'",
                       pos_);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string ident(text_.substr(start, pos_ - start));
    const Connective* conn = sig_.find(ident);

    if (!adjacent_parens_) skip_ws();
    bool has_parens = pos_ < text_.size() && text_[pos_] == '(';
    if (!has_parens) {
      if (conn == nullptr) return Formula::variable(std::move(ident));
      if (conn->arity != 0) {
        throw ParseError("connective '" + ident + "' expects " +
                             std::to_string(conn->arity) + " arguments, got 0",
                         start);
      }
      return Formula::application(*conn, {});
    }

    ++pos_;  // '('
    std::vector<Formula> args;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      ++pos_;
    } else {
      args.push_back(parse_formula());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(parse_formula());
        skip_ws();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw ParseError("expected ',' or ')'", pos_);
      }
      ++pos_;
    }

    if (conn == nullptr) {
      throw ParseError("unknown connective '" + ident + "'", start);
    }
    if (args.size() != conn->arity) {
      throw ParseError("connective '" + ident + "' expects " +
                           std::to_string(conn->arity) + " arguments, got " +
                           std::to_string(args.size()),
                       start);
    }
    return Formula::application(*conn, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  bool adjacent_parens_ = false;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return FormulaParser(text, sig).parse_single();
}

FormulaSet parse_formula_list(std::string_view text, const Signature& sig) {
  return FormulaParser(text, sig).parse_list();
}

Formula parse_formula_prefix(std::string_view text, const Signature& sig,
                             std::size_t& pos) {
  return FormulaParser(text, sig, pos).parse_prefix(pos);
}

std::string render_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::variable:
      return f.name();
    case Formula::Kind::skeletal:
      return "x[" + render_formula(f.body()) + "]";
    case Formula::Kind::application: {
      std::string out = f.head().name;
      out += '(';
      bool first = true;
      for (const Formula& arg : f.args()) {
        if (!first) out += ", ";
        first = false;
        out += render_formula(arg);
      }
      out += ')';
      return out;
    }
  }
  return {};
}

std::string render_formula_set(const FormulaSet& fs) {
  std::string out;
  bool first = true;
  for (const Formula& f : fs) {
    if (!first) out += ", ";
    first = false;
    out += render_formula(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void collect(const Formula& f, FormulaSet& subs, std::set<std::string>& vars) {
  subs.insert(f);
  switch (f.kind()) {
    case Formula::Kind::variable:
      vars.insert(f.name());
      break;
    case Formula::Kind::skeletal:
      break;  // opaque: neither its body nor the body's variables count
    case Formula::Kind::application:
      for (const Formula& arg : f.args()) collect(arg, subs, vars);
      break;
  }
}

}  // namespace

Analysis analyze(const Formula& f) {
  Analysis out;
  if (f.is_application()) out.head = f.head();
  collect(f, out.subformulas, out.variables);
  return out;
}

FormulaSet subformulas(const Formula& f) {
  FormulaSet subs;
  std::set<std::string> vars;
  collect(f, subs, vars);
  return subs;
}

FormulaSet subformulas(const FormulaSet& fs) {
  FormulaSet subs;
  std::set<std::string> vars;
  for (const Formula& f : fs) collect(f, subs, vars);
  return subs;
}

namespace {

void monoliths_into(const Signature& sig, const Formula& f, FormulaSet& out) {
  if (f.is_atom()) return;
  if (sig.contains(f.head())) {
    for (const Formula& arg : f.args()) monoliths_into(sig, arg, out);
  } else {
    out.insert(f);
  }
}

}  // namespace

FormulaSet monoliths(const Signature& sig, const Formula& f) {
  FormulaSet out;
  monoliths_into(sig, f, out);
  return out;
}

FormulaSet monoliths(const Signature& sig, const FormulaSet& fs) {
  FormulaSet out;
  for (const Formula& f : fs) monoliths_into(sig, f, out);
  return out;
}

Formula skeleton(const Signature& sig, const Formula& f) {
  if (f.is_atom()) return f;
  if (!sig.contains(f.head())) return Formula::skeletal(f);
  std::vector<Formula> args;
  args.reserve(f.args().size());
  for (const Formula& arg : f.args()) args.push_back(skeleton(sig, arg));
  return Formula::application(f.head(), std::move(args));
}

FormulaSet skeleton(const Signature& sig, const FormulaSet& fs) {
  FormulaSet out;
  for (const Formula& f : fs) out.insert(skeleton(sig, f));
  return out;
}

}  // namespace fibring
