/*
 * Copyright 2026 The recomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Lexer and recursive-descent parser for the specification format.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "recomp/errors.hpp"
#include "recomp/lang/analysis.hpp"
#include "recomp/lang/syntax.hpp"

namespace recomp::lang {
namespace {

enum class TokType { kEnd, kIdent, kNumber, kString, kOp };

struct Token {
  TokType type = TokType::kEnd;
  std::string text;
  int line = 1;
  int col = 1;
  bool line_start = false;
};

const std::set<std::string, std::less<>> kSectionKeywords = {
    "MODULE", "CONSTANTS", "CONSTANT", "VARIABLES", "VARIABLE", "CONFIG", "INIT", "ACTION", "NEXT", "PROPERTY"};

const std::set<std::string, std::less<>> kReserved = {
    "MODULE", "CONSTANTS", "CONSTANT", "VARIABLES", "VARIABLE", "CONFIG", "INIT", "ACTION", "NEXT", "PROPERTY",
    "UNCHANGED", "EXCEPT", "TRUE", "FALSE", "IF", "THEN", "ELSE", "Cardinality"};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool at_line_start = true;
    for (;;) {
      at_line_start = skip_space(at_line_start);
      Token t;
      t.line = line_;
      t.col = col_;
      t.line_start = at_line_start;
      at_line_start = false;
      if (pos_ >= src_.size()) {
        t.type = TokType::kEnd;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        t.type = TokType::kIdent;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t.type = TokType::kNumber;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '"') {
        advance();
        std::string s;
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') throw ParseError("unterminated string", t.line, t.col);
          char d = src_[pos_];
          advance();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.col);
            d = src_[pos_];
            advance();
            if (d == 'n') d = '\n';
          }
          s.push_back(d);
        }
        t.type = TokType::kString;
        t.text = std::move(s);
      } else {
        t.type = TokType::kOp;
        t.text = lex_operator(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  // Returns whether the next token is the first on its line.
  bool skip_space(bool at_line_start) {
    for (;;) {
      if (pos_ >= src_.size()) return at_line_start;
      char c = src_[pos_];
      if (c == '\n') {
        at_line_start = true;
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (starts_with("\\*")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (starts_with("(*")) {
        int line = line_, col = col_;
        while (pos_ < src_.size() && !starts_with("*)")) advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", line, col);
        advance();
        advance();
      } else {
        return at_line_start;
      }
    }
  }

  std::string lex_operator(const Token& t) {
    static const char* kMulti[] = {"|->", "/\\", "\\/", "==", "=>", "=<", "<=", ">=", "<<", ">>", "..", "/="};
    if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
      std::size_t start = pos_;
      advance();
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance();
      std::string op(src_.substr(start, pos_ - start));
      static const std::set<std::string, std::less<>> kKnown = {"\\in",  "\\notin",     "\\cup", "\\union",
                                                                "\\cap", "\\intersect", "\\X",   "\\A",
                                                                "\\E",   "\\subseteq"};
      if (!kKnown.contains(op)) throw ParseError("unknown operator '" + op + "'", t.line, t.col);
      return op;
    }
    for (const char* m : kMulti) {
      if (starts_with(m)) {
        for (std::size_t i = 0; m[i]; ++i) advance();
        return m;
      }
    }
    static const std::string_view kSingle = "()[]{},:~=#<>+-.!'\\";
    char c = src_[pos_];
    if (kSingle.find(c) == std::string_view::npos) {
      throw ParseError(fmt::format("unexpected character '{}'", c), t.line, t.col);
    }
    advance();
    return std::string(1, c);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const SpecAst* scope) : toks_(std::move(toks)), scope_(scope) {}

  SpecAst parse_spec() {
    SpecAst spec;
    scope_ = &spec;
    expect_ident("MODULE");
    spec.name = take_name("module name");
    // Component specs are named after their variables, e.g. tmState+tmPrepared.
    while (is_op("+")) {
      take();
      spec.name += "+" + take_name("module name");
    }
    bool seen_init = false;
    bool seen_next = false;
    std::vector<std::pair<std::string, ExprPtr>> next_disjuncts;
    Token next_tok;
    while (peek().type != TokType::kEnd) {
      const Token& t = peek();
      if (t.type != TokType::kIdent || !kSectionKeywords.contains(t.text)) fail("expected a section keyword", t);
      std::string kw = take().text;
      if (kw == "CONSTANTS" || kw == "CONSTANT") {
        for (auto& n : parse_name_list()) declare(spec, n, spec.constants);
      } else if (kw == "VARIABLES" || kw == "VARIABLE") {
        for (auto& n : parse_name_list()) declare(spec, n, spec.variables);
      } else if (kw == "CONFIG") {
        allow_vars_ = false;
        while (peek().type == TokType::kIdent && !kSectionKeywords.contains(peek().text)) {
          Token nt = peek();
          std::string n = take_name("constant");
          if (std::find(spec.constants.begin(), spec.constants.end(), n) == spec.constants.end()) {
            fail("CONFIG binds undeclared constant '" + n + "'", nt);
          }
          expect_op("=");
          spec.config[n] = parse_expr();
        }
        allow_vars_ = true;
      } else if (kw == "INIT") {
        if (seen_init) fail("duplicate INIT section", t);
        seen_init = true;
        Token at = peek();
        if (at.type == TokType::kEnd || (at.type == TokType::kIdent && kSectionKeywords.contains(at.text))) {
          fail("INIT must have at least one conjunct", at);
        }
        spec.init = parse_conjunct_list();
        check_init(spec, at);
      } else if (kw == "ACTION") {
        spec.actions.push_back(parse_action(spec));
      } else if (kw == "NEXT") {
        if (seen_next) fail("duplicate NEXT section", t);
        seen_next = true;
        next_tok = t;
        parse_next(spec, next_disjuncts);
      } else if (kw == "PROPERTY") {
        Token nt = peek();
        std::string n = take_name("property name");
        expect_op("==");
        allow_primes_ = false;
        PropertyDef p{n, parse_body()};
        if (spec.properties.contains(n)) fail("duplicate property '" + n + "'", nt);
        spec.properties.emplace(n, std::move(p));
      } else {
        fail("unexpected " + kw, t);
      }
    }
    if (!spec.variables.empty() && spec.init.empty()) {
      throw ParseError("INIT must have at least one conjunct", peek().line, peek().col);
    }
    for (const auto& c : spec.constants) {
      if (!spec.config.contains(c)) {
        throw ParseError("constant '" + c + "' has no CONFIG binding", peek().line, peek().col);
      }
    }
    check_next(spec, seen_next, next_disjuncts, next_tok);
    return spec;
  }

  ExprPtr parse_standalone() {
    ExprPtr e = parse_expr();
    if (peek().type != TokType::kEnd) fail("trailing input after expression", peek());
    return e;
  }

 private:
  // -- token helpers ---------------------------------------------------

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_op(std::string_view op, std::size_t k = 0) const {
    return peek(k).type == TokType::kOp && peek(k).text == op;
  }
  bool is_ident(std::string_view id, std::size_t k = 0) const {
    return peek(k).type == TokType::kIdent && peek(k).text == id;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.line, t.col); }

  void expect_op(std::string_view op) {
    if (!is_op(op)) fail(fmt::format("expected '{}'", op), peek());
    take();
  }
  void expect_ident(std::string_view id) {
    if (!is_ident(id)) fail(fmt::format("expected '{}'", id), peek());
    take();
  }
  std::string take_name(std::string_view what) {
    const Token& t = peek();
    if (t.type != TokType::kIdent || kReserved.contains(t.text)) fail(fmt::format("expected {}", what), t);
    return take().text;
  }

  std::vector<std::string> parse_name_list() {
    std::vector<std::string> names{take_name("identifier")};
    while (is_op(",")) {
      take();
      names.push_back(take_name("identifier"));
    }
    return names;
  }

  void declare(const SpecAst& spec, const std::string& n, std::vector<std::string>& into) {
    bool clash = spec.has_variable(n) ||
                 std::find(spec.constants.begin(), spec.constants.end(), n) != spec.constants.end();
    if (clash) fail("duplicate declaration of '" + n + "'", toks_[pos_ - 1]);
    into.push_back(n);
  }

  // -- sections ----------------------------------------------------------

  ActionDef parse_action(const SpecAst& spec) {
    Token nt = peek();
    ActionDef a;
    a.name = take_name("action name");
    if (spec.find_action(a.name)) fail("duplicate action '" + a.name + "'", nt);
    if (is_op("(")) {
      take();
      a.param = take_name("parameter");
      expect_op(")");
    }
    expect_op("==");
    if (a.param) bound_.push_back(*a.param);
    allow_primes_ = true;
    std::vector<Token> starts;
    a.conjuncts = parse_conjunct_list(&starts);
    allow_primes_ = false;
    if (a.param) bound_.pop_back();
    for (std::size_t i = 0; i < a.conjuncts.size(); ++i) {
      try {
        classify(*a.conjuncts[i]);
      } catch (const SpecError& e) {
        fail(fmt::format("action {}: {}", a.name, e.what()), starts[i]);
      }
    }
    return a;
  }

  void parse_next(SpecAst& spec, std::vector<std::pair<std::string, ExprPtr>>& disjuncts) {
    if (is_op("\\E")) {
      take();
      spec.next_var = take_name("bound variable");
      expect_op("\\in");
      allow_vars_ = false;
      spec.next_domain = parse_expr();
      allow_vars_ = true;
      expect_op(":");
    }
    if (is_op("\\/")) take();
    for (;;) {
      std::string n = take_name("action name");
      ExprPtr arg;
      if (is_op("(")) {
        take();
        arg = make_ident(ExprKind::kBound, take_name("argument"));
        expect_op(")");
      }
      disjuncts.emplace_back(n, arg);
      if (!is_op("\\/")) break;
      take();
    }
  }

  void check_next(const SpecAst& spec, bool seen, const std::vector<std::pair<std::string, ExprPtr>>& disjuncts,
                  const Token& at) {
    if (!seen) {
      if (!spec.actions.empty()) throw ParseError("missing NEXT section", peek().line, peek().col);
      return;
    }
    std::set<std::string> listed;
    for (const auto& [n, arg] : disjuncts) {
      const ActionDef* a = spec.find_action(n);
      if (!a) fail("NEXT references undeclared action '" + n + "'", at);
      if (!listed.insert(n).second) fail("NEXT lists action '" + n + "' twice", at);
      if (a->param.has_value() != static_cast<bool>(arg)) fail("NEXT applies '" + n + "' with wrong arity", at);
      if (arg && arg->text != spec.next_var) fail("NEXT must apply '" + n + "' to the quantified variable", at);
    }
    if (listed.size() != spec.actions.size()) fail("NEXT must list every action exactly once", at);
    bool any_param = std::any_of(spec.actions.begin(), spec.actions.end(), [](const ActionDef& a) { return a.param; });
    if (any_param && !spec.next_domain) fail("parameterized actions require NEXT \\E x \\in D", at);
  }

  void check_init(const SpecAst& spec, const Token& at) {
    std::set<std::string> assigned;
    for (const auto& c : spec.init) {
      if (c->kind != ExprKind::kEq || c->args[0]->kind != ExprKind::kVar || !free_vars(*c->args[1]).empty()) {
        fail("INIT conjuncts must have the form v = e with e over constants", at);
      }
      if (!assigned.insert(c->args[0]->text).second) fail("INIT assigns '" + c->args[0]->text + "' twice", at);
    }
    for (const auto& v : spec.variables) {
      if (!assigned.contains(v)) fail("INIT does not assign variable '" + v + "'", at);
    }
  }

  // A bullet list `/\ e1 /\ e2 ...`; a `/\` that opens a line at bracket
  // depth zero starts the next conjunct.
  std::vector<ExprPtr> parse_conjunct_list(std::vector<Token>* starts = nullptr) {
    std::vector<ExprPtr> out;
    if (!is_op("/\\")) {
      if (starts) starts->push_back(peek());
      ExprPtr e = parse_expr();
      flatten_and(e, out);
      if (starts) starts->resize(out.size(), starts->back());
      return out;
    }
    bool saved = bullets_;
    int saved_depth = depth_;
    bullets_ = true;
    depth_ = 0;
    while (is_op("/\\")) {
      take();
      if (starts) starts->push_back(peek());
      out.push_back(parse_expr());
    }
    bullets_ = saved;
    depth_ = saved_depth;
    return out;
  }

  static void flatten_and(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == ExprKind::kAnd) {
      flatten_and(e->args[0], out);
      flatten_and(e->args[1], out);
    } else {
      out.push_back(e);
    }
  }

  ExprPtr parse_body() {
    if (is_op("/\\")) {
      auto items = parse_conjunct_list();
      ExprPtr e = items[0];
      for (std::size_t i = 1; i < items.size(); ++i) e = make_node(ExprKind::kAnd, {e, items[i]});
      return e;
    }
    return parse_expr();
  }

  // -- expressions -------------------------------------------------------

  bool at_bullet() const { return bullets_ && depth_ == 0 && peek().line_start; }

  ExprPtr parse_expr() {
    if (is_op("\\A") || is_op("\\E")) {
      ExprKind kind = take().text == "\\A" ? ExprKind::kForall : ExprKind::kExists;
      std::vector<std::string> names = parse_name_list();
      expect_op("\\in");
      ExprPtr dom = parse_expr();
      expect_op(":");
      for (auto& n : names) bound_.push_back(n);
      ExprPtr body = parse_expr();
      bound_.resize(bound_.size() - names.size());
      return make_binder(kind, std::move(names), {dom, body});
    }
    if (is_ident("IF")) {
      take();
      ExprPtr c = parse_expr();
      expect_ident("THEN");
      ExprPtr t = parse_expr();
      expect_ident("ELSE");
      ExprPtr e = parse_expr();
      return make_node(ExprKind::kIf, {c, t, e});
    }
    return parse_implies();
  }

  ExprPtr parse_rhs(ExprPtr (Parser::*next)()) {
    if (is_op("\\A") || is_op("\\E") || is_ident("IF")) return parse_expr();
    return (this->*next)();
  }

  ExprPtr parse_implies() {
    ExprPtr lhs = parse_or();
    if (is_op("=>") && !at_bullet()) {
      take();
      return make_node(ExprKind::kImplies, {lhs, parse_rhs(&Parser::parse_implies)});
    }
    return lhs;
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (is_op("\\/") && !at_bullet()) {
      take();
      lhs = make_node(ExprKind::kOr, {lhs, parse_rhs(&Parser::parse_and)});
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_not();
    while (is_op("/\\") && !at_bullet()) {
      take();
      lhs = make_node(ExprKind::kAnd, {lhs, parse_rhs(&Parser::parse_not)});
    }
    return lhs;
  }

  ExprPtr parse_not() {
    if (is_op("~")) {
      take();
      return make_node(ExprKind::kNot, {parse_rhs(&Parser::parse_not)});
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    static const std::map<std::string, ExprKind, std::less<>> kOps = {
        {"=", ExprKind::kEq},        {"#", ExprKind::kNeq},        {"/=", ExprKind::kNeq},
        {"\\in", ExprKind::kIn},     {"\\notin", ExprKind::kNotIn}, {"\\subseteq", ExprKind::kSubseteq},
        {"<", ExprKind::kLt},        {"<=", ExprKind::kLe},        {"=<", ExprKind::kLe},
        {">", ExprKind::kGt},        {">=", ExprKind::kGe}};
    ExprPtr lhs = parse_setop();
    if (peek().type == TokType::kOp) {
      auto it = kOps.find(peek().text);
      if (it != kOps.end()) {
        take();
        return make_node(it->second, {lhs, parse_rhs(&Parser::parse_setop)});
      }
    }
    return lhs;
  }

  ExprPtr parse_setop() {
    ExprPtr lhs = parse_range();
    for (;;) {
      ExprKind k;
      if (is_op("\\cup") || is_op("\\union")) {
        k = ExprKind::kUnion;
      } else if (is_op("\\cap") || is_op("\\intersect")) {
        k = ExprKind::kIntersect;
      } else if (is_op("\\")) {
        k = ExprKind::kDiff;
      } else {
        return lhs;
      }
      take();
      lhs = make_node(k, {lhs, parse_range()});
    }
  }

  ExprPtr parse_range() {
    ExprPtr lhs = parse_additive();
    if (is_op("..")) {
      take();
      return make_node(ExprKind::kRange, {lhs, parse_additive()});
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_cross();
    while (is_op("+") || is_op("-")) {
      ExprKind k = take().text == "+" ? ExprKind::kPlus : ExprKind::kMinus;
      lhs = make_node(k, {lhs, parse_cross()});
    }
    return lhs;
  }

  ExprPtr parse_cross() {
    ExprPtr first = parse_postfix();
    if (!is_op("\\X")) return first;
    std::vector<ExprPtr> parts{first};
    while (is_op("\\X")) {
      take();
      parts.push_back(parse_postfix());
    }
    return make_node(ExprKind::kCross, std::move(parts));
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      if (is_op("[")) {
        take();
        ++depth_;
        ExprPtr idx = parse_expr();
        expect_op("]");
        --depth_;
        e = make_node(ExprKind::kApply, {e, idx});
      } else if (is_op(".") && !is_op("..")) {
        take();
        e = make_field(e, take_name("field name"));
      } else if (is_op("'")) {
        Token t = take();
        if (e->kind != ExprKind::kVar) fail("only state variables may be primed", t);
        if (!allow_primes_) fail("primed variable not allowed here", t);
        e = make_ident(ExprKind::kPrimed, e->text);
      } else {
        return e;
      }
    }
  }

  ExprPtr resolve(const Token& t) {
    const std::string& n = t.text;
    if (std::find(bound_.rbegin(), bound_.rend(), n) != bound_.rend()) return make_ident(ExprKind::kBound, n);
    if (scope_->has_variable(n)) {
      if (!allow_vars_) fail("state variable '" + n + "' not allowed here", t);
      return make_ident(ExprKind::kVar, n);
    }
    if (std::find(scope_->constants.begin(), scope_->constants.end(), n) != scope_->constants.end()) {
      return make_ident(ExprKind::kConst, n);
    }
    fail("undeclared identifier '" + n + "'", t);
  }

  template <typename F>
  std::vector<ExprPtr> comma_list(std::string_view close, F item) {
    std::vector<ExprPtr> out;
    if (is_op(close)) return out;
    out.push_back(item());
    while (is_op(",")) {
      take();
      out.push_back(item());
    }
    return out;
  }

  ExprPtr parse_primary() {
    Token t = peek();
    if (t.type == TokType::kNumber) {
      take();
      return make_int(std::stoll(t.text));
    }
    if (t.type == TokType::kString) {
      take();
      return make_string(t.text);
    }
    if (is_op("-") && peek(1).type == TokType::kNumber) {
      take();
      return make_int(-std::stoll(take().text));
    }
    if (t.type == TokType::kIdent) {
      if (t.text == "TRUE" || t.text == "FALSE") {
        take();
        return make_bool(t.text == "TRUE");
      }
      if (t.text == "UNCHANGED") return parse_unchanged();
      if (t.text == "Cardinality") {
        take();
        expect_op("(");
        ++depth_;
        ExprPtr s = parse_expr();
        --depth_;
        expect_op(")");
        return make_node(ExprKind::kCardinality, {s});
      }
      if (kReserved.contains(t.text)) fail("unexpected keyword '" + t.text + "'", t);
      take();
      return resolve(t);
    }
    if (is_op("(")) {
      take();
      ++depth_;
      ExprPtr e = parse_expr();
      --depth_;
      expect_op(")");
      return e;
    }
    if (is_op("{")) return parse_set();
    if (is_op("[")) return parse_bracket();
    if (is_op("<<")) {
      take();
      ++depth_;
      auto items = comma_list(">>", [&] { return parse_expr(); });
      --depth_;
      expect_op(">>");
      return make_node(ExprKind::kTuple, std::move(items));
    }
    fail(t.type == TokType::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'", t);
  }

  ExprPtr parse_unchanged() {
    Token t = take();
    if (!allow_primes_) fail("UNCHANGED is only allowed in action bodies", t);
    std::vector<std::string> vars;
    auto one = [&] {
      Token vt = peek();
      std::string v = take_name("variable");
      if (!scope_->has_variable(v)) fail("UNCHANGED of non-variable '" + v + "'", vt);
      vars.push_back(v);
    };
    if (is_op("<<")) {
      take();
      one();
      while (is_op(",")) {
        take();
        one();
      }
      expect_op(">>");
    } else {
      one();
    }
    return make_unchanged(std::move(vars));
  }

  ExprPtr parse_set() {
    take();
    ++depth_;
    ExprPtr out;
    if (peek().type == TokType::kIdent && is_op("\\in", 1) && !kReserved.contains(peek().text)) {
      // Either a filter {x \in S : p} or the singleton {x \in S}.
      std::size_t save = pos_;
      std::string x = take().text;
      take();
      ExprPtr dom = parse_expr();
      if (is_op(":")) {
        take();
        bound_.push_back(x);
        ExprPtr pred = parse_expr();
        bound_.pop_back();
        out = make_binder(ExprKind::kSetFilter, {x}, {dom, pred});
      } else {
        pos_ = save;
      }
    }
    if (!out) out = make_node(ExprKind::kSet, comma_list("}", [&] { return parse_expr(); }));
    --depth_;
    expect_op("}");
    return out;
  }

  ExprPtr parse_bracket() {
    take();
    ++depth_;
    ExprPtr out;
    if (peek().type == TokType::kIdent && is_op("|->", 1)) {
      std::vector<std::string> fields;
      std::vector<ExprPtr> values;
      for (;;) {
        fields.push_back(take_name("field name"));
        expect_op("|->");
        values.push_back(parse_expr());
        if (!is_op(",")) break;
        take();
      }
      out = make_binder(ExprKind::kRecord, std::move(fields), std::move(values));
    } else if (peek().type == TokType::kIdent && is_op("\\in", 1) && !kReserved.contains(peek().text)) {
      std::string x = take().text;
      take();
      ExprPtr dom = parse_expr();
      expect_op("|->");
      bound_.push_back(x);
      ExprPtr body = parse_expr();
      bound_.pop_back();
      out = make_binder(ExprKind::kFunc, {x}, {dom, body});
    } else {
      ExprPtr f = parse_expr();
      expect_ident("EXCEPT");
      std::vector<ExprPtr> args{f};
      for (;;) {
        expect_op("!");
        expect_op("[");
        args.push_back(parse_expr());
        expect_op("]");
        expect_op("=");
        args.push_back(parse_expr());
        if (!is_op(",")) break;
        take();
      }
      out = make_node(ExprKind::kExcept, std::move(args));
    }
    --depth_;
    expect_op("]");
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SpecAst* scope_;
  std::vector<std::string> bound_;
  bool allow_primes_ = false;
  bool allow_vars_ = true;
  bool bullets_ = false;
  int depth_ = 0;
};

}  // namespace

SpecAst parse(std::string_view text) {
  Parser p(Lexer(text).run(), nullptr);
  return p.parse_spec();
}

ExprPtr parse_expression(std::string_view text, const SpecAst& scope) {
  Parser p(Lexer(text).run(), &scope);
  return p.parse_standalone();
}

SpecAst bind_constants(SpecAst spec, const std::map<std::string, std::string>& overrides) {
  SpecAst consts_only;
  consts_only.constants = spec.constants;
  for (const auto& [name, text] : overrides) {
    if (std::find(spec.constants.begin(), spec.constants.end(), name) == spec.constants.end()) {
      throw SpecError("unknown constant '" + name + "'");
    }
    spec.config[name] = parse_expression(text, consts_only);
  }
  return spec;
}

}  // namespace recomp::lang
