#include "skysentry/kg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

namespace skysentry::kg {

namespace {

enum class TokenKind {
  Identifier,   // bare word: keywords and 'a'
  PrefixedName, // prefix:local
  Variable,     // ?name
  IriRef,       // <...>
  String,       // "..."
  Integer,
  Decimal,
  Punct,  // one of { } ( ) ; . , = != < > <= >= && ||
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;        // identifier/pname/variable/string contents
  std::int64_t int_value = 0;
  double dec_value = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokenKind::End) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw QueryParseError(line_, column_, msg);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::string text, std::size_t line,
             std::size_t col) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = col;
    return t;
  }

  Token next() {
    if (pos_ >= text_.size()) return make(TokenKind::End, "", line_, column_);
    const std::size_t line = line_;
    const std::size_t col = column_;
    char c = peek();

    if (c == '<') {
      // '<' opens an IRI only when a '>' closes it before any whitespace;
      // otherwise it is the less-than operator
      bool is_iri = false;
      for (std::size_t j = pos_ + 1; j < text_.size(); ++j) {
        const char ch = text_[j];
        if (ch == '>') {
          is_iri = true;
          break;
        }
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '<' ||
            ch == '"') {
          break;
        }
      }
      if (is_iri) {
        advance();
        std::string iri;
        while (pos_ < text_.size() && peek() != '>') iri += advance();
        advance();
        if (iri.empty()) fail("empty IRI");
        return make(TokenKind::IriRef, std::move(iri), line, col);
      }
    }
    if (c == '?') {
      advance();
      std::string name;
      if (!std::isalpha(static_cast<unsigned char>(peek()))) {
        fail("variable name must start with a letter");
      }
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += advance();
      }
      return make(TokenKind::Variable, std::move(name), line, col);
    }
    if (c == '"') {
      advance();
      std::string s;
      while (pos_ < text_.size() && peek() != '"') {
        char ch = advance();
        if (ch == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string");
          char esc = advance();
          switch (esc) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '"': s += '"'; break;
            case '\\': s += '\\'; break;
            default: fail("unknown escape sequence");
          }
        } else {
          s += ch;
        }
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      advance();
      return make(TokenKind::String, std::move(s), line, col);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') &&
         std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::string num;
      num += advance();
      bool is_decimal = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) num += advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_decimal = true;
        num += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) num += advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        char e1 = peek(1);
        char e2 = peek(2);
        if (std::isdigit(static_cast<unsigned char>(e1)) ||
            ((e1 == '+' || e1 == '-') &&
             std::isdigit(static_cast<unsigned char>(e2)))) {
          is_decimal = true;
          num += advance();
          if (peek() == '+' || peek() == '-') num += advance();
          while (std::isdigit(static_cast<unsigned char>(peek()))) num += advance();
        }
      }
      Token t = make(is_decimal ? TokenKind::Decimal : TokenKind::Integer, num,
                     line, col);
      if (is_decimal) {
        auto [p, ec] =
            std::from_chars(num.data(), num.data() + num.size(), t.dec_value);
        if (ec != std::errc{} || p != num.data() + num.size()) {
          fail("bad decimal literal");
        }
      } else {
        auto [p, ec] =
            std::from_chars(num.data(), num.data() + num.size(), t.int_value);
        if (ec != std::errc{} || p != num.data() + num.size()) {
          fail("bad integer literal");
        }
      }
      return t;
    }
    if (ident_start(c)) {
      std::string word;
      while (ident_cont(peek())) word += advance();
      if (peek() == ':') {
        advance();
        std::string local;
        while (ident_cont(peek())) local += advance();
        return make(TokenKind::PrefixedName, word + ":" + local, line, col);
      }
      return make(TokenKind::Identifier, std::move(word), line, col);
    }
    if (c == ':') {  // empty prefix
      advance();
      std::string local;
      while (ident_cont(peek())) local += advance();
      return make(TokenKind::PrefixedName, ":" + local, line, col);
    }
    // punctuation, including two-char operators
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two('!', '=') || two('<', '=') || two('>', '=') || two('&', '&') ||
        two('|', '|')) {
      std::string p;
      p += advance();
      p += advance();
      return make(TokenKind::Punct, std::move(p), line, col);
    }
    if (std::string("{}();.,=<>").find(c) != std::string::npos) {
      std::string p(1, advance());
      return make(TokenKind::Punct, std::move(p), line, col);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  QueryAst parse() {
    QueryAst ast;
    while (is_keyword("prefix")) {
      consume();
      const Token& name = expect(TokenKind::PrefixedName, "prefix declaration");
      auto colon = name.text.find(':');
      std::string prefix = name.text.substr(0, colon);
      if (name.text.size() != colon + 1) {
        fail(name, "prefix declaration must end with ':'");
      }
      const Token& iri = expect(TokenKind::IriRef, "prefix IRI");
      ast.prefixes[prefix] = iri.text;
    }
    expect_keyword("select");
    while (peek().kind == TokenKind::Variable) {
      ast.select_vars.push_back(consume().text);
    }
    if (ast.select_vars.empty()) fail(peek(), "SELECT needs at least one variable");
    expect_keyword("where");
    expect_punct("{");
    ast.where = parse_group(ast.prefixes);
    expect_punct("}");
    if (is_keyword("order")) {
      consume();
      expect_keyword("by");
      while (true) {
        if (peek().kind == TokenKind::Variable) {
          ast.order_by.push_back({consume().text, SortDirection::Ascending});
        } else if (is_keyword("asc") || is_keyword("desc")) {
          SortDirection dir = lowercase(consume().text) == "asc"
                                  ? SortDirection::Ascending
                                  : SortDirection::Descending;
          expect_punct("(");
          const Token& v = expect(TokenKind::Variable, "ORDER BY variable");
          expect_punct(")");
          ast.order_by.push_back({v.text, dir});
        } else {
          break;
        }
      }
      if (ast.order_by.empty()) fail(peek(), "ORDER BY needs at least one key");
    }
    if (peek().kind != TokenKind::End) fail(peek(), "trailing input after query");
    validate(ast);
    return ast;
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw QueryParseError(at.line, at.column, msg);
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& consume() { return tokens_[index_++]; }

  bool is_keyword(const char* kw) const {
    return peek().kind == TokenKind::Identifier && lowercase(peek().text) == kw;
  }

  bool is_punct(const char* p) const {
    return peek().kind == TokenKind::Punct && peek().text == p;
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), "expected " + what);
    return consume();
  }

  void expect_keyword(const char* kw) {
    if (!is_keyword(kw)) {
      fail(peek(), std::string("expected keyword '") + kw + "'");
    }
    consume();
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "'");
    consume();
  }

  Iri resolve(const Token& t, const std::map<std::string, std::string>& prefixes) {
    if (t.kind == TokenKind::IriRef) return Iri{t.text};
    auto colon = t.text.find(':');
    std::string prefix = t.text.substr(0, colon);
    std::string local = t.text.substr(colon + 1);
    auto it = prefixes.find(prefix);
    if (it == prefixes.end()) fail(t, "unknown prefix '" + prefix + "'");
    return Iri{it->second + local};
  }

  Term parse_term(const std::map<std::string, std::string>& prefixes) {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Variable:
        return Variable{consume().text};
      case TokenKind::IriRef:
      case TokenKind::PrefixedName:
        return resolve(consume(), prefixes);
      case TokenKind::String:
        return Literal::str(consume().text);
      case TokenKind::Integer:
        return Literal::integer(consume().int_value);
      case TokenKind::Decimal:
        return Literal::decimal(consume().dec_value);
      default:
        fail(t, "expected a term");
    }
  }

  Term parse_predicate(const std::map<std::string, std::string>& prefixes) {
    if (is_keyword("a")) {
      consume();
      return Iri{kRdfTypeIri};
    }
    const Token& t = peek();
    if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PrefixedName) {
      return resolve(consume(), prefixes);
    }
    if (t.kind == TokenKind::Variable) {
      return Variable{consume().text};
    }
    fail(t, "expected a predicate");
  }

  Comparison parse_comparison(const std::map<std::string, std::string>& prefixes) {
    auto operand = [&]() -> Term {
      const Token& t = peek();
      if (t.kind == TokenKind::Variable || t.kind == TokenKind::String ||
          t.kind == TokenKind::Integer || t.kind == TokenKind::Decimal) {
        return parse_term(prefixes);
      }
      fail(t, "filter operands are variables or literals");
    };
    Comparison cmp;
    cmp.lhs = operand();
    const Token& op = peek();
    if (op.kind != TokenKind::Punct) fail(op, "expected comparison operator");
    if (op.text == "=") cmp.op = CompareOp::Eq;
    else if (op.text == "!=") cmp.op = CompareOp::Ne;
    else if (op.text == "<") cmp.op = CompareOp::Lt;
    else if (op.text == ">") cmp.op = CompareOp::Gt;
    else if (op.text == "<=") cmp.op = CompareOp::Le;
    else if (op.text == ">=") cmp.op = CompareOp::Ge;
    else fail(op, "expected comparison operator");
    consume();
    cmp.rhs = operand();
    return cmp;
  }

  Filter parse_filter(const std::map<std::string, std::string>& prefixes) {
    // '&&'/'AND' binds tighter than '||'/'OR'
    Filter f;
    std::vector<Comparison> clause;
    clause.push_back(parse_comparison(prefixes));
    while (true) {
      if (is_punct("&&") || is_keyword("and")) {
        consume();
        clause.push_back(parse_comparison(prefixes));
      } else if (is_punct("||") || is_keyword("or")) {
        consume();
        f.clauses.push_back(std::move(clause));
        clause.clear();
        clause.push_back(parse_comparison(prefixes));
      } else {
        break;
      }
    }
    f.clauses.push_back(std::move(clause));
    return f;
  }

  Group parse_group(const std::map<std::string, std::string>& prefixes) {
    Group group;
    while (true) {
      if (is_punct("{")) {  // nested plain group: flatten
        consume();
        Group inner = parse_group(prefixes);
        expect_punct("}");
        for (auto& el : inner.elements) group.elements.push_back(std::move(el));
        continue;
      }
      if (is_keyword("filter")) {
        consume();
        expect_punct("(");
        Filter f = parse_filter(prefixes);
        expect_punct(")");
        if (is_punct(".")) consume();
        group.elements.emplace_back(std::move(f));
        continue;
      }
      if (is_keyword("minus")) {
        consume();
        expect_punct("{");
        Minus m{parse_group(prefixes)};
        expect_punct("}");
        if (is_punct(".")) consume();
        group.elements.emplace_back(std::move(m));
        continue;
      }
      if (is_punct("}") || peek().kind == TokenKind::End) break;

      // triples block with ';' property lists
      Term subject = parse_term(prefixes);
      while (true) {
        Term predicate = parse_predicate(prefixes);
        Term object = parse_term(prefixes);
        group.elements.emplace_back(TriplePattern{subject, predicate, object});
        if (is_punct(";")) {
          consume();
          continue;
        }
        break;
      }
      if (is_punct(".")) consume();
    }
    if (group.elements.empty()) fail(peek(), "empty group");
    return group;
  }

  static void collect_vars(const Term& t, std::set<std::string>& out) {
    if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
  }

  void validate(const QueryAst& ast) {
    std::set<std::string> positive;
    for (const auto& p : ast.patterns()) {
      collect_vars(p.subject, positive);
      collect_vars(p.predicate, positive);
      collect_vars(p.object, positive);
    }
    for (const auto& v : ast.select_vars) {
      if (!positive.count(v)) {
        throw QueryParseError(1, 1, "select variable ?" + v +
                                        " is not bound by any pattern");
      }
    }
    for (const auto& k : ast.order_by) {
      if (!positive.count(k.variable)) {
        throw QueryParseError(1, 1, "order variable ?" + k.variable +
                                        " is not bound by any pattern");
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

void append_term(std::string& out, const Term& t) { out += to_string(t); }

const char* op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Gt: return ">";
    case CompareOp::Le: return "<=";
    case CompareOp::Ge: return ">=";
  }
  return "=";
}

void print_group(std::string& out, const Group& group, int indent) {
  const std::string pad(indent * 2, ' ');
  for (const auto& el : group.elements) {
    if (const auto* p = std::get_if<TriplePattern>(&el)) {
      out += pad;
      append_term(out, p->subject);
      out += ' ';
      append_term(out, p->predicate);
      out += ' ';
      append_term(out, p->object);
      out += " .\n";
    } else if (const auto* f = std::get_if<Filter>(&el)) {
      out += pad + "FILTER(";
      for (std::size_t i = 0; i < f->clauses.size(); ++i) {
        if (i) out += " || ";
        const auto& clause = f->clauses[i];
        for (std::size_t j = 0; j < clause.size(); ++j) {
          if (j) out += " && ";
          append_term(out, clause[j].lhs);
          out += ' ';
          out += op_text(clause[j].op);
          out += ' ';
          append_term(out, clause[j].rhs);
        }
      }
      out += ")\n";
    } else {
      const auto& m = std::get<Minus>(el);
      out += pad + "MINUS {\n";
      print_group(out, m.group, indent + 1);
      out += pad + "}\n";
    }
  }
}

}  // namespace

QueryAst parse_query(std::string_view text) { return Parser(text).parse(); }

std::string pretty_print(const QueryAst& ast) {
  std::string out;
  for (const auto& [prefix, ns] : ast.prefixes) {
    out += "PREFIX " + prefix + ": <" + ns + ">\n";
  }
  out += "SELECT";
  for (const auto& v : ast.select_vars) out += " ?" + v;
  out += " WHERE {\n";
  print_group(out, ast.where, 1);
  out += "}";
  if (!ast.order_by.empty()) {
    out += " ORDER BY";
    for (const auto& k : ast.order_by) {
      if (k.direction == SortDirection::Ascending) {
        out += " ASC(?" + k.variable + ")";
      } else {
        out += " DESC(?" + k.variable + ")";
      }
    }
  }
  out += "\n";
  return out;
}

std::size_t QueryAst::pattern_count() const { return patterns().size(); }

std::size_t QueryAst::minus_count() const {
  std::size_t n = 0;
  for (const auto& el : where.elements) {
    if (std::holds_alternative<Minus>(el)) ++n;
  }
  return n;
}

std::vector<TriplePattern> QueryAst::patterns() const {
  std::vector<TriplePattern> out;
  for (const auto& el : where.elements) {
    if (const auto* p = std::get_if<TriplePattern>(&el)) out.push_back(*p);
  }
  return out;
}

const Filter* QueryAst::first_filter() const {
  for (const auto& el : where.elements) {
    if (const auto* f = std::get_if<Filter>(&el)) return f;
  }
  return nullptr;
}

}  // namespace skysentry::kg
