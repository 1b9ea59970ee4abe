// Copyright 2026 The WDB Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wdb/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "wdb/error.hpp"

namespace wdb {

namespace {

enum class Tok {
  End,
  Ident,
  Keyword,
  Integer,
  Real,
  String,
  Blob,
  LParen,
  RParen,
  Comma,
  Dot,
  Star,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Minus,
};

struct Token {
  Tok kind = Tok::End;
  size_t offset = 0;
  std::string text;          // identifier or uppercased keyword
  int64_t int_value = 0;
  double real_value = 0;
  std::string string_value;  // string literal payload
  std::vector<uint8_t> blob_value;
};

bool is_keyword(const std::string& upper) {
  static const char* kKeywords[] = {
      "SELECT", "FROM",   "WHERE",  "AND",    "OR",     "NOT",   "NULL",
      "IS",     "LIKE",   "BETWEEN", "TRUE",  "FALSE",  "CREATE", "TABLE",
      "DROP",   "INSERT", "INTO",   "VALUES", "UPDATE", "SET",   "DELETE",
      "DISTINCT", "LIMIT", "UNION", "ALL",    "INTEGER", "INT",  "REAL",
      "TEXT",   "BLOB",   "AS",     "BY",     "ORDER",  "GROUP",
  };
  for (const char* k : kKeywords) {
    if (upper == k) return true;
  }
  return false;
}

[[noreturn]] void fail(size_t offset, const std::string& message) {
  throw UserError(UserErrorCode::Syntax,
                  message + " at offset " + std::to_string(offset), offset);
}

class Lexer {
 public:
  explicit Lexer(const std::string& input) : in_(input) {}

  Token next() {
    skip_space();
    Token t;
    t.offset = pos_;
    if (pos_ >= in_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = in_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // X'...' blob literal
      if ((c == 'x' || c == 'X') && pos_ + 1 < in_.size() && in_[pos_ + 1] == '\'') {
        ++pos_;
        return lex_blob(t);
      }
      size_t start = pos_;
      while (pos_ < in_.size() &&
             (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_')) {
        ++pos_;
      }
      std::string word = in_.substr(start, pos_ - start);
      std::string upper = word;
      for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      if (is_keyword(upper)) {
        t.kind = Tok::Keyword;
        t.text = upper;
      } else {
        t.kind = Tok::Ident;
        t.text = word;
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < in_.size() &&
         std::isdigit(static_cast<unsigned char>(in_[pos_ + 1])))) {
      return lex_number(t);
    }
    switch (c) {
      case '\'': return lex_string(t);
      case '(': ++pos_; t.kind = Tok::LParen; return t;
      case ')': ++pos_; t.kind = Tok::RParen; return t;
      case ',': ++pos_; t.kind = Tok::Comma; return t;
      case '.': ++pos_; t.kind = Tok::Dot; return t;
      case '*': ++pos_; t.kind = Tok::Star; return t;
      case '=':
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '=') ++pos_;
        t.kind = Tok::Eq;
        return t;
      case '-': ++pos_; t.kind = Tok::Minus; return t;
      case '<':
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '=') { ++pos_; t.kind = Tok::Le; return t; }
        if (pos_ < in_.size() && in_[pos_] == '>') { ++pos_; t.kind = Tok::Ne; return t; }
        t.kind = Tok::Lt;
        return t;
      case '>':
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '=') { ++pos_; t.kind = Tok::Ge; return t; }
        t.kind = Tok::Gt;
        return t;
      case '!':
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '=') { ++pos_; t.kind = Tok::Ne; return t; }
        fail(t.offset, "unexpected '!'");
      case ';': ++pos_; return next();  // tolerated statement terminator
      default:
        fail(t.offset, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void skip_space() {
    while (pos_ < in_.size() &&
           std::isspace(static_cast<unsigned char>(in_[pos_]))) {
      ++pos_;
    }
  }

  Token lex_string(Token t) {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= in_.size()) fail(t.offset, "unterminated string literal");
      char c = in_[pos_++];
      if (c == '\'') {
        if (pos_ < in_.size() && in_[pos_] == '\'') {
          out += '\'';
          ++pos_;
          continue;
        }
        break;
      }
      out += c;
    }
    t.kind = Tok::String;
    t.string_value = std::move(out);
    return t;
  }

  Token lex_blob(Token t) {
    ++pos_;  // opening quote (caller consumed the X)
    std::vector<uint8_t> bytes;
    std::string hex;
    while (true) {
      if (pos_ >= in_.size()) fail(t.offset, "unterminated blob literal");
      char c = in_[pos_++];
      if (c == '\'') break;
      hex += c;
    }
    if (hex.size() % 2 != 0) fail(t.offset, "odd number of hex digits in blob literal");
    auto nibble = [&](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      fail(t.offset, "invalid hex digit in blob literal");
    };
    for (size_t i = 0; i < hex.size(); i += 2) {
      bytes.push_back(static_cast<uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    }
    t.kind = Tok::Blob;
    t.blob_value = std::move(bytes);
    return t;
  }

  Token lex_number(Token t) {
    size_t start = pos_;
    bool is_real = false;
    while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    if (pos_ < in_.size() && in_[pos_] == '.') {
      is_real = true;
      ++pos_;
      while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }
    if (pos_ < in_.size() && (in_[pos_] == 'e' || in_[pos_] == 'E')) {
      size_t mark = pos_;
      ++pos_;
      if (pos_ < in_.size() && (in_[pos_] == '+' || in_[pos_] == '-')) ++pos_;
      if (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) {
        is_real = true;
        while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to a following identifier, not this number
      }
    }
    std::string text = in_.substr(start, pos_ - start);
    if (is_real) {
      double d = std::strtod(text.c_str(), nullptr);
      if (!std::isfinite(d)) {
        throw UserError(UserErrorCode::BadLiteral,
                        "real literal out of range at offset " + std::to_string(start),
                        start);
      }
      t.kind = Tok::Real;
      t.real_value = d;
    } else {
      errno = 0;
      char* end = nullptr;
      long long v = std::strtoll(text.c_str(), &end, 10);
      if (errno == ERANGE) {
        throw UserError(UserErrorCode::BadLiteral,
                        "integer literal out of range at offset " + std::to_string(start),
                        start);
      }
      t.kind = Tok::Integer;
      t.int_value = v;
    }
    return t;
  }

  const std::string& in_;
  size_t pos_ = 0;
};

constexpr int kMaxParseDepth = 200;

class Parser {
 public:
  Parser(const std::string& input, const MutantSet& mutants)
      : lexer_(input), mutants_(mutants) {
    advance();
  }

  Statement statement() {
    if (cur_.kind == Tok::End) fail(cur_.offset, "empty statement");
    Statement s = statement_body();
    expect_end();
    return s;
  }

  ExprPtr expression_only() {
    ExprPtr e = expr_or(0);
    expect_end();
    return e;
  }

 private:
  Statement statement_body() {
    if (at_keyword("CREATE")) return create_table();
    if (at_keyword("DROP")) return drop_table();
    if (at_keyword("INSERT")) return insert();
    if (at_keyword("SELECT")) return select();
    if (at_keyword("UPDATE")) return update();
    if (at_keyword("DELETE")) return del();
    fail(cur_.offset, "expected a statement keyword");
  }

  Statement create_table() {
    advance();
    expect_keyword("TABLE");
    CreateTableStmt c;
    c.table = ident("table name");
    expect(Tok::LParen, "(");
    while (true) {
      ColumnDef col;
      col.name = ident("column name");
      col.type = column_type();
      c.columns.push_back(std::move(col));
      if (accept(Tok::Comma)) continue;
      break;
    }
    expect(Tok::RParen, ")");
    return c;
  }

  ValueType column_type() {
    if (at_keyword("INTEGER") || at_keyword("INT")) { advance(); return ValueType::Integer; }
    if (at_keyword("REAL")) { advance(); return ValueType::Real; }
    if (at_keyword("TEXT")) { advance(); return ValueType::Text; }
    if (at_keyword("BLOB")) { advance(); return ValueType::Blob; }
    fail(cur_.offset, "expected a column type");
  }

  Statement drop_table() {
    advance();
    expect_keyword("TABLE");
    DropTableStmt d;
    d.table = ident("table name");
    return d;
  }

  Statement insert() {
    advance();
    expect_keyword("INTO");
    InsertStmt ins;
    ins.table = ident("table name");
    if (accept(Tok::LParen)) {
      while (true) {
        ins.columns.push_back(ident("column name"));
        if (accept(Tok::Comma)) continue;
        break;
      }
      expect(Tok::RParen, ")");
    }
    expect_keyword("VALUES");
    while (true) {
      expect(Tok::LParen, "(");
      Row row;
      while (true) {
        row.push_back(literal_value());
        if (accept(Tok::Comma)) continue;
        break;
      }
      expect(Tok::RParen, ")");
      ins.rows.push_back(std::move(row));
      if (accept(Tok::Comma)) continue;
      break;
    }
    return ins;
  }

  Statement select() {
    SelectStmt sel;
    sel.arms.push_back(select_core());
    while (at_keyword("UNION")) {
      advance();
      expect_keyword("ALL");
      if (!at_keyword("SELECT")) fail(cur_.offset, "expected SELECT after UNION ALL");
      sel.arms.push_back(select_core());
    }
    if (at_keyword("LIMIT")) {
      advance();
      if (cur_.kind != Tok::Integer || cur_.int_value < 0) {
        fail(cur_.offset, "expected a non-negative LIMIT count");
      }
      sel.limit = static_cast<uint64_t>(cur_.int_value);
      advance();
    }
    return sel;
  }

  SelectCore select_core() {
    expect_keyword("SELECT");
    SelectCore core;
    if (at_keyword("DISTINCT")) {
      advance();
      core.distinct = true;
    }
    if (accept(Tok::Star)) {
      core.star = true;
    } else {
      while (true) {
        core.projections.push_back(expr_or(0));
        if (accept(Tok::Comma)) continue;
        break;
      }
    }
    if (at_keyword("FROM")) {
      advance();
      while (true) {
        core.from.push_back(ident("table name"));
        if (accept(Tok::Comma)) continue;
        break;
      }
      if (core.from.size() > 2) {
        fail(cur_.offset, "at most two tables in FROM are supported");
      }
    }
    if (at_keyword("WHERE")) {
      advance();
      core.where = expr_or(0);
    }
    return core;
  }

  Statement update() {
    advance();
    UpdateStmt u;
    u.table = ident("table name");
    expect_keyword("SET");
    while (true) {
      std::string col = ident("column name");
      expect(Tok::Eq, "=");
      u.assignments.emplace_back(std::move(col), expr_or(0));
      if (accept(Tok::Comma)) continue;
      break;
    }
    if (at_keyword("WHERE")) {
      advance();
      u.where = expr_or(0);
    }
    return u;
  }

  Statement del() {
    advance();
    expect_keyword("FROM");
    DeleteStmt d;
    d.table = ident("table name");
    if (at_keyword("WHERE")) {
      advance();
      d.where = expr_or(0);
    }
    return d;
  }

  // Precedence ladder, lowest first: OR, AND, NOT, then the equality level
  // (= <> LIKE BETWEEN and postfix IS [NOT] NULL, left-associative), then
  // the relational level (< <= > >=), then primaries.
  ExprPtr expr_or(int depth) {
    guard(depth);
    ExprPtr lhs = expr_and(depth + 1);
    while (at_keyword("OR")) {
      advance();
      lhs = Expr::binary(BinaryOp::Or, lhs, expr_and(depth + 1));
    }
    return lhs;
  }

  ExprPtr expr_and(int depth) {
    guard(depth);
    ExprPtr lhs = expr_not(depth + 1);
    while (at_keyword("AND")) {
      advance();
      lhs = Expr::binary(BinaryOp::And, lhs, expr_not(depth + 1));
    }
    return lhs;
  }

  ExprPtr expr_not(int depth) {
    guard(depth);
    if (at_keyword("NOT")) {
      advance();
      return Expr::unary(UnaryOp::Not, expr_not(depth + 1));
    }
    return expr_eq(depth + 1);
  }

  ExprPtr expr_eq(int depth) {
    guard(depth);
    ExprPtr lhs = expr_rel(depth + 1);
    while (true) {
      if (cur_.kind == Tok::Eq || cur_.kind == Tok::Ne) {
        BinaryOp op = cur_.kind == Tok::Eq ? BinaryOp::Eq : BinaryOp::Ne;
        advance();
        lhs = Expr::binary(op, lhs, expr_rel(depth + 1));
      } else if (at_keyword("IS")) {
        advance();
        bool negated = false;
        if (at_keyword("NOT")) {
          advance();
          negated = true;
        }
        expect_keyword("NULL");
        lhs = Expr::unary(negated ? UnaryOp::IsNotNull : UnaryOp::IsNull, lhs);
      } else if (at_keyword("LIKE")) {
        advance();
        lhs = Expr::binary(BinaryOp::Like, lhs, expr_rel(depth + 1));
      } else if (at_keyword("BETWEEN")) {
        advance();
        ExprPtr lo = expr_rel(depth + 1);
        expect_keyword("AND");
        ExprPtr hi = expr_rel(depth + 1);
        lhs = Expr::between(lhs, lo, hi);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr expr_rel(int depth) {
    guard(depth);
    ExprPtr lhs = primary(depth + 1);
    while (true) {
      BinaryOp op;
      switch (cur_.kind) {
        case Tok::Lt: op = BinaryOp::Lt; break;
        case Tok::Le: op = BinaryOp::Le; break;
        case Tok::Gt: op = BinaryOp::Gt; break;
        case Tok::Ge: op = BinaryOp::Ge; break;
        default: return lhs;
      }
      advance();
      lhs = Expr::binary(op, lhs, primary(depth + 1));
    }
  }

  ExprPtr primary(int depth) {
    guard(depth);
    if (accept(Tok::LParen)) {
      ExprPtr inner = expr_or(depth + 1);
      expect(Tok::RParen, ")");
      return Expr::paren(inner);
    }
    if (cur_.kind == Tok::Ident) {
      std::string first = cur_.text;
      advance();
      if (accept(Tok::Dot)) {
        std::string col = ident("column name");
        return Expr::column(first, col);
      }
      return Expr::column(std::move(first));
    }
    LiteralToken lt = literal_value_token();
    return Expr::literal(std::move(lt.value), lt.boolean_keyword);
  }

  struct LiteralToken {
    Value value;
    bool boolean_keyword = false;
  };

  LiteralToken literal_value_token() {
    // Table 1's catch-all regression: TRUE/FALSE must parse as predicates.
    if (at_keyword("TRUE") || at_keyword("FALSE")) {
      if (mutants_.reject_true_false) {
        fail(cur_.offset, "expected a value");
      }
      LiteralToken lt{Value::integer(at_keyword("TRUE") ? 1 : 0), true};
      advance();
      return lt;
    }
    if (at_keyword("NULL")) {
      advance();
      return {Value::null(), false};
    }
    if (cur_.kind == Tok::Minus) {
      size_t off = cur_.offset;
      advance();
      if (cur_.kind == Tok::Integer) {
        // Negation cannot overflow here: the lexer range-checks the positive
        // magnitude, so only -INT64_MIN's magnitude is rejected early.
        LiteralToken lt{Value::integer(-cur_.int_value), false};
        advance();
        return lt;
      }
      if (cur_.kind == Tok::Real) {
        LiteralToken lt{Value::real(-cur_.real_value), false};
        advance();
        return lt;
      }
      fail(off, "expected a number after '-'");
    }
    if (cur_.kind == Tok::Integer) {
      LiteralToken lt{Value::integer(cur_.int_value), false};
      advance();
      return lt;
    }
    if (cur_.kind == Tok::Real) {
      LiteralToken lt{Value::real(cur_.real_value), false};
      advance();
      return lt;
    }
    if (cur_.kind == Tok::String) {
      LiteralToken lt{Value::text(cur_.string_value), false};
      advance();
      return lt;
    }
    if (cur_.kind == Tok::Blob) {
      LiteralToken lt{Value::blob(cur_.blob_value), false};
      advance();
      return lt;
    }
    fail(cur_.offset, "expected a value");
  }

  Value literal_value() { return literal_value_token().value; }

  void guard(int depth) {
    if (depth > kMaxParseDepth) {
      fail(cur_.offset, "expression nests too deeply");
    }
  }

  bool at_keyword(const char* kw) const {
    return cur_.kind == Tok::Keyword && cur_.text == kw;
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail(cur_.offset, std::string("expected ") + kw);
    advance();
  }

  std::string ident(const char* what) {
    if (cur_.kind != Tok::Ident) fail(cur_.offset, std::string("expected ") + what);
    std::string s = cur_.text;
    advance();
    return s;
  }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    advance();
    return true;
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(cur_.offset, std::string("expected '") + what + "'");
    advance();
  }

  void expect_end() {
    if (cur_.kind != Tok::End) fail(cur_.offset, "unexpected trailing input");
  }

  void advance() { cur_ = lexer_.next(); }

  Lexer lexer_;
  MutantSet mutants_;
  Token cur_;
};

}  // namespace

Statement parse_statement(const std::string& sql, const MutantSet& mutants) {
  Parser p(sql, mutants);
  return p.statement();
}

ExprPtr parse_expression(const std::string& text, const MutantSet& mutants) {
  Parser p(text, mutants);
  return p.expression_only();
}

}  // namespace wdb
