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

#ifndef WDB_AST_HPP
#define WDB_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wdb/value.hpp"

namespace wdb {

// Expression trees are immutable and shared; generators and the reducer
// rewrite by rebuilding nodes.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryOp { Not, IsNull, IsNotNull };
enum class BinaryOp { Eq, Ne, Lt, Le, Gt, Ge, And, Or, Like };

const char* binary_op_token(BinaryOp op);

struct Expr {
  struct ColumnRef {
    std::string table;  // empty for an unqualified reference
    std::string column;
  };
  struct Literal {
    Value value;
    // TRUE/FALSE parse to Integer 1/0; the flag preserves the keyword
    // spelling so printing round-trips.
    bool boolean_keyword = false;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  struct Between {
    ExprPtr subject;
    ExprPtr lo;
    ExprPtr hi;
  };
  struct Paren {
    ExprPtr inner;
  };

  std::variant<ColumnRef, Literal, Unary, Binary, Between, Paren> node;

  static ExprPtr column(std::string table, std::string column);
  static ExprPtr column(std::string column) { return Expr::column("", std::move(column)); }
  static ExprPtr literal(Value v, bool boolean_keyword = false);
  static ExprPtr unary(UnaryOp op, ExprPtr operand);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr between(ExprPtr subject, ExprPtr lo, ExprPtr hi);
  static ExprPtr paren(ExprPtr inner);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
// True when the tree contains no column references.
bool expr_is_constant(const ExprPtr& e);
int expr_depth(const ExprPtr& e);
std::string print_expr(const ExprPtr& e);

// --- Statements ---

struct ColumnDef {
  std::string name;
  ValueType type;
};

struct CreateTableStmt {
  std::string table;
  std::vector<ColumnDef> columns;
};

struct DropTableStmt {
  std::string table;
};

struct InsertStmt {
  std::string table;
  // Explicit column list; empty means the full schema in order.
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

struct SelectCore {
  bool star = false;
  std::vector<ExprPtr> projections;  // used when !star
  std::vector<std::string> from;     // 0 (constants only), 1 or 2 tables
  ExprPtr where;                     // null = no WHERE
  bool distinct = false;
};

struct SelectStmt {
  // Compound arms joined by UNION ALL, in order. The statement-level LIMIT
  // applies to the concatenated result.
  std::vector<SelectCore> arms;
  std::optional<uint64_t> limit;
};

struct UpdateStmt {
  std::string table;
  std::vector<std::pair<std::string, ExprPtr>> assignments;
  ExprPtr where;
};

struct DeleteStmt {
  std::string table;
  ExprPtr where;
};

using Statement = std::variant<CreateTableStmt, DropTableStmt, InsertStmt,
                               SelectStmt, UpdateStmt, DeleteStmt>;

// Canonical SQL rendering, without a trailing semicolon. Printing is purely
// structural: parentheses appear exactly where Paren nodes sit, so
// parse(print(parse(s))) == parse(s).
std::string print_statement(const Statement& s);

size_t select_arity(const SelectStmt& s);

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// Order-insensitive comparison; rows are matched by the Value total order.
bool same_multiset(const std::vector<Row>& a, const std::vector<Row>& b);

}  // namespace wdb

#endif  // WDB_AST_HPP
