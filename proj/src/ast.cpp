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

#include "wdb/ast.hpp"

#include <algorithm>

namespace wdb {

const char* binary_op_token(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "<>";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "AND";
    case BinaryOp::Or: return "OR";
    case BinaryOp::Like: return "LIKE";
  }
  return "?";
}

ExprPtr Expr::column(std::string table, std::string column) {
  auto e = std::make_shared<Expr>();
  e->node = ColumnRef{std::move(table), std::move(column)};
  return e;
}

ExprPtr Expr::literal(Value v, bool boolean_keyword) {
  auto e = std::make_shared<Expr>();
  e->node = Literal{std::move(v), boolean_keyword};
  return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->node = Unary{op, std::move(operand)};
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->node = Binary{op, std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr Expr::between(ExprPtr subject, ExprPtr lo, ExprPtr hi) {
  auto e = std::make_shared<Expr>();
  e->node = Between{std::move(subject), std::move(lo), std::move(hi)};
  return e;
}

ExprPtr Expr::paren(ExprPtr inner) {
  auto e = std::make_shared<Expr>();
  e->node = Paren{std::move(inner)};
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  struct Cmp {
    const Expr& other;
    bool operator()(const Expr::ColumnRef& x) const {
      const auto& y = std::get<Expr::ColumnRef>(other.node);
      return x.table == y.table && x.column == y.column;
    }
    bool operator()(const Expr::Literal& x) const {
      const auto& y = std::get<Expr::Literal>(other.node);
      return x.boolean_keyword == y.boolean_keyword &&
             x.value.type() == y.value.type() && x.value == y.value;
    }
    bool operator()(const Expr::Unary& x) const {
      const auto& y = std::get<Expr::Unary>(other.node);
      return x.op == y.op && expr_equal(x.operand, y.operand);
    }
    bool operator()(const Expr::Binary& x) const {
      const auto& y = std::get<Expr::Binary>(other.node);
      return x.op == y.op && expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
    }
    bool operator()(const Expr::Between& x) const {
      const auto& y = std::get<Expr::Between>(other.node);
      return expr_equal(x.subject, y.subject) && expr_equal(x.lo, y.lo) &&
             expr_equal(x.hi, y.hi);
    }
    bool operator()(const Expr::Paren& x) const {
      const auto& y = std::get<Expr::Paren>(other.node);
      return expr_equal(x.inner, y.inner);
    }
  };
  return std::visit(Cmp{*b}, a->node);
}

bool expr_is_constant(const ExprPtr& e) {
  if (!e) return true;
  struct V {
    bool operator()(const Expr::ColumnRef&) const { return false; }
    bool operator()(const Expr::Literal&) const { return true; }
    bool operator()(const Expr::Unary& u) const { return expr_is_constant(u.operand); }
    bool operator()(const Expr::Binary& b) const {
      return expr_is_constant(b.lhs) && expr_is_constant(b.rhs);
    }
    bool operator()(const Expr::Between& b) const {
      return expr_is_constant(b.subject) && expr_is_constant(b.lo) &&
             expr_is_constant(b.hi);
    }
    bool operator()(const Expr::Paren& p) const { return expr_is_constant(p.inner); }
  };
  return std::visit(V{}, e->node);
}

int expr_depth(const ExprPtr& e) {
  if (!e) return 0;
  struct V {
    int operator()(const Expr::ColumnRef&) const { return 1; }
    int operator()(const Expr::Literal&) const { return 1; }
    int operator()(const Expr::Unary& u) const { return 1 + expr_depth(u.operand); }
    int operator()(const Expr::Binary& b) const {
      return 1 + std::max(expr_depth(b.lhs), expr_depth(b.rhs));
    }
    int operator()(const Expr::Between& b) const {
      return 1 + std::max({expr_depth(b.subject), expr_depth(b.lo), expr_depth(b.hi)});
    }
    int operator()(const Expr::Paren& p) const { return 1 + expr_depth(p.inner); }
  };
  return std::visit(V{}, e->node);
}

namespace {

void print_expr_into(const ExprPtr& e, std::string& out) {
  struct V {
    std::string& out;
    void operator()(const Expr::ColumnRef& c) const {
      if (!c.table.empty()) {
        out += c.table;
        out += '.';
      }
      out += c.column;
    }
    void operator()(const Expr::Literal& l) const {
      if (l.boolean_keyword) {
        out += (l.value.type() == ValueType::Integer && l.value.as_integer() != 0)
                   ? "TRUE"
                   : "FALSE";
      } else {
        out += l.value.sql_literal();
      }
    }
    void operator()(const Expr::Unary& u) const {
      switch (u.op) {
        case UnaryOp::Not:
          out += "NOT ";
          print_expr_into(u.operand, out);
          break;
        case UnaryOp::IsNull:
          print_expr_into(u.operand, out);
          out += " IS NULL";
          break;
        case UnaryOp::IsNotNull:
          print_expr_into(u.operand, out);
          out += " IS NOT NULL";
          break;
      }
    }
    void operator()(const Expr::Binary& b) const {
      print_expr_into(b.lhs, out);
      out += ' ';
      out += binary_op_token(b.op);
      out += ' ';
      print_expr_into(b.rhs, out);
    }
    void operator()(const Expr::Between& b) const {
      print_expr_into(b.subject, out);
      out += " BETWEEN ";
      print_expr_into(b.lo, out);
      out += " AND ";
      print_expr_into(b.hi, out);
    }
    void operator()(const Expr::Paren& p) const {
      out += '(';
      print_expr_into(p.inner, out);
      out += ')';
    }
  };
  std::visit(V{out}, e->node);
}

void print_select_core(const SelectCore& core, std::string& out) {
  out += "SELECT ";
  if (core.distinct) out += "DISTINCT ";
  if (core.star) {
    out += '*';
  } else {
    for (size_t i = 0; i < core.projections.size(); ++i) {
      if (i) out += ", ";
      print_expr_into(core.projections[i], out);
    }
  }
  if (!core.from.empty()) {
    out += " FROM ";
    for (size_t i = 0; i < core.from.size(); ++i) {
      if (i) out += ", ";
      out += core.from[i];
    }
  }
  if (core.where) {
    out += " WHERE ";
    print_expr_into(core.where, out);
  }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print_expr_into(e, out);
  return out;
}

std::string print_statement(const Statement& s) {
  struct V {
    std::string out;
    void operator()(const CreateTableStmt& c) {
      out = "CREATE TABLE " + c.table + " (";
      for (size_t i = 0; i < c.columns.size(); ++i) {
        if (i) out += ", ";
        out += c.columns[i].name;
        out += ' ';
        out += value_type_name(c.columns[i].type);
      }
      out += ')';
    }
    void operator()(const DropTableStmt& d) { out = "DROP TABLE " + d.table; }
    void operator()(const InsertStmt& ins) {
      out = "INSERT INTO " + ins.table;
      if (!ins.columns.empty()) {
        out += " (";
        for (size_t i = 0; i < ins.columns.size(); ++i) {
          if (i) out += ", ";
          out += ins.columns[i];
        }
        out += ')';
      }
      out += " VALUES ";
      for (size_t r = 0; r < ins.rows.size(); ++r) {
        if (r) out += ", ";
        out += '(';
        for (size_t i = 0; i < ins.rows[r].size(); ++i) {
          if (i) out += ", ";
          out += ins.rows[r][i].sql_literal();
        }
        out += ')';
      }
    }
    void operator()(const SelectStmt& sel) {
      for (size_t i = 0; i < sel.arms.size(); ++i) {
        if (i) out += " UNION ALL ";
        print_select_core(sel.arms[i], out);
      }
      if (sel.limit) out += " LIMIT " + std::to_string(*sel.limit);
    }
    void operator()(const UpdateStmt& u) {
      out = "UPDATE " + u.table + " SET ";
      for (size_t i = 0; i < u.assignments.size(); ++i) {
        if (i) out += ", ";
        out += u.assignments[i].first;
        out += " = ";
        print_expr_into(u.assignments[i].second, out);
      }
      if (u.where) {
        out += " WHERE ";
        print_expr_into(u.where, out);
      }
    }
    void operator()(const DeleteStmt& d) {
      out = "DELETE FROM " + d.table;
      if (d.where) {
        out += " WHERE ";
        print_expr_into(d.where, out);
      }
    }
  };
  V v;
  std::visit(v, s);
  return v.out;
}

size_t select_arity(const SelectStmt& s) {
  const SelectCore& core = s.arms.front();
  return core.star ? 0 : core.projections.size();  // star arity needs a catalog
}

bool same_multiset(const std::vector<Row>& a, const std::vector<Row>& b) {
  if (a.size() != b.size()) return false;
  std::vector<Row> sa = a, sb = b;
  auto lt = [](const Row& x, const Row& y) { return compare_rows(x, y) < 0; };
  std::sort(sa.begin(), sa.end(), lt);
  std::sort(sb.begin(), sb.end(), lt);
  for (size_t i = 0; i < sa.size(); ++i) {
    if (compare_rows(sa[i], sb[i]) != 0) return false;
  }
  return true;
}

}  // namespace wdb
