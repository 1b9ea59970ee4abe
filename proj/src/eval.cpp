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

#include "wdb/eval.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "wdb/error.hpp"

namespace wdb {

void RowScope::add_table(const std::string& table,
                         const std::vector<std::string>& columns, const Row* row) {
  entries_.push_back(Entry{table, columns, row});
}

const Value& RowScope::resolve(const std::string& table,
                               const std::string& column) const {
  const Value* found = nullptr;
  for (const Entry& e : entries_) {
    if (!table.empty() && e.table != table) continue;
    for (size_t i = 0; i < e.columns.size(); ++i) {
      if (e.columns[i] != column) continue;
      if (found != nullptr) {
        throw UserError(UserErrorCode::AmbiguousColumn,
                        "ambiguous column name: " +
                            (table.empty() ? column : table + "." + column));
      }
      found = &(*e.row)[i];
    }
  }
  if (found == nullptr) {
    throw UserError(UserErrorCode::UnknownColumn,
                    "no such column: " +
                        (table.empty() ? column : table + "." + column));
  }
  return *found;
}

namespace {

// Longest numeric prefix of a string, as a double; empty prefix is 0.
double numeric_prefix(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  double d = std::strtod(p, &end);
  if (end == p) return 0.0;
  if (std::isnan(d)) return 0.0;
  return d;
}

Truth kleene_not(Truth t) {
  switch (t) {
    case Truth::True: return Truth::False;
    case Truth::False: return Truth::True;
    case Truth::Unknown: return Truth::Unknown;
  }
  return Truth::Unknown;
}

Truth kleene_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::True;
}

Truth kleene_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::False;
}

}  // namespace

Truth truthiness(const Value& v) {
  switch (v.type()) {
    case ValueType::Null:
      return Truth::Unknown;
    case ValueType::Integer:
      return v.as_integer() != 0 ? Truth::True : Truth::False;
    case ValueType::Real:
      return v.as_real() != 0.0 ? Truth::True : Truth::False;
    case ValueType::Text:
      return numeric_prefix(v.as_text()) != 0.0 ? Truth::True : Truth::False;
    case ValueType::Blob:
      return numeric_prefix(v.render_text()) != 0.0 ? Truth::True : Truth::False;
  }
  return Truth::Unknown;
}

Value truth_to_value(Truth t) {
  switch (t) {
    case Truth::True: return Value::integer(1);
    case Truth::False: return Value::integer(0);
    case Truth::Unknown: return Value::null();
  }
  return Value::null();
}

bool like_match(const std::string& text, const std::string& pattern) {
  // Iterative matcher with backtracking over the last %.
  size_t t = 0, p = 0;
  size_t star_p = std::string::npos, star_t = 0;
  auto lower = [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '_' || lower(pattern[p]) == lower(text[t]))) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '%') {
      star_p = p++;
      star_t = t;
    } else if (star_p != std::string::npos) {
      p = star_p + 1;
      t = ++star_t;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

namespace {

struct Evaluator {
  const RowScope& scope;
  const MutantSet& mutants;

  Value eval(const ExprPtr& e) const {
    engine_check(e != nullptr, "evaluating a null expression node");
    struct V {
      const Evaluator& self;
      Value operator()(const Expr::ColumnRef& c) const {
        return self.scope.resolve(c.table, c.column);
      }
      Value operator()(const Expr::Literal& l) const { return l.value; }
      Value operator()(const Expr::Unary& u) const {
        Value v = self.eval(u.operand);
        switch (u.op) {
          case UnaryOp::Not:
            return truth_to_value(kleene_not(truthiness(v)));
          case UnaryOp::IsNull:
            return Value::integer(v.is_null() ? 1 : 0);
          case UnaryOp::IsNotNull:
            return Value::integer(v.is_null() ? 0 : 1);
        }
        return Value::null();
      }
      Value operator()(const Expr::Binary& b) const {
        switch (b.op) {
          case BinaryOp::And: {
            Value l = self.eval(b.lhs);
            Value r = self.eval(b.rhs);
            if (self.mutants.and_null_gives_false && (l.is_null() || r.is_null())) {
              return Value::integer(0);
            }
            return truth_to_value(kleene_and(truthiness(l), truthiness(r)));
          }
          case BinaryOp::Or: {
            Value l = self.eval(b.lhs);
            Value r = self.eval(b.rhs);
            return truth_to_value(kleene_or(truthiness(l), truthiness(r)));
          }
          case BinaryOp::Like: {
            Value l = self.eval(b.lhs);
            Value r = self.eval(b.rhs);
            if (l.is_null() || r.is_null()) return Value::null();
            if (self.mutants.like_requires_text) {
              engine_check(l.type() == ValueType::Text &&
                               r.type() == ValueType::Text,
                           "LIKE operand is not TEXT");
            }
            return Value::integer(
                like_match(l.render_text(), r.render_text()) ? 1 : 0);
          }
          default: {
            Value l = self.eval(b.lhs);
            Value r = self.eval(b.rhs);
            if (l.is_null() || r.is_null()) return Value::null();
            int c = Value::compare(l, r);
            bool res = false;
            switch (b.op) {
              case BinaryOp::Eq: res = c == 0; break;
              case BinaryOp::Ne: res = c != 0; break;
              case BinaryOp::Lt: res = c < 0; break;
              case BinaryOp::Le: res = c <= 0; break;
              case BinaryOp::Gt: res = c > 0; break;
              case BinaryOp::Ge: res = c >= 0; break;
              default: break;
            }
            return Value::integer(res ? 1 : 0);
          }
        }
      }
      Value operator()(const Expr::Between& b) const {
        // subject BETWEEN lo AND hi == (subject >= lo) AND (subject <= hi)
        Value s = self.eval(b.subject);
        Value lo = self.eval(b.lo);
        Value hi = self.eval(b.hi);
        auto cmp = [](const Value& a, const Value& b2, bool ge) -> Truth {
          if (a.is_null() || b2.is_null()) return Truth::Unknown;
          int c = Value::compare(a, b2);
          return (ge ? c >= 0 : c <= 0) ? Truth::True : Truth::False;
        };
        return truth_to_value(kleene_and(cmp(s, lo, true), cmp(s, hi, false)));
      }
      Value operator()(const Expr::Paren& p) const { return self.eval(p.inner); }
    };
    return std::visit(V{*this}, e->node);
  }
};

}  // namespace

Value eval_expr(const ExprPtr& e, const RowScope& scope, const MutantSet& mutants) {
  return Evaluator{scope, mutants}.eval(e);
}

}  // namespace wdb
