// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netbargain/lp.h"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <utility>

#include "netbargain/error.h"

namespace netbargain::lp {
namespace {

std::atomic<std::uint64_t> g_checked{0};
std::atomic<std::uint64_t> g_violations{0};

enum class ColumnKind { kStructural, kSlack, kArtificial };

// How an original variable is expressed through nonnegative tableau columns.
struct VariableMap {
  enum Kind { kShifted, kMirrored, kSplit } kind;
  int column = -1;
  int negative_column = -1;  // kSplit only
  Rational offset;           // lower bound (kShifted) or upper bound (kMirrored)
};

// Dense simplex tableau; the last row holds reduced costs and the last
// column the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows + 1) * (cols + 1)),
        basis_(rows, -1) {}

  Rational& at(int r, int c) { return cells_[static_cast<size_t>(r) * (cols_ + 1) + c]; }
  const Rational& at(int r, int c) const {
    return cells_[static_cast<size_t>(r) * (cols_ + 1) + c];
  }
  Rational& rhs(int r) { return at(r, cols_); }
  Rational& cost(int c) { return at(rows_, c); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  void Pivot(int r, int c) {
    std::vector<int> nonzero;
    for (int j = 0; j <= cols_; ++j) {
      if (sgn(at(r, j)) != 0) nonzero.push_back(j);
    }
    const Rational pivot = at(r, c);
    for (int j : nonzero) at(r, j) /= pivot;
    Rational factor, product;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      factor = at(i, c);
      for (int j : nonzero) {
        product = factor * at(r, j);
        at(i, j) -= product;
      }
    }
    basis_[r] = c;
  }

  // Bland's rule. Returns false when optimal; sets `unbounded` when the
  // entering column has no positive entry.
  bool Step(const std::vector<bool>& may_enter, bool& unbounded) {
    int enter = -1;
    for (int j = 0; j < cols_; ++j) {
      if (may_enter[j] && sgn(cost(j)) > 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rational best_ratio, ratio;
    for (int i = 0; i < rows_; ++i) {
      if (sgn(at(i, enter)) <= 0) continue;
      ratio = rhs(i) / at(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      unbounded = true;
      return false;
    }
    Pivot(leave, enter);
    return true;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Rational> cells_;
  std::vector<int> basis_;
};

struct InternalRow {
  std::map<int, Rational> coefs;  // tableau column -> coefficient
  Relation relation;
  Rational rhs;
  bool flipped = false;
  int identity_column = -1;
};

}  // namespace

int LinearProgram::AddVariable(std::string name, std::optional<Rational> lower,
                               std::optional<Rational> upper) {
  variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return num_variables() - 1;
}

LinearExpr LinearProgram::Normalize(LinearExpr expr) const {
  std::map<int, Rational> merged;
  for (auto& term : expr) {
    if (term.var < 0 || term.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidParams,
                  "linear expression references undeclared variable " + std::to_string(term.var));
    }
    merged[term.var] += term.coef;
  }
  LinearExpr out;
  for (auto& [var, coef] : merged) {
    if (sgn(coef) != 0) out.push_back({var, coef});
  }
  return out;
}

int LinearProgram::AddConstraint(LinearExpr row, Relation relation, Rational rhs,
                                 std::string name) {
  constraints_.push_back({std::move(name), Normalize(std::move(row)), relation, std::move(rhs)});
  return num_constraints() - 1;
}

void LinearProgram::SetObjective(Sense sense, LinearExpr objective) {
  sense_ = sense;
  objective_ = Normalize(std::move(objective));
}

Rational LinearProgram::Evaluate(const LinearExpr& expr, const std::vector<Rational>& point) {
  Rational total;
  for (const auto& term : expr) total += term.coef * point[term.var];
  return total;
}

Solution Solve(const LinearProgram& lp) {
  const int n = lp.num_variables();

  // Nonnegative column substitution for every variable.
  std::vector<VariableMap> maps(n);
  std::vector<InternalRow> rows;
  int structural = 0;
  for (int j = 0; j < n; ++j) {
    const Variable& var = lp.variables()[j];
    VariableMap& m = maps[j];
    if (var.lower) {
      m.kind = VariableMap::kShifted;
      m.offset = *var.lower;
      m.column = structural++;
    } else if (var.upper) {
      m.kind = VariableMap::kMirrored;
      m.offset = *var.upper;
      m.column = structural++;
    } else {
      m.kind = VariableMap::kSplit;
      m.column = structural++;
      m.negative_column = structural++;
    }
  }

  auto substitute = [&](const LinearExpr& expr, Rational& constant) {
    std::map<int, Rational> coefs;
    for (const auto& term : expr) {
      const VariableMap& m = maps[term.var];
      switch (m.kind) {
        case VariableMap::kShifted:
          constant += term.coef * m.offset;
          coefs[m.column] += term.coef;
          break;
        case VariableMap::kMirrored:
          constant += term.coef * m.offset;
          coefs[m.column] -= term.coef;
          break;
        case VariableMap::kSplit:
          coefs[m.column] += term.coef;
          coefs[m.negative_column] -= term.coef;
          break;
      }
    }
    return coefs;
  };

  for (const auto& c : lp.constraints()) {
    Rational constant;
    InternalRow row;
    row.coefs = substitute(c.row, constant);
    row.relation = c.relation;
    row.rhs = c.rhs - constant;
    rows.push_back(std::move(row));
  }
  const int reported_rows = static_cast<int>(rows.size());
  for (int j = 0; j < n; ++j) {
    const Variable& var = lp.variables()[j];
    if (var.lower && var.upper) {
      InternalRow row;
      row.coefs[maps[j].column] = 1;
      row.relation = Relation::kLessEqual;
      row.rhs = *var.upper - *var.lower;
      rows.push_back(std::move(row));
    }
  }

  // Orient rows to a nonnegative right-hand side and allocate slack and
  // artificial columns.
  const int m = static_cast<int>(rows.size());
  int columns = structural;
  std::vector<ColumnKind> kinds(structural, ColumnKind::kStructural);
  std::vector<int> surplus_column(m, -1);
  for (auto& row : rows) {
    if (sgn(row.rhs) < 0) {
      row.flipped = true;
      row.rhs = -row.rhs;
      for (auto& [col, coef] : row.coefs) coef = -coef;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    if (rows[i].relation != Relation::kEqual) {
      surplus_column[i] = columns++;
      kinds.push_back(ColumnKind::kSlack);
    }
  }
  bool has_artificial = false;
  for (int i = 0; i < m; ++i) {
    if (rows[i].relation == Relation::kLessEqual) {
      rows[i].identity_column = surplus_column[i];
    } else {
      rows[i].identity_column = columns++;
      kinds.push_back(ColumnKind::kArtificial);
      has_artificial = true;
    }
  }

  Tableau t(m, columns);
  for (int i = 0; i < m; ++i) {
    for (const auto& [col, coef] : rows[i].coefs) t.at(i, col) = coef;
    if (surplus_column[i] >= 0) {
      t.at(i, surplus_column[i]) = rows[i].relation == Relation::kLessEqual ? 1 : -1;
    }
    t.at(i, rows[i].identity_column) = 1;
    t.rhs(i) = rows[i].rhs;
    t.basis()[i] = rows[i].identity_column;
  }

  std::vector<bool> may_enter(columns);
  for (int j = 0; j < columns; ++j) may_enter[j] = kinds[j] != ColumnKind::kArtificial;

  Solution solution;
  solution.primal.assign(n, Rational(0));
  solution.dual.assign(reported_rows, Rational(0));
  bool unbounded = false;

  if (has_artificial) {
    // Phase 1: maximize -(sum of artificials).
    for (int i = 0; i < m; ++i) {
      if (kinds[t.basis()[i]] != ColumnKind::kArtificial) continue;
      for (int j = 0; j <= columns; ++j) {
        if (kinds.size() > static_cast<size_t>(j) && kinds[j] == ColumnKind::kArtificial) continue;
        t.at(m, j) += t.at(i, j);
      }
    }
    while (t.Step(may_enter, unbounded)) ++solution.pivots;
    if (sgn(t.rhs(m)) > 0) {
      solution.status = Status::kInfeasible;
      return solution;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (kinds[t.basis()[i]] != ColumnKind::kArtificial) continue;
      for (int j = 0; j < columns; ++j) {
        if (kinds[j] != ColumnKind::kArtificial && sgn(t.at(i, j)) != 0) {
          t.Pivot(i, j);
          ++solution.pivots;
          break;
        }
      }
    }
  }

  // Phase 2 cost row for the internal maximization.
  const bool minimize = lp.sense() == Sense::kMinimize;
  Rational objective_constant;
  std::map<int, Rational> costs = substitute(lp.objective(), objective_constant);
  for (int j = 0; j <= columns; ++j) t.at(m, j) = 0;
  for (const auto& [col, coef] : costs) t.cost(col) = minimize ? Rational(-coef) : coef;
  for (int i = 0; i < m; ++i) {
    const Rational basic_cost = t.cost(t.basis()[i]);
    if (sgn(basic_cost) == 0) continue;
    for (int j = 0; j <= columns; ++j) {
      if (sgn(t.at(i, j)) != 0) t.at(m, j) -= basic_cost * t.at(i, j);
    }
  }
  unbounded = false;
  while (t.Step(may_enter, unbounded)) ++solution.pivots;
  if (unbounded) {
    solution.status = Status::kUnbounded;
    return solution;
  }

  std::vector<Rational> column_value(columns);
  for (int i = 0; i < m; ++i) column_value[t.basis()[i]] = t.rhs(i);
  for (int j = 0; j < n; ++j) {
    const VariableMap& map = maps[j];
    switch (map.kind) {
      case VariableMap::kShifted:
        solution.primal[j] = map.offset + column_value[map.column];
        break;
      case VariableMap::kMirrored:
        solution.primal[j] = map.offset - column_value[map.column];
        break;
      case VariableMap::kSplit:
        solution.primal[j] = column_value[map.column] - column_value[map.negative_column];
        break;
    }
  }
  for (int i = 0; i < reported_rows; ++i) {
    Rational y = -t.cost(rows[i].identity_column);
    if (rows[i].flipped) y = -y;
    if (minimize) y = -y;
    solution.dual[i] = y;
  }
  solution.status = Status::kOptimal;
  solution.objective_value = LinearProgram::Evaluate(lp.objective(), solution.primal);

  const CertificateCheck check = CheckCertificate(lp, solution);
  ++g_checked;
  if (!check.ok) {
    ++g_violations;
    std::cerr << "netbargain::lp certificate violation: " << check.failure << "\n";
  }
  return solution;
}

Solution SolveOverFace(const LinearProgram& lp, const Rational& fixed_value,
                       const LinearExpr& probe) {
  LinearProgram face = lp;
  face.AddConstraint(lp.objective(), Relation::kEqual, fixed_value, "optimal_face");
  face.SetObjective(Sense::kMaximize, probe);
  Solution solution = Solve(face);
  if (solution.status == Status::kInfeasible) {
    throw Error(ErrorCode::kInfeasibleFace,
                "objective value " + FormatRational(fixed_value) + " is not attainable");
  }
  if (solution.status == Status::kUnbounded) {
    throw Error(ErrorCode::kUnboundedFace, "probe is unbounded on the optimal face");
  }
  solution.dual.pop_back();
  return solution;
}

Rational MaxOverFace(const LinearProgram& lp, const Rational& fixed_value,
                     const LinearExpr& probe) {
  return SolveOverFace(lp, fixed_value, probe).objective_value;
}

CertificateCheck CheckCertificate(const LinearProgram& lp, const Solution& solution) {
  CertificateCheck result;
  auto fail = [&](std::string why) {
    result.ok = false;
    result.failure = std::move(why);
    return result;
  };
  const int n = lp.num_variables();
  const auto& x = solution.primal;
  const auto& y = solution.dual;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != lp.num_constraints()) {
    return fail("dimension mismatch");
  }
  const Rational sense_sign = lp.sense() == Sense::kMaximize ? 1 : -1;

  for (int j = 0; j < n; ++j) {
    const Variable& var = lp.variables()[j];
    if ((var.lower && x[j] < *var.lower) || (var.upper && x[j] > *var.upper)) {
      return fail("bound violated on variable " + std::to_string(j));
    }
  }
  Rational dual_objective;
  std::vector<Rational> reduced(n);
  for (const auto& term : lp.objective()) reduced[term.var] += term.coef;
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& c = lp.constraints()[i];
    const Rational lhs = LinearProgram::Evaluate(c.row, x);
    const Rational signed_dual = sense_sign * y[i];
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return fail("row " + std::to_string(i) + " violated");
        if (sgn(signed_dual) < 0) return fail("dual sign on row " + std::to_string(i));
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return fail("row " + std::to_string(i) + " violated");
        if (sgn(signed_dual) > 0) return fail("dual sign on row " + std::to_string(i));
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return fail("row " + std::to_string(i) + " violated");
        break;
    }
    if (sgn(y[i]) != 0 && lhs != c.rhs) {
      return fail("complementary slackness on row " + std::to_string(i));
    }
    dual_objective += y[i] * c.rhs;
    for (const auto& term : c.row) reduced[term.var] -= y[i] * term.coef;
  }
  for (int j = 0; j < n; ++j) {
    const Variable& var = lp.variables()[j];
    const int direction = sgn(Rational(sense_sign * reduced[j]));
    if (direction > 0 && !(var.upper && x[j] == *var.upper)) {
      return fail("reduced cost sign on variable " + std::to_string(j));
    }
    if (direction < 0 && !(var.lower && x[j] == *var.lower)) {
      return fail("reduced cost sign on variable " + std::to_string(j));
    }
    dual_objective += reduced[j] * x[j];
  }
  if (LinearProgram::Evaluate(lp.objective(), x) != solution.objective_value) {
    return fail("objective value does not match primal point");
  }
  if (dual_objective != solution.objective_value) {
    return fail("strong duality gap " + FormatRational(dual_objective - solution.objective_value));
  }
  return result;
}

CertificateCounters GlobalCertificateCounters() {
  return {g_checked.load(), g_violations.load()};
}

void ResetCertificateCounters() {
  g_checked = 0;
  g_violations = 0;
}

}  // namespace netbargain::lp
