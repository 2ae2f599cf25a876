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

#ifndef NETBARGAIN_LP_H_
#define NETBARGAIN_LP_H_

// Exact rational linear programming.
//
// A dense two-phase tableau simplex with Bland's rule. Every optimal
// solution carries a dual vector and is checked for primal feasibility,
// dual feasibility, complementary slackness and strong duality before it is
// returned; the outcome of each check is recorded in process-wide counters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbargain/rational.h"

namespace netbargain::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMaximize, kMinimize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Term {
  int var;
  Rational coef;
};
using LinearExpr = std::vector<Term>;

struct Variable {
  std::string name;
  std::optional<Rational> lower;  // nullopt is -infinity
  std::optional<Rational> upper;  // nullopt is +infinity
};

struct Constraint {
  std::string name;
  LinearExpr row;
  Relation relation;
  Rational rhs;
};

class LinearProgram {
 public:
  // Variables default to [0, +inf).
  int AddVariable(std::string name, std::optional<Rational> lower = Rational(0),
                  std::optional<Rational> upper = std::nullopt);
  int AddConstraint(LinearExpr row, Relation relation, Rational rhs, std::string name = {});
  void SetObjective(Sense sense, LinearExpr objective);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const LinearExpr& objective() const { return objective_; }

  // Value of `expr` at `point`.
  static Rational Evaluate(const LinearExpr& expr, const std::vector<Rational>& point);

 private:
  LinearExpr Normalize(LinearExpr expr) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::kMaximize;
  LinearExpr objective_;
};

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<Rational> primal;  // indexed by variable
  // Shadow prices, indexed by constraint: the rate of change of the optimal
  // objective per unit increase of that constraint's right-hand side.
  std::vector<Rational> dual;
  Rational objective_value;
  int pivots = 0;
};

Solution Solve(const LinearProgram& lp);

// Maximizes `probe` over the optimal face of `lp`, i.e. over the feasible
// points whose objective equals `fixed_value`. Throws kInfeasibleFace when
// the face is empty and kUnboundedFace when the probe is unbounded on it.
Solution SolveOverFace(const LinearProgram& lp, const Rational& fixed_value,
                       const LinearExpr& probe);
Rational MaxOverFace(const LinearProgram& lp, const Rational& fixed_value,
                     const LinearExpr& probe);

struct CertificateCheck {
  bool ok = true;
  std::string failure;
};

// Verifies an optimal (primal, dual) pair exactly.
CertificateCheck CheckCertificate(const LinearProgram& lp, const Solution& solution);

struct CertificateCounters {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
CertificateCounters GlobalCertificateCounters();
void ResetCertificateCounters();

}  // namespace netbargain::lp

#endif  // NETBARGAIN_LP_H_
