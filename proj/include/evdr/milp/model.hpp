#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "evdr/milp/simplex.hpp"

namespace evdr::milp {

using VarId = int;
using ConId = int;

enum class VarType { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };
enum class ObjSense { Minimize, Maximize };

struct LinTerm {
    VarId var;
    double coef;
};

// Sparse linear expression: sum of coef*var plus a constant.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(double c) : constant_(c) {} // NOLINT: implicit by design

    LinExpr& add(VarId v, double coef);
    LinExpr& add(const LinExpr& other, double scale = 1.0);
    LinExpr& add_constant(double c) {
        constant_ += c;
        return *this;
    }

    const std::vector<LinTerm>& terms() const { return terms_; }
    double constant() const { return constant_; }

    // merges duplicate variables, drops zero coefficients
    void normalize();

private:
    std::vector<LinTerm> terms_;
    double constant_ = 0.0;
};

struct Variable {
    std::string name;
    VarType type;
    double lb;
    double ub;
};

struct Constraint {
    std::string name;
    LinExpr expr; // constant folded into rhs at add time
    Sense sense;
    double rhs;
};

struct SolveStats {
    long nodes = 0;
    long simplex_iterations = 0;
    double runtime_s = 0.0;
    double gap = 0.0; // relative; 0 when proven optimal
};

enum class SolutionStatus { Optimal, Infeasible, Unbounded, Limit };

struct Solution {
    SolutionStatus status = SolutionStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values; // indexed by VarId
    SolveStats stats;

    double value(VarId v) const { return values[static_cast<size_t>(v)]; }
};

// Solver-agnostic mixed-integer linear model. Problems 1-5 all compile into
// this representation; backends consume it read-only.
class Model {
public:
    VarId add_continuous(const std::string& name, double lb, double ub);
    VarId add_binary(const std::string& name);
    ConId add_constraint(const std::string& name, LinExpr expr, Sense sense, double rhs);

    void set_objective(LinExpr expr, ObjSense sense);
    void add_objective_term(VarId v, double coef);
    void add_objective_constant(double c);

    void set_var_bounds(VarId v, double lb, double ub);
    void fix_var(VarId v, double value) { set_var_bounds(v, value, value); }

    int num_vars() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(cons_.size()); }
    const Variable& var(VarId v) const { return vars_[static_cast<size_t>(v)]; }
    const std::vector<Variable>& vars() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    const LinExpr& objective() const { return objective_; }
    ObjSense objective_sense() const { return obj_sense_; }

    VarId find_var(const std::string& name) const; // -1 when absent

    // binaries whose bounds still span {0,1}
    std::vector<VarId> free_binaries() const;

    // interval bounds of an expression implied by current variable bounds
    std::pair<double, double> expr_bounds(const LinExpr& e) const;

    // largest constraint/bound/integrality violation of a candidate point
    double max_violation(const std::vector<double>& values) const;

    // CPLEX LP text format, for debugging and the external solver adapter
    void write_lp(std::ostream& os) const;

    // continuous relaxation in computational form; vars map 1:1 to columns
    LpProblem to_lp() const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    std::map<std::string, VarId> by_name_;
    LinExpr objective_;
    ObjSense obj_sense_ = ObjSense::Minimize;
};

} // namespace evdr::milp
