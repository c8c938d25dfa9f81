#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace evdr::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Continuous LP in ranged-row form:
//   minimize c'x + c0   subject to   row_lo <= A x <= row_hi,  lb <= x <= ub
// Binaries are not known at this layer; the MIP layer relaxes/fixes them
// through column bounds.
struct LpProblem {
    struct Entry {
        int row;
        double value;
    };

    int num_cols = 0;
    int num_rows = 0;
    std::vector<std::vector<Entry>> cols; // column-major coefficients
    std::vector<double> col_lb, col_ub;
    std::vector<double> obj; // per-column cost
    double obj_offset = 0.0;
    std::vector<double> row_lo, row_hi;

    int add_col(double lb, double ub, double cost);
    int add_row(double lo, double hi);
    void set_entry(int row, int col, double value);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, NumericalError };

struct LpResult {
    LpStatus status = LpStatus::NumericalError;
    double objective = 0.0;
    std::vector<double> x; // structural column values
    long iterations = 0;
};

// Bounded-variable revised primal simplex. Phase 1 runs a composite
// infeasibility-minimizing pass from whatever basis is current, so a solver
// instance can be reused across bound changes (branch-and-bound warm starts).
class SimplexSolver {
public:
    explicit SimplexSolver(const LpProblem& prob);
    ~SimplexSolver();
    SimplexSolver(const SimplexSolver&) = delete;
    SimplexSolver& operator=(const SimplexSolver&) = delete;

    // Column bounds may be tightened/relaxed between solves; the basis is kept.
    void set_col_bounds(int col, double lb, double ub);
    double col_lb(int col) const;
    double col_ub(int col) const;

    LpResult solve();
    void reset_basis();

    long total_iterations() const { return total_iterations_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    long total_iterations_ = 0;
};

} // namespace evdr::milp
