#include "evdr/milp/simplex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cassert>
#include <cmath>

#include "evdr/errors.hpp"

namespace evdr::milp {

int LpProblem::add_col(double lb, double ub, double cost) {
    cols.emplace_back();
    col_lb.push_back(lb);
    col_ub.push_back(ub);
    obj.push_back(cost);
    return num_cols++;
}

int LpProblem::add_row(double lo, double hi) {
    row_lo.push_back(lo);
    row_hi.push_back(hi);
    return num_rows++;
}

void LpProblem::set_entry(int row, int col, double value) {
    if (value != 0.0)
        cols[col].push_back({row, value});
}

namespace {

constexpr double kFeasTol = 1e-8;   // bound violation tolerance
constexpr double kDualTol = 1e-9;   // reduced-cost tolerance
constexpr double kPivotTol = 1e-8;  // smallest acceptable pivot magnitude
constexpr double kZeroTol = 1e-12;
constexpr int kRefactorEvery = 64;
constexpr int kStallLimit = 400; // degenerate iterations before Bland's rule

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

} // namespace

struct SimplexSolver::Impl {
    const LpProblem& prob;
    int n;     // structural columns
    int m;     // rows (= slack columns)
    int total; // n + m

    std::vector<double> lb, ub, cost;
    std::vector<VarState> state;
    std::vector<int> basic;        // basic[i] = column occupying row i
    std::vector<double> x;         // current value of every column
    std::vector<double> phase1_cb; // per-row phase-1 cost of the basic var

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    bool factor_valid = false;
    struct Eta {
        int r;
        Eigen::VectorXd w;
    };
    std::vector<Eta> etas;

    long iterations = 0;

    explicit Impl(const LpProblem& p) : prob(p) {
        n = p.num_cols;
        m = p.num_rows;
        total = n + m;
        lb.resize(total);
        ub.resize(total);
        cost.assign(total, 0.0);
        for (int j = 0; j < n; ++j) {
            lb[j] = p.col_lb[j];
            ub[j] = p.col_ub[j];
            cost[j] = p.obj[j];
        }
        for (int i = 0; i < m; ++i) {
            lb[n + i] = p.row_lo[i];
            ub[n + i] = p.row_hi[i];
        }
        state.assign(total, VarState::AtLower);
        basic.resize(m);
        x.assign(total, 0.0);
        reset_basis();
    }

    // --- column access (structural from problem, slack virtual) ---
    template <typename Fn>
    void for_col(int j, Fn&& fn) const {
        if (j < n) {
            for (const auto& e : prob.cols[j])
                fn(e.row, e.value);
        } else {
            fn(j - n, -1.0);
        }
    }

    double col_dot(int j, const Eigen::VectorXd& y) const {
        double acc = 0.0;
        for_col(j, [&](int r, double v) { acc += v * y[r]; });
        return acc;
    }

    void snap_nonbasic(int j) {
        bool lo_fin = std::isfinite(lb[j]);
        bool hi_fin = std::isfinite(ub[j]);
        if (state[j] == VarState::AtLower && !lo_fin)
            state[j] = hi_fin ? VarState::AtUpper : VarState::FreeZero;
        else if (state[j] == VarState::AtUpper && !hi_fin)
            state[j] = lo_fin ? VarState::AtLower : VarState::FreeZero;
        else if (state[j] == VarState::FreeZero && (lo_fin || hi_fin))
            state[j] = lo_fin ? VarState::AtLower : VarState::AtUpper;
        switch (state[j]) {
        case VarState::AtLower: x[j] = lb[j]; break;
        case VarState::AtUpper: x[j] = ub[j]; break;
        case VarState::FreeZero: x[j] = 0.0; break;
        case VarState::Basic: break;
        }
    }

    void reset_basis() {
        for (int j = 0; j < total; ++j)
            state[j] = VarState::AtLower;
        for (int i = 0; i < m; ++i) {
            basic[i] = n + i;
            state[n + i] = VarState::Basic;
        }
        for (int j = 0; j < n; ++j)
            snap_nonbasic(j);
        factor_valid = false;
    }

    bool factorize() {
        Eigen::SparseMatrix<double> B(m, m);
        std::vector<Eigen::Triplet<double>> trips;
        for (int i = 0; i < m; ++i)
            for_col(basic[i], [&](int r, double v) { trips.emplace_back(r, i, v); });
        B.setFromTriplets(trips.begin(), trips.end());
        lu.compute(B);
        etas.clear();
        factor_valid = lu.info() == Eigen::Success;
        return factor_valid;
    }

    // y <- B^{-1} y
    void ftran(Eigen::VectorXd& y) {
        y = lu.solve(y);
        for (const auto& e : etas) {
            double t = y[e.r] / e.w[e.r];
            if (t != 0.0)
                y -= t * e.w;
            y[e.r] = t;
        }
    }

    // y <- B^{-T} y
    void btran(Eigen::VectorXd& y) {
        for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
            double s = (it->w.dot(y) - y[it->r]) / it->w[it->r];
            y[it->r] -= s;
        }
        y = lu.adjoint().solve(y);
    }

    void compute_basic_values() {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < total; ++j) {
            if (state[j] == VarState::Basic || x[j] == 0.0)
                continue;
            for_col(j, [&](int r, double v) { rhs[r] -= v * x[j]; });
        }
        ftran(rhs);
        for (int i = 0; i < m; ++i)
            x[basic[i]] = rhs[i];
    }

    double infeasibility() const {
        double total_inf = 0.0;
        for (int i = 0; i < m; ++i) {
            double v = x[basic[i]];
            total_inf += std::max(0.0, v - ub[basic[i]]);
            total_inf += std::max(0.0, lb[basic[i]] - v);
        }
        return total_inf;
    }

    // phase-1 cost of basic position i: +1 above upper, -1 below lower
    void build_phase1_costs() {
        phase1_cb.assign(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double v = x[basic[i]];
            if (v > ub[basic[i]] + kFeasTol)
                phase1_cb[i] = 1.0;
            else if (v < lb[basic[i]] - kFeasTol)
                phase1_cb[i] = -1.0;
        }
    }

    LpResult run() {
        if (m == 0) {
            // no constraints: every column sits at its cheapest bound
            LpResult res;
            res.x.resize(n);
            double obj = prob.obj_offset;
            for (int j = 0; j < n; ++j) {
                double v;
                if (cost[j] > 0.0)
                    v = lb[j];
                else if (cost[j] < 0.0)
                    v = ub[j];
                else
                    v = std::isfinite(lb[j]) ? lb[j] : (std::isfinite(ub[j]) ? ub[j] : 0.0);
                if (!std::isfinite(v))
                    return {LpStatus::Unbounded, 0.0, {}, iterations};
                res.x[j] = v;
                obj += cost[j] * v;
            }
            res.status = LpStatus::Optimal;
            res.objective = obj;
            res.iterations = iterations;
            return res;
        }
        if (!factor_valid && !factorize()) {
            reset_basis();
            if (!factorize())
                return {LpStatus::NumericalError, 0.0, {}, iterations};
        }
        for (int j = 0; j < total; ++j)
            if (state[j] != VarState::Basic)
                snap_nonbasic(j);
        compute_basic_values();

        const long max_iter = 20000 + 200L * (m + n);
        bool bland = false;
        int stall = 0;
        int phase = 1;
        Eigen::VectorXd y(m), w(m);

        for (long iter = 0; iter < max_iter; ++iter, ++iterations) {
            if (phase == 1 && infeasibility() <= kFeasTol * (1.0 + m * 0.01))
                phase = 2;

            // duals for the current phase's costs on the basics
            if (phase == 1) {
                build_phase1_costs();
                for (int i = 0; i < m; ++i)
                    y[i] = phase1_cb[i];
            } else {
                for (int i = 0; i < m; ++i)
                    y[i] = cost[basic[i]];
            }
            btran(y);

            // pricing
            int enter = -1, dir = 0;
            double best = 0.0;
            for (int j = 0; j < total; ++j) {
                VarState st = state[j];
                if (st == VarState::Basic)
                    continue;
                if (ub[j] - lb[j] <= kZeroTol && st != VarState::FreeZero)
                    continue; // fixed column
                double cj = phase == 1 ? 0.0 : cost[j];
                double d = cj - col_dot(j, y);
                int cand_dir = 0;
                if ((st == VarState::AtLower || st == VarState::FreeZero) && d < -kDualTol)
                    cand_dir = +1;
                else if ((st == VarState::AtUpper || st == VarState::FreeZero) && d > kDualTol)
                    cand_dir = -1;
                if (cand_dir == 0)
                    continue;
                if (bland) {
                    enter = j;
                    dir = cand_dir;
                    break;
                }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    enter = j;
                    dir = cand_dir;
                }
            }

            if (enter < 0) {
                if (phase == 1 && infeasibility() > kFeasTol * (1.0 + m * 0.01))
                    return finish(LpStatus::Infeasible);
                return finish(LpStatus::Optimal);
            }

            // direction of basics per unit entering move
            w.setZero();
            for_col(enter, [&](int r, double v) { w[r] = v; });
            ftran(w);

            // ratio test; step limited by the entering column's own range
            double limit = kInf;
            if (dir > 0 && std::isfinite(ub[enter]))
                limit = ub[enter] - x[enter];
            else if (dir < 0 && std::isfinite(lb[enter]))
                limit = x[enter] - lb[enter];

            double best_step = limit;
            int leave = -1;
            double leave_pivot = 0.0;
            bool leave_at_upper = false;
            for (int i = 0; i < m; ++i) {
                if (std::abs(w[i]) < kPivotTol)
                    continue;
                double rate = -dir * w[i]; // dx_basic[i] per unit step
                int bj = basic[i];
                double v = x[bj], l = lb[bj], u = ub[bj];
                double step;
                bool at_upper;
                if (phase == 1 && v > u + kFeasTol) {
                    if (rate >= 0)
                        continue; // moving further above: no block
                    step = (u - v) / rate;
                    at_upper = true;
                } else if (phase == 1 && v < l - kFeasTol) {
                    if (rate <= 0)
                        continue;
                    step = (l - v) / rate;
                    at_upper = false;
                } else if (rate > 0) {
                    if (!std::isfinite(u))
                        continue;
                    step = (u - v) / rate;
                    at_upper = true;
                } else {
                    if (!std::isfinite(l))
                        continue;
                    step = (l - v) / rate;
                    at_upper = false;
                }
                if (step < 0)
                    step = 0; // tolerance drift
                bool better;
                if (bland)
                    better = step < best_step - kZeroTol ||
                             (leave >= 0 && step < best_step + kZeroTol && bj < basic[leave]);
                else
                    better = step < best_step - kZeroTol ||
                             (step < best_step + kZeroTol &&
                              std::abs(w[i]) > std::abs(leave_pivot));
                if (leave < 0 && step <= best_step)
                    better = true;
                if (better) {
                    best_step = std::min(step, best_step);
                    leave = i;
                    leave_pivot = w[i];
                    leave_at_upper = at_upper;
                }
            }

            if (leave < 0 && !std::isfinite(best_step)) {
                if (phase == 2)
                    return finish(LpStatus::Unbounded);
                // a phase-1 ray cannot exist; refactorize and retry once
                if (!etas.empty()) {
                    factorize();
                    compute_basic_values();
                    continue;
                }
                return finish(LpStatus::NumericalError);
            }

            double step = best_step;
            // apply the move
            if (step != 0.0) {
                for (int i = 0; i < m; ++i)
                    if (std::abs(w[i]) > kZeroTol)
                        x[basic[i]] -= dir * step * w[i];
            }

            if (leave < 0) {
                // bound flip: entering travels to its opposite bound
                state[enter] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
                x[enter] = dir > 0 ? ub[enter] : lb[enter];
            } else {
                int out = basic[leave];
                x[out] = leave_at_upper ? ub[out] : lb[out];
                state[out] = leave_at_upper ? VarState::AtUpper : VarState::AtLower;
                x[enter] += dir * step;
                state[enter] = VarState::Basic;
                basic[leave] = enter;
                etas.push_back({leave, w});
                if (static_cast<int>(etas.size()) >= kRefactorEvery) {
                    if (!factorize())
                        return finish(LpStatus::NumericalError);
                    compute_basic_values();
                }
            }

            if (step <= kZeroTol) {
                if (++stall > kStallLimit)
                    bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
        return finish(LpStatus::IterLimit);
    }

    LpResult finish(LpStatus status) {
        // refresh basics from scratch so reported values carry minimal drift
        if (status == LpStatus::Optimal || status == LpStatus::IterLimit) {
            if (!etas.empty()) {
                factorize();
                compute_basic_values();
            }
        }
        if (status == LpStatus::Optimal && infeasibility() > 1e-6)
            status = LpStatus::NumericalError; // caller retries from a clean basis
        LpResult res;
        res.status = status;
        res.iterations = iterations;
        if (status == LpStatus::Optimal || status == LpStatus::IterLimit) {
            res.x.assign(x.begin(), x.begin() + n);
            double obj = prob.obj_offset;
            for (int j = 0; j < n; ++j)
                obj += prob.obj[j] * x[j];
            res.objective = obj;
        }
        return res;
    }
};

SimplexSolver::SimplexSolver(const LpProblem& prob) : impl_(std::make_unique<Impl>(prob)) {}
SimplexSolver::~SimplexSolver() = default;

void SimplexSolver::set_col_bounds(int col, double lb, double ub) {
    impl_->lb[col] = lb;
    impl_->ub[col] = ub;
}

double SimplexSolver::col_lb(int col) const { return impl_->lb[col]; }
double SimplexSolver::col_ub(int col) const { return impl_->ub[col]; }

void SimplexSolver::reset_basis() { impl_->reset_basis(); }

LpResult SimplexSolver::solve() {
    LpResult res = impl_->run();
    total_iterations_ = impl_->iterations;
    if (res.status == LpStatus::NumericalError) {
        // one clean retry from the all-slack basis
        impl_->reset_basis();
        res = impl_->run();
        total_iterations_ = impl_->iterations;
        if (res.status == LpStatus::NumericalError)
            throw SolverError("simplex failed to converge (numerical error)");
    }
    return res;
}

} // namespace evdr::milp
