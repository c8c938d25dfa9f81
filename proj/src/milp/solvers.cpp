#include "evdr/milp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "evdr/errors.hpp"
#include "evdr/milp/simplex.hpp"

namespace evdr::milp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// shared state for the tree searches
struct TreeContext {
    const Model& model;
    const SolveLimits& limits;
    LpProblem lp;
    std::unique_ptr<SimplexSolver> splx;
    std::vector<VarId> binaries; // all binary vars (fixed ones are skipped)
    Clock::time_point t0 = Clock::now();

    double best_obj = kInf; // in minimize-normalized LP space
    std::vector<double> best_x;
    bool have_incumbent = false;
    bool limit_hit = false;
    bool unbounded = false;
    long nodes = 0;
    double open_bound_floor = kInf; // lower bounds abandoned at the time limit

    explicit TreeContext(const Model& m, const SolveLimits& lim)
        : model(m), limits(lim), lp(m.to_lp()) {
        splx = std::make_unique<SimplexSolver>(lp);
        for (VarId v = 0; v < m.num_vars(); ++v)
            if (m.var(v).type == VarType::Binary)
                binaries.push_back(v);
    }

    bool out_of_time() const {
        return elapsed_s(t0) > limits.time_limit_s || nodes > limits.max_nodes;
    }

    void accept(double obj, const std::vector<double>& x) {
        if (!have_incumbent || obj < best_obj) {
            have_incumbent = true;
            best_obj = obj;
            best_x = x;
            // snap binaries exactly
            for (VarId v : binaries)
                best_x[v] = best_x[v] >= 0.5 ? 1.0 : 0.0;
        }
    }

    Solution finish() {
        Solution sol;
        sol.stats.nodes = nodes;
        sol.stats.simplex_iterations = splx->total_iterations();
        sol.stats.runtime_s = elapsed_s(t0);
        double sign = model.objective_sense() == ObjSense::Minimize ? 1.0 : -1.0;
        if (unbounded) {
            sol.status = SolutionStatus::Unbounded;
            return sol;
        }
        if (!have_incumbent) {
            sol.status = limit_hit ? SolutionStatus::Limit : SolutionStatus::Infeasible;
            return sol;
        }
        sol.status = limit_hit ? SolutionStatus::Limit : SolutionStatus::Optimal;
        sol.objective = sign * best_obj;
        sol.values = best_x;
        if (limit_hit) {
            double lb = std::min(open_bound_floor, best_obj);
            sol.stats.gap = (best_obj - lb) / std::max(1.0, std::abs(best_obj));
        }
        double viol = model.max_violation(sol.values);
        if (viol > kSolFeasTol)
            throw SolverError("solver produced an invalid solution (violation " +
                              std::to_string(viol) + ")");
        return sol;
    }
};

int most_fractional(const TreeContext& ctx, const std::vector<double>& x) {
    int pick = -1;
    double best_dist = kIntTol;
    for (VarId v : ctx.binaries) {
        if (ctx.splx->col_ub(v) - ctx.splx->col_lb(v) < 0.5)
            continue; // fixed at this node
        double frac = std::abs(x[v] - std::round(x[v]));
        if (frac > best_dist) {
            best_dist = frac;
            pick = v;
        }
    }
    return pick;
}

void branch_rec(TreeContext& ctx) {
    ctx.nodes++;
    LpResult res = ctx.splx->solve();
    if (res.status == LpStatus::Infeasible)
        return;
    if (res.status == LpStatus::Unbounded) {
        ctx.unbounded = true;
        return;
    }
    if (res.status != LpStatus::Optimal)
        throw SolverError("node relaxation did not solve to optimality");

    double bound = res.objective;
    if (ctx.have_incumbent) {
        double cutoff = ctx.best_obj -
                        std::max(ctx.limits.rel_gap * std::abs(ctx.best_obj), 1e-9);
        if (bound >= cutoff)
            return;
    }

    int v = most_fractional(ctx, res.x);
    if (v < 0) {
        ctx.accept(bound, res.x);
        return;
    }

    int first = res.x[v] >= 0.5 ? 1 : 0;
    double saved_lb = ctx.splx->col_lb(v), saved_ub = ctx.splx->col_ub(v);
    for (int k = 0; k < 2; ++k) {
        if (ctx.unbounded)
            break;
        if (ctx.limit_hit || ctx.out_of_time()) {
            // a child subtree stays unexplored; its bound is at least ours
            ctx.limit_hit = true;
            ctx.open_bound_floor = std::min(ctx.open_bound_floor, bound);
            break;
        }
        int side = k == 0 ? first : 1 - first;
        double fv = static_cast<double>(side);
        ctx.splx->set_col_bounds(v, fv, fv);
        branch_rec(ctx);
    }
    ctx.splx->set_col_bounds(v, saved_lb, saved_ub);
}

void enumerate_rec(TreeContext& ctx, size_t i, const std::vector<VarId>& free_bins) {
    if (ctx.out_of_time()) {
        ctx.limit_hit = true;
        return;
    }
    ctx.nodes++;
    LpResult res = ctx.splx->solve();
    if (res.status == LpStatus::Infeasible)
        return; // every completion of this partial assignment is infeasible
    if (res.status == LpStatus::Unbounded) {
        if (i == free_bins.size())
            ctx.unbounded = true;
        // keep walking: an unbounded relaxation may still fix to bounded leaves
    }
    if (i == free_bins.size()) {
        if (res.status == LpStatus::Optimal)
            ctx.accept(res.objective, res.x);
        return;
    }
    VarId v = free_bins[i];
    double saved_lb = ctx.splx->col_lb(v), saved_ub = ctx.splx->col_ub(v);
    for (int side = 0; side <= 1 && !ctx.limit_hit && !ctx.unbounded; ++side) {
        ctx.splx->set_col_bounds(v, side, side);
        enumerate_rec(ctx, i + 1, free_bins);
    }
    ctx.splx->set_col_bounds(v, saved_lb, saved_ub);
}

} // namespace

Solution BranchBoundSolver::solve(const Model& model, const SolveLimits& limits) {
    TreeContext ctx(model, limits);
    branch_rec(ctx);
    return ctx.finish();
}

Solution EnumerationSolver::solve(const Model& model, const SolveLimits& limits) {
    TreeContext ctx(model, limits);
    std::vector<VarId> free_bins = model.free_binaries();
    if (static_cast<int>(free_bins.size()) > max_binaries_)
        throw SolverError("enumeration backend limited to " +
                          std::to_string(max_binaries_) + " free binaries, model has " +
                          std::to_string(free_bins.size()));
    enumerate_rec(ctx, 0, free_bins);
    return ctx.finish();
}

ExternalSolver::ExternalSolver(std::string solver_path) : path_(std::move(solver_path)) {
    if (path_.empty())
        throw SolverError("external solver path is empty (set EVDR_SOLVER_PATH)");
}

Solution ExternalSolver::solve(const Model& model, const SolveLimits& limits) {
    namespace fs = std::filesystem;
    auto t0 = Clock::now();
    fs::path dir = fs::temp_directory_path() /
                   ("evdr_ext_" + std::to_string(::getpid()) + "_" +
                    std::to_string(Clock::now().time_since_epoch().count()));
    fs::create_directories(dir);
    fs::path lp_path = dir / "model.lp";
    fs::path sol_path = dir / "model.sol";
    {
        std::ofstream os(lp_path);
        model.write_lp(os);
    }
    std::string cmd = "'" + path_ + "' '" + lp_path.string() + "' '" + sol_path.string() +
                      "' > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc != 0)
        throw SolverError("external solver exited with status " + std::to_string(rc));
    std::ifstream is(sol_path);
    if (!is)
        throw SolverError("external solver produced no solution file");

    Solution sol;
    std::string status_word;
    is >> status_word;
    if (status_word == "optimal")
        sol.status = SolutionStatus::Optimal;
    else if (status_word == "infeasible")
        sol.status = SolutionStatus::Infeasible;
    else if (status_word == "unbounded")
        sol.status = SolutionStatus::Unbounded;
    else if (status_word == "limit")
        sol.status = SolutionStatus::Limit;
    else
        throw SolverError("external solver: unknown status '" + status_word + "'");

    std::string key;
    double reported_obj = 0.0;
    is >> key >> reported_obj;
    if (key != "objective")
        throw SolverError("external solver: malformed solution header");

    sol.values.assign(model.num_vars(), 0.0);
    std::string name;
    double value;
    while (is >> name >> value) {
        VarId v = model.find_var(name);
        if (v < 0)
            throw SolverError("external solver: unknown variable '" + name + "'");
        sol.values[v] = value;
    }
    fs::remove_all(dir);

    if (sol.status == SolutionStatus::Optimal || sol.status == SolutionStatus::Limit) {
        // recompute the objective from values; the wire value is advisory
        double obj = model.objective().constant();
        for (const auto& t : model.objective().terms())
            obj += t.coef * sol.values[t.var];
        sol.objective = obj;
        double viol = model.max_violation(sol.values);
        if (viol > kSolFeasTol)
            throw SolverError("external solver returned an infeasible point (violation " +
                              std::to_string(viol) + ")");
    } else {
        sol.values.clear();
    }
    sol.stats.runtime_s = elapsed_s(t0);
    (void)limits;
    return sol;
}

Solution solve(const Model& model, SolverBackend& backend, const SolveLimits& limits) {
    return backend.solve(model, limits);
}

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
    if (name == "reference" || name == "builtin" || name == "branch-bound")
        return std::make_unique<BranchBoundSolver>();
    if (name == "enumeration")
        return std::make_unique<EnumerationSolver>();
    if (name == "external") {
        const char* p = std::getenv("EVDR_SOLVER_PATH");
        return std::make_unique<ExternalSolver>(p ? p : "");
    }
    throw ConfigError("unknown solver backend '" + name + "'");
}

} // namespace evdr::milp
