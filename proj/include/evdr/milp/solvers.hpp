#pragma once

#include <memory>
#include <string>

#include "evdr/milp/model.hpp"

namespace evdr::milp {

struct SolveLimits {
    double time_limit_s = 300.0;
    double rel_gap = 1e-4;
    long max_nodes = 50'000'000;
};

// binaries are accepted as integral within this tolerance
inline constexpr double kIntTol = 1e-6;
// constraint replay tolerance for accepted solutions
inline constexpr double kSolFeasTol = 1e-6;

// Adapter contract: load a model, solve under limits, report status/values.
// Implementations must state whether an instance may be shared across threads;
// the bundled backends are single-thread-per-instance.
class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual Solution solve(const Model& model, const SolveLimits& limits) = 0;
};

// LP-based branch and bound over the binary variables. Depth-first with
// round-toward-incumbent child ordering and warm-started simplex re-solves.
class BranchBoundSolver : public SolverBackend {
public:
    std::string name() const override { return "branch-bound"; }
    Solution solve(const Model& model, const SolveLimits& limits) override;
};

// Reference backend: walks the full binary assignment tree (pruning only
// LP-infeasible subtrees) and solves the continuous remainder at each leaf.
// Exact, and deliberately free of objective-based pruning so it can serve as
// the oracle for the primary backend.
class EnumerationSolver : public SolverBackend {
public:
    explicit EnumerationSolver(int max_binaries = 24) : max_binaries_(max_binaries) {}
    std::string name() const override { return "enumeration"; }
    Solution solve(const Model& model, const SolveLimits& limits) override;

private:
    int max_binaries_;
};

// Shells out to `<solver_path> <model.lp> <solution_out>`. The solution file
// contract: first line a status word (optimal|infeasible|unbounded|limit),
// second line `objective <value>`, then one `<variable> <value>` pair per
// line. Unlisted variables default to 0.
class ExternalSolver : public SolverBackend {
public:
    explicit ExternalSolver(std::string solver_path);
    std::string name() const override { return "external"; }
    Solution solve(const Model& model, const SolveLimits& limits) override;

private:
    std::string path_;
};

Solution solve(const Model& model, SolverBackend& backend, const SolveLimits& limits = {});

// named backend factory: "reference" -> branch-bound, "enumeration",
// "external" (resolves EVDR_SOLVER_PATH)
std::unique_ptr<SolverBackend> make_backend(const std::string& name);

} // namespace evdr::milp
