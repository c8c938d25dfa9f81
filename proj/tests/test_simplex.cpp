#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "evdr/milp/simplex.hpp"

using namespace evdr::milp;

namespace {

// Independent oracle: enumerate every choice of n active hyperplanes from the
// rows (at lo or hi) and column bounds, solve the square system, keep the best
// feasible point. Valid for LPs whose variables are all boxed (the feasible
// set is a polytope, so an optimum sits on a vertex).
struct VertexOracle {
    enum class Status { Optimal, Infeasible };
    Status status = Status::Infeasible;
    double objective = 0.0;

    static VertexOracle run(const LpProblem& p) {
        const int n = p.num_cols;
        struct Plane {
            std::vector<double> a;
            double rhs;
        };
        std::vector<Plane> planes;
        for (int i = 0; i < p.num_rows; ++i) {
            std::vector<double> a(n, 0.0);
            for (int j = 0; j < n; ++j)
                for (const auto& e : p.cols[j])
                    if (e.row == i)
                        a[j] += e.value;
            if (std::isfinite(p.row_lo[i]))
                planes.push_back({a, p.row_lo[i]});
            if (std::isfinite(p.row_hi[i]) && p.row_hi[i] != p.row_lo[i])
                planes.push_back({a, p.row_hi[i]});
        }
        for (int j = 0; j < n; ++j) {
            std::vector<double> a(n, 0.0);
            a[j] = 1.0;
            planes.push_back({a, p.col_lb[j]});
            if (p.col_ub[j] != p.col_lb[j])
                planes.push_back({a, p.col_ub[j]});
        }

        VertexOracle out;
        std::vector<int> idx(n);
        const int np = static_cast<int>(planes.size());
        std::vector<int> stack;
        // iterate all n-subsets of planes
        std::vector<int> comb(n);
        for (int i = 0; i < n; ++i)
            comb[i] = i;
        if (np < n)
            return out;
        while (true) {
            Eigen::MatrixXd A(n, n);
            Eigen::VectorXd b(n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c)
                    A(r, c) = planes[comb[r]].a[c];
                b(r) = planes[comb[r]].rhs;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (lu.isInvertible()) {
                Eigen::VectorXd x = lu.solve(b);
                if (feasible(p, x)) {
                    double obj = p.obj_offset;
                    for (int j = 0; j < n; ++j)
                        obj += p.obj[j] * x(j);
                    if (out.status == Status::Infeasible || obj < out.objective) {
                        out.status = Status::Optimal;
                        out.objective = obj;
                    }
                }
            }
            // next combination
            int i = n - 1;
            while (i >= 0 && comb[i] == np - n + i)
                --i;
            if (i < 0)
                break;
            ++comb[i];
            for (int k = i + 1; k < n; ++k)
                comb[k] = comb[k - 1] + 1;
        }
        return out;
    }

    static bool feasible(const LpProblem& p, const Eigen::VectorXd& x) {
        const double tol = 1e-7;
        for (int j = 0; j < p.num_cols; ++j)
            if (x(j) < p.col_lb[j] - tol || x(j) > p.col_ub[j] + tol)
                return false;
        for (int i = 0; i < p.num_rows; ++i) {
            double act = 0.0;
            for (int j = 0; j < p.num_cols; ++j)
                for (const auto& e : p.cols[j])
                    if (e.row == i)
                        act += e.value * x(j);
            if (act < p.row_lo[i] - tol || act > p.row_hi[i] + tol)
                return false;
        }
        return true;
    }
};

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }
};

} // namespace

TEST_CASE("textbook maximum via negated objective") {
    LpProblem p;
    int x = p.add_col(0, kInf, -3.0);
    int y = p.add_col(0, kInf, -5.0);
    int r0 = p.add_row(-kInf, 4.0);
    p.set_entry(r0, x, 1.0);
    int r1 = p.add_row(-kInf, 12.0);
    p.set_entry(r1, y, 2.0);
    int r2 = p.add_row(-kInf, 18.0);
    p.set_entry(r2, x, 3.0);
    p.set_entry(r2, y, 2.0);

    SimplexSolver s(p);
    auto res = s.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-36.0).epsilon(1e-9));
    CHECK(res.x[x] == doctest::Approx(2.0));
    CHECK(res.x[y] == doctest::Approx(6.0));
}

TEST_CASE("equality rows and free variables") {
    // min x  s.t.  x - y = -5,  y in [0, 10],  x free
    LpProblem p;
    int x = p.add_col(-kInf, kInf, 1.0);
    int y = p.add_col(0, 10, 0.0);
    int r = p.add_row(-5.0, -5.0);
    p.set_entry(r, x, 1.0);
    p.set_entry(r, y, -1.0);
    SimplexSolver s(p);
    auto res = s.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-5.0));
    CHECK(res.x[x] == doctest::Approx(-5.0));
}

TEST_CASE("ranged row") {
    // min x + 2y  s.t.  1 <= x + y <= 2,  x,y in [0,5]
    LpProblem p;
    int x = p.add_col(0, 5, 1.0);
    int y = p.add_col(0, 5, 2.0);
    int r = p.add_row(1.0, 2.0);
    p.set_entry(r, x, 1.0);
    p.set_entry(r, y, 1.0);
    SimplexSolver s(p);
    auto res = s.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.0));
}

TEST_CASE("infeasible box") {
    LpProblem p;
    int x = p.add_col(0, 1, 1.0);
    int r = p.add_row(2.0, kInf);
    p.set_entry(r, x, 1.0);
    SimplexSolver s(p);
    CHECK(s.solve().status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray") {
    LpProblem p;
    int x = p.add_col(0, kInf, -1.0);
    int r = p.add_row(-kInf, kInf);
    p.set_entry(r, x, 1.0);
    SimplexSolver s(p);
    CHECK(s.solve().status == LpStatus::Unbounded);
}

TEST_CASE("objective offset and fixed columns") {
    LpProblem p;
    p.obj_offset = 7.5;
    int x = p.add_col(2, 2, 3.0); // fixed
    int y = p.add_col(0, 4, 1.0);
    int r = p.add_row(3.0, kInf);
    p.set_entry(r, x, 1.0);
    p.set_entry(r, y, 1.0);
    SimplexSolver s(p);
    auto res = s.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.x[x] == doctest::Approx(2.0));
    CHECK(res.x[y] == doctest::Approx(1.0));
    CHECK(res.objective == doctest::Approx(7.5 + 6.0 + 1.0));
}

TEST_CASE("degenerate vertex") {
    // several constraints meet at the optimum
    LpProblem p;
    int x = p.add_col(0, 10, -1.0);
    int y = p.add_col(0, 10, -1.0);
    int r0 = p.add_row(-kInf, 4.0);
    p.set_entry(r0, x, 1.0);
    p.set_entry(r0, y, 1.0);
    int r1 = p.add_row(-kInf, 8.0); // same facet as r0, scaled
    p.set_entry(r1, x, 2.0);
    p.set_entry(r1, y, 2.0);
    int r2 = p.add_row(-kInf, 2.0);
    p.set_entry(r2, x, 1.0);
    SimplexSolver s(p);
    auto res = s.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-4.0));
}

TEST_CASE("randomized boxed LPs agree with vertex enumeration") {
    Rng rng(0x5eed5eedULL);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = rng.uniform_int(2, 4);
        int m = rng.uniform_int(1, 5);
        LpProblem p;
        for (int j = 0; j < n; ++j) {
            double ub = rng.uniform_int(1, 5);
            double c = rng.uniform_int(-4, 4);
            p.add_col(0.0, ub, c);
        }
        for (int i = 0; i < m; ++i) {
            int kind = rng.uniform_int(0, 3); // <=, >=, ==, range
            double b1 = rng.uniform_int(-4, 8);
            double b2 = b1 + rng.uniform_int(0, 4);
            int r;
            if (kind == 0)
                r = p.add_row(-kInf, b2);
            else if (kind == 1)
                r = p.add_row(b1, kInf);
            else if (kind == 2)
                r = p.add_row(b1, b1);
            else
                r = p.add_row(b1, b2);
            for (int j = 0; j < n; ++j) {
                int coef = rng.uniform_int(-3, 3);
                if (coef != 0)
                    p.set_entry(r, j, coef);
            }
        }
        auto oracle = VertexOracle::run(p);
        SimplexSolver s(p);
        auto res = s.solve();
        INFO("trial ", trial);
        if (oracle.status == VertexOracle::Status::Optimal) {
            ++optimal_seen;
            REQUIRE(res.status == LpStatus::Optimal);
            REQUIRE(res.objective == doctest::Approx(oracle.objective).epsilon(1e-7));
        } else {
            ++infeasible_seen;
            REQUIRE(res.status == LpStatus::Infeasible);
        }
    }
    // both classes must actually be exercised
    CHECK(optimal_seen > 50);
    CHECK(infeasible_seen > 20);
}

TEST_CASE("warm restart after bound change matches fresh solve") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        int n = rng.uniform_int(2, 4);
        LpProblem p;
        for (int j = 0; j < n; ++j)
            p.add_col(0.0, 3.0, rng.uniform_int(-3, 3));
        int r = p.add_row(1.0, 5.0);
        for (int j = 0; j < n; ++j)
            p.set_entry(r, j, 1.0);

        SimplexSolver warm(p);
        REQUIRE(warm.solve().status == LpStatus::Optimal);
        // now fix the first column to 1 and re-solve warm vs fresh
        warm.set_col_bounds(0, 1.0, 1.0);
        auto res_warm = warm.solve();

        LpProblem p2 = p;
        p2.col_lb[0] = 1.0;
        p2.col_ub[0] = 1.0;
        SimplexSolver fresh(p2);
        auto res_fresh = fresh.solve();
        REQUIRE(res_warm.status == res_fresh.status);
        if (res_warm.status == LpStatus::Optimal)
            CHECK(res_warm.objective == doctest::Approx(res_fresh.objective).epsilon(1e-8));
    }
}
