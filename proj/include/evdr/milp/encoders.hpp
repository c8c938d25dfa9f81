#pragma once

#include <string>
#include <vector>

#include "evdr/milp/model.hpp"

namespace evdr::milp {

// Bounds used when relaxing an indicator: m_small <= expr <= m_big must hold
// whenever the indicator is off.
struct BigMConfig {
    double m_small; // <= 0
    double m_big;   // >= 0
};

// Derives the tightest valid big-M pair from current variable bounds.
// Throws SolverError when the expression is unbounded.
BigMConfig derive_big_m(const Model& model, const LinExpr& expr);

// x in {0} u [lo, hi] gated by binary b: adds b*lo <= x and x <= b*hi.
// x may be any linear expression.
void add_semicontinuous(Model& model, const std::string& tag, const LinExpr& x, VarId b,
                        double lo, double hi);

// y >= expr for every term; with positive objective pressure on y in a
// minimization, y settles at max(terms).
void add_epigraph_max(Model& model, const std::string& tag,
                      const std::vector<LinExpr>& terms, VarId y);

// b = 1 forces expr = 0; b = 0 leaves expr free within [m_small, m_big].
void add_indicator_eq(Model& model, const std::string& tag, VarId b, const LinExpr& expr,
                      const BigMConfig& cfg);

// Exact maximum: y == max(terms) at every integral-feasible point. Adds one
// selector binary per term; needed where a maximum earns a credit (appears
// with negative cost in a minimization), so the plain epigraph would let the
// solver overstate it.
std::vector<VarId> add_max_equality(Model& model, const std::string& tag,
                                    const std::vector<LinExpr>& terms, VarId y);

// Every maximal run of 1s in `b` must have length >= n_c; runs that cannot
// reach n_c before the end of the horizon are forbidden. Entries of -1 in `b`
// stand for positions fixed at 0. Returns the start-indicator binaries.
std::vector<VarId> add_min_consecutive(Model& model, const std::string& tag,
                                       const std::vector<VarId>& b, int n_c);

} // namespace evdr::milp
