#include "evdr/milp/encoders.hpp"

#include <algorithm>
#include <cmath>

#include "evdr/errors.hpp"

namespace evdr::milp {

BigMConfig derive_big_m(const Model& model, const LinExpr& expr) {
    auto [lo, hi] = model.expr_bounds(expr);
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw SolverError("cannot derive big-M bounds: expression is unbounded");
    return {std::min(lo, 0.0), std::max(hi, 0.0)};
}

void add_semicontinuous(Model& model, const std::string& tag, const LinExpr& x, VarId b,
                        double lo, double hi) {
    if (lo < 0.0 || lo > hi)
        throw SolverError("semicontinuous '" + tag + "': invalid bounds [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    LinExpr lower = x;
    lower.add(b, -lo);
    model.add_constraint(tag + "_lo", std::move(lower), Sense::GreaterEqual, 0.0);
    LinExpr upper = x;
    upper.add(b, -hi);
    model.add_constraint(tag + "_hi", std::move(upper), Sense::LessEqual, 0.0);
}

void add_epigraph_max(Model& model, const std::string& tag,
                      const std::vector<LinExpr>& terms, VarId y) {
    if (terms.empty())
        throw SolverError("epigraph max '" + tag + "': no terms");
    int k = 0;
    for (const auto& term : terms) {
        LinExpr e = term;
        e.add(y, -1.0);
        model.add_constraint(tag + "_t" + std::to_string(k++), std::move(e),
                             Sense::LessEqual, 0.0);
    }
}

void add_indicator_eq(Model& model, const std::string& tag, VarId b, const LinExpr& expr,
                      const BigMConfig& cfg) {
    if (cfg.m_small > 0.0 || cfg.m_big < 0.0)
        throw SolverError("indicator '" + tag + "': big-M must satisfy m_small <= 0 <= m_big");
    // expr <= m_big*(1-b)  and  expr >= m_small*(1-b)
    LinExpr hi = expr;
    hi.add(b, cfg.m_big);
    model.add_constraint(tag + "_hi", std::move(hi), Sense::LessEqual, cfg.m_big);
    LinExpr lo = expr;
    lo.add(b, cfg.m_small);
    model.add_constraint(tag + "_lo", std::move(lo), Sense::GreaterEqual, cfg.m_small);
}

std::vector<VarId> add_max_equality(Model& model, const std::string& tag,
                                    const std::vector<LinExpr>& terms, VarId y) {
    if (terms.empty())
        throw SolverError("max equality '" + tag + "': no terms");
    double global_hi = -kInf, global_lo = -kInf;
    std::vector<std::pair<double, double>> bounds;
    bounds.reserve(terms.size());
    for (const auto& term : terms) {
        auto [lo, hi] = model.expr_bounds(term);
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw SolverError("max equality '" + tag + "': term is unbounded");
        bounds.push_back({lo, hi});
        global_hi = std::max(global_hi, hi);
        global_lo = std::max(global_lo, lo); // max of lower bounds: y >= every term
    }
    model.set_var_bounds(y, global_lo, global_hi);

    std::vector<VarId> selectors;
    LinExpr pick_one;
    for (size_t k = 0; k < terms.size(); ++k) {
        LinExpr above = terms[k];
        above.add(y, -1.0);
        model.add_constraint(tag + "_lo" + std::to_string(k), std::move(above),
                             Sense::LessEqual, 0.0);
        VarId z = model.add_binary(tag + "_sel" + std::to_string(k));
        selectors.push_back(z);
        // y <= term_k + M_k when deselected, y <= term_k when selected
        double big = global_hi - bounds[k].first;
        LinExpr cap;
        cap.add(y, 1.0);
        cap.add(terms[k], -1.0);
        cap.add(z, big);
        model.add_constraint(tag + "_hi" + std::to_string(k), std::move(cap),
                             Sense::LessEqual, big);
        pick_one.add(z, 1.0);
    }
    model.add_constraint(tag + "_pick", std::move(pick_one), Sense::Equal, 1.0);
    return selectors;
}

std::vector<VarId> add_min_consecutive(Model& model, const std::string& tag,
                                       const std::vector<VarId>& b, int n_c) {
    const int horizon = static_cast<int>(b.size());
    if (n_c < 1 || n_c > horizon)
        throw SolverError("min consecutive '" + tag + "': window " + std::to_string(n_c) +
                          " invalid for horizon " + std::to_string(horizon));
    std::vector<VarId> starts(b.size(), -1);
    if (n_c == 1)
        return starts; // every pattern already satisfies the rule

    for (int t = 0; t < horizon; ++t) {
        if (b[t] < 0)
            continue; // fixed off

        // a start at t can complete n_c consecutive steps only if the whole
        // window fits the horizon and has no fixed-off position
        bool can_start = t + n_c <= horizon;
        for (int tau = t; can_start && tau < t + n_c; ++tau)
            if (b[tau] < 0)
                can_start = false;

        const std::string st_name = tag + "_start" + std::to_string(t);
        if (!can_start) {
            // forbid turning on here: b(t) <= b(t-1) (or = 0 after a gap)
            if (t == 0 || b[t - 1] < 0) {
                LinExpr e;
                e.add(b[t], 1.0);
                model.add_constraint(st_name + "_off", std::move(e), Sense::Equal, 0.0);
            } else {
                LinExpr e;
                e.add(b[t], 1.0);
                e.add(b[t - 1], -1.0);
                model.add_constraint(st_name + "_noturn", std::move(e), Sense::LessEqual,
                                     0.0);
            }
            continue;
        }

        VarId s = model.add_binary(st_name);
        starts[t] = s;
        if (t == 0 || b[t - 1] < 0) {
            // no predecessor: a 1 here is necessarily a block start
            LinExpr e;
            e.add(s, 1.0);
            e.add(b[t], -1.0);
            model.add_constraint(st_name + "_eq", std::move(e), Sense::Equal, 0.0);
        } else {
            LinExpr le_b;
            le_b.add(s, 1.0);
            le_b.add(b[t], -1.0);
            model.add_constraint(st_name + "_on", std::move(le_b), Sense::LessEqual, 0.0);
            LinExpr prev_off;
            prev_off.add(s, 1.0);
            prev_off.add(b[t - 1], 1.0);
            model.add_constraint(st_name + "_gap", std::move(prev_off), Sense::LessEqual,
                                 1.0);
            LinExpr rise;
            rise.add(s, 1.0);
            rise.add(b[t], -1.0);
            rise.add(b[t - 1], 1.0);
            model.add_constraint(st_name + "_rise", std::move(rise), Sense::GreaterEqual,
                                 0.0);
        }
        // the n_c steps following a start must all be on
        LinExpr run;
        for (int tau = t; tau < t + n_c; ++tau)
            run.add(b[tau], 1.0);
        run.add(s, -static_cast<double>(n_c));
        model.add_constraint(st_name + "_run", std::move(run), Sense::GreaterEqual, 0.0);
    }
    return starts;
}

} // namespace evdr::milp
