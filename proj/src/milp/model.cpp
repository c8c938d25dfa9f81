#include "evdr/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "evdr/errors.hpp"

namespace evdr::milp {

LinExpr& LinExpr::add(VarId v, double coef) {
    if (coef != 0.0)
        terms_.push_back({v, coef});
    return *this;
}

LinExpr& LinExpr::add(const LinExpr& other, double scale) {
    for (const auto& t : other.terms_)
        add(t.var, t.coef * scale);
    constant_ += other.constant_ * scale;
    return *this;
}

void LinExpr::normalize() {
    if (terms_.empty())
        return;
    std::sort(terms_.begin(), terms_.end(),
              [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
    std::vector<LinTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const LinTerm& t) { return t.coef == 0.0; }),
                 merged.end());
    terms_ = std::move(merged);
}

VarId Model::add_continuous(const std::string& name, double lb, double ub) {
    if (lb > ub)
        throw SolverError("variable '" + name + "' has lb > ub");
    if (by_name_.count(name))
        throw SolverError("duplicate variable name '" + name + "'");
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back({name, VarType::Continuous, lb, ub});
    by_name_[name] = id;
    return id;
}

VarId Model::add_binary(const std::string& name) {
    if (by_name_.count(name))
        throw SolverError("duplicate variable name '" + name + "'");
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back({name, VarType::Binary, 0.0, 1.0});
    by_name_[name] = id;
    return id;
}

ConId Model::add_constraint(const std::string& name, LinExpr expr, Sense sense, double rhs) {
    expr.normalize();
    for (const auto& t : expr.terms())
        if (t.var < 0 || t.var >= num_vars())
            throw SolverError("constraint '" + name + "' references unknown variable");
    // fold the expression constant into the rhs
    double folded = rhs - expr.constant();
    LinExpr body;
    for (const auto& t : expr.terms())
        body.add(t.var, t.coef);
    ConId id = static_cast<ConId>(cons_.size());
    cons_.push_back({name, std::move(body), sense, folded});
    return id;
}

void Model::set_objective(LinExpr expr, ObjSense sense) {
    expr.normalize();
    objective_ = std::move(expr);
    obj_sense_ = sense;
}

void Model::add_objective_term(VarId v, double coef) {
    objective_.add(v, coef);
}

void Model::add_objective_constant(double c) {
    objective_.add_constant(c);
}

void Model::set_var_bounds(VarId v, double lb, double ub) {
    if (lb > ub)
        throw SolverError("bounds cross for variable '" + vars_[v].name + "'");
    vars_[v].lb = lb;
    vars_[v].ub = ub;
}

VarId Model::find_var(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

std::vector<VarId> Model::free_binaries() const {
    std::vector<VarId> out;
    for (VarId v = 0; v < num_vars(); ++v)
        if (vars_[v].type == VarType::Binary && vars_[v].ub - vars_[v].lb > 0.5)
            out.push_back(v);
    return out;
}

std::pair<double, double> Model::expr_bounds(const LinExpr& e) const {
    double lo = e.constant(), hi = e.constant();
    for (const auto& t : e.terms()) {
        const auto& v = vars_[t.var];
        double a = t.coef * v.lb, b = t.coef * v.ub;
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return {lo, hi};
}

double Model::max_violation(const std::vector<double>& values) const {
    double worst = 0.0;
    for (VarId v = 0; v < num_vars(); ++v) {
        double x = values[v];
        worst = std::max(worst, vars_[v].lb - x);
        worst = std::max(worst, x - vars_[v].ub);
        if (vars_[v].type == VarType::Binary)
            worst = std::max(worst, std::min(std::abs(x), std::abs(x - 1.0)));
    }
    for (const auto& c : cons_) {
        double act = c.expr.constant();
        for (const auto& t : c.expr.terms())
            act += t.coef * values[t.var];
        switch (c.sense) {
        case Sense::LessEqual: worst = std::max(worst, act - c.rhs); break;
        case Sense::GreaterEqual: worst = std::max(worst, c.rhs - act); break;
        case Sense::Equal: worst = std::max(worst, std::abs(act - c.rhs)); break;
        }
    }
    return worst;
}

namespace {

void write_expr(std::ostream& os, const LinExpr& e, const std::vector<Variable>& vars) {
    bool first = true;
    for (const auto& t : e.terms()) {
        double c = t.coef;
        if (first) {
            if (c < 0)
                os << "- ";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        double mag = std::abs(c);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", mag);
        os << buf << " " << vars[t.var].name;
    }
    if (first)
        os << "0";
}

void write_number(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

} // namespace

void Model::write_lp(std::ostream& os) const {
    os << (obj_sense_ == ObjSense::Minimize ? "Minimize" : "Maximize") << "\n obj: ";
    write_expr(os, objective_, vars_);
    // LP format has no objective constant; carry it on a comment line
    if (objective_.constant() != 0.0) {
        os << "\n\\ objective constant: ";
        write_number(os, objective_.constant());
    }
    os << "\nSubject To\n";
    for (size_t i = 0; i < cons_.size(); ++i) {
        const auto& c = cons_[i];
        os << " " << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
        write_expr(os, c.expr, vars_);
        switch (c.sense) {
        case Sense::LessEqual: os << " <= "; break;
        case Sense::Equal: os << " = "; break;
        case Sense::GreaterEqual: os << " >= "; break;
        }
        write_number(os, c.rhs);
        os << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars_) {
        os << " ";
        if (std::isinf(v.lb) && std::isinf(v.ub)) {
            os << v.name << " free\n";
            continue;
        }
        if (std::isinf(v.lb))
            os << "-inf";
        else
            write_number(os, v.lb);
        os << " <= " << v.name << " <= ";
        if (std::isinf(v.ub))
            os << "+inf";
        else
            write_number(os, v.ub);
        os << "\n";
    }
    bool any_bin = false;
    for (const auto& v : vars_)
        if (v.type == VarType::Binary) {
            if (!any_bin) {
                os << "Binary\n";
                any_bin = true;
            }
            os << " " << v.name << "\n";
        }
    os << "End\n";
}

LpProblem Model::to_lp() const {
    LpProblem lp;
    double sign = obj_sense_ == ObjSense::Minimize ? 1.0 : -1.0;
    for (const auto& v : vars_)
        lp.add_col(v.lb, v.ub, 0.0);
    for (const auto& t : objective_.terms())
        lp.obj[t.var] += sign * t.coef;
    lp.obj_offset = sign * objective_.constant();
    for (const auto& c : cons_) {
        double lo = -kInf, hi = kInf;
        switch (c.sense) {
        case Sense::LessEqual: hi = c.rhs; break;
        case Sense::GreaterEqual: lo = c.rhs; break;
        case Sense::Equal: lo = hi = c.rhs; break;
        }
        int r = lp.add_row(lo, hi);
        for (const auto& t : c.expr.terms())
            lp.set_entry(r, t.var, t.coef);
    }
    return lp;
}

} // namespace evdr::milp
