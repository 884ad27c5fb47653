#include "linsel/linprog.hpp"

#include <algorithm>
#include <limits>

namespace linsel {

void LinearProgram::require_well_formed() const {
    if (num_vars == 0) throw MalformedProgram("program has no variables");
    for (const auto& [row, bound] : equalities)
        if (row.size() != num_vars) throw MalformedProgram("equality row dimension mismatch");
    for (const auto& [row, bound] : inequalities)
        if (row.size() != num_vars) throw MalformedProgram("inequality row dimension mismatch");
    if (objective && objective->size() != num_vars)
        throw MalformedProgram("objective dimension mismatch");
    for (auto j : nonneg)
        if (j >= num_vars) throw MalformedProgram("nonneg index out of range");
}

bool certificate_refutes(const LinearProgram& lp, const InfeasibilityCertificate& cert) {
    if (cert.eq_mult.size() != lp.equalities.size()) return false;
    if (cert.ineq_mult.size() != lp.inequalities.size()) return false;
    for (const auto& m : cert.ineq_mult)
        if (m < 0) return false;
    RatVec g = zero_vec(lp.num_vars);
    Rat beta(0);
    for (std::size_t i = 0; i < lp.equalities.size(); ++i) {
        if (cert.eq_mult[i] == 0) continue;
        g = vec_add(g, vec_scale(cert.eq_mult[i], lp.equalities[i].first));
        beta += cert.eq_mult[i] * lp.equalities[i].second;
    }
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i) {
        if (cert.ineq_mult[i] == 0) continue;
        g = vec_add(g, vec_scale(cert.ineq_mult[i], lp.inequalities[i].first));
        beta += cert.ineq_mult[i] * lp.inequalities[i].second;
    }
    if (beta <= 0) return false;
    std::vector<bool> is_nonneg(lp.num_vars, false);
    for (auto j : lp.nonneg) is_nonneg[j] = true;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (is_nonneg[j]) {
            if (g[j] > 0) return false;
        } else {
            if (g[j] != 0) return false;
        }
    }
    return true;
}

namespace {

// Standard-form tableau: minimize cost over A w = b, w >= 0, b >= 0.
struct Tableau {
    RatMat a;
    RatVec b;
    RatVec cost;  // reduced costs
    Rat mz = 0;   // minus current objective value
    std::vector<std::size_t> basis;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

    void pivot(std::size_t r, std::size_t j) {
        const Rat inv = Rat(1) / a[r][j];
        for (auto& v : a[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || a[i][j] == 0) continue;
            const Rat factor = a[i][j];
            for (std::size_t k = 0; k < cols(); ++k) a[i][k] -= factor * a[r][k];
            b[i] -= factor * b[r];
        }
        if (cost[j] != 0) {
            const Rat factor = cost[j];
            for (std::size_t k = 0; k < cols(); ++k) cost[k] -= factor * a[r][k];
            mz -= factor * b[r];
        }
        basis[r] = j;
    }

    // Bland: entering = smallest index with negative reduced cost; leaving =
    // min ratio, ties by smallest basic variable index.  Returns false when
    // optimal, throws nothing; unbounded reported via flag.
    enum class Step { Optimal, Pivoted, Unbounded };
    Step step(const std::vector<bool>& allowed) {
        std::size_t enter = cols();
        for (std::size_t j = 0; j < cols(); ++j) {
            if (allowed[j] && cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols()) return Step::Optimal;
        std::size_t leave = rows();
        Rat best(0);
        for (std::size_t i = 0; i < rows(); ++i) {
            if (a[i][enter] <= 0) continue;
            Rat ratio = b[i] / a[i][enter];
            if (leave == rows() || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == rows()) return Step::Unbounded;
        pivot(leave, enter);
        return Step::Pivoted;
    }
};

struct StandardForm {
    // Column layout: pos part per variable, then neg part per free variable,
    // then one surplus column per inequality.
    std::size_t n_std = 0;
    std::vector<std::size_t> pos_col;            // per original var
    std::vector<std::optional<std::size_t>> neg_col;
    std::vector<std::size_t> surplus_col;        // per inequality
    RatMat a;
    RatVec b;
    std::vector<int> row_sign;  // +1 or -1 relative to the original row
    std::size_t n_eq = 0;       // original equality rows come first
};

StandardForm build_standard(const LinearProgram& lp) {
    StandardForm sf;
    std::vector<bool> is_nonneg(lp.num_vars, false);
    for (auto j : lp.nonneg) is_nonneg[j] = true;

    sf.pos_col.resize(lp.num_vars);
    sf.neg_col.assign(lp.num_vars, std::nullopt);
    std::size_t next = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) sf.pos_col[j] = next++;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
        if (!is_nonneg[j]) sf.neg_col[j] = next++;
    sf.surplus_col.resize(lp.inequalities.size());
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i) sf.surplus_col[i] = next++;
    sf.n_std = next;
    sf.n_eq = lp.equalities.size();

    auto add_row = [&](const RatVec& coeffs, const Rat& bound,
                       std::optional<std::size_t> surplus) {
        RatVec row = zero_vec(sf.n_std);
        for (std::size_t j = 0; j < lp.num_vars; ++j) {
            if (coeffs[j] == 0) continue;
            row[sf.pos_col[j]] = coeffs[j];
            if (sf.neg_col[j]) row[*sf.neg_col[j]] = -coeffs[j];
        }
        if (surplus) row[*surplus] = -1;
        int sign = 1;
        Rat rhs = bound;
        if (rhs < 0) {
            sign = -1;
            rhs = -rhs;
            for (auto& v : row) v = -v;
        }
        sf.a.push_back(std::move(row));
        sf.b.push_back(rhs);
        sf.row_sign.push_back(sign);
    };

    for (const auto& [row, bound] : lp.equalities) add_row(row, bound, std::nullopt);
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i)
        add_row(lp.inequalities[i].first, lp.inequalities[i].second, sf.surplus_col[i]);
    return sf;
}

RatVec recover_point(const LinearProgram& lp, const StandardForm& sf, const Tableau& t) {
    RatVec w = zero_vec(t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i) w[t.basis[i]] = t.b[i];
    RatVec x = zero_vec(lp.num_vars);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        x[j] = w[sf.pos_col[j]];
        if (sf.neg_col[j]) x[j] -= w[*sf.neg_col[j]];
    }
    return x;
}

// Runs phase I.  On success the tableau holds a basic feasible point with all
// artificials nonbasic or basic at zero and redundant rows removed.
struct PhaseOne {
    Tableau t;
    std::size_t n_std = 0;
    bool feasible = false;
    InfeasibilityCertificate certificate;
    std::vector<std::size_t> row_origin;  // surviving row -> original standard row
};

PhaseOne phase_one(const LinearProgram& lp, const StandardForm& sf) {
    PhaseOne out;
    const std::size_t m = sf.a.size();
    const std::size_t n_total = sf.n_std + m;
    out.n_std = sf.n_std;

    Tableau& t = out.t;
    t.a.assign(m, zero_vec(n_total));
    t.b = sf.b;
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < sf.n_std; ++j) t.a[i][j] = sf.a[i][j];
        t.a[i][sf.n_std + i] = 1;
        t.basis[i] = sf.n_std + i;
    }
    t.cost = zero_vec(n_total);
    t.mz = 0;
    for (std::size_t i = 0; i < m; ++i) {
        // reduced costs for basis of artificials with unit costs
        for (std::size_t j = 0; j < sf.n_std; ++j) t.cost[j] -= t.a[i][j];
        t.mz -= t.b[i];
    }

    std::vector<bool> allowed(n_total, true);
    while (t.step(allowed) == Tableau::Step::Pivoted) {
    }

    const Rat phase1_value = -t.mz;
    if (phase1_value > 0) {
        // Dual multipliers: y_i = 1 - reduced cost of artificial i.
        RatVec y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = Rat(1) - t.cost[sf.n_std + i];
        out.certificate.eq_mult = zero_vec(lp.equalities.size());
        out.certificate.ineq_mult = zero_vec(lp.inequalities.size());
        for (std::size_t i = 0; i < m; ++i) {
            const Rat mult = Rat(sf.row_sign[i]) * y[i];
            if (i < sf.n_eq)
                out.certificate.eq_mult[i] = mult;
            else
                out.certificate.ineq_mult[i - sf.n_eq] = mult;
        }
        out.feasible = false;
        return out;
    }

    // Drive remaining artificials out of the basis.
    out.row_origin.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.row_origin[i] = i;
    for (std::size_t i = 0; i < t.rows();) {
        if (t.basis[i] < sf.n_std) {
            ++i;
            continue;
        }
        std::size_t enter = sf.n_std;
        for (std::size_t j = 0; j < sf.n_std; ++j) {
            if (t.a[i][j] != 0) {
                enter = j;
                break;
            }
        }
        if (enter == sf.n_std) {
            // Redundant row: remove it.
            t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
            t.b.erase(t.b.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            out.row_origin.erase(out.row_origin.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        t.pivot(i, enter);
        ++i;
    }
    out.feasible = true;
    return out;
}

}  // namespace

LpResult solve_feasibility(const LinearProgram& lp) {
    lp.require_well_formed();
    const StandardForm sf = build_standard(lp);
    PhaseOne p1 = phase_one(lp, sf);
    LpResult result;
    if (!p1.feasible) {
        result.status = LpStatus::Infeasible;
        result.certificate = p1.certificate;
        return result;
    }
    result.status = LpStatus::Feasible;
    result.point = recover_point(lp, sf, p1.t);
    return result;
}

LpResult optimize(const LinearProgram& lp, Sense sense) {
    lp.require_well_formed();
    if (!lp.objective) throw MalformedProgram("optimize requires an objective");
    const StandardForm sf = build_standard(lp);
    PhaseOne p1 = phase_one(lp, sf);
    LpResult result;
    if (!p1.feasible) {
        result.status = LpStatus::Infeasible;
        result.certificate = p1.certificate;
        return result;
    }

    Tableau& t = p1.t;
    const std::size_t n_total = t.cols();
    RatVec c = zero_vec(n_total);
    const Rat flip = (sense == Sense::Maximize) ? Rat(-1) : Rat(1);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        const Rat cj = flip * (*lp.objective)[j];
        c[sf.pos_col[j]] = cj;
        if (sf.neg_col[j]) c[*sf.neg_col[j]] = -cj;
    }
    t.cost = c;
    t.mz = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const Rat cb = c[t.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < n_total; ++j) t.cost[j] -= cb * t.a[i][j];
        t.mz -= cb * t.b[i];
    }

    std::vector<bool> allowed(n_total, true);
    for (std::size_t j = sf.n_std; j < n_total; ++j) allowed[j] = false;

    while (true) {
        const auto step = t.step(allowed);
        if (step == Tableau::Step::Optimal) break;
        if (step == Tableau::Step::Unbounded) {
            result.status = LpStatus::Unbounded;
            return result;
        }
    }

    result.status = LpStatus::Optimal;
    result.point = recover_point(lp, sf, t);
    result.value = flip * (-t.mz);

    // Dual multipliers from the artificial columns: the reduced cost of the
    // artificial of surviving standard row r equals -y_r.  Deleted redundant
    // rows get multiplier 0.
    DualCertificate dual;
    dual.eq_mult = zero_vec(lp.equalities.size());
    dual.ineq_mult = zero_vec(lp.inequalities.size());
    for (std::size_t k = 0; k < t.rows(); ++k) {
        const std::size_t r = p1.row_origin[k];
        const Rat y = -t.cost[sf.n_std + r];
        const Rat mult = flip * Rat(sf.row_sign[r]) * y;
        if (r < sf.n_eq)
            dual.eq_mult[r] = mult;
        else
            dual.ineq_mult[r - sf.n_eq] = mult;
    }
    result.dual = std::move(dual);
    return result;
}

std::optional<Rat> dual_bound(const LinearProgram& lp, Sense sense,
                              const DualCertificate& cert) {
    if (!lp.objective) return std::nullopt;
    if (cert.eq_mult.size() != lp.equalities.size()) return std::nullopt;
    if (cert.ineq_mult.size() != lp.inequalities.size()) return std::nullopt;
    for (const auto& m : cert.ineq_mult) {
        if (sense == Sense::Minimize && m < 0) return std::nullopt;
        if (sense == Sense::Maximize && m > 0) return std::nullopt;
    }
    RatVec g = zero_vec(lp.num_vars);
    Rat bound(0);
    for (std::size_t i = 0; i < lp.equalities.size(); ++i) {
        if (cert.eq_mult[i] == 0) continue;
        g = vec_add(g, vec_scale(cert.eq_mult[i], lp.equalities[i].first));
        bound += cert.eq_mult[i] * lp.equalities[i].second;
    }
    for (std::size_t i = 0; i < lp.inequalities.size(); ++i) {
        if (cert.ineq_mult[i] == 0) continue;
        g = vec_add(g, vec_scale(cert.ineq_mult[i], lp.inequalities[i].first));
        bound += cert.ineq_mult[i] * lp.inequalities[i].second;
    }
    std::vector<bool> is_nonneg(lp.num_vars, false);
    for (auto j : lp.nonneg) is_nonneg[j] = true;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        const Rat& c = (*lp.objective)[j];
        if (!is_nonneg[j]) {
            if (g[j] != c) return std::nullopt;
        } else if (sense == Sense::Minimize) {
            if (g[j] > c) return std::nullopt;
        } else {
            if (g[j] < c) return std::nullopt;
        }
    }
    return bound;
}

}  // namespace linsel
