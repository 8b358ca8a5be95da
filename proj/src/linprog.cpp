#include "sigstar/linprog.hpp"

#include "sigstar/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sigstar::linprog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;

thread_local std::uint64_t t_invocations = 0;

enum class PhaseResult { Optimal, Unbounded };

// Bounded-variable simplex over  A x + s - a = b  in tableau form.
// Columns: [0, m) structural, [m, m+p) slacks (s >= 0), then one artificial
// per row whose starting slack would have been negative. Every row has exactly
// one basic variable; nonbasic variables sit at a finite bound (or at 0 when
// free). Values of all variables are tracked explicitly.
class BoundedSimplex {
public:
    BoundedSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                   const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
        : rows_(A.rows()), structural_(A.cols()), rhs_(b)
    {
        Eigen::VectorXd x0(structural_);
        for (Eigen::Index j = 0; j < structural_; ++j) {
            if (std::isfinite(lower[j])) x0[j] = lower[j];
            else if (std::isfinite(upper[j])) x0[j] = upper[j];
            else x0[j] = 0.0;
        }
        const Eigen::VectorXd residual = b - A * x0;

        std::vector<Eigen::Index> art_rows;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (residual[i] < 0.0) art_rows.push_back(i);
        }
        artificial_begin_ = structural_ + rows_;
        cols_ = artificial_begin_ + static_cast<Eigen::Index>(art_rows.size());

        tableau_ = Eigen::MatrixXd::Zero(rows_, cols_);
        lo_.resize(cols_);
        hi_.resize(cols_);
        x_ = Eigen::VectorXd::Zero(cols_);
        basis_.assign(static_cast<std::size_t>(rows_), -1);

        lo_.head(structural_) = lower;
        hi_.head(structural_) = upper;
        x_.head(structural_) = x0;
        lo_.segment(structural_, rows_).setZero();
        hi_.segment(structural_, rows_).setConstant(kInf);
        lo_.tail(cols_ - artificial_begin_).setZero();
        hi_.tail(cols_ - artificial_begin_).setConstant(kInf);

        std::size_t next_art = 0;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            const Eigen::Index slack = structural_ + i;
            if (next_art < art_rows.size() && art_rows[next_art] == i) {
                const Eigen::Index art = artificial_begin_ + static_cast<Eigen::Index>(next_art);
                ++next_art;
                // -(A_i x + s_i - a_i) = -b_i, so the artificial column reads +1.
                tableau_.row(i).head(structural_) = -A.row(i);
                tableau_(i, slack) = -1.0;
                tableau_(i, art) = 1.0;
                basis_[static_cast<std::size_t>(i)] = art;
                x_[art] = -residual[i];
            } else {
                tableau_.row(i).head(structural_) = A.row(i);
                tableau_(i, slack) = 1.0;
                basis_[static_cast<std::size_t>(i)] = slack;
                x_[slack] = residual[i];
            }
        }
        is_basic_.assign(static_cast<std::size_t>(cols_), false);
        for (auto j : basis_) is_basic_[static_cast<std::size_t>(j)] = true;
    }

    bool has_artificials() const { return cols_ > artificial_begin_; }

    PhaseResult run(const Eigen::VectorXd& cost)
    {
        const Eigen::Index max_iter = 200 * (cols_ + rows_) + 1000;
        for (Eigen::Index iter = 0; iter < max_iter; ++iter) {
            Eigen::VectorXd basic_cost(rows_);
            for (Eigen::Index i = 0; i < rows_; ++i) basic_cost[i] = cost[basis_[static_cast<std::size_t>(i)]];
            const Eigen::VectorXd reduced = cost - tableau_.transpose() * basic_cost;

            // Bland: lowest-index eligible entering variable.
            Eigen::Index entering = -1;
            int dir = 0;
            for (Eigen::Index j = 0; j < cols_; ++j) {
                if (is_basic_[static_cast<std::size_t>(j)]) continue;
                if (reduced[j] < -kOptimalityTol && x_[j] < hi_[j]) {
                    entering = j;
                    dir = 1;
                    break;
                }
                if (reduced[j] > kOptimalityTol && x_[j] > lo_[j]) {
                    entering = j;
                    dir = -1;
                    break;
                }
            }
            if (entering < 0) {
                refresh();
                return PhaseResult::Optimal;
            }

            double step = hi_[entering] - lo_[entering]; // inf unless doubly bounded
            if (!std::isfinite(step)) step = kInf;
            Eigen::Index leave_row = -1;
            Eigen::Index leave_var = std::numeric_limits<Eigen::Index>::max();
            double leave_value = 0.0;
            for (Eigen::Index i = 0; i < rows_; ++i) {
                const double a = dir * tableau_(i, entering);
                if (std::abs(a) < kPivotTol) continue;
                const Eigen::Index bv = basis_[static_cast<std::size_t>(i)];
                double limit;
                double hit;
                if (a > 0.0) {
                    if (!std::isfinite(lo_[bv])) continue;
                    limit = (x_[bv] - lo_[bv]) / a;
                    hit = lo_[bv];
                } else {
                    if (!std::isfinite(hi_[bv])) continue;
                    limit = (hi_[bv] - x_[bv]) / -a;
                    hit = hi_[bv];
                }
                if (limit < 0.0) limit = 0.0;
                if (limit < step || (leave_row >= 0 && limit == step && bv < leave_var)) {
                    step = limit;
                    leave_row = i;
                    leave_var = bv;
                    leave_value = hit;
                }
            }

            if (!std::isfinite(step)) return PhaseResult::Unbounded;

            const double delta = dir * step;
            x_[entering] += delta;
            for (Eigen::Index i = 0; i < rows_; ++i) {
                x_[basis_[static_cast<std::size_t>(i)]] -= tableau_(i, entering) * delta;
            }

            if (leave_row < 0) {
                // Bound flip, basis unchanged.
                x_[entering] = dir > 0 ? hi_[entering] : lo_[entering];
                continue;
            }

            x_[leave_var] = leave_value;
            pivot(leave_row, entering);
        }
        fail(ErrorCode::SolverFailure, "simplex iteration limit reached");
    }

    double artificial_sum() const { return x_.tail(cols_ - artificial_begin_).sum(); }

    // Pin artificials to zero for phase 2.
    void retire_artificials()
    {
        for (Eigen::Index j = artificial_begin_; j < cols_; ++j) {
            lo_[j] = 0.0;
            hi_[j] = 0.0;
            if (!is_basic_[static_cast<std::size_t>(j)]) x_[j] = 0.0;
        }
    }

    Eigen::VectorXd structural_values() const { return x_.head(structural_); }

    Eigen::Index cols() const { return cols_; }
    Eigen::Index artificial_begin() const { return artificial_begin_; }

private:
    void pivot(Eigen::Index r, Eigen::Index j)
    {
        const double p = tableau_(r, j);
        tableau_.row(r) /= p;
        tableau_(r, j) = 1.0;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const double f = tableau_(i, j);
            if (f != 0.0) {
                tableau_.row(i) -= f * tableau_.row(r);
                tableau_(i, j) = 0.0;
            }
        }
        const auto old = basis_[static_cast<std::size_t>(r)];
        is_basic_[static_cast<std::size_t>(old)] = false;
        is_basic_[static_cast<std::size_t>(j)] = true;
        basis_[static_cast<std::size_t>(r)] = j;
    }

    // Recompute basic values from nonbasic ones to shed accumulated drift.
    // The slack block of the tableau is B^-1 since the slack columns of the
    // original system form the identity.
    void refresh()
    {
        Eigen::VectorXd beta = tableau_.middleCols(structural_, rows_) * rhs_;
        for (Eigen::Index j = 0; j < cols_; ++j) {
            if (is_basic_[static_cast<std::size_t>(j)] || x_[j] == 0.0) continue;
            beta -= tableau_.col(j) * x_[j];
        }
        for (Eigen::Index i = 0; i < rows_; ++i) x_[basis_[static_cast<std::size_t>(i)]] = beta[i];
    }

    Eigen::Index rows_;
    Eigen::Index structural_;
    Eigen::Index artificial_begin_ = 0;
    Eigen::Index cols_ = 0;
    Eigen::VectorXd rhs_;
    Eigen::MatrixXd tableau_;
    Eigen::VectorXd lo_;
    Eigen::VectorXd hi_;
    Eigen::VectorXd x_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> is_basic_;
};

void check_finite(const Eigen::MatrixXd& m, const char* field)
{
    if (!m.allFinite()) fail(ErrorCode::InvalidArgument, std::string(field) + ": non-finite entry");
}

void check_not_nan(const Eigen::VectorXd& v, const char* field)
{
    if (v.hasNaN()) fail(ErrorCode::InvalidArgument, std::string(field) + ": NaN entry");
}

void check_shape(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs, Eigen::Index vars,
                 const char* matrix_field, const char* rhs_field)
{
    require_dims(matrix.rows() == rhs.size(), rhs_field, static_cast<std::size_t>(matrix.rows()),
                 static_cast<std::size_t>(rhs.size()));
    if (matrix.rows() > 0) {
        require_dims(matrix.cols() == vars, matrix_field, static_cast<std::size_t>(vars),
                     static_cast<std::size_t>(matrix.cols()));
    }
}

bool bounds_consistent(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
{
    for (Eigen::Index j = 0; j < lower.size(); ++j) {
        if (!(lower[j] <= upper[j]) || lower[j] == kInf || upper[j] == -kInf) return false;
    }
    return true;
}

Eigen::MatrixXd with_cols(const Eigen::MatrixXd& m, Eigen::Index vars)
{
    if (m.rows() == 0 && m.cols() != vars) return Eigen::MatrixXd(0, vars);
    return m;
}

} // namespace

const char* to_string(Status status) noexcept
{
    switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

LpSolution solve(const LinearProgram& lp)
{
    const Eigen::Index m = lp.objective.size();
    check_shape(lp.ineq_matrix, lp.ineq_rhs, m, "ineq_matrix", "ineq_rhs");
    require_dims(lp.var_lower.size() == m, "var_lower", static_cast<std::size_t>(m),
                 static_cast<std::size_t>(lp.var_lower.size()));
    require_dims(lp.var_upper.size() == m, "var_upper", static_cast<std::size_t>(m),
                 static_cast<std::size_t>(lp.var_upper.size()));
    check_finite(lp.objective, "objective");
    check_finite(lp.ineq_matrix, "ineq_matrix");
    check_finite(lp.ineq_rhs, "ineq_rhs");
    check_not_nan(lp.var_lower, "var_lower");
    check_not_nan(lp.var_upper, "var_upper");

    ++t_invocations;
    LpSolution out;
    if (!bounds_consistent(lp.var_lower, lp.var_upper)) {
        out.status = Status::Infeasible;
        return out;
    }

    BoundedSimplex simplex(with_cols(lp.ineq_matrix, m), lp.ineq_rhs, lp.var_lower, lp.var_upper);
    if (simplex.has_artificials()) {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(simplex.cols());
        cost.tail(simplex.cols() - simplex.artificial_begin()).setOnes();
        simplex.run(cost);
        if (simplex.artificial_sum() > kFeasibilityTol) {
            out.status = Status::Infeasible;
            return out;
        }
        simplex.retire_artificials();
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(simplex.cols());
    cost.head(m) = lp.sense == Sense::Minimize ? lp.objective : Eigen::VectorXd(-lp.objective);
    if (simplex.run(cost) == PhaseResult::Unbounded) {
        out.status = Status::Unbounded;
        return out;
    }
    out.status = Status::Optimal;
    out.point = simplex.structural_values();
    out.value = lp.objective.dot(out.point);
    return out;
}

std::optional<Eigen::VectorXd> feasible_point(const Eigen::MatrixXd& ineq_matrix,
                                              const Eigen::VectorXd& ineq_rhs,
                                              const Eigen::MatrixXd& eq_matrix,
                                              const Eigen::VectorXd& eq_rhs,
                                              const Eigen::VectorXd& var_lower,
                                              const Eigen::VectorXd& var_upper)
{
    const Eigen::Index m = var_lower.size();
    require_dims(var_upper.size() == m, "var_upper", static_cast<std::size_t>(m),
                 static_cast<std::size_t>(var_upper.size()));
    check_shape(ineq_matrix, ineq_rhs, m, "ineq_matrix", "ineq_rhs");
    check_shape(eq_matrix, eq_rhs, m, "eq_matrix", "eq_rhs");
    check_finite(ineq_matrix, "ineq_matrix");
    check_finite(ineq_rhs, "ineq_rhs");
    check_finite(eq_matrix, "eq_matrix");
    check_finite(eq_rhs, "eq_rhs");
    check_not_nan(var_lower, "var_lower");
    check_not_nan(var_upper, "var_upper");

    ++t_invocations;
    if (!bounds_consistent(var_lower, var_upper)) return std::nullopt;

    const Eigen::Index p = ineq_matrix.rows();
    const Eigen::Index q = eq_matrix.rows();
    Eigen::MatrixXd A(p + 2 * q, m);
    Eigen::VectorXd b(p + 2 * q);
    if (p > 0) {
        A.topRows(p) = ineq_matrix;
        b.head(p) = ineq_rhs;
    }
    if (q > 0) {
        A.middleRows(p, q) = eq_matrix;
        b.segment(p, q) = eq_rhs;
        A.bottomRows(q) = -eq_matrix;
        b.tail(q) = -eq_rhs;
    }

    BoundedSimplex simplex(A, b, var_lower, var_upper);
    if (simplex.has_artificials()) {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(simplex.cols());
        cost.tail(simplex.cols() - simplex.artificial_begin()).setOnes();
        simplex.run(cost);
        if (simplex.artificial_sum() > kFeasibilityTol) return std::nullopt;
    }
    return simplex.structural_values();
}

double max_violation(const Eigen::MatrixXd& ineq_matrix, const Eigen::VectorXd& ineq_rhs,
                     const Eigen::VectorXd& var_lower, const Eigen::VectorXd& var_upper,
                     const Eigen::VectorXd& x)
{
    double worst = 0.0;
    if (ineq_matrix.rows() > 0) {
        const Eigen::VectorXd slack = ineq_matrix * x - ineq_rhs;
        worst = std::max(worst, slack.maxCoeff());
    }
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        worst = std::max(worst, var_lower[j] - x[j]);
        worst = std::max(worst, x[j] - var_upper[j]);
    }
    return worst;
}

std::uint64_t invocation_count() noexcept { return t_invocations; }

} // namespace sigstar::linprog
