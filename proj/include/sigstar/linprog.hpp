#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace sigstar::linprog {

// Fixed solver tolerances. Not configurable so that test expectations stay
// stable across the project.
inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kOptimalityTol = 1e-9;

enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status) noexcept;

/// optimize objective . x  subject to  ineq_matrix x <= ineq_rhs,
/// var_lower <= x <= var_upper. Bounds may be +-infinity.
struct LinearProgram {
    Eigen::VectorXd objective;
    Sense sense = Sense::Minimize;
    Eigen::MatrixXd ineq_matrix;
    Eigen::VectorXd ineq_rhs;
    Eigen::VectorXd var_lower;
    Eigen::VectorXd var_upper;
};

struct LpSolution {
    Status status = Status::Infeasible;
    double value = 0.0;      // meaningful only when optimal
    Eigen::VectorXd point;   // meaningful only when optimal
};

/// Dense bounded-variable primal simplex, two phases, Bland's rule.
/// Throws Error(DimensionMismatch) on malformed input.
LpSolution solve(const LinearProgram& lp);

/// A point satisfying all constraints within kFeasibilityTol, or nullopt.
/// Equality rows are split into a <= / >= pair.
std::optional<Eigen::VectorXd> feasible_point(const Eigen::MatrixXd& ineq_matrix,
                                              const Eigen::VectorXd& ineq_rhs,
                                              const Eigen::MatrixXd& eq_matrix,
                                              const Eigen::VectorXd& eq_rhs,
                                              const Eigen::VectorXd& var_lower,
                                              const Eigen::VectorXd& var_upper);

/// Largest violation of the inequality rows and variable bounds at x.
double max_violation(const Eigen::MatrixXd& ineq_matrix, const Eigen::VectorXd& ineq_rhs,
                     const Eigen::VectorXd& var_lower, const Eigen::VectorXd& var_upper,
                     const Eigen::VectorXd& x);

/// Number of simplex runs (solve + feasible_point) started on the calling
/// thread. Diagnostic only; reach statistics are checked against it.
std::uint64_t invocation_count() noexcept;

} // namespace sigstar::linprog
