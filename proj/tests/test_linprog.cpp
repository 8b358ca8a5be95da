#include "oracles.hpp"

#include "sigstar/error.hpp"
#include "sigstar/linprog.hpp"

#include <doctest.h>

#include <limits>

using namespace sigstar;
using namespace sigstar::linprog;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

LinearProgram make(Eigen::VectorXd c, Sense sense, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd lo,
                   Eigen::VectorXd hi)
{
    return LinearProgram{std::move(c), sense, std::move(A), std::move(b), std::move(lo), std::move(hi)};
}

// Random feasible, bounded program: box [-2,2]^m plus rows that the origin
// satisfies.
LinearProgram random_lp(Xoshiro256& rng, Eigen::Index m, Eigen::Index p)
{
    LinearProgram lp;
    lp.objective = oracle::random_vector(rng, m, -1, 1);
    lp.sense = rng.below(2) ? Sense::Maximize : Sense::Minimize;
    lp.ineq_matrix = oracle::random_matrix(rng, p, m, -1, 1);
    lp.ineq_rhs = oracle::random_vector(rng, p, 0.05, 1.0);
    lp.var_lower = oracle::random_vector(rng, m, -2.0, -0.5);
    lp.var_upper = oracle::random_vector(rng, m, 0.5, 2.0);
    return lp;
}

} // namespace

TEST_CASE("box-only minimization sits on the lower bound")
{
    const auto sol = solve(make(vec({1}), Sense::Minimize, Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), vec({0}), vec({1})));
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.value == 0.0);
    CHECK(sol.point[0] == 0.0);
}

TEST_CASE("single active constraint")
{
    Eigen::MatrixXd A(1, 2);
    A << 1, 1;
    const auto sol = solve(make(vec({1, 1}), Sense::Maximize, A, vec({1}), vec({0, 0}), vec({1, 1})));
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("textbook two-variable program matches vertex enumeration")
{
    Eigen::MatrixXd A(2, 2);
    A << 2, 1, 1, 3;
    const Eigen::VectorXd b = vec({4, 6});
    // x, y >= 0; the oracle needs a finite box, 100 is never active here.
    const auto expected = oracle::vertex_enumeration(vec({3, 2}), true, A, b, vec({0, 0}), vec({100, 100}));
    REQUIRE(expected.has_value());
    CHECK(*expected == doctest::Approx(6.8).epsilon(1e-12)); // vertex (1.2, 1.6)

    const auto sol = solve(make(vec({3, 2}), Sense::Maximize, A, b, vec({0, 0}), vec({kInf, kInf})));
    REQUIRE(sol.status == Status::Optimal);
    CHECK(std::abs(sol.value - *expected) < 1e-9);
    CHECK(sol.point[0] == doctest::Approx(1.2));
    CHECK(sol.point[1] == doctest::Approx(1.6));
}

TEST_CASE("infeasible and unbounded programs are reported, not thrown")
{
    SUBCASE("contradictory bounds")
    {
        const auto sol = solve(make(vec({1}), Sense::Minimize, Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), vec({1}), vec({0})));
        CHECK(sol.status == Status::Infeasible);
    }
    SUBCASE("contradictory rows")
    {
        Eigen::MatrixXd A(2, 1);
        A << 1, -1;
        const auto sol = solve(make(vec({1}), Sense::Minimize, A, vec({-1, 0}), vec({-kInf}), vec({kInf})));
        CHECK(sol.status == Status::Infeasible);
    }
    SUBCASE("missing bound on an improving direction")
    {
        Eigen::MatrixXd A(1, 2);
        A << 1, -1;
        const auto sol = solve(make(vec({1, 1}), Sense::Maximize, A, vec({1}), vec({0, 0}), vec({kInf, kInf})));
        CHECK(sol.status == Status::Unbounded);
    }
    SUBCASE("free variables with a bounded optimum")
    {
        Eigen::MatrixXd A(2, 1);
        A << 1, -1;
        const auto sol = solve(make(vec({1}), Sense::Maximize, A, vec({3, 5}), vec({-kInf}), vec({kInf})));
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.value == doctest::Approx(3.0));
    }
}

TEST_CASE("zero-variable programs")
{
    const auto ok = solve(make(Eigen::VectorXd(0), Sense::Minimize, Eigen::MatrixXd(1, 0), vec({0.5}),
                               Eigen::VectorXd(0), Eigen::VectorXd(0)));
    CHECK(ok.status == Status::Optimal);
    CHECK(ok.value == 0.0);
    const auto bad = solve(make(Eigen::VectorXd(0), Sense::Minimize, Eigen::MatrixXd(1, 0), vec({-0.5}),
                                Eigen::VectorXd(0), Eigen::VectorXd(0)));
    CHECK(bad.status == Status::Infeasible);
}

TEST_CASE("dimension mismatches name the offending field")
{
    auto lp = make(vec({1, 1}), Sense::Minimize, Eigen::MatrixXd::Ones(1, 2), vec({1, 2}), vec({0, 0}), vec({1, 1}));
    try {
        solve(lp);
        FAIL("expected a dimension error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
        CHECK(std::string(e.what()).find("ineq_rhs") != std::string::npos);
    }
    lp = make(vec({1, 1}), Sense::Minimize, Eigen::MatrixXd::Ones(1, 2), vec({1}), vec({0}), vec({1, 1}));
    CHECK_THROWS_WITH_AS(solve(lp), doctest::Contains("var_lower"), Error);
}

TEST_CASE("degenerate vertex does not cycle")
{
    // Beale's cycling example (as a maximization); Bland's rule must terminate.
    Eigen::MatrixXd A(3, 4);
    A << 0.25, -8, -1, 9, 0.5, -12, -0.5, 3, 0, 0, 1, 0;
    const auto sol = solve(make(vec({0.75, -20, 0.5, -6}), Sense::Maximize, A, vec({0, 0, 1}), vec({0, 0, 0, 0}),
                                vec({kInf, kInf, kInf, kInf})));
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.value == doctest::Approx(1.25));
}

TEST_CASE("feasible_point")
{
    SUBCASE("contradictory bounds")
    {
        Eigen::MatrixXd A(1, 1);
        A << -1; // x >= 0
        Eigen::MatrixXd B(1, 1);
        B << 1; // x <= -1
        Eigen::MatrixXd C(2, 1);
        C << -1, 1;
        CHECK_FALSE(feasible_point(C, vec({0, -1}), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), vec({-kInf}), vec({kInf})));
    }
    SUBCASE("forced equality")
    {
        Eigen::MatrixXd E(1, 1);
        E << 1;
        const auto x = feasible_point(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), E, vec({0.5}), vec({0}), vec({1}));
        REQUIRE(x.has_value());
        CHECK(std::abs((*x)[0] - 0.5) <= kFeasibilityTol);
    }
    SUBCASE("agrees with rejection sampling on random 3-variable systems")
    {
        Xoshiro256 rng(11);
        int feasible = 0;
        int infeasible = 0;
        for (int trial = 0; trial < 40; ++trial) {
            const Eigen::MatrixXd A = oracle::random_matrix(rng, 4, 3, -1, 1);
            // Shift rhs so roughly half the systems are infeasible on the unit box.
            const Eigen::VectorXd b = oracle::random_vector(rng, 4, -0.9, 0.4);
            const Eigen::VectorXd lo = Eigen::VectorXd::Zero(3);
            const Eigen::VectorXd hi = Eigen::VectorXd::Ones(3);
            const auto x = feasible_point(A, b, Eigen::MatrixXd(0, 3), Eigen::VectorXd(0), lo, hi);
            const bool sampled = oracle::rejection_feasible(A, b, lo, hi, 1'000'000, 100 + trial);
            // A sampled witness proves feasibility.
            if (sampled) CHECK(x.has_value());
            if (x) {
                ++feasible;
                CHECK(max_violation(A, b, lo, hi, *x) <= kFeasibilityTol);
                // Feasible sets can be too thin to hit; relaxing every row by
                // 0.01 gives the sampler a full-dimensional target.
                const Eigen::VectorXd relaxed = b.array() + 0.01;
                CHECK(oracle::rejection_feasible(A, relaxed, lo, hi, 1'000'000, 500 + trial));
            } else {
                ++infeasible;
                CHECK_FALSE(sampled);
            }
        }
        CHECK(feasible > 5);
        CHECK(infeasible > 5);
    }
}

TEST_CASE("random bounded programs: optimum, soundness, duality of sense, determinism")
{
    Xoshiro256 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.below(5));
        const Eigen::Index p = static_cast<Eigen::Index>(rng.below(9));
        const LinearProgram lp = random_lp(rng, m, p);
        const auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);

        const auto expected = oracle::vertex_enumeration(lp.objective, lp.sense == Sense::Maximize, lp.ineq_matrix,
                                                         lp.ineq_rhs, lp.var_lower, lp.var_upper);
        REQUIRE(expected.has_value());
        CHECK(std::abs(sol.value - *expected) <= 1e-6);
        CHECK(max_violation(lp.ineq_matrix, lp.ineq_rhs, lp.var_lower, lp.var_upper, sol.point) <= kFeasibilityTol);
        CHECK(std::abs(sol.value - lp.objective.dot(sol.point)) <= 1e-9 * (1.0 + std::abs(sol.value)));

        LinearProgram flipped = lp;
        flipped.objective = -lp.objective;
        flipped.sense = lp.sense == Sense::Maximize ? Sense::Minimize : Sense::Maximize;
        const auto neg = solve(flipped);
        REQUIRE(neg.status == Status::Optimal);
        CHECK(std::abs(neg.value + sol.value) <= 1e-6);

        const auto again = solve(lp);
        CHECK(again.value == sol.value);
        CHECK(again.point == sol.point);
    }
}

TEST_CASE("invocation counter tracks solver runs on this thread")
{
    const auto before = invocation_count();
    solve(make(vec({1}), Sense::Minimize, Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), vec({0}), vec({1})));
    feasible_point(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), vec({0}), vec({1}));
    CHECK(invocation_count() - before == 2);
}
