#include "sigstar/error.hpp"
#include "sigstar/faults.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace sigstar;

TEST_CASE("apply_fault")
{
    const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(5);
    const SpikeFault fault{2, -1.0, 1.0};
    CHECK(apply_fault(zeros, fault, 0.0) == zeros);

    Eigen::VectorXd expected = zeros;
    expected[2] = 0.5;
    CHECK(apply_fault(zeros, fault, 0.5) == expected);

    CHECK_THROWS_AS(apply_fault(zeros, fault, 1.5), Error);
    CHECK_THROWS_AS(apply_fault(zeros, SpikeFault{5, 0, 0}, 0.0), Error);

    const Eigen::VectorXd signal = Eigen::VectorXd::LinSpaced(10, 0.1, 0.9);
    const SpikeFault f{7, -0.3, 0.2};
    const Bounds b = f.input_set(signal).get_ranges();
    const Eigen::VectorXd lo = apply_fault(signal, f, f.amp_lower);
    const Eigen::VectorXd hi = apply_fault(signal, f, f.amp_upper);
    CHECK((b.lower - lo).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((b.upper - hi).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("generate_campaign")
{
    std::vector<std::string> ids;
    for (int i = 0; i < 363; ++i) ids.push_back("test" + std::to_string(i));

    const auto a = generate_campaign(ids, 100, 0.3, 17);
    const auto b = generate_campaign(ids, 100, 0.3, 17);
    CHECK(a == b);
    CHECK_FALSE(a == generate_campaign(ids, 100, 0.3, 18));
    REQUIRE(a.entries.size() == ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        CHECK(a.entries[k].signal_id == ids[k]);
        CHECK(a.entries[k].fault.amp_lower == -0.3);
        CHECK(a.entries[k].fault.amp_upper == 0.3);
    }

    const auto flat = generate_campaign(ids, 100, 0.0, 1);
    for (const auto& e : flat.entries) {
        CHECK(e.fault.amp_lower == 0.0);
        CHECK(e.fault.amp_upper == 0.0);
    }

    CHECK_THROWS_AS(generate_campaign({}, 100, 0.3, 1), Error);
    CHECK_THROWS_AS(generate_campaign(ids, 0, 0.3, 1), Error);
    CHECK_THROWS_AS(generate_campaign(ids, 100, -1.0, 1), Error);
}

TEST_CASE("campaign locations are uniform over the signal")
{
    // 363 draws into 10 bins of width 10; chi-square with 9 degrees of
    // freedom stays below 21.67 (p = 0.01) for a uniform source.
    std::vector<std::string> ids(363, "s");
    int passed = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto c = generate_campaign(ids, 100, 0.3, seed);
        std::array<int, 10> bins{};
        for (const auto& e : c.entries) {
            REQUIRE(e.fault.location >= 0);
            REQUIRE(e.fault.location < 100);
            ++bins[static_cast<std::size_t>(e.fault.location / 10)];
        }
        const double expected = 36.3;
        double chi2 = 0.0;
        for (int n : bins) chi2 += (n - expected) * (n - expected) / expected;
        if (chi2 < 21.67) ++passed;
    }
    CHECK(passed >= 17);
}
