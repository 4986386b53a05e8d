#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffmoll/alexander.hpp"

using namespace cliffmoll;

namespace {
DiracConfig plain_cfg(int n) { return make_config(n, GradientPotential{}, -1, unit_sphere_area(n)); }
}

TEST_CASE("zero right-hand side gives zero distance bound everywhere") {
    DiracConfig cfg = plain_cfg(2);
    AlexanderReport rep = alexander_check(
        [](std::span<const double>) { return Multivector(2); }, {0.5, 1.0, 2.0}, cfg, 33);
    for (const auto& r : rep.rows) CHECK(r.U == 0.0);
}

TEST_CASE("unit data: U scales linearly in the radius, slope one") {
    DiracConfig cfg = plain_cfg(2);
    auto one = [](std::span<const double>) { return Multivector::scalar(2, 1.0); };
    AlexanderReport rep = alexander_check(one, {0.5, 1.0, 2.0}, cfg, 65);
    REQUIRE(rep.rows.size() == 3);
    // closed form on the disk: sup |T(e_0)| over ball(0,l) = l/2 (up to margin)
    for (const auto& r : rep.rows) CHECK(r.U == doctest::Approx(r.lambda / 2.0).epsilon(0.08));
    CHECK(rep.slope == doctest::Approx(1.0).epsilon(0.1));
    // the empirical ratio is a single bounded constant across the sweep
    double rmin = 1e300, rmax = 0.0;
    for (const auto& r : rep.rows) {
        rmin = std::min(rmin, r.ratio);
        rmax = std::max(rmax, r.ratio);
    }
    CHECK(rmax / rmin <= 1.2);
    CHECK(rmax < 1.0);
}

TEST_CASE("doubling the data doubles the bound") {
    DiracConfig cfg = plain_cfg(2);
    auto one = [](std::span<const double>) { return Multivector::scalar(2, 1.0); };
    auto two = [](std::span<const double>) { return Multivector::scalar(2, 2.0); };
    AlexanderReport a = alexander_check(one, {0.5, 1.0}, cfg, 49);
    AlexanderReport b = alexander_check(two, {0.5, 1.0}, cfg, 49);
    for (size_t i = 0; i < a.rows.size(); ++i)
        CHECK(b.rows[i].U == doctest::Approx(2.0 * a.rows[i].U).epsilon(1e-10));
}

TEST_CASE("shrinking domains drive the bound to zero") {
    DiracConfig cfg = plain_cfg(2);
    auto one = [](std::span<const double>) { return Multivector::scalar(2, 1.0); };
    AlexanderReport rep = alexander_check(one, {0.4, 0.2, 0.1, 0.05}, cfg, 49);
    for (size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].U < rep.rows[i - 1].U);
    CHECK(rep.rows.back().U <= 0.03);
}

TEST_CASE("empty sweep is rejected") {
    DiracConfig cfg = plain_cfg(2);
    CHECK_THROWS_AS(
        alexander_check([](std::span<const double>) { return Multivector(2); }, {}, cfg),
        std::invalid_argument);
}
