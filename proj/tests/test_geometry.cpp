#include <cmath>
#include <set>

#include "condgap/geometry.hpp"
#include "condgap/rng.hpp"
#include "doctest.h"

using namespace condgap;
using namespace condgap::geometry;

TEST_CASE("gamma of order vectors") {
    CHECK(gamma_of(VanishingOrders({1.0, 2.0})) == doctest::Approx(0.75));
    CHECK(gamma_of(VanishingOrders({1.0, kInfiniteOrder})) == doctest::Approx(0.5));
    CHECK(gamma_of(VanishingOrders({kInfiniteOrder, kInfiniteOrder})) == doctest::Approx(0.0));
    CHECK(gamma_of(VanishingOrders({1.0, 1.0})) == doctest::Approx(1.0));
    CHECK(gamma_of(VanishingOrders({1.0})) == doctest::Approx(0.5));
    CHECK_THROWS_AS(VanishingOrders({0.5}), ConfigError);
}

TEST_CASE("gamma is permutation invariant and monotone in each order") {
    SplitMix rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> orders;
        int n = 1 + int(rng.next_u64() % 3);
        for (int j = 0; j < n; ++j)
            orders.push_back(rng.next_unit() < 0.25 ? kInfiniteOrder : 1.0 + 7.0 * rng.next_unit());

        double g = gamma_of(VanishingOrders(orders));
        std::vector<double> shuffled = orders;
        std::rotate(shuffled.begin(), shuffled.begin() + (trial % n), shuffled.end());
        CHECK(gamma_of(VanishingOrders(shuffled)) == doctest::Approx(g));

        // widening any direction cannot increase gamma
        size_t j = trial % n;
        std::vector<double> wider = orders;
        if (std::isfinite(wider[j])) {
            wider[j] += 1.0;
            CHECK(gamma_of(VanishingOrders(wider)) <= g + 1e-15);
        }
    }
}

TEST_CASE("config gamma over presets") {
    auto c = preset("two_disks_2d", 0.1);
    CHECK(c.patches.size() == 1);
    CHECK(config_gamma(c) == doctest::Approx(0.5));

    auto p = preset("power_gap_2d", 0.1, {{"alpha", 2.0}});
    CHECK(config_gamma(p) == doctest::Approx(0.25));

    auto i3 = preset("integral_only_3d", 0.01, {{"alpha0", 1.0}, {"alpha1", 2.0}});
    CHECK(config_gamma(i3) == doctest::Approx(0.75));
    CHECK_FALSE(i3.has_pde());

    Configuration empty;
    CHECK_THROWS_AS(config_gamma(empty), ConfigError);
}

TEST_CASE("classify tags the obvious points") {
    auto c = preset("two_disks_2d", 0.1);
    CHECK(classify(c, {0, 0}).tag == RegionTag::IN_GAP);
    CHECK(classify(c, {0, 0}).patch == 0);
    CHECK(classify(c, {0.3, 0}).tag == RegionTag::IN_D2);
    CHECK(classify(c, {-0.3, 0}).tag == RegionTag::IN_D1);
    CHECK(classify(c, {0, 0.7}).tag == RegionTag::IN_FAR);
    CHECK(classify(c, {5, 5}).tag == RegionTag::OUTSIDE_OMEGA);
}

TEST_CASE("classify is a partition") {
    auto c = preset("flat_gap_2d", 0.05);
    SplitMix rng(7);
    int counts[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 100000; ++i) {
        Vec2 p{rng.next_in(-1.5, 1.5), rng.next_in(-1.5, 1.5)};
        auto t = classify(c, p);
        ++counts[static_cast<int>(t.tag)];
        bool in1 = c.d1.signed_value(p) <= 0.0;
        bool in2 = c.d2.signed_value(p) <= 0.0;
        CHECK_FALSE((in1 && in2));
        if (t.tag == RegionTag::IN_D1) CHECK(in1);
        if (t.tag == RegionTag::IN_D2) CHECK(in2);
    }
    for (int k = 0; k < 5; ++k) CHECK(counts[k] > 0);
}

TEST_CASE("validate_gap sandwich constants") {
    SUBCASE("flat gap of width eps") {
        GapPatch p;
        p.r = 0.5;
        p.orders = VanishingOrders({kInfiniteOrder});
        p.f = [](double) { return -0.05; };
        p.g = [](double) { return 0.05; };
        auto v = validate_gap(p, 0.1);
        CHECK(v.ok);
        CHECK(v.c_lo == doctest::Approx(1.0));
        CHECK(v.c_hi == doctest::Approx(1.0));
    }
    SUBCASE("quadratic gap eps + x^2") {
        GapPatch p;
        p.r = 1.0;
        p.orders = VanishingOrders({1.0});
        p.f = [](double) { return 0.0; };
        p.g = [](double x) { return 0.1 + x * x; };
        auto v = validate_gap(p, 0.1);
        CHECK(v.ok);
        CHECK(v.c_lo == doctest::Approx(1.0));
        CHECK(v.c_hi == doctest::Approx(1.0));
    }
    SUBCASE("eps + x^2 + x^4 against order-1 normal form") {
        double eps = 1e-6;
        GapPatch p;
        p.r = 1.0;
        p.orders = VanishingOrders({1.0});
        p.f = [](double) { return 0.0; };
        p.g = [eps](double x) { return eps + x * x + x * x * x * x; };
        auto v = validate_gap(p, eps);
        CHECK(v.ok);
        // ratio (eps + x^2 + x^4)/(eps + x^2): min 1 at 0, max at |x| = 1
        CHECK(v.c_lo == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(v.c_hi == doctest::Approx((eps + 2.0) / (eps + 1.0)).epsilon(1e-6));
    }
    SUBCASE("violation reported when g <= f") {
        GapPatch p;
        p.r = 1.0;
        p.orders = VanishingOrders({1.0});
        p.f = [](double) { return 0.0; };
        p.g = [](double x) { return 0.1 - 0.2 * x * x; };
        auto v = validate_gap(p, 0.1);
        CHECK_FALSE(v.ok);
        CHECK(v.message.find("g <= f") != std::string::npos);
    }
}

TEST_CASE("every preset validates across its epsilon range") {
    for (double eps : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
        CHECK_NOTHROW(preset("two_disks_2d", eps));
        CHECK_NOTHROW(preset("flat_gap_2d", eps));
        CHECK_NOTHROW(preset("power_gap_2d", eps, {{"alpha", 2.0}}));
        CHECK_NOTHROW(preset("capacitor_strip_2d", eps));
    }
    for (double eps : {0.04, 0.024, 0.015}) CHECK_NOTHROW(preset("tori_cross_section_2d", eps));
    CHECK_NOTHROW(preset("power_gap_2d", 0.05, {{"alpha", 1.0}}));
    CHECK_NOTHROW(preset("power_gap_2d", 0.05, {{"alpha", 3.0}}));
    CHECK_THROWS_AS(preset("no_such_preset", 0.1), ConfigError);
    CHECK_THROWS_AS(preset("two_disks_2d", 0.5), ConfigError);
    CHECK_THROWS_AS(preset("two_disks_2d", -1.0), ConfigError);
}

TEST_CASE("bisection locates circle boundary to 1e-10") {
    auto circle = make_circle({0.2, -0.1}, 0.55);
    SplitMix rng(3);
    for (int i = 0; i < 50; ++i) {
        double ang = rng.next_in(0, 6.283185307);
        Vec2 dir{std::cos(ang), std::sin(ang)};
        Vec2 inside = Vec2{0.2, -0.1} + 0.1 * dir;
        Vec2 outside = Vec2{0.2, -0.1} + 1.3 * dir;
        double t = bisect_boundary(circle, inside, outside);
        Vec2 hit = inside + t * (outside - inside);
        CHECK(std::abs((hit - Vec2{0.2, -0.1}).norm() - 0.55) < 1e-10);
    }
}
