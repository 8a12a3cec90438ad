#include <cmath>

#include "condgap/quadrature.hpp"
#include "doctest.h"

using namespace condgap::num;

TEST_CASE("polynomials are integrated exactly") {
    auto r = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("sharp lorentzian peak with breakpoint hints") {
    double eps = 1e-8;
    QuadOptions opts;
    opts.rel_tol = 1e-10;
    opts.breakpoints = geometric_breakpoints(std::sqrt(eps), 1.0);
    auto r = integrate([eps](double x) { return 1.0 / (eps + x * x); }, 0.0, 1.0, opts);
    double exact = std::atan(1.0 / std::sqrt(eps)) / std::sqrt(eps);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("integrable endpoint singularity") {
    // int_0^1 x^{-1/2} = 2, with a graded ladder near zero
    QuadOptions opts;
    opts.rel_tol = 1e-9;
    opts.max_evals = 20'000'000;
    opts.breakpoints = geometric_breakpoints(1e-14, 1.0, 8.0);
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-30, 1.0, opts);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("budget exhaustion throws") {
    QuadOptions opts;
    opts.rel_tol = 1e-14;
    opts.max_evals = 60;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts),
                    QuadratureError);
}
