#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "condgap/geometry.hpp"

namespace condgap::capacity {

using geometry::VanishingOrders;

// I(eps) = integral over Q_r in R^{n-1} of dx' / (eps + sum_j x_j^{2 alpha_j})
struct GapIntegralSpec {
    VanishingOrders orders;
    double r = 1.0;
    int n = 2;
    double epsilon = 1.0;

    GapIntegralSpec() = default;
    GapIntegralSpec(VanishingOrders o, double r_, int n_, double eps);

    size_t finite_count() const { return orders.finite_count(); }
    double gamma() const { return orders.gamma(); }
    // radii of the inscribed/enclosing balls after u_j = x_j^{alpha_j}
    double radius_lo() const;
    double radius_hi() const;
};

struct QuadratureSettings {
    double rel_tol = 1e-8;
    long node_budget = 10'000'000;
};

double gap_integral(const GapIntegralSpec& spec, const QuadratureSettings& qs = {});

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
};

// Plain Monte Carlo oracle over the full box Q_r; deterministic per (spec, seed).
McEstimate gap_integral_mc(const GapIntegralSpec& spec, long samples = 1'000'000,
                           uint64_t seed = 0x5EED);

// integral_0^R rho^{2 gamma - 1} / (eps + rho^2) d rho; closed form at gamma = 1
double radial_integral(double gamma, double epsilon, double R,
                       const QuadratureSettings& qs = {});

// Product of the angular beta-type factors; empty product (=1) when fewer
// than two finite orders.
double angular_constant(const VanishingOrders& orders, const QuadratureSettings& qs = {});

enum class Regime { GAMMA_GT_1, GAMMA_EQ_1, GAMMA_LT_1 };

Regime regime_of(double gamma);
std::string regime_name(Regime r);

// Value the integral is expected to track in each regime: 1, log(1/eps), or
// eps^(gamma-1).
double regime_prediction(double gamma, double epsilon);

struct RegimeBound {
    Regime regime = Regime::GAMMA_LT_1;
    double gamma = 0.0;
    double measured_lo = 0.0; // min over the sweep of I(eps)/prediction
    double measured_hi = 0.0;
    bool ok = false;
};

RegimeBound verify_claim(const VanishingOrders& orders, double r, int n,
                         const std::vector<double>& eps_list, double max_window = 20.0,
                         const QuadratureSettings& qs = {});

struct Sandwich {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
    bool ok = false;
};

// Explicit-constant sandwich from the radial reduction:
//   P*A*radial(gamma,eps,R0) <= I(eps) <= P*A*radial(gamma,eps,R1),
// with P = 2^{n-1} r^{n-1-l} / prod(alpha_j). Requires gamma > 0.
Sandwich reduction_sandwich(const VanishingOrders& orders, double r, int n, double epsilon,
                            const QuadratureSettings& qs = {});

} // namespace condgap::capacity
