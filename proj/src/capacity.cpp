#include "condgap/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "condgap/quadrature.hpp"
#include "condgap/rng.hpp"

namespace condgap::capacity {

using num::QuadOptions;
using num::QuadratureError;

GapIntegralSpec::GapIntegralSpec(VanishingOrders o, double r_, int n_, double eps)
    : orders(std::move(o)), r(r_), n(n_), epsilon(eps) {
    if (!(r > 0.0)) throw geometry::ConfigError("gap integral: r must be positive");
    if (n < 2) throw geometry::ConfigError("gap integral: dimension must be >= 2");
    if (orders.size() != static_cast<size_t>(n - 1))
        throw geometry::ConfigError("gap integral: orders must have n-1 entries");
    if (!(epsilon > 0.0)) throw geometry::ConfigError("gap integral: epsilon must be positive");
}

double GapIntegralSpec::radius_lo() const {
    double lo = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < orders.size(); ++j)
        if (orders.is_finite(j)) lo = std::min(lo, std::pow(r, orders[j]));
    return lo;
}

double GapIntegralSpec::radius_hi() const {
    double hi = 0.0;
    for (size_t j = 0; j < orders.size(); ++j)
        if (orders.is_finite(j)) hi = std::max(hi, std::pow(r, orders[j]));
    return hi * std::sqrt(double(orders.finite_count()));
}

namespace {

std::vector<double> finite_alphas(const VanishingOrders& orders) {
    std::vector<double> a;
    for (size_t j = 0; j < orders.size(); ++j)
        if (orders.is_finite(j)) a.push_back(orders[j]);
    return a;
}

// G(k, base) = int over [0,r]^k of dx / (base + sum_j x_j^{2 alpha_j})
double nested_box_integral(const std::vector<double>& alphas, size_t k, double base, double r,
                           double level_tol, long budget, long* evals) {
    if (k == 0) return 1.0 / base;
    const double alpha = alphas[k - 1];
    QuadOptions opts;
    opts.rel_tol = level_tol;
    opts.max_evals = budget - *evals;
    // the integrand turns over where x^{2 alpha} ~ base
    double peak = std::pow(base, 1.0 / (2.0 * alpha));
    opts.breakpoints = num::geometric_breakpoints(std::min(peak, 0.25 * r), r);

    auto f = [&](double x) {
        *evals += 1;
        return nested_box_integral(alphas, k - 1, base + std::pow(x * x, alpha), r, level_tol,
                                   budget, evals);
    };
    auto res = num::integrate(f, 0.0, r, opts);
    return res.value;
}

} // namespace

double gap_integral(const GapIntegralSpec& spec, const QuadratureSettings& qs) {
    if (!(qs.rel_tol > 0.0 && qs.rel_tol <= 1e-2))
        throw geometry::ConfigError("gap_integral: rel_tol outside (0, 1e-2]");
    auto alphas = finite_alphas(spec.orders);
    const size_t l = alphas.size();
    const size_t m = spec.orders.size();
    // directions that never narrow contribute a plain factor 2r each
    double prefactor = std::pow(2.0 * spec.r, double(m - l));
    if (l == 0) return prefactor / spec.epsilon;

    long evals = 0;
    double level_tol = qs.rel_tol / double(2 * l);
    double core = nested_box_integral(alphas, l, spec.epsilon, spec.r, level_tol, qs.node_budget,
                                      &evals);
    return prefactor * std::pow(2.0, double(l)) * core;
}

McEstimate gap_integral_mc(const GapIntegralSpec& spec, long samples, uint64_t seed) {
    if (samples < 10'000) throw geometry::ConfigError("gap_integral_mc: need >= 1e4 samples");
    const size_t m = spec.orders.size();
    const double volume = std::pow(2.0 * spec.r, double(m));

    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < samples; ++i) {
        double denom = spec.epsilon;
        for (size_t j = 0; j < m; ++j) {
            double x = spec.r * (2.0 * stream_unit(seed, uint64_t(i) * m + j) - 1.0);
            if (spec.orders.is_finite(j)) denom += std::pow(x * x, spec.orders[j]);
        }
        double f = 1.0 / denom;
        sum += f;
        sum2 += f * f;
    }
    double mean = sum / samples;
    double var = std::max(sum2 / samples - mean * mean, 0.0);
    McEstimate est;
    est.value = volume * mean;
    est.stderr_ = volume * std::sqrt(var / samples);
    est.samples = samples;
    return est;
}

double radial_integral(double gamma, double epsilon, double R, const QuadratureSettings& qs) {
    if (!(gamma > 0.0)) throw geometry::ConfigError("radial_integral: gamma must be positive");
    if (!(epsilon > 0.0 && R > 0.0))
        throw geometry::ConfigError("radial_integral: epsilon and R must be positive");
    if (gamma == 1.0) return 0.5 * std::log1p(R * R / epsilon);

    // v = rho / sqrt(eps):  eps^{gamma-1} * int_0^V v^{2g-1}/(1+v^2) dv
    const double V = R / std::sqrt(epsilon);
    const double beta = 2.0 * gamma - 1.0;
    long evals = 0;
    double K = 0.0;

    double v1 = std::min(V, 1.0);
    {
        // t = v^{2 gamma} removes the endpoint singularity when beta < 0
        QuadOptions opts;
        opts.rel_tol = 0.5 * qs.rel_tol;
        opts.max_evals = qs.node_budget;
        double t1 = std::pow(v1, 2.0 * gamma);
        auto f = [&](double t) {
            ++evals;
            double v = std::pow(t, 1.0 / (2.0 * gamma));
            return 1.0 / (1.0 + v * v);
        };
        K += num::integrate(f, 0.0, t1, opts).value / (2.0 * gamma);
    }
    if (V > 1.0) {
        QuadOptions opts;
        opts.rel_tol = 0.5 * qs.rel_tol;
        opts.max_evals = qs.node_budget - evals;
        opts.breakpoints = num::geometric_breakpoints(2.0, V, 2.0);
        auto f = [beta](double v) { return std::pow(v, beta) / (1.0 + v * v); };
        K += num::integrate(f, 1.0, V, opts).value;
    }
    return std::pow(epsilon, gamma - 1.0) * K;
}

namespace {

// int_0^{pi/2} (sin phi)^a (cos phi)^b d phi with a, b > -1: split at pi/4 and
// substitute phi = u^k (k chosen per endpoint) to remove the singularity.
double sin_cos_integral(double a, double b, const QuadratureSettings& qs) {
    if (!(a > -1.0 && b > -1.0))
        throw geometry::ConfigError("angular factor: exponent <= -1");
    const double quarter = std::atan(1.0);

    auto piece = [&](double expo_at_zero, bool mirrored) {
        int k = std::max(1, int(std::ceil(1.0 / (1.0 + expo_at_zero) - 1e-12)));
        double upper = std::pow(quarter, 1.0 / k);
        QuadOptions opts;
        opts.rel_tol = 0.5 * qs.rel_tol;
        opts.max_evals = qs.node_budget;
        auto f = [&](double u) {
            double phi = std::pow(u, double(k));
            double s = std::sin(phi), c = std::cos(phi);
            if (mirrored) std::swap(s, c);
            double val = std::pow(s, a) * std::pow(c, b);
            return val * k * std::pow(u, double(k - 1));
        };
        return num::integrate(f, 0.0, upper, opts).value;
    };

    return piece(a, false) + piece(b, true);
}

} // namespace

double angular_constant(const VanishingOrders& orders, const QuadratureSettings& qs) {
    auto alphas = finite_alphas(orders);
    const size_t l = alphas.size();
    if (l <= 1) return 1.0;
    double A = 1.0;
    for (size_t q = 0; q + 1 < l; ++q) {
        double tail = 0.0;
        for (size_t j = q + 1; j < l; ++j) tail += 1.0 / alphas[j];
        double a = -1.0 + tail;
        double b = -1.0 + 1.0 / alphas[q];
        A *= sin_cos_integral(a, b, qs);
    }
    return A;
}

Regime regime_of(double gamma) {
    if (gamma > 1.0) return Regime::GAMMA_GT_1;
    if (gamma == 1.0) return Regime::GAMMA_EQ_1;
    return Regime::GAMMA_LT_1;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::GAMMA_GT_1: return "gamma>1";
        case Regime::GAMMA_EQ_1: return "gamma=1";
        default: return "gamma<1";
    }
}

double regime_prediction(double gamma, double epsilon) {
    switch (regime_of(gamma)) {
        case Regime::GAMMA_GT_1: return 1.0;
        case Regime::GAMMA_EQ_1: return std::log(1.0 / epsilon);
        default: return std::pow(epsilon, gamma - 1.0);
    }
}

RegimeBound verify_claim(const VanishingOrders& orders, double r, int n,
                         const std::vector<double>& eps_list, double max_window,
                         const QuadratureSettings& qs) {
    if (eps_list.size() < 2) throw geometry::ConfigError("verify_claim: need an epsilon sweep");
    auto [mn, mx] = std::minmax_element(eps_list.begin(), eps_list.end());
    if (*mx / *mn < 1e3)
        throw geometry::ConfigError("verify_claim: epsilon list must span >= 3 decades");
    if (*mx >= r * r)
        throw geometry::ConfigError("verify_claim: epsilon must stay below r^2");

    RegimeBound out;
    out.gamma = orders.gamma();
    out.regime = regime_of(out.gamma);
    out.measured_lo = std::numeric_limits<double>::infinity();
    out.measured_hi = 0.0;
    for (double eps : eps_list) {
        GapIntegralSpec spec(orders, r, n, eps);
        double ratio = gap_integral(spec, qs) / regime_prediction(out.gamma, eps);
        out.measured_lo = std::min(out.measured_lo, ratio);
        out.measured_hi = std::max(out.measured_hi, ratio);
    }
    out.ok = out.measured_lo > 0.0 && out.measured_hi / out.measured_lo <= max_window;
    return out;
}

Sandwich reduction_sandwich(const VanishingOrders& orders, double r, int n, double epsilon,
                            const QuadratureSettings& qs) {
    auto alphas = finite_alphas(orders);
    const size_t l = alphas.size();
    if (l == 0)
        throw geometry::ConfigError("reduction_sandwich: gamma must be positive (no finite orders)");
    GapIntegralSpec spec(orders, r, n, epsilon);

    double prod_alpha = 1.0;
    for (double a : alphas) prod_alpha *= a;
    double P = std::pow(2.0, double(n - 1)) * std::pow(r, double(n - 1 - int(l))) / prod_alpha;
    double A = angular_constant(orders, qs);
    double gamma = orders.gamma();

    Sandwich s;
    s.lower = P * A * radial_integral(gamma, epsilon, spec.radius_lo(), qs);
    s.upper = P * A * radial_integral(gamma, epsilon, spec.radius_hi(), qs);
    s.value = gap_integral(spec, qs);
    const double slack = 1e-6; // quadrature tolerance headroom
    s.ok = s.lower <= s.value * (1.0 + slack) && s.value <= s.upper * (1.0 + slack);
    return s;
}

} // namespace condgap::capacity
