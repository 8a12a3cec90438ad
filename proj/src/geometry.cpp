#include "condgap/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "condgap/rng.hpp"

namespace condgap::geometry {

VanishingOrders::VanishingOrders(std::vector<double> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw ConfigError("vanishing orders: empty list");
    for (double a : orders_) {
        if (std::isnan(a)) throw ConfigError("vanishing orders: NaN entry");
        if (std::isfinite(a) && a < 1.0)
            throw ConfigError("vanishing orders: finite entry " + std::to_string(a) + " < 1");
    }
}

size_t VanishingOrders::finite_count() const {
    size_t n = 0;
    for (double a : orders_)
        if (std::isfinite(a)) ++n;
    return n;
}

double VanishingOrders::gamma() const {
    double s = 0.0;
    for (double a : orders_)
        if (std::isfinite(a)) s += 0.5 / a;
    return s;
}

double gamma_of(const VanishingOrders& orders) { return orders.gamma(); }

ImplicitShape make_circle(Vec2 c, double radius) {
    ImplicitShape s;
    s.signed_value = [c, radius](Vec2 p) { return (p - c).norm() - radius; };
    s.bbox = {{c.x - radius, c.y - radius}, {c.x + radius, c.y + radius}};
    return s;
}

ImplicitShape make_capsule(Vec2 a, Vec2 b, double radius) {
    ImplicitShape s;
    s.signed_value = [a, b, radius](Vec2 p) {
        Vec2 ab = b - a;
        double t = std::clamp((p - a).dot(ab) / ab.norm2(), 0.0, 1.0);
        return (p - (a + t * ab)).norm() - radius;
    };
    s.bbox = {{std::min(a.x, b.x) - radius, std::min(a.y, b.y) - radius},
              {std::max(a.x, b.x) + radius, std::max(a.y, b.y) + radius}};
    return s;
}

ImplicitShape make_rectangle(Box2 box) {
    ImplicitShape s;
    Vec2 c{0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y)};
    Vec2 h{0.5 * (box.hi.x - box.lo.x), 0.5 * (box.hi.y - box.lo.y)};
    s.signed_value = [c, h](Vec2 p) {
        return std::max(std::abs(p.x - c.x) - h.x, std::abs(p.y - c.y) - h.y);
    };
    s.bbox = box;
    return s;
}

ImplicitShape make_halfplane_below(double y) {
    ImplicitShape s;
    s.signed_value = [y](Vec2 p) { return p.y - y; };
    s.bbox = {{-1e3, -1e3}, {1e3, y}};
    return s;
}

ImplicitShape make_empty_shape() {
    ImplicitShape s;
    s.signed_value = [](Vec2) { return 1.0; };
    s.bbox = {{0, 0}, {0, 0}};
    return s;
}

double bisect_boundary(const ImplicitShape& shape, Vec2 p_in, Vec2 p_out, double tol) {
    double sa = shape.signed_value(p_in);
    double sb = shape.signed_value(p_out);
    if (sa == 0.0) return 0.0;
    if (sb == 0.0) return 1.0;
    if ((sa < 0.0) == (sb < 0.0))
        throw ConfigError("bisect_boundary: endpoints on the same side");
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        Vec2 pm = p_in + mid * (p_out - p_in);
        double sm = shape.signed_value(pm);
        if (sm == 0.0) return mid;
        if ((sm < 0.0) == (sa < 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

GapValidation validate_gap(const GapPatch& patch, double epsilon, int sample_count) {
    GapValidation v;
    if (!patch.has_graphs()) {
        v.message = "patch has no gap graphs";
        return v;
    }
    if (sample_count < 100) sample_count = 100;
    const auto& al = patch.orders;
    double c_lo = std::numeric_limits<double>::infinity();
    double c_hi = 0.0;
    for (int i = 0; i <= sample_count; ++i) {
        double xp = -patch.r + 2.0 * patch.r * i / sample_count;
        double width = patch.g(xp) - patch.f(xp);
        if (!(width > 0.0)) {
            v.ok = false;
            v.violation = {xp, width};
            v.message = "g <= f at x' = " + std::to_string(xp);
            return v;
        }
        double denom = epsilon;
        for (size_t j = 0; j < al.size(); ++j)
            if (al.is_finite(j)) denom += std::pow(xp * xp, al[j]);
        double ratio = width / denom;
        c_lo = std::min(c_lo, ratio);
        c_hi = std::max(c_hi, ratio);
    }
    v.c_lo = c_lo;
    v.c_hi = c_hi;
    v.ok = c_lo > 0.0 && std::isfinite(c_hi);
    return v;
}

Classification classify(const Configuration& config, Vec2 p) {
    if (!config.has_pde()) return {RegionTag::OUTSIDE_OMEGA, -1};
    if (config.omega.signed_value(p) >= 0.0) return {RegionTag::OUTSIDE_OMEGA, -1};
    if (config.d1.signed_value(p) <= 0.0) return {RegionTag::IN_D1, -1};
    if (config.d2.signed_value(p) <= 0.0) return {RegionTag::IN_D2, -1};
    for (size_t i = 0; i < config.patches.size(); ++i)
        if (config.patches[i].box_contains(p)) return {RegionTag::IN_GAP, static_cast<int>(i)};
    return {RegionTag::IN_FAR, -1};
}

double config_gamma(const Configuration& config) {
    if (config.patches.empty()) throw ConfigError("config_gamma: no gap patches");
    double g = std::numeric_limits<double>::infinity();
    for (const auto& patch : config.patches) g = std::min(g, patch.orders.gamma());
    return g;
}

std::function<double(Vec2)> named_trace(const std::string& name) {
    if (name == "zero") return [](Vec2) { return 0.0; };
    if (name == "one") return [](Vec2) { return 1.0; };
    if (name == "dipole_x")
        return [](Vec2 p) { return p.x / std::max(p.norm(), 1e-30); };
    if (name == "dipole_y")
        return [](Vec2 p) { return p.y / std::max(p.norm(), 1e-30); };
    if (name == "quadrupole")
        return [](Vec2 p) {
            double r2 = std::max(p.norm2(), 1e-30);
            return (p.x * p.x - p.y * p.y) / r2;
        };
    throw ConfigError("unknown boundary trace: " + name);
}

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Configuration make_two_disks(double eps) {
    // Two facing conductors whose contact faces are circular arcs (radius
    // R_arc) with quadratic contact at the origin; gap runs along x = 0.
    const double R_arc = 0.5;
    const double half_h = 0.37; // vertical half-extent of each body
    const double back = 0.45;   // |x| of the back walls
    const double omega_r = 0.85;

    auto arc_x = [R_arc, eps](double y) {
        return 0.5 * eps + R_arc - std::sqrt(R_arc * R_arc - y * y);
    };

    Configuration c;
    c.preset_name = "two_disks_2d";
    c.epsilon = eps;
    c.omega = make_circle({0, 0}, omega_r);

    c.d2.signed_value = [arc_x, back, half_h](Vec2 p) {
        return std::max({arc_x(p.y) - p.x, p.x - back, std::abs(p.y) - half_h});
    };
    c.d2.bbox = {{0.0, -half_h}, {back, half_h}};
    c.d1.signed_value = [arc_x, back, half_h](Vec2 p) {
        return std::max({p.x + arc_x(p.y), -back - p.x, std::abs(p.y) - half_h});
    };
    c.d1.bbox = {{-back, -half_h}, {0.0, half_h}};

    GapPatch patch;
    patch.center = {0, 0};
    patch.e_n = {1, 0}; // x_n along +x, D1 on the negative side
    patch.e_t = {0, 1};
    patch.r = 0.25;
    patch.orders = VanishingOrders({1.0});
    patch.sandwich_bound = 5.0;
    patch.g = [arc_x](double xp) { return arc_x(xp); };
    patch.f = [arc_x](double xp) { return -arc_x(xp); };
    patch.dg = [R_arc](double xp) { return xp / std::sqrt(R_arc * R_arc - xp * xp); };
    patch.df = [dg = patch.dg](double xp) { return -dg(xp); };
    c.patches.push_back(patch);

    c.far_margin = 0.15;
    c.ball_radius = 0.01;
    double ya = arc_x(half_h);
    c.corners = {{ya, half_h},   {ya, -half_h},   {back, half_h},   {back, -half_h},
                 {-ya, half_h},  {-ya, -half_h},  {-back, half_h},  {-back, -half_h}};
    return c;
}

Configuration make_flat_gap(double eps) {
    // Capsule conductors with long flat faces; the gap is exactly eps over
    // |x| <= L and opens quadratically around the end caps.
    const double L = 1.1;
    const double rho = 0.1;
    const double omega_r = 1.35;
    const double y0 = rho + 0.5 * eps;

    Configuration c;
    c.preset_name = "flat_gap_2d";
    c.epsilon = eps;
    c.omega = make_circle({0, 0}, omega_r);
    c.d1 = make_capsule({-L, -y0}, {L, -y0}, rho);
    c.d2 = make_capsule({-L, y0}, {L, y0}, rho);

    auto face = [L, rho, eps](double x) {
        double over = std::abs(x) - L;
        double sag = over <= 0.0 ? 0.0 : rho - std::sqrt(std::max(rho * rho - over * over, 0.0));
        return 0.5 * eps + sag;
    };
    auto dface = [L, rho](double x) {
        double over = std::abs(x) - L;
        if (over <= 0.0) return 0.0;
        double root = std::sqrt(std::max(rho * rho - over * over, 1e-30));
        return (x > 0 ? 1.0 : -1.0) * over / root;
    };

    auto add_patch = [&](double xc, double r, double bound) {
        GapPatch patch;
        patch.center = {xc, 0};
        patch.e_n = {0, 1};
        patch.e_t = {1, 0};
        patch.r = r;
        patch.orders = VanishingOrders({kInfiniteOrder});
        patch.sandwich_bound = bound;
        patch.g = [face, xc](double xp) { return face(xc + xp); };
        patch.f = [face, xc](double xp) { return -face(xc + xp); };
        patch.dg = [dface, xc](double xp) { return dface(xc + xp); };
        patch.df = [dface, xc](double xp) { return -dface(xc + xp); };
        c.patches.push_back(patch);
    };
    // interior boxes over the flat face; slightly smaller end boxes reach
    // around the cap transition
    for (int k = -10; k <= 10; ++k) add_patch(0.095 * k, 0.15, 1.5);
    add_patch(-1.05, 0.12, 12.0);
    add_patch(1.05, 0.12, 12.0);

    c.far_margin = 0.1;
    c.ball_radius = 0.005;
    return c;
}

Configuration make_power_gap(double eps, double alpha) {
    if (alpha < 1.0 || alpha > 8.0)
        throw ConfigError("power_gap_2d: alpha must lie in [1, 8]");
    const double X = 0.48;  // side walls
    const double top = 0.35;
    const double omega_r = 0.85;

    auto curve = [eps, alpha](double x) { return 0.5 * eps + std::pow(x * x, alpha); };
    auto dcurve = [alpha](double x) {
        return x == 0.0 ? 0.0 : 2.0 * alpha * std::pow(x * x, alpha - 1.0) * x;
    };

    Configuration c;
    c.preset_name = "power_gap_2d";
    c.epsilon = eps;
    c.params["alpha"] = alpha;
    c.omega = make_circle({0, 0}, omega_r);

    c.d2.signed_value = [curve, X, top](Vec2 p) {
        return std::max({curve(p.x) - p.y, std::abs(p.x) - X, p.y - top});
    };
    c.d2.bbox = {{-X, 0.0}, {X, top}};
    c.d1.signed_value = [curve, X, top](Vec2 p) {
        return std::max({p.y + curve(p.x), std::abs(p.x) - X, -top - p.y});
    };
    c.d1.bbox = {{-X, -top}, {X, 0.0}};

    // a single box centered on the contact point: the power-law normal form
    // holds only around the gap minimum
    GapPatch patch;
    patch.center = {0, 0};
    patch.e_n = {0, 1};
    patch.e_t = {1, 0};
    patch.r = 0.35;
    patch.orders = VanishingOrders({alpha});
    patch.sandwich_bound = 4.0;
    patch.g = curve;
    patch.f = [curve](double xp) { return -curve(xp); };
    patch.dg = dcurve;
    patch.df = [dcurve](double xp) { return -dcurve(xp); };
    c.patches.push_back(patch);

    c.far_margin = 0.1;
    c.ball_radius = std::min(0.009, std::pow(0.09, alpha)); // 0.3^(2 alpha)
    double yw = curve(X);
    c.corners = {{X, yw},  {-X, yw},  {X, top},  {-X, top},
                 {X, -yw}, {-X, -yw}, {X, -top}, {-X, -top}};
    return c;
}

Configuration make_capacitor_strip(double eps) {
    // Exact-solution fixture: the working domain is the strip between two
    // half-plane plates; the side walls carry the interpolating linear trace.
    const double a = 0.5;
    const double b = 0.3;

    Configuration c;
    c.preset_name = "capacitor_strip_2d";
    c.epsilon = eps;
    c.omega = make_rectangle({{-a, -b}, {a, b}});
    c.d1 = make_halfplane_below(-0.5 * eps);
    c.d2.signed_value = [eps](Vec2 p) { return 0.5 * eps - p.y; };
    c.d2.bbox = {{-1e3, 0.5 * eps}, {1e3, 1e3}};

    GapPatch patch;
    patch.center = {0, 0};
    patch.e_n = {0, 1};
    patch.e_t = {1, 0};
    patch.r = 0.25;
    patch.orders = VanishingOrders({kInfiniteOrder});
    patch.sandwich_bound = 1.5;
    patch.g = [eps](double) { return 0.5 * eps; };
    patch.f = [eps](double) { return -0.5 * eps; };
    patch.dg = [](double) { return 0.0; };
    patch.df = [](double) { return 0.0; };
    c.patches.push_back(patch);

    c.far_margin = 0.0;
    c.ball_radius = 0.0;
    c.boundary_fixture = true;
    c.fixture_trace = [eps](Vec2 p) { return 0.5 - p.y / eps; };
    c.corners = {{a, 0.5 * eps}, {a, -0.5 * eps}, {-a, 0.5 * eps}, {-a, -0.5 * eps}};
    return c;
}

Configuration make_tori_cross_section(double eps) {
    // Cross-section of a conductor ringed around another: central disk plus a
    // C-shaped ring at uniform distance eps, its open ends tapering away.
    const double A = 0.25;      // disk radius
    const double w = 0.14;      // ring thickness
    const double delta = 0.45;  // notch half-angle (around direction -x)
    const double tau = 0.9;     // angular width of the taper
    const double bmax = 0.05;   // taper lift at the ring ends
    const double omega_r = 0.8;

    auto notch_dist = [](Vec2 p) {
        // angular distance from the -x direction
        double ang = std::atan2(p.y, p.x);
        return std::acos(-1.0) - std::abs(ang);
    };
    auto lift = [delta, tau, bmax](double m) {
        if (m >= delta + tau) return 0.0;
        double t = (delta + tau - m) / tau;
        return bmax * t * t;
    };

    Configuration c;
    c.preset_name = "tori_cross_section_2d";
    c.epsilon = eps;
    c.omega = make_circle({0, 0}, omega_r);
    c.d2 = make_circle({0, 0}, A);

    c.d1.signed_value = [A, w, eps, delta, notch_dist, lift](Vec2 p) {
        double rho = p.norm();
        double m = notch_dist(p);
        double rin = A + eps + lift(m);
        double angular = (delta - m) * 0.38; // arc-length proxy
        return std::max({rin - rho, rho - (rin + w), angular});
    };
    double rout = A + eps + bmax + w;
    c.d1.bbox = {{-rout, -rout}, {rout, rout}};

    const double rho_c = A + 0.5 * eps;
    auto add_patch = [&](double m_center, double sign, double r, double alpha, double bound) {
        double ang = sign * (std::acos(-1.0) - m_center);
        Vec2 er{std::cos(ang), std::sin(ang)};
        GapPatch patch;
        patch.center = rho_c * er;
        patch.e_n = {-er.x, -er.y};       // inward: from ring (D1) to disk (D2)
        patch.e_t = {-er.y, er.x};
        patch.r = r;
        patch.orders = VanishingOrders({alpha});
        patch.sandwich_bound = bound;
        // disk boundary (upper graph, D2 side)
        patch.g = [A, rho_c](double xp) { return rho_c - std::sqrt(A * A - xp * xp); };
        patch.dg = [A, rho_c](double xp) { return xp / std::sqrt(A * A - xp * xp); };
        // ring inner boundary (lower graph, D1 side); angle of the boundary
        // point approximated to first order in x'/rho
        patch.f = [A, eps, rho_c, ang, lift, notch_dist](double xp) {
            double m = notch_dist({std::cos(ang + xp / rho_c), std::sin(ang + xp / rho_c)});
            double rin = A + eps + lift(m);
            return rho_c - std::sqrt(std::max(rin * rin - xp * xp, 1e-30));
        };
        patch.df = [f = patch.f](double xp) {
            double h = 1e-6;
            return (f(xp + h) - f(xp - h)) / (2 * h);
        };
        c.patches.push_back(patch);
    };

    for (double s : {-1.0, 1.0}) add_patch(0.9, s, 0.1, 1.0, 30.0);
    for (double m : {1.5, 1.95, 2.4, 2.85})
        for (double s : {-1.0, 1.0}) add_patch(m, s, 0.1, kInfiniteOrder, 8.0);
    add_patch(std::acos(-1.0), 1.0, 0.1, kInfiniteOrder, 8.0);

    c.far_margin = 0.15;
    c.ball_radius = 0.011;
    double pi = std::acos(-1.0);
    for (double s : {-1.0, 1.0}) {
        double ang = s * (pi - delta);
        double r1 = A + eps + bmax, r2 = r1 + w;
        c.corners.push_back({r1 * std::cos(ang), r1 * std::sin(ang)});
        c.corners.push_back({r2 * std::cos(ang), r2 * std::sin(ang)});
    }
    return c;
}

Configuration make_integral_only(double eps, const std::map<std::string, double>& params) {
    Configuration c;
    c.preset_name = "integral_only_3d";
    c.dim = 3;
    c.epsilon = eps;
    c.params = params;
    c.omega = make_empty_shape();
    c.d1 = make_empty_shape();
    c.d2 = make_empty_shape();

    std::vector<double> alphas;
    for (int j = 0;; ++j) {
        auto it = params.find("alpha" + std::to_string(j));
        if (it == params.end()) break;
        alphas.push_back(it->second);
    }
    if (alphas.empty()) alphas = {1.0, 1.0};

    GapPatch patch;
    patch.r = get_param(params, "r", 0.5);
    patch.orders = VanishingOrders(alphas);
    c.patches.push_back(patch);
    return c;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"two_disks_2d",          "flat_gap_2d",        "power_gap_2d",
            "tori_cross_section_2d", "capacitor_strip_2d", "integral_only_3d"};
}

Configuration preset(const std::string& name, double eps,
                     const std::map<std::string, double>& params) {
    if (!(eps > 0.0)) throw ConfigError("preset: epsilon must be positive");
    auto check_eps_max = [&](double eps_max) {
        if (eps > eps_max)
            throw ConfigError("preset " + name + ": epsilon " + std::to_string(eps) +
                              " above maximum " + std::to_string(eps_max));
    };

    Configuration c;
    if (name == "two_disks_2d") {
        check_eps_max(0.12);
        c = make_two_disks(eps);
    } else if (name == "flat_gap_2d") {
        check_eps_max(0.12);
        c = make_flat_gap(eps);
    } else if (name == "power_gap_2d") {
        check_eps_max(0.1);
        c = make_power_gap(eps, get_param(params, "alpha", 2.0));
    } else if (name == "capacitor_strip_2d") {
        check_eps_max(0.2);
        c = make_capacitor_strip(eps);
    } else if (name == "tori_cross_section_2d") {
        check_eps_max(0.04);
        c = make_tori_cross_section(eps);
    } else if (name == "integral_only_3d") {
        c = make_integral_only(eps, params);
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    c.params.insert(params.begin(), params.end());
    validate_configuration(c);
    return c;
}

void validate_configuration(const Configuration& config, int samples) {
    for (const auto& patch : config.patches) {
        if (!patch.has_graphs()) continue;
        double det = patch.e_t.x * patch.e_n.y - patch.e_t.y * patch.e_n.x;
        if (std::abs(std::abs(det) - 1.0) > 1e-12 || std::abs(patch.e_t.dot(patch.e_n)) > 1e-12)
            throw ConfigError("patch frame is not orthonormal");

        auto gv = validate_gap(patch, config.epsilon);
        if (!gv.ok) throw ConfigError(config.preset_name + ": " + gv.message);
        if (gv.c_hi / gv.c_lo > patch.sandwich_bound)
            throw ConfigError(config.preset_name + ": sandwich ratio " +
                              std::to_string(gv.c_hi / gv.c_lo) + " above declared bound " +
                              std::to_string(patch.sandwich_bound));
        const double value_bound = 10.0;
        for (int i = 0; i <= 64; ++i) {
            double xp = -patch.r + 2.0 * patch.r * i / 64;
            if (std::max(std::abs(patch.f(xp)), std::abs(patch.g(xp))) >= patch.r)
                throw ConfigError(config.preset_name + ": gap graphs leave the patch box");
            if (std::max({std::abs(patch.f(xp)), std::abs(patch.g(xp)), std::abs(patch.df(xp)),
                          std::abs(patch.dg(xp))}) > value_bound)
                throw ConfigError(config.preset_name + ": graph or slope bound exceeded");
        }
    }

    if (!config.has_pde()) return;

    SplitMix rng(0xC0FFEEULL);
    const Box2 bb = config.omega.bbox;
    int coverage_misses = 0;
    for (int i = 0; i < samples; ++i) {
        Vec2 p{rng.next_in(bb.lo.x, bb.hi.x), rng.next_in(bb.lo.y, bb.hi.y)};
        double s0 = config.omega.signed_value(p);
        double s1 = config.d1.signed_value(p);
        double s2 = config.d2.signed_value(p);

        if (s1 < 0.0 && s2 < 0.0)
            throw ConfigError(config.preset_name + ": inclusions overlap at (" +
                              std::to_string(p.x) + ", " + std::to_string(p.y) + ")");

        if (!config.boundary_fixture) {
            if (std::abs(s0) < 0.8 * config.far_margin && (s1 <= 0.0 || s2 <= 0.0))
                throw ConfigError(config.preset_name + ": inclusion within far_margin of wall");

            // narrow-region coverage: points close to both inclusions must be
            // inside a declared gap patch box
            if (s0 < 0.0 && s1 > 0.0 && s2 > 0.0 &&
                std::max(s1, s2) < config.ball_radius) {
                bool in_patch = false;
                for (const auto& patch : config.patches)
                    if (patch.box_contains(p)) { in_patch = true; break; }
                if (!in_patch) ++coverage_misses;
            }
        }

        // graph/shape consistency inside patch boxes
        for (const auto& patch : config.patches) {
            if (!patch.has_graphs() || !patch.box_contains(p)) continue;
            Vec2 q = patch.to_patch(p);
            const double band = 5e-3;
            double fl = patch.f(q.x), gu = patch.g(q.x);
            if (q.y > fl + band && q.y < gu - band && (s1 <= 0.0 || s2 <= 0.0))
                throw ConfigError(config.preset_name + ": point between gap graphs inside a conductor");
            if (q.y < fl - band && s1 > 0.0)
                throw ConfigError(config.preset_name + ": point below f outside D1");
            if (q.y > gu + band && s2 > 0.0)
                throw ConfigError(config.preset_name + ": point above g outside D2");
        }
    }
    if (coverage_misses > 0)
        throw ConfigError(config.preset_name + ": " + std::to_string(coverage_misses) +
                          " sampled narrow-region points not covered by any patch box");
}

} // namespace condgap::geometry
