#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "condgap/vec.hpp"

namespace condgap::geometry {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

// Per-direction vanishing orders of the gap. An entry is either a finite
// value >= 1 or kInfiniteOrder (that direction does not narrow the gap).
class VanishingOrders {
  public:
    VanishingOrders() = default;
    explicit VanishingOrders(std::vector<double> orders);

    size_t size() const { return orders_.size(); }
    double operator[](size_t j) const { return orders_[j]; }
    bool is_finite(size_t j) const { return std::isfinite(orders_[j]); }
    size_t finite_count() const;
    const std::vector<double>& raw() const { return orders_; }

    // sum over finite entries of 1/(2 alpha_j); infinite entries contribute 0
    double gamma() const;

  private:
    std::vector<double> orders_;
};

double gamma_of(const VanishingOrders& orders);

// Region implicitly described by a sign function: negative strictly inside,
// positive strictly outside, zero on the boundary. Near the boundary the
// magnitude is comparable to the distance (used by sampled validation only).
struct ImplicitShape {
    std::function<double(Vec2)> signed_value;
    Box2 bbox;

    bool inside(Vec2 p) const { return signed_value(p) < 0.0; }
};

ImplicitShape make_circle(Vec2 center, double radius);
ImplicitShape make_capsule(Vec2 a, Vec2 b, double radius);
ImplicitShape make_rectangle(Box2 box);
ImplicitShape make_halfplane_below(double y); // inside: y < level
ImplicitShape make_empty_shape();

// Locate the boundary on segment [p_in, p_out] (signed values of opposite
// sign) by bisection; returns t in [0,1] with position tolerance tol*|seg|.
double bisect_boundary(const ImplicitShape& shape, Vec2 p_inside_domain, Vec2 p_outside,
                       double tol = 1e-12);

// One gap patch: a rotated box of half-width r centered on the gap, with the
// conductor boundaries given as graphs x_n = f(x'), x_n = g(x') (f < g) in the
// patch frame. e_t spans x', e_n spans x_n; the f side belongs to D1.
struct GapPatch {
    Vec2 center;
    Vec2 e_t{1.0, 0.0};
    Vec2 e_n{0.0, 1.0};
    double r = 0.0;
    VanishingOrders orders;
    double sandwich_bound = 10.0; // declared admissible c_hi/c_lo

    // graphs and tangential derivatives; absent for integral-only studies
    std::function<double(double)> f, g, df, dg;

    bool has_graphs() const { return static_cast<bool>(f); }
    Vec2 to_world(double xp, double xn) const { return center + xp * e_t + xn * e_n; }
    // (x', x_n) patch coordinates of a world point
    Vec2 to_patch(Vec2 p) const {
        Vec2 d = p - center;
        return {d.dot(e_t), d.dot(e_n)};
    }
    bool box_contains(Vec2 p) const {
        Vec2 q = to_patch(p);
        return std::abs(q.x) < r && std::abs(q.y) < r;
    }
};

struct GapValidation {
    double c_lo = 0.0;
    double c_hi = 0.0;
    bool ok = false;
    Vec2 violation{}; // x' and gap value at a g<=f violation, if any
    std::string message;
};

// Samples (g-f)/(eps + sum x_j^{2 alpha_j}) on a tensor grid over Q_r and
// returns the extreme ratios. Fails if g <= f anywhere on the sample.
GapValidation validate_gap(const GapPatch& patch, double epsilon, int sample_count = 512);

enum class RegionTag { IN_D1, IN_D2, IN_GAP, IN_FAR, OUTSIDE_OMEGA };

struct Classification {
    RegionTag tag;
    int patch = -1; // valid when tag == IN_GAP
};

struct Configuration {
    int dim = 2;
    std::string preset_name;
    double epsilon = 0.0;
    std::map<std::string, double> params;

    ImplicitShape omega;
    ImplicitShape d1, d2;
    std::vector<GapPatch> patches;

    double far_margin = 0.1;      // required clearance between inclusions and domain wall
    double ball_radius = 0.01;    // interior-ball scale of the far region
    std::vector<Vec2> corners;    // declared corner points, excluded from gradient maxima
    bool boundary_fixture = false; // conductors cross the domain wall (strip fixture)
    std::function<double(Vec2)> fixture_trace; // side-wall data of the strip fixture

    bool has_pde() const { return dim == 2 && static_cast<bool>(omega.signed_value); }
};

Classification classify(const Configuration& config, Vec2 p);

double config_gamma(const Configuration& config);

// Preset factory. Supported names: two_disks_2d, flat_gap_2d, power_gap_2d,
// tori_cross_section_2d, capacitor_strip_2d, integral_only_3d.
// params: power_gap_2d takes "alpha"; integral_only_3d takes "alpha0..k", "r".
Configuration preset(const std::string& name, double epsilon,
                     const std::map<std::string, double>& params = {});

std::vector<std::string> preset_names();

// Sampled construction-time checks (disjoint inclusions, wall clearance,
// narrow-region coverage, per-patch sandwich). Throws ConfigError on failure.
void validate_configuration(const Configuration& config, int samples = 20000);

// Named boundary traces available to experiments.
std::function<double(Vec2)> named_trace(const std::string& name);

} // namespace condgap::geometry
