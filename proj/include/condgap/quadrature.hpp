#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace condgap::num {

class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
    bool converged = false;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    long max_evals = 2'000'000;
    // Initial breakpoints inside (a,b). Adaptivity can only split existing
    // intervals, so a sharp peak must be bracketed here or it may be missed.
    std::vector<double> breakpoints;
};

// Adaptive Gauss-Kronrod 7-15 on [a,b]. Throws QuadratureError if the node
// budget is exhausted before the tolerance is met.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

// Same, but returns the partial estimate instead of throwing.
QuadResult integrate_nothrow(const std::function<double(double)>& f, double a, double b,
                             const QuadOptions& opts = {});

// Geometric ladder a, a*factor, ... capped at b; handy peak breakpoints.
std::vector<double> geometric_breakpoints(double a, double b, double factor = 4.0);

} // namespace condgap::num
