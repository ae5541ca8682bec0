#pragma once

#include <stdexcept>
#include <string>

namespace zmlab {

enum class QuadMethod { riemann_midpoint, trapezoid, monte_carlo };

inline const char* to_string(QuadMethod m) {
    switch (m) {
        case QuadMethod::riemann_midpoint: return "riemann-midpoint";
        case QuadMethod::trapezoid: return "trapezoid";
        case QuadMethod::monte_carlo: return "monte-carlo";
    }
    return "?";
}

// A quadrature or Monte Carlo result. For quadrature, error_indicator is the
// |estimate - half-resolution estimate| gap; for Monte Carlo it is the
// standard error of the mean (dt is 0 and points is the sample count).
struct MomentEstimate {
    double value = 0.0;
    double dt = 0.0;
    long long points = 0;
    QuadMethod method = QuadMethod::riemann_midpoint;
    double error_indicator = 0.0;
};

}  // namespace zmlab
