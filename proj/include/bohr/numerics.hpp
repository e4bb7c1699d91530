#pragma once

#include <functional>
#include <utility>

namespace bohr {

// Adaptive Simpson quadrature with Richardson correction. `abs_tol` is the
// absolute error target for the whole interval; the recursion splits the
// budget between halves. Throws SlowConvergence if max_depth is exhausted
// while the local error estimate is still above its budget.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 48);

struct RootResult {
    double root;
    double residual; // |f(root)|
    std::pair<double, double> bracket;
    int iterations;
};

// Bisection on [lo, hi] with f(lo) < 0 < f(hi) until the bracket is narrower
// than `width`, then at most `secant_steps` secant steps kept inside the
// final bracket. Throws BracketFailure if the end-point signs are wrong.
RootResult bisect_secant(const std::function<double(double)>& f, double lo, double hi,
                         double width, int secant_steps = 5);

} // namespace bohr
