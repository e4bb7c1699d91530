#include "bohr/numerics.hpp"

#include "bohr/errors.hpp"

#include <cmath>
#include <string>

namespace bohr {

namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

Panel make_panel(const std::function<double(double)>& f, double a, double fa, double b,
                 double fb) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    return {a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

double simpson_recurse(const std::function<double(double)>& f, const Panel& p, double eps,
                       int depth) {
    const Panel left = make_panel(f, p.a, p.fa, p.m, p.fm);
    const Panel right = make_panel(f, p.m, p.fm, p.b, p.fb);
    const double delta = left.whole + right.whole - p.whole;
    if (std::abs(delta) <= 15.0 * eps)
        return left.whole + right.whole + delta / 15.0;
    if (depth <= 0)
        throw Error(ErrorKind::SlowConvergence,
                    "adaptive Simpson exhausted its depth near x = " + std::to_string(p.m));
    return simpson_recurse(f, left, 0.5 * eps, depth - 1) +
           simpson_recurse(f, right, 0.5 * eps, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b)
        return 0.0;
    // Start from four panels so a single lucky Simpson estimate on a
    // symmetric integrand cannot terminate the recursion early.
    const int pieces = 4;
    const double w = (b - a) / pieces;
    double total = 0.0;
    double x0 = a;
    double f0 = f(a);
    for (int i = 1; i <= pieces; ++i) {
        const double x1 = (i == pieces) ? b : a + i * w;
        const double f1 = f(x1);
        total += simpson_recurse(f, make_panel(f, x0, f0, x1, f1), abs_tol / pieces, max_depth);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

RootResult bisect_secant(const std::function<double(double)>& f, double lo, double hi,
                         double width, int secant_steps) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return {lo, 0.0, {lo, lo}, 0};
    if (fhi == 0.0)
        return {hi, 0.0, {hi, hi}, 0};
    if (std::signbit(flo) == std::signbit(fhi))
        throw Error(ErrorKind::BracketFailure, "no sign change on [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
    const bool increasing = flo < 0.0;
    int iterations = 0;
    while (hi - lo > width && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f(mid);
        ++iterations;
        if (fm == 0.0)
            return {mid, 0.0, {lo, hi}, iterations};
        if ((fm < 0.0) == increasing) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    // Secant polish inside the final bracket; keep the best point seen.
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::abs(flo) < std::abs(fhi) ? flo : fhi;
    double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
    for (int k = 0; k < secant_steps; ++k) {
        if (f1 == f0)
            break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= lo && x2 <= hi))
            break;
        const double f2 = f(x2);
        ++iterations;
        if (std::abs(f2) < std::abs(fbest)) {
            best = x2;
            fbest = f2;
        }
        if (f2 == 0.0)
            break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    return {best, std::abs(fbest), {lo, hi}, iterations};
}

} // namespace bohr
