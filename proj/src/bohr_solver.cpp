#include "bohr/bohr_solver.hpp"

#include "bohr/errors.hpp"
#include "bohr/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bohr {

namespace {

constexpr int kMonotoneGrid = 200;
constexpr double kOuterLimit = 1.0 - 1e-6;

void check_tolerance(double tol) {
    if (!(tol >= kMinTolerance && tol <= kMaxTolerance)) {
        std::ostringstream os;
        os << "tolerance must lie in [1e-14, 1e-6], got " << tol;
        throw Error(ErrorKind::ParamOutOfRange, os.str());
    }
}

void require_certified(const PhiSpec& spec) {
    if (!spec.positivity_certified())
        throw Error(ErrorKind::PositivityRequired,
                    spec.name() + " (" + spec.param_string() +
                        ") is not positivity-certified: the Bohr solver needs B_n >= 0, B_1 > 0");
}

// Values beyond 1/3 are only needed to report the uncapped root; the closed
// forms (or quadrature) are used there instead of ever larger truncations.
double h_beyond_cap(const ExtremalPair& pair, double r) {
    if (auto h = closed_form_h(pair.spec, r))
        return *h;
    return r * std::exp(h_exponent_quadrature(pair.spec, r));
}

double k_beyond_cap(const ExtremalPair& pair, double r) { return k_by_quadrature(pair.spec, r); }

using Fn = std::function<double(double)>;

BohrResult solve(const ExtremalPair& pair, ClassKind kind, double tol, const Fn& inner,
                 const Fn& outer) {
    const double at_zero = inner(0.0);
    if (!(at_zero < 0.0)) {
        std::ostringstream os;
        os << "H(0) = " << at_zero << " is not negative for " << pair.spec.name();
        throw Error(ErrorKind::BracketFailure, os.str());
    }

    // Monotonicity on [0, 1/3] makes the root in that interval unique.
    double previous = at_zero;
    double at_cap = at_zero;
    for (int i = 1; i < kMonotoneGrid; ++i) {
        const double r = (i == kMonotoneGrid - 1) ? kBohrCap : kBohrCap * i / (kMonotoneGrid - 1);
        const double value = inner(r);
        if (!(value > previous)) {
            std::ostringstream os;
            os << "H is not increasing near r = " << r << " for " << pair.spec.name();
            throw Error(ErrorKind::NonMonotone, os.str());
        }
        previous = value;
        at_cap = value;
    }

    if (at_cap >= 0.0) {
        const RootResult rr = bisect_secant(inner, 0.0, kBohrCap, tol);
        return {rr.root, rr.root, false, rr.residual, rr.bracket, pair.order, kind};
    }

    // Capped: the usable radius is 1/3. Locate the true root for reporting by
    // expanding the bracket towards 1 - 1e-6.
    BohrResult result{kBohrCap, std::nullopt, true, std::abs(at_cap), {kBohrCap, kBohrCap},
                      pair.order, kind};
    try {
        double lo = kBohrCap;
        for (double gap = 1.0 - kBohrCap; gap >= 1.0 - kOuterLimit; gap *= 0.5) {
            const double hi = 1.0 - gap / 2.0;
            if (outer(hi) > 0.0) {
                const RootResult rr = bisect_secant(outer, lo, hi, tol);
                result.root = rr.root;
                result.residual = rr.residual;
                result.bracket = rr.bracket;
                break;
            }
            lo = hi;
        }
    } catch (const Error&) {
        // The diagnostic root is optional; the capped radius stands.
    }
    return result;
}

std::optional<double> bisect_printed(const std::function<double(double)>& g) {
    // Root of g on [-1, 0) located by sampling, then bisection.
    const int n = 400;
    double x0 = -1.0;
    double g0 = g(x0);
    for (int i = 1; i < n; ++i) {
        const double x1 = -1.0 + static_cast<double>(i) / n;
        const double g1 = g(x1);
        if (std::isfinite(g0) && std::isfinite(g1) && std::signbit(g0) != std::signbit(g1))
            return bisect_secant(g, x0, x1, 1e-13).root;
        x0 = x1;
        g0 = g1;
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(ClassKind kind) {
    switch (kind) {
    case ClassKind::Starlike: return "starlike";
    case ClassKind::Convex: return "convex";
    case ClassKind::BoundaryStarlike: return "boundary_starlike";
    }
    return "unknown";
}

std::optional<ClassKind> class_from_name(std::string_view name) {
    if (name == "starlike")
        return ClassKind::Starlike;
    if (name == "convex")
        return ClassKind::Convex;
    if (name == "boundary_starlike" || name == "galpha")
        return ClassKind::BoundaryStarlike;
    return std::nullopt;
}

double starlike_H(const ExtremalPair& pair, double r) { return eval_h(pair, r) + pair.h_minus1; }

double convex_H(const ExtremalPair& pair, double r) { return eval_k(pair, r) + pair.k_minus1; }

BohrResult starlike_bohr_radius(const PhiSpec& spec, double tol, int order) {
    check_tolerance(tol);
    require_certified(spec);
    BuildOptions options;
    options.compute_k_minus1 = false;
    const ExtremalPair pair = build_extremal(spec, order, options);
    return solve(
        pair, ClassKind::Starlike, tol, [&](double r) { return starlike_H(pair, r); },
        [&](double r) { return h_beyond_cap(pair, r) + pair.h_minus1; });
}

BohrResult convex_bohr_radius(const PhiSpec& spec, double tol, int order) {
    check_tolerance(tol);
    require_certified(spec);
    const ExtremalPair pair = build_extremal(spec, order);
    return solve(
        pair, ClassKind::Convex, tol, [&](double r) { return convex_H(pair, r); },
        [&](double r) { return k_beyond_cap(pair, r) + pair.k_minus1; });
}

double galpha_bohr_radius(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "G_alpha radius needs 0 <= alpha < 1, got alpha = " << alpha;
        throw Error(ErrorKind::ParamOutOfRange, os.str());
    }
    const double t = std::pow(2.0, 1.0 / (2.0 * (1.0 - alpha)));
    return (t - 1.0) / (t + 1.0);
}

BohrResult galpha_result(double alpha) {
    const double r = galpha_bohr_radius(alpha);
    const double residual = std::abs(std::pow((1.0 + r) / (1.0 - r), 2.0 * (1.0 - alpha)) - 2.0);
    return {r, r, false, residual, {r, r}, 0, ClassKind::BoundaryStarlike};
}

double one_third_margin(const PhiSpec& spec, ClassKind kind) {
    switch (kind) {
    case ClassKind::Starlike: {
        BuildOptions options;
        options.compute_k_minus1 = false;
        const ExtremalPair pair = build_extremal(spec, kDefaultOrder, options);
        return starlike_H(pair, kBohrCap);
    }
    case ClassKind::Convex: return convex_H(build_extremal(spec, kDefaultOrder), kBohrCap);
    case ClassKind::BoundaryStarlike: break;
    }
    throw Error(ErrorKind::ParamOutOfRange, "threshold scans are defined for starlike and convex");
}

ThresholdResult threshold_scan(const SpecFamily& family, double lo, double hi, double tol,
                               ClassKind kind, int samples) {
    if (!(lo < hi))
        throw Error(ErrorKind::ParamOutOfRange, "threshold scan needs lo < hi");
    if (!(tol > 0.0))
        throw Error(ErrorKind::ParamOutOfRange, "threshold scan needs tol > 0");
    samples = std::max(samples, 3);
    auto f = [&](double p) { return one_third_margin(family(p), kind); };

    ThresholdResult out{std::numeric_limits<double>::quiet_NaN(), {lo, hi}, false, {}};
    for (int i = 0; i < samples; ++i) {
        const double p = (i == samples - 1) ? hi : lo + (hi - lo) * i / (samples - 1);
        out.samples.emplace_back(p, f(p));
    }

    auto signs = [&] {
        std::string s;
        for (const auto& [p, v] : out.samples)
            s += v > 0.0 ? '+' : (v < 0.0 ? '-' : '0');
        return s;
    };
    int changes = 0;
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < out.samples.size(); ++i) {
        const double a = out.samples[i - 1].second;
        const double b = out.samples[i].second;
        if (std::signbit(a) != std::signbit(b))
            ++changes;
        up = up && b > a;
        down = down && b < a;
    }
    if (changes == 0)
        throw Error(ErrorKind::NoSignChange,
                    "H(1/3) keeps one sign over the range (sampled signs " + signs() + ")");
    if (changes > 1 || !(up || down))
        throw Error(ErrorKind::NonMonotone,
                    "H(1/3) is not monotone in the parameter (sampled signs " + signs() + ")");
    out.increasing = up;

    for (std::size_t i = 1; i < out.samples.size(); ++i) {
        if (std::signbit(out.samples[i - 1].second) != std::signbit(out.samples[i].second)) {
            const RootResult rr =
                bisect_secant(f, out.samples[i - 1].first, out.samples[i].first, tol);
            out.parameter = rr.root;
            out.bracket = rr.bracket;
            break;
        }
    }
    return out;
}

SpecFamily exponential_family() {
    return [](double alpha) { return certified(PhiSpec::exponential(alpha)); };
}

SpecFamily lens_family() {
    return [](double s) { return certified(PhiSpec::lens(s)); };
}

SpecFamily booth_family() {
    return [](double alpha) { return certified(PhiSpec::booth(alpha)); };
}

SpecFamily janowski_family_b(double a) {
    return [a](double b) { return certified(PhiSpec::janowski(a, b)); };
}

ExponentConventionReport janowski_exponent_convention(double a, double tol) {
    const ThresholdResult scan = threshold_scan(janowski_family_b(a), -1.0, 0.0, tol);
    const double b = scan.parameter;
    const double ln3 = std::log(3.0);

    // 3(1-B)/(3+B) = 3^k  <=>  log(3(1-B)/(3+B)) = k log 3.
    const double lhs = std::log(3.0 * (1.0 - b) / (3.0 + b));
    const double k_statement = b / (b - a);
    const double k_proof = (b - a) / b;

    ExponentConventionReport rep{};
    rep.a = a;
    rep.b_star = b;
    rep.tol = tol;
    rep.relation_residual_b_over_b_minus_a = std::abs(lhs - k_statement * ln3);
    rep.relation_residual_b_minus_a_over_b = std::abs(lhs - k_proof * ln3);

    // (1 - 3^k)/(1 + 3^k) = -tanh(k ln3 / 2), finite for every k.
    rep.printed_root_b_over_b_minus_a =
        bisect_printed([&](double x) { return x + std::tanh(x / (x - a) * ln3 / 2.0); });
    rep.printed_root_b_minus_a_over_b =
        bisect_printed([&](double x) { return x + std::tanh((x - a) / x * ln3 / 2.0); });
    rep.convention = rep.relation_residual_b_over_b_minus_a <= rep.relation_residual_b_minus_a_over_b
                         ? "B/(B-A)"
                         : "(B-A)/B";
    return rep;
}

} // namespace bohr
