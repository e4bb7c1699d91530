#include "bohr/extremal.hpp"

#include "bohr/errors.hpp"
#include "bohr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace bohr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLookahead = 32;
constexpr double kTaylorPatch = 1e-4;

bool dual_paths_agree(double a, double b) {
    return std::abs(a - b) <= kDualPathTolerance * std::max(1.0, std::abs(a));
}

[[noreturn]] void mismatch(const PhiSpec& spec, const std::string& what, double closed,
                           double series) {
    throw Error(ErrorKind::DualPathMismatch,
                spec.name() + " " + what + ": closed form " + std::to_string(closed) +
                    " vs series " + std::to_string(series));
}

// Tail estimate of sum_{n > n_last} term(n) from the next kLookahead terms.
// Alternating terms with non-increasing magnitude are bounded by the first
// omitted term; same-signed terms use the observed ratio as a geometric rate.
double lookahead_tail(const std::function<double(int)>& term, int n_last) {
    std::vector<double> next;
    for (int n = n_last + 1; n <= n_last + kLookahead; ++n) {
        const double t = term(n);
        if (t != 0.0)
            next.push_back(t);
    }
    if (next.empty())
        return 0.0;
    bool alternating = true;
    bool same_sign = true;
    bool shrinking = true;
    double rho = 0.0;
    for (std::size_t i = 1; i < next.size(); ++i) {
        const bool flip = std::signbit(next[i]) != std::signbit(next[i - 1]);
        alternating = alternating && flip;
        same_sign = same_sign && !flip;
        shrinking = shrinking && std::abs(next[i]) <= std::abs(next[i - 1]);
        rho = std::max(rho, std::abs(next[i]) / std::abs(next[i - 1]));
    }
    if (next.size() == 1 || (alternating && shrinking))
        return std::abs(next.front());
    if (same_sign && rho < 1.0)
        return std::abs(next.front()) / (1.0 - rho);
    return kInf;
}

struct SeriesSum {
    double value;
    int order;
    double tail;
};

// Partial sums at orders start, 2 start, ... up to kMaxOrder until the tail
// estimate drops below kTailTolerance. `tail` is inf on failure.
SeriesSum controlled_sum(const std::function<double(int)>& term, int start_order,
                         std::optional<int> last_nonzero = std::nullopt) {
    double sum = 0.0;
    int summed = 0;
    double tail = kInf;
    double previous_tail = kInf;
    for (int order = std::max(start_order, 1);; order = std::min(order * 2, kMaxOrder)) {
        for (int n = summed + 1; n <= order; ++n)
            sum += term(n);
        summed = order;
        tail = (last_nonzero && *last_nonzero <= order) ? 0.0 : lookahead_tail(term, order);
        if (tail < kTailTolerance || order >= kMaxOrder)
            return {sum, order, tail};
        // Give up early when the decay seen over the last doubling, projected
        // to kMaxOrder, cannot reach the tolerance.
        if (std::isfinite(previous_tail) && std::isfinite(tail) && previous_tail > 0.0) {
            const double rate = tail / previous_tail;
            const double doublings = std::log2(static_cast<double>(kMaxOrder) / order);
            if (rate >= 1.0 || tail * std::pow(rate, doublings) > kTailTolerance)
                return {sum, order, tail};
        }
        previous_tail = tail;
    }
}

// Alternating series with slowly varying term magnitudes: the last partial
// sums oscillate around the limit, and repeated averaging of neighbours
// cancels the oscillation to high order.
double averaged_sum(const std::function<double(int)>& term, int order, int levels = 16) {
    std::vector<double> partial;
    double acc = 0.0;
    for (int n = 1; n <= order; ++n) {
        acc += term(n);
        if (n > order - levels - 1)
            partial.push_back(acc);
    }
    for (int l = 0; l < levels; ++l)
        for (std::size_t i = 0; i + 1 < partial.size() - l; ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    return partial.front();
}

// Lazily extended h coefficients for the k(-1) alternating sum.
class HCoefficients {
  public:
    HCoefficients(const PhiSpec& spec, TruncatedSeries seed) : spec_(spec), h_(std::move(seed)) {}

    double operator()(int n) {
        if (n > h_.order()) {
            int order = std::max(2 * h_.order(), n);
            order = std::min(order, kMaxOrder + kLookahead);
            order = std::max(order, n);
            h_ = extremal_h_series(spec_, order);
        }
        return h_[n];
    }

  private:
    const PhiSpec& spec_;
    TruncatedSeries h_;
};

double exponential_integral_ein(double x, double abs_tol) {
    // integral_0^x (e^t - 1)/t dt with the removable singularity patched.
    auto f = [](double t) {
        if (std::abs(t) < kTaylorPatch)
            return 1.0 + t / 2.0 + t * t / 6.0;
        return std::expm1(t) / t;
    };
    return adaptive_simpson(f, 0.0, x, abs_tol);
}

// h(t)/t, continuous through t = 0 where it equals 1.
double h_over_t(const PhiSpec& spec, double t) {
    if (t == 0.0)
        return 1.0;
    if (auto h = closed_form_h(spec, t))
        return *h / t;
    return std::exp(h_exponent_quadrature(spec, t, 1e-13));
}

} // namespace

std::string_view to_string(BoundaryMethod method) {
    switch (method) {
    case BoundaryMethod::ClosedForm: return "closed_form";
    case BoundaryMethod::Series: return "series";
    case BoundaryMethod::Quadrature: return "quadrature";
    }
    return "unknown";
}

TruncatedSeries extremal_h_series(const PhiSpec& spec, int order) {
    if (order < 2)
        throw Error(ErrorKind::DomainError, "extremal series need order >= 2");
    const TruncatedSeries phi = phi_coefficients(spec, order);
    const TruncatedSeries phi_minus_one = phi - TruncatedSeries::constant(1.0, order);
    const TruncatedSeries e = series_exp(integrate_term_over_t(phi_minus_one));
    return shift_up(e).truncated(order);
}

TruncatedSeries extremal_k_series(const TruncatedSeries& h_series) {
    std::vector<double> c(h_series.coeffs().size(), 0.0);
    for (int n = 1; n <= h_series.order(); ++n)
        c[static_cast<std::size_t>(n)] = h_series[n] / n;
    return TruncatedSeries(std::move(c));
}

ExtremalPair build_extremal(const PhiSpec& spec, int order, BuildOptions options) {
    if (options.require_positivity && !spec.positivity_certified())
        throw Error(ErrorKind::PositivityRequired,
                    spec.name() + " has no positivity certificate (some B_n < 0 or unchecked)");
    TruncatedSeries h = extremal_h_series(spec, order);
    TruncatedSeries k = extremal_k_series(h);
    const double h_minus1 = eval_h_minus1(spec, order, options.allow_quadrature).value;
    const double k_minus1 = options.compute_k_minus1
                                ? eval_k_minus1(spec, order, options.allow_quadrature).value
                                : std::numeric_limits<double>::quiet_NaN();
    return {std::move(h), std::move(k), h_minus1, k_minus1, spec, order};
}

bool has_closed_form(const PhiSpec& spec) { return spec.kind() != KernelKind::Ucv; }

std::optional<double> closed_form_h(const PhiSpec& spec, double r) {
    if (!(r >= -1.0 && r < 1.0))
        throw Error(ErrorKind::DomainError, "closed-form h needs r in [-1, 1)");
    const auto& p = spec.params();
    switch (spec.kind()) {
    case KernelKind::HalfPlane: return r / ((1.0 - r) * (1.0 - r));
    case KernelKind::Janowski:
        if (p.b == 0.0)
            return r * std::exp(p.a * r);
        return r * std::exp((p.a - p.b) / p.b * std::log1p(p.b * r));
    case KernelKind::Exponential:
        return r * std::exp((1.0 - p.alpha) * exponential_integral_ein(r, 1e-12));
    case KernelKind::Cardioid: return r * std::exp(4.0 * r / 3.0 + r * r / 3.0);
    case KernelKind::Rational: {
        const double k = kRationalK;
        const double q = k / (k - r);
        return r * std::exp(-r / k) * q * q;
    }
    case KernelKind::Booth: {
        if (p.alpha == 0.0)
            return r * std::exp(r);
        const double q = std::sqrt(p.alpha);
        return r * std::exp(std::atanh(q * r) / q);
    }
    case KernelKind::Lens: return r * std::exp(2.0 * p.s * r + p.s * p.s * r * r / 2.0);
    case KernelKind::Ucv: return std::nullopt;
    }
    return std::nullopt;
}

double h_exponent_quadrature(const PhiSpec& spec, double x, double abs_tol) {
    if (!(x >= -1.0 && x < 1.0))
        throw Error(ErrorKind::DomainError, "exponent quadrature needs x in [-1, 1)");
    const double b1 = spec.coefficient(1);
    const double b2 = spec.coefficient(2);
    const double b3 = spec.coefficient(3);
    auto f = [&](double t) {
        if (std::abs(t) < kTaylorPatch)
            return b1 + t * (b2 + t * b3);
        return (phi_eval_closed_interval(spec, t) - 1.0) / t;
    };
    return adaptive_simpson(f, 0.0, x, abs_tol);
}

AdaptiveEval eval_h_series(const ExtremalPair& pair, double r) {
    auto gen = [&](int n) {
        return n <= pair.order ? pair.h_series.truncated(n) : extremal_h_series(pair.spec, n);
    };
    return eval_adaptive(gen, r, std::min(pair.order, kMaxOrder));
}

double eval_h(const ExtremalPair& pair, double r) {
    if (!(r > -1.0 && r < 1.0))
        throw Error(ErrorKind::DomainError, "eval_h needs r in (-1, 1), got " + std::to_string(r));
    std::optional<AdaptiveEval> series;
    try {
        series = eval_h_series(pair, r);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SlowConvergence)
            throw;
    }
    if (auto closed = closed_form_h(pair.spec, r)) {
        if (series && !dual_paths_agree(*closed, series->value))
            mismatch(pair.spec, "h(" + std::to_string(r) + ")", *closed, series->value);
        return *closed;
    }
    if (series)
        return series->value;
    return r * std::exp(h_exponent_quadrature(pair.spec, r));
}

BoundaryValue eval_h_minus1(const PhiSpec& spec, int order, bool allow_quadrature) {
    auto term = [&](int n) { return (n % 2 == 0 ? 1.0 : -1.0) * spec.coefficient(n) / n; };
    const SeriesSum s = controlled_sum(term, order, spec.polynomial_degree());
    const bool converged = s.tail < kTailTolerance;
    const double series_value = -std::exp(s.value);

    if (auto closed = closed_form_h(spec, -1.0)) {
        if (converged && !dual_paths_agree(*closed, series_value))
            mismatch(spec, "h(-1)", *closed, series_value);
        return {*closed, BoundaryMethod::ClosedForm, s.order, s.tail};
    }
    if (converged)
        return {series_value, BoundaryMethod::Series, s.order, s.tail};
    if (!allow_quadrature)
        throw Error(ErrorKind::SlowConvergence,
                    spec.name() + " h(-1): alternating tail " + std::to_string(s.tail) +
                        " not below 1e-13 by order " + std::to_string(kMaxOrder));
    return {-std::exp(h_exponent_quadrature(spec, -1.0)), BoundaryMethod::Quadrature, s.order,
            s.tail};
}

AdaptiveEval eval_k_series(const ExtremalPair& pair, double r) {
    auto gen = [&](int n) {
        return n <= pair.order ? pair.k_series.truncated(n)
                               : extremal_k_series(extremal_h_series(pair.spec, n));
    };
    return eval_adaptive(gen, r, std::min(pair.order, kMaxOrder));
}

double k_by_quadrature(const PhiSpec& spec, double r, double abs_tol) {
    if (!(r >= -1.0 && r < 1.0))
        throw Error(ErrorKind::DomainError, "k quadrature needs r in [-1, 1)");
    return adaptive_simpson([&](double t) { return h_over_t(spec, t); }, 0.0, r, abs_tol);
}

double eval_k(const ExtremalPair& pair, double r) {
    if (!(r > -1.0 && r < 1.0))
        throw Error(ErrorKind::DomainError, "eval_k needs r in (-1, 1), got " + std::to_string(r));
    try {
        return eval_k_series(pair, r).value;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SlowConvergence)
            throw;
    }
    return k_by_quadrature(pair.spec, r);
}

BoundaryValue eval_k_minus1(const PhiSpec& spec, int order, bool allow_quadrature) {
    HCoefficients h(spec, extremal_h_series(spec, std::min(order, kMaxOrder) + kLookahead));
    auto term = [&](int n) { return (n % 2 == 0 ? 1.0 : -1.0) * h(n) / n; };
    const SeriesSum s = controlled_sum(term, order);
    if (s.tail < kTailTolerance)
        return {s.value, BoundaryMethod::Series, s.order, s.tail};
    if (!allow_quadrature)
        throw Error(ErrorKind::SlowConvergence,
                    spec.name() + " k(-1): alternating tail " + std::to_string(s.tail) +
                        " not below 1e-13 by order " + std::to_string(kMaxOrder));
    return {k_by_quadrature(spec, -1.0), BoundaryMethod::Quadrature, s.order, s.tail};
}

BoundaryValue eval_k_minus1(const ExtremalPair& pair, bool allow_quadrature) {
    return eval_k_minus1(pair.spec, pair.order, allow_quadrature);
}

std::vector<PhiSpec> default_catalog() {
    std::vector<PhiSpec> specs{
        PhiSpec::booth(0.5),
        PhiSpec::cardioid(),
        PhiSpec::exponential(0.0),
        PhiSpec::exponential(0.5),
        PhiSpec::halfplane(),
        PhiSpec::janowski(0.5, -0.5),
        PhiSpec::janowski(1.0, -0.5),
        PhiSpec::lens(0.5),
        PhiSpec::lens(std::numbers::sqrt2 / 2.0),
        PhiSpec::rational(),
        PhiSpec::ucv(),
    };
    for (PhiSpec& s : specs)
        validate_positivity(s, kDefaultOrder);
    return specs;
}

std::vector<DualPathRecord> dual_path_self_check(const std::vector<PhiSpec>& specs,
                                                 const std::vector<double>& grid,
                                                 double tolerance) {
    std::vector<DualPathRecord> out;
    for (const PhiSpec& spec : specs) {
        const TruncatedSeries h = extremal_h_series(spec, kDefaultOrder);
        const ExtremalPair pair{h, extremal_k_series(h), 0.0, 0.0, spec, kDefaultOrder};
        auto record = [&](const char* what, double diff) {
            out.push_back({spec.name(), spec.param_string(), what, diff, diff <= tolerance});
        };

        if (has_closed_form(spec)) {
            double worst = 0.0;
            for (double r : grid) {
                const double series = eval_h_series(pair, r).value;
                worst = std::max(worst, std::abs(*closed_form_h(spec, r) - series));
            }
            record("h(r)", worst);
        }

        // h(-1): alternating series against closed form or quadrature. When
        // the series converges too slowly for the tail bound, repeated
        // averaging of its last partial sums gives an independent estimate.
        auto term = [&](int n) { return (n % 2 == 0 ? 1.0 : -1.0) * spec.coefficient(n) / n; };
        const SeriesSum s = controlled_sum(term, kDefaultOrder, spec.polynomial_degree());
        const double h_reference = has_closed_form(spec)
                                       ? *closed_form_h(spec, -1.0)
                                       : -std::exp(h_exponent_quadrature(spec, -1.0));
        if (s.tail < kTailTolerance)
            record("h(-1)", std::abs(-std::exp(s.value) - h_reference));
        else
            record("h(-1) averaged", std::abs(-std::exp(averaged_sum(term, kMaxOrder)) -
                                              h_reference));

        const BoundaryValue k_series = eval_k_minus1(spec, kDefaultOrder, true);
        const double k_reference = k_by_quadrature(spec, -1.0);
        if (k_series.method == BoundaryMethod::Series) {
            record("k(-1)", std::abs(k_series.value - k_reference));
        } else {
            HCoefficients h_big(spec, extremal_h_series(spec, kMaxOrder + kLookahead));
            auto k_term = [&](int n) { return (n % 2 == 0 ? 1.0 : -1.0) * h_big(n) / n; };
            record("k(-1) averaged", std::abs(averaged_sum(k_term, kMaxOrder) - k_reference));
        }
    }
    return out;
}

} // namespace bohr
