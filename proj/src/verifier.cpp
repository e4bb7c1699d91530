#include "bohr/verifier.hpp"

#include "bohr/bohr_solver.hpp"
#include "bohr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace bohr {

namespace {

constexpr int kCirclePoints = 64;
constexpr double kGrowthTail = 1e-9;
constexpr double kMajorantTail = 1e-12;

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

bool phase_is_real(double phase) {
    return std::abs(phase) <= 1e-15 || std::abs(phase - std::numbers::pi) <= 1e-15;
}

// Raises the truncation order until the geometric tail at r is below
// kTailTolerance; at the maximum order anything up to `limit` is accepted.
TruncatedSeries with_tail_control(const std::function<TruncatedSeries(int)>& make, double r,
                                  int order, double limit) {
    for (int n = std::max(order, 2);; n *= 2) {
        n = std::min(n, kMaxOrder);
        TruncatedSeries f = make(n);
        const double tail = geometric_tail_estimate(f, r);
        if (tail <= kTailTolerance || (n >= kMaxOrder && tail <= limit))
            return f;
        if (n >= kMaxOrder) {
            std::ostringstream os;
            os << "truncation tail " << tail << " at r = " << r << " exceeds " << limit
               << " at order " << kMaxOrder;
            throw Error(ErrorKind::TailTooLarge, os.str());
        }
    }
}

double max_radius(const std::vector<double>& grid) {
    double r = 0.0;
    for (double x : grid) {
        if (!(x > 0.0 && x < 1.0))
            throw Error(ErrorKind::DomainError, "growth radii must lie in (0, 1)");
        r = std::max(r, x);
    }
    return r;
}

void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw Error(ErrorKind::ParamOutOfRange, "needs 0 <= alpha < 1");
}

class Accumulator {
  public:
    Accumulator(std::string name, double tolerance) : tolerance_(tolerance) {
        record_.name = std::move(name);
    }
    void add(double margin) {
        if (record_.samples == 0 || margin < record_.worst_margin)
            record_.worst_margin = margin;
        ++record_.samples;
        if (!(margin >= -tolerance_))
            ++record_.failures;
    }
    CheckRecord done() const { return record_; }

  private:
    double tolerance_;
    CheckRecord record_;
};

} // namespace

SchwarzSpec SchwarzSpec::identity() { return {}; }

SchwarzSpec SchwarzSpec::scaled_rotation(double modulus, double phase) {
    SchwarzSpec s;
    s.kind = SchwarzKind::ScaledRotation;
    s.modulus = modulus;
    s.phase = phase;
    return s;
}

SchwarzSpec SchwarzSpec::polynomial(std::vector<double> coeffs) {
    SchwarzSpec s;
    s.kind = SchwarzKind::Polynomial;
    s.coeffs = std::move(coeffs);
    return s;
}

SchwarzSpec SchwarzSpec::zero() { return polynomial({0.0}); }

void certify(const SchwarzSpec& omega) {
    switch (omega.kind) {
    case SchwarzKind::Identity: return;
    case SchwarzKind::ScaledRotation:
        if (!(omega.modulus >= 0.0 && omega.modulus <= 1.0))
            throw Error(ErrorKind::UncertifiedSchwarz, "rotation modulus must lie in [0, 1]");
        if (!phase_is_real(omega.phase))
            throw Error(ErrorKind::UncertifiedSchwarz,
                        "rotation phase must be 0 or pi to keep coefficients real");
        return;
    case SchwarzKind::Polynomial: {
        if (omega.coeffs.empty() || omega.coeffs[0] != 0.0)
            throw Error(ErrorKind::UncertifiedSchwarz, "polynomial Schwarz function needs omega(0) = 0");
        double mass = 0.0;
        for (double c : omega.coeffs) {
            if (!std::isfinite(c))
                throw Error(ErrorKind::UncertifiedSchwarz, "non-finite Schwarz coefficient");
            mass += std::abs(c);
        }
        if (mass > 1.0 + 1e-15)
            throw Error(ErrorKind::UncertifiedSchwarz,
                        "sum of |omega_n| is " + std::to_string(mass) + " > 1");
        return;
    }
    }
}

TruncatedSeries schwarz_series(const SchwarzSpec& omega, int order) {
    certify(omega);
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    switch (omega.kind) {
    case SchwarzKind::Identity:
        if (order >= 1)
            c[1] = 1.0;
        break;
    case SchwarzKind::ScaledRotation:
        if (order >= 1)
            c[1] = std::abs(omega.phase) <= 1e-15 ? omega.modulus : -omega.modulus;
        break;
    case SchwarzKind::Polynomial:
        for (std::size_t n = 1; n < omega.coeffs.size() && n <= c.size() - 1; ++n)
            c[n] = omega.coeffs[n];
        break;
    }
    return TruncatedSeries(std::move(c));
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t i = index ^ 0xD1B54A32D192ED03ULL;
    state_ = splitmix64(s) ^ splitmix64(i);
}

std::uint64_t SampleRng::next() { return splitmix64(state_); }

double SampleRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int SampleRng::integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
}

SchwarzSpec random_schwarz(SampleRng& rng, int max_degree) {
    const int degree = rng.integer(1, std::max(1, max_degree));
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    double mass = 0.0;
    for (int n = 1; n <= degree; ++n) {
        c[static_cast<std::size_t>(n)] = rng.uniform(-1.0, 1.0);
        mass += std::abs(c[static_cast<std::size_t>(n)]);
    }
    const double target = 1.0 - rng.uniform(); // (0, 1]
    if (mass > 0.0)
        for (double& x : c)
            x *= target / mass;
    // Rounding may leave the mass a hair above the target.
    double check = 0.0;
    for (double x : c)
        check += std::abs(x);
    if (check > 1.0)
        for (double& x : c)
            x /= check;
    return SchwarzSpec::polynomial(std::move(c));
}

SchwarzSpec schwarz_for_index(std::uint64_t seed, int index) {
    switch (index) {
    case 0: return SchwarzSpec::identity();
    case 1: return SchwarzSpec::scaled_rotation(1.0, std::numbers::pi);
    case 2: return SchwarzSpec::zero();
    default: break;
    }
    SampleRng rng(seed, static_cast<std::uint64_t>(index));
    return random_schwarz(rng);
}

TruncatedSeries sample_starlike(const PhiSpec& spec, const SchwarzSpec& omega, int order) {
    if (order < 2)
        throw Error(ErrorKind::DomainError, "sample_starlike needs order >= 2");
    const TruncatedSeries w = schwarz_series(omega, order);
    const TruncatedSeries phi = phi_coefficients(spec, order);
    TruncatedSeries p;
    if (omega.kind == SchwarzKind::Polynomial) {
        p = compose(phi, w);
    } else {
        // phi(c z) has coefficients B_n c^n.
        std::vector<double> c(static_cast<std::size_t>(order) + 1);
        double power = 1.0;
        for (int n = 0; n <= order; ++n) {
            c[static_cast<std::size_t>(n)] = phi[n] * power;
            power *= w[1];
        }
        p = TruncatedSeries(std::move(c));
    }

    std::vector<double> a(static_cast<std::size_t>(order) + 1, 0.0);
    a[1] = 1.0;
    for (int n = 2; n <= order; ++n) {
        double acc = 0.0;
        for (int j = 1; j < n; ++j)
            acc += a[static_cast<std::size_t>(j)] * p[n - j];
        a[static_cast<std::size_t>(n)] = acc / (n - 1);
    }
    return TruncatedSeries(std::move(a));
}

TruncatedSeries convex_from_starlike(const TruncatedSeries& g) { return extremal_k_series(g); }

double bohr_majorant(const TruncatedSeries& f, double r) {
    double acc = 0.0;
    for (int n = f.order(); n >= 2; --n)
        acc = (acc + std::abs(f[n])) * r;
    return r + acc * r;
}

double check_bohr_starlike(const ExtremalPair& pair, const SchwarzSpec& omega, double radius,
                           int order) {
    const TruncatedSeries f = with_tail_control(
        [&](int n) { return sample_starlike(pair.spec, omega, n); }, radius, order, kMajorantTail);
    return -pair.h_minus1 - bohr_majorant(f, radius);
}

double check_bohr_convex(const ExtremalPair& pair, const SchwarzSpec& omega, double radius,
                         int order) {
    const TruncatedSeries f = with_tail_control(
        [&](int n) { return convex_from_starlike(sample_starlike(pair.spec, omega, n)); }, radius,
        order, kMajorantTail);
    return -pair.k_minus1 - bohr_majorant(f, radius);
}

double check_subordination_majorant(const TruncatedSeries& f, const SchwarzSpec& omega, double r) {
    if (!(r >= 0.0 && r <= kBohrCap))
        throw Error(ErrorKind::DomainError, "subordination majorant check needs 0 <= r <= 1/3");
    const TruncatedSeries g = compose(f, schwarz_series(omega, f.order()));
    return eval(majorant(f), r) - eval(majorant(g), r);
}

GrowthMargins check_growth(const ExtremalPair& pair, const SchwarzSpec& omega,
                           const std::vector<double>& r_grid, bool convex, int order) {
    const double rmax = max_radius(r_grid);
    const TruncatedSeries f = with_tail_control(
        [&](int n) {
            TruncatedSeries g = sample_starlike(pair.spec, omega, n);
            return convex ? convex_from_starlike(g) : g;
        },
        rmax, order, kGrowthTail);

    GrowthMargins m{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    for (double r : r_grid) {
        const double upper = convex ? eval_k(pair, r) : eval_h(pair, r);
        const double lower = convex ? -eval_k(pair, -r) : -eval_h(pair, -r);
        for (int j = 0; j < kCirclePoints; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / kCirclePoints;
            const double mod = std::abs(eval_complex(f, std::polar(r, theta)));
            m.lower = std::min(m.lower, (mod - lower) / std::max(1.0, lower));
            m.upper = std::min(m.upper, (upper - mod) / std::max(1.0, upper));
        }
    }
    return m;
}

double order_alpha_coefficient_bound(double alpha, int n) {
    require_alpha(alpha);
    if (n < 1)
        throw Error(ErrorKind::DomainError, "coefficient index must be >= 1");
    // Numerator and (n-1)! are kept apart so alpha in {0, 1/2} stays exact.
    double num = 1.0;
    double den = 1.0;
    for (int k = 2; k <= n; ++k) {
        num *= k - 2.0 * alpha;
        den *= k - 1;
    }
    return num / den;
}

TruncatedSeries order_alpha_extremal(double alpha, int order) {
    require_alpha(alpha);
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    if (order >= 1)
        c[1] = 1.0;
    for (int n = 2; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = order_alpha_coefficient_bound(alpha, n);
    return TruncatedSeries(std::move(c));
}

double check_coefficient_bounds_order_alpha(double alpha, const SchwarzSpec& omega, int order) {
    require_alpha(alpha);
    const TruncatedSeries f = sample_starlike(PhiSpec::order_alpha(alpha), omega, order);
    double margin = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= order; ++n)
        margin = std::min(margin, order_alpha_coefficient_bound(alpha, n) - std::abs(f[n]));
    return margin;
}

TruncatedSeries binomial_series(double gamma, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)] * (n - 1 - gamma) / n;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries sample_galpha(double alpha, const SchwarzSpec& omega, int order) {
    require_alpha(alpha);
    const TruncatedSeries s = sample_starlike(PhiSpec::order_alpha(alpha), omega, order + 1);
    return cauchy_mul(binomial_series(2.0 * (1.0 - alpha), order), shift_down(s));
}

double check_galpha(double alpha, const SchwarzSpec& omega, double r, int order) {
    const double rg = galpha_bohr_radius(alpha);
    if (!(r >= 0.0 && r <= rg * (1.0 + 1e-15)))
        throw Error(ErrorKind::DomainError, "G_alpha check needs 0 <= r <= r_G");
    const TruncatedSeries g = with_tail_control(
        [&](int n) { return sample_galpha(alpha, omega, n); }, r, order, kMajorantTail);
    return 1.0 - (eval(majorant(g), r) - 1.0);
}

GrowthMargins check_galpha_growth(double alpha, const SchwarzSpec& omega,
                                  const std::vector<double>& r_grid, int order) {
    require_alpha(alpha);
    const double gamma = 2.0 * (1.0 - alpha);
    const TruncatedSeries g = with_tail_control(
        [&](int n) { return sample_galpha(alpha, omega, n); }, max_radius(r_grid), order,
        kGrowthTail);
    GrowthMargins m{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    for (double r : r_grid) {
        const double upper = std::pow((1.0 + r) / (1.0 - r), gamma);
        const double lower = 1.0 / upper;
        for (int j = 0; j < kCirclePoints; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / kCirclePoints;
            const double mod = std::abs(eval_complex(g, std::polar(r, theta)));
            m.lower = std::min(m.lower, (mod - lower) / std::max(1.0, lower));
            m.upper = std::min(m.upper, (upper - mod) / std::max(1.0, upper));
        }
    }
    return m;
}

bool VerificationReport::passed() const { return failures() == 0; }

int VerificationReport::failures() const {
    int total = 0;
    for (const auto& c : checks)
        total += c.failures;
    return total;
}

VerificationReport verify_starlike(const PhiSpec& spec, const VerifyOptions& options) {
    if (!spec.positivity_certified())
        throw Error(ErrorKind::PositivityRequired,
                    spec.name() + " is not positivity-certified; verification refused");
    BuildOptions build;
    build.compute_k_minus1 = false;
    const ExtremalPair pair = build_extremal(spec, options.order, build);
    const double radius = starlike_bohr_radius(spec, 1e-12, options.order).radius;
    const std::vector<double> grid{0.1, 0.3, 0.5, 0.7};

    Accumulator bohr("bohr_starlike", options.tolerance);
    Accumulator lower("growth_lower", options.tolerance);
    Accumulator upper("growth_upper", options.tolerance);
    Accumulator sub("subordination_majorant", options.tolerance);
    for (int i = 0; i < options.samples; ++i) {
        const SchwarzSpec omega = schwarz_for_index(options.seed, i);
        bohr.add(check_bohr_starlike(pair, omega, radius, options.order));
        const GrowthMargins g = check_growth(pair, omega, grid, false, options.order);
        lower.add(g.lower);
        upper.add(g.upper);
        sub.add(check_subordination_majorant(pair.h_series, omega, kBohrCap));
    }
    return {{bohr.done(), lower.done(), upper.done(), sub.done()}, options.seed, options.order};
}

VerificationReport verify_convex(const PhiSpec& spec, const VerifyOptions& options) {
    if (!spec.positivity_certified())
        throw Error(ErrorKind::PositivityRequired,
                    spec.name() + " is not positivity-certified; verification refused");
    const ExtremalPair pair = build_extremal(spec, options.order);
    const double radius = convex_bohr_radius(spec, 1e-12, options.order).radius;
    const std::vector<double> grid{0.1, 0.3, 0.5, 0.7};

    Accumulator bohr("bohr_convex", options.tolerance);
    Accumulator lower("growth_lower_convex", options.tolerance);
    Accumulator upper("growth_upper_convex", options.tolerance);
    for (int i = 0; i < options.samples; ++i) {
        const SchwarzSpec omega = schwarz_for_index(options.seed, i);
        bohr.add(check_bohr_convex(pair, omega, radius, options.order));
        const GrowthMargins g = check_growth(pair, omega, grid, true, options.order);
        lower.add(g.lower);
        upper.add(g.upper);
    }
    return {{bohr.done(), lower.done(), upper.done()}, options.seed, options.order};
}

VerificationReport verify_order_alpha(const std::vector<double>& alphas,
                                      const VerifyOptions& options) {
    VerificationReport report{{}, options.seed, options.order};
    for (double alpha : alphas) {
        std::ostringstream name;
        name << "coefficient_bound_alpha=" << alpha;
        Accumulator acc(name.str(), options.tolerance);
        for (int i = 0; i < options.samples; ++i)
            acc.add(check_coefficient_bounds_order_alpha(alpha, schwarz_for_index(options.seed, i)));
        report.checks.push_back(acc.done());
    }
    return report;
}

VerificationReport verify_galpha(double alpha, const VerifyOptions& options) {
    const double rg = galpha_bohr_radius(alpha);
    const std::vector<double> grid{0.1, 0.3, 0.5, 0.7};
    Accumulator bohr("galpha_majorant", options.tolerance);
    Accumulator lower("galpha_growth_lower", options.tolerance);
    Accumulator upper("galpha_growth_upper", options.tolerance);
    for (int i = 0; i < options.samples; ++i) {
        const SchwarzSpec omega = schwarz_for_index(options.seed, i);
        bohr.add(check_galpha(alpha, omega, rg, options.order));
        const GrowthMargins g = check_galpha_growth(alpha, omega, grid, options.order);
        lower.add(g.lower);
        upper.add(g.upper);
    }
    return {{bohr.done(), lower.done(), upper.done()}, options.seed, options.order};
}

} // namespace bohr
