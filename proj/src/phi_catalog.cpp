#include "bohr/phi_catalog.hpp"

#include "bohr/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace bohr {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void out_of_range(const std::string& what) {
    throw Error(ErrorKind::ParamOutOfRange, what);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

void require_unit_alpha(const char* kernel, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        out_of_range(std::string(kernel) + " needs 0 <= alpha < 1, got alpha = " + fmt(alpha));
}

// 8/(pi^2 n) * sum_{j<n} 1/(2j+1): closed coefficient rule of the ucv kernel.
double ucv_coefficient(int n) {
    double acc = 0.0;
    for (int j = n - 1; j >= 0; --j)
        acc += 1.0 / (2.0 * j + 1.0);
    return 8.0 / (kPi * kPi * n) * acc;
}

// Square of 2 sum w^{2j+1}/(2j+1) = log((1+w)/(1-w)) read off at even powers.
TruncatedSeries ucv_series(int order) {
    const int wdeg = 2 * order;
    std::vector<double> l(static_cast<std::size_t>(wdeg) + 1, 0.0);
    for (int j = 0; 2 * j + 1 <= wdeg; ++j)
        l[static_cast<std::size_t>(2 * j + 1)] = 2.0 / (2.0 * j + 1.0);
    const TruncatedSeries log_series(std::move(l));
    const TruncatedSeries sq = cauchy_mul(log_series, log_series);
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = 2.0 / (kPi * kPi) * sq[2 * n];
    return TruncatedSeries(std::move(c));
}

} // namespace

std::string_view kernel_name(KernelKind kind) {
    switch (kind) {
    case KernelKind::HalfPlane: return "halfplane";
    case KernelKind::Janowski: return "janowski";
    case KernelKind::Exponential: return "exponential";
    case KernelKind::Cardioid: return "cardioid";
    case KernelKind::Rational: return "rational";
    case KernelKind::Booth: return "booth";
    case KernelKind::Lens: return "lens";
    case KernelKind::Ucv: return "ucv";
    }
    return "unknown";
}

const std::vector<KernelKind>& all_kernels() {
    static const std::vector<KernelKind> kinds{
        KernelKind::HalfPlane, KernelKind::Janowski, KernelKind::Exponential,
        KernelKind::Cardioid,  KernelKind::Rational, KernelKind::Booth,
        KernelKind::Lens,      KernelKind::Ucv};
    return kinds;
}

std::optional<KernelKind> kernel_from_name(std::string_view name) {
    for (KernelKind k : all_kernels())
        if (kernel_name(k) == name)
            return k;
    return std::nullopt;
}

PhiSpec PhiSpec::halfplane() { return PhiSpec(KernelKind::HalfPlane, {}); }

PhiSpec PhiSpec::janowski(double a, double b) {
    if (!(b >= -1.0 && b < a && a <= 1.0))
        out_of_range("janowski needs -1 <= B < A <= 1, got A = " + fmt(a) + ", B = " + fmt(b));
    KernelParams p;
    p.a = a;
    p.b = b;
    return PhiSpec(KernelKind::Janowski, p);
}

PhiSpec PhiSpec::exponential(double alpha) {
    require_unit_alpha("exponential", alpha);
    KernelParams p;
    p.alpha = alpha;
    return PhiSpec(KernelKind::Exponential, p);
}

PhiSpec PhiSpec::cardioid() { return PhiSpec(KernelKind::Cardioid, {}); }

PhiSpec PhiSpec::rational() { return PhiSpec(KernelKind::Rational, {}); }

PhiSpec PhiSpec::booth(double alpha) {
    require_unit_alpha("booth", alpha);
    KernelParams p;
    p.alpha = alpha;
    return PhiSpec(KernelKind::Booth, p);
}

PhiSpec PhiSpec::lens(double s) {
    // 1/sqrt(2) itself must be admissible however the caller rounded it.
    if (!(s > 0.0 && s <= std::numbers::sqrt2 / 2.0 * (1.0 + 1e-15)))
        out_of_range("lens needs 0 < s <= 1/sqrt(2), got s = " + fmt(s));
    KernelParams p;
    p.s = s;
    return PhiSpec(KernelKind::Lens, p);
}

PhiSpec PhiSpec::ucv() { return PhiSpec(KernelKind::Ucv, {}); }

PhiSpec PhiSpec::order_alpha(double alpha) {
    require_unit_alpha("order_alpha", alpha);
    return janowski(1.0 - 2.0 * alpha, -1.0);
}

PhiSpec PhiSpec::from_name(std::string_view name, const std::map<std::string, double>& params) {
    const auto kind = kernel_from_name(name);
    if (!kind)
        out_of_range("unknown kernel '" + std::string(name) +
                     "'; expected one of halfplane, janowski, exponential, cardioid, rational, "
                     "booth, lens, ucv");

    std::set<std::string> used;
    auto get = [&](std::initializer_list<const char*> keys) -> double {
        for (const char* k : keys) {
            if (auto it = params.find(k); it != params.end()) {
                used.insert(it->first);
                return it->second;
            }
        }
        out_of_range(std::string(name) + " needs parameter '" + *keys.begin() + "'");
    };

    std::optional<PhiSpec> spec;
    switch (*kind) {
    case KernelKind::HalfPlane: spec = halfplane(); break;
    case KernelKind::Cardioid: spec = cardioid(); break;
    case KernelKind::Rational: spec = rational(); break;
    case KernelKind::Ucv: spec = ucv(); break;
    case KernelKind::Janowski: {
        const double a = get({"A", "a"});
        const double b = get({"B", "b"});
        spec = janowski(a, b);
        break;
    }
    case KernelKind::Exponential: spec = exponential(get({"alpha"})); break;
    case KernelKind::Booth: spec = booth(get({"alpha"})); break;
    case KernelKind::Lens: spec = lens(get({"s"})); break;
    }
    for (const auto& [key, value] : params)
        if (!used.contains(key))
            out_of_range("kernel " + std::string(name) + " does not take parameter '" + key + "'");
    return *spec;
}

double PhiSpec::coefficient(int n) const {
    if (n < 0)
        throw Error(ErrorKind::DomainError, "coefficient index must be >= 0");
    if (n == 0)
        return 1.0;
    switch (kind_) {
    case KernelKind::HalfPlane: return 2.0;
    case KernelKind::Janowski: {
        double c = params_.a - params_.b;
        for (int k = 1; k < n; ++k)
            c *= -params_.b;
        return c;
    }
    case KernelKind::Exponential: {
        double c = 1.0 - params_.alpha;
        for (int k = 2; k <= n; ++k)
            c /= k;
        return c;
    }
    case KernelKind::Cardioid: return n == 1 ? 4.0 / 3.0 : (n == 2 ? 2.0 / 3.0 : 0.0);
    case KernelKind::Rational:
        return n == 1 ? 1.0 / kRationalK : 2.0 / std::pow(kRationalK, n);
    case KernelKind::Booth: {
        if (n % 2 == 0)
            return 0.0;
        double c = 1.0;
        for (int m = 0; m < (n - 1) / 2; ++m)
            c *= params_.alpha;
        return c;
    }
    case KernelKind::Lens:
        return n == 1 ? 2.0 * params_.s : (n == 2 ? params_.s * params_.s : 0.0);
    case KernelKind::Ucv: return ucv_coefficient(n);
    }
    return 0.0;
}

std::optional<int> PhiSpec::polynomial_degree() const {
    switch (kind_) {
    case KernelKind::Cardioid:
    case KernelKind::Lens: return 2;
    case KernelKind::Janowski:
        if (params_.b == 0.0)
            return 1;
        return std::nullopt;
    case KernelKind::Booth:
        if (params_.alpha == 0.0)
            return 1;
        return std::nullopt;
    default: return std::nullopt;
    }
}

std::string PhiSpec::param_string() const {
    std::string out;
    for (const auto& [key, value] : param_map()) {
        if (!out.empty())
            out += ';';
        out += key + "=" + fmt(value);
    }
    return out;
}

std::map<std::string, double> PhiSpec::param_map() const {
    switch (kind_) {
    case KernelKind::Janowski: return {{"A", params_.a}, {"B", params_.b}};
    case KernelKind::Exponential:
    case KernelKind::Booth: return {{"alpha", params_.alpha}};
    case KernelKind::Lens: return {{"s", params_.s}};
    default: return {};
    }
}

TruncatedSeries phi_coefficients(const PhiSpec& spec, int order) {
    if (order < 1)
        throw Error(ErrorKind::DomainError, "phi_coefficients needs order >= 1");
    if (spec.kind() == KernelKind::Ucv)
        return ucv_series(order);
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n)
        c[static_cast<std::size_t>(n)] = spec.coefficient(n);
    return TruncatedSeries(std::move(c));
}

bool coefficients_nonnegative(const TruncatedSeries& phi) {
    if (phi.order() < 1 || !(phi[1] > 0.0))
        return false;
    for (int n = 2; n <= phi.order(); ++n)
        if (phi[n] < 0.0)
            return false;
    return true;
}

bool validate_positivity(PhiSpec& spec, int order) {
    if (order < 1)
        throw Error(ErrorKind::DomainError, "validate_positivity needs order >= 1");
    spec.certified_ = coefficients_nonnegative(phi_coefficients(spec, order));
    return spec.certified_;
}

PhiSpec certified(PhiSpec spec, int order) {
    validate_positivity(spec, order);
    return spec;
}

double phi_eval_closed_interval(const PhiSpec& spec, double x) {
    const auto& p = spec.params();
    switch (spec.kind()) {
    case KernelKind::HalfPlane: return (1.0 + x) / (1.0 - x);
    case KernelKind::Janowski: return (1.0 + p.a * x) / (1.0 + p.b * x);
    case KernelKind::Exponential: return p.alpha + (1.0 - p.alpha) * std::exp(x);
    case KernelKind::Cardioid: return 1.0 + 4.0 * x / 3.0 + 2.0 * x * x / 3.0;
    case KernelKind::Rational: {
        const double k = kRationalK;
        return 1.0 + (x / k) * (k + x) / (k - x);
    }
    case KernelKind::Booth: return 1.0 + x / (1.0 - p.alpha * x * x);
    case KernelKind::Lens: return (1.0 + p.s * x) * (1.0 + p.s * x);
    case KernelKind::Ucv: {
        // (log((1+w)/(1-w)))^2 = 4 atanh(w)^2 with w = sqrt(x); for x < 0 the
        // square root is imaginary and the square becomes -4 atan(sqrt(-x))^2.
        const double c = 8.0 / (kPi * kPi);
        if (x >= 0.0) {
            const double t = std::atanh(std::sqrt(x));
            return 1.0 + c * t * t;
        }
        const double t = std::atan(std::sqrt(-x));
        return 1.0 - c * t * t;
    }
    }
    return 0.0;
}

double phi_eval(const PhiSpec& spec, double x) {
    if (!(x > -1.0 && x < 1.0))
        throw Error(ErrorKind::DomainError, "phi_eval needs x in (-1, 1), got " + fmt(x));
    return phi_eval_closed_interval(spec, x);
}

double hardy_tail(const PhiSpec& spec, int from, int upto) {
    double acc = 0.0;
    for (int n = upto; n > from; --n) {
        const double b = spec.coefficient(n);
        acc += b * b;
    }
    return acc;
}

} // namespace bohr
