#include "bohr/errors.hpp"
#include "bohr/extremal.hpp"
#include "bohr/phi_catalog.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace bohr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
const double kK = std::sqrt(2.0) + 1.0;

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

// Complex closed forms of every kernel, written out independently of the
// library so the Cauchy-integral coefficients form a separate path.
std::complex<double> phi_complex(const PhiSpec& spec, std::complex<double> z) {
    using C = std::complex<double>;
    const auto& p = spec.params();
    switch (spec.kind()) {
    case KernelKind::HalfPlane: return (1.0 + z) / (1.0 - z);
    case KernelKind::Janowski: return (1.0 + p.a * z) / (1.0 + p.b * z);
    case KernelKind::Exponential: return p.alpha + (1.0 - p.alpha) * std::exp(z);
    case KernelKind::Cardioid: return 1.0 + 4.0 * z / 3.0 + 2.0 * z * z / 3.0;
    case KernelKind::Rational: return 1.0 + (z / kK) * (kK + z) / (kK - z);
    case KernelKind::Booth: return 1.0 + z / (1.0 - p.alpha * z * z);
    case KernelKind::Lens: return (1.0 + p.s * z) * (1.0 + p.s * z);
    case KernelKind::Ucv: {
        const C w = std::sqrt(z);
        const C l = std::log((1.0 + w) / (1.0 - w));
        return 1.0 + 2.0 / (kPi * kPi) * l * l;
    }
    }
    return 0.0;
}

// n-th Taylor coefficient by the trapezoid rule on |z| = rho.
double cauchy_coefficient(const PhiSpec& spec, int n, double rho, int points = 2048) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const double t = 2.0 * kPi * j / points;
        acc += phi_complex(spec, std::polar(rho, t)) * std::polar(1.0, -n * t);
    }
    return acc.real() / points / std::pow(rho, n);
}

} // namespace

TEST_CASE("catalog names round trip", "[phi]") {
    for (KernelKind k : all_kernels())
        CHECK(kernel_from_name(kernel_name(k)) == k);
    CHECK_FALSE(kernel_from_name("nephroid").has_value());
    CHECK(all_kernels().size() == 8);
}

TEST_CASE("phi_coefficients examples", "[phi]") {
    const TruncatedSeries c = phi_coefficients(PhiSpec::cardioid(), 6);
    CHECK(c[0] == 1.0);
    CHECK_THAT(c[1], WithinAbs(4.0 / 3.0, 1e-15));
    CHECK_THAT(c[2], WithinAbs(2.0 / 3.0, 1e-15));
    for (int n = 3; n <= 6; ++n)
        CHECK(c[n] == 0.0);

    const TruncatedSeries hp = phi_coefficients(PhiSpec::janowski(1.0, -1.0), 10);
    for (int n = 1; n <= 10; ++n)
        CHECK(hp[n] == 2.0);

    // Rational kernel against long division of z(k+z)/(k(k-z)).
    const TruncatedSeries r = phi_coefficients(PhiSpec::rational(), 12);
    {
        std::vector<double> num(14, 0.0), q(13, 0.0);
        // numerator z + z^2/k; dividing by (k - z) gives q_n = (num_n + q_{n-1}) / k
        num[1] = 1.0;
        num[2] = 1.0 / kK;
        double prev = 0.0;
        for (int n = 0; n <= 12; ++n) {
            q[static_cast<std::size_t>(n)] = (num[static_cast<std::size_t>(n)] + prev) / kK;
            prev = q[static_cast<std::size_t>(n)];
        }
        for (int n = 1; n <= 12; ++n)
            CHECK_THAT(r[n], WithinRel(q[static_cast<std::size_t>(n)], 1e-13));
    }
    CHECK_THAT(r[1], WithinAbs(0.414213562373095, 1e-12));
    CHECK_THAT(r[2], WithinAbs(0.343145750507620, 1e-12));

    // ucv: square of the odd log series, reference values from a 30-digit
    // evaluation of 8/(pi^2 n) sum_{j<n} 1/(2j+1).
    const TruncatedSeries u = phi_coefficients(PhiSpec::ucv(), 64);
    CHECK_THAT(u[1], WithinAbs(0.810569469138702, 1e-13));
    CHECK_THAT(u[2], WithinAbs(0.540379646092468, 1e-13));
    CHECK_THAT(u[3], WithinAbs(0.414291062004226, 1e-13));
    for (int n = 1; n <= 64; ++n)
        CHECK_THAT(u[n], WithinRel(PhiSpec::ucv().coefficient(n), 1e-12));

    CHECK(throws_kind(ErrorKind::DomainError, [] { phi_coefficients(PhiSpec::cardioid(), 0); }));
}

TEST_CASE("parameter ranges", "[phi]") {
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::exponential(1.0); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::exponential(-0.1); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::booth(1.0); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::lens(0.0); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::lens(0.71); }));
    CHECK_NOTHROW(PhiSpec::lens(1.0 / std::sqrt(2.0)));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::janowski(0.5, 0.5); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::janowski(1.5, -0.5); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::janowski(0.5, -1.5); }));
    // B > 0 is constructible; positivity is a separate certificate.
    CHECK_NOTHROW(PhiSpec::janowski(1.0, 0.5));
}

TEST_CASE("from_name parses CLI-style parameters", "[phi]") {
    const PhiSpec j = PhiSpec::from_name("janowski", {{"A", 0.5}, {"B", -0.5}});
    CHECK(j.kind() == KernelKind::Janowski);
    CHECK(j.param_string() == "A=0.5;B=-0.5");
    CHECK(PhiSpec::from_name("lens", {{"s", 0.5}}).params().s == 0.5);
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::from_name("nephroid", {}); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange,
                      [] { PhiSpec::from_name("cardioid", {{"s", 1.0}}); }));
    CHECK(throws_kind(ErrorKind::ParamOutOfRange, [] { PhiSpec::from_name("booth", {}); }));
}

TEST_CASE("validate_positivity examples", "[phi]") {
    PhiSpec cardioid = PhiSpec::cardioid();
    CHECK_FALSE(cardioid.positivity_certified());
    CHECK(validate_positivity(cardioid, 64));
    CHECK(cardioid.positivity_certified());

    PhiSpec bad = PhiSpec::janowski(1.0, 0.5);
    CHECK_FALSE(validate_positivity(bad, 64));
    CHECK_FALSE(bad.positivity_certified());
    CHECK(bad.coefficient(2) < 0.0);

    // Nephroid 1 + z - z^3/3 is outside the catalog; the rule itself rejects it.
    CHECK_FALSE(coefficients_nonnegative({1.0, 1.0, 0.0, -1.0 / 3.0}));

    for (const PhiSpec& s : default_catalog())
        CHECK(s.positivity_certified());
}

TEST_CASE("phi_eval examples", "[phi]") {
    CHECK(phi_eval(PhiSpec::halfplane(), 0.0) == 1.0);
    CHECK_THAT(phi_eval(PhiSpec::cardioid(), 0.5), WithinAbs(11.0 / 6.0, 1e-15));
    const double x = 1.0 / 3.0;
    CHECK_THAT(phi_eval(PhiSpec::rational(), x),
               WithinAbs(1.0 + (1.0 / (3.0 * kK)) * (kK + x) / (kK - x), 1e-15));
    CHECK(throws_kind(ErrorKind::DomainError, [] { phi_eval(PhiSpec::cardioid(), 1.0); }));
    CHECK(throws_kind(ErrorKind::DomainError, [] { phi_eval(PhiSpec::cardioid(), -1.0); }));
}

TEST_CASE("property: phi(0) = 1 and series agree with closed form", "[phi][property]") {
    for (const PhiSpec& spec : default_catalog()) {
        INFO(spec.name() << " " << spec.param_string());
        CHECK(phi_coefficients(spec, 8)[0] == 1.0);
        CHECK(phi_eval(spec, 0.0) == 1.0);
        const TruncatedSeries series = phi_coefficients(spec, 1024);
        for (double x = -0.9; x <= 0.9001; x += 0.1)
            CHECK_THAT(eval(series, x), WithinAbs(phi_eval(spec, x), 1e-10));
    }
}

TEST_CASE("property: coefficients match Cauchy integrals of the closed form", "[phi][property]") {
    // rho = 0.9 keeps rounding amplification rho^{-64} below 1e3.
    for (const PhiSpec& spec : default_catalog()) {
        const TruncatedSeries c = phi_coefficients(spec, 64);
        for (int n = 0; n <= 64; ++n) {
            INFO(spec.name() << " " << spec.param_string() << " n=" << n);
            CHECK_THAT(c[n], WithinAbs(cauchy_coefficient(spec, n, 0.9), 1e-7));
        }
    }
}

TEST_CASE("property: square-summability tail for geometrically decaying kernels",
          "[phi][property]") {
    for (const PhiSpec& spec : default_catalog()) {
        const double tail = hardy_tail(spec, 512, 1024);
        INFO(spec.name() << " " << spec.param_string() << " tail " << tail);
        switch (spec.kind()) {
        case KernelKind::HalfPlane:
        case KernelKind::Ucv:
            // B_n does not decay geometrically; the truncated tail stays large.
            CHECK(tail > 1e-9);
            break;
        default: CHECK(tail < 1e-9);
        }
    }
}
