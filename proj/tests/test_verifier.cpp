#include "bohr/bohr_solver.hpp"
#include "bohr/errors.hpp"
#include "bohr/verifier.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace bohr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

// Coefficients of z/(1-z)^{2(1-alpha)} from the generalized binomial
// recursion c_{n+1} = c_n (n - 1 + g) / n, written out independently.
double binomial_oracle(double alpha, int n) {
    const double g = 2.0 * (1.0 - alpha);
    double c = 1.0;
    for (int m = 1; m < n; ++m)
        c *= (m - 1 + g) / m;
    return c;
}

} // namespace

TEST_CASE("Schwarz certificates", "[verifier]") {
    CHECK_NOTHROW(certify(SchwarzSpec::identity()));
    CHECK_NOTHROW(certify(SchwarzSpec::scaled_rotation(0.5, std::numbers::pi)));
    CHECK_NOTHROW(certify(SchwarzSpec::polynomial({0.0, 0.5, -0.5})));
    CHECK(throws_kind(ErrorKind::UncertifiedSchwarz,
                      [] { certify(SchwarzSpec::polynomial({0.0, 0.7, 0.6})); }));
    CHECK(throws_kind(ErrorKind::UncertifiedSchwarz,
                      [] { certify(SchwarzSpec::polynomial({0.1, 0.5})); }));
    CHECK(throws_kind(ErrorKind::UncertifiedSchwarz,
                      [] { certify(SchwarzSpec::scaled_rotation(1.2, 0.0)); }));
    CHECK(throws_kind(ErrorKind::UncertifiedSchwarz,
                      [] { certify(SchwarzSpec::scaled_rotation(0.5, 1.0)); }));
    const PhiSpec c = certified(PhiSpec::cardioid());
    CHECK(throws_kind(ErrorKind::UncertifiedSchwarz, [&] {
        sample_starlike(c, SchwarzSpec::polynomial({0.0, 1.0, 0.5}), 16);
    }));
}

TEST_CASE("sample_starlike examples", "[verifier]") {
    const PhiSpec cardioid = certified(PhiSpec::cardioid());
    const ExtremalPair p = build_extremal(cardioid);
    const TruncatedSeries f = sample_starlike(cardioid, SchwarzSpec::identity(), 64);
    for (int n = 0; n <= 64; ++n)
        CHECK_THAT(f[n], WithinAbs(p.h_series[n], 1e-11 * std::max(1.0, p.h_series[n])));

    const TruncatedSeries z = sample_starlike(cardioid, SchwarzSpec::zero(), 16);
    CHECK(z[1] == 1.0);
    for (int n = 2; n <= 16; ++n)
        CHECK(z[n] == 0.0);

    // Half-plane with omega = z/2: phi(omega) = (2 + z)/(2 - z), so
    // f = z/(1 - z/2)^2 and a_n = n / 2^{n-1}.
    const PhiSpec hp = certified(PhiSpec::halfplane());
    const TruncatedSeries g = sample_starlike(hp, SchwarzSpec::scaled_rotation(0.5, 0.0), 12);
    CHECK_THAT(g[2], WithinAbs(1.0, 1e-15));
    CHECK_THAT(g[3], WithinAbs(0.75, 1e-15));
    for (int n = 1; n <= 12; ++n)
        CHECK_THAT(g[n], WithinAbs(n / std::ldexp(1.0, n - 1), 1e-14));

    // Polynomial omega = z/2 takes the composition path; same answer.
    const TruncatedSeries g2 = sample_starlike(hp, SchwarzSpec::polynomial({0.0, 0.5}), 12);
    for (int n = 1; n <= 12; ++n)
        CHECK_THAT(g2[n], WithinAbs(g[n], 1e-14));
}

TEST_CASE("Bohr margin examples", "[verifier]") {
    const PhiSpec hp = certified(PhiSpec::halfplane());
    const ExtremalPair p = build_extremal(hp);
    const double r0 = 3.0 - 2.0 * std::sqrt(2.0);
    // Koebe at its own radius: M(r0) = r0/(1-r0)^2 = 1/4 exactly.
    CHECK_THAT(check_bohr_starlike(p, SchwarzSpec::identity(), r0, 256), WithinAbs(0.0, 1e-12));
    CHECK_THAT(check_bohr_starlike(p, SchwarzSpec::zero(), r0), WithinAbs(0.25 - r0, 1e-15));
    CHECK(check_bohr_starlike(p, SchwarzSpec::identity(), 0.2) < 0.0);

    // Convex half-plane class at 1/3: z/(1-z) gives M = 1/2 = -k(-1).
    CHECK_THAT(check_bohr_convex(p, SchwarzSpec::identity(), 1.0 / 3.0, 256),
               WithinAbs(0.0, 1e-12));
    CHECK(check_bohr_convex(p, SchwarzSpec::scaled_rotation(0.5, 0.0), 1.0 / 3.0) > 0.0);
}

TEST_CASE("subordination majorant examples", "[verifier]") {
    std::vector<double> koebe(65);
    for (int n = 0; n <= 64; ++n)
        koebe[static_cast<std::size_t>(n)] = n;
    const TruncatedSeries f(koebe);
    // g = f(0.7 z) has M_g(r) = M_f(0.7 r).
    const double r = 1.0 / 3.0;
    const double m = check_subordination_majorant(f, SchwarzSpec::scaled_rotation(0.7, 0.0), r);
    CHECK_THAT(m, WithinAbs(r / std::pow(1 - r, 2) - 0.7 * r / std::pow(1 - 0.7 * r, 2), 1e-12));
    CHECK(throws_kind(ErrorKind::DomainError,
                      [&] { check_subordination_majorant(f, SchwarzSpec::identity(), 0.34); }));
}

TEST_CASE("growth examples", "[verifier]") {
    const ExtremalPair p = build_extremal(certified(PhiSpec::halfplane()));
    // Koebe itself touches both bounds at r = 0.5: 2/9 <= |f| <= 2.
    const GrowthMargins k = check_growth(p, SchwarzSpec::identity(), {0.5});
    CHECK_THAT(k.lower, WithinAbs(0.0, 1e-12));
    CHECK_THAT(k.upper, WithinAbs(0.0, 1e-12));
    const GrowthMargins z = check_growth(p, SchwarzSpec::zero(), {0.5});
    CHECK_THAT(z.lower, WithinAbs(0.5 - 2.0 / 9.0, 1e-12));
    CHECK_THAT(z.upper, WithinAbs((2.0 - 0.5) / 2.0, 1e-12));
}

TEST_CASE("order-alpha coefficient bounds are exact at the extremal", "[verifier]") {
    for (double alpha : {0.0, 0.5}) {
        const TruncatedSeries ext = order_alpha_extremal(alpha, 16);
        for (int n = 2; n <= 16; ++n) {
            INFO("alpha " << alpha << " n " << n);
            const double oracle = binomial_oracle(alpha, n);
            CHECK(order_alpha_coefficient_bound(alpha, n) == oracle);
            CHECK_THAT(ext[n], WithinRel(oracle, 1e-15));
        }
    }
    CHECK(order_alpha_coefficient_bound(0.0, 7) == 7.0);
    CHECK(order_alpha_coefficient_bound(0.5, 9) == 1.0);
    CHECK_THAT(check_coefficient_bounds_order_alpha(0.25, SchwarzSpec::identity()),
               WithinAbs(0.0, 1e-12));
    CHECK(check_coefficient_bounds_order_alpha(0.25, SchwarzSpec::scaled_rotation(0.5, 0.0)) > 0.0);
}

TEST_CASE("G_alpha examples", "[verifier]") {
    // omega = 0: s = z, G = (1 - z)^g. For g <= 1 every d_n (n >= 1) is
    // negative, so sum |d_n| r^n = 1 - (1 - r)^g and the margin is (1 - r)^g.
    const double r = galpha_bohr_radius(0.75);
    const TruncatedSeries g0 = sample_galpha(0.75, SchwarzSpec::zero(), 64);
    const TruncatedSeries b = binomial_series(0.5, 64);
    for (int n = 0; n <= 64; ++n)
        CHECK_THAT(g0[n], WithinAbs(b[n], 1e-15));
    CHECK_THAT(check_galpha(0.75, SchwarzSpec::zero(), r), WithinAbs(std::sqrt(0.4), 1e-12));

    // 1 < g < 2: only d_1 is negative, sum |d_n| r^n = 2 g r + (1 - r)^g - 1.
    const double alpha = 0.25, gamma = 1.5, ra = galpha_bohr_radius(alpha);
    CHECK_THAT(check_galpha(alpha, SchwarzSpec::zero(), ra),
               WithinAbs(1.0 - (2 * gamma * ra + std::pow(1 - ra, gamma) - 1.0), 1e-12));

    // omega = -z is the sharp case: G = ((1 - z)/(1 + z))^g, equality at r_G.
    for (double a : {0.0, 0.25, 0.5, 0.75}) {
        INFO("alpha " << a);
        CHECK_THAT(check_galpha(a, SchwarzSpec::scaled_rotation(1.0, std::numbers::pi),
                                galpha_bohr_radius(a), 1024),
                   WithinAbs(0.0, 1e-9));
    }
    CHECK(throws_kind(ErrorKind::DomainError,
                      [] { check_galpha(0.5, SchwarzSpec::zero(), 0.34); }));
}

TEST_CASE("property: random Schwarz samples are certified and seeded", "[verifier][property]") {
    for (int i = 0; i < 500; ++i) {
        const SchwarzSpec a = schwarz_for_index(0x42, i);
        const SchwarzSpec b = schwarz_for_index(0x42, i);
        CHECK_NOTHROW(certify(a));
        CHECK(a.coeffs == b.coeffs);
        CHECK(a.kind == b.kind);
    }
    CHECK(schwarz_for_index(1, 5).coeffs != schwarz_for_index(2, 5).coeffs);
}

TEST_CASE("property: subordination never enlarges the majorant at 1/3", "[verifier][property]") {
    for (const PhiSpec& spec : default_catalog()) {
        const ExtremalPair p = build_extremal(spec);
        for (int i = 0; i < 500; ++i) {
            const SchwarzSpec w = schwarz_for_index(7, i);
            INFO(spec.name() << " sample " << i);
            CHECK(check_subordination_majorant(p.h_series, w, 1.0 / 3.0) >= -1e-12);
        }
    }
}

TEST_CASE("property: integral link z f' = g for sampled pairs", "[verifier][property]") {
    for (const PhiSpec& spec : default_catalog()) {
        for (int i = 0; i < 20; ++i) {
            const TruncatedSeries g = sample_starlike(spec, schwarz_for_index(3, i), 32);
            const TruncatedSeries f = convex_from_starlike(g);
            for (int n = 1; n <= 32; ++n)
                CHECK_THAT(n * f[n], WithinAbs(g[n], 1e-13 * std::max(1.0, std::abs(g[n]))));
        }
    }
}

TEST_CASE("property: majorant is submultiplicative", "[verifier][property]") {
    // For f = z u and g = z v, M_{z u v}(r) <= M_{z u}(r) M_{z v}(r) / r.
    for (int i = 0; i < 200; ++i) {
        SampleRng rng(99, static_cast<std::uint64_t>(i));
        std::vector<double> u(17), v(17);
        u[0] = v[0] = 1.0;
        for (std::size_t n = 1; n < u.size(); ++n) {
            u[n] = rng.uniform(-2, 2);
            v[n] = rng.uniform(-2, 2);
        }
        const TruncatedSeries uv = cauchy_mul(TruncatedSeries(u), TruncatedSeries(v));
        const double r = rng.uniform(0.01, 0.9);
        const double lhs = bohr_majorant(shift_up(uv), r);
        const double rhs = bohr_majorant(shift_up(TruncatedSeries(u)), r) *
                           bohr_majorant(shift_up(TruncatedSeries(v)), r) / r;
        CHECK(lhs <= rhs * (1 + 1e-14));
    }
}

TEST_CASE("property: verification reports are deterministic and green", "[verifier][property]") {
    VerifyOptions opts;
    opts.samples = 60;
    for (const PhiSpec& spec : default_catalog()) {
        const VerificationReport a = verify_starlike(spec, opts);
        const VerificationReport b = verify_starlike(spec, opts);
        INFO(spec.name() << " " << spec.param_string());
        CHECK(a.passed());
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].name == b.checks[i].name);
            CHECK(a.checks[i].worst_margin == b.checks[i].worst_margin);
            CHECK(a.checks[i].worst_margin >= -opts.tolerance);
        }
        CHECK(verify_convex(spec, opts).passed());
    }
    for (double alpha : {0.0, 0.3, 0.5, 0.8})
        CHECK(verify_galpha(alpha, opts).passed());
    CHECK(verify_order_alpha({0.0, 0.25, 0.5}, opts).passed());
}

TEST_CASE("verify refuses uncertified kernels", "[verifier]") {
    CHECK(throws_kind(ErrorKind::PositivityRequired,
                      [] { verify_starlike(PhiSpec::janowski(1.0, 0.5)); }));
}
