#pragma once

#include "bohr/extremal.hpp"
#include "bohr/phi_catalog.hpp"
#include "bohr/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bohr {

enum class SchwarzKind { Identity, ScaledRotation, Polynomial };

// A Schwarz function with a certified bound |omega| < 1 on the disk.
// Coefficients stay real, so rotations are restricted to phase 0 or pi.
struct SchwarzSpec {
    SchwarzKind kind = SchwarzKind::Identity;
    double modulus = 1.0;
    double phase = 0.0;
    std::vector<double> coeffs; // polynomial: omega_0 .. omega_d, omega_0 = 0

    static SchwarzSpec identity();
    static SchwarzSpec scaled_rotation(double modulus, double phase);
    static SchwarzSpec polynomial(std::vector<double> coeffs);
    static SchwarzSpec zero();
};

// Throws UncertifiedSchwarz unless omega(0) = 0 and sum |omega_n| <= 1.
void certify(const SchwarzSpec& omega);

TruncatedSeries schwarz_series(const SchwarzSpec& omega, int order);

// Deterministic stream keyed by (seed, index).
class SampleRng {
  public:
    SampleRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    double uniform(); // [0, 1)
    double uniform(double lo, double hi);
    int integer(int lo, int hi); // inclusive

  private:
    std::uint64_t state_;
};

// Polynomial omega of degree 1..max_degree with coefficients uniform in
// [-1, 1], rescaled so that sum |omega_n| is uniform in (0, 1].
SchwarzSpec random_schwarz(SampleRng& rng, int max_degree = 8);

// Fixed samples used at indices 0, 1, 2: identity, -z, zero.
SchwarzSpec schwarz_for_index(std::uint64_t seed, int index);

// f with z f'/f = phi(omega(z)): a_1 = 1 and
// a_n = (1/(n-1)) sum_{j=1}^{n-1} a_j p_{n-j} where phi(omega) = 1 + sum p_n z^n.
TruncatedSeries sample_starlike(const PhiSpec& spec, const SchwarzSpec& omega, int order);

// Convex partner f of a starlike g: z f' = g.
TruncatedSeries convex_from_starlike(const TruncatedSeries& g);

// r + sum_{n>=2} |a_n| r^n for a normalized f (equals M_f(r)).
double bohr_majorant(const TruncatedSeries& f, double r);

// -h(-1) - M_f(radius). The distance to the boundary is bounded below by
// -h(-1); it is never computed exactly.
double check_bohr_starlike(const ExtremalPair& pair, const SchwarzSpec& omega, double radius,
                           int order = kDefaultOrder);

// -k(-1) - M_f(radius) for f in the convex class built from the sample.
double check_bohr_convex(const ExtremalPair& pair, const SchwarzSpec& omega, double radius,
                         int order = kDefaultOrder);

// M_f(r) - M_g(r) with g = f o omega; r <= 1/3 (DomainError otherwise).
double check_subordination_majorant(const TruncatedSeries& f, const SchwarzSpec& omega, double r);

struct GrowthMargins {
    double lower; // min over samples of (|f| - lower bound) / max(1, bound)
    double upper; // min over samples of (upper bound - |f|) / max(1, bound)
};

// |f(z)| on 64 points of each circle |z| = r against -h(-r) <= |f| <= h(r),
// or the k bounds when convex. The truncation order is raised until the tail
// estimate is below 1e-9 (TailTooLarge otherwise).
GrowthMargins check_growth(const ExtremalPair& pair, const SchwarzSpec& omega,
                           const std::vector<double>& r_grid, bool convex = false,
                           int order = kDefaultOrder);

// prod_{k=2}^{n} (k - 2 alpha) / (n-1)!.
double order_alpha_coefficient_bound(double alpha, int n);

// Coefficients of z / (1 - z)^{2(1 - alpha)} up to `order`.
TruncatedSeries order_alpha_extremal(double alpha, int order);

// min over 2 <= n <= order of bound_n - |a_n| for f in S*(alpha) sampled
// through omega.
double check_coefficient_bounds_order_alpha(double alpha, const SchwarzSpec& omega,
                                            int order = 16);

// Binomial series of (1 - z)^gamma.
TruncatedSeries binomial_series(double gamma, int order);

// G = (1 - z)^{2(1-alpha)} s(z)/z for s in S*(alpha) sampled through omega.
TruncatedSeries sample_galpha(double alpha, const SchwarzSpec& omega, int order);

// 1 - sum_{n>=1} |d_n| r^n for r <= r_G.
double check_galpha(double alpha, const SchwarzSpec& omega, double r, int order = kDefaultOrder);

// Growth bounds ((1-r)/(1+r))^g <= |G| <= ((1+r)/(1-r))^g with g = 2(1-alpha).
GrowthMargins check_galpha_growth(double alpha, const SchwarzSpec& omega,
                                  const std::vector<double>& r_grid, int order = kDefaultOrder);

struct CheckRecord {
    std::string name;
    int samples = 0;
    int failures = 0;
    double worst_margin = 0.0;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::uint64_t seed = 0x42;
    int order = kDefaultOrder;

    bool passed() const;
    int failures() const;
};

struct VerifyOptions {
    std::uint64_t seed = 0x42;
    int samples = 200;
    int order = kDefaultOrder;
    double tolerance = 1e-10;
};

// Starlike class: Bohr inequality at the solver's radius, growth bounds on
// r in {0.1, 0.3, 0.5, 0.7}, subordination majorant of h at r = 1/3.
// Requires a positivity-certified kernel.
VerificationReport verify_starlike(const PhiSpec& spec, const VerifyOptions& options = {});

// Convex class: Bohr inequality with k and the k growth bounds.
VerificationReport verify_convex(const PhiSpec& spec, const VerifyOptions& options = {});

// S*(alpha) coefficient bounds for n <= 16 at each alpha.
VerificationReport verify_order_alpha(const std::vector<double>& alphas,
                                      const VerifyOptions& options = {});

// G_alpha: majorant sum at r_G and growth bounds.
VerificationReport verify_galpha(double alpha, const VerifyOptions& options = {});

} // namespace bohr
