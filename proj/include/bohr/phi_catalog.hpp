#pragma once

#include "bohr/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bohr {

enum class KernelKind { HalfPlane, Janowski, Exponential, Cardioid, Rational, Booth, Lens, Ucv };

std::string_view kernel_name(KernelKind kind);
std::optional<KernelKind> kernel_from_name(std::string_view name);
const std::vector<KernelKind>& all_kernels();

// Real parameters of a kernel. Only the fields relevant to the kernel are
// meaningful: Janowski uses a and b, exponential and Booth use alpha, the lens
// kernel uses s.
struct KernelParams {
    double alpha = 0.0;
    double a = 0.0;
    double b = 0.0;
    double s = 0.0;
};

// k = sqrt(2) + 1 in the rational kernel 1 + (z/k)(k+z)/(k-z).
inline const double kRationalK = 1.4142135623730950488 + 1.0;

// A Ma-Minda kernel phi(z) = 1 + sum B_n z^n with B_1 > 0.
//
// Construction validates parameter ranges (ParamOutOfRange). Positivity of
// the coefficients is a separate certificate set by validate_positivity();
// kernels without it are constructible but rejected by the Bohr solver.
class PhiSpec {
  public:
    static PhiSpec halfplane();
    static PhiSpec janowski(double a, double b);
    static PhiSpec exponential(double alpha);
    static PhiSpec cardioid();
    static PhiSpec rational();
    static PhiSpec booth(double alpha);
    static PhiSpec lens(double s);
    static PhiSpec ucv();

    // Starlike-of-order-alpha kernel (1 + (1 - 2 alpha) z) / (1 - z).
    static PhiSpec order_alpha(double alpha);

    // Builds from a CLI-style name and key=value map. Unknown names or keys and
    // missing parameters raise ParamOutOfRange.
    static PhiSpec from_name(std::string_view name, const std::map<std::string, double>& params);

    KernelKind kind() const noexcept { return kind_; }
    const KernelParams& params() const noexcept { return params_; }
    bool positivity_certified() const noexcept { return certified_; }

    // B_n for n >= 1; B_0 is reported as 1.
    double coefficient(int n) const;

    // Highest nonzero coefficient index for polynomial kernels.
    std::optional<int> polynomial_degree() const;

    std::string name() const { return std::string(kernel_name(kind_)); }
    // Parameter tuple as "key=value" pairs in fixed key order, e.g. "A=1;B=-0.5".
    std::string param_string() const;
    std::map<std::string, double> param_map() const;

  private:
    PhiSpec(KernelKind kind, KernelParams params) : kind_(kind), params_(params) {}

    KernelKind kind_;
    KernelParams params_;
    bool certified_ = false;

    friend bool validate_positivity(PhiSpec& spec, int order);
};

// 1 + sum_{n=1}^{order} B_n z^n.
TruncatedSeries phi_coefficients(const PhiSpec& spec, int order);

// True iff B_1 > 0 and no B_n (n <= order) is negative; kernels such as the
// cardioid have structural zero coefficients and count as positive. Sets the
// spec's certificate accordingly.
bool validate_positivity(PhiSpec& spec, int order);

// Copy of spec with validate_positivity applied.
PhiSpec certified(PhiSpec spec, int order = kDefaultOrder);

// Same rule applied to a bare coefficient series (index 0 ignored).
bool coefficients_nonnegative(const TruncatedSeries& phi);

// Closed-form phi on the open interval (-1, 1); DomainError outside.
double phi_eval(const PhiSpec& spec, double x);

// Closed-form phi on [-1, 1) without the domain check. Every catalog kernel
// is continuous at x = -1, which the boundary quadratures rely on.
double phi_eval_closed_interval(const PhiSpec& spec, double x);

// sum_{n > from} B_n^2 over n <= upto: the square-summability tail.
double hardy_tail(const PhiSpec& spec, int from, int upto);

} // namespace bohr
