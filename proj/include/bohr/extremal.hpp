#pragma once

#include "bohr/phi_catalog.hpp"
#include "bohr/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bohr {

// Extremal functions of a kernel: h solves z h'/h = phi, k solves z k' = h.
struct ExtremalPair {
    TruncatedSeries h_series; // b_0 = 0, b_1 = 1
    TruncatedSeries k_series; // b_n / n
    double h_minus1;          // lim_{r->1} h(-r), in (-1, 0)
    double k_minus1;          // lim_{r->1} k(-r), in (-1, 0)
    PhiSpec spec;
    int order;
};

enum class BoundaryMethod { ClosedForm, Series, Quadrature };

std::string_view to_string(BoundaryMethod method);

struct BoundaryValue {
    double value;
    BoundaryMethod method;
    int order;   // truncation used by the series path (0 when unused)
    double tail; // tail estimate of the series path (inf when it did not converge)
};

struct BuildOptions {
    // Refuse kernels without a positivity certificate (PositivityRequired).
    bool require_positivity = false;
    // Permit the adaptive-quadrature fallback for boundary values whose series
    // converge too slowly; when false such kernels raise SlowConvergence.
    bool allow_quadrature = true;
    // Skip k(-1) (left as NaN) for callers that only need the starlike data.
    bool compute_k_minus1 = true;
};

// Absolute disagreement between closed-form and series paths treated as a
// formula bug rather than rounding.
inline constexpr double kDualPathTolerance = 1e-8;

// z * exp(sum B_n z^n / n) truncated at `order`.
TruncatedSeries extremal_h_series(const PhiSpec& spec, int order);

// Coefficient n of the result is h_n / n.
TruncatedSeries extremal_k_series(const TruncatedSeries& h_series);

ExtremalPair build_extremal(const PhiSpec& spec, int order = kDefaultOrder,
                            BuildOptions options = {});

// Closed form of h on [-1, 1) where one is registered (every kernel except
// ucv). The exponential kernel's form integrates (e^t - 1)/t numerically.
bool has_closed_form(const PhiSpec& spec);
std::optional<double> closed_form_h(const PhiSpec& spec, double r);

// integral_0^x (phi(t) - 1)/t dt by adaptive Simpson on the closed-form phi,
// x in [-1, 1). The removable singularity at 0 is patched by its Taylor
// polynomial B_1 + B_2 t + B_3 t^2 for |t| < 1e-4.
double h_exponent_quadrature(const PhiSpec& spec, double x, double abs_tol = 1e-12);

// h(r) for |r| < 1. The closed form is preferred and cross-checked against
// the adaptive series; a disagreement above kDualPathTolerance raises
// DualPathMismatch. Without a closed form the series is used, falling back to
// quadrature of the exponent when the series tail does not converge.
double eval_h(const ExtremalPair& pair, double r);

// Series-only route; throws SlowConvergence when the tail cannot be controlled.
AdaptiveEval eval_h_series(const ExtremalPair& pair, double r);

// h(-1) = -exp(sum (-1)^n B_n / n).
BoundaryValue eval_h_minus1(const PhiSpec& spec, int order = kDefaultOrder,
                            bool allow_quadrature = true);

// k(r) for |r| < 1: adaptive series, falling back to quadrature of h(t)/t.
double eval_k(const ExtremalPair& pair, double r);
AdaptiveEval eval_k_series(const ExtremalPair& pair, double r);

// integral_0^r h(t)/t dt by adaptive quadrature.
double k_by_quadrature(const PhiSpec& spec, double r, double abs_tol = 1e-12);

// k(-1) = sum (-1)^n b_n / n with alternating-tail control, or
// -integral_{-1}^0 h(t)/t dt when the coefficients decay too slowly.
BoundaryValue eval_k_minus1(const PhiSpec& spec, int order = kDefaultOrder,
                            bool allow_quadrature = true);
BoundaryValue eval_k_minus1(const ExtremalPair& pair, bool allow_quadrature = true);

// Representative parameterisations of every catalog kernel, ordered by
// kernel name and then parameter tuple.
std::vector<PhiSpec> default_catalog();

struct DualPathRecord {
    std::string kernel;
    std::string params;
    std::string quantity; // "h(r)", "h(-1)", "k(-1)"
    double max_abs_diff;
    bool passed;
};

// Closed form versus generic series for every kernel with a closed form on
// r in grid, plus h(-1) and k(-1) series versus closed form or quadrature
// where the series converges.
std::vector<DualPathRecord> dual_path_self_check(const std::vector<PhiSpec>& specs,
                                                 const std::vector<double>& grid,
                                                 double tolerance = kDualPathTolerance);

} // namespace bohr
